//! Codimension of an ideal in the formal power series ring at the origin,
//! computed on finite jets.
//!
//! For `k = 1, 2, …` we test whether every degree-`k` monomial lies in
//! `I + 𝔪^{k+1}`, which is exact linear algebra in `K[Z]/𝔪^{k+1}`. By
//! Nakayama the first success gives `𝔪^k ⊆ I·K[[Z]]`, and the codimension
//! is then read off in `K[Z]/𝔪^k`.

use std::collections::HashMap;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::monomial::Monomial;
use crate::poly::Poly;

use super::Ideal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalColength {
    Finite(u64),
    /// No `k ≤ cap` certified `𝔪^k ⊆ I`; the codimension may be infinite.
    UnknownBeyond(u32),
}

impl LocalColength {
    pub fn value(&self) -> Option<u64> {
        match self {
            LocalColength::Finite(c) => Some(*c),
            LocalColength::UnknownBeyond(_) => None,
        }
    }
}

/// Monomials of total degree `≤ deg` in `n` variables, graded.
fn monomials_up_to(n: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    let mut layer = vec![vec![0u32; n]];
    for _ in 0..deg {
        let mut next = Vec::new();
        for e in &layer {
            // extend only at or after the last nonzero position to avoid duplicates
            let last = e.iter().rposition(|&x| x > 0).unwrap_or(0);
            for v in last..n {
                let mut f = e.clone();
                f[v] += 1;
                next.push(f);
            }
        }
        out.extend(next.iter().cloned().map(Monomial::from_exponents));
        layer = next;
    }
    out
}

struct Jets {
    index: HashMap<Monomial, usize>,
    basis: Vec<Monomial>,
}

impl Jets {
    fn new(n: usize, deg: u32) -> Self {
        let basis = monomials_up_to(n, deg);
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Jets { index, basis }
    }

    fn vector(&self, p: &Poly) -> Vec<GaussRat> {
        let mut v = vec![GaussRat::zero(); self.basis.len()];
        for (m, c) in p.terms() {
            if let Some(&i) = self.index.get(m) {
                v[i] = c.clone();
            }
        }
        v
    }

    /// Span of `m·g` truncated to the jet degree, over all generators and
    /// all monomials `m` that keep the product inside the jet space.
    fn ideal_span(&self, gens: &[Poly], deg: u32) -> RowSpace {
        let mut space = RowSpace::new(self.basis.len());
        for g in gens {
            let ord = g.order().expect("nonzero generator");
            for m in self.basis.iter().filter(|m| m.degree() + ord <= deg) {
                let prod = g
                    .mul_term(m, &GaussRat::one())
                    .expect("jet products stay below the degree cap")
                    .truncate(deg);
                space.insert(self.vector(&prod));
            }
        }
        space
    }
}

pub(super) fn local_colength(ideal: &Ideal, cap: u32) -> Result<LocalColength> {
    let gens: Vec<Poly> = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    if let Some(g) = gens.iter().find(|g| !g.constant_term().is_zero()) {
        return Err(Error::usage(format!(
            "generator `{g}` does not vanish at the origin"
        )));
    }
    let table = ideal.table();
    let n = table.len();
    let max_degree = table.limits().max_degree;
    for k in 1..=cap {
        if k > max_degree {
            return Err(Error::resource(
                "jet degree",
                format!("jet order {k} exceeds the degree cap {max_degree}"),
            ));
        }
        let jets = Jets::new(n, k);
        let span = jets.ideal_span(&gens, k);
        let covered = jets.basis.iter().filter(|m| m.degree() == k).all(|m| {
            span.contains(jets.vector(&Poly::monomial(table, m.clone(), GaussRat::one())))
        });
        if covered {
            let lower = Jets::new(n, k - 1);
            let lower_span = lower.ideal_span(&gens, k - 1);
            return Ok(LocalColength::Finite(
                (lower.basis.len() - lower_span.rank()) as u64,
            ));
        }
    }
    Ok(LocalColength::UnknownBeyond(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::vars::VarTable;

    fn ideal(gens: &[&str]) -> Ideal {
        let t = VarTable::holomorphic(&["z", "w"]).unwrap();
        let gens = gens.iter().map(|g| parse_poly(g, &t).unwrap()).collect();
        Ideal::with_generators(&t, gens).unwrap()
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(n + d, d)
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_up_to(1, 0).len(), 1);
    }

    #[test]
    fn fold_map_has_colength_two() {
        assert_eq!(
            ideal(&["z^2", "w"]).local_colength(8).unwrap(),
            LocalColength::Finite(2)
        );
    }

    #[test]
    fn degenerate_map_is_never_certified() {
        for cap in 1..=6 {
            assert_eq!(
                ideal(&["z", "0"]).local_colength(cap).unwrap(),
                LocalColength::UnknownBeyond(cap)
            );
        }
    }

    #[test]
    fn maximal_ideal_has_colength_one() {
        assert_eq!(
            ideal(&["z", "w"]).local_colength(3).unwrap(),
            LocalColength::Finite(1)
        );
    }

    #[test]
    fn only_the_origin_counts() {
        // z(1 - z) has a second zero at z = 1 which the local count ignores
        let i = ideal(&["z - z^2", "w"]);
        assert_eq!(i.local_colength(4).unwrap(), LocalColength::Finite(1));
        assert_eq!(i.dimension().unwrap().colength, Some(2));
    }

    #[test]
    fn milnor_number_of_a_cusp() {
        // gradient ideal of z^2 + w^3 has Milnor number 2
        assert_eq!(
            ideal(&["2*z", "3*w^2"]).local_colength(5).unwrap(),
            LocalColength::Finite(2)
        );
    }

    #[test]
    fn constant_term_is_a_usage_error() {
        assert!(matches!(
            ideal(&["1 + z"]).local_colength(3),
            Err(Error::Usage(_))
        ));
    }
}
