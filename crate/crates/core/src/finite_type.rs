//! CR vector fields tangent to a generic submanifold and the finite type
//! test at the origin.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::linalg::{self, RowSpace};
use crate::poly::Poly;
use crate::variety::GenericSubmanifold;
use crate::vars::{same_table, VarTable};

/// Polynomial derivation `Σ a_k ∂/∂x_k` over the frame
/// `∂/∂Z_1, …, ∂/∂Z_N, ∂/∂ζ_1, …, ∂/∂ζ_N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    coeffs: Vec<Poly>,
}

impl VectorField {
    pub fn new(table: &Arc<VarTable>, coeffs: Vec<Poly>) -> Result<Self> {
        if !table.is_paired() {
            return Err(Error::usage("vector fields need a (Z, ζ) table"));
        }
        if coeffs.len() != 2 * table.n() {
            return Err(Error::usage(format!(
                "expected {} coefficients, got {}",
                2 * table.n(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !same_table(c.table(), table)) {
            return Err(Error::usage("coefficients live in a foreign table"));
        }
        Ok(VectorField { coeffs })
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        VectorField {
            coeffs: vec![Poly::zero(table); 2 * table.n()],
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.coeffs[0].table()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// `V(f) = Σ a_k ∂f/∂x_k`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero(f.table());
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = f.derivative(k);
            if !d.is_zero() {
                acc = acc.checked_add(&a.checked_mul(&d)?)?;
            }
        }
        Ok(acc)
    }

    /// Commutator `[V, W] = Σ_k (V(W_k) − W(V_k)) ∂/∂x_k`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        if !same_table(self.table(), other.table()) {
            return Err(Error::usage("vector fields live in different tables"));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(v, w)| self.apply(w)?.checked_sub(&other.apply(v)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField { coeffs })
    }

    /// Reality involution on fields: conjugate coefficients and swap
    /// `∂/∂Z_k ↔ ∂/∂ζ_k`.
    pub fn conj(&self) -> Result<VectorField> {
        let n = self.coeffs.len() / 2;
        let mut coeffs = Vec::with_capacity(2 * n);
        for k in 0..n {
            coeffs.push(self.coeffs[n + k].conj()?);
        }
        for k in 0..n {
            coeffs.push(self.coeffs[k].conj()?);
        }
        Ok(VectorField { coeffs })
    }

    /// Value at `(0, 0)` as a vector in the `2N`-dimensional frame.
    pub fn value_at_origin(&self) -> Vec<GaussRat> {
        self.coeffs.iter().map(Poly::constant_term).collect()
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField { coeffs })
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = self.table();
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({a})*d/d{}", table.name(k))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Adjugate construction on one block of variables: with `A` the `d×d`
/// submatrix of `∂σ/∂x` on columns `cols` and `b_k = ∂σ/∂x_k`,
/// `L_k = det(A)·∂/∂x_k − Σ_j (adj(A)·b_k)_j ∂/∂x_j` annihilates every `σ_i`.
fn adjugate_fields(
    table: &Arc<VarTable>,
    sigma: &[Poly],
    block: &[usize],
    cols: &[usize],
) -> Result<Vec<VectorField>> {
    let n = table.n();
    let a: Vec<Vec<Poly>> = sigma
        .iter()
        .map(|s| cols.iter().map(|&c| s.derivative(block[c])).collect())
        .collect();
    let det = linalg::poly_det(&a, table)?;
    let adj = linalg::poly_adjugate(&a, table)?;
    let mut fields = Vec::new();
    for k in (0..block.len()).filter(|k| !cols.contains(k)) {
        let b: Vec<Poly> = sigma.iter().map(|s| s.derivative(block[k])).collect();
        let mut coeffs = vec![Poly::zero(table); 2 * n];
        coeffs[block[k]] = det.clone();
        for (jj, &c) in cols.iter().enumerate() {
            let mut entry = Poly::zero(table);
            for (i, bi) in b.iter().enumerate() {
                entry = entry.checked_add(&adj[jj][i].checked_mul(bi)?)?;
            }
            coeffs[block[c]] = -&entry;
        }
        fields.push(VectorField { coeffs });
    }
    Ok(fields)
}

fn invertible_columns(sigma: &[Poly], block: &[usize]) -> Vec<Vec<usize>> {
    let d = sigma.len();
    subsets(block.len(), d)
        .into_iter()
        .filter(|cols| {
            let rows = sigma.iter().map(|s| {
                cols.iter()
                    .map(|&c| s.derivative(block[c]).constant_term())
                    .collect()
            });
            linalg::rank(rows, d) == d
        })
        .collect()
}

/// `N − d` fields of type (0,1) followed by `N − d` fields of type (1,0),
/// each annihilating every defining function identically.
///
/// The (0,1) fields come from the first block of `∂σ/∂ζ` invertible at 0.
/// The (1,0) fields use the same construction on `∂σ/∂Z` with the mirrored
/// block; when every `σ_i` is individually real they coincide with the
/// conjugates of the (0,1) fields.
pub fn cr_fields(m: &GenericSubmanifold) -> Result<Vec<VectorField>> {
    let table = m.table();
    let n = table.n();
    let sigma = m.defining();
    let zeta: Vec<usize> = table.zeta_indices().collect();
    let holo: Vec<usize> = table.holo_indices().collect();
    let zeta_cols = invertible_columns(sigma, &zeta);
    let Some(cols) = zeta_cols.first() else {
        return Err(Error::invariant(
            "genericity",
            "no block of ∂σ/∂ζ is invertible at the origin",
        ));
    };
    let holo_cols = invertible_columns(sigma, &holo);
    let mirrored = holo_cols
        .iter()
        .find(|c| *c == cols)
        .or_else(|| holo_cols.first())
        .ok_or_else(|| {
            Error::invariant(
                "genericity",
                "no block of ∂σ/∂Z is invertible at the origin",
            )
        })?;
    debug_assert!(n >= sigma.len());
    let mut fields = adjugate_fields(table, sigma, &zeta, cols)?;
    fields.extend(adjugate_fields(table, sigma, &holo, mirrored)?);
    Ok(fields)
}

/// Outcome of the bracket closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeStatus {
    /// Brackets of length `≤ m` span `ℂT_0 M`, those of length `< m` do not.
    FiniteType(u32),
    /// The span stayed deficient through the cap; infinite type is never claimed.
    UndeterminedBeyond(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeReport {
    pub status: TypeStatus,
    /// Dimension at 0 of the span of brackets of length `≤ k`, for `k = 1, 2, …`.
    pub span_dims: Vec<usize>,
    /// Every generated field annihilated every `σ_i` identically.
    pub tangent: bool,
}

/// Breadth-first closure over left-nested brackets `[X_1, [X_2, … X_k]]` of
/// the CR fields, evaluating at the origin after each length.
pub fn finite_type_order(m: &GenericSubmanifold, cap: u32) -> Result<TypeReport> {
    if cap == 0 {
        return Err(Error::usage("bracket length cap must be at least 1"));
    }
    let table = m.table();
    let n = table.n();
    let full = 2 * n - m.codim();
    let gens = cr_fields(m)?;
    let sigma = m.defining();
    let annihilates = |f: &VectorField| -> Result<bool> {
        for s in sigma {
            if !f.apply(s)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut tangent = true;
    let mut span = RowSpace::new(2 * n);
    let mut span_dims = Vec::new();
    let mut level: Vec<VectorField> = Vec::new();
    for length in 1..=cap {
        if length == 1 {
            level = gens.clone();
        } else if !level.is_empty() {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for g in &gens {
                for f in &level {
                    let b = g.bracket(f)?;
                    if !b.is_zero() && seen.insert(b.clone()) {
                        next.push(b);
                    }
                }
            }
            level = next;
        }
        for f in &level {
            tangent &= annihilates(f)?;
            span.insert(f.value_at_origin());
        }
        span_dims.push(span.rank());
        if span.rank() == full && full > 0 {
            return Ok(TypeReport {
                status: TypeStatus::FiniteType(length),
                span_dims,
                tangent,
            });
        }
    }
    Ok(TypeReport {
        status: TypeStatus::UndeterminedBeyond(cap),
        span_dims,
        tangent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn field(table: &Arc<VarTable>, coeffs: &[&str]) -> VectorField {
        let c = coeffs
            .iter()
            .map(|s| parse_poly(s, table).unwrap())
            .collect();
        VectorField::new(table, c).unwrap()
    }

    #[test]
    fn heisenberg_cr_field() {
        let m = GenericSubmanifold::parse(&["z", "w"], &["w + ~w - 2*z*~z"]).unwrap();
        let fields = cr_fields(&m).unwrap();
        let t = m.table();
        assert_eq!(fields[0], field(t, &["0", "0", "1", "2*z"]));
        assert_eq!(fields[1], fields[0].conj().unwrap());
    }

    #[test]
    fn quartic_cr_field() {
        let m = GenericSubmanifold::parse(&["z", "w"], &["w + ~w - 2*z^2*~z^2"]).unwrap();
        let fields = cr_fields(&m).unwrap();
        assert_eq!(fields[0], field(m.table(), &["0", "0", "1", "4*z^2*~z"]));
        assert!(fields[0].apply(&m.defining()[0]).unwrap().is_zero());
    }

    #[test]
    fn flat_cr_field() {
        let m = GenericSubmanifold::parse(&["z", "w"], &["w + ~w"]).unwrap();
        let fields = cr_fields(&m).unwrap();
        assert_eq!(fields[0], field(m.table(), &["0", "0", "1", "0"]));
    }

    #[test]
    fn heisenberg_bracket_is_transversal() {
        let m = GenericSubmanifold::parse(&["z", "w"], &["w + ~w - 2*z*~z"]).unwrap();
        let f = cr_fields(&m).unwrap();
        let b = f[0].bracket(&f[1]).unwrap();
        // [∂/∂~z + 2z ∂/∂~w, ∂/∂z + 2~z ∂/∂w] = 2 ∂/∂w − 2 ∂/∂~w
        assert_eq!(b, field(m.table(), &["0", "2", "0", "-2"]));
        assert!(f[0].bracket(&f[0]).unwrap().is_zero());
    }

    #[test]
    fn zero_cap_is_rejected() {
        let m = GenericSubmanifold::parse(&["z", "w"], &["w + ~w"]).unwrap();
        assert!(finite_type_order(&m, 0).is_err());
    }

    #[test]
    fn codimension_two() {
        // w1 real-ish: Re w1 = |z|^2, Re w2 = |z|^4 in ℂ^3, type 4
        let m = GenericSubmanifold::parse(
            &["z", "w1", "w2"],
            &["w1 + ~w1 - 2*z*~z", "w2 + ~w2 - 2*z^2*~z^2"],
        )
        .unwrap();
        let fields = cr_fields(&m).unwrap();
        assert_eq!(fields.len(), 2);
        let r = finite_type_order(&m, 6).unwrap();
        assert!(r.tangent);
        assert_eq!(r.span_dims.last(), Some(&4));
        assert_eq!(r.status, TypeStatus::FiniteType(4));
    }
}
