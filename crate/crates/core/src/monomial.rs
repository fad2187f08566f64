//! Exponent vectors and term orders.

use std::cmp::Ordering;

/// Exponent vector indexed by the owning [`VarTable`](crate::VarTable).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.0[idx]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True when `self` and `other` share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Index of the single variable if this is a pure power `x^k`, `k ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut it = self.support();
        match (it.next(), it.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }

    /// Keeps only the exponents at `mask`-selected positions (others set to 0).
    pub fn restrict(&self, keep: &[bool]) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(keep)
                .map(|(&e, &k)| if k { e } else { 0 })
                .collect(),
        )
    }
}

/// Order used on a block of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseOrder {
    /// Lexicographic with the first table variable largest.
    Lex,
    /// Graded reverse lexicographic.
    DegRevLex,
}

impl BaseOrder {
    fn cmp_on(&self, a: &[u32], b: &[u32], idx: &[usize]) -> Ordering {
        match self {
            BaseOrder::Lex => {
                for &i in idx {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            BaseOrder::DegRevLex => {
                let da: u32 = idx.iter().map(|&i| a[i]).sum();
                let db: u32 = idx.iter().map(|&i| b[i]).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &i in idx.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    fn cmp_all(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            BaseOrder::Lex => a.cmp(b),
            BaseOrder::DegRevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BaseOrder::Lex => "lex",
            BaseOrder::DegRevLex => "degrevlex",
        }
    }
}

/// A term order on the monomials of one table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Block order: monomials are first compared on `eliminate` with `inner`,
    /// ties are broken on the remaining variables with `outer`. Every monomial
    /// involving an eliminated variable is larger than every monomial free of
    /// them.
    Block {
        eliminate: Vec<usize>,
        keep: Vec<usize>,
        inner: BaseOrder,
        outer: BaseOrder,
    },
}

impl From<BaseOrder> for MonomialOrder {
    fn from(b: BaseOrder) -> Self {
        match b {
            BaseOrder::Lex => MonomialOrder::Lex,
            BaseOrder::DegRevLex => MonomialOrder::DegRevLex,
        }
    }
}

impl MonomialOrder {
    /// Elimination order for the variables in `eliminate` out of `nvars`.
    pub fn elimination(
        nvars: usize,
        eliminate: &[usize],
        inner: BaseOrder,
        outer: BaseOrder,
    ) -> Self {
        let mut elim: Vec<usize> = eliminate.to_vec();
        elim.sort_unstable();
        elim.dedup();
        let keep = (0..nvars)
            .filter(|i| elim.binary_search(i).is_err())
            .collect();
        MonomialOrder::Block {
            eliminate: elim,
            keep,
            inner,
            outer,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => BaseOrder::Lex.cmp_all(a, b),
            MonomialOrder::DegRevLex => BaseOrder::DegRevLex.cmp_all(a, b),
            MonomialOrder::Block {
                eliminate,
                keep,
                inner,
                outer,
            } => match inner.cmp_on(a, b, eliminate) {
                Ordering::Equal => outer.cmp_on(a, b, keep),
                o => o,
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::Block {
                eliminate,
                inner,
                outer,
                ..
            } => format!("block({eliminate:?}; {}; {})", inner.name(), outer.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn lex_and_degrevlex() {
        // x > y > z
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::DegRevLex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])),
            Ordering::Less
        );
        // degrevlex: x*y > x*z? same degree; last var z: xz has z^1 > 0 so xz smaller
        assert_eq!(
            MonomialOrder::DegRevLex.cmp(&m(&[1, 1, 0]), &m(&[1, 0, 1])),
            Ordering::Greater
        );
        // classic: x^2 z^... check y^2 > x z under degrevlex
        assert_eq!(
            MonomialOrder::DegRevLex.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])),
            Ordering::Greater
        );
    }

    #[test]
    fn block_eliminates() {
        let o = MonomialOrder::elimination(3, &[2], BaseOrder::DegRevLex, BaseOrder::DegRevLex);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0, 1]), &m(&[0, 1, 1])), Ordering::Greater);
    }
}
