//! Sparse multivariate polynomials over `ℚ(i)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::vars::{same_table, VarRole, VarTable};

/// A polynomial in the variables of one [`VarTable`]. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, GaussRat>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<VarTable>, c: GaussRat) -> Self {
        Self::monomial(table, Monomial::one(table.len()), c)
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, GaussRat::one())
    }

    pub fn var(table: &Arc<VarTable>, idx: usize) -> Self {
        Self::monomial(table, Monomial::var(table.len(), idx, 1), GaussRat::one())
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial, c: GaussRat) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(
        table: &Arc<VarTable>,
        terms: impl IntoIterator<Item = (Monomial, GaussRat)>,
    ) -> Self {
        let mut p = Self::zero(table);
        for (m, c) in terms {
            debug_assert_eq!(m.len(), table.len());
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coefficient(&Monomial::one(self.table.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.table.len()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    pub fn uses_role(&self, role: VarRole) -> bool {
        self.support()
            .into_iter()
            .any(|i| self.table.role(i) == role)
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    fn check_table(&self, other: &Poly) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "polynomials live in different variable tables ({:?} vs {:?})",
                self.table.names(),
                other.table.names()
            )))
        }
    }

    fn check_degree(&self, deg: u32) -> Result<()> {
        let cap = self.table.limits().max_degree;
        if deg > cap {
            Err(Error::resource(
                "monomial degree cap",
                format!("degree {deg} exceeds cap {cap}"),
            ))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_table(other)?;
        if let (Some(a), Some(b)) = (self.total_degree(), other.total_degree()) {
            self.check_degree(a + b)?;
        }
        let mut out = Poly::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Poly> {
        if let Some(d) = self.total_degree() {
            self.check_degree(d.saturating_mul(exp))?;
        }
        let mut result = Poly::one(&self.table);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        Poly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &GaussRat) -> Result<Poly> {
        if let Some(d) = self.total_degree() {
            self.check_degree(d + m.degree())?;
        }
        if c.is_zero() {
            return Ok(Poly::zero(&self.table));
        }
        Ok(Poly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect(),
        })
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.exp(idx);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[idx] -= 1;
            out.add_term(
                Monomial::from_exponents(exps),
                &(c * &GaussRat::from_int(e as i64)),
            );
        }
        out
    }

    /// Ring homomorphism sending variable `k` to `images[k]`. All images must
    /// share one target table.
    pub fn subst(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.table.len() {
            return Err(Error::usage(format!(
                "substitution needs {} images, got {}",
                self.table.len(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.table.clone(),
            None => return Ok(self.clone()),
        };
        for img in images {
            if !same_table(&img.table, &target) {
                return Err(Error::usage("substitution images live in different tables"));
            }
        }
        // powers[k][e] = images[k]^e, filled lazily
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(&target)]; images.len()];
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (k, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap().checked_mul(&images[k])?;
                    powers[k].push(next);
                }
                term = term.checked_mul(&powers[k][e as usize])?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    /// Fails if a variable with no image occurs.
    pub fn remap(&self, target: &Arc<VarTable>, map: &[Option<usize>]) -> Result<Poly> {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for i in m.support() {
                match map.get(i).copied().flatten() {
                    Some(j) => exps[j] += m.exp(i),
                    None => {
                        return Err(Error::usage(format!(
                            "variable `{}` has no counterpart in the target table",
                            self.table.name(i)
                        )))
                    }
                }
            }
            out.add_term(Monomial::from_exponents(exps), c);
        }
        Ok(out)
    }

    /// The reality involution: conjugate every coefficient and swap each
    /// `Z_k` with its partner `ζ_k`.
    pub fn conj(&self) -> Result<Poly> {
        if !self.table.is_paired() {
            return Err(Error::usage("conjugation needs a table with a ζ-block"));
        }
        if self.uses_role(VarRole::Auxiliary) {
            return Err(Error::usage(
                "conjugation is undefined on polynomials with auxiliary variables",
            ));
        }
        let n = self.table.n();
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exponents();
            let mut swapped = e.to_vec();
            swapped[..n].copy_from_slice(&e[n..2 * n]);
            swapped[n..2 * n].copy_from_slice(&e[..n]);
            (Monomial::from_exponents(swapped), c.conj())
        });
        Ok(Poly {
            table: self.table.clone(),
            terms: terms.collect(),
        })
    }

    /// Splits `self = Σ_α x^α · c_α` where `x^α` ranges over monomials in the
    /// variables selected by `mask` and the `c_α` are free of them.
    pub fn coefficients_in(&self, mask: &[bool]) -> BTreeMap<Monomial, Poly> {
        let inverse: Vec<bool> = mask.iter().map(|b| !b).collect();
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.restrict(mask);
            out.entry(key)
                .or_insert_with(|| Poly::zero(&self.table))
                .add_term(m.restrict(&inverse), c);
        }
        out
    }

    /// Truncation to the terms of total degree `≤ deg`.
    pub fn truncate(&self, deg: u32) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = c.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Terms sorted by `order`, largest first.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &GaussRat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }
}

fn fmt_monomial(table: &VarTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in m.support() {
        let e = m.exp(i);
        if e == 1 {
            parts.push(table.name(i).to_string());
        } else {
            parts.push(format!("{}^{}", table.name(i), e));
        }
    }
    parts.join("*")
}

/// Renders a coefficient so that the output parses back under the input
/// grammar: returns `(negative, magnitude text)` where the text is empty for 1.
fn fmt_coeff(c: &GaussRat) -> (bool, String) {
    use num_traits::{One, Signed, Zero};
    let re = c.re();
    let im = c.im();
    if im.is_zero() {
        let neg = re.is_negative();
        let a = re.abs();
        return (
            neg,
            if a.is_one() {
                String::new()
            } else {
                a.to_string()
            },
        );
    }
    if re.is_zero() {
        let neg = im.is_negative();
        let a = im.abs();
        return (
            neg,
            if a.is_one() {
                "i".into()
            } else {
                format!("{a}*i")
            },
        );
    }
    let imag = if im.abs().is_one() {
        "i".to_string()
    } else {
        format!("{}*i", im.abs())
    };
    let sign = if im.is_negative() { "-" } else { "+" };
    (false, format!("({re} {sign} {imag})"))
}

impl fmt::Display for Poly {
    /// Terms in decreasing degrevlex order, e.g. `-2*z*~z + w + ~w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self
            .sorted_terms(&MonomialOrder::DegRevLex)
            .into_iter()
            .enumerate()
        {
            let (neg, mag) = fmt_coeff(c);
            let mono = fmt_monomial(&self.table, m);
            let body = match (mag.is_empty(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono,
                (false, true) => mag,
                (false, false) => format!("{mag}*{mono}"),
            };
            match (k, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    /// Panics on mismatched tables; use [`Poly::checked_add`] to handle that.
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    /// Panics on mismatched tables or degree overflow; use
    /// [`Poly::checked_mul`] to handle those.
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_poly {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
