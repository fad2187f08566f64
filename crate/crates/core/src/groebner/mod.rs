//! Ideals, Buchberger's algorithm and normal forms.

mod dim;
mod elim;
mod local;

pub use dim::{krull_dim_of_monomials, DimReport};
pub use elim::preimage_under_map;
pub use local::LocalColength;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::sync::{Arc, OnceLock};

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::vars::{same_table, Limits, VarTable};

type Term = (Monomial, GaussRat);

/// Polynomial as a term list sorted decreasingly under a fixed order.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<Term>,
}

impl Sorted {
    fn from_poly(p: &Poly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Sorted { terms }
    }

    fn to_poly(&self, table: &Arc<VarTable>) -> Poly {
        Poly::from_terms(table, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &GaussRat {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some(inv) = self.terms.first().and_then(|t| t.1.inv()) {
            if !inv.is_one() {
                for t in &mut self.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }
}

/// `f − c·m·g` by merging, where `f` is a sorted slice.
fn sub_scaled(
    f: &[Term],
    c: &GaussRat,
    m: &Monomial,
    g: &Sorted,
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<Vec<Term>> {
    let deg = m.degree() + g.max_degree();
    if deg > limits.max_degree {
        return Err(Error::resource(
            "monomial degree cap",
            format!("reduction produced degree {deg} > {}", limits.max_degree),
        ));
    }
    let mut out = Vec::with_capacity(f.len() + g.terms.len());
    let mut i = 0;
    let mut gi = g
        .terms
        .iter()
        .map(|(gm, gc)| (gm.mul(m), gc * c))
        .peekable();
    while i < f.len() || gi.peek().is_some() {
        let ord = match (f.get(i), gi.peek()) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (bm, bc) = gi.next().unwrap();
                out.push((bm, -bc));
            }
            Ordering::Equal => {
                let (bm, bc) = gi.next().unwrap();
                let v = &f[i].1 - &bc;
                if !v.is_zero() {
                    out.push((bm, v));
                }
                i += 1;
            }
        }
    }
    if out.len() > limits.max_terms {
        return Err(Error::resource(
            "term count cap",
            format!(
                "intermediate polynomial has {} terms > {}",
                out.len(),
                limits.max_terms
            ),
        ));
    }
    Ok(out)
}

/// Full reduction of `f` by `basis`; the first basis element (by index) whose
/// leading monomial divides the current term is used.
fn reduce(f: Sorted, basis: &[Sorted], order: &MonomialOrder, limits: &Limits) -> Result<Sorted> {
    let mut rem: Vec<Term> = Vec::new();
    let mut cur = f.terms;
    let mut start = 0;
    while start < cur.len() {
        let (m, c) = &cur[start];
        match basis.iter().find(|g| !g.is_zero() && g.lm().divides(m)) {
            Some(g) => {
                let q = g.lm().quotient_of(m);
                let coef = c / g.lc();
                cur = sub_scaled(&cur[start..], &coef, &q, g, order, limits)?;
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    Ok(Sorted { terms: rem })
}

fn s_polynomial(a: &Sorted, b: &Sorted, order: &MonomialOrder, limits: &Limits) -> Result<Sorted> {
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().quotient_of(&l);
    let mb = b.lm().quotient_of(&l);
    // (lcm/lm(a))·a/lc(a) − (lcm/lm(b))·b/lc(b)
    let ca = a.lc().inv().expect("nonzero");
    let scaled_a = sub_scaled(&[], &-ca, &ma, a, order, limits)?;
    let cb = b.lc().inv().expect("nonzero");
    let terms = sub_scaled(&scaled_a, &cb, &mb, b, order, limits)?;
    Ok(Sorted { terms })
}

/// Computes the reduced Gröbner basis of `gens` under `order`.
///
/// Pairs are processed by increasing degree of their lcm, ties broken by
/// generator indices; Buchberger's product and chain criteria prune pairs.
/// The result is monic, inter-reduced and sorted by increasing leading
/// monomial, so it is a canonical form of the ideal.
pub fn buchberger(gens: &[Poly], order: &MonomialOrder) -> Result<Vec<Poly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let table = first.table().clone();
    for g in gens {
        if !same_table(g.table(), &table) {
            return Err(Error::usage("generators live in different variable tables"));
        }
    }
    let limits = *table.limits();
    let mut basis: Vec<Sorted> = Vec::new();
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut processed = 0usize;

    let add = |s: Sorted,
               basis: &mut Vec<Sorted>,
               queue: &mut BTreeSet<(u32, usize, usize)>,
               pending: &mut HashSet<(usize, usize)>|
     -> Result<()> {
        if basis.len() >= limits.max_basis {
            return Err(Error::resource(
                "Gröbner basis size cap",
                format!(
                    "basis reached {} elements with {} pairs pending",
                    basis.len(),
                    queue.len()
                ),
            ));
        }
        let j = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let deg = b.lm().lcm(s.lm()).degree();
            queue.insert((deg, j, i));
            pending.insert((i, j));
        }
        basis.push(s);
        Ok(())
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut s = Sorted::from_poly(g, order);
        s.make_monic();
        add(s, &mut basis, &mut queue, &mut pending)?;
    }

    while let Some(key) = queue.pop_first() {
        let (_, j, i) = key;
        pending.remove(&(i, j));
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::resource(
                "S-pair cap",
                format!(
                    "{} pairs processed, basis size {}, {} pending",
                    processed - 1,
                    basis.len(),
                    queue.len()
                ),
            ));
        }
        let (a, b) = (&basis[i], &basis[j]);
        if a.lm().coprime(b.lm()) {
            continue;
        }
        let l = a.lm().lcm(b.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(a, b, order, &limits)?;
        let mut r = reduce(s, &basis, order, &limits)?;
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.lm().is_one() {
            return Ok(vec![Poly::one(&table)]);
        }
        add(r, &mut basis, &mut queue, &mut pending)?;
    }

    finish(basis, &table, order, &limits)
}

/// Minimalizes and inter-reduces a Gröbner basis.
fn finish(
    basis: Vec<Sorted>,
    table: &Arc<VarTable>,
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<Vec<Poly>> {
    if basis.iter().any(|b| b.lm().is_one()) {
        return Ok(vec![Poly::one(table)]);
    }
    let mut minimal: Vec<Sorted> = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, o)| k != i && o.lm().divides(b.lm()) && (o.lm() != b.lm() || k < i));
        if !redundant {
            minimal.push(b.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, s)| s.clone())
            .collect();
        let head = minimal[i].terms[0].clone();
        let tail = Sorted {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let mut r = reduce(tail, &others, order, limits)?;
        r.terms.insert(0, head);
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced.iter().map(|s| s.to_poly(table)).collect())
}

/// All S-polynomials of `basis` reduce to zero against it.
pub fn is_groebner_basis(basis: &[Poly], order: &MonomialOrder) -> Result<bool> {
    let Some(first) = basis.first() else {
        return Ok(true);
    };
    let limits = *first.table().limits();
    let sorted: Vec<Sorted> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| Sorted::from_poly(p, order))
        .collect();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let s = s_polynomial(&sorted[i], &sorted[j], order, &limits)?;
            if !reduce(s, &sorted, order, &limits)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Remainder of `f` on division by `divisors` (not necessarily a basis).
pub fn reduce_by(f: &Poly, divisors: &[Poly], order: &MonomialOrder) -> Result<Poly> {
    let limits = *f.table().limits();
    for d in divisors {
        if !same_table(d.table(), f.table()) {
            return Err(Error::usage("divisor lives in a different variable table"));
        }
    }
    let basis: Vec<Sorted> = divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| Sorted::from_poly(d, order))
        .collect();
    Ok(reduce(Sorted::from_poly(f, order), &basis, order, &limits)?.to_poly(f.table()))
}

/// An ideal given by generators, with a write-once cache of its reduced
/// Gröbner basis under `order`.
#[derive(Clone, Debug)]
pub struct Ideal {
    table: Arc<VarTable>,
    generators: Vec<Poly>,
    order: MonomialOrder,
    gb: OnceLock<Vec<Poly>>,
}

impl Ideal {
    pub fn new(table: &Arc<VarTable>, generators: Vec<Poly>, order: MonomialOrder) -> Result<Self> {
        for g in &generators {
            if !same_table(g.table(), table) {
                return Err(Error::usage(format!(
                    "generator `{g}` does not belong to the ideal's variable table"
                )));
            }
        }
        Ok(Ideal {
            table: table.clone(),
            generators,
            order,
            gb: OnceLock::new(),
        })
    }

    /// Ideal under the default graded reverse lexicographic order.
    pub fn with_generators(table: &Arc<VarTable>, generators: Vec<Poly>) -> Result<Self> {
        Self::new(table, generators, MonomialOrder::DegRevLex)
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        Ideal {
            table: table.clone(),
            generators: Vec::new(),
            order: MonomialOrder::DegRevLex,
            gb: OnceLock::new(),
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// The same ideal viewed under another order (fresh cache).
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        Ideal {
            table: self.table.clone(),
            generators: self.generators.clone(),
            order,
            gb: OnceLock::new(),
        }
    }

    /// A new ideal with one more generator (fresh cache).
    pub fn with_generator(&self, g: Poly) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Ideal::new(&self.table, gens, self.order.clone())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.table, gens, self.order.clone())
    }

    /// Reduced Gröbner basis, computed on first use.
    pub fn basis(&self) -> Result<&[Poly]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = buchberger(&self.generators, &self.order)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(matches!(self.basis()?, [one] if one.is_constant() && !one.is_zero()))
    }

    pub fn is_zero_ideal(&self) -> Result<bool> {
        Ok(self.basis()?.is_empty())
    }

    /// Remainder with no term divisible by a leading monomial of the basis.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        if !same_table(f.table(), &self.table) {
            return Err(Error::usage(
                "polynomial and ideal live in different tables",
            ));
        }
        let basis = self.basis()?;
        reduce_by(f, basis, &self.order)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_all(&self, fs: &[Poly]) -> Result<bool> {
        for f in fs {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f ∈ √I`, decided by `1 ∈ I + ⟨1 − y·f⟩` over the table extended by
    /// one auxiliary variable `y`.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        if !same_table(f.table(), &self.table) {
            return Err(Error::usage(
                "polynomial and ideal live in different tables",
            ));
        }
        if f.is_zero() || self.contains(f)? {
            return Ok(true);
        }
        let n = self.table.len();
        let ext = self.table.with_aux(&["@y"])?;
        let embed: Vec<Option<usize>> = (0..n).map(Some).collect();
        let mut gens = Vec::with_capacity(self.generators.len() + 1);
        for g in &self.generators {
            gens.push(g.remap(&ext, &embed)?);
        }
        let y = Poly::var(&ext, n);
        let fy = f.remap(&ext, &embed)?.checked_mul(&y)?;
        gens.push(Poly::one(&ext).checked_sub(&fy)?);
        let gb = buchberger(&gens, &MonomialOrder::DegRevLex)?;
        Ok(matches!(gb.as_slice(), [one] if one.is_constant()))
    }

    pub fn radical_contains_all(&self, fs: &[Poly]) -> Result<bool> {
        for f in fs {
            if !self.radical_contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `other ⊆ self`, by generator membership.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.contains_all(&other.generators)
    }

    /// Equality by two-way generator membership.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::usage("ideals live in different tables"));
        }
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// Transfers the ideal into `target` by renaming variables.
    pub fn remap(
        &self,
        target: &Arc<VarTable>,
        map: &[Option<usize>],
        order: MonomialOrder,
    ) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.remap(target, map))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens, order)
    }

    /// Reduced basis under the graded reverse lexicographic order, the
    /// canonical form used when reporting ideals.
    pub fn canonical_basis(&self) -> Result<Vec<Poly>> {
        if self.order == MonomialOrder::DegRevLex {
            return Ok(self.basis()?.to_vec());
        }
        buchberger(self.basis()?, &MonomialOrder::DegRevLex)
    }

    /// Ideal `I ∩ K[keep]`, computed with a block order eliminating the other
    /// variables. The result stays in the same table.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        elim::eliminate(self, keep)
    }

    pub fn dimension(&self) -> Result<DimReport> {
        dim::dimension(self)
    }

    pub fn local_colength(&self, cap: u32) -> Result<LocalColength> {
        local::local_colength(self, cap)
    }
}
