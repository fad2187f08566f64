//! Real-analytic varieties with polynomial defining data, their Segre
//! varieties and essential varieties.

use std::sync::Arc;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, reduce_by, DimReport, Ideal};
use crate::linalg;
use crate::monomial::{BaseOrder, MonomialOrder};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::vars::{same_table, VarRole, VarTable};

/// A real-analytic variety through `0 ∈ ℂᴺ` given by defining functions
/// `σ(Z, ζ)`, where `X = {σ(Z, Z̄) = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealVariety {
    table: Arc<VarTable>,
    holo: Arc<VarTable>,
    sigma: Vec<Poly>,
    dim_hint: Option<u32>,
}

impl RealVariety {
    /// Validates that every `σ_i` vanishes at the origin and that `⟨σ⟩` is
    /// stable under the reality involution.
    pub fn new(table: &Arc<VarTable>, sigma: Vec<Poly>, dim_hint: Option<u32>) -> Result<Self> {
        if !table.is_paired() || table.aux_start() != table.len() {
            return Err(Error::usage(
                "a real variety needs a table of exactly the (Z, ζ) blocks",
            ));
        }
        if sigma.is_empty() {
            return Err(Error::usage("at least one defining function is required"));
        }
        for s in &sigma {
            if !same_table(s.table(), table) {
                return Err(Error::usage("defining function lives in a foreign table"));
            }
            if !s.constant_term().is_zero() {
                return Err(Error::invariant(
                    "passes-through-origin",
                    format!("defining function `{s}` does not vanish at 0"),
                ));
            }
        }
        let variety = RealVariety {
            table: table.clone(),
            holo: table.holomorphic_part(),
            sigma,
            dim_hint,
        };
        if let Some(bad) = variety.non_real_generator()? {
            return Err(Error::invariant(
                "reality",
                format!("conj({bad}) is not in the ideal of the defining functions"),
            ));
        }
        Ok(variety)
    }

    /// Convenience constructor parsing the defining functions.
    pub fn parse(vars: &[&str], defining: &[&str]) -> Result<Self> {
        let table = VarTable::paired(vars)?;
        let sigma = defining
            .iter()
            .map(|s| parse_poly(s, &table))
            .collect::<Result<Vec<_>>>()?;
        RealVariety::new(&table, sigma, None)
    }

    fn non_real_generator(&self) -> Result<Option<Poly>> {
        let ideal = self.complexification();
        for s in &self.sigma {
            let c = s.conj()?;
            if !ideal.contains(&c)? {
                return Ok(Some(s.clone()));
            }
        }
        Ok(None)
    }

    /// Re-checks the reality invariant.
    pub fn is_real(&self) -> Result<bool> {
        Ok(self.non_real_generator()?.is_none())
    }

    /// Paired `(Z, ζ)` table.
    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// `Z`-only table in which Segre and essential ideals live.
    pub fn holo_table(&self) -> &Arc<VarTable> {
        &self.holo
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn defining(&self) -> &[Poly] {
        &self.sigma
    }

    pub fn dim_hint(&self) -> Option<u32> {
        self.dim_hint
    }

    /// Embedding of the holomorphic table into the paired one.
    pub(crate) fn holo_to_paired(&self) -> Vec<Option<usize>> {
        (0..self.n()).map(Some).collect()
    }

    /// Moves a polynomial free of `ζ` into the holomorphic table.
    pub(crate) fn paired_to_holo(&self, p: &Poly) -> Result<Poly> {
        let map: Vec<Option<usize>> = (0..self.table.len())
            .map(|i| (i < self.n()).then_some(i))
            .collect();
        p.remap(&self.holo, &map)
    }

    /// Ideal `⟨σ_1(Z, ζ), …, σ_d(Z, ζ)⟩` of the complexification `𝒳`.
    pub fn complexification(&self) -> Ideal {
        Ideal::with_generators(&self.table, self.sigma.clone()).expect("same table")
    }

    /// Segre variety `Σ_p = {σ(Z, p̄) = 0}` as an ideal in the `Z` variables.
    pub fn segre_at(&self, p: &[GaussRat]) -> Result<Ideal> {
        let n = self.n();
        if p.len() != n {
            return Err(Error::usage(format!(
                "point needs {n} coordinates, got {}",
                p.len()
            )));
        }
        let mut images: Vec<Poly> = (0..n).map(|k| Poly::var(&self.table, k)).collect();
        images.extend(p.iter().map(|c| Poly::constant(&self.table, c.conj())));
        let gens = self
            .sigma
            .iter()
            .map(|s| self.paired_to_holo(&s.subst(&images)?))
            .collect::<Result<Vec<_>>>()?;
        Ideal::with_generators(&self.holo, gens)
    }

    /// `Σ_0`.
    pub fn segre_ideal(&self) -> Result<Ideal> {
        self.segre_at(&vec![GaussRat::zero(); self.n()])
    }

    /// `I(Σ_0^*)` as an ideal in the `ζ` variables of the paired table.
    pub fn conj_segre_ideal(&self) -> Result<Ideal> {
        let segre = self.segre_ideal()?;
        let embed = self.holo_to_paired();
        let gens = segre
            .generators()
            .iter()
            .map(|g| g.remap(&self.table, &embed)?.conj())
            .collect::<Result<Vec<_>>>()?;
        Ideal::with_generators(&self.table, gens)
    }

    /// For `p ∈ Σ_0` the Segre variety `Σ_p` passes through 0: every
    /// `σ_i(0, ζ)` lies in the radical of `I(Σ_0^*)`.
    pub fn segre_varieties_pass_through_origin(&self) -> Result<bool> {
        let conj_segre = self.conj_segre_ideal()?;
        let n = self.n();
        let mut images: Vec<Poly> = vec![Poly::zero(&self.table); n];
        images.extend((0..n).map(|k| Poly::var(&self.table, self.table.zeta(k))));
        for s in &self.sigma {
            if !conj_segre.radical_contains(&s.subst(&images)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Essential variety `E_0 = A = {Z : Σ_0 ⊂ Σ_Z}`, computed by reducing
    /// `σ(W, ζ)` modulo `I(Σ_0)` in `W` and collecting coefficients.
    pub fn essential_variety(&self, inner: BaseOrder) -> Result<EssentialReport> {
        let segre = self.segre_ideal()?;
        let identity: Vec<Poly> = (0..self.n()).map(|k| Poly::var(&self.holo, k)).collect();
        let ideal = segre_containment_locus(self, &identity, &segre, inner)?;
        let dim = ideal.dimension()?;
        Ok(EssentialReport {
            essentially_finite: dim.zero_dimensional,
            ideal,
            dim,
        })
    }

    /// `I(𝒳) ⊂ J + I(ℂᴺ × Σ_0^*)`.
    pub fn check_condition_c(&self, j: &Ideal) -> Result<bool> {
        let combined = self.with_conj_segre(j)?;
        combined.contains_all(&self.sigma)
    }

    /// `Γ × Σ_0^* ⊂ 𝒳` for the variety `Γ = V(gamma)`: each `σ_i` lies in
    /// the radical of `I(Γ) + I(Σ_0^*)`.
    pub fn check_condition_b(&self, gamma: &Ideal) -> Result<bool> {
        let combined = self.with_conj_segre(gamma)?;
        combined.radical_contains_all(&self.sigma)
    }

    fn with_conj_segre(&self, j: &Ideal) -> Result<Ideal> {
        if !same_table(j.table(), &self.holo) {
            return Err(Error::usage(
                "the witness ideal must live in the Z variables",
            ));
        }
        if j.is_unit()? {
            return Err(Error::usage("the witness ideal is the unit ideal"));
        }
        if let Some(g) = j.generators().iter().find(|g| !g.constant_term().is_zero()) {
            return Err(Error::usage(format!(
                "witness generator `{g}` does not vanish at 0"
            )));
        }
        let embed = self.holo_to_paired();
        let mut gens = j
            .generators()
            .iter()
            .map(|g| g.remap(&self.table, &embed))
            .collect::<Result<Vec<_>>>()?;
        gens.extend(self.conj_segre_ideal()?.generators().iter().cloned());
        Ideal::with_generators(&self.table, gens)
    }

    /// For a curve `μ(s)` through 0: every `s`-coefficient (up to `jet_cap`)
    /// of `σ(μ(s), ζ)` vanishes on `Σ_0^*`.
    pub fn check_condition_d(&self, mu: &[Poly], jet_cap: u32) -> Result<bool> {
        let n = self.n();
        if mu.len() != n {
            return Err(Error::usage(format!(
                "curve needs {n} components, got {}",
                mu.len()
            )));
        }
        let curve_table = mu[0].table().clone();
        if curve_table.len() != 1 || mu.iter().any(|c| !same_table(c.table(), &curve_table)) {
            return Err(Error::usage(
                "curve components must be polynomials in one shared variable",
            ));
        }
        if mu.iter().all(Poly::is_zero) {
            return Err(Error::usage("the curve is trivial"));
        }
        if let Some(c) = mu.iter().find(|c| !c.constant_term().is_zero()) {
            return Err(Error::usage(format!(
                "curve component `{c}` has a constant term"
            )));
        }
        let ext = self.table.with_aux(&["@s"])?;
        let s_idx = ext.len() - 1;
        let lift: Vec<Option<usize>> = (0..self.table.len()).map(Some).collect();
        let mut images = mu
            .iter()
            .map(|c| c.remap(&ext, &[Some(s_idx)]))
            .collect::<Result<Vec<_>>>()?;
        images.extend((0..n).map(|k| Poly::var(&ext, self.table.zeta(k))));
        images.push(Poly::var(&ext, s_idx));
        let conj_segre = self.conj_segre_ideal()?;
        let mut mask = vec![false; ext.len()];
        mask[s_idx] = true;
        let back: Vec<Option<usize>> = (0..ext.len())
            .map(|i| (i < self.table.len()).then_some(i))
            .collect();
        for s in &self.sigma {
            let along = s.remap(&ext, &lift)?.subst(&images)?;
            for (power, coeff) in along.coefficients_in(&mask) {
                if power.exp(s_idx) > jet_cap {
                    continue;
                }
                if !conj_segre.radical_contains(&coeff.remap(&self.table, &back)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A real variety whose defining functions have independent holomorphic
/// differentials at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericSubmanifold {
    variety: RealVariety,
}

impl GenericSubmanifold {
    pub fn new(variety: RealVariety) -> Result<Self> {
        let n = variety.n();
        let d = variety.sigma.len();
        if d > n {
            return Err(Error::invariant(
                "genericity",
                format!("{d} defining functions in ℂ^{n}"),
            ));
        }
        let rows = variety.sigma.iter().map(|s| {
            (0..n)
                .map(|k| s.derivative(k).constant_term())
                .collect::<Vec<_>>()
        });
        let r = linalg::rank(rows, n);
        if r != d {
            return Err(Error::invariant(
                "genericity",
                format!("∂σ/∂Z has rank {r} at 0, expected {d}"),
            ));
        }
        if let Some(m) = variety.dim_hint {
            let expected = 2 * n as u32 - d as u32;
            if m != expected {
                return Err(Error::invariant(
                    "dimension",
                    format!("declared real dimension {m}, a generic submanifold of codimension {d} in ℂ^{n} has {expected}"),
                ));
            }
        }
        Ok(GenericSubmanifold { variety })
    }

    pub fn parse(vars: &[&str], defining: &[&str]) -> Result<Self> {
        GenericSubmanifold::new(RealVariety::parse(vars, defining)?)
    }

    pub fn codim(&self) -> usize {
        self.variety.sigma.len()
    }

    pub fn variety(&self) -> &RealVariety {
        &self.variety
    }

    pub fn into_variety(self) -> RealVariety {
        self.variety
    }
}

impl std::ops::Deref for GenericSubmanifold {
    type Target = RealVariety;
    fn deref(&self) -> &RealVariety {
        &self.variety
    }
}

/// Result of the essential-variety computation.
#[derive(Clone, Debug)]
pub struct EssentialReport {
    /// Ideal of `E_0` in the `Z` variables (reduced basis under degrevlex).
    pub ideal: Ideal,
    pub dim: DimReport,
    pub essentially_finite: bool,
}

/// Ideal of the points `Z̃` of `target` whose Segre ideal, pulled back by
/// `map`, vanishes on `V(source_segre)`:
/// `{Z̃ : σ̃(map(W), Z̃‾) ∈ I(Σ_0)}`.
///
/// `σ̃(map(W), ζ̃)` is reduced modulo `I(Σ_0)` (written in an auxiliary copy
/// `W` of the source variables) under a block order with `W ≫ ζ̃`; the
/// coefficients of the remainder's `W`-monomials are conjugated into `Z̃`.
pub(crate) fn segre_containment_locus(
    target: &RealVariety,
    map: &[Poly],
    source_segre: &Ideal,
    inner: BaseOrder,
) -> Result<Ideal> {
    let tt = target.table();
    let nt = target.n();
    let source = source_segre.table();
    if map.len() != nt {
        return Err(Error::usage(format!(
            "map has {} components, target lives in ℂ^{nt}",
            map.len()
        )));
    }
    if map.iter().any(|c| !same_table(c.table(), source)) {
        return Err(Error::usage(
            "map components and the source Segre ideal use different tables",
        ));
    }
    let aux: Vec<String> = source.names().iter().map(|s| format!("{s}'")).collect();
    let ext = tt.with_aux(&aux)?;
    let base = tt.len();
    let to_ext: Vec<Option<usize>> = (0..source.len()).map(|k| Some(base + k)).collect();
    let aux_idx: Vec<usize> = (base..ext.len()).collect();
    let order = MonomialOrder::elimination(ext.len(), &aux_idx, inner, inner);

    let segre_gens = source_segre
        .generators()
        .iter()
        .map(|g| g.remap(&ext, &to_ext))
        .collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&segre_gens, &order)?;

    let mut images = map
        .iter()
        .map(|c| c.remap(&ext, &to_ext))
        .collect::<Result<Vec<_>>>()?;
    images.extend((0..nt).map(|k| Poly::var(&ext, tt.zeta(k))));
    images.extend(aux_idx.iter().map(|&i| Poly::var(&ext, i)));

    let lift: Vec<Option<usize>> = (0..base).map(Some).collect();
    let mut mask = vec![false; ext.len()];
    for &i in &aux_idx {
        mask[i] = true;
    }
    let to_holo: Vec<Option<usize>> = (0..ext.len()).map(|i| (i < nt).then_some(i)).collect();
    let mut gens = Vec::new();
    for s in target.defining() {
        let pulled = s.remap(&ext, &lift)?.subst(&images)?;
        let rem = reduce_by(&pulled, &gb, &order)?;
        for (_, coeff) in rem.coefficients_in(&mask) {
            debug_assert!(!coeff.uses_role(VarRole::Auxiliary));
            let conj = coeff.conj()?;
            gens.push(conj.remap(target.holo_table(), &to_holo)?);
        }
    }
    let ideal = Ideal::with_generators(target.holo_table(), gens)?;
    let basis = ideal.basis()?.to_vec();
    Ideal::with_generators(target.holo_table(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg() -> RealVariety {
        RealVariety::parse(&["z", "w"], &["w + ~w - 2*z*~z"]).unwrap()
    }

    fn holo_polys(x: &RealVariety, xs: &[&str]) -> Vec<Poly> {
        xs.iter()
            .map(|s| parse_poly(s, x.holo_table()).unwrap())
            .collect()
    }

    #[test]
    fn segre_of_heisenberg() {
        let x = heisenberg();
        let s0 = x.segre_ideal().unwrap();
        assert_eq!(s0.generators(), holo_polys(&x, &["w"]).as_slice());
        let s1 = x.segre_at(&[GaussRat::one(), GaussRat::zero()]).unwrap();
        assert_eq!(s1.generators(), holo_polys(&x, &["w - 2*z"]).as_slice());
        // conjugation of the base point
        let si = x.segre_at(&[GaussRat::i(), GaussRat::zero()]).unwrap();
        assert_eq!(si.generators(), holo_polys(&x, &["w + 2*i*z"]).as_slice());
    }

    #[test]
    fn rejects_non_real_and_non_vanishing_data() {
        assert!(matches!(
            RealVariety::parse(&["z", "w"], &["w"]),
            Err(Error::Invariant {
                invariant: "reality",
                ..
            })
        ));
        assert!(matches!(
            RealVariety::parse(&["z", "w"], &["w + ~w - 1"]),
            Err(Error::Invariant {
                invariant: "passes-through-origin",
                ..
            })
        ));
        // stable ideal with individually non-real generators is accepted
        assert!(RealVariety::parse(&["z", "w"], &["i*(w - ~w)"]).is_ok());
    }

    #[test]
    fn genericity() {
        assert!(GenericSubmanifold::parse(&["z", "w"], &["w + ~w - 2*z*~z"]).is_ok());
        assert!(matches!(
            GenericSubmanifold::parse(&["z", "w"], &["w*~w + z*~z"]),
            Err(Error::Invariant {
                invariant: "genericity",
                ..
            })
        ));
    }

    #[test]
    fn condition_c_and_b() {
        let x = heisenberg();
        let j = Ideal::with_generators(x.holo_table(), holo_polys(&x, &["z", "w"])).unwrap();
        assert!(x.check_condition_c(&j).unwrap());
        assert!(x.check_condition_b(&j).unwrap());
        let j = Ideal::with_generators(x.holo_table(), holo_polys(&x, &["w"])).unwrap();
        assert!(!x.check_condition_c(&j).unwrap());
        assert!(!x.check_condition_b(&j).unwrap());
        let unit = Ideal::with_generators(x.holo_table(), holo_polys(&x, &["1"])).unwrap();
        assert!(matches!(x.check_condition_c(&unit), Err(Error::Usage(_))));
    }

    #[test]
    fn condition_d_rejects_trivial_curves() {
        let x = heisenberg();
        let s = VarTable::holomorphic(&["s"]).unwrap();
        let zero = vec![Poly::zero(&s), Poly::zero(&s)];
        assert!(matches!(
            x.check_condition_d(&zero, 4),
            Err(Error::Usage(_))
        ));
        let off = vec![parse_poly("1 + s", &s).unwrap(), Poly::zero(&s)];
        assert!(matches!(x.check_condition_d(&off, 4), Err(Error::Usage(_))));
        let mu = vec![parse_poly("s", &s).unwrap(), Poly::zero(&s)];
        assert!(!x.check_condition_d(&mu, 4).unwrap());
    }
}
