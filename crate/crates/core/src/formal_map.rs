//! Polynomial jets of formal holomorphic maps `H : (ℂᴺ, 0) → (ℂᴺ, 0)` and
//! the analyticity criterion built on them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite_type::{finite_type_order, TypeReport, TypeStatus};
use crate::groebner::{preimage_under_map, DimReport, Ideal, LocalColength};
use crate::linalg;
use crate::monomial::BaseOrder;
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::variety::{segre_containment_locus, EssentialReport, GenericSubmanifold, RealVariety};
use crate::vars::{same_table, VarTable};

/// Components `H_1, …, H_N` in the holomorphic variables of the source.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalMapJet {
    table: Arc<VarTable>,
    components: Vec<Poly>,
    degree_cap: u32,
}

impl FormalMapJet {
    /// Validates that no component has a constant term and that every
    /// monomial has degree at most `degree_cap`.
    pub fn new(table: &Arc<VarTable>, components: Vec<Poly>, degree_cap: u32) -> Result<Self> {
        if table.is_paired() || table.aux_start() != table.len() {
            return Err(Error::usage("map components must live in a Z-only table"));
        }
        if components.is_empty() {
            return Err(Error::usage("a map needs at least one component"));
        }
        for c in &components {
            if !same_table(c.table(), table) {
                return Err(Error::usage("map component lives in a foreign table"));
            }
            if !c.constant_term().is_zero() {
                return Err(Error::invariant(
                    "no-constant-term",
                    format!("component `{c}` has a constant term"),
                ));
            }
            if let Some(d) = c.total_degree() {
                if d > degree_cap {
                    return Err(Error::invariant(
                        "degree-cap",
                        format!("component `{c}` has degree {d} > {degree_cap}"),
                    ));
                }
            }
        }
        Ok(FormalMapJet {
            table: table.clone(),
            components,
            degree_cap,
        })
    }

    /// Degree cap defaults to the largest component degree.
    pub fn parse(table: &Arc<VarTable>, components: &[&str]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|s| parse_poly(s, table))
            .collect::<Result<Vec<_>>>()?;
        let cap = comps
            .iter()
            .filter_map(Poly::total_degree)
            .max()
            .unwrap_or(1);
        FormalMapJet::new(table, comps, cap)
    }

    pub fn identity(table: &Arc<VarTable>) -> Self {
        let comps = (0..table.len()).map(|k| Poly::var(table, k)).collect();
        FormalMapJet {
            table: table.clone(),
            components: comps,
            degree_cap: 1,
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// `I(H) = ⟨H_1, …, H_N⟩`.
    pub fn component_ideal(&self) -> Ideal {
        Ideal::with_generators(&self.table, self.components.clone()).expect("same table")
    }

    /// `H` is finite iff `I(H)` has finite codimension in `ℂ[[Z]]`.
    pub fn is_finite_map(&self, cap: u32) -> Result<LocalColength> {
        self.component_ideal().local_colength(cap)
    }

    /// `det(∂H_i/∂Z_j) ≢ 0`.
    pub fn jacobian_nonvanishing(&self) -> Result<bool> {
        let n = self.table.len();
        if self.components.len() != n {
            return Err(Error::usage("the Jacobian determinant needs a square map"));
        }
        let jac: Vec<Vec<Poly>> = self
            .components
            .iter()
            .map(|h| (0..n).map(|j| h.derivative(j)).collect())
            .collect();
        Ok(!linalg::poly_det(&jac, &self.table)?.is_zero())
    }

    fn check_source(&self, m: &RealVariety) -> Result<()> {
        if !same_table(&self.table, m.holo_table()) {
            return Err(Error::usage(
                "the map is not written in the source variables",
            ));
        }
        Ok(())
    }

    fn check_target(&self, xt: &RealVariety) -> Result<()> {
        if self.components.len() != xt.n() {
            return Err(Error::usage(format!(
                "map has {} components, target lives in ℂ^{}",
                self.components.len(),
                xt.n()
            )));
        }
        Ok(())
    }

    /// `σ̃(H(Z), H̄(ζ)) ∈ ⟨σ(Z, ζ)⟩` for every defining function of the
    /// target; the complexified map is `(H(Z), H̄(ζ))` with `H̄` obtained by
    /// conjugating coefficients.
    pub fn maps_into(&self, m: &RealVariety, xt: &RealVariety) -> Result<bool> {
        self.check_source(m)?;
        self.check_target(xt)?;
        let t = m.table();
        let embed = m.holo_to_paired();
        let lifted = self
            .components
            .iter()
            .map(|h| h.remap(t, &embed))
            .collect::<Result<Vec<_>>>()?;
        let mut images = lifted.clone();
        for h in &lifted {
            images.push(h.conj()?);
        }
        let ideal = m.complexification();
        for s in xt.defining() {
            if !ideal.contains(&s.subst(&images)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks `φ_H^{-1}(I(Σ_0)) = I(Σ̃_0)` and the equality of dimensions.
    pub fn verify_segre_preimage_identity(
        &self,
        m: &RealVariety,
        xt: &RealVariety,
        colength_cap: u32,
    ) -> Result<PreimageReport> {
        self.check_source(m)?;
        self.check_target(xt)?;
        let finiteness = self.is_finite_map(colength_cap)?;
        let maps_into = self.maps_into(m, xt)?;
        let source_segre = m.segre_ideal()?;
        let preimage = preimage_under_map(&source_segre, &self.components, xt.holo_table())?;
        let target_segre = xt.segre_ideal()?;
        let ideals_equal = preimage.same_ideal(&target_segre)?;
        let preimage_dim = preimage.dimension()?;
        let target_dim = target_segre.dimension()?;
        let source_dim = source_segre.dimension()?;
        let status = if let LocalColength::UnknownBeyond(cap) = finiteness {
            PreimageStatus::Inconclusive(format!(
                "map finiteness not certified up to jet order {cap}"
            ))
        } else if !maps_into {
            PreimageStatus::Inconclusive("the map does not send the source into the target".into())
        } else if ideals_equal && source_dim.krull_dim == target_dim.krull_dim {
            PreimageStatus::Verified
        } else {
            PreimageStatus::Failed
        };
        Ok(PreimageReport {
            status,
            map_finite: finiteness,
            maps_into,
            ideals_equal,
            dims_equal: source_dim.krull_dim == target_dim.krull_dim,
            preimage_basis: preimage.canonical_basis()?,
            target_segre_basis: target_segre.canonical_basis()?,
            source_segre_dim: source_dim,
            preimage_dim,
            target_segre_dim: target_dim,
        })
    }

    /// The criterion variety `C = {Z̃ : φ_H(I(Σ̃_Z̃)) ⊂ I(Σ_0)}`.
    pub fn criterion_variety(
        &self,
        m: &RealVariety,
        xt: &RealVariety,
        inner: BaseOrder,
    ) -> Result<CriterionReport> {
        self.check_source(m)?;
        self.check_target(xt)?;
        let segre = m.segre_ideal()?;
        let ideal = segre_containment_locus(xt, &self.components, &segre, inner)?;
        let dim = ideal.dimension()?;
        Ok(CriterionReport { ideal, dim })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreimageStatus {
    /// Both identities hold.
    Verified,
    /// Hypotheses hold but an identity failed.
    Failed,
    /// A hypothesis of the identity does not hold; the named one is reported.
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct PreimageReport {
    pub status: PreimageStatus,
    pub map_finite: LocalColength,
    pub maps_into: bool,
    pub ideals_equal: bool,
    pub dims_equal: bool,
    pub preimage_basis: Vec<Poly>,
    pub target_segre_basis: Vec<Poly>,
    pub source_segre_dim: DimReport,
    pub preimage_dim: DimReport,
    pub target_segre_dim: DimReport,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    /// Ideal of `C` in the target variables.
    pub ideal: Ideal,
    pub dim: DimReport,
}

impl CriterionReport {
    pub fn satisfied(&self) -> bool {
        self.dim.zero_dimensional
    }
}

/// Caps used by the verdict pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Longest bracket word tried by the finite type test.
    pub bracket_cap: u32,
    /// Highest jet order tried by the local colength test.
    pub colength_cap: u32,
    /// Highest curve coefficient inspected by witness checks.
    pub jet_cap: u32,
    pub order: BaseOrder,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            bracket_cap: 8,
            colength_cap: 8,
            jet_cap: 8,
            order: BaseOrder::DegRevLex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InconclusiveReason {
    FiniteTypeUndetermined { cap: u32 },
    SourceNotEssentiallyFinite,
    MapFinitenessUnknown { cap: u32 },
    MapNotInto,
    CriterionPositiveDimensional { dim: i64 },
}

impl std::fmt::Display for InconclusiveReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InconclusiveReason::FiniteTypeUndetermined { cap } => {
                write!(
                    f,
                    "source finite type undetermined up to bracket length {cap}"
                )
            }
            InconclusiveReason::SourceNotEssentiallyFinite => {
                write!(f, "source not essentially finite")
            }
            InconclusiveReason::MapFinitenessUnknown { cap } => {
                write!(f, "map finiteness not certified up to jet order {cap}")
            }
            InconclusiveReason::MapNotInto => {
                write!(f, "map does not send the source into the target")
            }
            InconclusiveReason::CriterionPositiveDimensional { dim } => {
                write!(f, "criterion variety has dimension {dim}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    CriterionSatisfied,
    Inconclusive(InconclusiveReason),
}

#[derive(Clone, Debug)]
pub struct VerdictReport {
    pub finite_type: TypeReport,
    pub essential: EssentialReport,
    pub source_ess_finite: bool,
    pub map_finite: LocalColength,
    pub maps_into: bool,
    pub criterion: CriterionReport,
    pub verdict: Verdict,
}

struct Parts {
    finite_type: Result<TypeReport>,
    essential: Result<EssentialReport>,
    map_finite: Result<LocalColength>,
    maps_into: Result<bool>,
    criterion: Result<CriterionReport>,
}

fn assemble(p: Parts) -> Result<VerdictReport> {
    let finite_type = p.finite_type?;
    let essential = p.essential?;
    let map_finite = p.map_finite?;
    let maps_into = p.maps_into?;
    let criterion = p.criterion?;
    let verdict = if let TypeStatus::UndeterminedBeyond(cap) = finite_type.status {
        Verdict::Inconclusive(InconclusiveReason::FiniteTypeUndetermined { cap })
    } else if !essential.essentially_finite {
        Verdict::Inconclusive(InconclusiveReason::SourceNotEssentiallyFinite)
    } else if let LocalColength::UnknownBeyond(cap) = map_finite {
        Verdict::Inconclusive(InconclusiveReason::MapFinitenessUnknown { cap })
    } else if !maps_into {
        Verdict::Inconclusive(InconclusiveReason::MapNotInto)
    } else if !criterion.dim.zero_dimensional {
        Verdict::Inconclusive(InconclusiveReason::CriterionPositiveDimensional {
            dim: criterion.dim.krull_dim,
        })
    } else {
        Verdict::CriterionSatisfied
    };
    Ok(VerdictReport {
        finite_type,
        source_ess_finite: essential.essentially_finite,
        essential,
        map_finite,
        maps_into,
        criterion,
        verdict,
    })
}

/// Runs the five sub-analyses and combines them. The verdict is
/// `CriterionSatisfied` only when the source is of finite type and
/// essentially finite, the map is finite and sends source into target, and
/// the criterion variety is zero-dimensional; otherwise the first failing
/// prerequisite is named.
pub fn analyticity_verdict(
    m: &GenericSubmanifold,
    xt: &RealVariety,
    h: &FormalMapJet,
    caps: Caps,
) -> Result<VerdictReport> {
    assemble(Parts {
        finite_type: finite_type_order(m, caps.bracket_cap),
        essential: m.essential_variety(caps.order),
        map_finite: h.is_finite_map(caps.colength_cap),
        maps_into: h.maps_into(m, xt),
        criterion: h.criterion_variety(m, xt, caps.order),
    })
}

/// Same as [`analyticity_verdict`], with the sub-analyses on scoped threads.
pub fn analyticity_verdict_concurrent(
    m: &GenericSubmanifold,
    xt: &RealVariety,
    h: &FormalMapJet,
    caps: Caps,
) -> Result<VerdictReport> {
    std::thread::scope(|s| {
        let ft = s.spawn(|| finite_type_order(m, caps.bracket_cap));
        let ess = s.spawn(|| m.essential_variety(caps.order));
        let fin = s.spawn(|| h.is_finite_map(caps.colength_cap));
        let into = s.spawn(|| h.maps_into(m, xt));
        let crit = s.spawn(|| h.criterion_variety(m, xt, caps.order));
        assemble(Parts {
            finite_type: ft.join().expect("finite type worker"),
            essential: ess.join().expect("essential variety worker"),
            map_finite: fin.join().expect("finiteness worker"),
            maps_into: into.join().expect("maps-into worker"),
            criterion: crit.join().expect("criterion worker"),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobians() {
        let t = VarTable::holomorphic(&["z", "w"]).unwrap();
        assert!(FormalMapJet::parse(&t, &["z^2", "w"])
            .unwrap()
            .jacobian_nonvanishing()
            .unwrap());
        assert!(!FormalMapJet::parse(&t, &["z", "z"])
            .unwrap()
            .jacobian_nonvanishing()
            .unwrap());
    }

    #[test]
    fn validation() {
        let t = VarTable::holomorphic(&["z", "w"]).unwrap();
        assert!(matches!(
            FormalMapJet::parse(&t, &["1 + z", "w"]),
            Err(Error::Invariant {
                invariant: "no-constant-term",
                ..
            })
        ));
        let comps = vec![parse_poly("z^3", &t).unwrap(), parse_poly("w", &t).unwrap()];
        assert!(matches!(
            FormalMapJet::new(&t, comps, 2),
            Err(Error::Invariant {
                invariant: "degree-cap",
                ..
            })
        ));
    }

    #[test]
    fn finiteness() {
        let t = VarTable::holomorphic(&["z", "w"]).unwrap();
        let fold = FormalMapJet::parse(&t, &["z^2", "w"]).unwrap();
        assert_eq!(fold.is_finite_map(6).unwrap(), LocalColength::Finite(2));
        assert_eq!(
            FormalMapJet::identity(&t).is_finite_map(6).unwrap(),
            LocalColength::Finite(1)
        );
        let degenerate = FormalMapJet::parse(&t, &["z", "0"]).unwrap();
        assert_eq!(
            degenerate.is_finite_map(6).unwrap(),
            LocalColength::UnknownBeyond(6)
        );
    }
}
