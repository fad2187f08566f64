//! Exact symbolic toolkit for Segre varieties, essential finiteness, finite
//! type and formal holomorphic maps of real-analytic varieties given by
//! polynomial data.
//!
//! All arithmetic is over the Gaussian rationals `ℚ(i)`; nothing is rounded.

pub mod coeff;
pub mod error;
pub mod finite_type;
pub mod formal_map;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod variety;
pub mod vars;

pub use coeff::GaussRat;
pub use error::{Error, Result};
pub use finite_type::{cr_fields, finite_type_order, TypeReport, TypeStatus, VectorField};
pub use formal_map::{
    analyticity_verdict, analyticity_verdict_concurrent, Caps, CriterionReport, FormalMapJet,
    InconclusiveReason, PreimageReport, PreimageStatus, Verdict, VerdictReport,
};
pub use groebner::{buchberger, preimage_under_map, DimReport, Ideal, LocalColength};
pub use monomial::{BaseOrder, Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use poly::Poly;
pub use variety::{EssentialReport, GenericSubmanifold, RealVariety};
pub use vars::{Limits, VarRole, VarTable};
