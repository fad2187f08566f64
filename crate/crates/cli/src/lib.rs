//! Problem-file front end: parse, dispatch, report.

pub mod error;
pub mod problem;
pub mod report;

use crlab_core::{
    analyticity_verdict, analyticity_verdict_concurrent, cr_fields, finite_type_order, BaseOrder,
    DimReport, FormalMapJet, Ideal, LocalColength, MonomialOrder, Poly, PreimageStatus, TypeStatus,
    Verdict,
};
use serde_json::{json, Value};

pub use error::CliError;
pub use problem::{parse_problem, Options, ProblemFile};
pub use report::{Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Segre,
    Essvar,
    Ftype,
    Mapfinite,
    Mapcheck,
    PreimageCheck,
    Criterion,
    Verdict,
    Gb,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Segre,
        Command::Essvar,
        Command::Ftype,
        Command::Mapfinite,
        Command::Mapcheck,
        Command::PreimageCheck,
        Command::Criterion,
        Command::Verdict,
        Command::Gb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Segre => "segre",
            Command::Essvar => "essvar",
            Command::Ftype => "ftype",
            Command::Mapfinite => "mapfinite",
            Command::Mapcheck => "mapcheck",
            Command::PreimageCheck => "preimage-check",
            Command::Criterion => "criterion",
            Command::Verdict => "verdict",
            Command::Gb => "gb",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Command-line overrides applied on top of the `[options]` section.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    /// Bracket length cap for `ftype` and `verdict`.
    pub max_length: Option<u32>,
    /// Jet order cap for finiteness and witness checks.
    pub cap: Option<u32>,
    pub order: Option<BaseOrder>,
    /// Run the verdict sub-analyses on the calling thread.
    pub sequential: bool,
}

const POLYNOMIAL_CAVEAT: &str =
    "inputs are polynomial jets; every identity is checked exactly in the polynomial ring";
const GLOBAL_CAVEAT: &str = "dimensions are computed for the global affine variety; \
a component away from the origin can raise the reported dimension but never lower it";
const GENERATOR_CAVEAT: &str = "the given defining functions are taken as the defining data \
of the germ; no neighbourhood of the origin is modelled";
const CRITERION_CAVEAT: &str = "a satisfied criterion certifies convergence of the formal map \
by the sufficient condition dim C = 0; it makes no claim about merely smooth data";

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn polys(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(s).collect())
}

fn dim_json(d: &DimReport) -> Value {
    json!({
        "krull_dim": s(d.krull_dim),
        "zero_dimensional": d.zero_dimensional,
        "colength": d.colength.map_or(Value::Null, s),
    })
}

fn colength_json(c: LocalColength) -> Value {
    match c {
        LocalColength::Finite(v) => json!({"status": "finite", "colength": s(v)}),
        LocalColength::UnknownBeyond(cap) => json!({"status": "unknown_beyond", "cap": s(cap)}),
    }
}

fn type_json(t: TypeStatus) -> Value {
    match t {
        TypeStatus::FiniteType(m) => json!({"status": "finite_type", "order": s(m)}),
        TypeStatus::UndeterminedBeyond(cap) => {
            json!({"status": "undetermined_beyond", "cap": s(cap)})
        }
    }
}

fn ideal_json(i: &Ideal) -> Result<Value, CliError> {
    Ok(json!({
        "basis": polys(&i.canonical_basis()?),
        "dimension": dim_json(&i.dimension()?),
    }))
}

fn require_map(p: &ProblemFile) -> Result<&FormalMapJet, CliError> {
    p.map
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs a [map] section".into()))
}

/// Parses `text` and runs `command` on it.
pub fn run(command: Command, text: &str, flags: &Flags) -> Result<Report, CliError> {
    let problem = parse_problem(text)?;
    run_problem(command, &problem, text.as_bytes(), flags)
}

pub fn run_problem(
    command: Command,
    p: &ProblemFile,
    input: &[u8],
    flags: &Flags,
) -> Result<Report, CliError> {
    let mut caps = p.options.caps();
    if let Some(k) = flags.max_length {
        caps.bracket_cap = k;
    }
    if let Some(k) = flags.cap {
        caps.colength_cap = k;
        caps.jet_cap = k;
    }
    if let Some(o) = flags.order {
        caps.order = o;
    }
    let m = &p.source;
    let target = p.target_or_source();
    let mut caveats: Vec<String> = Vec::new();
    let mut status = Status::Definite;

    let result = match command {
        Command::Segre => {
            caveats.push(GENERATOR_CAVEAT.into());
            json!({
                "real": m.is_real()?,
                "segre_at_origin": ideal_json(&m.segre_ideal()?)?,
                "segre_varieties_pass_through_origin": m.segre_varieties_pass_through_origin()?,
            })
        }
        Command::Gb => {
            let order = match caps.order {
                BaseOrder::Lex => MonomialOrder::Lex,
                BaseOrder::DegRevLex => MonomialOrder::DegRevLex,
            };
            let ideal = m.complexification().with_order(order.clone());
            json!({
                "order": order.describe(),
                "basis": polys(&ideal.canonical_basis()?),
            })
        }
        Command::Essvar => {
            let r = m.essential_variety(caps.order)?;
            caveats.push(GENERATOR_CAVEAT.into());
            caveats.push(GLOBAL_CAVEAT.into());
            json!({
                "ideal": ideal_json(&r.ideal)?,
                "essentially_finite": r.essentially_finite,
            })
        }
        Command::Ftype => {
            let r = finite_type_order(m, caps.bracket_cap)?;
            if let TypeStatus::UndeterminedBeyond(cap) = r.status {
                status = Status::Inconclusive;
                caveats.push(format!(
                    "brackets up to length {cap} do not span; infinite type is never claimed"
                ));
            }
            let fields: Vec<String> = cr_fields(m)?.iter().map(ToString::to_string).collect();
            json!({
                "type": type_json(r.status),
                "span_dims": Value::Array(r.span_dims.iter().map(s).collect()),
                "tangent": r.tangent,
                "cr_fields": fields,
            })
        }
        Command::Mapfinite => {
            let h = require_map(p)?;
            let c = h.is_finite_map(caps.colength_cap)?;
            caveats.push(POLYNOMIAL_CAVEAT.into());
            if let LocalColength::UnknownBeyond(cap) = c {
                status = Status::Inconclusive;
                caveats.push(format!("finiteness not certified up to jet order {cap}"));
            }
            json!({
                "local_colength": colength_json(c),
                "jacobian_nonvanishing": h.jacobian_nonvanishing()?,
            })
        }
        Command::Mapcheck => {
            let h = require_map(p)?;
            caveats.push(POLYNOMIAL_CAVEAT.into());
            json!({"maps_into": h.maps_into(m, target)?})
        }
        Command::PreimageCheck => {
            let h = require_map(p)?;
            caveats.push(POLYNOMIAL_CAVEAT.into());
            let r = h.verify_segre_preimage_identity(m, target, caps.colength_cap)?;
            let (st, reason) = match &r.status {
                PreimageStatus::Verified => ("verified", Value::Null),
                PreimageStatus::Failed => ("failed", Value::Null),
                PreimageStatus::Inconclusive(why) => {
                    status = Status::Inconclusive;
                    ("inconclusive", s(why))
                }
            };
            json!({
                "status": st,
                "reason": reason,
                "map_finite": colength_json(r.map_finite),
                "maps_into": r.maps_into,
                "ideals_equal": r.ideals_equal,
                "dims_equal": r.dims_equal,
                "preimage_basis": polys(&r.preimage_basis),
                "target_segre_basis": polys(&r.target_segre_basis),
                "source_segre_dimension": dim_json(&r.source_segre_dim),
                "preimage_dimension": dim_json(&r.preimage_dim),
                "target_segre_dimension": dim_json(&r.target_segre_dim),
            })
        }
        Command::Criterion => {
            let h = require_map(p)?;
            caveats.push(POLYNOMIAL_CAVEAT.into());
            caveats.push(GLOBAL_CAVEAT.into());
            let r = h.criterion_variety(m, target, caps.order)?;
            json!({
                "ideal": ideal_json(&r.ideal)?,
                "satisfied": r.satisfied(),
            })
        }
        Command::Verdict => {
            let h = require_map(p)?;
            caveats.push(POLYNOMIAL_CAVEAT.into());
            caveats.push(CRITERION_CAVEAT.into());
            let r = if flags.sequential {
                analyticity_verdict(m, target, h, caps)?
            } else {
                analyticity_verdict_concurrent(m, target, h, caps)?
            };
            let (verdict, reason) = match &r.verdict {
                Verdict::CriterionSatisfied => ("criterion_satisfied", Value::Null),
                Verdict::Inconclusive(why) => {
                    status = Status::Inconclusive;
                    ("inconclusive", s(why))
                }
            };
            json!({
                "verdict": verdict,
                "reason": reason,
                "finite_type": type_json(r.finite_type.status),
                "essentially_finite": r.source_ess_finite,
                "essential_variety": polys(&r.essential.ideal.canonical_basis()?),
                "map_finite": colength_json(r.map_finite),
                "maps_into": r.maps_into,
                "criterion_variety": ideal_json(&r.criterion.ideal)?,
            })
        }
    };
    let options = json!({
        "bracket_cap": s(caps.bracket_cap),
        "colength_cap": s(caps.colength_cap),
        "jet_cap": s(caps.jet_cap),
        "order": caps.order.name(),
    });
    Ok(Report::new(
        command.name(),
        input,
        options,
        result,
        caveats,
        status,
    ))
}
