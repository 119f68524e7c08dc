//! JSON renderings of the library's check reports.

use floerkit::ainf::{AinfOperations, AinfReport, IsotopyReport, LimitCertificate};
use floerkit::error::Certificate;
use floerkit::floer::{MorseReport, Report};
use floerkit::format::{op_entries, triplets};
use floerkit::scalar::format_rational;
use floerkit::{Error, Rational};
use serde_json::{json, Value};

pub fn floer(name: &str, r: &Report<Rational>) -> Value {
    json!({
        "object": name,
        "relation": r.relation,
        "passed": r.passed(),
        "defects": r.defects.iter().map(|d| json!({
            "target": d.target,
            "source": d.source,
            "gap": format_rational(&d.gap),
            "residual": triplets(&d.residual),
        })).collect::<Vec<_>>(),
    })
}

pub fn morse(r: &MorseReport) -> Value {
    let pairs = |v: &[(String, String)]| {
        v.iter()
            .map(|(m, p)| json!({"minus": m, "plus": p}))
            .collect::<Vec<_>>()
    };
    json!({
        "relation": "d^2 = 0 from signed counts of broken trajectories",
        "passed": r.passed(),
        "not_points": r.not_points,
        "counts_off_dimension": pairs(&r.counts_off_dimension),
        "dimension_mismatch": r.dimension_mismatch.iter().map(|(m, p, got, want)| json!({
            "minus": m, "plus": p, "dim": got, "expected": want,
        })).collect::<Vec<_>>(),
        "energy_order": pairs(&r.energy_order),
        "d_squared": r.d_squared.iter().map(|(m, p, n)| json!({
            "minus": m, "plus": p, "nonzero_entries": n,
        })).collect::<Vec<_>>(),
    })
}

pub fn ainf(a: &AinfOperations<Rational>, r: &AinfReport<Rational>) -> Value {
    let sp = a.context().dga().space();
    json!({
        "relation": r.relation,
        "passed": r.passed(),
        "cut": format_rational(a.cut()),
        "defects": r.defects.iter().map(|d| json!({
            "k": d.k,
            "beta": d.beta.to_string(),
            "residual": op_entries(sp, &d.defect),
        })).collect::<Vec<_>>(),
    })
}

pub fn isotopy(r: &IsotopyReport) -> Value {
    let local = |v: &[(usize, floerkit::MonoidElement, usize)]| {
        v.iter()
            .map(|(p, b, k)| json!({"piece": p, "beta": b.to_string(), "k": k}))
            .collect::<Vec<_>>()
    };
    json!({
        "relation": "pseudo-isotopy equation with the A-infinity relation at each t",
        "passed": r.passed(),
        "ainf": local(&r.ainf),
        "ode": local(&r.ode),
        "c_at_zero_energy": r.c_at_zero_energy.iter().map(|(b, k)| json!({"beta": b.to_string(), "k": k})).collect::<Vec<_>>(),
        "jumps": r.jumps.iter().map(|(j, fam, b, k)| json!({
            "breakpoint": j, "family": fam, "beta": b.to_string(), "k": k,
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "location": c.location,
        "functional": c.functional.iter().map(|(b, v)| json!({"basis": b, "value": v})).collect::<Vec<_>>(),
        "value": c.value,
    })
}

pub fn limit_certificates(cs: &[LimitCertificate]) -> Value {
    cs.iter()
        .map(|c| {
            json!({
                "stage": c.stage,
                "lower_cut": format_rational(&c.lower_cut),
                "upper_cut": format_rational(&c.upper_cut),
                "agrees": c.agrees,
            })
        })
        .collect()
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidCutLevel(_) => "InvalidCutLevel",
        Error::MinimalEnergyViolation { .. } => "MinimalEnergyViolation",
        Error::SpaceMismatch(_) => "SpaceMismatch",
        Error::DegreeError(_) => "DegreeError",
        Error::CutRaiseError { .. } => "CutRaiseError",
        Error::PromotionObstructed { .. } => "PromotionObstructed",
        Error::PreconditionFailed(_) => "PreconditionFailed",
        Error::IndexOutOfRange { .. } => "IndexOutOfRange",
        Error::InvalidPartition(_) => "InvalidPartition",
        Error::Unsupported(_) => "Unsupported",
        Error::OutOfDomain(_) => "OutOfDomain",
        Error::Parse(_) => "ParseError",
        Error::Schema { .. } => "SchemaError",
    }
}

pub fn error(e: &Error) -> Value {
    let mut v = json!({
        "status": "error",
        "error": error_kind(e),
        "message": e.to_string(),
    });
    match e {
        Error::Schema { pointer, .. } => v["pointer"] = json!(pointer),
        Error::PromotionObstructed { stage, certificate: c } => {
            v["stage"] = json!(stage);
            v["certificate"] = certificate(c);
        }
        Error::PreconditionFailed(items) => v["failed"] = json!(items),
        _ => {}
    }
    v
}
