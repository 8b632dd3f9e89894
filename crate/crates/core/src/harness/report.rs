//! JSON views of reports, regions and witnesses for the CLI's
//! machine-readable output mode.

use serde_json::{json, Value};

use crate::axioms::{AxiomReport, Witness};
use crate::game::{Coalition, PayoffVector};
use crate::rational::{format_rational, Extended};
use crate::region::{AxisBox, Interval, Region};

use super::search::SearchOutcome;
use super::theorems::TheoremCheckResult;

pub fn coalition_json(c: Coalition) -> Value {
    Value::Array(c.members().map(|p| Value::from(p.index())).collect())
}

pub fn payoff_json(x: &PayoffVector) -> Value {
    json!({
        "players": coalition_json(x.coalition()),
        "values": x.values().iter().map(|v| Value::String(format_rational(v))).collect::<Vec<_>>(),
    })
}

fn endpoint_json(e: &Extended) -> Value {
    match e {
        Extended::NegInf => Value::Null,
        Extended::PosInf => Value::Null,
        Extended::Finite(r) => Value::String(format_rational(r)),
    }
}

pub fn interval_json(iv: &Interval) -> Value {
    json!({
        "lower": endpoint_json(iv.lower()),
        "lower_closed": iv.lower_closed(),
        "upper": endpoint_json(iv.upper()),
        "upper_closed": iv.upper_closed(),
    })
}

pub fn box_json(b: &AxisBox) -> Value {
    Value::Array(b.intervals().iter().map(interval_json).collect())
}

pub fn region_json(r: &Region) -> Value {
    json!({
        "players": coalition_json(r.players()),
        "boxes": r.boxes().iter().map(box_json).collect::<Vec<_>>(),
    })
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Point { x } => json!({ "kind": "point", "x": payoff_json(x) }),
        Witness::ReducedMembership { x, s } => json!({
            "kind": "reduced-membership",
            "x": payoff_json(x),
            "coalition": coalition_json(*s),
        }),
        Witness::ConsistentPointExcluded { x } => json!({
            "kind": "consistent-point-excluded",
            "x": payoff_json(x),
        }),
        Witness::EmptySolution => json!({ "kind": "empty-solution" }),
        Witness::NotInImpoverished { x } => json!({
            "kind": "not-in-impoverished",
            "x": payoff_json(x),
        }),
        Witness::ProximalGap { s, x, y } => json!({
            "kind": "proximal-gap",
            "coalition": coalition_json(*s),
            "x": payoff_json(x),
            "y": payoff_json(y),
        }),
        Witness::LimitEscapes { x } => json!({
            "kind": "limit-escapes",
            "x": payoff_json(x),
        }),
    }
}

pub fn axiom_report_json(r: &AxiomReport) -> Value {
    json!({
        "axiom": r.axiom.name(),
        "verdict": r.verdict.to_string(),
        "witness": r.witness.as_ref().map(witness_json),
        "notes": r.notes,
    })
}

pub fn theorem_json(r: &TheoremCheckResult) -> Value {
    json!({
        "theorem": r.theorem,
        "passed": r.passed(),
        "elapsed_ms": r.elapsed.as_millis() as u64,
        "claims": r.claims.iter().map(|c| json!({
            "id": c.id,
            "passed": c.passed,
            "details": c.details,
            "bundle": c.bundle,
        })).collect::<Vec<_>>(),
    })
}

pub fn search_json(outcome: &SearchOutcome) -> Value {
    json!({
        "trials": outcome.trials,
        "checks_run": outcome.checks_run,
        "violations": outcome.violations.iter().map(|v| {
            let mut bundle = v.bundle();
            bundle["report"] = axiom_report_json(&v.report);
            bundle
        }).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use crate::region::core_region;
    use crate::testutil::{game_a, pv};

    #[test]
    fn region_json_shape() {
        let v = region_json(&core_region(&game_a()));
        assert_eq!(v["players"], json!([0, 1]));
        assert_eq!(v["boxes"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn payoff_json_shape() {
        let v = payoff_json(&pv(&[0, 1], &[rat_int(1), crate::rational::rat(1, 2)]));
        assert_eq!(v["values"], json!(["1", "1/2"]));
    }
}
