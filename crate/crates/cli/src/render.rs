//! JSON rendering of core results. Vertices are printed 1-based.

use reflexa::certify::{Certificate, Verdict, Witness};
use reflexa::report::{CheckVerdict, ModuleWitness};
use reflexa::{Bounded, Error, Module};
use serde_json::{json, Value};

/// Severity of a report, ordered so that the maximum decides the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Holds,
    Undetermined,
    Fails,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Undetermined => 2,
        }
    }

    pub fn of(holds: bool) -> Status {
        if holds {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

pub const INPUT_ERROR: i32 = 3;

/// A report body with its status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub status: Status,
}

/// A command that could not produce a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub message: String,
    pub exit_code: i32,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Failure {
        Failure { message: message.into(), exit_code: INPUT_ERROR }
    }
}

/// Errors from the core either become a report (theorem violations, budget
/// exhaustion) or an input error.
pub fn from_core(e: Error) -> Result<Outcome, Failure> {
    match e {
        Error::TheoremViolation(what) => Ok(Outcome {
            report: json!({ "verdict": "theorem_violation", "detail": what }),
            status: Status::Fails,
        }),
        Error::Undecided(cap) => Ok(Outcome {
            report: json!({ "verdict": "undetermined", "cap": cap }),
            status: Status::Undetermined,
        }),
        Error::BudgetExceeded(what) => Ok(Outcome {
            report: json!({ "verdict": "undetermined", "detail": format!("budget exceeded: {what}") }),
            status: Status::Undetermined,
        }),
        other => Err(Failure::input(other.to_string())),
    }
}

pub fn bounded(b: Bounded) -> Value {
    match b {
        Bounded::Value(v) => json!(v),
        Bounded::AtLeast(v) => json!({ "at_least": v }),
    }
}

pub fn vertices(vs: &[usize]) -> Value {
    json!(vs.iter().map(|v| v + 1).collect::<Vec<_>>())
}

pub fn module(m: &Module) -> Value {
    json!({ "side": m.side().name(), "dims": m.dims(), "dim": m.dim() })
}

pub fn check_verdict(v: &CheckVerdict) -> (Value, Status) {
    match v {
        CheckVerdict::Holds => (json!("holds"), Status::Holds),
        CheckVerdict::Fails => (json!("fails"), Status::Fails),
        CheckVerdict::Undetermined(cap) => (json!({ "undetermined": { "cap": cap } }), Status::Undetermined),
    }
}

pub fn module_witness(w: &Option<ModuleWitness>) -> Value {
    match w {
        Some(w) => json!({ "description": w.description, "side": w.side.name(), "dims": w.dims }),
        None => Value::Null,
    }
}

pub fn witness(w: &Option<Witness>) -> Value {
    match w {
        Some(w) => json!({
            "kind": w.kind,
            "detail": w.detail,
            "modules": w.modules.iter().map(module).collect::<Vec<_>>(),
            "maps": w.maps.iter().map(|f| json!({ "source": module(f.source()), "target": module(f.target()), "rank": f.rank() })).collect::<Vec<_>>(),
        }),
        None => Value::Null,
    }
}

pub fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Consistent => Status::Holds,
        Verdict::Inconclusive => Status::Undetermined,
        Verdict::TheoremViolation => Status::Fails,
    }
}

pub fn certificate(c: &Certificate) -> Value {
    let s = &c.stats;
    let o = &c.options;
    json!({
        "property": c.property,
        "condition": c.condition,
        "dominant_dimension": c.dominant_dimension.map(bounded),
        "verdict": c.verdict.name(),
        "witness": witness(&c.witness),
        "torsion_witness": witness(&c.torsion_witness),
        "stats": {
            "modules": s.modules,
            "reflexive": s.reflexive,
            "torsion": s.torsion,
            "maps": s.maps,
            "pushouts": s.pushouts,
            "pullbacks": s.pullbacks,
            "structural": s.structural,
        },
        "options": {
            "dim_budget": o.dim_budget,
            "search_budget": o.search_budget,
            "map_cap": o.map_cap,
            "max_square_tests": o.max_square_tests,
        },
    })
}
