//! Structured verdicts for the Auslander-type conditions of one algebra.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::homology::{min_inj_resolution_of_regular, Bounded};
use crate::module::{Module, Side};
use crate::refl::{dominant_dimension, ln_witness, LnFailure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckVerdict {
    Holds,
    Fails,
    /// Nothing decided up to the cap.
    Undetermined(usize),
}

impl CheckVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            CheckVerdict::Holds => "holds",
            CheckVerdict::Fails => "fails",
            CheckVerdict::Undetermined(_) => "undetermined",
        }
    }
}

/// A module exhibiting a failed check, by side and dimension vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleWitness {
    pub description: String,
    pub side: Side,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: CheckVerdict,
    pub witness: Option<ModuleWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LnEntry {
    pub l: usize,
    pub n: usize,
    pub side: Side,
    pub verdict: CheckVerdict,
    pub witness: Option<ModuleWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// Structural fingerprint of the algebra.
    pub algebra_id: String,
    pub checks: Vec<Check>,
    pub ln_matrix: Vec<LnEntry>,
    pub dominant_dimension: Bounded,
    pub dominant_dimension_op: Bounded,
    /// Injective vertices of `I^0, I^1, ...` on the left, up to the cap.
    pub injective_terms: Vec<Vec<usize>>,
}

fn ln_entry(a: &Arc<Algebra>, side: Side, l: usize, n: usize) -> Result<LnEntry> {
    let w = ln_witness(a, side, l, n)?;
    let witness = match w {
        Some(LnFailure { term, vertex }) => Some(ModuleWitness {
            description: format!("I^{term} has the summand I({}) of projective dimension >= {l}", vertex + 1),
            side,
            dims: Module::injective(a, side, vertex)?.dims().to_vec(),
        }),
        None => None,
    };
    Ok(LnEntry { l, n, side, verdict: if w.is_some() { CheckVerdict::Fails } else { CheckVerdict::Holds }, witness })
}

/// Checks the requested (l,n)-conditions on both sides, the two-sided
/// (2,2)-condition and dominant dimension at least 2.
pub fn condition_report(a: &Arc<Algebra>, ln_pairs: &[(usize, usize)], cap: usize) -> Result<ConditionReport> {
    let mut ln_matrix = Vec::new();
    for &(l, n) in ln_pairs {
        for side in [Side::Left, Side::Right] {
            ln_matrix.push(ln_entry(a, side, l, n)?);
        }
    }
    let mut checks = Vec::new();
    let mut failing = None;
    for side in [Side::Left, Side::Right] {
        let e = ln_entry(a, side, 2, 2)?;
        if e.witness.is_some() && failing.is_none() {
            failing = e.witness;
        }
    }
    checks.push(Check {
        name: "two_sided_22".into(),
        verdict: if failing.is_some() { CheckVerdict::Fails } else { CheckVerdict::Holds },
        witness: failing,
    });
    let dd = dominant_dimension(a, Side::Left, cap)?;
    let dd_op = dominant_dimension(a, Side::Right, cap)?;
    let e = ln_entry(a, Side::Left, 1, 2)?;
    checks.push(Check { name: "dominant_dimension_at_least_2".into(), verdict: e.verdict, witness: e.witness });
    let inj = min_inj_resolution_of_regular(a, Side::Left, cap)?;
    Ok(ConditionReport {
        algebra_id: format!("{:016x}", a.fingerprint()),
        checks,
        ln_matrix,
        dominant_dimension: dd,
        dominant_dimension_op: dd_op,
        injective_terms: inj.terms.clone(),
    })
}
