//! The acceptance corpus: every criterion evaluated on the fixed corpus, with
//! a deterministic report. Determinism across worker counts comes from
//! order-preserving parallel collection; nothing time- or thread-dependent
//! enters the report.

use std::sync::Arc;

use rayon::prelude::*;
use reflexa::certify::{certify_abelian, certify_quasi_abelian, HarnessOptions, Verdict};
use reflexa::corpus::{self, CorpusEntry};
use reflexa::homology::FourTermSequence;
use reflexa::morita::{end_algebra, verify_equivalence, Mode, SummandList};
use reflexa::refl::{dominant_dimension, is_reflexive, ln_condition, two_sided_22};
use reflexa::serre::{serre_exact_structure, validate};
use reflexa::{
    ab_sequence, default_cap, enumerate_modules, evaluation, ext_module, global_dimension, grade, hom_dim,
    is_isomorphic, min_inj_resolution_of_regular, pd_at_most, sgrade, sgrade_oracle, tor, Algebra, Bounded, Error,
    Module, Side, Universe,
};
use serde_json::{json, Value};

use crate::render;

const KA2_FIXTURE: &str = include_str!("../fixtures/ka2.json");
const MORITA_FIXTURE: &str = include_str!("../fixtures/morita.json");

/// Exactness of `0 -> A -> X -> Y -> B -> 0` at all four positions.
pub fn ab_exact(s: &FourTermSequence) -> bool {
    let zero = |f: &reflexa::ModuleMap, g: &reflexa::ModuleMap| f.then(g).map(|h| h.is_zero()).unwrap_or(false);
    s.alpha.is_injective()
        && zero(&s.alpha, &s.beta)
        && s.alpha.rank() + s.beta.rank() == s.x.dim()
        && zero(&s.beta, &s.gamma)
        && s.beta.rank() + s.gamma.rank() == s.y.dim()
        && s.gamma.is_surjective()
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: Value,
}

#[derive(Clone, Debug)]
pub struct Suite {
    pub criteria: Vec<Criterion>,
    pub options: HarnessOptions,
}

impl Suite {
    pub fn all_pass(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let o = &self.options;
        json!({
            "command": "corpus run",
            "options": {
                "dim_budget": o.dim_budget,
                "search_budget": o.search_budget,
                "map_cap": o.map_cap,
                "max_square_tests": o.max_square_tests,
            },
            "criteria": self.criteria.iter().map(|c| json!({
                "id": c.id,
                "name": c.name,
                "passed": c.passed,
                "details": c.details,
            })).collect::<Vec<_>>(),
            "all_pass": self.all_pass(),
        })
    }
}

/// Enumerated modules of one corpus algebra on both sides.
struct Entry {
    name: String,
    algebra: Arc<Algebra>,
    left: Universe,
    right: Universe,
}

impl Entry {
    fn universe(&self, side: Side) -> &Universe {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

struct Context {
    entries: Vec<Entry>,
    opts: HarnessOptions,
}

impl Context {
    fn entry(&self, name: &str) -> reflexa::Result<&Entry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::Internal(format!("corpus has no algebra named {name}")))
    }
}

type Outcome = reflexa::Result<(bool, Value)>;

fn describe(m: &Module) -> Value {
    render::module(m)
}

/// Criteria 1 and 2: the certification harness over the corpus.
fn certification(cx: &Context, abelian: bool) -> Outcome {
    let certs = cx
        .entries
        .par_iter()
        .map(|e| {
            let c = if abelian { certify_abelian(&e.algebra, cx.opts)? } else { certify_quasi_abelian(&e.algebra, cx.opts)? };
            Ok((e.name.clone(), c))
        })
        .collect::<reflexa::Result<Vec<_>>>()?;
    let mut passed = certs.iter().all(|(_, c)| c.verdict == Verdict::Consistent);
    let rows: Vec<Value> = certs
        .iter()
        .map(|(name, c)| {
            json!({
                "algebra": name,
                "verdict": c.verdict.name(),
                "condition": c.condition,
                "dominant_dimension": c.dominant_dimension.map(render::bounded),
                "witness": c.witness.as_ref().map(|w| w.kind),
            })
        })
        .collect();
    let mut details = json!({ "algebras": rows });
    if abelian {
        let find = |n: &str| certs.iter().find(|(name, _)| name == n).map(|(_, c)| c);
        let ka2 = find("kA2").ok_or_else(|| Error::Internal("kA2 missing".into()))?;
        let witness = ka2.torsion_witness.as_ref().and_then(|w| w.modules.first());
        let witness_sgrade = match witness {
            Some(m) => Some(sgrade(m, default_cap(m.algebra()))?),
            None => None,
        };
        let aus = find("auslander(k[x]/(x^2))").ok_or_else(|| Error::Internal("auslander algebra missing".into()))?;
        let ka2_ok = ka2.dominant_dimension == Some(Bounded::Value(1)) && witness_sgrade == Some(Bounded::Value(1));
        let aus_ok = aus.dominant_dimension == Some(Bounded::Value(2));
        passed &= ka2_ok && aus_ok;
        details["ka2"] = json!({
            "dominant_dimension": ka2.dominant_dimension.map(render::bounded),
            "torsion_witness": witness.map(describe),
            "torsion_witness_sgrade": witness_sgrade.map(render::bounded),
        });
        details["auslander_x2_dominant_dimension"] = json!(aus.dominant_dimension.map(render::bounded));
    }
    Ok((passed, details))
}

/// Criterion 3: strong grade from the injective resolution against submodule
/// enumeration.
fn sgrade_oracle_equality(cx: &Context) -> Outcome {
    let mut rows = Vec::new();
    let mut passed = true;
    for name in ["kA2", "k[x]/(x^2)", "k[x,y]/(x,y)^2"] {
        let e = cx.entry(name)?;
        let cap = default_cap(&e.algebra);
        for side in [Side::Left, Side::Right] {
            let ms = &e.universe(side).modules;
            let bad: Vec<Value> = ms
                .par_iter()
                .map(|m| {
                    let s = sgrade(m, cap)?;
                    let o = sgrade_oracle(m, cap, cx.opts.search_budget)?;
                    Ok((s != o).then(|| json!({ "module": describe(m), "sgrade": render::bounded(s), "oracle": render::bounded(o) })))
                })
                .collect::<reflexa::Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            passed &= bad.is_empty();
            rows.push(json!({ "algebra": name, "side": side.name(), "modules": ms.len(), "cap": cap, "mismatches": bad }));
        }
    }
    Ok((passed, json!({ "checks": rows })))
}

/// Criterion 4: `Tor_n(X, I) = Hom(Ext^n(X, Λ), I)` for right modules `X` and
/// indecomposable injective left modules `I`.
fn tor_injective_identity(cx: &Context) -> Outcome {
    let mut rows = Vec::new();
    let mut passed = true;
    for name in ["kA2", "kA3", "auslander(k[x]/(x^2))"] {
        let e = cx.entry(name)?;
        let injectives: Vec<Module> =
            (0..e.algebra.vertex_count()).map(|v| Module::injective(&e.algebra, Side::Left, v)).collect::<reflexa::Result<_>>()?;
        let xs = &e.right.modules;
        let per_module: Vec<(usize, usize)> = xs
            .par_iter()
            .map(|x| {
                let mut checked = 0;
                let mut bad = 0;
                for n in 0..=3 {
                    let ext = ext_module(x, n)?;
                    for i in &injectives {
                        checked += 1;
                        if tor(x, i, n)? != hom_dim(&ext, i)? {
                            bad += 1;
                        }
                    }
                }
                Ok((checked, bad))
            })
            .collect::<reflexa::Result<_>>()?;
        let checked: usize = per_module.iter().map(|c| c.0).sum();
        let bad: usize = per_module.iter().map(|c| c.1).sum();
        passed &= bad == 0;
        rows.push(json!({ "algebra": name, "modules": xs.len(), "instances": checked, "discrepancies": bad }));
    }
    Ok((passed, json!({ "degrees": [0, 1, 2, 3], "checks": rows })))
}

/// Criterion 5: the Auslander-Bridger sequence is exact for every
/// enumerated module on both sides.
fn ab_exactness(cx: &Context) -> Outcome {
    let mut rows = Vec::new();
    let mut total = 0;
    let mut failures = 0;
    for e in &cx.entries {
        for side in [Side::Left, Side::Right] {
            let ms = &e.universe(side).modules;
            let exact: Vec<bool> = ms
                .par_iter()
                .map(|m| Ok(ab_exact(&ab_sequence(m, cx.opts.search_budget)?)))
                .collect::<reflexa::Result<_>>()?;
            let bad = exact.iter().filter(|&&x| !x).count();
            total += ms.len();
            failures += bad;
            rows.push(json!({ "algebra": e.name, "side": side.name(), "modules": ms.len(), "not_exact": bad }));
        }
    }
    Ok((failures == 0 && total >= 500, json!({ "instances": total, "not_exact": failures, "checks": rows })))
}

fn fixture(text: &str) -> reflexa::Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Internal(format!("fixture: {e}")))
}

/// Criterion 6: the hand-derived kA₂ fixture.
fn ka2_fixture(cx: &Context) -> Outcome {
    let fx = fixture(KA2_FIXTURE)?;
    let e = cx.entry("kA2")?;
    let a = &e.algebra;
    let cap = default_cap(a);
    let s1 = Module::simple(a, Side::Left, 0)?;
    let s2 = Module::simple(a, Side::Left, 1)?;
    let inj = min_inj_resolution_of_regular(a, Side::Left, cap)?;
    let terms: Vec<Vec<usize>> = inj
        .terms
        .iter()
        .filter(|t| !t.is_empty())
        .map(|t| {
            let mut t: Vec<usize> = t.iter().map(|v| v + 1).collect();
            t.sort_unstable();
            t
        })
        .collect();
    let refl: Vec<&Module> = e
        .left
        .indecomposables()
        .filter(|m| is_reflexive(m).unwrap_or(false))
        .collect();
    let mut all_projective = true;
    for m in &refl {
        all_projective &= pd_at_most(m, 0)?;
    }
    let num = |b: Bounded| match b {
        Bounded::Value(v) => json!(v),
        other => render::bounded(other),
    };
    let computed = json!({
        "two_sided_22": two_sided_22(a)?,
        "ln_1_2_left": ln_condition(a, Side::Left, 1, 2)?,
        "ln_1_2_right": ln_condition(a, Side::Right, 1, 2)?,
        "dominant_dimension": num(dominant_dimension(a, Side::Left, cap)?),
        "injective_terms": terms,
        "grade_s1": num(grade(&s1, cap)?),
        "sgrade_s1": num(sgrade(&s1, cap)?),
        "sgrade_s2": num(sgrade(&s2, cap)?),
        "double_dual_s1_dim": evaluation(&s1)?.target().dim(),
        "indecomposable_reflexives": refl.len(),
        "indecomposable_reflexives_projective": all_projective,
    });
    Ok((computed == fx["expected"], json!({ "expected": fx["expected"], "computed": computed })))
}

/// Criterion 7: the Morita fixture for `Σ = k[x]/(x²)`, `M = Σ ⊕ k`.
fn morita_fixture(cx: &Context) -> Outcome {
    let fx = fixture(MORITA_FIXTURE)?;
    let e = cx.entry("k[x]/(x^2)")?;
    let sigma = &e.algebra;
    let ms = SummandList::new(
        vec![Module::regular(sigma, Side::Left).0, Module::simple(sigma, Side::Left, 0)?],
        cx.opts.search_budget,
    )?;
    let r = verify_equivalence(&ms, Mode::ModuleCategory, &cx.opts)?;
    let ex = &fx["expected"];
    let counts = r.counts.map(|(a, b)| json!([a, b]));
    let at_least = ex["dominant_dimension_at_least"].as_u64().unwrap_or(u64::MAX) as usize;
    let passed = json!(r.end_dim) == ex["end_dim"]
        && r.dominant_dimension.at_least(at_least)
        && json!(r.all_pass()) == ex["all_pass"]
        && counts.as_ref() == Some(&ex["indecomposable_counts"]);
    let computed = json!({
        "end_dim": r.end_dim,
        "dominant_dimension": render::bounded(r.dominant_dimension),
        "all_pass": r.all_pass(),
        "indecomposable_counts": counts,
        "checks": r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "instances": c.instances })).collect::<Vec<_>>(),
    });
    Ok((passed, json!({ "expected": ex, "computed": computed })))
}

/// Criterion 8: `Hom(X**, M) = Hom(X, M)` for reflexive `M` on two-sided
/// (2,2) algebras.
fn double_dual_adjunction(cx: &Context) -> Outcome {
    let mut rows = Vec::new();
    let mut passed = true;
    for e in &cx.entries {
        if !two_sided_22(&e.algebra)? {
            continue;
        }
        let xs = &e.left.modules;
        let flags: Vec<bool> = xs.par_iter().map(is_reflexive).collect::<reflexa::Result<_>>()?;
        let refl: Vec<&Module> = xs.iter().zip(&flags).filter(|(_, &r)| r).map(|(m, _)| m).collect();
        let bad: Vec<usize> = xs
            .par_iter()
            .map(|x| {
                let xx = evaluation(x)?.target().clone();
                let mut bad = 0;
                for m in &refl {
                    if hom_dim(&xx, m)? != hom_dim(x, m)? {
                        bad += 1;
                    }
                }
                Ok(bad)
            })
            .collect::<reflexa::Result<_>>()?;
        let bad: usize = bad.iter().sum();
        passed &= bad == 0;
        rows.push(json!({ "algebra": e.name, "pairs": xs.len() * refl.len(), "discrepancies": bad }));
    }
    Ok((passed, json!({ "checks": rows })))
}

/// Criterion 9: Serre-subcategory exact structures regenerate their simples;
/// simples outside the admissible set are rejected.
fn serre_roundtrip(cx: &Context) -> Outcome {
    let mut rows = Vec::new();
    let mut passed = true;
    for e in &cx.entries {
        let a = &e.algebra;
        if !two_sided_22(a)? {
            continue;
        }
        let n = a.vertex_count();
        let admissible: Vec<bool> = (0..n)
            .map(|v| Ok(sgrade_oracle(&Module::simple(a, Side::Left, v)?, 2, cx.opts.search_budget)?.at_least(2)))
            .collect::<reflexa::Result<_>>()?;
        let sets: Vec<Vec<usize>> =
            (0..1u32 << n).map(|mask| (0..n).filter(|v| mask >> v & 1 == 1).collect()).collect();
        let results: Vec<(bool, bool)> = sets
            .par_iter()
            .map(|set| match set.iter().find(|&&v| !admissible[v]) {
                Some(&v) => Ok((false, serre_exact_structure(a, set).err() == Some(Error::NotInD(v + 1)))),
                None => {
                    let s = serre_exact_structure(a, set)?;
                    let r = validate(&s, &cx.opts)?;
                    Ok((true, r.axioms_hold && r.regenerated == *set))
                }
            })
            .collect::<reflexa::Result<_>>()?;
        let validated = results.iter().filter(|r| r.0).count();
        let rejected = results.len() - validated;
        let ok = results.iter().all(|r| r.1);
        passed &= ok;
        let adm: Vec<usize> = (0..n).filter(|&v| admissible[v]).collect();
        rows.push(json!({
            "algebra": e.name,
            "admissible_simples": render::vertices(&adm),
            "validated_sets": validated,
            "rejected_sets": rejected,
            "passed": ok,
        }));
    }
    Ok((passed, json!({ "checks": rows })))
}

fn contains_iso(list: &[Module], m: &Module, budget: u64) -> reflexa::Result<bool> {
    for x in list {
        if x.dims() == m.dims() && is_isomorphic(x, m, budget)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn same_classes(xs: &[Module], ys: &[Module], budget: u64) -> reflexa::Result<bool> {
    for x in xs {
        if !contains_iso(ys, x, budget)? {
            return Ok(false);
        }
    }
    for y in ys {
        if !contains_iso(xs, y, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Criterion 10: the Auslander algebra of `k[x]/(x²)` has global dimension
/// 2, its reflexive modules are the projectives, which are the modules
/// transported from `mod k[x]/(x²)`, and refl is quasi-abelian.
fn gldim_two(cx: &Context) -> Outcome {
    let budget = cx.opts.search_budget;
    let e = cx.entry("auslander(k[x]/(x^2))")?;
    let a = &e.algebra;
    let gldim = global_dimension(a, Side::Left, default_cap(a))?;
    let t22 = two_sided_22(a)?;
    let refl: Vec<Module> = e.left.modules.iter().filter(|m| is_reflexive(m).unwrap_or(false)).cloned().collect();
    let mut reflexives_projective = true;
    for m in &refl {
        reflexives_projective &= pd_at_most(m, 0)?;
    }
    let qa = certify_quasi_abelian(a, cx.opts)?;

    // The same algebra as End(Σ ⊕ k), where the transport is explicit.
    let sigma = &cx.entry("k[x]/(x^2)")?.algebra;
    let src = vec![Module::regular(sigma, Side::Left).0, Module::simple(sigma, Side::Left, 0)?];
    let ms = SummandList::new(src.clone(), budget)?;
    let end = end_algebra(&ms)?;
    let transported: Vec<Module> = src.iter().map(|x| Ok(end.hom_functor(x)?.0)).collect::<reflexa::Result<_>>()?;
    let lam = &end.algebra;
    let projectives: Vec<Module> =
        (0..lam.vertex_count()).map(|v| Module::projective(lam, Side::Left, v)).collect::<reflexa::Result<_>>()?;
    let u = enumerate_modules(lam, Side::Left, cx.opts.dim_budget, budget)?;
    let end_refl: Vec<Module> = u.indecomposables().filter(|m| is_reflexive(m).unwrap_or(false)).cloned().collect();
    let matches_transport = same_classes(&end_refl, &transported, budget)?;
    let matches_projectives = same_classes(&end_refl, &projectives, budget)?;

    let passed = gldim == Bounded::Value(2)
        && t22
        && reflexives_projective
        && !refl.is_empty()
        && matches_transport
        && matches_projectives
        && qa.verdict == Verdict::Consistent;
    Ok((
        passed,
        json!({
            "global_dimension": render::bounded(gldim),
            "two_sided_22": t22,
            "reflexive_modules": refl.len(),
            "reflexives_projective": reflexives_projective,
            "end_algebra_dim": lam.dim(),
            "indecomposable_reflexives_over_end": end_refl.len(),
            "match_transported": matches_transport,
            "match_projectives": matches_projectives,
            "quasi_abelian": qa.verdict.name(),
        }),
    ))
}

fn evaluate(id: usize, name: &'static str, f: impl FnOnce() -> Outcome) -> Criterion {
    match f() {
        Ok((passed, details)) => Criterion { id, name, passed, details },
        Err(e) => Criterion { id, name, passed: false, details: json!({ "error": e.to_string() }) },
    }
}

fn build_entries(corpus: Vec<CorpusEntry>, opts: &HarnessOptions) -> reflexa::Result<Vec<Entry>> {
    corpus
        .into_par_iter()
        .map(|c| {
            let left = enumerate_modules(&c.algebra, Side::Left, opts.dim_budget, opts.search_budget)?;
            let right = enumerate_modules(&c.algebra, Side::Right, opts.dim_budget, opts.search_budget)?;
            Ok(Entry { name: c.name, algebra: c.algebra, left, right })
        })
        .collect()
}

/// Runs criteria 1-10 on a pool of `workers` threads.
pub fn run_suite(workers: usize, opts: &HarnessOptions) -> reflexa::Result<Suite> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| {
        let cx = Context { entries: build_entries(corpus::corpus()?, opts)?, opts: *opts };
        let criteria = vec![
            evaluate(1, "quasi_abelian_consistency", || certification(&cx, false)),
            evaluate(2, "abelian_consistency", || certification(&cx, true)),
            evaluate(3, "sgrade_oracle_equality", || sgrade_oracle_equality(&cx)),
            evaluate(4, "tor_injective_identity", || tor_injective_identity(&cx)),
            evaluate(5, "auslander_bridger_exactness", || ab_exactness(&cx)),
            evaluate(6, "ka2_fixture", || ka2_fixture(&cx)),
            evaluate(7, "morita_fixture", || morita_fixture(&cx)),
            evaluate(8, "double_dual_adjunction", || double_dual_adjunction(&cx)),
            evaluate(9, "serre_roundtrip", || serre_roundtrip(&cx)),
            evaluate(10, "gldim_two_projectives", || gldim_two(&cx)),
        ];
        Ok(Suite { criteria, options: *opts })
    })
}
