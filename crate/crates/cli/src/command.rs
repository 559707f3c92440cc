use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use reflexa::certify::{certify_abelian, certify_quasi_abelian, HarnessOptions};
use reflexa::morita::{end_algebra, reflexive_equivalence_check, verify_equivalence, Mode, SummandList};
use reflexa::refl::{
    is_conflation, is_reflexive, is_torsion, is_torsion_free, refl_cokernel, refl_kernel, reflexive_hull, two_sided_22,
};
use reflexa::report::condition_report;
use reflexa::serre::{serre_exact_structure, validate};
use reflexa::{ab_sequence, default_cap, grade, min_proj_resolution, sgrade, Bounded, Side, DEFAULT_BUDGET};
use serde_json::{json, Value};

use crate::acceptance;
use crate::render::{self, Failure, Outcome, Status};
use crate::workspace::Workspace;

#[derive(Parser, Debug)]
#[command(name = "reflexa", version, about = "Homological conditions and reflexive modules over finite-dimensional algebras")]
pub struct Cli {
    /// JSON workspace defining algebras, modules and maps referenced by name.
    #[arg(long, global = true)]
    pub workspace: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// (l,n)-conditions on both sides, two-sided (2,2) and dominant dimension.
    CheckConditions {
        algebra: String,
        #[arg(long = "ln", value_parser = parse_pair)]
        ln: Vec<(usize, usize)>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Minimal projective (or injective) resolution up to a degree.
    Resolve {
        module: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        injective: bool,
    },
    /// Grade, strong grade, torsion and reflexivity flags, and the
    /// Auslander-Bridger sequence.
    Invariants {
        module: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Operations in the category of reflexive modules.
    Refl {
        #[command(subcommand)]
        op: ReflOp,
    },
    /// Property-based consistency check of the quasi-abelian or abelian
    /// characterization.
    Certify {
        property: Property,
        algebra: String,
        #[arg(long, default_value_t = 4)]
        dim_budget: usize,
    },
    /// Exact structure induced by a set of simples (1-based).
    Serre {
        algebra: String,
        #[arg(long, value_delimiter = ',', required = true)]
        simples: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        dim_budget: usize,
    },
    /// Endomorphism algebras of module lists and the induced equivalences.
    Morita {
        #[command(subcommand)]
        op: MoritaOp,
    },
    /// The acceptance corpus.
    Corpus {
        #[command(subcommand)]
        op: CorpusOp,
    },
    /// Runs every job of a workspace file.
    Run { file: PathBuf },
}

#[derive(Subcommand, Clone, Debug)]
pub enum ReflOp {
    Hull {
        module: String,
        /// Return the evaluation map even when the (2,2)-condition fails.
        #[arg(long)]
        force: bool,
    },
    Kernel { map: String },
    Cokernel { map: String },
    Conflation { f: String, g: String },
}

#[derive(Subcommand, Clone, Debug)]
pub enum MoritaOp {
    End {
        #[arg(required = true)]
        modules: Vec<String>,
    },
    Verify {
        #[arg(required = true)]
        modules: Vec<String>,
        #[arg(long, value_enum, default_value_t = MoritaMode::Module)]
        mode: MoritaMode,
        #[arg(long, default_value_t = 4)]
        dim_budget: usize,
    },
}

#[derive(Subcommand, Clone, Debug)]
pub enum CorpusOp {
    Run {
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 4)]
        dim_budget: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    QuasiAbelian,
    Abelian,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoritaMode {
    /// `M` is a generator-cogenerator of the module category.
    Module,
    /// `M` contains the regular module inside refl of a two-sided (2,2) algebra.
    Refl,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (l, n) = s.split_once(',').ok_or_else(|| format!("expected l,n, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(l)?, p(n)?))
}

#[derive(Parser, Debug)]
#[command(name = "job", no_binary_name = true)]
struct JobLine {
    #[command(subcommand)]
    command: Command,
}

/// Parses the argument list of a workspace job.
pub fn parse_job(args: &[String]) -> Result<Command, String> {
    let line = JobLine::try_parse_from(args).map_err(|e| {
        let text = e.render().to_string();
        text.lines().next().unwrap_or("invalid job").trim_start_matches("error: ").to_string()
    })?;
    match line.command {
        Command::Run { .. } => Err("jobs cannot run other workspaces".into()),
        c => Ok(c),
    }
}

/// Search budget for enumerations: `REFLEXA_BUDGET` or the library default.
pub fn search_budget() -> Result<u64, Failure> {
    match std::env::var("REFLEXA_BUDGET") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::input(format!("REFLEXA_BUDGET must be an integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn harness_options(dim_budget: usize) -> Result<HarnessOptions, Failure> {
    Ok(HarnessOptions { dim_budget, search_budget: search_budget()?, ..HarnessOptions::default() })
}

fn side_sum(ms: &[String], ws: &Workspace) -> Result<SummandList, Failure> {
    let modules = ms.iter().map(|m| ws.module(m)).collect::<Result<Vec<_>, _>>().map_err(Failure::input)?;
    SummandList::new(modules, search_budget()?).map_err(|e| Failure::input(e.to_string()))
}

impl Command {
    /// Resolves every algebra, module and map the command names.
    pub fn check_references(&self, ws: &Workspace) -> Result<(), String> {
        match self {
            Command::CheckConditions { algebra, .. }
            | Command::Certify { algebra, .. }
            | Command::Serre { algebra, .. } => ws.algebra(algebra).map(|_| ()),
            Command::Resolve { module, .. } | Command::Invariants { module, .. } => ws.module(module).map(|_| ()),
            Command::Refl { op } => match op {
                ReflOp::Hull { module, .. } => ws.module(module).map(|_| ()),
                ReflOp::Kernel { map } | ReflOp::Cokernel { map } => ws.map(map).map(|_| ()),
                ReflOp::Conflation { f, g } => ws.map(f).and(ws.map(g)).map(|_| ()),
            },
            Command::Morita { op } => {
                let (MoritaOp::End { modules } | MoritaOp::Verify { modules, .. }) = op;
                modules.iter().try_for_each(|m| ws.module(m).map(|_| ()))
            }
            Command::Corpus { .. } | Command::Run { .. } => Ok(()),
        }
    }

    pub fn execute(&self, ws: &Workspace) -> Result<Outcome, Failure> {
        let run = || -> Result<Outcome, Failure> {
            match self {
                Command::CheckConditions { algebra, ln, cap } => check_conditions(ws, algebra, ln, *cap),
                Command::Resolve { module, degree, injective } => resolve(ws, module, *degree, *injective),
                Command::Invariants { module, cap } => invariants(ws, module, *cap),
                Command::Refl { op } => refl(ws, op),
                Command::Certify { property, algebra, dim_budget } => certify(ws, *property, algebra, *dim_budget),
                Command::Serre { algebra, simples, dim_budget } => serre(ws, algebra, simples, *dim_budget),
                Command::Morita { op } => morita(ws, op),
                Command::Corpus { op: CorpusOp::Run { workers, dim_budget } } => {
                    let opts = harness_options(*dim_budget)?;
                    let suite = acceptance::run_suite(*workers, &opts).map_err(|e| Failure::input(e.to_string()))?;
                    Ok(Outcome { status: Status::of(suite.all_pass()), report: suite.to_json() })
                }
                Command::Run { .. } => Err(Failure::input("run is only available at the top level")),
            }
        };
        run()
    }
}

/// Wraps a core computation, turning theorem violations and budget
/// exhaustion into reports.
fn core<T>(r: reflexa::Result<T>) -> Result<Result<T, Outcome>, Failure> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e) => render::from_core(e).map(Err),
    }
}

macro_rules! try_core {
    ($e:expr) => {
        match core($e)? {
            Ok(v) => v,
            Err(outcome) => return Ok(outcome),
        }
    };
}

fn check_conditions(ws: &Workspace, name: &str, ln: &[(usize, usize)], cap: Option<usize>) -> Result<Outcome, Failure> {
    let a = ws.algebra(name).map_err(Failure::input)?;
    let cap = cap.unwrap_or_else(|| default_cap(&a));
    let r = try_core!(condition_report(&a, ln, cap));
    let mut status = Status::Holds;
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let (v, s) = render::check_verdict(&c.verdict);
            status = status.max(s);
            json!({ "name": c.name, "verdict": v, "witness": render::module_witness(&c.witness) })
        })
        .collect();
    let entries: Vec<Value> = r
        .ln_matrix
        .iter()
        .map(|e| {
            let (v, s) = render::check_verdict(&e.verdict);
            status = status.max(s);
            json!({ "l": e.l, "n": e.n, "side": e.side.name(), "verdict": v, "witness": render::module_witness(&e.witness) })
        })
        .collect();
    let report = json!({
        "command": "check-conditions",
        "algebra": name,
        "algebra_id": r.algebra_id,
        "cap": cap,
        "checks": checks,
        "ln": entries,
        "dominant_dimension": { "left": render::bounded(r.dominant_dimension), "right": render::bounded(r.dominant_dimension_op) },
        "injective_resolution_of_regular": r.injective_terms.iter().map(|t| render::vertices(t)).collect::<Vec<_>>(),
    });
    Ok(Outcome { report, status })
}

fn resolve(ws: &Workspace, name: &str, degree: usize, injective: bool) -> Result<Outcome, Failure> {
    let m = ws.module(name).map_err(Failure::input)?;
    // Injective resolutions are dual to projective resolutions of D(M).
    let target = if injective { m.d_dual() } else { m.clone() };
    let res = try_core!(min_proj_resolution(&target, degree));
    let terms: Vec<Value> = (0..=res.length_computed().min(degree)).map(|k| render::vertices(res.vertices(k))).collect();
    let dimension = match res.projective_dimension() {
        Some(d) => Bounded::Value(d),
        None => Bounded::AtLeast(res.length_computed() + 1),
    };
    let report = json!({
        "command": "resolve",
        "module": name,
        "summary": render::module(&m),
        "kind": if injective { "injective" } else { "projective" },
        "degree": degree,
        "terms": terms,
        "dimension": render::bounded(dimension),
    });
    Ok(Outcome { report, status: Status::Holds })
}

fn invariants(ws: &Workspace, name: &str, cap: Option<usize>) -> Result<Outcome, Failure> {
    let m = ws.module(name).map_err(Failure::input)?;
    let cap = cap.unwrap_or_else(|| default_cap(m.algebra()));
    let budget = search_budget()?;
    let g = try_core!(grade(&m, cap));
    let sg = try_core!(sgrade(&m, cap));
    let seq = try_core!(ab_sequence(&m, budget));
    let report = json!({
        "command": "invariants",
        "module": name,
        "summary": render::module(&m),
        "cap": cap,
        "search_budget": budget,
        "grade": render::bounded(g),
        "sgrade": render::bounded(sg),
        "torsion": try_core!(is_torsion(&m)),
        "torsion_free": try_core!(is_torsion_free(&m)),
        "reflexive": try_core!(is_reflexive(&m)),
        "ab_sequence": {
            "dims": [seq.a.dim(), seq.x.dim(), seq.y.dim(), seq.b.dim()],
            "exact": acceptance::ab_exact(&seq),
        },
    });
    Ok(Outcome { report, status: Status::Holds })
}

fn refl(ws: &Workspace, op: &ReflOp) -> Result<Outcome, Failure> {
    let report = match op {
        ReflOp::Hull { module, force } => {
            let m = ws.module(module).map_err(Failure::input)?;
            let h = try_core!(reflexive_hull(&m, *force));
            json!({
                "command": "refl hull",
                "module": module,
                "summary": render::module(&m),
                "hull": render::module(h.map.target()),
                "kernel_dim": h.map.source().dim() - h.map.rank(),
                "cokernel_dim": h.map.target().dim() - h.map.rank(),
                "precondition_verified": h.precondition_verified,
            })
        }
        ReflOp::Kernel { map } => {
            let f = ws.map(map).map_err(Failure::input)?;
            let (k, _) = try_core!(refl_kernel(&f));
            json!({ "command": "refl kernel", "map": map, "kernel": render::module(&k) })
        }
        ReflOp::Cokernel { map } => {
            let f = ws.map(map).map_err(Failure::input)?;
            let (c, p) = try_core!(refl_cokernel(&f));
            json!({ "command": "refl cokernel", "map": map, "cokernel": render::module(&c), "rank": p.rank() })
        }
        ReflOp::Conflation { f, g } => {
            let fm = ws.map(f).map_err(Failure::input)?;
            let gm = ws.map(g).map_err(Failure::input)?;
            let v = try_core!(is_conflation(&fm, &gm));
            let report = json!({
                "command": "refl conflation",
                "maps": [f, g],
                "is_conflation": v.is_conflation,
                "kernel_cokernel_pair": v.kernel_cokernel_pair,
                "hull_factorization": v.hull_factorization,
                "exact_with_sgrade": v.exact_with_sgrade,
            });
            return Ok(Outcome { report, status: Status::of(v.is_conflation) });
        }
    };
    Ok(Outcome { report, status: Status::Holds })
}

fn certify(ws: &Workspace, property: Property, name: &str, dim_budget: usize) -> Result<Outcome, Failure> {
    let a = ws.algebra(name).map_err(Failure::input)?;
    let opts = harness_options(dim_budget)?;
    let c = match property {
        Property::QuasiAbelian => try_core!(certify_quasi_abelian(&a, opts)),
        Property::Abelian => try_core!(certify_abelian(&a, opts)),
    };
    let mut report = render::certificate(&c);
    report["command"] = json!("certify");
    report["algebra"] = json!(name);
    Ok(Outcome { status: render::verdict_status(c.verdict), report })
}

fn serre(ws: &Workspace, name: &str, simples: &[usize], dim_budget: usize) -> Result<Outcome, Failure> {
    let a = ws.algebra(name).map_err(Failure::input)?;
    if let Some(&bad) = simples.iter().find(|&&i| i == 0 || i > a.vertex_count()) {
        return Err(Failure::input(format!("simple {bad} out of range 1..={}", a.vertex_count())));
    }
    let zero_based: Vec<usize> = simples.iter().map(|i| i - 1).collect();
    let s = serre_exact_structure(&a, &zero_based).map_err(|e| Failure::input(e.to_string()))?;
    let opts = harness_options(dim_budget)?;
    let r = try_core!(validate(&s, &opts));
    let c = &r.counts;
    let report = json!({
        "command": "serre",
        "algebra": name,
        "simples": render::vertices(&r.simples),
        "regenerated": render::vertices(&r.regenerated),
        "roundtrip": r.roundtrip(),
        "axioms_hold": r.axioms_hold,
        "dim_budget": dim_budget,
        "search_budget": opts.search_budget,
        "counts": {
            "conflations": c.conflations,
            "trivial": c.trivial,
            "isomorphism": c.isomorphism,
            "inflation_compositions": c.inflation_compositions,
            "deflation_compositions": c.deflation_compositions,
            "pushouts": c.pushouts,
            "pullbacks": c.pullbacks,
            "realizations": c.realizations,
            "max_agreement": c.max_agreement,
        },
    });
    Ok(Outcome { report, status: Status::of(r.axioms_hold && r.roundtrip()) })
}

fn morita(ws: &Workspace, op: &MoritaOp) -> Result<Outcome, Failure> {
    match op {
        MoritaOp::End { modules } => {
            let ms = side_sum(modules, ws)?;
            let e = try_core!(end_algebra(&ms));
            let lam = &e.algebra;
            let ddim = try_core!(reflexa::refl::dominant_dimension(lam, Side::Left, 4));
            let report = json!({
                "command": "morita end",
                "summands": modules,
                "summand_dims": reflexa::morita::summand_dims(&ms),
                "end_dim": lam.dim(),
                "block_dims": e.blocks.iter().map(|r| r.iter().map(|b| b.len()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "dominant_dimension": render::bounded(ddim),
                "dominant_dimension_cap": 4,
                "two_sided_22": try_core!(two_sided_22(lam)),
            });
            Ok(Outcome { report, status: Status::Holds })
        }
        MoritaOp::Verify { modules, mode, dim_budget } => {
            let ms = side_sum(modules, ws)?;
            let opts = harness_options(*dim_budget)?;
            let r = match mode {
                MoritaMode::Module => try_core!(verify_equivalence(&ms, Mode::ModuleCategory, &opts)),
                MoritaMode::Refl => try_core!(reflexive_equivalence_check(&ms, &opts)),
            };
            let report = json!({
                "command": "morita verify",
                "mode": match mode { MoritaMode::Module => "module", MoritaMode::Refl => "refl" },
                "summands": modules,
                "end_dim": r.end_dim,
                "dominant_dimension": render::bounded(r.dominant_dimension),
                "checks": r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "instances": c.instances })).collect::<Vec<_>>(),
                "indecomposable_counts": r.counts.map(|(a, b)| json!({ "reflexive_over_end": a, "source": b })),
                "all_pass": r.all_pass(),
                "dim_budget": opts.dim_budget,
                "search_budget": opts.search_budget,
            });
            Ok(Outcome { status: Status::of(r.all_pass()), report })
        }
    }
}
