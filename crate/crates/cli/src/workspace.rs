//! Workspace files: named algebras, modules and maps plus a job list, in JSON.
//!
//! Parsing never panics. Every problem is reported as a [`Diagnostic`] with
//! the line and column of the offending value.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use json_spanned_value::spanned;
use json_spanned_value::Value as JValue;
use reflexa::corpus::{self, CorpusEntry};
use reflexa::{Algebra, Arrow, Field, Matrix, Module, ModuleMap, Quiver, Scalar, Side};

use crate::command::{self, Command};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// A module together with the basis change applied when it was built from
/// full action matrices (rows are the new basis in the file's coordinates).
#[derive(Clone, Debug)]
pub struct NamedModule {
    pub module: Module,
    pub basis: Option<Matrix>,
}

#[derive(Clone, Debug)]
pub struct Job {
    pub args: Vec<String>,
    pub command: Command,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub modules: BTreeMap<String, NamedModule>,
    pub maps: BTreeMap<String, ModuleMap>,
    pub jobs: Vec<Job>,
}

fn corpus_cache() -> &'static std::result::Result<Vec<CorpusEntry>, String> {
    static CACHE: OnceLock<std::result::Result<Vec<CorpusEntry>, String>> = OnceLock::new();
    CACHE.get_or_init(|| corpus::corpus().map_err(|e| e.to_string()))
}

/// Algebras available without a workspace: `kA<n>`, `k[x]/(x^<n>)` and the
/// corpus names.
pub fn builtin_algebra(name: &str) -> Option<Arc<Algebra>> {
    if let Some(n) = name.strip_prefix("kA").and_then(|s| s.parse::<usize>().ok()) {
        return corpus::linear_a(n).ok();
    }
    if let Some(n) = name.strip_prefix("k[x]/(x^").and_then(|s| s.strip_suffix(')')).and_then(|s| s.parse::<usize>().ok()) {
        return corpus::truncated_polynomial(n).ok();
    }
    corpus_cache().as_ref().ok()?.iter().find(|e| e.name == name).map(|e| e.algebra.clone())
}

impl Workspace {
    pub fn algebra(&self, name: &str) -> Result<Arc<Algebra>, String> {
        self.algebras
            .get(name)
            .cloned()
            .or_else(|| builtin_algebra(name))
            .ok_or_else(|| format!("unresolved algebra reference {name:?}"))
    }

    /// A named module, or a shorthand `S<i>@alg`, `P<i>@alg`, `I<i>@alg`,
    /// `R@alg` (the regular module), optionally suffixed `:right`.
    pub fn module(&self, name: &str) -> Result<Module, String> {
        if let Some(m) = self.modules.get(name) {
            return Ok(m.module.clone());
        }
        let Some((kind, alg)) = name.split_once('@') else {
            return Err(format!("unresolved module reference {name:?}"));
        };
        let (alg, side) = match alg.rsplit_once(':') {
            Some((a, "right")) => (a, Side::Right),
            Some((a, "left")) => (a, Side::Left),
            _ => (alg, Side::Left),
        };
        let a = self.algebra(alg)?;
        if kind == "R" {
            return Ok(Module::regular(&a, side).0);
        }
        let mut chars = kind.chars();
        let letter = chars.next().ok_or_else(|| format!("unresolved module reference {name:?}"))?;
        let i: usize = chars.as_str().parse().map_err(|_| format!("unresolved module reference {name:?}"))?;
        if i == 0 || i > a.vertex_count() {
            return Err(format!("vertex {i} out of range in {name:?}"));
        }
        let m = match letter {
            'S' => Module::simple(&a, side, i - 1),
            'P' => Module::projective(&a, side, i - 1),
            'I' => Module::injective(&a, side, i - 1),
            _ => return Err(format!("unresolved module reference {name:?}")),
        };
        m.map_err(|e| e.to_string())
    }

    pub fn map(&self, name: &str) -> Result<ModuleMap, String> {
        self.maps.get(name).cloned().ok_or_else(|| format!("unresolved map reference {name:?}"))
    }
}

struct Parser<'t> {
    text: &'t str,
    diags: Vec<Diagnostic>,
}

type Obj = json_spanned_value::Map<spanned::String, spanned::Value>;

impl<'t> Parser<'t> {
    fn position(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error(&mut self, offset: usize, message: impl Into<String>) {
        let (line, column) = self.position(offset);
        self.diags.push(Diagnostic { line, column, message: message.into() });
    }

    fn object<'v>(&mut self, v: &'v spanned::Value, what: &str) -> Option<&'v Obj> {
        let o = v.as_object();
        if o.is_none() {
            self.error(v.start(), format!("{what} must be an object"));
        }
        o
    }

    fn array<'v>(&mut self, v: &'v spanned::Value, what: &str) -> Option<&'v Vec<spanned::Value>> {
        let a = v.as_array();
        if a.is_none() {
            self.error(v.start(), format!("{what} must be an array"));
        }
        a
    }

    fn string<'v>(&mut self, v: &'v spanned::Value, what: &str) -> Option<&'v str> {
        let s = v.as_string();
        if s.is_none() {
            self.error(v.start(), format!("{what} must be a string"));
        }
        s
    }

    fn count(&mut self, v: &spanned::Value, what: &str) -> Option<usize> {
        let n = v.as_number().and_then(|n| n.as_u64()).map(|n| n as usize);
        if n.is_none() {
            self.error(v.start(), format!("{what} must be a non-negative integer"));
        }
        n
    }

    fn required<'v>(&mut self, o: &'v Obj, at: usize, key: &str, what: &str) -> Option<&'v spanned::Value> {
        let v = o.get(key);
        if v.is_none() {
            self.error(at, format!("{what} is missing {key:?}"));
        }
        v
    }

    fn field(&mut self, v: &spanned::Value) -> Option<Field> {
        let s = self.string(v, "field")?;
        let parsed = match s {
            "Q" | "QQ" => Some(Field::rational()),
            _ => s
                .strip_prefix("GF(")
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| s.strip_prefix("F_"))
                .or_else(|| s.strip_prefix('F'))
                .and_then(|p| p.parse::<u64>().ok())
                .and_then(|p| Field::prime(p).ok()),
        };
        if parsed.is_none() {
            self.error(v.start(), format!("unknown field {s:?} (use \"Q\" or \"F<p>\" with p prime)"));
        }
        parsed
    }

    fn scalar(&mut self, field: Field, v: &spanned::Value) -> Option<Scalar> {
        let text = match v.get_ref() {
            JValue::String(s) => s.clone(),
            JValue::Number(n) if n.is_i64() => n.to_string(),
            _ => {
                self.error(v.start(), "field elements must be strings such as \"3\" or \"2/5\"");
                return None;
            }
        };
        match field.parse(&text) {
            Ok(x) => Some(x),
            Err(e) => {
                self.error(v.start(), e.to_string());
                None
            }
        }
    }

    fn vector(&mut self, field: Field, v: &spanned::Value, what: &str) -> Option<Vec<Scalar>> {
        let items = self.array(v, what)?;
        let out: Vec<Option<Scalar>> = items.iter().map(|x| self.scalar(field, x)).collect();
        out.into_iter().collect()
    }

    /// A `rows x cols` matrix of field elements.
    fn matrix(&mut self, field: Field, v: &spanned::Value, shape: (usize, usize), what: &str) -> Option<Matrix> {
        let rows = self.array(v, what)?;
        let mut out = Vec::new();
        for r in rows {
            out.push(self.vector(field, r, what)?);
        }
        if out.len() != shape.0 || out.iter().any(|r| r.len() != shape.1) {
            self.error(v.start(), format!("{what} must be {} x {}", shape.0, shape.1));
            return None;
        }
        Matrix::from_rows_with_cols(field, &out, shape.1).ok()
    }

    fn algebra(&mut self, v: &spanned::Value) -> Option<Arc<Algebra>> {
        let o = self.object(v, "algebra")?;
        let field = self.required(o, v.start(), "field", "algebra")?;
        let field = self.field(field)?;
        let built = if let Some(q) = o.get("quiver") {
            self.quiver_algebra(field, o, q)?
        } else if o.get("table").is_some() {
            self.table_algebra(field, o, v.start())?
        } else {
            self.error(v.start(), "algebra needs either \"quiver\" or \"table\"");
            return None;
        };
        match built {
            Ok(a) => Some(a),
            Err(e) => {
                self.error(v.start(), e.to_string());
                None
            }
        }
    }

    fn quiver_algebra(&mut self, field: Field, o: &Obj, q: &spanned::Value) -> Option<reflexa::Result<Arc<Algebra>>> {
        let qo = self.object(q, "quiver")?;
        let nv = self.required(qo, q.start(), "vertices", "quiver")?;
        let nv = self.count(nv, "vertices")?;
        let mut arrows = Vec::new();
        if let Some(list) = qo.get("arrows") {
            for a in self.array(list, "arrows")? {
                let ao = self.object(a, "arrow")?;
                let name = self.required(ao, a.start(), "name", "arrow")?;
                let name = self.string(name, "arrow name")?.to_string();
                let mut ends = [0; 2];
                for (k, key) in ["src", "dst"].into_iter().enumerate() {
                    let e = self.required(ao, a.start(), key, "arrow")?;
                    let x = self.count(e, key)?;
                    if x == 0 || x > nv {
                        self.error(e.start(), format!("vertex {x} out of range 1..={nv}"));
                        return None;
                    }
                    ends[k] = x - 1;
                }
                arrows.push((name, ends[0], ends[1], a.start()));
            }
        }
        let mut relations = Vec::new();
        let mut ok = true;
        if let Some(list) = o.get("relations") {
            for r in self.array(list, "relations")? {
                let Some(path) = self.array(r, "relation") else {
                    ok = false;
                    continue;
                };
                if path.len() < 2 {
                    self.error(r.start(), "relations must have length ≥ 2");
                    ok = false;
                    continue;
                }
                let mut names = Vec::new();
                for step in path {
                    let Some(s) = self.string(step, "arrow name") else {
                        ok = false;
                        continue;
                    };
                    if !arrows.iter().any(|a| a.0 == s) {
                        self.error(step.start(), format!("unknown arrow {s:?} in relation"));
                        ok = false;
                    }
                    names.push(s.to_string());
                }
                relations.push(names);
            }
        }
        if !ok {
            return None;
        }
        let arrows: Vec<Arrow> =
            arrows.into_iter().map(|(name, source, target, _)| Arrow { name, source, target }).collect();
        Some(Quiver::new(nv, arrows).and_then(|quiver| Algebra::bound_quiver(field, quiver, &relations)))
    }

    fn table_algebra(&mut self, field: Field, o: &Obj, at: usize) -> Option<reflexa::Result<Arc<Algebra>>> {
        let basis = self.required(o, at, "basis", "algebra")?;
        let mut labels = Vec::new();
        for b in self.array(basis, "basis")? {
            labels.push(self.string(b, "basis label")?.to_string());
        }
        let d = labels.len();
        let table = self.required(o, at, "table", "algebra")?;
        let rows = self.array(table, "table")?;
        if rows.len() != d {
            self.error(table.start(), format!("table must have {d} rows"));
            return None;
        }
        let mut t = Vec::new();
        for r in rows {
            let entries = self.array(r, "table row")?;
            if entries.len() != d {
                self.error(r.start(), format!("table rows must have {d} entries"));
                return None;
            }
            let mut row = Vec::new();
            for e in entries {
                let v = self.vector(field, e, "product")?;
                if v.len() != d {
                    self.error(e.start(), format!("products need {d} coordinates"));
                    return None;
                }
                row.push(v);
            }
            t.push(row);
        }
        let unit = self.required(o, at, "unit", "algebra")?;
        let unit = self.vector(field, unit, "unit")?;
        let idem = self.required(o, at, "idempotents", "algebra")?;
        let mut idempotents = Vec::new();
        for e in self.array(idem, "idempotents")? {
            idempotents.push(self.vector(field, e, "idempotent")?);
        }
        Some(Algebra::from_table(field, labels, t, unit, idempotents))
    }

    fn module(&mut self, ws: &Workspace, v: &spanned::Value) -> Option<NamedModule> {
        let o = self.object(v, "module")?;
        let alg = self.required(o, v.start(), "algebra", "module")?;
        let name = self.string(alg, "algebra reference")?;
        let a = match ws.algebra(name) {
            Ok(a) => a,
            Err(_) => {
                self.error(alg.start(), format!("unresolved algebra reference {name:?}"));
                return None;
            }
        };
        let side = match o.get("side") {
            None => Side::Left,
            Some(s) => match self.string(s, "side")? {
                "left" => Side::Left,
                "right" => Side::Right,
                other => {
                    self.error(s.start(), format!("side must be \"left\" or \"right\", not {other:?}"));
                    return None;
                }
            },
        };
        let field = a.field();
        let empty = Obj::new();
        let actions = match o.get("actions") {
            Some(x) => self.object(x, "actions")?,
            None => &empty,
        };
        let built = if let Some(dims) = o.get("dims") {
            let dv = self.dims(&a, dims)?;
            let Some(p) = a.presentation() else {
                self.error(dims.start(), "\"dims\" needs a quiver algebra; use \"total\" with basis actions");
                return None;
            };
            let mut arrows = Vec::new();
            for (key, m) in actions.iter() {
                let Some(arrow) = p.quiver.arrows.iter().find(|x| x.name == **key.get_ref()) else {
                    self.error(key.start(), format!("unknown arrow {:?}", key.get_ref()));
                    return None;
                };
                let (s, t) = match side {
                    Side::Left => (arrow.source, arrow.target),
                    Side::Right => (arrow.target, arrow.source),
                };
                let mat = self.matrix(field, m, (dv[s], dv[t]), &format!("matrix of arrow {}", arrow.name))?;
                arrows.push((arrow.name.clone(), mat));
            }
            Module::from_arrow_matrices(&a, side, dv, &arrows).map(|module| NamedModule { module, basis: None })
        } else if let Some(total) = o.get("total") {
            let n = self.count(total, "total")?;
            let mut mats = vec![Matrix::zeros(field, n, n); a.dim()];
            for (key, m) in actions.iter() {
                let Some(b) = a.labels().iter().position(|l| l == key.get_ref()) else {
                    self.error(key.start(), format!("unknown basis element {:?}", key.get_ref()));
                    return None;
                };
                mats[b] = self.matrix(field, m, (n, n), &format!("action of {}", key.get_ref()))?;
            }
            Module::from_actions(&a, side, mats).map(|(module, basis)| NamedModule { module, basis: Some(basis) })
        } else {
            self.error(v.start(), "module needs \"dims\" or \"total\"");
            return None;
        };
        match built {
            Ok(m) => Some(m),
            Err(e) => {
                self.error(v.start(), e.to_string());
                None
            }
        }
    }

    fn dims(&mut self, a: &Algebra, v: &spanned::Value) -> Option<Vec<usize>> {
        let o = self.object(v, "dims")?;
        let mut dims = vec![0; a.vertex_count()];
        for (key, n) in o.iter() {
            let vertex = key.get_ref().parse::<usize>().ok().filter(|&i| i >= 1 && i <= dims.len());
            let Some(i) = vertex else {
                self.error(key.start(), format!("dims keys must be vertices 1..={}", dims.len()));
                return None;
            };
            dims[i - 1] = self.count(n, "dimension")?;
        }
        Some(dims)
    }

    fn map(&mut self, ws: &Workspace, v: &spanned::Value) -> Option<ModuleMap> {
        let o = self.object(v, "map")?;
        let mut ends = Vec::new();
        for key in ["source", "target"] {
            let r = self.required(o, v.start(), key, "map")?;
            let name = self.string(r, key)?;
            match ws.module(name) {
                Ok(m) => ends.push((m, ws.modules.get(name).and_then(|n| n.basis.clone()))),
                Err(e) => {
                    self.error(r.start(), e);
                    return None;
                }
            }
        }
        let (tgt, tb) = ends.pop()?;
        let (src, sb) = ends.pop()?;
        let mv = self.required(o, v.start(), "matrix", "map")?;
        let mut m = self.matrix(src.field(), mv, (src.dim(), tgt.dim()), "map matrix")?;
        if let Some(b) = sb {
            m = b.mul(&m);
        }
        if let Some(b) = tb {
            m = m.mul(&b.inverse()?);
        }
        match ModuleMap::new(src, tgt, m) {
            Ok(f) => Some(f),
            Err(e) => {
                self.error(v.start(), e.to_string());
                None
            }
        }
    }

    fn job(&mut self, ws: &Workspace, v: &spanned::Value) -> Option<Job> {
        let o = self.object(v, "job")?;
        let c = self.required(o, v.start(), "command", "job")?;
        let mut args = vec![self.string(c, "command")?.to_string()];
        if let Some(list) = o.get("args") {
            for x in self.array(list, "args")? {
                args.push(self.string(x, "argument")?.to_string());
            }
        }
        let command = match command::parse_job(&args) {
            Ok(c) => c,
            Err(e) => {
                self.error(v.start(), e);
                return None;
            }
        };
        if let Err(e) = command.check_references(ws) {
            self.error(v.start(), e);
            return None;
        }
        Some(Job { args, command })
    }
}

/// Entries of an object in file order.
fn by_position(o: &Obj) -> Vec<(&spanned::String, &spanned::Value)> {
    let mut items: Vec<_> = o.iter().collect();
    items.sort_by_key(|(k, _)| k.start());
    items
}

/// Parses and validates a workspace. On failure every diagnostic found is
/// returned, in file order.
pub fn parse_workspace(text: &str) -> Result<Workspace, Vec<Diagnostic>> {
    let root: spanned::Value = match json_spanned_value::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            return Err(vec![Diagnostic { line: e.line().max(1), column: e.column().max(1), message: format!("syntax error: {e}") }]);
        }
    };
    let mut p = Parser { text, diags: Vec::new() };
    let mut ws = Workspace::default();
    let Some(top) = p.object(&root, "workspace") else {
        return Err(p.diags);
    };
    for (key, _) in top.iter() {
        if !matches!(key.get_ref().as_str(), "algebras" | "modules" | "maps" | "jobs") {
            p.error(key.start(), format!("unknown section {:?}", key.get_ref()));
        }
    }
    if let Some(v) = top.get("algebras") {
        if let Some(o) = p.object(v, "algebras") {
            for (name, def) in by_position(o) {
                if let Some(a) = p.algebra(def) {
                    ws.algebras.insert(name.get_ref().clone(), a);
                }
            }
        }
    }
    if let Some(v) = top.get("modules") {
        if let Some(o) = p.object(v, "modules") {
            for (name, def) in by_position(o) {
                if let Some(m) = p.module(&ws, def) {
                    ws.modules.insert(name.get_ref().clone(), m);
                }
            }
        }
    }
    if let Some(v) = top.get("maps") {
        if let Some(o) = p.object(v, "maps") {
            for (name, def) in by_position(o) {
                if let Some(f) = p.map(&ws, def) {
                    ws.maps.insert(name.get_ref().clone(), f);
                }
            }
        }
    }
    if let Some(v) = top.get("jobs") {
        if let Some(list) = p.array(v, "jobs") {
            for j in list {
                if let Some(job) = p.job(&ws, j) {
                    ws.jobs.push(job);
                }
            }
        }
    }
    if p.diags.is_empty() {
        Ok(ws)
    } else {
        p.diags.sort_by_key(|d| (d.line, d.column));
        Err(p.diags)
    }
}
