//! Script analysis and evaluation.
//!
//! Analysis runs over the whole script before anything is evaluated: it builds
//! the declared algebras, resolves every name, checks operators against the
//! sector and infers a static kind for each expression. Everything it rejects is
//! reported as a parse error with a position.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use super::ast::{Expr, ExprKind, Script, Stmt};
use super::lexer::{parse_error, Span};
use super::parser::{parse, parse_expr};
use crate::algebra::{Algebra, Kind};
use crate::brst::Brst;
use crate::coeff::{Rational, Scalar};
use crate::elements::{Element, LambdaElement};
use crate::error::Error;
use crate::fields::{self, catalog_names, param_name, Params};
use crate::formal::{MixedWord, Op, Sector, CHI1, CHI2, D1, D2};
use crate::reduce::component_map;
use crate::render::SCHEMA;
use crate::verify;

#[derive(Clone, Debug)]
pub enum Value {
    Scalar(Scalar),
    Op(Op),
    Elem(Element),
    Poly(LambdaElement),
}

/// Static kind of an expression. `Trans` is an operator built from ∂ and the D's
/// only, so it sends fields to fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ty {
    Scalar,
    Trans,
    Op,
    Elem,
    Poly,
}

impl Ty {
    fn describe(self) -> &'static str {
        match self {
            Ty::Scalar => "a scalar",
            Ty::Trans | Ty::Op => "an operator",
            Ty::Elem => "a field",
            Ty::Poly => "a λ-polynomial",
        }
    }

    fn is_op(self) -> bool {
        matches!(self, Ty::Trans | Ty::Op)
    }
}

/// Options that come from the command line rather than the script.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    /// `--set t_a=VALUE`, applied over any value the script gives.
    pub overrides: Vec<(String, Scalar)>,
    pub seed: u64,
    pub jobs: Option<usize>,
    /// Directory that `file "..."` paths are relative to.
    pub base_dir: PathBuf,
    /// Algebras loaded with `--algebra FILE`, usable with `use NAME;`.
    pub preloaded: Vec<(String, Arc<Algebra>)>,
}

impl Settings {
    /// Parses `NAME=VALUE` with VALUE a scalar expression such as `-1/2` or `2*i`.
    pub fn parse_override(s: &str) -> Result<(String, Scalar), Error> {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: 0, col: 0, msg: format!("--set expects NAME=VALUE, got `{s}`") })?;
        let e = parse_expr(value)?;
        Ok((name.trim().to_string(), eval_scalar(&e, &HashMap::new())?))
    }
}

/// Result of one command or assertion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub index: usize,
    pub line: usize,
    pub section: Option<String>,
    pub command: String,
    pub ok: bool,
    pub text: String,
    pub latex: String,
    pub json: Json,
}

impl Outcome {
    pub fn to_json(&self) -> Json {
        json!({
            "index": self.index,
            "line": self.line,
            "section": self.section,
            "command": self.command,
            "ok": self.ok,
            "text": self.text,
            "result": self.json,
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.ok)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "schema": SCHEMA,
            "passed": self.passed(),
            "results": self.outcomes.iter().map(Outcome::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, format: crate::render::Format) -> String {
        use crate::render::Format;
        if format == Format::Json {
            return serde_json::to_string_pretty(&self.to_json()).expect("json") + "\n";
        }
        let mut out = String::new();
        let mut section: Option<&String> = None;
        for o in &self.outcomes {
            if o.section.as_ref() != section {
                section = o.section.as_ref();
                if let Some(s) = section {
                    out.push_str(&format!("== {s} ==\n"));
                }
            }
            let status = if o.ok { "ok  " } else { "FAIL" };
            let body = if format == Format::Latex { &o.latex } else { &o.text };
            out.push_str(&format!("{status} {}  ->  {}\n", o.command, body.replace('\n', "\n      ")));
        }
        out
    }
}

/// Parse, analyze and evaluate a script.
pub fn run_script(src: &str, settings: &Settings) -> Result<Report, Error> {
    let script = parse(src)?;
    run_parsed(&script, settings)
}

pub fn run_parsed(script: &Script, settings: &Settings) -> Result<Report, Error> {
    let algebras = analyze(script, settings)?;
    let mut ev = Evaluator::new(settings, algebras);
    ev.run(script)
}

fn builtin_names(sector: Sector) -> &'static [&'static str] {
    match sector {
        Sector::N0 => &["i", "lambda", "d"],
        Sector::N1 => &["i", "lambda", "d", "chi", "D"],
        Sector::N2 => &["i", "lambda", "d", "chi1", "chi2", "D1", "D2"],
    }
}

const SECTOR_LETTERS: &[&str] = &["chi", "chi1", "chi2", "D", "D1", "D2"];

fn builtin(sector: Sector, name: &str) -> Option<Value> {
    if !builtin_names(sector).contains(&name) {
        return None;
    }
    let w = |w: MixedWord| Some(Value::Op(Op::word(w)));
    match name {
        "i" => Some(Value::Scalar(Scalar::i())),
        "lambda" => w(MixedWord::lam(1)),
        "d" => w(MixedWord::del(1)),
        "chi" | "chi1" => w(MixedWord::odd(CHI1)),
        "chi2" => w(MixedWord::odd(CHI2)),
        "D" | "D1" => w(MixedWord::odd(D1)),
        "D2" => w(MixedWord::odd(D2)),
        _ => None,
    }
}

fn builtin_ty(name: &str) -> Ty {
    match name {
        "i" => Ty::Scalar,
        "d" | "D" | "D1" | "D2" => Ty::Trans,
        _ => Ty::Op,
    }
}

pub const ALGEBRA_KINDS: &[&str] = &["susy_cff", "cff", "bcbg", "n2_bcbg", "osp12", "file"];

fn build_algebra(
    kind: &str,
    basis: &[super::ast::BasisItem],
    file: Option<&str>,
    settings: &Settings,
) -> Result<Arc<Algebra>, String> {
    let mut items: Vec<(&str, bool)> = basis.iter().map(|b| (b.name.as_str(), b.odd)).collect();
    let needs_basis = matches!(kind, "susy_cff" | "cff" | "bcbg" | "n2_bcbg");
    if needs_basis && items.is_empty() {
        items.push(("", false));
    }
    let r = match kind {
        "susy_cff" => fields::susy_charged_fermions(&items),
        "cff" => fields::charged_free_fermions("cff", &items),
        "bcbg" => {
            if basis.iter().any(|b| b.odd) {
                return Err("bc-βγ copies take no parity".into());
            }
            let names: Vec<&str> = items.iter().map(|b| b.0).collect();
            fields::bc_beta_gamma(&names)
        }
        "n2_bcbg" => fields::n2_bc_beta_gamma(&items),
        "osp12" => {
            if !basis.is_empty() {
                return Err("osp12 has a fixed basis".into());
            }
            fields::osp12_fermions()
        }
        "file" => {
            let path = settings.base_dir.join(file.unwrap_or_default());
            return super::algebra_file::load_with(&path, &settings.overrides).map_err(|e| format!("{}: {e}", path.display()));
        }
        _ => return Err(format!("unknown algebra kind `{kind}` (expected one of {})", ALGEBRA_KINDS.join(", "))),
    };
    r.map_err(|e| e.to_string())
}

/// Catalog vectors that can actually be built on `alg`.
pub fn available_catalog(alg: &Algebra) -> &'static [&'static str] {
    if alg.kind == Kind::ChargedFermion && alg.name != "osp12" {
        return &[];
    }
    catalog_names(alg.kind)
}

struct Requirement {
    sector: Option<Sector>,
    kinds: &'static [Kind],
}

fn requirement(cmd: &str) -> Requirement {
    let any = Requirement { sector: None, kinds: &[] };
    let n = |s| Requirement { sector: Some(s), kinds: &[] };
    match cmd {
        "verify-virasoro" | "verify-n1" | "verify-n2" => n(Sector::N0),
        "verify-sconf" | "verify-n2-susy" | "constraints" => n(Sector::N1),
        "verify-nk2" => n(Sector::N2),
        "charge" | "brst" | "homotopy" => Requirement { sector: Some(Sector::N1), kinds: &[Kind::SusyChargedFermion] },
        "components" => Requirement { sector: None, kinds: &[Kind::SusyChargedFermion, Kind::N2BcBetaGamma] },
        _ => any,
    }
}

/// Names visible to expressions: let-bindings with their algebra and kind, parameters.
struct Names {
    algebras: Vec<(String, Arc<Algebra>)>,
    current: Option<usize>,
    params: HashMap<String, Option<Scalar>>,
    lets: HashMap<String, (usize, Ty)>,
}

fn analyze(script: &Script, settings: &Settings) -> Result<Vec<Arc<Algebra>>, Error> {
    let current = settings.preloaded.len().checked_sub(1);
    let mut n = Names { algebras: settings.preloaded.clone(), current, params: HashMap::new(), lets: HashMap::new() };
    for (name, _) in &settings.overrides {
        n.params.insert(name.clone(), None);
    }
    for (_, alg) in &settings.preloaded {
        declare_shift_params(&mut n.params, alg);
    }
    let mut declared = Vec::new();
    for st in &script.statements {
        let sp = st.span;
        match &st.stmt {
            Stmt::Algebra { name, kind, basis, file } => {
                let alg = build_algebra(kind, basis, file.as_deref(), settings).map_err(|m| parse_error(sp, m))?;
                declare_shift_params(&mut n.params, &alg);
                n.algebras.push((name.clone(), alg.clone()));
                n.current = Some(n.algebras.len() - 1);
                declared.push(alg);
            }
            Stmt::Use(name) => {
                let k = n.algebras.iter().rposition(|(a, _)| a == name);
                n.current = Some(k.ok_or_else(|| parse_error(sp, format!("unknown algebra `{name}`")))?);
            }
            Stmt::Param(ps) => {
                for (p, v) in ps {
                    if let Some(v) = v {
                        check_scalar(v, &n.params)?;
                    }
                    n.params.insert(p.clone(), None);
                }
            }
            Stmt::Let(name, e) => {
                let k = need_algebra(&n, sp)?;
                let ty = n.infer(e)?;
                n.lets.insert(name.clone(), (k, ty));
            }
            Stmt::Section(_) => {}
            Stmt::Assert(a, b) => {
                need_algebra(&n, sp)?;
                n.infer(a)?;
                n.infer(b)?;
            }
            Stmt::Command { name, args, with } => {
                if name == "suite" {
                    match &args[0].kind {
                        ExprKind::Ident(s) if super::suite::SUITES.contains(&s.as_str()) => {}
                        _ => {
                            return Err(parse_error(
                                args[0].span,
                                format!("unknown suite `{}` (expected one of {})", args[0].to_source(), super::suite::SUITES.join(", ")),
                            ))
                        }
                    }
                    continue;
                }
                let k = need_algebra(&n, sp)?;
                let alg = n.algebras[k].1.clone();
                let req = requirement(name);
                if let Some(s) = req.sector {
                    if alg.sector != s {
                        return Err(parse_error(
                            sp,
                            format!("`{name}` needs a sector {} algebra, `{}` has sector {}", s.n(), n.algebras[k].0, alg.sector.n()),
                        ));
                    }
                }
                if !req.kinds.is_empty() && !req.kinds.contains(&alg.kind) {
                    return Err(parse_error(sp, format!("`{name}` is not available on `{}`", n.algebras[k].0)));
                }
                for a in args {
                    let ty = n.infer(a)?;
                    let field_like = matches!(ty, Ty::Elem | Ty::Scalar);
                    let ok = if name == "normalize" { !ty.is_op() } else { field_like };
                    if !ok {
                        return Err(parse_error(a.span, format!("`{name}` expects a field, found {}", ty.describe())));
                    }
                }
                for (w, v) in with {
                    let idx = w.strip_prefix('m').and_then(|s| s.parse::<usize>().ok());
                    if !matches!(idx, Some(i) if i >= 1 && i <= args.len()) {
                        return Err(parse_error(sp, format!("`{w}` is not an unknown of this ansatz (m1..m{})", args.len())));
                    }
                    check_scalar(v, &n.params)?;
                }
            }
        }
    }
    Ok(declared)
}

fn declare_shift_params(params: &mut HashMap<String, Option<Scalar>>, alg: &Algebra) {
    for b in &alg.basis {
        params.entry(param_name(&b.name)).or_insert(None);
    }
}

fn need_algebra(n: &Names, sp: Span) -> Result<usize, Error> {
    n.current.ok_or_else(|| parse_error(sp, "no algebra declared yet"))
}

fn check_scalar(e: &Expr, params: &HashMap<String, Option<Scalar>>) -> Result<(), Error> {
    let bad = |sp: Span, what: &str| Err(parse_error(sp, format!("{what} in a scalar expression")));
    match &e.kind {
        ExprKind::Num(_) => Ok(()),
        ExprKind::Ident(s) if s == "i" || params.contains_key(s) => Ok(()),
        ExprKind::Ident(s) => bad(e.span, &format!("unknown parameter `{s}`")),
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => check_scalar(a, params),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) | ExprKind::Apply(a, b) => {
            check_scalar(a, params)?;
            check_scalar(b, params)
        }
        _ => bad(e.span, "fields and brackets are not allowed"),
    }
}

impl Names {
    fn alg(&self) -> &Arc<Algebra> {
        &self.algebras[self.current.expect("checked")].1
    }

    fn ident_ty(&self, name: &str, sp: Span) -> Result<Ty, Error> {
        let cur = self.current.expect("checked");
        let alg = self.alg();
        if let Some((k, ty)) = self.lets.get(name) {
            if *k == cur {
                return Ok(*ty);
            }
            let owner = &self.algebras[*k].0;
            if alg.lookup(name).is_none() {
                return Err(parse_error(sp, format!("`{name}` is bound in algebra `{owner}`, not in `{}`", self.algebras[cur].0)));
            }
        }
        if alg.lookup(name).is_some() {
            return Ok(Ty::Elem);
        }
        if self.params.contains_key(name) {
            return Ok(Ty::Scalar);
        }
        if builtin_names(alg.sector).contains(&name) {
            return Ok(builtin_ty(name));
        }
        if SECTOR_LETTERS.contains(&name) {
            return Err(parse_error(sp, format!("`{name}` does not exist in sector {}", alg.sector.n())));
        }
        Err(parse_error(sp, format!("unknown identifier `{name}`")))
    }

    fn infer(&self, e: &Expr) -> Result<Ty, Error> {
        let sp = e.span;
        let err = |m: String| Err(parse_error(sp, m));
        match &e.kind {
            ExprKind::Num(_) => Ok(Ty::Scalar),
            ExprKind::Ident(s) => self.ident_ty(s, sp),
            ExprKind::Neg(a) => self.infer(a),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => Ok(add_ty(self.infer(a)?, self.infer(b)?)),
            ExprKind::Mul(a, b) | ExprKind::Apply(a, b) => {
                let (x, y) = (self.infer(a)?, self.infer(b)?);
                if matches!(e.kind, ExprKind::Apply(..)) && matches!(x, Ty::Elem | Ty::Poly) {
                    return err(format!("`{}` is {}, not an operator", a.to_source(), x.describe()));
                }
                mul_ty(x, y).or_else(|m| err(m))
            }
            ExprKind::Div(a, b) => {
                let x = self.infer(a)?;
                match self.infer(b)? {
                    Ty::Scalar => Ok(x),
                    y => err(format!("division by {}", y.describe())),
                }
            }
            ExprKind::Pow(a, _) => match self.infer(a)? {
                x @ (Ty::Scalar | Ty::Trans | Ty::Op) => Ok(x),
                x => err(format!("cannot raise {} to a power", x.describe())),
            },
            ExprKind::Normal(items) => {
                for it in items {
                    match self.infer(it)? {
                        Ty::Elem | Ty::Scalar => {}
                        x => return Err(parse_error(it.span, format!("normally ordered factor is {}, expected a field", x.describe()))),
                    }
                }
                Ok(Ty::Elem)
            }
            ExprKind::Bracket(a, b) => {
                for it in [a, b] {
                    match self.infer(it)? {
                        Ty::Elem | Ty::Scalar => {}
                        x => return Err(parse_error(it.span, format!("bracket argument is {}, expected a field", x.describe()))),
                    }
                }
                Ok(Ty::Poly)
            }
            ExprKind::Catalog(name) => {
                let alg = self.alg();
                let avail = available_catalog(alg);
                if avail.contains(&name.as_str()) {
                    Ok(Ty::Elem)
                } else if avail.is_empty() {
                    err(format!("no catalog vectors on this algebra, asked for `{name}`"))
                } else {
                    err(format!("no catalog vector `{name}` here (available: {})", avail.join(", ")))
                }
            }
        }
    }
}

fn add_ty(x: Ty, y: Ty) -> Ty {
    use Ty::*;
    match (x, y) {
        _ if x == y => x,
        (Scalar, Trans) | (Trans, Scalar) => Trans,
        (Scalar | Trans | Op, Scalar | Trans | Op) => Op,
        (Scalar | Trans | Elem, Scalar | Trans | Elem) => Elem,
        _ => Poly,
    }
}

fn mul_ty(x: Ty, y: Ty) -> Result<Ty, String> {
    use Ty::*;
    Ok(match (x, y) {
        (Scalar, y) => y,
        (x, Scalar) => x,
        (Trans, Trans) => Trans,
        (Trans | Op, Trans | Op) => Op,
        (Trans, Elem) => Elem,
        (Trans | Op, Elem | Poly) => Poly,
        (Elem, Elem) => return Err("product of two fields: write `:x y:` for the normally ordered product".into()),
        (Elem | Poly, Trans | Op) => return Err("operators act from the left".into()),
        (x, y) => return Err(format!("cannot multiply {} by {}", x.describe(), y.describe())),
    })
}

/// Evaluate an expression built from numbers, `i` and parameters.
pub fn eval_scalar(e: &Expr, params: &HashMap<String, Scalar>) -> Result<Scalar, Error> {
    let err = |m: String| Err(parse_error(e.span, m));
    Ok(match &e.kind {
        ExprKind::Num(s) => number(s),
        ExprKind::Ident(s) if s == "i" => Scalar::i(),
        ExprKind::Ident(s) => match params.get(s) {
            Some(v) => v.clone(),
            None => Scalar::param(s),
        },
        ExprKind::Neg(a) => -eval_scalar(a, params)?,
        ExprKind::Add(a, b) => &eval_scalar(a, params)? + &eval_scalar(b, params)?,
        ExprKind::Sub(a, b) => &eval_scalar(a, params)? - &eval_scalar(b, params)?,
        ExprKind::Mul(a, b) | ExprKind::Apply(a, b) => &eval_scalar(a, params)? * &eval_scalar(b, params)?,
        ExprKind::Div(a, b) => {
            let d = eval_scalar(b, params)?;
            eval_scalar(a, params)?.mul_ref(&inverse(&d).map_err(|m| parse_error(b.span, m))?)
        }
        ExprKind::Pow(a, n) => eval_scalar(a, params)?.pow(*n),
        _ => return err(format!("`{}` is not a scalar", e.to_source())),
    })
}

fn number(s: &str) -> Scalar {
    let n: BigInt = s.parse().expect("lexer gives digits");
    Scalar::from_rational(Rational::from_integer(n))
}

fn inverse(d: &Scalar) -> Result<Scalar, String> {
    let c = d.as_constant().ok_or_else(|| format!("division by the non-constant {}", d.to_text()))?;
    let inv = c.inv().ok_or_else(|| "division by zero".to_string())?;
    Ok(Scalar::constant(inv))
}

struct Evaluator<'s> {
    settings: &'s Settings,
    algebras: Vec<(String, Arc<Algebra>)>,
    pending: std::vec::IntoIter<Arc<Algebra>>,
    current: Option<usize>,
    params: HashMap<String, Scalar>,
    lets: HashMap<String, (usize, Value)>,
    section: Option<String>,
}

fn fail_at(index: usize, line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        e => Error::Eval(format!("statement {index} (line {line}): {e}")),
    }
}

impl<'s> Evaluator<'s> {
    fn new(settings: &'s Settings, declared: Vec<Arc<Algebra>>) -> Self {
        let mut params = HashMap::new();
        for (k, v) in &settings.overrides {
            params.insert(k.clone(), v.clone());
        }
        Evaluator {
            settings,
            algebras: settings.preloaded.clone(),
            pending: declared.into_iter(),
            current: settings.preloaded.len().checked_sub(1),
            params,
            lets: HashMap::new(),
            section: None,
        }
    }

    fn run(&mut self, script: &Script) -> Result<Report, Error> {
        let mut report = Report::default();
        for (index, st) in script.statements.iter().enumerate() {
            let line = st.span.line;
            let r = match &st.stmt {
                Stmt::Algebra { name, .. } => {
                    let alg = self.pending.next().expect("built during analysis");
                    self.algebras.push((name.clone(), alg));
                    self.current = Some(self.algebras.len() - 1);
                    continue;
                }
                Stmt::Use(name) => {
                    self.current = self.algebras.iter().rposition(|(a, _)| a == name);
                    continue;
                }
                Stmt::Param(ps) => {
                    for (p, v) in ps {
                        if self.settings.overrides.iter().any(|(k, _)| k == p) {
                            continue;
                        }
                        match v {
                            Some(v) => {
                                let x = eval_scalar(v, &self.params)?;
                                self.params.insert(p.clone(), x);
                            }
                            None => {
                                self.params.remove(p);
                            }
                        }
                    }
                    continue;
                }
                Stmt::Let(name, e) => {
                    let v = self.eval(e).map_err(|e| fail_at(index, line, e))?;
                    self.lets.insert(name.clone(), (self.current.expect("analyzed"), v));
                    continue;
                }
                Stmt::Section(s) => {
                    self.section = Some(s.clone());
                    continue;
                }
                Stmt::Assert(a, b) => self.assert(a, b),
                Stmt::Command { name, args, with } => self.command(name, args, with),
            };
            let (ok, text, latex, json) = match r {
                Ok(x) => x,
                Err(e) => {
                    let m = e.to_string();
                    (false, format!("error: {m}"), format!("\\text{{error: {m}}}"), json!({ "status": "error", "error": m }))
                }
            };
            let command = st.to_source().trim_end_matches(';').to_string();
            report.outcomes.push(Outcome { index, line, section: self.section.clone(), command, ok, text, latex, json });
        }
        Ok(report)
    }

    fn alg(&self) -> Arc<Algebra> {
        self.algebras[self.current.expect("analyzed")].1.clone()
    }

    fn shift_params(&self, alg: &Algebra) -> Params {
        let mut p = Params::symbolic();
        for b in &alg.basis {
            if let Some(v) = self.params.get(&param_name(&b.name)) {
                p = p.set(&b.name, v.clone());
            }
        }
        p
    }

    fn eval(&self, e: &Expr) -> Result<Value, Error> {
        let alg = self.alg();
        Ok(match &e.kind {
            ExprKind::Num(s) => Value::Scalar(number(s)),
            ExprKind::Ident(s) => self.ident(&alg, s),
            ExprKind::Neg(a) => scale(self.eval(a)?, &Scalar::from_int(-1)),
            ExprKind::Add(a, b) => add(&alg, self.eval(a)?, self.eval(b)?),
            ExprKind::Sub(a, b) => add(&alg, self.eval(a)?, scale(self.eval(b)?, &Scalar::from_int(-1))),
            ExprKind::Mul(a, b) | ExprKind::Apply(a, b) => mul(&alg, self.eval(a)?, self.eval(b)?)?,
            ExprKind::Div(a, b) => match self.eval(b)? {
                Value::Scalar(d) => scale(self.eval(a)?, &inverse(&d).map_err(Error::Eval)?),
                _ => return Err(Error::Eval("division by a non-scalar".into())),
            },
            ExprKind::Pow(a, n) => match self.eval(a)? {
                Value::Scalar(s) => Value::Scalar(s.pow(*n)),
                Value::Op(o) => {
                    let mut acc = Op::one();
                    for _ in 0..*n {
                        acc = acc.mul(&o);
                    }
                    Value::Op(acc)
                }
                _ => return Err(Error::Eval("power of a field".into())),
            },
            ExprKind::Normal(items) => {
                let mut acc: Option<Element> = None;
                for it in items.iter().rev() {
                    let x = to_elem(&alg, self.eval(it)?)?;
                    acc = Some(match acc {
                        None => x,
                        Some(y) => alg.normal_product(&x, &y)?,
                    });
                }
                Value::Elem(acc.expect("nonempty"))
            }
            ExprKind::Bracket(a, b) => {
                let x = to_elem(&alg, self.eval(a)?)?;
                let y = to_elem(&alg, self.eval(b)?)?;
                Value::Poly(alg.bracket(&x, &y)?)
            }
            ExprKind::Catalog(name) => Value::Elem(fields::vector(&alg, name, &self.shift_params(&alg))?),
        })
    }

    fn ident(&self, alg: &Arc<Algebra>, name: &str) -> Value {
        let cur = self.current.expect("analyzed");
        if let Some((k, v)) = self.lets.get(name) {
            if *k == cur {
                return v.clone();
            }
        }
        if let Some(g) = alg.lookup(name) {
            return Value::Elem(alg.gen_element(g));
        }
        if let Some(v) = self.params.get(name) {
            return Value::Scalar(v.clone());
        }
        builtin(alg.sector, name).unwrap_or_else(|| Value::Scalar(Scalar::param(name)))
    }

    fn field(&self, e: &Expr) -> Result<Element, Error> {
        to_elem(&self.alg(), self.eval(e)?)
    }

    fn assert(&self, a: &Expr, b: &Expr) -> CmdResult {
        let alg = self.alg();
        let x = to_poly(&alg, self.eval(a)?);
        let y = to_poly(&alg, self.eval(b)?);
        let diff = x.sub(&y);
        if diff.is_zero() {
            return Ok((true, "holds".into(), "\\checkmark".into(), json!({ "status": "ok" })));
        }
        Ok((
            false,
            format!("left side is {}; difference {}", alg.lambda_text(&x), alg.lambda_text(&diff)),
            alg.lambda_latex(&diff),
            json!({
                "status": "failed",
                "lhs": alg.lambda_text(&x),
                "rhs": alg.lambda_text(&y),
                "difference": alg.lambda_json(&diff),
            }),
        ))
    }

    fn command(&self, name: &str, args: &[Expr], with: &[(String, Expr)]) -> CmdResult {
        if name == "suite" {
            let which = args[0].to_source();
            let lines = super::suite::run(&which, self.settings)?;
            let ok = lines.iter().all(|l| l.ok);
            let text = lines.iter().map(|l| l.text()).collect::<Vec<_>>().join("\n");
            let json = json!({ "suite": which, "lines": lines.iter().map(|l| l.to_json()).collect::<Vec<_>>() });
            return Ok((ok, text.clone(), text, json));
        }
        let alg = self.alg();
        let verdict = |r: Result<Scalar, Error>| -> CmdResult {
            Ok(match r {
                Ok(c) => (
                    true,
                    format!("ok, c = {}", c.to_text()),
                    format!("c = {}", c.to_latex()),
                    json!({ "status": "ok", "central_charge": c.to_text() }),
                ),
                Err(e) => (
                    false,
                    format!("failed: {e}"),
                    format!("\\text{{failed: {e}}}"),
                    json!({ "status": "failed", "reason": e.to_string() }),
                ),
            })
        };
        match name {
            "bracket" => {
                let v = alg.bracket(&self.field(&args[0])?, &self.field(&args[1])?)?;
                Ok((true, alg.lambda_text(&v), alg.lambda_latex(&v), json!({ "value": alg.lambda_json(&v) })))
            }
            "normalize" => match self.eval(&args[0])? {
                Value::Poly(p) => Ok((true, alg.lambda_text(&p), alg.lambda_latex(&p), json!({ "value": alg.lambda_json(&p) }))),
                v => {
                    let x = to_elem(&alg, v)?;
                    Ok((true, alg.element_text(&x), alg.element_latex(&x), json!({ "value": alg.element_json(&x) })))
                }
            },
            "weight" => {
                let r = verify::conformal_weight(&alg, &self.field(&args[0])?, &self.field(&args[1])?)?;
                let mut text = format!("weight = {}", r.delta.to_text());
                if !r.primary {
                    text.push_str(&format!(", not primary: residual {}", alg.lambda_text(&r.residual)));
                }
                Ok((
                    r.primary,
                    text,
                    format!("\\Delta = {}", r.delta.to_latex()),
                    json!({ "weight": r.delta.to_text(), "primary": r.primary, "residual": alg.lambda_json(&r.residual) }),
                ))
            }
            "charge" => {
                let b = Brst::new(&alg, &self.shift_params(&alg))?;
                let v = self.field(&args[0])?;
                let r = b.charge_report(&v)?;
                if !r.is_eigenvector {
                    let img = alg.element_text(&r.image);
                    return Ok((
                        false,
                        format!("not a charge eigenvector: J_(0|1) gives {img}"),
                        alg.element_latex(&r.image),
                        json!({ "status": "failed", "image": img }),
                    ));
                }
                let m = r.eigenvalue;
                Ok((true, format!("charge = {}", m.to_text()), m.to_latex(), json!({ "charge": m.to_text() })))
            }
            "brst" | "homotopy" => {
                let b = Brst::new(&alg, &self.shift_params(&alg))?;
                let v = self.field(&args[0])?;
                let (x, y) = if name == "brst" { (b.q(&v)?, b.q_defining(&v)?) } else { (b.h(&v)?, b.h_defining(&v)?) };
                let ok = x.sub(&y).is_zero();
                let mut text = alg.element_text(&x);
                if !ok {
                    text.push_str(&format!(" (defining form gives {})", alg.element_text(&y)));
                }
                Ok((ok, text, alg.element_latex(&x), json!({ "value": alg.element_json(&x), "forms_agree": ok })))
            }
            "components" => {
                let map = component_map(&alg)?;
                let (a, b) = map.components(&self.field(&args[0])?)?;
                let t = &map.target;
                let text = format!("body {}; theta {}", t.element_text(&a), t.element_text(&b));
                let latex = format!("{} + \\theta\\left({}\\right)", t.element_latex(&a), t.element_latex(&b));
                Ok((
                    true,
                    text,
                    latex,
                    json!({ "body": t.element_json(&a), "theta": t.element_json(&b), "map": map.to_json() }),
                ))
            }
            "verify-virasoro" => verdict(verify::check_virasoro(&alg, &self.field(&args[0])?)),
            "verify-n1" => verdict(verify::check_n1_pair(&alg, &self.field(&args[0])?, &self.field(&args[1])?)),
            "verify-n2" => {
                let f: Vec<Element> = args.iter().map(|a| self.field(a)).collect::<Result<_, _>>()?;
                verdict(verify::check_n2_component(&alg, &f[0], &f[1], &f[2], &f[3]))
            }
            "verify-sconf" => verdict(verify::check_susy_superconformal(&alg, &self.field(&args[0])?)),
            "verify-n2-susy" => verdict(verify::check_n2_susy_pair(&alg, &self.field(&args[0])?, &self.field(&args[1])?)),
            "verify-nk2" => verdict(verify::check_nk2_superconformal(&alg, &self.field(&args[0])?)),
            "constraints" => self.constraints(&alg, args, with),
            _ => unreachable!("command names are checked by the parser"),
        }
    }

    fn constraints(&self, alg: &Algebra, args: &[Expr], with: &[(String, Expr)]) -> CmdResult {
        let monos: Vec<Element> = args.iter().map(|a| self.field(a)).collect::<Result<_, _>>()?;
        let sys = verify::ansatz_constraints(alg, &monos)?;
        if with.is_empty() {
            let eqs: Vec<String> = sys.equations.iter().map(|e| verify::equation_text(alg, e)).collect();
            let text = format!("{} equations in {}, c\n{}", eqs.len(), sys.unknowns.join(", "), eqs.join("\n"));
            return Ok((true, text.clone(), text, json!({ "unknowns": sys.unknowns, "equations": eqs })));
        }
        let mut values = HashMap::new();
        for (k, v) in with {
            values.insert(k.clone(), eval_scalar(v, &self.params)?);
        }
        let (c, residuals) = sys.solve_central(&values);
        let c = c.unwrap_or_else(Scalar::zero);
        let res: Vec<Json> = residuals
            .iter()
            .map(|(e, r)| json!({ "equation": verify::equation_text(alg, e), "word": e.word.to_json(), "value": r.to_text() }))
            .collect();
        if residuals.is_empty() {
            return Ok((
                true,
                format!("solution, c = {}", c.to_text()),
                format!("c = {}", c.to_latex()),
                json!({ "status": "ok", "central_charge": c.to_text(), "residuals": res }),
            ));
        }
        let (e, r) = &residuals[0];
        Ok((
            false,
            format!("{} nonzero residuals, first: {} gives {}", residuals.len(), verify::equation_text(alg, e), r.to_text()),
            format!("\\text{{{} nonzero residuals}}", residuals.len()),
            json!({ "status": "failed", "central_charge": c.to_text(), "residuals": res }),
        ))
    }
}

type CmdResult = Result<(bool, String, String, Json), Error>;

fn scale(v: Value, s: &Scalar) -> Value {
    match v {
        Value::Scalar(x) => Value::Scalar(x.mul_ref(s)),
        Value::Op(o) => Value::Op(o.scale(s)),
        Value::Elem(e) => Value::Elem(e.scale(s)),
        Value::Poly(p) => Value::Poly(p.scale(s)),
    }
}

pub fn to_poly(alg: &Algebra, v: Value) -> LambdaElement {
    match v {
        Value::Scalar(s) => LambdaElement::term(MixedWord::ONE, alg.vacuum().scale(&s)),
        Value::Op(o) => alg.apply_op_poly(&o, &LambdaElement::term(MixedWord::ONE, alg.vacuum())),
        Value::Elem(e) => LambdaElement::term(MixedWord::ONE, e),
        Value::Poly(p) => p,
    }
}

/// A λ-polynomial with only a constant term is a field.
fn simplify(alg: &Algebra, p: LambdaElement) -> Value {
    if p.iter().all(|(w, _)| *w == MixedWord::ONE) {
        let e = p.coefficient(&MixedWord::ONE);
        return Value::Elem(if e.alg().is_none() { e.with_alg(Some(alg.id)) } else { e });
    }
    Value::Poly(p)
}

pub fn to_elem(alg: &Algebra, v: Value) -> Result<Element, Error> {
    match simplify(alg, to_poly(alg, v)) {
        Value::Elem(e) => {
            alg.check_owner(&e)?;
            Ok(e)
        }
        _ => Err(Error::Eval("expected a field, found a λ-polynomial".into())),
    }
}

fn add(alg: &Algebra, a: Value, b: Value) -> Value {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
        (Value::Op(x), Value::Op(y)) => Value::Op(x.add(&y)),
        (Value::Scalar(x), Value::Op(y)) | (Value::Op(y), Value::Scalar(x)) => Value::Op(Op::constant(x).add(&y)),
        (Value::Elem(x), Value::Elem(y)) => Value::Elem(x.add(&y)),
        (a, b) => simplify(alg, to_poly(alg, a).add(&to_poly(alg, b))),
    }
}

fn mul(alg: &Algebra, a: Value, b: Value) -> Result<Value, Error> {
    Ok(match (a, b) {
        (Value::Scalar(s), v) | (v, Value::Scalar(s)) => scale(v, &s),
        (Value::Op(x), Value::Op(y)) => Value::Op(x.mul(&y)),
        (Value::Op(o), v @ (Value::Elem(_) | Value::Poly(_))) => simplify(alg, alg.apply_op_poly(&o, &to_poly(alg, v))),
        (Value::Elem(_), Value::Elem(_)) => {
            return Err(Error::Eval("product of two fields: write `:x y:` for the normally ordered product".into()))
        }
        _ => return Err(Error::Eval("operators act from the left".into())),
    })
}

/// Text form of a value, in the syntax scripts accept.
pub fn value_text(alg: &Algebra, v: &Value) -> String {
    match v {
        Value::Scalar(s) => s.to_text(),
        Value::Op(o) => o.to_text(alg.sector),
        Value::Elem(e) => alg.element_text(e),
        Value::Poly(p) => alg.lambda_text(p),
    }
}

/// Evaluate one expression in `alg` with the given parameter values; used for
/// algebra files and tests.
pub fn eval_in(alg: &Arc<Algebra>, src: &str, params: &[(String, Scalar)]) -> Result<Value, Error> {
    let e = parse_expr(src)?;
    let settings = Settings { overrides: params.to_vec(), preloaded: vec![("_".into(), alg.clone())], ..Default::default() };
    let mut n = Names { algebras: settings.preloaded.clone(), current: Some(0), params: HashMap::new(), lets: HashMap::new() };
    for (k, _) in params {
        n.params.insert(k.clone(), None);
    }
    declare_shift_params(&mut n.params, alg);
    n.infer(&e)?;
    let mut ev = Evaluator::new(&settings, vec![]);
    ev.current = Some(0);
    ev.eval(&e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> Report {
        run_script(src, &Settings::default()).unwrap()
    }

    fn analysis_error(src: &str) -> String {
        match run_script(src, &Settings::default()) {
            Err(Error::Parse { msg, .. }) => msg,
            r => panic!("expected an analysis error, got {r:?}"),
        }
    }

    #[test]
    fn empty_script() {
        assert!(run("").outcomes.is_empty());
    }

    #[test]
    fn bracket_of_derivative() {
        let r = run("algebra F = susy_cff { a: even };\nbracket :d(phi_a) phibar_a: phi_a;");
        assert_eq!(r.outcomes[0].text, "d(phi_a)");
    }

    #[test]
    fn superconformal_vector_reports_central_charge() {
        let r = run(
            "algebra F = susy_cff { a: even };\nparam t_a;\n\
             let T = (t_a + 1)*:d(phi_a) phibar_a: + t_a*:phi_a d(phibar_a): + :D(phi_a) D(phibar_a):;\nverify-sconf T;",
        );
        assert!(r.passed());
        assert_eq!(r.outcomes[0].json["central_charge"], "6*t_a + 3");
    }

    #[test]
    fn charge_of_conjugate() {
        let r = run("algebra F = susy_cff { a: even };\ncharge phibar_a;");
        assert_eq!(r.outcomes[0].text, "charge = -t_a - 1");
    }

    #[test]
    fn overrides_win() {
        let s = Settings { overrides: vec![("t_a".into(), Scalar::zero())], ..Default::default() };
        let r = run_script("algebra F = susy_cff { a: even };\nparam t_a = 5;\ncharge phibar_a;", &s).unwrap();
        assert_eq!(r.outcomes[0].text, "charge = -1");
    }

    #[test]
    fn sector_letters_are_checked() {
        assert!(analysis_error("algebra F = susy_cff { a: even };\nlet x = D2(phi_a);").contains("sector 1"));
        assert!(analysis_error("algebra F = susy_cff { a: even };\nlet x = frob;").contains("unknown identifier"));
        assert!(analysis_error("algebra F = bcbg { a };\nverify-sconf gamma_a;").contains("sector 1"));
    }

    #[test]
    fn kinds_are_checked() {
        let m = analysis_error("algebra F = susy_cff { a: even };\nlet x = phi_a*phibar_a;");
        assert!(m.contains(":x y:"), "{m}");
        let m = analysis_error("algebra F = susy_cff { a: even };\nbracket lambda*phi_a, phi_a;");
        assert!(m.contains("expects a field"), "{m}");
    }

    #[test]
    fn failed_assert_is_reported() {
        let r = run("algebra F = susy_cff { a: even };\nassert [phi_a, phibar_a] == 2;\nassert [phi_a, phibar_a] == 1;");
        assert!(!r.outcomes[0].ok);
        assert!(r.outcomes[1].ok);
    }

    #[test]
    fn operator_notation() {
        let alg = fields::susy_charged_fermions(&[("a", false)]).unwrap();
        let v = eval_in(&alg, "(D + chi)*(d + lambda)*phibar_a", &[]).unwrap();
        let direct = eval_in(&alg, "D(d(phibar_a)) + lambda*D(phibar_a) + chi*d(phibar_a) + lambda*chi*phibar_a", &[]).unwrap();
        assert_eq!(to_poly(&alg, v), to_poly(&alg, direct));
    }
}
