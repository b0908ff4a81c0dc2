use super::lexer::Span;

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Equality ignores spans.
impl PartialEq for Expr {
    fn eq(&self, o: &Self) -> bool {
        self.kind == o.kind
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Num(String),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `f(x)`: an operator applied to its argument.
    Apply(Box<Expr>, Box<Expr>),
    /// `:x y z:`, right-nested.
    Normal(Vec<Expr>),
    /// `[x, y]`
    Bracket(Box<Expr>, Box<Expr>),
    /// `catalog(T_sh)`
    Catalog(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisItem {
    pub name: String,
    pub odd: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    Algebra { name: String, kind: String, basis: Vec<BasisItem>, file: Option<String> },
    Use(String),
    Param(Vec<(String, Option<Expr>)>),
    Let(String, Expr),
    Section(String),
    Assert(Expr, Expr),
    Command { name: String, args: Vec<Expr>, with: Vec<(String, Expr)> },
}

#[derive(Clone, Debug)]
pub struct Statement {
    pub stmt: Stmt,
    pub span: Span,
}

impl PartialEq for Statement {
    fn eq(&self, o: &Self) -> bool {
        self.stmt == o.stmt
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

/// Commands and the number of expression arguments they take (`None`: one or more).
pub const COMMANDS: &[(&str, Option<usize>)] = &[
    ("bracket", Some(2)),
    ("normalize", Some(1)),
    ("weight", Some(2)),
    ("charge", Some(1)),
    ("brst", Some(1)),
    ("homotopy", Some(1)),
    ("components", Some(1)),
    ("verify-virasoro", Some(1)),
    ("verify-n1", Some(2)),
    ("verify-n2", Some(4)),
    ("verify-sconf", Some(1)),
    ("verify-n2-susy", Some(2)),
    ("verify-nk2", Some(1)),
    ("constraints", None),
    ("suite", Some(1)),
];

fn prec(k: &ExprKind) -> u8 {
    match k {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) | ExprKind::Div(..) => 2,
        ExprKind::Neg(..) => 3,
        ExprKind::Pow(..) => 4,
        _ => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    let s = e.to_source();
    if prec(&e.kind) < min {
        format!("({s})")
    } else {
        s
    }
}

impl Expr {
    /// Source text that parses back to the same tree.
    pub fn to_source(&self) -> String {
        match &self.kind {
            ExprKind::Num(n) => n.clone(),
            ExprKind::Ident(s) => s.clone(),
            ExprKind::Neg(a) => format!("-{}", wrap(a, 3)),
            ExprKind::Add(a, b) => format!("{} + {}", wrap(a, 1), wrap(b, 2)),
            ExprKind::Sub(a, b) => format!("{} - {}", wrap(a, 1), wrap(b, 2)),
            ExprKind::Mul(a, b) => format!("{}*{}", wrap(a, 2), wrap(b, 3)),
            ExprKind::Div(a, b) => format!("{}/{}", wrap(a, 2), wrap(b, 3)),
            ExprKind::Pow(a, n) => format!("{}^{n}", wrap(a, 5)),
            ExprKind::Apply(f, x) => format!("{}({})", wrap(f, 4), x.to_source()),
            ExprKind::Normal(items) => {
                let parts: Vec<String> = items
                    .iter()
                    .map(|x| match x.kind {
                        ExprKind::Normal(_) => format!("({})", x.to_source()),
                        _ => wrap(x, 3),
                    })
                    .collect();
                format!(":{}:", parts.join(" "))
            }
            ExprKind::Bracket(a, b) => format!("[{}, {}]", a.to_source(), b.to_source()),
            ExprKind::Catalog(n) => format!("catalog({n})"),
        }
    }
}

impl Statement {
    pub fn to_source(&self) -> String {
        match &self.stmt {
            Stmt::Algebra { name, kind, basis, file } => {
                if let Some(f) = file {
                    return format!("algebra {name} = file {f:?};");
                }
                if basis.is_empty() {
                    return format!("algebra {name} = {kind};");
                }
                let items: Vec<String> =
                    basis.iter().map(|b| format!("{}: {}", b.name, if b.odd { "odd" } else { "even" })).collect();
                format!("algebra {name} = {kind} {{ {} }};", items.join(", "))
            }
            Stmt::Use(n) => format!("use {n};"),
            Stmt::Param(ps) => {
                let items: Vec<String> = ps
                    .iter()
                    .map(|(n, v)| match v {
                        Some(v) => format!("{n} = {}", v.to_source()),
                        None => n.clone(),
                    })
                    .collect();
                format!("param {};", items.join(", "))
            }
            Stmt::Let(n, e) => format!("let {n} = {};", e.to_source()),
            Stmt::Section(s) => format!("section {s:?};"),
            Stmt::Assert(a, b) => format!("assert {} == {};", a.to_source(), b.to_source()),
            Stmt::Command { name, args, with } => {
                let mut s = name.clone();
                let a: Vec<String> = args.iter().map(|e| e.to_source()).collect();
                if !a.is_empty() {
                    s.push(' ');
                    s.push_str(&a.join(", "));
                }
                if !with.is_empty() {
                    let w: Vec<String> = with.iter().map(|(n, e)| format!("{n} = {}", e.to_source())).collect();
                    s.push_str(" with ");
                    s.push_str(&w.join(", "));
                }
                s.push(';');
                s
            }
        }
    }
}

impl Script {
    pub fn to_source(&self) -> String {
        self.statements.iter().map(|s| s.to_source() + "\n").collect()
    }
}
