//! Recursive-descent parser for scripts.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := app ("^" INT app_args)?
//! app    := atom app_args
//! app_args := ("(" expr ")")*
//! atom   := INT | IDENT | "(" expr ")" | ":" unary+ ":" | "[" expr "," expr "]"
//!         | "catalog" "(" IDENT ")"
//! ```

use super::ast::*;
use super::lexer::{parse_error, tokenize, Span, Tok, Token};
use crate::error::Error;

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

pub fn parse(src: &str) -> Result<Script, Error> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let mut statements = Vec::new();
    while p.peek() != &Tok::Eof {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

/// Parses a single expression (no trailing semicolon).
pub fn parse_expr(src: &str) -> Result<Expr, Error> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let e = p.expr()?;
    p.expect(&Tok::Eof)?;
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<Span, Error> {
        if self.peek() == t {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("expected {}", t.describe())))
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        parse_error(self.span(), format!("{what}, found {}", self.peek().describe()))
    }

    fn ident(&mut self) -> Result<(String, Span), Error> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().span;
                Ok((s, sp))
            }
            _ => Err(self.unexpected("expected a name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// A command name: identifiers joined by `-` with no space in between.
    fn command_name(&mut self) -> Result<(String, Span), Error> {
        let (mut name, start) = self.ident()?;
        loop {
            let (minus, next) = (&self.toks[self.pos], &self.toks[(self.pos + 1).min(self.toks.len() - 1)]);
            let adjacent = minus.tok == Tok::Minus
                && matches!(next.tok, Tok::Ident(_))
                && minus.span.start == self.toks[self.pos - 1].span.end
                && next.span.start == minus.span.end;
            if !adjacent {
                break;
            }
            self.bump();
            let (s, _) = self.ident()?;
            name.push('-');
            name.push_str(&s);
        }
        Ok((name, start))
    }

    fn statement(&mut self) -> Result<Statement, Error> {
        let span = self.span();
        let (head, _) = self.command_name()?;
        let stmt = match head.as_str() {
            "algebra" => self.algebra()?,
            "use" => Stmt::Use(self.ident()?.0),
            "param" => {
                let mut ps = Vec::new();
                loop {
                    let (n, _) = self.ident()?;
                    let v = if self.eat(&Tok::Eq) { Some(self.expr()?) } else { None };
                    ps.push((n, v));
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                Stmt::Param(ps)
            }
            "let" => {
                let (n, _) = self.ident()?;
                self.expect(&Tok::Eq)?;
                Stmt::Let(n, self.expr()?)
            }
            "section" => match self.peek().clone() {
                Tok::Str(s) => {
                    self.bump();
                    Stmt::Section(s)
                }
                _ => return Err(self.unexpected("expected a quoted section title")),
            },
            "assert" => {
                let a = self.expr()?;
                self.expect(&Tok::EqEq)?;
                Stmt::Assert(a, self.expr()?)
            }
            _ => {
                let arity = COMMANDS
                    .iter()
                    .find(|(n, _)| *n == head)
                    .map(|(_, a)| *a)
                    .ok_or_else(|| parse_error(span, format!("unknown command `{head}`")))?;
                self.command(head, arity, span)?
            }
        };
        self.expect(&Tok::Semi)?;
        Ok(Statement { stmt, span })
    }

    fn algebra(&mut self) -> Result<Stmt, Error> {
        let (name, _) = self.ident()?;
        self.expect(&Tok::Eq)?;
        let (kind, _) = self.ident()?;
        if kind == "file" {
            return match self.peek().clone() {
                Tok::Str(f) => {
                    self.bump();
                    Ok(Stmt::Algebra { name, kind, basis: vec![], file: Some(f) })
                }
                _ => Err(self.unexpected("expected a quoted file name")),
            };
        }
        let mut basis = Vec::new();
        if self.eat(&Tok::LBrace) {
            while self.peek() != &Tok::RBrace {
                let (n, _) = match self.peek().clone() {
                    Tok::Int(s) => (s, self.bump().span),
                    _ => self.ident()?,
                };
                let mut odd = false;
                if self.eat(&Tok::Colon) {
                    let (p, sp) = self.ident()?;
                    odd = match p.as_str() {
                        "even" => false,
                        "odd" => true,
                        _ => return Err(parse_error(sp, format!("parity must be `even` or `odd`, not `{p}`"))),
                    };
                }
                basis.push(BasisItem { name: n, odd });
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RBrace)?;
        }
        Ok(Stmt::Algebra { name, kind, basis, file: None })
    }

    fn command(&mut self, name: String, arity: Option<usize>, span: Span) -> Result<Stmt, Error> {
        let mut args = Vec::new();
        let mut with = Vec::new();
        while self.peek() != &Tok::Semi && !matches!(self.peek(), Tok::Ident(s) if s == "with") {
            if self.peek() == &Tok::Eof {
                return Err(self.unexpected("expected `;`"));
            }
            args.push(self.expr()?);
            self.eat(&Tok::Comma);
        }
        if self.keyword("with") {
            loop {
                let (n, _) = self.ident()?;
                self.expect(&Tok::Eq)?;
                with.push((n, self.expr()?));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        let ok = match arity {
            Some(n) => args.len() == n,
            None => !args.is_empty(),
        };
        if !ok {
            let want = arity.map(|n| n.to_string()).unwrap_or_else(|| "at least 1".into());
            return Err(parse_error(span, format!("`{name}` takes {want} argument(s), got {}", args.len())));
        }
        if !with.is_empty() && name != "constraints" {
            return Err(parse_error(span, format!("`{name}` does not take a `with` clause")));
        }
        Ok(Stmt::Command { name, args, with })
    }

    pub fn expr(&mut self) -> Result<Expr, Error> {
        let mut a = self.term()?;
        loop {
            let sp = self.span();
            let kind = if self.eat(&Tok::Plus) {
                ExprKind::Add(Box::new(a), Box::new(self.term()?))
            } else if self.eat(&Tok::Minus) {
                ExprKind::Sub(Box::new(a), Box::new(self.term()?))
            } else {
                return Ok(a);
            };
            a = Expr { kind, span: sp };
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut a = self.unary()?;
        loop {
            let sp = self.span();
            let kind = if self.eat(&Tok::Star) {
                ExprKind::Mul(Box::new(a), Box::new(self.unary()?))
            } else if self.eat(&Tok::Slash) {
                ExprKind::Div(Box::new(a), Box::new(self.unary()?))
            } else {
                return Ok(a);
            };
            a = Expr { kind, span: sp };
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        let sp = self.span();
        if self.eat(&Tok::Minus) {
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span: sp });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let a = self.app()?;
        if self.peek() != &Tok::Caret {
            return Ok(a);
        }
        let sp = self.bump().span;
        let n = match self.peek().clone() {
            Tok::Int(s) => {
                let isp = self.bump().span;
                s.parse::<u32>().map_err(|_| parse_error(isp, "exponent too large"))?
            }
            _ => return Err(self.unexpected("expected an integer exponent")),
        };
        let p = Expr { kind: ExprKind::Pow(Box::new(a), n), span: sp };
        self.app_args(p)
    }

    fn app(&mut self) -> Result<Expr, Error> {
        let a = self.atom()?;
        self.app_args(a)
    }

    fn app_args(&mut self, mut f: Expr) -> Result<Expr, Error> {
        while self.peek() == &Tok::LParen {
            let sp = self.bump().span;
            let x = self.expr()?;
            self.expect(&Tok::RParen)?;
            f = Expr { kind: ExprKind::Apply(Box::new(f), Box::new(x)), span: sp };
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let sp = self.span();
        let kind = match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                ExprKind::Num(s)
            }
            Tok::Ident(s) if s == "catalog" && self.peek_at(1) == &Tok::LParen => {
                self.bump();
                self.bump();
                let (n, _) = self.ident()?;
                self.expect(&Tok::RParen)?;
                ExprKind::Catalog(n)
            }
            Tok::Ident(s) => {
                self.bump();
                ExprKind::Ident(s)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                return Ok(e);
            }
            Tok::Colon => {
                self.bump();
                let mut items = Vec::new();
                while self.peek() != &Tok::Colon {
                    if matches!(self.peek(), Tok::Eof | Tok::Semi) {
                        return Err(self.unexpected("expected `:` closing the normally ordered product"));
                    }
                    items.push(self.unary()?);
                }
                if items.is_empty() {
                    return Err(parse_error(sp, "empty normally ordered product"));
                }
                self.bump();
                ExprKind::Normal(items)
            }
            Tok::LBracket => {
                self.bump();
                let a = self.expr()?;
                self.expect(&Tok::Comma)?;
                let b = self.expr()?;
                self.expect(&Tok::RBracket)?;
                ExprKind::Bracket(Box::new(a), Box::new(b))
            }
            _ => return Err(self.unexpected("expected an expression")),
        };
        Ok(Expr { kind, span: sp })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn right_nesting_is_flat() {
        match e(":a b c:").kind {
            ExprKind::Normal(items) => assert_eq!(items.len(), 3),
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn unclosed_bracket_reports_eof() {
        match parse_expr("[x, y") {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("end of input"), "{msg}"),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn power_then_application() {
        assert_eq!(e("d^2(x)").to_source(), "d^2(x)");
        assert!(matches!(e("d^2(x)").kind, ExprKind::Apply(..)));
    }

    #[test]
    fn golden_script_round_trip() {
        let script = parse(crate::cli::suite::PAPER_SUITE).unwrap();
        for st in &script.statements {
            let again = parse(&st.to_source()).unwrap();
            assert_eq!(again.statements.len(), 1);
            assert_eq!(&again.statements[0], st, "{}", st.to_source());
        }
        assert!(script.statements.len() > 100);
    }

    #[test]
    fn printer_round_trip() {
        for s in [
            "(t + 1)*:d(phi_a) phibar_a: + t*:phi_a d(phibar_a): + :D(phi_a) D(phibar_a):",
            "1/2*lambda^2*chi - lambda*chi*:D(phi_a) phibar_a:",
            "(D + chi)*(d + lambda)*phibar_a",
            "a - (b - c)",
            "-(a*b)",
            "(-a)^2",
            "[x, y + z]",
            ":(:a b:) -c:",
            "a*-b",
            "catalog(T_sh)",
        ] {
            let x = e(s);
            let y = e(&x.to_source());
            assert_eq!(x, y, "{s} -> {}", x.to_source());
        }
    }

    #[test]
    fn statements() {
        let s = parse("algebra F = susy_cff { a: even, b: odd };\nparam t;\nverify-sconf T;\nconstraints x y with m1 = 1;").unwrap();
        assert_eq!(s.statements.len(), 4);
        match &s.statements[2].stmt {
            Stmt::Command { name, .. } => assert_eq!(name, "verify-sconf"),
            x => panic!("{x:?}"),
        }
        assert_eq!(parse(&s.to_source()).unwrap(), s);
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(parse("bracket x;"), Err(Error::Parse { line: 1, col: 1, .. })));
    }

    #[test]
    fn unknown_command() {
        assert!(parse("frobnicate x;").is_err());
    }
}
