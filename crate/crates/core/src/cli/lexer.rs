use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Colon,
    Comma,
    Semi,
    Eq,
    EqEq,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("number {s}"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Eq => "=",
            Tok::EqEq => "==",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            _ => "",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn parse_error(span: Span, msg: impl Into<String>) -> Error {
    Error::Parse { line: span.line, col: span.col, msg: msg.into() }
}

/// Splits script text into tokens. `#` starts a comment running to the end of the line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, Error> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    let byte_at = |k: usize| chars.get(k).map(|c| c.0).unwrap_or(src.len());
    while k < chars.len() {
        let c = chars[k].1;
        let span_from = |k0: usize, k1: usize, line: usize, col: usize| Span { start: byte_at(k0), end: byte_at(k1), line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        if c == '#' {
            while k < chars.len() && chars[k].1 != '\n' {
                k += 1;
            }
            continue;
        }
        let k0 = k;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            Tok::Ident(src[byte_at(k0)..byte_at(k)].to_string())
        } else if c.is_ascii_digit() {
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            Tok::Int(src[byte_at(k0)..byte_at(k)].to_string())
        } else if c == '"' {
            k += 1;
            let s0 = k;
            while k < chars.len() && chars[k].1 != '"' && chars[k].1 != '\n' {
                k += 1;
            }
            if k >= chars.len() || chars[k].1 != '"' {
                return Err(parse_error(span_from(k0, k, line, col), "unterminated string"));
            }
            let s = src[byte_at(s0)..byte_at(k)].to_string();
            k += 1;
            Tok::Str(s)
        } else {
            k += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' if chars.get(k).map(|c| c.1) == Some('=') => {
                    k += 1;
                    Tok::EqEq
                }
                '=' => Tok::Eq,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                _ => return Err(parse_error(span_from(k0, k, line, col), format!("unexpected character `{c}`"))),
            }
        };
        let span = span_from(k0, k, line, col);
        col += k - k0;
        out.push(Token { tok, span });
    }
    out.push(Token { tok: Tok::Eof, span: Span { start: src.len(), end: src.len(), line, col } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        let t = tokenize("let x =\n  :a b:; # c\n").unwrap();
        assert_eq!(t[3].tok, Tok::Colon);
        assert_eq!((t[3].span.line, t[3].span.col), (2, 3));
        assert_eq!(t.last().unwrap().tok, Tok::Eof);
    }

    #[test]
    fn double_equals() {
        let t = tokenize("a == b = c").unwrap();
        assert_eq!(t[1].tok, Tok::EqEq);
        assert_eq!(t[3].tok, Tok::Eq);
    }

    #[test]
    fn bad_character() {
        assert!(matches!(tokenize("a $ b"), Err(Error::Parse { line: 1, col: 3, .. })));
    }
}
