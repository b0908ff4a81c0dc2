//! Text, LaTeX and JSON output for elements and bracket values.
//!
//! The text form is valid script input: `:d^2(D(phi_a)) phibar_a:` is the
//! right-nested normally ordered product of ∂²Dφ_a and φ^ā.

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::coeff::Scalar;
use crate::elements::{DerivedGen, Element, LambdaElement, Monomial};
use crate::error::Error;
use crate::formal::{dbit, join_signed, MixedWord, Sector};

pub const SCHEMA: &str = "scvertex/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s}")),
        }
    }
}

fn dname(sector: Sector, i: u8, latex: bool) -> String {
    match (sector, latex) {
        (Sector::N2, false) => format!("D{i}"),
        (Sector::N2, true) => format!("D^{{{i}}}"),
        _ => "D".into(),
    }
}

/// Scalar prefix for a product term: `""`, `"-"`, `"3*"`, `"(1 + t)*"`.
fn scalar_prefix(s: &Scalar, latex: bool) -> String {
    if s.is_one() {
        return String::new();
    }
    if s == &Scalar::from_int(-1) {
        return "-".into();
    }
    let t = if latex { s.to_latex() } else { s.to_text() };
    let simple = s.terms().count() == 1 && !t[1..].contains(['+', '-']);
    let body = if simple { t } else { format!("({t})") };
    if latex {
        format!("{body} ")
    } else {
        format!("{body}*")
    }
}

impl Algebra {
    pub fn dg_text(&self, dg: &DerivedGen) -> String {
        let mut s = self.gens[dg.gen as usize].name.clone();
        for i in [2u8, 1] {
            if dg.dmask & dbit(i) != 0 {
                s = format!("{}({s})", dname(self.sector, i, false));
            }
        }
        match dg.del {
            0 => s,
            1 => format!("d({s})"),
            k => format!("d^{k}({s})"),
        }
    }

    pub fn dg_latex(&self, dg: &DerivedGen) -> String {
        let mut s = String::new();
        match dg.del {
            0 => {}
            1 => s.push_str("\\partial "),
            k => s.push_str(&format!("\\partial^{{{k}}} ")),
        }
        for i in [1u8, 2] {
            if dg.dmask & dbit(i) != 0 {
                s.push_str(&dname(self.sector, i, true));
                s.push(' ');
            }
        }
        s.push_str(&self.gens[dg.gen as usize].latex);
        s
    }

    fn mono_text(&self, m: &Monomial) -> String {
        let body = m.iter().map(|dg| self.dg_text(dg)).collect::<Vec<_>>().join(" ");
        if m.len() > 1 {
            format!(":{body}:")
        } else {
            body
        }
    }

    fn mono_latex(&self, m: &Monomial) -> String {
        let body = m.iter().map(|dg| self.dg_latex(dg)).collect::<Vec<_>>().join(" ");
        if m.len() > 1 {
            format!("{{:}}{body}{{:}}")
        } else {
            body
        }
    }

    fn term_pieces(&self, e: &Element, latex: bool) -> Vec<String> {
        e.terms()
            .map(|(m, s)| {
                if m.is_empty() {
                    let t = if latex { s.to_latex() } else { s.to_text() };
                    if s.terms().count() > 1 {
                        format!("({t})")
                    } else {
                        t
                    }
                } else if latex {
                    format!("{}{}", scalar_prefix(s, true), self.mono_latex(m))
                } else {
                    format!("{}{}", scalar_prefix(s, false), self.mono_text(m))
                }
            })
            .collect()
    }

    pub fn element_text(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        join_signed(&self.term_pieces(e, false))
    }

    pub fn element_latex(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        join_signed(&self.term_pieces(e, true))
    }

    pub fn element_json(&self, e: &Element) -> Value {
        let terms: Vec<Value> = e
            .terms()
            .map(|(m, s)| {
                let factors: Vec<Value> = m
                    .iter()
                    .map(|dg| {
                        let ds: Vec<u8> = (1..=2).filter(|&i| dg.dmask & dbit(i) != 0).collect();
                        json!({ "gen": self.gens[dg.gen as usize].name, "del": dg.del, "D": ds })
                    })
                    .collect();
                json!({ "coeff": s.to_json(), "factors": factors })
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn element_from_json(&self, v: &Value) -> Result<Element, Error> {
        let bad = |m: &str| Error::Json(m.to_string());
        let mut out = Element::zero().with_alg(Some(self.id));
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))? {
            let s = Scalar::from_json(t.get("coeff").ok_or_else(|| bad("coeff"))?)?;
            let mut x = self.vacuum().scale(&s);
            let factors = t.get("factors").and_then(Value::as_array).ok_or_else(|| bad("factors"))?;
            for f in factors.iter().rev() {
                let name = f.get("gen").and_then(Value::as_str).ok_or_else(|| bad("gen"))?;
                let mut g = self.gen(name)?;
                if let Some(ds) = f.get("D").and_then(Value::as_array) {
                    for i in ds.iter().rev() {
                        let i = i.as_u64().ok_or_else(|| bad("D"))? as u8;
                        g = self.apply_translation(&g, crate::elements::TransOp::D(i))?;
                    }
                }
                for _ in 0..f.get("del").and_then(Value::as_u64).unwrap_or(0) {
                    g = self.apply_translation(&g, crate::elements::TransOp::Del)?;
                }
                x = self.normal_product(&g, &x)?;
            }
            out.add_assign(&x);
        }
        Ok(out)
    }

    fn lambda_render(&self, v: &LambdaElement, latex: bool) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, e) in v.iter().rev() {
            let word = if latex { w.to_latex(self.sector) } else { w.to_text(self.sector) };
            if *w == MixedWord::ONE {
                parts.extend(self.term_pieces(e, latex));
                continue;
            }
            let single = e.terms().next().filter(|_| e.len() == 1);
            let piece = match single {
                Some((m, s)) => {
                    let pre = scalar_prefix(s, latex);
                    if m.is_empty() {
                        format!("{pre}{word}")
                    } else if latex {
                        format!("{pre}{word} {}", self.mono_latex(m))
                    } else {
                        format!("{pre}{word}*{}", self.mono_text(m))
                    }
                }
                None => {
                    let inner = join_signed(&self.term_pieces(e, latex));
                    if latex {
                        format!("{word}\\left({inner}\\right)")
                    } else {
                        format!("{word}*({inner})")
                    }
                }
            };
            parts.push(piece);
        }
        join_signed(&parts)
    }

    pub fn lambda_text(&self, v: &LambdaElement) -> String {
        self.lambda_render(v, false)
    }

    pub fn lambda_latex(&self, v: &LambdaElement) -> String {
        self.lambda_render(v, true)
    }

    pub fn lambda_json(&self, v: &LambdaElement) -> Value {
        let terms: Vec<Value> =
            v.iter().map(|(w, e)| json!({ "word": w.to_json(), "value": self.element_json(e) })).collect();
        json!({ "terms": terms })
    }

    pub fn lambda_from_json(&self, v: &Value) -> Result<LambdaElement, Error> {
        let mut out = LambdaElement::zero();
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Json("terms".into()))? {
            let w = MixedWord::from_json(t.get("word").ok_or_else(|| Error::Json("word".into()))?)?;
            let e = self.element_from_json(t.get("value").ok_or_else(|| Error::Json("value".into()))?)?;
            out.add_term(w, e);
        }
        Ok(out)
    }

    pub fn render_lambda(&self, v: &LambdaElement, f: Format) -> String {
        match f {
            Format::Text => self.lambda_text(v),
            Format::Latex => self.lambda_latex(v),
            Format::Json => self.lambda_json(v).to_string(),
        }
    }

    pub fn render_element(&self, e: &Element, f: Format) -> String {
        match f {
            Format::Text => self.element_text(e),
            Format::Latex => self.element_latex(e),
            Format::Json => self.element_json(e).to_string(),
        }
    }
}
