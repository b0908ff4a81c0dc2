//! Exact scalars: Gaussian rationals extended by named formal parameters.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::Error;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// re + im·i with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat_int(n))
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }

    pub fn to_text(&self) -> String {
        Scalar::constant(self.clone()).to_text()
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

/// A formal parameter such as `t_a`, `c` or an unknown `m1`, ordered by name.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.as_ref().cmp(other.0.as_ref())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Sorted list of (parameter, exponent) pairs with positive exponents.
pub type ParamMono = Vec<(Symbol, u32)>;

fn mono_mul(a: &ParamMono, b: &ParamMono) -> ParamMono {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn mono_degree(m: &ParamMono) -> u32 {
    m.iter().map(|(_, e)| e).sum()
}

/// Multivariate polynomial in formal parameters with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<ParamMono, GaussianRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(GaussianRational::real(rat(n, d)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(GaussianRational::real(r))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Scalar { terms }
    }

    pub fn param(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(Symbol::new(name), 1)], GaussianRational::one());
        Scalar { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (ParamMono, GaussianRational)>) -> Self {
        let mut s = Scalar::zero();
        for (m, c) in it {
            s.add_term(m, c);
        }
        s
    }

    fn add_term(&mut self, m: ParamMono, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMono, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value when no parameter occurs.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn params(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.iter().map(|(s, _)| s.clone())).collect()
    }

    pub fn mentions(&self, name: &str) -> bool {
        self.terms.keys().any(|m| m.iter().any(|(s, _)| s.name() == name))
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(r))).collect() }
    }

    pub fn scale_gauss(&self, g: &GaussianRational) -> Scalar {
        if g.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(g))).collect() }
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        if let Some(c) = o.as_constant() {
            return self.scale_gauss(&c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale_gauss(&c);
        }
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn add_ref(&self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }

    pub fn add_assign_ref(&mut self, o: &Scalar) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }

    /// Substitute values for some parameters; the rest stay symbolic.
    pub fn eval(&self, assignment: &HashMap<String, GaussianRational>) -> Scalar {
        let subst: HashMap<String, Scalar> = assignment
            .iter()
            .map(|(k, v)| (k.clone(), Scalar::constant(v.clone())))
            .collect();
        self.substitute(&subst)
    }

    /// Substitute arbitrary scalars for parameters.
    pub fn substitute(&self, subst: &HashMap<String, Scalar>) -> Scalar {
        if subst.is_empty() {
            return self.clone();
        }
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Scalar::constant(c.clone());
            for (s, e) in m {
                match subst.get(s.name()) {
                    Some(v) => factor = factor.mul_ref(&v.pow(*e)),
                    None => kept.push((s.clone(), *e)),
                }
            }
            let mut mono = Scalar::zero();
            mono.terms.insert(kept, GaussianRational::one());
            out.add_assign_ref(&factor.mul_ref(&mono));
        }
        out
    }

    /// Terms in display order: higher total degree first, then by parameter names.
    fn display_terms(&self) -> Vec<(&ParamMono, &GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| mono_degree(b.0).cmp(&mono_degree(a.0)).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Split into (real coefficient, monomial, carries i) pieces.
    fn pieces(&self) -> Vec<(Rational, &ParamMono, bool)> {
        let mut out = Vec::new();
        for (m, c) in self.display_terms() {
            if !c.re.is_zero() {
                out.push((c.re.clone(), m, false));
            }
            if !c.im.is_zero() {
                out.push((c.im.clone(), m, true));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (r, m, with_i)) in self.pieces().into_iter().enumerate() {
            let neg = r.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = r.abs();
            let mut factors: Vec<String> = m
                .iter()
                .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{}^{}", p, e) })
                .collect();
            if with_i {
                factors.push("i".into());
            }
            if factors.is_empty() {
                s.push_str(&rat_text(&a));
            } else {
                if !a.is_one() {
                    if a.is_integer() || m.is_empty() {
                        s.push_str(&rat_text(&a));
                    } else {
                        s.push_str(&format!("({})", rat_text(&a)));
                    }
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (r, m, with_i)) in self.pieces().into_iter().enumerate() {
            let neg = r.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = r.abs();
            let mut factors: Vec<String> = m
                .iter()
                .map(|(p, e)| {
                    let base = latex_name(p.name());
                    if *e == 1 {
                        base
                    } else {
                        format!("{}^{{{}}}", base, e)
                    }
                })
                .collect();
            if with_i {
                factors.push("i".into());
            }
            let num = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            if factors.is_empty() {
                s.push_str(&num);
            } else {
                if !a.is_one() {
                    s.push_str(&num);
                }
                s.push_str(&factors.join(" "));
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let params: serde_json::Map<String, Value> =
                    m.iter().map(|(p, e)| (p.to_string(), json!(e))).collect();
                json!({ "params": params, "re": rat_text(&c.re), "im": rat_text(&c.im) })
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Scalar, Error> {
        let bad = |m: &str| Error::Json(format!("scalar: {m}"));
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = Scalar::zero();
        for t in terms {
            let re = t.get("re").and_then(Value::as_str).and_then(parse_rat).ok_or_else(|| bad("re"))?;
            let im = t.get("im").and_then(Value::as_str).and_then(parse_rat).ok_or_else(|| bad("im"))?;
            let mut mono: ParamMono = Vec::new();
            if let Some(p) = t.get("params").and_then(Value::as_object) {
                for (k, e) in p {
                    let e = e.as_u64().ok_or_else(|| bad("exponent"))? as u32;
                    if e > 0 {
                        mono.push((Symbol::new(k), e));
                    }
                }
            }
            mono.sort();
            out.add_term(mono, GaussianRational::new(re, im));
        }
        Ok(out)
    }
}

/// `t_a` → `t_{a}`; names without an underscore are left alone.
pub fn latex_name(name: &str) -> String {
    match name.split_once('_') {
        Some((b, s)) => format!("{}_{{{}}}", b, s),
        None => name.to_string(),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(g: GaussianRational) -> Self {
        Scalar::constant(g)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, o: Scalar) -> Scalar {
        self.add_assign_ref(&o);
        self
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.add_ref(o)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.add_assign_ref(o);
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self + (-o)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.add_ref(&-o.clone())
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.mul_ref(&o)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(name: &str) -> Scalar {
        Scalar::param(name)
    }

    #[test]
    fn modulus_identity() {
        let half = Scalar::from_ratio(1, 2);
        let a = &half + &Scalar::i();
        let b = &half - &Scalar::i();
        assert_eq!(a * b, Scalar::from_ratio(5, 4));
    }

    #[test]
    fn central_charges_add() {
        let ca = Scalar::from_int(6) * t("t_a") + Scalar::from_int(3);
        let cb = Scalar::from_int(6) * t("t_b") + Scalar::from_int(3);
        let expect = Scalar::from_int(6) * t("t_a") + Scalar::from_int(6) * t("t_b") + Scalar::from_int(6);
        assert_eq!(ca + cb, expect);
    }

    #[test]
    fn i_squared() {
        assert_eq!(-Scalar::i() * Scalar::i(), Scalar::one());
    }

    #[test]
    fn eval_partial() {
        let c = Scalar::from_int(6) * t("t_a") + Scalar::from_int(3);
        let zero: HashMap<String, GaussianRational> = [("t_a".to_string(), GaussianRational::zero())].into();
        assert_eq!(c.eval(&zero), Scalar::from_int(3));
        assert_eq!(t("t_a").eval(&HashMap::new()), t("t_a"));
        let half: HashMap<String, GaussianRational> = [("t_a".to_string(), GaussianRational::real(rat(-1, 2)))].into();
        let s = Scalar::from_int(2) * t("t_a") + Scalar::one();
        assert!(s.eval(&half).is_zero());
    }

    #[test]
    fn text_rendering() {
        let s = Scalar::from_ratio(3, 2) * t("t_a") + Scalar::from_ratio(1, 2) * Scalar::i();
        assert_eq!(s.to_text(), "(3/2)*t_a + 1/2*i");
        let c = Scalar::from_int(6) * t("t") + Scalar::from_int(3);
        assert_eq!(c.to_text(), "6*t + 3");
        assert_eq!(Scalar::zero().to_text(), "0");
        assert_eq!((-(t("t") + Scalar::one())).to_text(), "-t - 1");
    }

    #[test]
    fn json_round_trip() {
        let s = Scalar::from_ratio(3, 2) * t("t_a") * t("t_a") - Scalar::i() * t("c");
        assert_eq!(Scalar::from_json(&s.to_json()).unwrap(), s);
    }
}
