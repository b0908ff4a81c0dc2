//! Formal bracket and translation variables.
//!
//! Even generators λ, γ (auxiliary copy) and ∂ are central. The odd generators are
//! χⁱ, ηⁱ (auxiliary copy) and Dⁱ, related by
//! {χⁱ,χʲ} = −2δλ, {ηⁱ,ηʲ} = −2δγ, {Dⁱ,Dʲ} = 2δ∂, {Dⁱ,χʲ} = 2δλ, {Dⁱ,ηʲ} = 2δγ,
//! with every other pair anticommuting. Words are kept in the order
//! λ, χ¹, χ², γ, η¹, η², ∂, D¹, D².

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::coeff::{rat, rat_int, Rational, Scalar};
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sector {
    N0,
    N1,
    N2,
}

impl Sector {
    pub fn n(self) -> u8 {
        match self {
            Sector::N0 => 0,
            Sector::N1 => 1,
            Sector::N2 => 2,
        }
    }

    pub fn from_n(n: u8) -> Option<Sector> {
        match n {
            0 => Some(Sector::N0),
            1 => Some(Sector::N1),
            2 => Some(Sector::N2),
            _ => None,
        }
    }

    /// Parity of the bracket operation itself.
    pub fn bracket_parity(self) -> u8 {
        if self == Sector::N1 {
            1
        } else {
            0
        }
    }

    /// Mask of all χ variables that exist in this sector.
    pub fn chi_top(self) -> u8 {
        match self {
            Sector::N0 => 0,
            Sector::N1 => CHI1,
            Sector::N2 => CHI1 | CHI2,
        }
    }
}

pub const CHI1: u8 = 1 << 0;
pub const CHI2: u8 = 1 << 1;
pub const ETA1: u8 = 1 << 2;
pub const ETA2: u8 = 1 << 3;
pub const D1: u8 = 1 << 4;
pub const D2: u8 = 1 << 5;
pub const CHI_MASK: u8 = CHI1 | CHI2;
pub const ETA_MASK: u8 = ETA1 | ETA2;
pub const D_MASK: u8 = D1 | D2;

pub fn chi(i: u8) -> u8 {
    CHI1 << (i - 1)
}

pub fn eta(i: u8) -> u8 {
    ETA1 << (i - 1)
}

pub fn dbit(i: u8) -> u8 {
    D1 << (i - 1)
}

/// Canonical word λ^lam χ.. γ^gam η.. ∂^del D.. ; `odd` holds the odd letters as bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct MixedWord {
    pub lam: u32,
    pub gam: u32,
    pub del: u32,
    pub odd: u8,
}

impl MixedWord {
    pub const ONE: MixedWord = MixedWord { lam: 0, gam: 0, del: 0, odd: 0 };

    pub fn lam(k: u32) -> Self {
        MixedWord { lam: k, ..Self::ONE }
    }

    pub fn gam(k: u32) -> Self {
        MixedWord { gam: k, ..Self::ONE }
    }

    pub fn del(k: u32) -> Self {
        MixedWord { del: k, ..Self::ONE }
    }

    pub fn odd(mask: u8) -> Self {
        MixedWord { odd: mask, ..Self::ONE }
    }

    pub fn parity(&self) -> u8 {
        (self.odd.count_ones() % 2) as u8
    }

    pub fn chi_mask(&self) -> u8 {
        self.odd & CHI_MASK
    }

    pub fn d_mask(&self) -> u8 {
        self.odd & D_MASK
    }

    pub fn is_bracket_only(&self) -> bool {
        self.del == 0 && self.odd & D_MASK == 0
    }

    pub fn has_aux(&self) -> bool {
        self.gam > 0 || self.odd & ETA_MASK != 0
    }

    /// Split into the bracket-variable part and the translation part.
    pub fn split(&self) -> (MixedWord, MixedWord) {
        (
            MixedWord { lam: self.lam, gam: self.gam, del: 0, odd: self.odd & !D_MASK },
            MixedWord { lam: 0, gam: 0, del: self.del, odd: self.odd & D_MASK },
        )
    }

    fn letter_text(bit: u8, sector: Sector) -> String {
        let (base, idx) = match bit {
            0 => ("chi", 1),
            1 => ("chi", 2),
            2 => ("eta", 1),
            3 => ("eta", 2),
            4 => ("D", 1),
            _ => ("D", 2),
        };
        if sector == Sector::N2 {
            format!("{base}{idx}")
        } else {
            base.to_string()
        }
    }

    fn letter_latex(bit: u8, sector: Sector) -> String {
        let (base, idx) = match bit {
            0 => ("\\chi", 1),
            1 => ("\\chi", 2),
            2 => ("\\eta", 1),
            3 => ("\\eta", 2),
            4 => ("D", 1),
            _ => ("D", 2),
        };
        if sector == Sector::N2 {
            format!("{base}^{{{idx}}}")
        } else {
            base.to_string()
        }
    }

    fn pieces(&self, sector: Sector, latex: bool) -> Vec<String> {
        let pw = |name: &str, k: u32| -> Option<String> {
            match k {
                0 => None,
                1 => Some(name.to_string()),
                _ if latex => Some(format!("{name}^{{{k}}}")),
                _ => Some(format!("{name}^{k}")),
            }
        };
        let letter = |b: u8| if latex { Self::letter_latex(b, sector) } else { Self::letter_text(b, sector) };
        let (lam, gam, del) = if latex { ("\\lambda", "\\gamma", "\\partial") } else { ("lambda", "gamma", "d") };
        let mut out = Vec::new();
        out.extend(pw(lam, self.lam));
        for b in 0..2 {
            if self.odd & (1 << b) != 0 {
                out.push(letter(b));
            }
        }
        out.extend(pw(gam, self.gam));
        for b in 2..4 {
            if self.odd & (1 << b) != 0 {
                out.push(letter(b));
            }
        }
        out.extend(pw(del, self.del));
        for b in 4..6 {
            if self.odd & (1 << b) != 0 {
                out.push(letter(b));
            }
        }
        out
    }

    pub fn to_text(&self, sector: Sector) -> String {
        let p = self.pieces(sector, false);
        if p.is_empty() {
            "1".into()
        } else {
            p.join("*")
        }
    }

    pub fn to_latex(&self, sector: Sector) -> String {
        self.pieces(sector, true).join("")
    }

    pub fn to_json(&self) -> Value {
        let bits = |lo: u8| -> Vec<u8> { (0..2).filter(|k| self.odd & (1 << (lo + k)) != 0).map(|k| k + 1).collect() };
        json!({ "lambda": self.lam, "chi": bits(0), "gamma": self.gam, "eta": bits(2), "del": self.del, "D": bits(4) })
    }

    pub fn from_json(v: &Value) -> Result<MixedWord, Error> {
        let num = |k: &str| v.get(k).and_then(Value::as_u64).unwrap_or(0) as u32;
        let mut odd = 0u8;
        for (key, lo) in [("chi", 0u8), ("eta", 2), ("D", 4)] {
            if let Some(a) = v.get(key).and_then(Value::as_array) {
                for i in a {
                    let i = i.as_u64().filter(|i| (1..=2).contains(i)).ok_or_else(|| Error::Json(format!("bad {key} index")))?;
                    odd |= 1 << (lo + i as u8 - 1);
                }
            }
        }
        Ok(MixedWord { lam: num("lambda"), gam: num("gamma"), del: num("del"), odd })
    }
}

/// Central increments [λ, γ, ∂] paired with an integer coefficient and an odd mask.
type OddTerm = (i64, [u32; 3], u8);

fn square(bit: u8) -> (i64, usize) {
    match bit {
        0 | 1 => (-1, 0),
        2 | 3 => (-1, 1),
        _ => (1, 2),
    }
}

/// {x_a, x_b} for a > b, as coefficient and central letter.
fn anticommutator(a: u8, b: u8) -> Option<(i64, usize)> {
    match (a, b) {
        (4, 0) | (5, 1) => Some((2, 0)),
        (4, 2) | (5, 3) => Some((2, 1)),
        _ => None,
    }
}

fn mul_letter(m: u8, g: u8) -> Vec<OddTerm> {
    if m == 0 {
        return vec![(1, [0; 3], 1 << g)];
    }
    let top = 7 - m.leading_zeros() as u8;
    if top < g {
        return vec![(1, [0; 3], m | (1 << g))];
    }
    let rest = m & !(1 << top);
    if top == g {
        let (c, v) = square(g);
        let mut cen = [0; 3];
        cen[v] = 1;
        return vec![(c, cen, rest)];
    }
    let mut out: Vec<OddTerm> = mul_letter(rest, g).into_iter().map(|(c, cen, mm)| (-c, cen, mm | (1 << top))).collect();
    if let Some((c, v)) = anticommutator(top, g) {
        let mut cen = [0; 3];
        cen[v] = 1;
        out.push((c, cen, rest));
    }
    out
}

fn odd_mul_uncached(a: u8, b: u8) -> Vec<OddTerm> {
    let mut terms: Vec<OddTerm> = vec![(1, [0; 3], a)];
    for g in 0..6u8 {
        if b & (1 << g) == 0 {
            continue;
        }
        let mut next: BTreeMap<([u32; 3], u8), i64> = BTreeMap::new();
        for (c, cen, m) in &terms {
            for (c2, cen2, m2) in mul_letter(*m, g) {
                let key = ([cen[0] + cen2[0], cen[1] + cen2[1], cen[2] + cen2[2]], m2);
                *next.entry(key).or_insert(0) += c * c2;
            }
        }
        terms = next.into_iter().filter(|(_, c)| *c != 0).map(|((cen, m), c)| (c, cen, m)).collect();
    }
    terms
}

fn odd_table() -> &'static Vec<Vec<OddTerm>> {
    static TABLE: OnceLock<Vec<Vec<OddTerm>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(64 * 64);
        for a in 0..64u8 {
            for b in 0..64u8 {
                t.push(odd_mul_uncached(a, b));
            }
        }
        t
    })
}

/// Product of two canonical words, normalized.
pub fn word_mul(w1: &MixedWord, w2: &MixedWord) -> Vec<(i64, MixedWord)> {
    let lam = w1.lam + w2.lam;
    let gam = w1.gam + w2.gam;
    let del = w1.del + w2.del;
    if w1.odd == 0 || w2.odd == 0 || (7 - w1.odd.leading_zeros()) < w2.odd.trailing_zeros() {
        return vec![(1, MixedWord { lam, gam, del, odd: w1.odd | w2.odd })];
    }
    odd_table()[(w1.odd as usize) * 64 + w2.odd as usize]
        .iter()
        .map(|(c, cen, m)| (*c, MixedWord { lam: lam + cen[0], gam: gam + cen[1], del: del + cen[2], odd: *m }))
        .collect()
}

/// Coefficient carriers for [`VarPoly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn scale(&self, s: &Scalar) -> Self;
    fn scale_rat(&self, r: &Rational) -> Self;
    fn neg(&self) -> Self {
        self.scale_rat(&rat_int(-1))
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_ref(other);
    }
    fn scale(&self, s: &Scalar) -> Self {
        self.mul_ref(s)
    }
    fn scale_rat(&self, r: &Rational) -> Self {
        Scalar::scale(self, r)
    }
}

/// Polynomial in the formal variables with coefficients in `C`.
#[derive(Clone, PartialEq, Debug)]
pub struct VarPoly<C: Coeff> {
    terms: BTreeMap<MixedWord, C>,
}

impl<C: Coeff> Default for VarPoly<C> {
    fn default() -> Self {
        VarPoly { terms: BTreeMap::new() }
    }
}

/// Operator polynomials: scalar coefficients.
pub type Op = VarPoly<Scalar>;

impl<C: Coeff> VarPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(w: MixedWord, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: MixedWord, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                v.add_assign(&c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn iter(&self) -> std::collections::btree_map::Iter<'_, MixedWord, C> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &MixedWord) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (w, c) in &o.terms {
            self.add_term(*w, c.clone());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn neg(&self) -> Self {
        VarPoly { terms: self.terms.iter().map(|(w, c)| (*w, c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            r.add_term(*w, c.scale(s));
        }
        r
    }

    pub fn scale_rat(&self, q: &Rational) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            r.add_term(*w, c.scale_rat(q));
        }
        r
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> VarPoly<D> {
        let mut r = VarPoly::zero();
        for (w, c) in &self.terms {
            r.add_term(*w, f(c));
        }
        r
    }

    /// Parity of every term, if they agree (words only; coefficient parity is the caller's).
    pub fn word_parities(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self.terms.keys().map(|w| w.parity()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `op · self`, multiplying words; no translation operator is applied to coefficients.
    pub fn left_mul(&self, op: &Op) -> Self {
        let mut r = Self::zero();
        for (wo, so) in &op.terms {
            for (w, c) in &self.terms {
                let cs = c.scale(so);
                for (k, w2) in word_mul(wo, w) {
                    r.add_term(w2, cs.scale_rat(&rat_int(k)));
                }
            }
        }
        r
    }

    /// `self · op`.
    pub fn right_mul(&self, op: &Op) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            for (wo, so) in &op.terms {
                let cs = c.scale(so);
                for (k, w2) in word_mul(w, wo) {
                    r.add_term(w2, cs.scale_rat(&rat_int(k)));
                }
            }
        }
        r
    }

    pub fn left_mul_word(&self, w: &MixedWord) -> Self {
        self.left_mul(&Op::word(*w))
    }

    /// Apply an algebra endomorphism given by images of λ and of χ¹, χ²;
    /// the remaining letters of each word are kept as they are.
    fn substitute_bracket_vars(&self, lam_img: &Op, chi_img: [&Op; 2]) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            let mut img = Op::one();
            for _ in 0..w.lam {
                img = img.right_mul(lam_img);
            }
            for (k, bit) in [CHI1, CHI2].iter().enumerate() {
                if w.odd & bit != 0 {
                    img = img.right_mul(chi_img[k]);
                }
            }
            let rest = MixedWord { lam: 0, odd: w.odd & !CHI_MASK, ..*w };
            img = img.right_mul(&Op::word(rest));
            for (wi, si) in img.iter() {
                r.add_term(*wi, c.scale(si));
            }
        }
        r
    }

    /// λ → −∂−λ, χⁱ → −Dⁱ−χⁱ.
    pub fn substitute_skew(&self) -> Self {
        let m1 = Scalar::from_int(-1);
        let lam = Op::from_terms([(MixedWord::del(1), m1.clone()), (MixedWord::lam(1), m1.clone())]);
        let c1 = Op::from_terms([(MixedWord::odd(D1), m1.clone()), (MixedWord::odd(CHI1), m1.clone())]);
        let c2 = Op::from_terms([(MixedWord::odd(D2), m1.clone()), (MixedWord::odd(CHI2), m1)]);
        self.substitute_bracket_vars(&lam, [&c1, &c2])
    }

    /// λ → λ+γ, χⁱ → χⁱ+ηⁱ.
    pub fn substitute_shift(&self) -> Self {
        let one = Scalar::one();
        let lam = Op::from_terms([(MixedWord::lam(1), one.clone()), (MixedWord::gam(1), one.clone())]);
        let c1 = Op::from_terms([(MixedWord::odd(CHI1), one.clone()), (MixedWord::odd(ETA1), one.clone())]);
        let c2 = Op::from_terms([(MixedWord::odd(CHI2), one.clone()), (MixedWord::odd(ETA2), one)]);
        self.substitute_bracket_vars(&lam, [&c1, &c2])
    }

    /// Rename λ → γ and χⁱ → ηⁱ in a polynomial free of auxiliary and translation letters.
    pub fn to_aux(&self) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            debug_assert!(!w.has_aux() && w.d_mask() == 0 && w.del == 0);
            let odd = (w.odd & CHI_MASK) << 2;
            r.add_term(MixedWord { lam: 0, gam: w.lam, del: 0, odd }, c.clone());
        }
        r
    }

    /// Left Berezin derivative with respect to one odd letter.
    pub fn berezin(&self, bit: u8) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            if w.odd & bit == 0 {
                continue;
            }
            let before = (w.odd & (bit - 1)).count_ones();
            let nw = MixedWord { odd: w.odd & !bit, ..*w };
            let c = if before % 2 == 1 { c.neg() } else { c.clone() };
            r.add_term(nw, c);
        }
        r
    }

    /// ∫ dγ between two central bounds; odd letters are untouched.
    pub fn gamma_integral(&self, lower: &Op, upper: &Op) -> Result<Self, Error> {
        for b in [lower, upper] {
            if b.iter().any(|(w, _)| w.odd != 0 || w.gam != 0) {
                return Err(Error::Eval("integration bounds must be built from λ and ∂".into()));
            }
        }
        let mut r = Self::zero();
        let mut lp = vec![Op::one()];
        let mut up = vec![Op::one()];
        for (w, c) in &self.terms {
            let m = w.gam as usize + 1;
            while lp.len() <= m {
                let next = lp.last().unwrap().right_mul(lower);
                lp.push(next);
                let next = up.last().unwrap().right_mul(upper);
                up.push(next);
            }
            let diff = up[m].sub(&lp[m]).scale_rat(&rat(1, m as i64));
            let rest = MixedWord { gam: 0, ..*w };
            let rest_poly = VarPoly::term(rest, c.clone());
            r.add_assign(&rest_poly.right_mul(&diff));
        }
        Ok(r)
    }

    /// The Wick-formula integral ∫₀^Λ dΓ for a sector: ∫₀^λ dγ, then ∂_η (sector 1)
    /// or ∂_{η¹}∂_{η²} (sector 2).
    pub fn full_nested_integral(&self, sector: Sector) -> Self {
        let p = self.gamma_integral(&Op::zero(), &Op::word(MixedWord::lam(1))).expect("central bounds");
        match sector {
            Sector::N0 => p,
            Sector::N1 => p.berezin(ETA1),
            Sector::N2 => p.berezin(ETA2).berezin(ETA1),
        }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (MixedWord, C)>) -> Self {
        let mut r = Self::zero();
        for (w, c) in it {
            r.add_term(w, c);
        }
        r
    }
}

impl Op {
    pub fn one() -> Op {
        Op::word(MixedWord::ONE)
    }

    pub fn word(w: MixedWord) -> Op {
        Op::term(w, Scalar::one())
    }

    pub fn constant(s: Scalar) -> Op {
        Op::term(MixedWord::ONE, s)
    }

    pub fn mul(&self, o: &Op) -> Op {
        self.right_mul(o)
    }

    pub fn to_text(&self, sector: Sector) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, s) in self.iter().rev() {
            let coef = s.to_text();
            let simple = s.terms().count() == 1 && !coef.contains(" + ") && !coef[1..].contains(" - ");
            let piece = if *w == MixedWord::ONE {
                coef
            } else if s.is_one() {
                w.to_text(sector)
            } else if s == &Scalar::from_int(-1) {
                format!("-{}", w.to_text(sector))
            } else if simple {
                format!("{}*{}", coef, w.to_text(sector))
            } else {
                format!("({})*{}", coef, w.to_text(sector))
            };
            parts.push(piece);
        }
        join_signed(&parts)
    }
}

/// Join rendered terms with `+`, folding a leading minus into ` - `.
pub fn join_signed(parts: &[String]) -> String {
    let mut s = String::new();
    for (k, p) in parts.iter().enumerate() {
        if k == 0 {
            s.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(p);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(odd: u8) -> MixedWord {
        MixedWord::odd(odd)
    }

    fn op(terms: &[(i64, MixedWord)]) -> Op {
        Op::from_terms(terms.iter().map(|(c, w)| (*w, Scalar::from_int(*c))))
    }

    fn mulw(a: MixedWord, b: MixedWord) -> Op {
        Op::from_terms(word_mul(&a, &b).into_iter().map(|(c, w)| (w, Scalar::from_int(c))))
    }

    #[test]
    fn chi_squared() {
        assert_eq!(mulw(w(CHI1), w(CHI1)), op(&[(-1, MixedWord::lam(1))]));
    }

    #[test]
    fn d_past_chi() {
        let expect = op(&[(-1, w(CHI1 | D1)), (2, MixedWord::lam(1))]);
        assert_eq!(mulw(w(D1), w(CHI1)), expect);
    }

    #[test]
    fn chi1_chi2_chi1() {
        let p = Op::word(w(CHI1)).mul(&Op::word(w(CHI2))).mul(&Op::word(w(CHI1)));
        assert_eq!(p, op(&[(1, MixedWord { lam: 1, odd: CHI2, ..MixedWord::ONE })]));
    }

    #[test]
    fn berezin_examples() {
        // −χλ²η/2 → +χλ²/2
        let p = Op::term(MixedWord { lam: 2, odd: CHI1 | ETA1, ..MixedWord::ONE }, Scalar::from_ratio(-1, 2));
        let expect = Op::term(MixedWord { lam: 2, odd: CHI1, ..MixedWord::ONE }, Scalar::from_ratio(1, 2));
        assert_eq!(p.berezin(ETA1), expect);
        assert!(Op::word(MixedWord::gam(2)).berezin(ETA1).is_zero());
        let p = Op::word(MixedWord { gam: 1, odd: ETA1, ..MixedWord::ONE });
        assert_eq!(p.berezin(ETA1), Op::word(MixedWord::gam(1)));
    }

    #[test]
    fn wick_integral_of_lemma_example() {
        // −γ² − χγη
        let p = op(&[(-1, MixedWord::gam(2)), (-1, MixedWord { gam: 1, odd: CHI1 | ETA1, ..MixedWord::ONE })]);
        let lam = Op::word(MixedWord::lam(1));
        let integral = p.gamma_integral(&Op::zero(), &lam).unwrap();
        let expect = Op::from_terms([
            (MixedWord::lam(3), Scalar::from_ratio(-1, 3)),
            (MixedWord { lam: 2, odd: CHI1 | ETA1, ..MixedWord::ONE }, Scalar::from_ratio(-1, 2)),
        ]);
        assert_eq!(integral, expect);
        let full = p.full_nested_integral(Sector::N1);
        assert_eq!(full, Op::term(MixedWord { lam: 2, odd: CHI1, ..MixedWord::ONE }, Scalar::from_ratio(1, 2)));
        assert!(Op::constant(Scalar::from_int(3)).full_nested_integral(Sector::N1).is_zero());
        let ge = Op::word(MixedWord { gam: 1, odd: ETA1, ..MixedWord::ONE });
        assert_eq!(ge.full_nested_integral(Sector::N1), Op::term(MixedWord::lam(2), Scalar::from_ratio(1, 2)));
    }

    #[test]
    fn operator_bound() {
        let p = Op::word(MixedWord::gam(1));
        let r = p.gamma_integral(&Op::zero(), &Op::word(MixedWord::del(1))).unwrap();
        assert_eq!(r, Op::term(MixedWord::del(2), Scalar::from_ratio(1, 2)));
        assert!(p.gamma_integral(&Op::zero(), &Op::word(w(D1))).is_err());
    }

    #[test]
    fn skew_examples() {
        let lam = Op::word(MixedWord::lam(1));
        assert_eq!(lam.substitute_skew(), op(&[(-1, MixedWord::del(1)), (-1, MixedWord::lam(1))]));
        let chi_sq = Op::word(w(CHI1)).mul(&Op::word(w(CHI1)));
        let direct = Op::word(w(CHI1)).substitute_skew().mul(&Op::word(w(CHI1)).substitute_skew());
        assert_eq!(chi_sq.substitute_skew(), direct);
        assert_eq!(direct, op(&[(1, MixedWord::del(1)), (1, MixedWord::lam(1))]));
        assert!(Op::zero().substitute_skew().is_zero());
    }

    #[test]
    fn relations_hold() {
        for i in 1..=2u8 {
            let c = Op::word(w(chi(i)));
            let d = Op::word(w(dbit(i)));
            let lam = Op::word(MixedWord::lam(1));
            let del = Op::word(MixedWord::del(1));
            assert!(c.mul(&c).add(&lam).is_zero());
            assert!(d.mul(&c).add(&c.mul(&d)).sub(&lam.scale(&Scalar::from_int(2))).is_zero());
            assert!(d.mul(&d).sub(&del).is_zero());
        }
    }
}
