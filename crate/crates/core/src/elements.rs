//! Derived generators, normally ordered monomials and elements.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use crate::coeff::{Rational, Scalar};
use crate::formal::{Coeff, VarPoly, D1, D2};

/// ∂^del D^dmask applied to a generator; `base_odd` is the generator's own parity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DerivedGen {
    pub gen: u16,
    pub del: u16,
    pub dmask: u8,
    pub base_odd: bool,
}

impl DerivedGen {
    pub fn plain(gen: u16, odd: bool) -> Self {
        DerivedGen { gen, del: 0, dmask: 0, base_odd: odd }
    }

    pub fn parity(&self) -> u8 {
        (self.base_odd as u8 + (self.dmask & (D1 | D2)).count_ones() as u8) % 2
    }
}

/// Right-nested product :g₁(g₂(…gₙ)):, sorted; empty is the vacuum.
pub type Monomial = Vec<DerivedGen>;

pub fn mono_parity(m: &[DerivedGen]) -> u8 {
    m.iter().map(|g| g.parity()).sum::<u8>() % 2
}

/// Finite linear combination of canonical monomials.
#[derive(Clone, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
    alg: Option<u32>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn vacuum(alg: u32) -> Self {
        Self::from_monomial(alg, Vec::new(), Scalar::one())
    }

    pub fn from_monomial(alg: u32, m: Monomial, s: Scalar) -> Self {
        let mut e = Element { terms: BTreeMap::new(), alg: Some(alg) };
        e.add_term(m, s);
        e
    }

    pub fn with_alg(mut self, alg: Option<u32>) -> Self {
        if self.alg.is_none() {
            self.alg = alg;
        }
        self
    }

    pub fn alg(&self) -> Option<u32> {
        self.alg
    }

    pub fn add_term(&mut self, m: Monomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign_ref(&s);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, s);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The scalar when this is a multiple of the vacuum.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// 0 or 1 when every monomial has that parity; `None` for mixed (or zero).
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| mono_parity(m));
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Element) {
        if self.alg.is_none() {
            self.alg = o.alg;
        }
        for (m, s) in &o.terms {
            self.add_term(m.clone(), s.clone());
        }
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        let mut r = Element { terms: BTreeMap::new(), alg: self.alg };
        if s.is_zero() {
            return r;
        }
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.mul_ref(s));
        }
        r
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let mut r = Element { terms: BTreeMap::new(), alg: self.alg };
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    /// Generator indices occurring anywhere in the element.
    pub fn generators(&self) -> impl Iterator<Item = u16> + '_ {
        self.terms.keys().flat_map(|m| m.iter().map(|g| g.gen))
    }
}

impl Coeff for Element {
    fn zero() -> Self {
        Element::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign(&mut self, other: &Self) {
        Element::add_assign(self, other);
    }
    fn scale(&self, s: &Scalar) -> Self {
        Element::scale(self, s)
    }
    fn scale_rat(&self, r: &Rational) -> Self {
        self.map_scalars(|c| c.scale(r))
    }
}

/// Value of a bracket: polynomial in λ and the χ's with element coefficients.
pub type LambdaElement = VarPoly<Element>;

/// Translation operators acting on elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum TransOp {
    Del,
    D(u8),
}

/// Unnormalized expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum RawExpr {
    Vacuum,
    Gen(String),
    Scaled(Scalar, Box<RawExpr>),
    Sum(Vec<RawExpr>),
    Product(Box<RawExpr>, Box<RawExpr>),
    Apply(TransOp, Box<RawExpr>),
}

impl RawExpr {
    pub fn gen(name: &str) -> RawExpr {
        RawExpr::Gen(name.to_string())
    }

    pub fn prod(a: RawExpr, b: RawExpr) -> RawExpr {
        RawExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn apply(op: TransOp, a: RawExpr) -> RawExpr {
        RawExpr::Apply(op, Box::new(a))
    }

    pub fn scaled(s: Scalar, a: RawExpr) -> RawExpr {
        RawExpr::Scaled(s, Box::new(a))
    }

    /// Right-nested product of a list.
    pub fn nested(items: Vec<RawExpr>) -> RawExpr {
        let mut it = items.into_iter().rev();
        let mut acc = it.next().unwrap_or(RawExpr::Vacuum);
        for x in it {
            acc = RawExpr::prod(x, acc);
        }
        acc
    }
}
