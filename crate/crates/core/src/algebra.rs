//! Algebra definitions, derivations and the normally ordered product.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::coeff::{rat, Scalar};
use crate::elements::{mono_parity, DerivedGen, Element, LambdaElement, Monomial, RawExpr, TransOp};
use crate::error::Error;
use crate::formal::{dbit, word_mul, MixedWord, Sector, D1, D2};

static NEXT_ID: AtomicU32 = AtomicU32::new(1);

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GenInfo {
    pub name: String,
    pub latex: String,
    pub odd: bool,
}

/// What kind of free-field system an algebra is, when it is one of the catalog systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    ChargedFermion,
    BcBetaGamma,
    SusyChargedFermion,
    N2BcBetaGamma,
    Custom,
}

/// One basis element a ∈ A and the generators attached to it.
///
/// For the charged fermion systems `gens` is `[φ_a, φ^ā]`; for bc-βγ copies it is
/// `[γ, c, b, β]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisEntry {
    pub name: String,
    pub odd: bool,
    pub gens: Vec<u16>,
}

/// `D^mask g ↦ rhs`; a derived generator D^extra D^mask ∂^k g with every bit of
/// `extra` below the bits of `mask` is rewritten to ∂^k D^extra rhs.
#[derive(Clone, Debug)]
pub struct Rule {
    pub gen: u16,
    pub mask: u8,
    pub rhs: Element,
}

pub struct Algebra {
    pub id: u32,
    pub name: String,
    pub sector: Sector,
    pub kind: Kind,
    pub gens: Vec<GenInfo>,
    pub basis: Vec<BasisEntry>,
    pub(crate) table: HashMap<(u16, u16), LambdaElement>,
    pub(crate) rules: Vec<Rule>,
    pub(crate) bracket_cache: Mutex<HashMap<(Monomial, Monomial), Arc<LambdaElement>>>,
    np_cache: Mutex<HashMap<(DerivedGen, Monomial), Arc<Element>>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra").field("name", &self.name).field("sector", &self.sector).finish()
    }
}

pub struct AlgebraBuilder {
    alg: Algebra,
}

impl AlgebraBuilder {
    pub fn new(name: &str, sector: Sector, kind: Kind) -> Self {
        AlgebraBuilder {
            alg: Algebra {
                id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
                name: name.to_string(),
                sector,
                kind,
                gens: Vec::new(),
                basis: Vec::new(),
                table: HashMap::new(),
                rules: Vec::new(),
                bracket_cache: Mutex::new(HashMap::new()),
                np_cache: Mutex::new(HashMap::new()),
            },
        }
    }

    pub fn id(&self) -> u32 {
        self.alg.id
    }

    pub fn sector(&self) -> Sector {
        self.alg.sector
    }

    pub fn generator(&mut self, name: &str, latex: &str, odd: bool) -> u16 {
        self.alg.gens.push(GenInfo { name: name.into(), latex: latex.into(), odd });
        (self.alg.gens.len() - 1) as u16
    }

    pub fn lookup(&self, name: &str) -> Option<u16> {
        self.alg.gens.iter().position(|g| g.name == name).map(|i| i as u16)
    }

    pub fn basis(&mut self, name: &str, odd: bool, gens: Vec<u16>) {
        self.alg.basis.push(BasisEntry { name: name.into(), odd, gens });
    }

    /// Element for a plain generator, usable while the table is being filled.
    pub fn gen_element(&self, g: u16) -> Element {
        self.alg.gen_element(g)
    }

    pub fn vacuum(&self) -> Element {
        Element::vacuum(self.alg.id)
    }

    /// ∂^del D^dmask g as an element, without rule rewriting.
    pub fn derived_element(&self, g: u16, del: u16, dmask: u8) -> Element {
        Element::from_monomial(self.alg.id, vec![self.alg.derived(g, del, dmask)], Scalar::one())
    }

    /// λ-polynomial times the vacuum, from (word, scalar) pairs.
    pub fn constant(&self, terms: &[(MixedWord, Scalar)]) -> LambdaElement {
        LambdaElement::from_terms(terms.iter().map(|(w, s)| (*w, self.vacuum().scale(s))))
    }

    pub fn bracket(&mut self, a: u16, b: u16, value: LambdaElement) {
        self.alg.table.insert((a, b), value);
    }

    pub fn rule(&mut self, gen: u16, mask: u8, rhs: Element) {
        self.alg.rules.push(Rule { gen, mask, rhs });
    }

    /// Finish: complete missing reversed entries by skew-symmetry and run the axiom checks.
    pub fn build(mut self) -> Result<Arc<Algebra>, Error> {
        let alg = &mut self.alg;
        let keys: Vec<(u16, u16)> = alg.table.keys().copied().collect();
        for (a, b) in keys {
            if !alg.table.contains_key(&(b, a)) {
                let pa = alg.gens[a as usize].odd as u8;
                let pb = alg.gens[b as usize].odd as u8;
                let v = alg.table[&(a, b)].clone();
                let flipped = alg.skew_image(&v, pa, pb);
                alg.table.insert((b, a), flipped);
            }
        }
        alg.table.retain(|_, v| !v.is_zero());
        let alg = Arc::new(self.alg);
        alg.check_axioms()?;
        Ok(alg)
    }
}

impl Algebra {
    pub fn gen_element(&self, g: u16) -> Element {
        let dg = DerivedGen::plain(g, self.gens[g as usize].odd);
        Element::from_monomial(self.id, vec![dg], Scalar::one())
    }

    pub fn vacuum(&self) -> Element {
        Element::vacuum(self.id)
    }

    pub fn lookup(&self, name: &str) -> Option<u16> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as u16)
    }

    pub fn gen(&self, name: &str) -> Result<Element, Error> {
        self.lookup(name).map(|g| self.gen_element(g)).ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.gens.len() as u16).map(|g| self.gen_element(g)).collect()
    }

    pub fn derived(&self, g: u16, del: u16, dmask: u8) -> DerivedGen {
        DerivedGen { gen: g, del, dmask, base_odd: self.gens[g as usize].odd }
    }

    /// Refuse elements that were built in another algebra.
    pub fn check_owner(&self, e: &Element) -> Result<(), Error> {
        match e.alg() {
            Some(id) if id != self.id => Err(Error::CrossAlgebra),
            _ => {
                if e.generators().any(|g| g as usize >= self.gens.len()) {
                    Err(Error::CrossAlgebra)
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn valid_op(&self, op: TransOp) -> Result<(), Error> {
        match op {
            TransOp::Del => Ok(()),
            TransOp::D(i) if i >= 1 && i <= self.sector.n() => Ok(()),
            TransOp::D(i) => Err(Error::BadOperator(if self.sector == Sector::N1 || i == 0 {
                "D".into()
            } else {
                format!("D{i}")
            })),
        }
    }

    fn single(&self, dg: DerivedGen) -> Element {
        Element::from_monomial(self.id, vec![dg], Scalar::one())
    }

    /// Apply the quotient rules to one derived generator.
    pub(crate) fn rewrite(&self, dg: DerivedGen) -> Element {
        for r in &self.rules {
            if r.gen != dg.gen || dg.dmask & r.mask != r.mask {
                continue;
            }
            let extra = dg.dmask & !r.mask;
            if extra != 0 && (7 - extra.leading_zeros()) >= r.mask.trailing_zeros() {
                continue;
            }
            let w = MixedWord { del: dg.del as u32, odd: extra, ..MixedWord::ONE };
            return self.apply_word(&r.rhs, &w);
        }
        self.single(dg)
    }

    /// Translation word (∂ and D letters only) applied to a derived generator.
    fn apply_word_dg(&self, w: &MixedWord, dg: DerivedGen) -> Element {
        let own = MixedWord { del: dg.del as u32, odd: dg.dmask, ..MixedWord::ONE };
        let mut out = Element::zero().with_alg(Some(self.id));
        for (k, nw) in word_mul(w, &own) {
            let ndg = DerivedGen { del: nw.del as u16, dmask: nw.odd, ..dg };
            out.add_assign(&self.rewrite(ndg).scale(&Scalar::from_int(k)));
        }
        out
    }

    /// Apply a translation word ∂^m D¹^e₁ D²^e₂ (as the operator ∂^m∘D¹∘D²) to an element.
    pub fn apply_word(&self, e: &Element, w: &MixedWord) -> Element {
        debug_assert!(w.is_bracket_only() || (w.lam == 0 && w.gam == 0 && w.odd & !(D1 | D2) == 0));
        let mut cur = e.clone();
        for bit in [D2, D1] {
            if w.odd & bit != 0 {
                cur = self.apply_op_unchecked(&cur, TransOp::D(if bit == D1 { 1 } else { 2 }));
            }
        }
        for _ in 0..w.del {
            cur = self.apply_op_unchecked(&cur, TransOp::Del);
        }
        cur
    }

    pub fn apply_translation(&self, e: &Element, op: TransOp) -> Result<Element, Error> {
        self.valid_op(op)?;
        self.check_owner(e)?;
        Ok(self.apply_op_unchecked(e, op))
    }

    pub(crate) fn apply_op_unchecked(&self, e: &Element, op: TransOp) -> Element {
        let w = match op {
            TransOp::Del => MixedWord::del(1),
            TransOp::D(i) => MixedWord::odd(dbit(i)),
        };
        let odd = matches!(op, TransOp::D(_));
        let mut out = Element::zero().with_alg(Some(self.id));
        for (m, s) in e.terms() {
            let mut prefix_parity = 0u8;
            for k in 0..m.len() {
                let ek = self.apply_word_dg(&w, m[k]);
                if !ek.is_zero() {
                    let tail = Element::from_monomial(self.id, m[k + 1..].to_vec(), Scalar::one());
                    let mut x = self.np(&ek, &tail);
                    for j in (0..k).rev() {
                        x = self.np_gen_elem(m[j], &x);
                    }
                    let sign = if odd && prefix_parity == 1 { -1 } else { 1 };
                    out.add_assign(&x.scale(&s.scale(&rat(sign, 1))));
                }
                prefix_parity ^= m[k].parity();
            }
        }
        out
    }

    /// :ab: in canonical form.
    pub fn normal_product(&self, a: &Element, b: &Element) -> Result<Element, Error> {
        self.check_owner(a)?;
        self.check_owner(b)?;
        if let (Some(x), Some(y)) = (a.alg(), b.alg()) {
            if x != y {
                return Err(Error::CrossAlgebra);
            }
        }
        Ok(self.np(a, b))
    }

    pub(crate) fn np(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero().with_alg(Some(self.id));
        for (m, s) in a.terms() {
            out.add_assign(&self.np_mono_elem(m, b).scale(s));
        }
        out
    }

    fn np_mono_elem(&self, a: &[DerivedGen], b: &Element) -> Element {
        match a.len() {
            0 => b.clone().with_alg(Some(self.id)),
            1 => self.np_gen_elem(a[0], b),
            _ => {
                // :(a₁A')B: = :a₁(A'B): + (∫₀^∂ dλ a₁)[A' λ B] + (−1)^{a₁A'}(∫₀^∂ dλ A')[a₁ λ B]
                let a1 = a[0];
                let rest = &a[1..];
                let rest_el = Element::from_monomial(self.id, rest.to_vec(), Scalar::one());
                let a1_el = self.single(a1);
                let mut out = self.np_gen_elem(a1, &self.np_mono_elem(rest, b));
                out.add_assign(&self.integral_product(&a1_el, &self.vbracket_elem(rest, b)));
                let corr = self.integral_product(&rest_el, &self.vbracket_elem(&[a1], b));
                if a1.parity() * mono_parity(rest) == 1 {
                    out = out.sub(&corr);
                } else {
                    out.add_assign(&corr);
                }
                out
            }
        }
    }

    /// Σ_j :(∂^{j+1}x/(j+1)) c_j: for a λ-polynomial Σ λ^j c_j.
    fn integral_product(&self, x: &Element, poly: &[(u32, Element)]) -> Element {
        let mut out = Element::zero().with_alg(Some(self.id));
        for (j, c) in poly {
            let mut dx = x.clone();
            for _ in 0..=*j {
                dx = self.apply_op_unchecked(&dx, TransOp::Del);
            }
            let dx = dx.scale(&Scalar::from_ratio(1, *j as i64 + 1));
            out.add_assign(&self.np(&dx, c));
        }
        out
    }

    pub(crate) fn np_gen_elem(&self, g: DerivedGen, b: &Element) -> Element {
        let mut out = Element::zero().with_alg(Some(self.id));
        for (m, s) in b.terms() {
            out.add_assign(&self.np_gen_mono(g, m).scale(s));
        }
        out
    }

    fn np_gen_mono(&self, g: DerivedGen, m: &[DerivedGen]) -> Element {
        if m.is_empty() || g < m[0] || (g == m[0] && g.parity() == 0) {
            let mut v = Vec::with_capacity(m.len() + 1);
            v.push(g);
            v.extend_from_slice(m);
            return Element::from_monomial(self.id, v, Scalar::one());
        }
        let key = (g, m.to_vec());
        if let Some(hit) = self.np_cache.lock().unwrap().get(&key) {
            return (**hit).clone();
        }
        let m1 = m[0];
        let rest = &m[1..];
        let rest_el = Element::from_monomial(self.id, rest.to_vec(), Scalar::one());
        let result = if g == m1 {
            // odd g: 2:g(gM'): = :(∫_{-∂}^0 [g λ g]) M':
            let qc = self.qc_integral(g, g);
            self.np(&qc, &rest_el).scale(&Scalar::from_ratio(1, 2))
        } else {
            // :g(m₁M'): = (−1)^{g m₁} :m₁(gM'): + :(∫_{-∂}^0 [g λ m₁]) M':
            let inner = self.np_gen_mono(g, rest);
            let mut swapped = self.np_gen_elem(m1, &inner);
            if g.parity() * m1.parity() == 1 {
                swapped = swapped.scale(&Scalar::from_int(-1));
            }
            let qc = self.qc_integral(g, m1);
            swapped.add(&self.np(&qc, &rest_el))
        };
        self.np_cache.lock().unwrap().insert(key, Arc::new(result.clone()));
        result
    }

    /// ∫_{-∂}^0 [a λ b] dλ = Σ_j (−1)^j ∂^{j+1} c_j / (j+1).
    fn qc_integral(&self, a: DerivedGen, b: DerivedGen) -> Element {
        let poly = self.vbracket_mono(&[a], &[b]);
        let mut out = Element::zero().with_alg(Some(self.id));
        for (j, c) in poly {
            let mut dc = c;
            for _ in 0..=j {
                dc = self.apply_op_unchecked(&dc, TransOp::Del);
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out.add_assign(&dc.scale(&Scalar::from_ratio(sign, j as i64 + 1)));
        }
        out
    }

    fn vbracket_elem(&self, a: &[DerivedGen], b: &Element) -> Vec<(u32, Element)> {
        let mut acc: std::collections::BTreeMap<u32, Element> = Default::default();
        for (m, s) in b.terms() {
            for (j, c) in self.vbracket_mono(a, m) {
                acc.entry(j).or_default().add_assign(&c.scale(s));
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Underlying non-supersymmetric bracket as Σ λ^j c_j: the χ-coefficient in
    /// sector 1 and minus the χ¹χ²-coefficient in sector 2.
    pub(crate) fn vbracket_mono(&self, a: &[DerivedGen], b: &[DerivedGen]) -> Vec<(u32, Element)> {
        let full = self.bracket_mono(a, b);
        let top = self.sector.chi_top();
        let mut out = Vec::new();
        for (w, c) in full.iter() {
            if w.odd == top && w.gam == 0 && w.del == 0 {
                let c = if self.sector == Sector::N2 { c.scale(&Scalar::from_int(-1)) } else { c.clone() };
                out.push((w.lam, c));
            }
        }
        out
    }

    /// Normalize an expression tree.
    pub fn normalize(&self, e: &RawExpr) -> Result<Element, Error> {
        Ok(match e {
            RawExpr::Vacuum => self.vacuum(),
            RawExpr::Gen(n) => self.gen(n)?,
            RawExpr::Scaled(s, x) => self.normalize(x)?.scale(s),
            RawExpr::Sum(xs) => {
                let mut out = Element::zero().with_alg(Some(self.id));
                for x in xs {
                    out.add_assign(&self.normalize(x)?);
                }
                out
            }
            RawExpr::Product(a, b) => self.np(&self.normalize(a)?, &self.normalize(b)?),
            RawExpr::Apply(op, x) => {
                self.valid_op(*op)?;
                self.apply_op_unchecked(&self.normalize(x)?, *op)
            }
        })
    }

    /// Skew-symmetry image of a bracket value [a Λ b] as the value of [b Λ a].
    pub(crate) fn skew_image(&self, v: &LambdaElement, pa: u8, pb: u8) -> LambdaElement {
        let mut sign = if pa * pb == 1 { -1 } else { 1 };
        if self.sector != Sector::N1 {
            sign = -sign;
        }
        let sub = v.substitute_skew();
        self.realize(&sub).scale(&Scalar::from_int(sign))
    }

    /// Move translation letters of each word onto the coefficient.
    pub(crate) fn realize(&self, p: &LambdaElement) -> LambdaElement {
        let mut out = LambdaElement::zero();
        for (w, c) in p.iter() {
            let (bw, tw) = w.split();
            if tw == MixedWord::ONE {
                out.add_term(bw, c.clone());
            } else {
                out.add_term(bw, self.apply_word(c, &tw));
            }
        }
        out
    }

    /// Apply an operator polynomial (bracket and translation letters) to a bracket value.
    pub(crate) fn apply_op_poly(&self, op: &crate::formal::Op, x: &LambdaElement) -> LambdaElement {
        self.realize(&x.left_mul(op))
    }

    pub fn clear_caches(&self) {
        self.bracket_cache.lock().unwrap().clear();
        self.np_cache.lock().unwrap().clear();
    }

    pub fn mono_element(&self, m: Monomial) -> Element {
        Element::from_monomial(self.id, m, Scalar::one())
    }
}

impl Algebra {
    /// Construction-time checks on the generators: parity of table entries,
    /// skew-symmetry, Jacobi and compatibility of the quotient rules.
    pub fn check_axioms(&self) -> Result<(), Error> {
        let n = self.gens.len() as u16;
        let bp = self.sector.bracket_parity();
        for (&(a, b), v) in &self.table {
            let want = (self.gens[a as usize].odd as u8 + self.gens[b as usize].odd as u8 + bp) % 2;
            for (w, c) in v.iter() {
                for (m, _) in c.terms() {
                    if (w.parity() + mono_parity(m)) % 2 != want {
                        return Err(Error::Axiom(format!(
                            "[{} Λ {}] has a term of the wrong parity",
                            self.gens[a as usize].name, self.gens[b as usize].name
                        )));
                    }
                }
            }
        }
        let gens = self.generators();
        for a in 0..n {
            for b in a..n {
                let r = self.skew_residual(&gens[a as usize], &gens[b as usize])?;
                if !r.is_zero() {
                    return Err(Error::Axiom(format!(
                        "skew-symmetry fails for {} and {}",
                        self.gens[a as usize].name, self.gens[b as usize].name
                    )));
                }
            }
        }
        if n <= 16 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let r = self.jacobi_residual(&gens[a as usize], &gens[b as usize], &gens[c as usize])?;
                        if !r.is_zero() {
                            return Err(Error::Axiom(format!(
                                "Jacobi identity fails for {}, {}, {}",
                                self.gens[a as usize].name, self.gens[b as usize].name, self.gens[c as usize].name
                            )));
                        }
                    }
                }
            }
        }
        for r in &self.rules {
            let lhs = self.derived(r.gen, 0, r.mask);
            for h in 0..n {
                let hp = self.derived(h, 0, 0);
                let raw = self.bracket_gens(hp, lhs);
                let via = self.bracket_el(&gens[h as usize], &r.rhs);
                if raw != via {
                    return Err(Error::Axiom(format!(
                        "quotient rule for {} does not preserve the bracket with {}",
                        self.gens[r.gen as usize].name, self.gens[h as usize].name
                    )));
                }
                let raw = self.bracket_gens(lhs, hp);
                let via = self.bracket_el(&r.rhs, &gens[h as usize]);
                if raw != via {
                    return Err(Error::Axiom(format!(
                        "quotient rule for {} does not preserve the bracket with {}",
                        self.gens[r.gen as usize].name, self.gens[h as usize].name
                    )));
                }
            }
        }
        Ok(())
    }
}
