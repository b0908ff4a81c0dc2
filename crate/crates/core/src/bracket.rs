//! The Λ-bracket: structure table, sesquilinearity, skew-symmetry and the
//! non-commutative Wick formula.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::coeff::Scalar;
use crate::elements::{mono_parity, DerivedGen, Element, LambdaElement};
use crate::error::Error;
use crate::formal::{chi, dbit, MixedWord, Op, Sector, CHI1, CHI2};

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

impl Algebra {
    /// [a Λ b].
    pub fn bracket(&self, a: &Element, b: &Element) -> Result<LambdaElement, Error> {
        self.check_owner(a)?;
        self.check_owner(b)?;
        if let (Some(x), Some(y)) = (a.alg(), b.alg()) {
            if x != y {
                return Err(Error::CrossAlgebra);
            }
        }
        Ok(self.bracket_el(a, b))
    }

    pub(crate) fn bracket_el(&self, a: &Element, b: &Element) -> LambdaElement {
        let mut out = LambdaElement::zero();
        for (ma, sa) in a.terms() {
            for (mb, sb) in b.terms() {
                let v = self.bracket_mono(ma, mb);
                out.add_assign(&v.scale(&sa.mul_ref(sb)));
            }
        }
        out
    }

    pub(crate) fn bracket_mono(&self, a: &[DerivedGen], b: &[DerivedGen]) -> LambdaElement {
        if a.is_empty() || b.is_empty() {
            return LambdaElement::zero();
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(hit) = self.bracket_cache.lock().unwrap().get(&key) {
            return (**hit).clone();
        }
        let v = if b.len() >= 2 {
            self.wick(a, b)
        } else if a.len() >= 2 {
            let flipped = self.bracket_mono(b, a);
            self.skew_image(&flipped, mono_parity(b), mono_parity(a))
        } else {
            self.bracket_gens(a[0], b[0])
        };
        self.bracket_cache.lock().unwrap().insert(key, Arc::new(v.clone()));
        v
    }

    /// Sign for pulling a word of the given parity out of the left slot.
    fn left_pull_sign(&self, word_parity: u8) -> i64 {
        if self.sector == Sector::N1 && word_parity == 1 {
            -1
        } else {
            1
        }
    }

    /// Sign for pulling a word out of the right slot past `a` and the bracket.
    fn right_pull_sign(&self, word_parity: u8, pa: u8) -> i64 {
        if word_parity * ((pa + self.sector.bracket_parity()) % 2) == 1 {
            -1
        } else {
            1
        }
    }

    /// [A Λ b₁B'] = [A Λ b₁]B' + ± b₁[A Λ B'] + ∫₀^Λ [[A Λ b₁] Γ B'] dΓ.
    fn wick(&self, a: &[DerivedGen], b: &[DerivedGen]) -> LambdaElement {
        let pa = mono_parity(a);
        let b1 = b[0];
        let pb1 = b1.parity();
        let rest = self.mono_element(b[1..].to_vec());
        let ab1 = self.bracket_mono(a, &[b1]);
        let mut out = LambdaElement::zero();

        for (w, c) in ab1.iter() {
            out.add_term(*w, self.np(c, &rest));
        }

        let sign_exp = if self.sector == Sector::N1 { (pa + 1) * pb1 } else { pa * pb1 };
        let ab_rest = self.bracket_mono(a, &b[1..]);
        for (w, c) in ab_rest.iter() {
            let mut s = if sign_exp % 2 == 1 { -1 } else { 1 };
            if pb1 * w.parity() == 1 {
                s = -s;
            }
            out.add_term(*w, self.np_gen_elem(b1, c).scale(&Scalar::from_int(s)));
        }

        let mut nested = LambdaElement::zero();
        for (w, c) in ab1.iter() {
            let inner = self.bracket_el(c, &rest).to_aux();
            if inner.is_zero() {
                continue;
            }
            let s = self.left_pull_sign(w.parity());
            nested.add_assign(&inner.left_mul_word(w).scale(&Scalar::from_int(s)));
        }
        out.add_assign(&nested.full_nested_integral(self.sector));
        out
    }

    /// Both arguments are single derived generators: strip translations, look up the table.
    pub(crate) fn bracket_gens(&self, a: DerivedGen, b: DerivedGen) -> LambdaElement {
        let base = match self.table.get(&(a.gen, b.gen)) {
            Some(v) => v.clone(),
            None => return LambdaElement::zero(),
        };
        let pg = a.base_odd as u8;
        let right = self.right_operator(pg, b.del, b.dmask);
        let inner = self.apply_op_poly(&right, &base);
        if inner.is_zero() {
            return inner;
        }
        inner.left_mul(&self.left_factor(a.del, a.dmask))
    }

    /// (−λ)^k times χ^S (sector 1) or (−χ¹)^{s₁}(−χ²)^{s₂} (sector 2).
    fn left_factor(&self, del: u16, dmask: u8) -> Op {
        let mut s = if del % 2 == 1 { -1 } else { 1 };
        let mut odd = 0u8;
        for i in 1..=2u8 {
            if dmask & dbit(i) != 0 {
                odd |= chi(i);
                if self.sector == Sector::N2 {
                    s = -s;
                }
            }
        }
        Op::term(MixedWord { lam: del as u32, odd, ..MixedWord::ONE }, Scalar::from_int(s))
    }

    /// (∂+λ)^l R₁^{t₁} R₂^{t₂} for the right argument ∂^l D¹^{t₁} D²^{t₂} h.
    fn right_operator(&self, pa: u8, del: u16, dmask: u8) -> Op {
        let shift = Op::from_terms([(MixedWord::del(1), Scalar::one()), (MixedWord::lam(1), Scalar::one())]);
        let mut op = Op::one();
        for _ in 0..del {
            op = op.mul(&shift);
        }
        for i in 1..=2u8 {
            if dmask & dbit(i) != 0 {
                let sign = match self.sector {
                    Sector::N1 => if pa == 1 { 1 } else { -1 },
                    _ => if pa == 1 { -1 } else { 1 },
                };
                let r = Op::from_terms([
                    (MixedWord::odd(dbit(i)), Scalar::from_int(sign)),
                    (MixedWord::odd(chi(i)), Scalar::from_int(sign)),
                ]);
                op = op.mul(&r);
            }
        }
        op
    }

    /// a_(j|mask) v, read off as j!·coef(λ^j χ^mask); in sector 2 a non-empty mask
    /// picks up the minus sign of the mode expansion.
    pub fn mode_action(&self, a: &Element, j: u32, mask: u8, v: &Element) -> Result<Element, Error> {
        if mask & !self.sector.chi_top() != 0 {
            return Err(Error::BadOperator(format!("mode mask {mask:#b}")));
        }
        let br = self.bracket(a, v)?;
        let w = MixedWord { lam: j, odd: mask, ..MixedWord::ONE };
        let mut s = Scalar::from_int(factorial(j));
        if self.sector == Sector::N2 && mask != 0 {
            s = -s;
        }
        Ok(br.coefficient(&w).scale(&s).with_alg(Some(self.id)))
    }

    /// Skew-symmetry residual: [b Λ a] minus the image of [a Λ b].
    pub fn skew_residual(&self, a: &Element, b: &Element) -> Result<LambdaElement, Error> {
        let (pa, pb) = match (a.parity(), b.parity()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Ok(LambdaElement::zero()),
        };
        let ab = self.bracket(a, b)?;
        let ba = self.bracket(b, a)?;
        Ok(ba.sub(&self.skew_image(&ab, pa, pb)))
    }

    /// [a Λ u·e] for u a word in Γ letters: pull u out of the right slot.
    fn bracket_right_poly(&self, a: &Element, pa: u8, p: &LambdaElement) -> LambdaElement {
        let mut out = LambdaElement::zero();
        for (u, e) in p.iter() {
            let inner = self.bracket_el(a, e);
            let s = self.right_pull_sign(u.parity(), pa);
            out.add_assign(&inner.left_mul_word(u).scale(&Scalar::from_int(s)));
        }
        out
    }

    /// Jacobi residual LHS − RHS for homogeneous a, b, c, as a polynomial in Λ and Γ.
    pub fn jacobi_residual(&self, a: &Element, b: &Element, c: &Element) -> Result<LambdaElement, Error> {
        for x in [a, b, c] {
            self.check_owner(x)?;
        }
        let (pa, pb) = match (a.parity(), b.parity(), c.parity()) {
            (Some(x), Some(y), Some(_)) => (x, y),
            _ => return Ok(LambdaElement::zero()),
        };
        // [a Λ [b Γ c]]
        let bc = self.bracket_el(b, c).to_aux();
        let lhs = self.bracket_right_poly(a, pa, &bc);

        // [[a Λ b] Λ+Γ c]
        let ab = self.bracket_el(a, b);
        let mut first = LambdaElement::zero();
        for (w, e) in ab.iter() {
            let inner = self.bracket_el(e, c).substitute_shift();
            let s = self.left_pull_sign(w.parity());
            first.add_assign(&inner.left_mul_word(w).scale(&Scalar::from_int(s)));
        }

        // [b Γ [a Λ c]]
        let ac = self.bracket_el(a, c);
        let mut second = LambdaElement::zero();
        for (w, e) in ac.iter() {
            let inner = self.bracket_el(b, e).to_aux();
            let s = self.right_pull_sign(w.parity(), pb);
            second.add_assign(&inner.left_mul_word(w).scale(&Scalar::from_int(s)));
        }

        let (s1, s2) = if self.sector == Sector::N1 {
            (if pa == 1 { 1 } else { -1 }, if (pa + 1) * (pb + 1) % 2 == 1 { -1 } else { 1 })
        } else {
            (1, if pa * pb == 1 { -1 } else { 1 })
        };
        let rhs = first.scale(&Scalar::from_int(s1)).add(&second.scale(&Scalar::from_int(s2)));
        Ok(lhs.sub(&rhs))
    }
}

/// Mask of χ letters from a list of indices, e.g. `[1, 2]` for χ¹χ².
pub fn chi_mask(indices: &[u8]) -> u8 {
    indices.iter().fold(0, |m, &i| m | if i == 1 { CHI1 } else { CHI2 })
}
