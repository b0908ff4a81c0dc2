//! Conformal and superconformal vector checks, conformal weights and the
//! coefficient-comparison system behind the shifted superconformal vector.

use std::collections::HashMap;

use crate::algebra::Algebra;
use crate::coeff::{rat, rat_int, Scalar};
use crate::elements::{Element, LambdaElement, Monomial, TransOp};
use crate::error::Error;
use crate::formal::{chi, dbit, MixedWord, Op, Sector, CHI1, CHI2};
use crate::sample;

fn word(lam: u32, odd: u8) -> MixedWord {
    MixedWord { lam, odd, ..MixedWord::ONE }
}

fn del_word(n: u32) -> MixedWord {
    MixedWord { del: n, ..MixedWord::ONE }
}

fn op(terms: &[(MixedWord, Scalar)]) -> Op {
    Op::from_terms(terms.iter().cloned())
}

fn need(alg: &Algebra, s: Sector) -> Result<(), Error> {
    if alg.sector == s {
        Ok(())
    } else {
        Err(Error::SectorMismatch { expected: s.n(), found: alg.sector.n() })
    }
}

/// (operator)·v as a bracket value.
pub fn covariant(alg: &Algebra, o: &Op, v: &Element) -> LambdaElement {
    alg.apply_op_poly(o, &LambdaElement::term(MixedWord::ONE, v.clone()))
}

/// Reads `residual` as `s·top·|0⟩` and returns `s·factor`; anything else is reported.
fn central(
    alg: &Algebra,
    residual: &LambdaElement,
    top: MixedWord,
    factor: &Scalar,
    fail: fn(String) -> Error,
) -> Result<Scalar, Error> {
    if residual.is_zero() {
        return Ok(Scalar::zero());
    }
    let mut out = None;
    for (w, e) in residual.iter() {
        match e.as_scalar() {
            Some(s) if *w == top => out = Some(s.mul_ref(factor)),
            _ => return Err(fail(format!("leftover term {}", alg.lambda_text(&LambdaElement::term(*w, e.clone()))))),
        }
    }
    Ok(out.unwrap_or_else(Scalar::zero))
}

fn require_zero(alg: &Algebra, what: &str, v: &LambdaElement, fail: fn(String) -> Error) -> Result<(), Error> {
    if v.is_zero() {
        Ok(())
    } else {
        Err(fail(format!("{what}: residual {}", alg.lambda_text(v))))
    }
}

fn require_equal(alg: &Algebra, what: &str, got: &Element, want: &Element, fail: fn(String) -> Error) -> Result<(), Error> {
    let d = got.sub(want);
    if d.is_zero() {
        Ok(())
    } else {
        Err(fail(format!("{what}: got {}, expected {}", alg.element_text(got), alg.element_text(want))))
    }
}

fn same_charge(a: &Scalar, b: &Scalar, what: &str, fail: fn(String) -> Error) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(fail(format!("{what}: central charges disagree ({} vs {})", a.to_text(), b.to_text())))
    }
}

/// r with x = r·v, if it exists.
pub fn scalar_ratio(x: &Element, v: &Element) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    let (m, s) = v.terms().find(|(_, s)| s.as_constant().is_some())?;
    let inv = s.as_constant()?.inv()?;
    let r = x.coefficient(m).mul_ref(&Scalar::constant(inv));
    if x.sub(&v.scale(&r)).is_zero() {
        Some(r)
    } else {
        None
    }
}

/// [L λ L] = (∂+2λ)L + (c/12)λ³, returning c.
pub fn virasoro_relation(alg: &Algebra, l: &Element) -> Result<Scalar, Error> {
    need(alg, Sector::N0)?;
    let br = alg.bracket(l, l)?;
    let cov = covariant(alg, &op(&[(del_word(1), Scalar::one()), (word(1, 0), Scalar::from_int(2))]), l);
    central(alg, &br.sub(&cov), word(3, 0), &Scalar::from_int(12), Error::NotConformal)
}

/// Virasoro relation plus L_(0) = ∂ and L_(1)-eigenvectors on generators.
pub fn check_virasoro(alg: &Algebra, l: &Element) -> Result<Scalar, Error> {
    let c = virasoro_relation(alg, l)?;
    for g in alg.generators() {
        let got = alg.mode_action(l, 0, 0, &g)?;
        require_equal(alg, "L_(0) = d", &got, &alg.apply_translation(&g, TransOp::Del)?, Error::NotConformal)?;
        let w = alg.mode_action(l, 1, 0, &g)?;
        if scalar_ratio(&w, &g).is_none() {
            return Err(Error::NotConformal(format!("L_(1) on {}: {}", alg.element_text(&g), alg.element_text(&w))));
        }
    }
    Ok(c)
}

fn primary_of_weight(alg: &Algebra, l: &Element, v: &Element, num: i64, den: i64, fail: fn(String) -> Error) -> Result<(), Error> {
    let br = alg.bracket(l, v)?;
    let cov = covariant(alg, &op(&[(del_word(1), Scalar::one()), (word(1, 0), Scalar::from_ratio(num, den))]), v);
    require_zero(alg, "[L λ v] - (d + Δλ)v", &br.sub(&cov), fail)
}

/// Super-Virasoro pair: [L λ G] = (∂+3/2λ)G and [G λ G] = 2L + (c/3)λ².
pub fn check_n1_pair(alg: &Algebra, l: &Element, g: &Element) -> Result<Scalar, Error> {
    let c = virasoro_relation(alg, l)?;
    primary_of_weight(alg, l, g, 3, 2, Error::NotSuperconformal)?;
    let gg = alg.bracket(g, g)?;
    let rest = gg.sub(&LambdaElement::term(MixedWord::ONE, l.scale(&Scalar::from_int(2))));
    let c2 = central(alg, &rest, word(2, 0), &Scalar::from_int(3), Error::NotSuperconformal)?;
    same_charge(&c, &c2, "[G λ G]", Error::NotSuperconformal)?;
    if g.is_zero() && !l.is_zero() {
        return Err(Error::NotSuperconformal("[G λ G] = 2L fails for G = 0".into()));
    }
    Ok(c)
}

/// The full N=2 relation list for (L, J, G⁺, G⁻).
pub fn check_n2_component(alg: &Algebra, l: &Element, j: &Element, gp: &Element, gm: &Element) -> Result<Scalar, Error> {
    let fail = Error::NotSuperconformal;
    let c = virasoro_relation(alg, l)?;
    primary_of_weight(alg, l, gp, 3, 2, fail)?;
    primary_of_weight(alg, l, gm, 3, 2, fail)?;
    primary_of_weight(alg, l, j, 1, 1, fail)?;
    require_zero(alg, "[G+ λ G+]", &alg.bracket(gp, gp)?, fail)?;
    require_zero(alg, "[G- λ G-]", &alg.bracket(gm, gm)?, fail)?;
    let pm = alg.bracket(gp, gm)?;
    let cov = covariant(alg, &op(&[(del_word(1), Scalar::from_ratio(1, 2)), (word(1, 0), Scalar::one())]), j)
        .add(&LambdaElement::term(MixedWord::ONE, l.clone()));
    let c2 = central(alg, &pm.sub(&cov), word(2, 0), &Scalar::from_int(6), fail)?;
    same_charge(&c, &c2, "[G+ λ G-]", fail)?;
    let gpj = alg.bracket(gp, j)?.add(&LambdaElement::term(MixedWord::ONE, gp.clone()));
    require_zero(alg, "[G+ λ J] + G+", &gpj, fail)?;
    let gmj = alg.bracket(gm, j)?.sub(&LambdaElement::term(MixedWord::ONE, gm.clone()));
    require_zero(alg, "[G- λ J] - G-", &gmj, fail)?;
    let c3 = central(alg, &alg.bracket(j, j)?, word(1, 0), &Scalar::from_int(3), fail)?;
    same_charge(&c, &c3, "[J λ J]", fail)?;
    Ok(c)
}

fn n1_covariant_op(two_delta: Scalar) -> Op {
    op(&[
        (del_word(1), Scalar::from_int(2)),
        (word(1, 0), two_delta),
        (MixedWord { odd: CHI1 | dbit(1), ..MixedWord::ONE }, Scalar::one()),
    ])
}

fn n1_mode_checks(alg: &Algebra, t: &Element, pool: &[Element]) -> Result<(), Error> {
    let fail = Error::NotSuperconformal;
    for v in pool {
        let d0 = alg.mode_action(t, 0, 0, v)?;
        let dv = alg.apply_translation(v, TransOp::Del)?;
        require_equal(alg, "T_(0|0) = 2d", &d0, &dv.scale(&Scalar::from_int(2)), fail)?;
        let d1 = alg.mode_action(t, 0, CHI1, v)?;
        require_equal(alg, "T_(0|1) = D", &d1, &alg.apply_translation(v, TransOp::D(1))?, fail)?;
    }
    Ok(())
}

fn eigen_on_generators(alg: &Algebra, t: &Element, fail: fn(String) -> Error) -> Result<(), Error> {
    for g in alg.generators() {
        let w = alg.mode_action(t, 1, 0, &g)?;
        if scalar_ratio(&w, &g).is_none() {
            return Err(fail(format!("(1|0)-mode on {} is {}", alg.element_text(&g), alg.element_text(&w))));
        }
    }
    Ok(())
}

/// Generators plus `n` seeded random monomials.
pub fn mode_pool(alg: &Algebra, n: usize, seed: u64) -> Vec<Element> {
    let mut pool = alg.generators();
    let mut rng = sample::rng(seed);
    for _ in 0..n {
        pool.push(sample::random_monomial(alg, &mut rng, 2, 1));
    }
    pool
}

/// [T Λ T] = (2∂+3λ+χD)T + (c/3)λ²χ, returning c.
pub fn sconf_relation(alg: &Algebra, t: &Element) -> Result<Scalar, Error> {
    need(alg, Sector::N1)?;
    let br = alg.bracket(t, t)?;
    let cov = covariant(alg, &n1_covariant_op(Scalar::from_int(3)), t);
    central(alg, &br.sub(&cov), word(2, CHI1), &Scalar::from_int(3), Error::NotSuperconformal)
}

/// N=1 superconformal vector test: the bracket identity, T_(0|0) = 2∂ and T_(0|1) = D on
/// generators and 20 seeded random monomials, T_(1|0)-eigenvectors on generators.
pub fn check_susy_superconformal(alg: &Algebra, t: &Element) -> Result<Scalar, Error> {
    let c = sconf_relation(alg, t)?;
    n1_mode_checks(alg, t, &mode_pool(alg, 20, 0x5eed))?;
    eigen_on_generators(alg, t, Error::NotSuperconformal)?;
    Ok(c)
}

/// N=2 structure in N_K=1 form: T superconformal, [T Λ J] = (2∂+2λ+χD)J, [J Λ J] = T + (c/3)λχ.
pub fn check_n2_susy_pair(alg: &Algebra, t: &Element, j: &Element) -> Result<Scalar, Error> {
    let fail = Error::NotSuperconformal;
    let c = check_susy_superconformal(alg, t)?;
    let tj = alg.bracket(t, j)?;
    require_zero(alg, "[T Λ J] - (2d+2λ+χD)J", &tj.sub(&covariant(alg, &n1_covariant_op(Scalar::from_int(2)), j)), fail)?;
    let jj = alg.bracket(j, j)?.sub(&LambdaElement::term(MixedWord::ONE, t.clone()));
    let c2 = central(alg, &jj, word(1, CHI1), &Scalar::from_int(3), fail)?;
    same_charge(&c, &c2, "[J Λ J]", fail)?;
    Ok(c)
}

fn n2_covariant_op(two_delta: Scalar) -> Op {
    op(&[
        (del_word(1), Scalar::from_int(2)),
        (word(1, 0), two_delta),
        (MixedWord { odd: chi(1) | dbit(1), ..MixedWord::ONE }, Scalar::one()),
        (MixedWord { odd: chi(2) | dbit(2), ..MixedWord::ONE }, Scalar::one()),
    ])
}

/// [P Λ P] = (2∂+2λ+χ¹D¹+χ²D²)P + (c/3)λχ¹χ², returning c.
pub fn nk2_relation(alg: &Algebra, p: &Element) -> Result<Scalar, Error> {
    need(alg, Sector::N2)?;
    let br = alg.bracket(p, p)?;
    let cov = covariant(alg, &n2_covariant_op(Scalar::from_int(2)), p);
    central(alg, &br.sub(&cov), word(1, CHI1 | CHI2), &Scalar::from_int(3), Error::NotSuperconformal)
}

/// N=2 superconformal vector test in the N_K=2 sector. Besides the bracket identity,
/// P_(0|00) = 2∂ and the χⁱ-coefficient of [P Λ v] at λ⁰ equals Dⁱv, i.e.
/// P_(0|10) = −D¹ and P_(0|01) = −D² in the signed mode expansion.
pub fn check_nk2_superconformal(alg: &Algebra, p: &Element) -> Result<Scalar, Error> {
    let fail = Error::NotSuperconformal;
    let c = nk2_relation(alg, p)?;
    for v in mode_pool(alg, 10, 0x5eed) {
        let d0 = alg.mode_action(p, 0, 0, &v)?;
        require_equal(alg, "P_(0|00) = 2d", &d0, &alg.apply_translation(&v, TransOp::Del)?.scale(&Scalar::from_int(2)), fail)?;
        for i in 1..=2u8 {
            let m = alg.mode_action(p, 0, chi(i), &v)?;
            let want = alg.apply_translation(&v, TransOp::D(i))?.scale(&Scalar::from_int(-1));
            require_equal(alg, &format!("P_(0|{}) = -D{i}", if i == 1 { "10" } else { "01" }), &m, &want, fail)?;
        }
    }
    eigen_on_generators(alg, p, fail)?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightReport {
    pub delta: Scalar,
    pub primary: bool,
    pub residual: LambdaElement,
}

/// Conformal weight of `v` with respect to a conformal (sector 0), N=1 (sector 1) or
/// N=2 (sector 2) superconformal vector. The residual is everything beyond the
/// constant, χ and λ terms.
pub fn conformal_weight(alg: &Algebra, t: &Element, v: &Element) -> Result<WeightReport, Error> {
    let br = alg.bracket(t, v)?;
    let fail = Error::NotEigenvector;
    let (dscale, dfactor) = match alg.sector {
        Sector::N0 => (1, Scalar::one()),
        _ => (2, Scalar::from_ratio(1, 2)),
    };
    let dv = alg.apply_translation(v, TransOp::Del)?.scale(&Scalar::from_int(dscale));
    require_equal(alg, "constant term", &br.coefficient(&MixedWord::ONE), &dv, fail)?;
    let mut linear = vec![MixedWord::ONE, word(1, 0)];
    let odd_count = match alg.sector {
        Sector::N0 => 0,
        Sector::N1 => 1,
        Sector::N2 => 2,
    };
    for i in 1..=odd_count {
        let w = word(0, chi(i));
        let want = alg.apply_translation(v, TransOp::D(i))?;
        require_equal(alg, &format!("chi{i} term"), &br.coefficient(&w), &want, fail)?;
        linear.push(w);
    }
    let lam = br.coefficient(&word(1, 0));
    let ratio = scalar_ratio(&lam, v)
        .ok_or_else(|| fail(format!("λ-term {} is not a multiple of {}", alg.element_text(&lam), alg.element_text(v))))?;
    let residual = LambdaElement::from_terms(br.iter().filter(|(w, _)| !linear.contains(w)).map(|(w, e)| (*w, e.clone())));
    Ok(WeightReport { delta: ratio.mul_ref(&dfactor), primary: residual.is_zero(), residual })
}

/// One coefficient equation `poly = 0`, attached to a word and a canonical monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub word: MixedWord,
    pub monomial: Monomial,
    pub poly: Scalar,
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub unknowns: Vec<String>,
    pub central: String,
    pub equations: Vec<Equation>,
}

impl ConstraintSystem {
    /// Residuals after substituting values for the unknowns (the central charge stays free).
    pub fn residuals(&self, values: &HashMap<String, Scalar>) -> Vec<(Equation, Scalar)> {
        self.equations
            .iter()
            .map(|e| (e.clone(), e.poly.substitute(values)))
            .filter(|(_, r)| !r.is_zero())
            .collect()
    }

    /// Substitute, solve the vacuum λ²χ equation for c, and return (c, nonzero residuals).
    pub fn solve_central(&self, values: &HashMap<String, Scalar>) -> (Option<Scalar>, Vec<(Equation, Scalar)>) {
        let top = word(2, CHI1);
        let mut vals = values.clone();
        vals.insert(self.central.clone(), Scalar::zero());
        let c = match self.equations.iter().find(|e| e.word == top && e.monomial.is_empty()) {
            Some(e) => e.poly.substitute(&vals).scale(&rat_int(3)),
            None => Scalar::zero(),
        };
        vals.insert(self.central.clone(), c.clone());
        (Some(c), self.residuals(&vals))
    }

    pub fn is_solution(&self, values: &HashMap<String, Scalar>) -> bool {
        self.solve_central(values).1.is_empty()
    }
}

/// Coefficient equations of [T Λ T] − (2∂+3λ+χD)T − (c/3)λ²χ for T = Σ mᵢ·monomialᵢ.
pub fn ansatz_constraints(alg: &Algebra, monomials: &[Element]) -> Result<ConstraintSystem, Error> {
    need(alg, Sector::N1)?;
    let unknowns: Vec<String> = (1..=monomials.len()).map(|i| format!("m{i}")).collect();
    let mut t = Element::zero().with_alg(Some(alg.id));
    for (m, name) in monomials.iter().zip(&unknowns) {
        t.add_assign(&m.scale(&Scalar::param(name)));
    }
    let central_name = "c".to_string();
    let br = alg.bracket(&t, &t)?;
    let cov = covariant(alg, &n1_covariant_op(Scalar::from_int(3)), &t);
    let cterm = LambdaElement::term(word(2, CHI1), alg.vacuum().scale(&Scalar::param(&central_name).scale(&rat(1, 3))));
    let diff = br.sub(&cov).sub(&cterm);
    let mut equations = Vec::new();
    for (w, e) in diff.iter() {
        for (m, s) in e.terms() {
            equations.push(Equation { word: *w, monomial: m.clone(), poly: s.clone() });
        }
    }
    Ok(ConstraintSystem { unknowns, central: central_name, equations })
}

/// Text form of an equation: `word * monomial : poly = 0`.
pub fn equation_text(alg: &Algebra, e: &Equation) -> String {
    let mono = alg.mono_element(e.monomial.clone());
    format!("{} * {} : {} = 0", e.word.to_text(alg.sector), alg.element_text(&mono), e.poly.to_text())
}

pub fn assignment(pairs: &[(&str, Scalar)]) -> HashMap<String, Scalar> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
