//! Superfield components.
//!
//! An N_K=1 superfield is written A + θB and an N_K=2 one A + θ²B with A, B one
//! sector down. Generators go through an explicit dictionary; derivatives follow
//!
//! ```text
//!   D (A + θB)   = B + θ∂A             (N_K=1, D = ∂_θ + θ∂_z)
//!   D¹(A + θ²B)  = DA − θ²DB           (N_K=2, D¹ passes the odd θ²)
//!   D²(A + θ²B)  = B + θ²∂A
//!   (A + θB)(C + θD') = AC + θ(BC + (−1)^{p(A)} AD')
//! ```

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{Algebra, Kind};
use crate::coeff::Scalar;
use crate::elements::{DerivedGen, Element, LambdaElement, TransOp};
use crate::error::Error;
use crate::fields::{bc_beta_gamma, susy_charged_fermions, vector, Params};
use crate::formal::{dbit, MixedWord, Sector, CHI1, CHI2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// N_K=1 → non-SUSY, split along θ.
    Nk1,
    /// N_K=2 → N_K=1, split along θ².
    Nk2,
}

/// Generator dictionary from a SUSY algebra to the components one sector down.
pub struct ComponentMap {
    pub level: Level,
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    /// (body, θ-component) per source generator.
    pub dict: Vec<(Element, Element)>,
}

/// Even a: φ_a ↦ (γ, c), φ^ā ↦ (b, β). Odd a: φ^ā ↦ (γ, c), φ_a ↦ (b, β).
pub fn components_map_nk1(source: &Arc<Algebra>) -> Result<ComponentMap, Error> {
    if source.kind != Kind::SusyChargedFermion {
        return Err(Error::Unmapped(format!("algebra {}", source.name)));
    }
    let names: Vec<&str> = source.basis.iter().map(|b| b.name.as_str()).collect();
    let target = bc_beta_gamma(&names)?;
    let mut dict = vec![(Element::zero(), Element::zero()); source.gens.len()];
    for (be, tb) in source.basis.iter().zip(&target.basis) {
        let [g, c, b, beta] = [0, 1, 2, 3].map(|i| target.gen_element(tb.gens[i]));
        let (bosonic, fermionic) = if be.odd { (be.gens[1], be.gens[0]) } else { (be.gens[0], be.gens[1]) };
        dict[bosonic as usize] = (g, c);
        dict[fermionic as usize] = (b, beta);
    }
    Ok(ComponentMap { level: Level::Nk1, source: source.clone(), target, dict })
}

/// Φ_a ↦ (φ_a, iDφ_a) and Φ^ā ↦ (φ^ā, iDφ^ā).
pub fn components_map_nk2(source: &Arc<Algebra>) -> Result<ComponentMap, Error> {
    if source.kind != Kind::N2BcBetaGamma {
        return Err(Error::Unmapped(format!("algebra {}", source.name)));
    }
    let basis: Vec<(&str, bool)> = source.basis.iter().map(|b| (b.name.as_str(), b.odd)).collect();
    let target = susy_charged_fermions(&basis)?;
    let mut dict = vec![(Element::zero(), Element::zero()); source.gens.len()];
    for (be, tb) in source.basis.iter().zip(&target.basis) {
        for k in 0..2 {
            let x = target.gen_element(tb.gens[k]);
            let dx = target.apply_op_unchecked(&x, TransOp::D(1)).scale(&Scalar::i());
            dict[be.gens[k] as usize] = (x, dx);
        }
    }
    Ok(ComponentMap { level: Level::Nk2, source: source.clone(), target, dict })
}

type Pair = (Element, Element);

impl ComponentMap {
    fn zero(&self) -> Pair {
        let z = Element::zero().with_alg(Some(self.target.id));
        (z.clone(), z)
    }

    fn del(&self, (a, b): &Pair) -> Pair {
        let t = &self.target;
        (t.apply_op_unchecked(a, TransOp::Del), t.apply_op_unchecked(b, TransOp::Del))
    }

    fn d(&self, i: u8, (a, b): &Pair) -> Pair {
        let t = &self.target;
        match (self.level, i) {
            (Level::Nk2, 1) => (
                t.apply_op_unchecked(a, TransOp::D(1)),
                t.apply_op_unchecked(b, TransOp::D(1)).scale(&Scalar::from_int(-1)),
            ),
            _ => (b.clone(), t.apply_op_unchecked(a, TransOp::Del)),
        }
    }

    fn product(&self, (a, b): &Pair, (c, d): &Pair) -> Pair {
        let t = &self.target;
        let sign = if a.parity() == Some(1) { -1 } else { 1 };
        let theta = t.np(b, c).add(&t.np(a, d).scale(&Scalar::from_int(sign)));
        (t.np(a, c), theta)
    }

    fn derived(&self, dg: &DerivedGen) -> Pair {
        let mut p = self.dict[dg.gen as usize].clone();
        let odd_ops = match self.level {
            Level::Nk1 => vec![1u8],
            Level::Nk2 => vec![2u8, 1],
        };
        for i in odd_ops {
            if dg.dmask & dbit(i) != 0 {
                p = self.d(i, &p);
            }
        }
        for _ in 0..dg.del {
            p = self.del(&p);
        }
        p
    }

    /// (body, θ-component) of `v`.
    pub fn components(&self, v: &Element) -> Result<Pair, Error> {
        self.source.check_owner(v)?;
        let mut out = self.zero();
        for (m, s) in v.terms() {
            let mut acc = (self.target.vacuum(), Element::zero().with_alg(Some(self.target.id)));
            for dg in m.iter().rev() {
                if dg.gen as usize >= self.dict.len() || self.dict[dg.gen as usize].0.is_zero() {
                    return Err(Error::Unmapped(self.source.gens[dg.gen as usize].name.clone()));
                }
                acc = self.product(&self.derived(dg), &acc);
            }
            out.0.add_assign(&acc.0.scale(s));
            out.1.add_assign(&acc.1.scale(s));
        }
        Ok(out)
    }

    pub fn body(&self, v: &Element) -> Result<Element, Error> {
        Ok(self.components(v)?.0)
    }

    /// The component product formula applied to two pairs, for homomorphism checks.
    pub fn combine(&self, u: &Pair, v: &Pair) -> Pair {
        self.product(u, v)
    }

    pub fn to_json(&self) -> Value {
        let t = &self.target;
        let entries: Vec<Value> = self
            .dict
            .iter()
            .enumerate()
            .map(|(g, (a, b))| {
                json!({
                    "source": self.source.gens[g].name,
                    "body": t.element_text(a),
                    "theta": t.element_text(b),
                })
            })
            .collect();
        json!({
            "level": match self.level { Level::Nk1 => "nk1", Level::Nk2 => "nk2" },
            "source": self.source.name,
            "target": t.name,
            "dictionary": entries,
        })
    }
}

/// The non-SUSY bracket of the bodies, read off from the χ-terms of the N_K=1
/// bracket: Σ_j λ^j body(coefficient of λ^jχ).
pub fn nonsusy_bracket_via_components(map: &ComponentMap, a: &Element, b: &Element) -> Result<LambdaElement, Error> {
    if map.level != Level::Nk1 {
        return Err(Error::SectorMismatch { expected: 1, found: map.source.sector.n() });
    }
    let br = map.source.bracket(a, b)?;
    let mut out = LambdaElement::zero();
    for (w, e) in br.iter() {
        if w.odd == CHI1 {
            out.add_term(MixedWord::lam(w.lam), map.body(e)?);
        }
    }
    Ok(out)
}

/// N_K=2 brackets recomputed from ordinary λ-brackets of bc-βγ bodies.
///
/// On the bodies D¹ = (G⁺+G⁻)_(0) and D² = i(G⁺−G⁻)_(0) with the standard G±.
pub struct N2Reduction {
    pub outer: ComponentMap,
    pub inner: ComponentMap,
    gp: Element,
    gm: Element,
}

impl N2Reduction {
    pub fn new(source: &Arc<Algebra>) -> Result<Self, Error> {
        let outer = components_map_nk2(source)?;
        let inner = components_map_nk1(&outer.target)?;
        let names: Vec<&str> = inner.target.basis.iter().map(|b| b.name.as_str()).collect();
        let params = Params::all(&names, Scalar::zero());
        let gp = vector(&inner.target, "Gp_sh", &params)?;
        let gm = vector(&inner.target, "Gm_sh", &params)?;
        Ok(N2Reduction { outer, inner, gp, gm })
    }

    pub fn bcbg(&self) -> &Arc<Algebra> {
        &self.inner.target
    }

    /// The body of an N_K=2 element in the bc-βγ system.
    pub fn body(&self, u: &Element) -> Result<Element, Error> {
        self.inner.body(&self.outer.body(u)?)
    }

    pub fn d(&self, i: u8, x: &Element) -> Result<Element, Error> {
        let t = self.bcbg();
        match i {
            1 => t.mode_action(&self.gp.add(&self.gm), 0, 0, x),
            _ => Ok(t.mode_action(&self.gp.sub(&self.gm), 0, 0, x)?.scale(&Scalar::i())),
        }
    }

    /// −[D¹D²u λ v] − χ¹[D²u λ v] + χ²[D¹u λ v] − χ¹χ²[u λ v] on the bodies.
    pub fn bracket(&self, u: &Element, v: &Element) -> Result<LambdaElement, Error> {
        let t = self.bcbg();
        let (u0, v0) = (self.body(u)?, self.body(v)?);
        let d2u = self.d(2, &u0)?;
        let d1u = self.d(1, &u0)?;
        let d12u = self.d(1, &d2u)?;
        let pieces = [(d12u, 0u8, -1i64), (d2u, CHI1, -1), (d1u, CHI2, 1), (u0, CHI1 | CHI2, -1)];
        let mut out = LambdaElement::zero();
        for (x, mask, sign) in pieces {
            for (w, e) in t.bracket(&x, &v0)?.iter() {
                let word = MixedWord { lam: w.lam, odd: mask, ..MixedWord::ONE };
                out.add_term(word, e.scale(&Scalar::from_int(sign)));
            }
        }
        Ok(out)
    }

    /// The engine's own N_K=2 bracket with coefficients replaced by their bodies.
    pub fn direct(&self, u: &Element, v: &Element) -> Result<LambdaElement, Error> {
        let br = self.outer.source.bracket(u, v)?;
        let mut out = LambdaElement::zero();
        for (w, e) in br.iter() {
            out.add_term(*w, self.body(e)?);
        }
        Ok(out)
    }

    /// D¹, D² on bodies agree with the superfield rules on `u`, and (Dⁱ)² = ∂.
    pub fn check_derivations(&self, u: &Element) -> Result<(), Error> {
        let t = self.bcbg();
        let src = &self.outer.source;
        let u0 = self.body(u)?;
        let du = t.apply_translation(&u0, TransOp::Del)?;
        let fail = |what: String| Err(Error::Eval(what));
        for i in 1..=2u8 {
            let via_modes = self.d(i, &u0)?;
            let via_fields = self.body(&src.apply_translation(u, TransOp::D(i))?)?;
            if !via_modes.sub(&via_fields).is_zero() {
                return fail(format!("D{i} on {}: {} vs {}", src.element_text(u), t.element_text(&via_modes), t.element_text(&via_fields)));
            }
            let sq = self.d(i, &via_modes)?;
            if !sq.sub(&du).is_zero() {
                return fail(format!("(D{i})^2 on {} = {}", t.element_text(&u0), t.element_text(&sq)));
            }
        }
        Ok(())
    }
}

pub fn component_map(source: &Arc<Algebra>) -> Result<ComponentMap, Error> {
    match source.sector {
        Sector::N1 => components_map_nk1(source),
        Sector::N2 => components_map_nk2(source),
        Sector::N0 => Err(Error::Unmapped(format!("{} has no superfield components", source.name))),
    }
}
