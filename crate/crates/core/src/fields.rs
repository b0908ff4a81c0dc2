//! Free-field systems and their standard vectors.
//!
//! Generator names are plain identifiers: `phi_a` / `phibar_a` for the charged
//! fermions of basis element `a`, `Phi_a` / `Phibar_a` in the N=2 system and
//! `gamma_a`, `c_a`, `b_a`, `beta_a` for a bc-βγ copy (no suffix for an unnamed copy).

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraBuilder, Kind};
use crate::coeff::Scalar;
use crate::elements::{Element, TransOp};
use crate::error::Error;
use crate::formal::{MixedWord, Sector, CHI1, CHI2, D2};

/// Values for the shift parameters t_a; missing entries stay symbolic.
#[derive(Clone, Debug, Default)]
pub struct Params {
    values: HashMap<String, Scalar>,
}

impl Params {
    pub fn symbolic() -> Self {
        Params::default()
    }

    pub fn set(mut self, basis: &str, value: Scalar) -> Self {
        self.values.insert(basis.to_string(), value);
        self
    }

    pub fn all(basis: &[&str], value: Scalar) -> Self {
        let mut p = Params::default();
        for b in basis {
            p.values.insert(b.to_string(), value.clone());
        }
        p
    }

    pub fn shift(&self, basis: &str) -> Scalar {
        self.values.get(basis).cloned().unwrap_or_else(|| Scalar::param(&param_name(basis)))
    }
}

pub fn param_name(basis: &str) -> String {
    if basis.is_empty() {
        "t".to_string()
    } else {
        format!("t_{basis}")
    }
}

fn suffixed(stem: &str, basis: &str) -> String {
    if basis.is_empty() {
        stem.to_string()
    } else {
        format!("{stem}_{basis}")
    }
}

fn latex_sub(stem: &str, basis: &str) -> String {
    if basis.is_empty() {
        stem.to_string()
    } else {
        format!("{stem}_{{{basis}}}")
    }
}

fn latex_sup(stem: &str, basis: &str) -> String {
    if basis.is_empty() {
        format!("\\bar{{{stem}}}")
    } else {
        format!("{stem}^{{\\bar{{{basis}}}}}")
    }
}

/// Charged free fermions F(A ⊕ A*) with [φ_a λ φ^b] = δ_ab; φ_a has the parity opposite to a.
pub fn charged_free_fermions(name: &str, basis: &[(&str, bool)]) -> Result<Arc<Algebra>, Error> {
    let mut b = AlgebraBuilder::new(name, Sector::N0, Kind::ChargedFermion);
    for &(a, odd) in basis {
        let p = b.generator(&suffixed("phi", a), &latex_sub("\\phi", a), !odd);
        let q = b.generator(&suffixed("phibar", a), &latex_sup("\\phi", a), !odd);
        b.basis(a, odd, vec![p, q]);
        let one = b.constant(&[(MixedWord::ONE, Scalar::one())]);
        b.bracket(p, q, one);
    }
    b.build()
}

/// Charged fermions for the positive part of osp(1|2): φ_h, φ^h even (from the odd
/// root 1/2) and φ_1, φ^1 odd.
pub fn osp12_fermions() -> Result<Arc<Algebra>, Error> {
    charged_free_fermions("osp12", &[("h", true), ("1", false)])
}

/// bc-βγ copies: [β λ γ] = 1, [b λ c] = 1, with b, c odd.
pub fn bc_beta_gamma(copies: &[&str]) -> Result<Arc<Algebra>, Error> {
    let mut b = AlgebraBuilder::new("bcbg", Sector::N0, Kind::BcBetaGamma);
    for &a in copies {
        let g = b.generator(&suffixed("gamma", a), &latex_sub("\\gamma", a), false);
        let c = b.generator(&suffixed("c", a), &latex_sub("c", a), true);
        let bb = b.generator(&suffixed("b", a), &latex_sub("b", a), true);
        let be = b.generator(&suffixed("beta", a), &latex_sub("\\beta", a), false);
        b.basis(a, false, vec![g, c, bb, be]);
        let one = b.constant(&[(MixedWord::ONE, Scalar::one())]);
        b.bracket(be, g, one.clone());
        b.bracket(bb, c, one);
    }
    b.build()
}

/// SUSY charged free fermions in the N_K=1 sector: φ_a with the parity of a,
/// φ^ā with the opposite one, [φ_a Λ φ^ā] = 1.
pub fn susy_charged_fermions(basis: &[(&str, bool)]) -> Result<Arc<Algebra>, Error> {
    let mut b = AlgebraBuilder::new("susy_cff", Sector::N1, Kind::SusyChargedFermion);
    for &(a, odd) in basis {
        let p = b.generator(&suffixed("phi", a), &latex_sub("\\phi", a), odd);
        let q = b.generator(&suffixed("phibar", a), &latex_sup("\\phi", a), !odd);
        b.basis(a, odd, vec![p, q]);
        let one = b.constant(&[(MixedWord::ONE, Scalar::one())]);
        b.bracket(p, q, one);
    }
    b.build()
}

/// N_K=2 bc-βγ system: [Φ_a Λ Φ^ā] = −iχ¹ + χ², with D²Φ = iD¹Φ imposed on both fields.
pub fn n2_bc_beta_gamma(basis: &[(&str, bool)]) -> Result<Arc<Algebra>, Error> {
    let mut b = AlgebraBuilder::new("n2_bcbg", Sector::N2, Kind::N2BcBetaGamma);
    for &(a, odd) in basis {
        let p = b.generator(&suffixed("Phi", a), &latex_sub("\\Phi", a), odd);
        let q = b.generator(&suffixed("Phibar", a), &latex_sup("\\Phi", a), !odd);
        b.basis(a, odd, vec![p, q]);
        let v = b.constant(&[
            (MixedWord::odd(CHI1), -Scalar::i()),
            (MixedWord::odd(CHI2), Scalar::one()),
        ]);
        b.bracket(p, q, v);
    }
    let pairs: Vec<(u16, u16)> = (0..basis.len() as u16).map(|i| (2 * i, 2 * i + 1)).collect();
    for (p, q) in pairs {
        for g in [p, q] {
            let d1 = b.derived_element(g, 0, crate::formal::D1).scale(&Scalar::i());
            b.rule(g, D2, d1);
        }
    }
    b.build()
}

/// Small expression kit used to write down the catalog vectors.
pub(crate) struct Kit<'a> {
    pub alg: &'a Algebra,
}

impl<'a> Kit<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        Kit { alg }
    }

    pub fn g(&self, name: &str) -> Element {
        self.alg.gen(name).expect("catalog generator")
    }

    pub fn del(&self, e: &Element) -> Element {
        self.alg.apply_op_unchecked(e, TransOp::Del)
    }

    pub fn d(&self, i: u8, e: &Element) -> Element {
        self.alg.apply_op_unchecked(e, TransOp::D(i))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.alg.np(a, b)
    }

    pub fn c(&self, n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }
}

/// Names of the catalog vectors available on algebras of this kind.
pub fn catalog_names(kind: Kind) -> &'static [&'static str] {
    match kind {
        Kind::SusyChargedFermion => &["T_st", "T_sh", "T_ghost", "J_st", "J_ghost", "J_sh", "d"],
        Kind::BcBetaGamma => &["L_st", "G_st", "L_sh", "G_sh", "Gp_sh", "Gm_sh", "Jz_sh"],
        Kind::ChargedFermion => &["L_st", "G_st"],
        Kind::N2BcBetaGamma => &["P_sh"],
        Kind::Custom => &[],
    }
}

/// Build a named catalog vector in `alg`.
pub fn vector(alg: &Algebra, name: &str, params: &Params) -> Result<Element, Error> {
    let k = Kit::new(alg);
    let mut out = Element::zero().with_alg(Some(alg.id));
    let unknown = || Error::UnknownVector(format!("{name} on {}", alg.name));
    match (alg.kind, name) {
        (Kind::SusyChargedFermion, _) => {
            for be in &alg.basis {
                let t = params.shift(&be.name);
                let t1 = t.add_ref(&Scalar::one());
                let p = k.alg.gen_element(be.gens[0]);
                let q = k.alg.gen_element(be.gens[1]);
                let dpq = k.mul(&k.del(&p), &q);
                let pdq = k.mul(&p, &k.del(&q));
                let dd = k.mul(&k.d(1, &p), &k.d(1, &q));
                let (dp_q, p_dq) = if be.odd {
                    (k.mul(&k.d(1, &q), &p), k.mul(&q, &k.d(1, &p)))
                } else {
                    (k.mul(&k.d(1, &p), &q), k.mul(&p, &k.d(1, &q)))
                };
                let term = match name {
                    "T_st" => if be.odd { pdq.add(&dd) } else { dpq.add(&dd) },
                    "T_sh" => {
                        let (x, y) = if be.odd { (t.clone(), t1.clone()) } else { (t1.clone(), t.clone()) };
                        dpq.scale(&x).add(&pdq.scale(&y)).add(&dd)
                    }
                    "T_ghost" => k.del(&k.mul(&p, &q)).scale(&t),
                    "J_st" => dp_q,
                    "J_ghost" => dp_q.add(&p_dq).scale(&t),
                    "J_sh" => dp_q.add(&p_dq.add(&dp_q).scale(&t)),
                    "d" => dd,
                    _ => return Err(unknown()),
                };
                out.add_assign(&term);
            }
        }
        (Kind::BcBetaGamma, _) => {
            for be in &alg.basis {
                let t = params.shift(&be.name);
                let [g, c, b, beta] = [0, 1, 2, 3].map(|i| k.alg.gen_element(be.gens[i]));
                let half = k.c(1, 2);
                let one = Scalar::one();
                let term = match name {
                    "L_st" => k
                        .mul(&c, &k.del(&b))
                        .scale(&-one.clone())
                        .add(&k.mul(&k.del(&c), &b))
                        .add(&k.mul(&k.del(&g), &beta).scale(&Scalar::from_int(2)))
                        .scale(&half),
                    "G_st" => k.mul(&c, &beta).add(&k.mul(&k.del(&g), &b)),
                    "L_sh" => k
                        .mul(&c, &k.del(&b))
                        .scale(&t.add_ref(&-one.clone()))
                        .add(&k.mul(&k.del(&c), &b).scale(&t.add_ref(&one)))
                        .add(&k.mul(&g, &k.del(&beta)).scale(&t))
                        .add(&k.mul(&k.del(&g), &beta).scale(&t.add_ref(&Scalar::from_int(2))))
                        .scale(&half),
                    "G_sh" => k
                        .mul(&g, &k.del(&b))
                        .scale(&t)
                        .add(&k.mul(&k.del(&g), &b).scale(&t.add_ref(&one)))
                        .add(&k.mul(&c, &beta)),
                    "Gp_sh" => k.mul(&c, &beta),
                    "Gm_sh" => k
                        .mul(&k.del(&g), &b)
                        .scale(&t.add_ref(&one))
                        .add(&k.mul(&g, &k.del(&b)).scale(&t)),
                    "Jz_sh" => k.mul(&c, &b).scale(&t.add_ref(&one)).add(&k.mul(&g, &beta).scale(&t)),
                    _ => return Err(unknown()),
                };
                out.add_assign(&term);
            }
        }
        (Kind::ChargedFermion, "L_st") | (Kind::ChargedFermion, "G_st") if alg.name == "osp12" => {
            let ph = k.g("phi_h");
            let pbh = k.g("phibar_h");
            let p1 = k.g("phi_1");
            let pb1 = k.g("phibar_1");
            out = if name == "L_st" {
                k.mul(&pbh, &k.del(&ph))
                    .scale(&k.c(-1, 2))
                    .add(&k.mul(&k.del(&pbh), &ph).scale(&k.c(1, 2)))
                    .add(&k.mul(&k.del(&p1), &pb1))
            } else {
                k.mul(&pbh, &pb1).add(&k.mul(&k.del(&p1), &ph))
            };
        }
        (Kind::N2BcBetaGamma, "P_sh") => {
            for be in &alg.basis {
                let t = params.shift(&be.name);
                let t1 = t.add_ref(&Scalar::one());
                let p = k.alg.gen_element(be.gens[0]);
                let q = k.alg.gen_element(be.gens[1]);
                let (x, y) = if be.odd { (q, p) } else { (p, q) };
                let term = k.mul(&k.d(1, &x), &y).scale(&t1).add(&k.mul(&x, &k.d(1, &y)).scale(&t));
                out.add_assign(&term.scale(&-Scalar::i()));
            }
        }
        _ => return Err(unknown()),
    }
    Ok(out)
}
