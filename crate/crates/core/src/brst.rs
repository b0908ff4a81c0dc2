//! Charge grading, the BRST operator Q and its homotopy partner H on the SUSY
//! charged free fermions.
//!
//! All operators act through mode extraction on the bracket engine:
//! Q = d_(0|1) with d = Σ :Dφ_a Dφ^ā:, H = (T_sh − d)_(0|1), and the charge of v is
//! its eigenvalue under J_sh_(0|1).

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Kind};
use crate::coeff::{Rational, Scalar};
use crate::elements::Element;
use crate::error::Error;
use crate::fields::{vector, Params};
use crate::formal::{Sector, CHI1};
use crate::verify::scalar_ratio;

#[derive(Clone, Debug, PartialEq)]
pub struct ChargeReport {
    pub eigenvalue: Scalar,
    pub is_eigenvector: bool,
    pub image: Element,
}

/// The vectors T_sh, J_sh and d for one choice of shift parameters.
pub struct Brst<'a> {
    pub alg: &'a Algebra,
    pub t_sh: Element,
    pub j_sh: Element,
    pub d: Element,
}

impl<'a> Brst<'a> {
    pub fn new(alg: &'a Algebra, params: &Params) -> Result<Self, Error> {
        if alg.sector != Sector::N1 {
            return Err(Error::SectorMismatch { expected: 1, found: alg.sector.n() });
        }
        if alg.kind != Kind::SusyChargedFermion {
            return Err(Error::Eval(format!("{} is not a SUSY charged fermion algebra", alg.name)));
        }
        Ok(Brst {
            alg,
            t_sh: vector(alg, "T_sh", params)?,
            j_sh: vector(alg, "J_sh", params)?,
            d: vector(alg, "d", params)?,
        })
    }

    pub fn charge_report(&self, v: &Element) -> Result<ChargeReport, Error> {
        let image = self.alg.mode_action(&self.j_sh, 0, CHI1, v)?;
        if v.is_zero() {
            return Ok(ChargeReport { eigenvalue: Scalar::zero(), is_eigenvector: image.is_zero(), image });
        }
        Ok(match scalar_ratio(&image, v) {
            Some(r) => ChargeReport { eigenvalue: r, is_eigenvector: true, image },
            None => ChargeReport { eigenvalue: Scalar::zero(), is_eigenvector: false, image },
        })
    }

    /// Eigenvalue of J_sh_(0|1) on `v`; the image is the witness when there is none.
    pub fn charge_of(&self, v: &Element) -> Result<Scalar, Error> {
        let r = self.charge_report(v)?;
        if r.is_eigenvector {
            Ok(r.eigenvalue)
        } else {
            Err(Error::NotEigenvector(format!(
                "J_(0|1) {} = {}",
                self.alg.element_text(v),
                self.alg.element_text(&r.image)
            )))
        }
    }

    pub fn q(&self, v: &Element) -> Result<Element, Error> {
        self.alg.mode_action(&self.d, 0, CHI1, v)
    }

    /// ½(T_sh_(0|1) − J_sh_(0|0)) v.
    pub fn q_defining(&self, v: &Element) -> Result<Element, Error> {
        let t = self.alg.mode_action(&self.t_sh, 0, CHI1, v)?;
        let j = self.alg.mode_action(&self.j_sh, 0, 0, v)?;
        Ok(t.sub(&j).scale(&Scalar::from_ratio(1, 2)))
    }

    pub fn h(&self, v: &Element) -> Result<Element, Error> {
        self.alg.mode_action(&self.t_sh.sub(&self.d), 0, CHI1, v)
    }

    /// ½(T_sh_(0|1) + J_sh_(0|0)) v.
    pub fn h_defining(&self, v: &Element) -> Result<Element, Error> {
        let t = self.alg.mode_action(&self.t_sh, 0, CHI1, v)?;
        let j = self.alg.mode_action(&self.j_sh, 0, 0, v)?;
        Ok(t.add(&j).scale(&Scalar::from_ratio(1, 2)))
    }

    /// Both forms of Q and of H agree on every vector of the pool.
    pub fn check_forms(&self, pool: &[Element]) -> Result<(), Error> {
        for v in pool {
            let pairs = [("Q", self.q(v)?, self.q_defining(v)?), ("H", self.h(v)?, self.h_defining(v)?)];
            for (name, a, b) in pairs {
                if !a.sub(&b).is_zero() {
                    return Err(Error::Eval(format!(
                        "{name} forms disagree on {}: {} vs {}",
                        self.alg.element_text(v),
                        self.alg.element_text(&a),
                        self.alg.element_text(&b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Q(Q(v)) = 0 on the pool; the first failure is the witness.
    pub fn check_q_squared(&self, pool: &[Element]) -> Result<usize, Error> {
        self.check_square(pool, |v| self.q(v), "Q")
    }

    pub fn check_h_squared(&self, pool: &[Element]) -> Result<usize, Error> {
        self.check_square(pool, |v| self.h(v), "H")
    }

    fn check_square(&self, pool: &[Element], f: impl Fn(&Element) -> Result<Element, Error>, name: &str) -> Result<usize, Error> {
        for v in pool {
            let w = f(&f(v)?)?;
            if !w.is_zero() {
                return Err(Error::Eval(format!("{name}^2 {} = {}", self.alg.element_text(v), self.alg.element_text(&w))));
            }
        }
        Ok(pool.len())
    }

    /// Buckets the pool by charge. Needs numeric shifts so charges are comparable.
    pub fn charge_decomposition(&self, pool: &[Element]) -> Result<BTreeMap<Rational, Vec<Element>>, Error> {
        let mut out: BTreeMap<Rational, Vec<Element>> = BTreeMap::new();
        for v in pool {
            let c = self.charge_of(v)?;
            let g = c
                .as_constant()
                .filter(|g| g.im == Rational::from_integer(0.into()))
                .ok_or_else(|| Error::Eval(format!("charge {} is not a rational number", c.to_text())))?;
            out.entry(g.re).or_default().push(v.clone());
        }
        Ok(out)
    }

    /// Charge shift of `op` on an eigenvector: charge(op v) − charge(v), if op v ≠ 0.
    pub fn charge_shift(&self, v: &Element, op: impl Fn(&Element) -> Result<Element, Error>) -> Result<Option<Scalar>, Error> {
        let w = op(v)?;
        if w.is_zero() {
            return Ok(None);
        }
        let a = self.charge_of(v)?;
        let b = self.charge_of(&w)?;
        Ok(Some(&b - &a))
    }
}

/// Which product rule the computed charges follow for :u v:.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductRuleReport {
    pub samples: usize,
    pub additive: usize,
    pub signed: usize,
}

impl Brst<'_> {
    /// Compares charge(:u v:) with m_u + m_v and with m_u + (−1)^{p(u)} m_v over all
    /// pairs of eigenvectors from `pool` whose product is nonzero.
    pub fn product_rule(&self, pool: &[Element]) -> Result<ProductRuleReport, Error> {
        let mut rep = ProductRuleReport { samples: 0, additive: 0, signed: 0 };
        for u in pool {
            for v in pool {
                let uv = self.alg.normal_product(u, v)?;
                if uv.is_zero() {
                    continue;
                }
                let (Ok(mu), Ok(mv), Ok(muv)) = (self.charge_of(u), self.charge_of(v), self.charge_of(&uv)) else {
                    continue;
                };
                rep.samples += 1;
                if muv == mu.add_ref(&mv) {
                    rep.additive += 1;
                }
                let odd = u.parity() == Some(1);
                let signed = if odd { &mu - &mv } else { mu.add_ref(&mv) };
                if muv == signed {
                    rep.signed += 1;
                }
            }
        }
        Ok(rep)
    }
}
