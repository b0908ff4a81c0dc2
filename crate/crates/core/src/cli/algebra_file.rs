//! Algebra definition files.
//!
//! A file either names a catalog system
//!
//! ```json
//! { "schema": "scvertex/1", "name": "F", "kind": "susy_cff",
//!   "basis": [{ "name": "a", "odd": false }, { "name": "b", "odd": true }] }
//! ```
//!
//! or spells out generators, brackets between generators and quotient rules,
//! with values written in script syntax:
//!
//! ```json
//! { "schema": "scvertex/1", "name": "vir", "sector": 0, "params": ["c"],
//!   "generators": [{ "name": "L", "odd": false }],
//!   "brackets": [{ "left": "L", "right": "L", "value": "d(L) + 2*lambda*L + c/12*lambda^3" }] }
//! ```
//!
//! Missing reversed brackets are filled in by skew-symmetry. Products inside
//! values must already be in canonical order, since they are read before the
//! table exists.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use super::eval::{eval_in, to_elem, to_poly};
use crate::algebra::{Algebra, AlgebraBuilder, Kind};
use crate::coeff::Scalar;
use crate::elements::{Element, LambdaElement};
use crate::error::Error;
use crate::fields;
use crate::formal::{dbit, Sector};
use crate::render::SCHEMA;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub schema: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<BasisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sector: Option<u8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GenSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rules: Vec<RuleSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisSpec {
    pub name: String,
    #[serde(default)]
    pub odd: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GenSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latex: Option<String>,
    #[serde(default)]
    pub odd: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BracketSpec {
    pub left: String,
    pub right: String,
    pub value: String,
}

/// `D^mask generator ↦ value`, mask given as the list of D indices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RuleSpec {
    pub generator: String,
    #[serde(rename = "D")]
    pub d: Vec<u8>,
    pub value: String,
}

pub fn load(path: &Path) -> Result<Arc<Algebra>, Error> {
    load_with(path, &[])
}

/// Loads with some of the file's `params` fixed to values.
pub fn load_with(path: &Path, fixed: &[(String, Scalar)]) -> Result<Arc<Algebra>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Eval(e.to_string()))?;
    let f: AlgebraFile = serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
    build_with(&f, fixed)
}

pub fn from_json_str(text: &str) -> Result<Arc<Algebra>, Error> {
    let f: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    build(&f)
}

pub fn build(f: &AlgebraFile) -> Result<Arc<Algebra>, Error> {
    build_with(f, &[])
}

pub fn build_with(f: &AlgebraFile, fixed: &[(String, Scalar)]) -> Result<Arc<Algebra>, Error> {
    if f.schema != SCHEMA {
        return Err(Error::Json(format!("schema `{}`, expected `{SCHEMA}`", f.schema)));
    }
    if let Some(kind) = &f.kind {
        let basis: Vec<(&str, bool)> = f.basis.iter().map(|b| (b.name.as_str(), b.odd)).collect();
        return match kind.as_str() {
            "susy_cff" => fields::susy_charged_fermions(&basis),
            "cff" => fields::charged_free_fermions(&f.name, &basis),
            "bcbg" => fields::bc_beta_gamma(&basis.iter().map(|b| b.0).collect::<Vec<_>>()),
            "n2_bcbg" => fields::n2_bc_beta_gamma(&basis),
            "osp12" => fields::osp12_fermions(),
            k => Err(Error::Json(format!("unknown kind `{k}`"))),
        };
    }
    let sector = f
        .sector
        .and_then(Sector::from_n)
        .ok_or_else(|| Error::Json("a custom algebra needs `sector` 0, 1 or 2".into()))?;
    let declare = |b: &mut AlgebraBuilder| {
        for g in &f.generators {
            b.generator(&g.name, g.latex.as_deref().unwrap_or(&g.name), g.odd);
        }
    };
    let mut draft = AlgebraBuilder::new(&f.name, sector, Kind::Custom);
    declare(&mut draft);
    let draft = draft.build()?;
    let params: Vec<(String, Scalar)> = f
        .params
        .iter()
        .map(|p| {
            let v = fixed.iter().rev().find(|(n, _)| n == p).map(|(_, v)| v.clone());
            (p.clone(), v.unwrap_or_else(|| Scalar::param(p)))
        })
        .collect();

    let mut b = AlgebraBuilder::new(&f.name, sector, Kind::Custom);
    declare(&mut b);
    let id = b.id();
    let gen = |name: &str| draft.lookup(name).ok_or_else(|| Error::UnknownGenerator(name.into()));
    let move_elem = |e: &Element| {
        let mut out = Element::zero().with_alg(Some(id));
        for (m, s) in e.terms() {
            out.add_assign(&Element::from_monomial(id, m.clone(), s.clone()));
        }
        out
    };
    for br in &f.brackets {
        let (l, r) = (gen(&br.left)?, gen(&br.right)?);
        let v = to_poly(&draft, eval_in(&draft, &br.value, &params)?);
        let moved = LambdaElement::from_terms(v.iter().map(|(w, e)| (*w, move_elem(e))));
        b.bracket(l, r, moved);
    }
    for rule in &f.rules {
        let g = gen(&rule.generator)?;
        let mut mask = 0;
        for &i in &rule.d {
            if i == 0 || i > sector.n() {
                return Err(Error::BadOperator(format!("D{i}")));
            }
            mask |= dbit(i);
        }
        let rhs = to_elem(&draft, eval_in(&draft, &rule.value, &params)?)?;
        b.rule(g, mask, move_elem(&rhs));
    }
    b.build()
}

/// Custom-format description of any algebra; loading it gives the same brackets.
pub fn export(alg: &Algebra) -> AlgebraFile {
    let generators = alg.gens.iter().map(|g| GenSpec { name: g.name.clone(), latex: Some(g.latex.clone()), odd: g.odd }).collect();
    let mut keys: Vec<&(u16, u16)> = alg.table.keys().collect();
    keys.sort();
    let brackets = keys
        .into_iter()
        .map(|k| BracketSpec {
            left: alg.gens[k.0 as usize].name.clone(),
            right: alg.gens[k.1 as usize].name.clone(),
            value: alg.lambda_text(&alg.table[k]),
        })
        .collect();
    let rules = alg
        .rules
        .iter()
        .map(|r| RuleSpec {
            generator: alg.gens[r.gen as usize].name.clone(),
            d: (1..=2).filter(|&i| r.mask & dbit(i) != 0).collect(),
            value: alg.element_text(&r.rhs),
        })
        .collect();
    let mut params: Vec<String> = Vec::new();
    for v in alg.table.values() {
        for (_, e) in v.iter() {
            for (_, s) in e.terms() {
                for p in s.params() {
                    if !params.contains(&p.name().to_string()) {
                        params.push(p.name().to_string());
                    }
                }
            }
        }
    }
    AlgebraFile {
        schema: SCHEMA.into(),
        name: alg.name.clone(),
        kind: None,
        basis: vec![],
        sector: Some(alg.sector.n()),
        params,
        generators,
        brackets,
        rules,
    }
}

pub fn export_json(alg: &Algebra) -> Json {
    serde_json::to_value(export(alg)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{MixedWord, CHI1, CHI2};

    fn same_brackets(a: &Algebra, b: &Algebra) {
        assert_eq!(a.gens, b.gens);
        for x in 0..a.gens.len() as u16 {
            for y in 0..a.gens.len() as u16 {
                let u = a.bracket(&a.gen_element(x), &a.gen_element(y)).unwrap();
                let v = b.bracket(&b.gen_element(x), &b.gen_element(y)).unwrap();
                assert_eq!(a.lambda_text(&u), b.lambda_text(&v));
            }
        }
    }

    #[test]
    fn export_round_trip() {
        for alg in [
            fields::susy_charged_fermions(&[("a", false), ("b", true)]).unwrap(),
            fields::n2_bc_beta_gamma(&[("a", false)]).unwrap(),
            fields::bc_beta_gamma(&["a"]).unwrap(),
        ] {
            let text = export_json(&alg).to_string();
            let back = from_json_str(&text).unwrap();
            same_brackets(&alg, &back);
        }
    }

    #[test]
    fn quotient_rule_from_file() {
        let alg = fields::n2_bc_beta_gamma(&[("a", false)]).unwrap();
        let back = from_json_str(&export_json(&alg).to_string()).unwrap();
        let phi = back.gen("Phi_a").unwrap();
        let d2 = back.apply_translation(&phi, crate::elements::TransOp::D(2)).unwrap();
        assert_eq!(back.element_text(&d2), "i*D1(Phi_a)");
        let v = back.bracket(&phi, &back.gen("Phibar_a").unwrap()).unwrap();
        assert_eq!(v.coefficient(&MixedWord::odd(CHI2)), back.vacuum());
        assert_eq!(v.coefficient(&MixedWord::odd(CHI1)), back.vacuum().scale(&-Scalar::i()));
    }

    #[test]
    fn virasoro_from_file() {
        let text = r#"{ "schema": "scvertex/1", "name": "vir", "sector": 0, "params": ["c"],
            "generators": [{ "name": "L" }],
            "brackets": [{ "left": "L", "right": "L", "value": "d(L) + 2*lambda*L + c/12*lambda^3" }] }"#;
        let alg = from_json_str(text).unwrap();
        let l = alg.gen("L").unwrap();
        assert_eq!(crate::verify::check_virasoro(&alg, &l).unwrap(), Scalar::param("c"));
    }

    #[test]
    fn fixed_params_are_substituted() {
        let text = r#"{ "schema": "scvertex/1", "name": "vir", "sector": 0, "params": ["c"],
            "generators": [{ "name": "L" }],
            "brackets": [{ "left": "L", "right": "L", "value": "d(L) + 2*lambda*L + c/12*lambda^3" }] }"#;
        let f: AlgebraFile = serde_json::from_str(text).unwrap();
        let half = Scalar::from_ratio(1, 2);
        let alg = build_with(&f, &[("c".into(), half.clone())]).unwrap();
        let l = alg.gen("L").unwrap();
        assert_eq!(crate::verify::check_virasoro(&alg, &l).unwrap(), half);
    }

    #[test]
    fn broken_jacobi_is_rejected() {
        let text = r#"{ "schema": "scvertex/1", "name": "bad", "sector": 0,
            "generators": [{ "name": "L" }],
            "brackets": [{ "left": "L", "right": "L", "value": "d(L) + 3*lambda*L" }] }"#;
        assert!(matches!(from_json_str(text), Err(Error::Axiom(_))));
    }

    #[test]
    fn schema_is_checked() {
        let text = r#"{ "schema": "other/9", "name": "x", "kind": "susy_cff", "basis": [] }"#;
        assert!(matches!(from_json_str(text), Err(Error::Json(_))));
    }
}
