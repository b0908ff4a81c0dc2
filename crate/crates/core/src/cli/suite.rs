//! Built-in verification suites.
//!
//! `paper` runs the shipped script of golden brackets and theorem checks, one
//! line per section. `axioms`, `brst` and `reduce` are randomized or exhaustive
//! property checks driven by `--seed` and spread over `--jobs` threads.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use super::eval::{eval_in, run_script, to_elem, Settings};
use crate::algebra::Algebra;
use crate::brst::Brst;
use crate::coeff::Scalar;
use crate::elements::{Element, RawExpr, TransOp};
use crate::error::Error;
use crate::fields::{self, vector, Params};
use crate::reduce::{components_map_nk1, components_map_nk2, nonsusy_bracket_via_components, N2Reduction};
use crate::sample::{random_monomial, random_tree, rng};

pub const SUITES: &[&str] = &["paper", "axioms", "brst", "reduce"];

pub const PAPER_SUITE: &str = include_str!("../../../../scripts/paper_suite.scv");

#[derive(Clone, Debug)]
pub struct SuiteLine {
    pub name: String,
    pub ok: bool,
    pub checks: usize,
    pub detail: String,
    pub witness: Option<Json>,
}

impl SuiteLine {
    pub fn text(&self) -> String {
        if self.ok {
            format!("ok    {} ({} checks)", self.name, self.checks)
        } else {
            format!("FAIL  {}: {}", self.name, self.detail)
        }
    }

    pub fn to_json(&self) -> Json {
        json!({ "name": self.name, "ok": self.ok, "checks": self.checks, "detail": self.detail, "witness": self.witness })
    }
}

/// Outcome of one property: number of checks, or the first counterexample.
type Check = Result<usize, (String, Json)>;

fn line(name: &str, r: Result<Check, Error>) -> SuiteLine {
    let (ok, checks, detail, witness) = match r {
        Ok(Ok(n)) => (true, n, String::new(), None),
        Ok(Err((d, w))) => (false, 0, d, Some(w)),
        Err(e) => (false, 0, format!("error: {e}"), Some(json!({ "error": e.to_string() }))),
    };
    SuiteLine { name: name.into(), ok, checks, detail, witness }
}

pub fn run(name: &str, settings: &Settings) -> Result<Vec<SuiteLine>, Error> {
    let go = || match name {
        "paper" => paper(settings),
        "axioms" => axioms(settings.seed),
        "brst" => brst(settings.seed),
        "reduce" => reduce(settings.seed),
        _ => Err(Error::Eval(format!("unknown suite `{name}`"))),
    };
    match settings.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Eval(e.to_string()))?
            .install(go),
        None => go(),
    }
}

fn paper(settings: &Settings) -> Result<Vec<SuiteLine>, Error> {
    let report = run_script(PAPER_SUITE, settings)?;
    let mut out: Vec<SuiteLine> = Vec::new();
    for o in &report.outcomes {
        let name = o.section.clone().unwrap_or_else(|| "unsectioned".into());
        if out.last().map(|l| &l.name) != Some(&name) {
            out.push(SuiteLine { name, ok: true, checks: 0, detail: String::new(), witness: None });
        }
        let l = out.last_mut().expect("pushed");
        l.checks += 1;
        if !o.ok && l.ok {
            l.ok = false;
            l.detail = format!("line {}: {} -> {}", o.line, o.command, o.text);
            l.witness = Some(o.to_json());
        }
    }
    Ok(out)
}

fn tuple_seed(seed: u64, tag: u64, k: u64) -> u64 {
    seed ^ (tag << 40) ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// One algebra per sector for the randomized axiom checks.
pub fn axiom_algebras() -> Result<Vec<Arc<Algebra>>, Error> {
    Ok(vec![
        fields::bc_beta_gamma(&["a"])?,
        fields::susy_charged_fermions(&[("a", false), ("b", true)])?,
        fields::n2_bc_beta_gamma(&[("a", false)])?,
    ])
}

pub const AXIOM_SAMPLES: u64 = 200;

/// Skew-symmetry on (x, y) and Jacobi on (x, y, z) for seeded random monomials.
pub fn check_bracket_axioms(alg: &Algebra, seed: u64, samples: u64) -> Check {
    let tag = alg.sector.n() as u64 + 1;
    let failures: Vec<(String, Json)> = (0..samples)
        .into_par_iter()
        .filter_map(|k| {
            let mut r = rng(tuple_seed(seed, tag, k));
            let [x, y, z] = [0; 3].map(|_| random_monomial(alg, &mut r, 2, 2));
            let txt = |e: &Element| alg.element_text(e);
            let error = |e: Error| Some((format!("engine error: {e}"), json!({ "sample": k, "error": e.to_string() })));
            let skew = match alg.skew_residual(&x, &y) {
                Ok(v) => v,
                Err(e) => return error(e),
            };
            if !skew.is_zero() {
                let w = json!({ "sample": k, "x": txt(&x), "y": txt(&y), "residual": alg.lambda_text(&skew) });
                return Some((format!("skew-symmetry fails for {}, {}", txt(&x), txt(&y)), w));
            }
            let jac = match alg.jacobi_residual(&x, &y, &z) {
                Ok(v) => v,
                Err(e) => return error(e),
            };
            if !jac.is_zero() {
                let w = json!({ "sample": k, "x": txt(&x), "y": txt(&y), "z": txt(&z), "residual": alg.lambda_text(&jac) });
                return Some((format!("Jacobi fails for {}, {}, {}", txt(&x), txt(&y), txt(&z)), w));
            }
            None
        })
        .collect();
    match failures.into_iter().next() {
        Some(f) => Err(f),
        None => Ok(2 * samples as usize),
    }
}

fn derived_tree(alg: &Algebra, dg: &crate::elements::DerivedGen) -> RawExpr {
    let mut t = RawExpr::gen(&alg.gens[dg.gen as usize].name);
    for i in [2u8, 1] {
        if dg.dmask & crate::formal::dbit(i) != 0 {
            t = RawExpr::apply(TransOp::D(i), t);
        }
    }
    for _ in 0..dg.del {
        t = RawExpr::apply(TransOp::Del, t);
    }
    t
}

/// An expression tree whose normal form is `e` read term by term.
pub fn tree_of(alg: &Algebra, e: &Element) -> RawExpr {
    RawExpr::Sum(
        e.terms()
            .map(|(m, s)| RawExpr::scaled(s.clone(), RawExpr::nested(m.iter().map(|dg| derived_tree(alg, dg)).collect())))
            .collect(),
    )
}

/// The same expression regrouped using only linearity: sums reversed and
/// re-bracketed, scalars moved into the right factor, products and derivations
/// distributed over sums.
pub fn regroup(t: &RawExpr) -> RawExpr {
    match t {
        RawExpr::Sum(xs) => {
            let mut it = xs.iter().rev().map(regroup);
            let first = it.next().unwrap_or(RawExpr::Sum(vec![]));
            it.fold(first, |acc, x| RawExpr::Sum(vec![x, acc]))
        }
        RawExpr::Scaled(s, x) => match &**x {
            RawExpr::Product(a, b) => RawExpr::prod(regroup(a), regroup(&RawExpr::scaled(s.clone(), (**b).clone()))),
            RawExpr::Sum(ys) => regroup(&RawExpr::Sum(ys.iter().map(|y| RawExpr::scaled(s.clone(), y.clone())).collect())),
            _ => RawExpr::scaled(s.clone(), regroup(x)),
        },
        RawExpr::Product(a, b) => match &**a {
            RawExpr::Sum(ys) => regroup(&RawExpr::Sum(ys.iter().map(|y| RawExpr::prod(y.clone(), (**b).clone())).collect())),
            _ => RawExpr::prod(regroup(a), regroup(b)),
        },
        RawExpr::Apply(op, x) => match &**x {
            RawExpr::Sum(ys) => regroup(&RawExpr::Sum(ys.iter().map(|y| RawExpr::apply(*op, y.clone())).collect())),
            RawExpr::Scaled(s, y) => RawExpr::scaled(s.clone(), regroup(&RawExpr::apply(*op, (**y).clone()))),
            _ => RawExpr::apply(*op, regroup(x)),
        },
        _ => t.clone(),
    }
}

/// Normalization is idempotent and independent of how the tree is grouped.
pub fn check_normalization(alg: &Algebra, seed: u64, samples: u64) -> Result<Check, Error> {
    let tag = 16 + alg.sector.n() as u64;
    let results: Vec<Result<Option<(String, Json)>, Error>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut r = rng(tuple_seed(seed, tag, k));
            let t = random_tree(alg, &mut r, 4);
            let e = alg.normalize(&t)?;
            let again = alg.normalize(&tree_of(alg, &e))?;
            if again != e {
                let w = json!({ "sample": k, "first": alg.element_text(&e), "second": alg.element_text(&again) });
                return Ok(Some(("normalizing twice changes the result".to_string(), w)));
            }
            let other = alg.normalize(&regroup(&t))?;
            if other != e {
                let w = json!({ "sample": k, "tree": format!("{t:?}"), "first": alg.element_text(&e), "regrouped": alg.element_text(&other) });
                return Ok(Some(("regrouping the tree changes the normal form".to_string(), w)));
            }
            Ok(None)
        })
        .collect();
    for r in results {
        if let Some(f) = r? {
            return Ok(Err(f));
        }
    }
    Ok(Ok(2 * samples as usize))
}

fn axioms(seed: u64) -> Result<Vec<SuiteLine>, Error> {
    let mut out = Vec::new();
    for alg in axiom_algebras()? {
        let n = alg.sector.n();
        out.push(line(
            &format!("skew-symmetry and Jacobi on random monomials, sector {n}"),
            Ok(check_bracket_axioms(&alg, seed, AXIOM_SAMPLES)),
        ));
        out.push(line(
            &format!("normalization idempotent and regrouping-independent, sector {n}"),
            check_normalization(&alg, seed, AXIOM_SAMPLES),
        ));
    }
    Ok(out)
}

/// Generators with D applied 0..=3 times: φ, Dφ, ∂φ, D∂φ.
pub fn towers(alg: &Algebra, order: u32) -> Vec<Element> {
    let mut out = Vec::new();
    for g in alg.generators() {
        let mut x = g;
        for _ in 0..=order {
            out.push(x.clone());
            x = alg.apply_translation(&x, TransOp::D(1)).expect("sector 1");
        }
    }
    out
}

pub fn brst_pool(alg: &Algebra, seed: u64, random: usize) -> Vec<Element> {
    let mut pool = towers(alg, 3);
    let mut r = rng(tuple_seed(seed, 32, 0));
    for _ in 0..random {
        pool.push(random_monomial(alg, &mut r, 3, 2));
    }
    pool
}

fn first_failure(pool: &[Element], f: impl Fn(&Element) -> Result<Option<(String, Json)>, Error> + Sync + Send) -> Result<Check, Error> {
    let results: Vec<_> = pool.par_iter().map(&f).collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Err(w));
        }
    }
    Ok(Ok(pool.len()))
}

/// Expected charge of each generator: φ_a ↦ t_a, φ^ā ↦ −t_a−1 for even a, swapped for odd a.
pub fn expected_charges(alg: &Algebra) -> Vec<(Element, Scalar)> {
    let mut out = Vec::new();
    for b in &alg.basis {
        let t = Scalar::param(&fields::param_name(&b.name));
        let t1 = -(&t + &Scalar::one());
        let (m_phi, m_bar) = if b.odd { (t1, t) } else { (t.clone(), t1) };
        out.push((alg.gen_element(b.gens[0]), m_phi));
        out.push((alg.gen_element(b.gens[1]), m_bar));
    }
    out
}

fn brst(seed: u64) -> Result<Vec<SuiteLine>, Error> {
    let alg = fields::susy_charged_fermions(&[("a", false), ("b", true)])?;
    let b = Brst::new(&alg, &Params::symbolic())?;
    let pool = brst_pool(&alg, seed, 100);
    let txt = |e: &Element| alg.element_text(e);
    let square = |f: &(dyn Fn(&Element) -> Result<Element, Error> + Sync), name: &'static str| {
        first_failure(&pool, |v| {
            let w = f(&f(v)?)?;
            Ok((!w.is_zero()).then(|| (format!("{name}^2 {} ≠ 0", txt(v)), json!({ "v": txt(v), "image": txt(&w) }))))
        })
    };
    let mut out = vec![
        line("Q^2 = 0 on generators, derivative towers to order 3 and 100 random monomials", square(&|v| b.q(v), "Q")),
        line("H^2 = 0 on the same pool", square(&|v| b.h(v), "H")),
    ];
    let table = (|| -> Result<Check, Error> {
        let want = expected_charges(&alg);
        for (g, m) in &want {
            let got = b.charge_of(g)?;
            if &got != m {
                return Ok(Err((
                    format!("charge of {} is {}, expected {}", txt(g), got.to_text(), m.to_text()),
                    json!({ "field": txt(g), "charge": got.to_text(), "expected": m.to_text() }),
                )));
            }
        }
        Ok(Ok(want.len()))
    })();
    out.push(line("charges of the generators", table));
    let shifts = first_failure(&pool, |v| {
        for (op, want, name) in [(0, 1, "Q"), (1, -1, "H")] {
            let f = |x: &Element| if op == 0 { b.q(x) } else { b.h(x) };
            if let Some(s) = b.charge_shift(v, f)? {
                if s != Scalar::from_int(want) {
                    return Ok(Some((
                        format!("{name} shifts the charge of {} by {}", txt(v), s.to_text()),
                        json!({ "v": txt(v), "operator": name, "shift": s.to_text() }),
                    )));
                }
            }
        }
        Ok(None)
    });
    out.push(line("Q raises the charge by 1 and H lowers it by 1", shifts));
    let names: Vec<&str> = alg.basis.iter().map(|x| x.name.as_str()).collect();
    let fixed: Vec<Brst> = [Scalar::zero(), Scalar::from_int(7), Scalar::from_ratio(-1, 2)]
        .into_iter()
        .map(|t| Brst::new(&alg, &Params::all(&names, t)))
        .collect::<Result<_, _>>()?;
    let indep = first_failure(&pool, |v| {
        let q = b.q(v)?;
        for other in &fixed {
            let q2 = other.q(v)?;
            if q2 != q {
                return Ok(Some((
                    format!("Q({}) depends on the shifts", txt(v)),
                    json!({ "v": txt(v), "symbolic": txt(&q), "specialized": txt(&q2) }),
                )));
            }
        }
        Ok(None)
    });
    out.push(line("Q does not depend on the shift parameters", indep));
    let forms = first_failure(&pool, |v| match b.check_forms(std::slice::from_ref(v)) {
        Ok(()) => Ok(None),
        Err(Error::Eval(m)) => Ok(Some((m.clone(), json!({ "v": txt(v), "reason": m })))),
        Err(e) => Err(e),
    });
    out.push(line("Q and H agree with their defining mode formulas", forms));
    Ok(out)
}

fn expect_pair(target: &Arc<Algebra>, got: &(Element, Element), body: &str, theta: &str) -> Result<Option<(String, Json)>, Error> {
    let want_body = to_elem(target, eval_in(target, body, &[])?)?;
    let want_theta = to_elem(target, eval_in(target, theta, &[])?)?;
    if got.0 == want_body && got.1 == want_theta {
        return Ok(None);
    }
    let (gb, gt) = (target.element_text(&got.0), target.element_text(&got.1));
    Ok(Some((
        format!("components ({gb}, {gt}), expected ({body}, {theta})"),
        json!({ "body": gb, "theta": gt, "expected_body": body, "expected_theta": theta }),
    )))
}

type Case<'a> = (&'a str, &'a str, &'a str);

fn component_cases(source: &Arc<Algebra>, target: &Arc<Algebra>, cases: &[Case], map: &crate::reduce::ComponentMap) -> Result<Check, Error> {
    for (src, body, theta) in cases {
        let v = to_elem(source, eval_in(source, src, &[])?)?;
        if let Some((d, mut w)) = expect_pair(target, &map.components(&v)?, body, theta)? {
            w["field"] = json!(src);
            return Ok(Err((format!("{src}: {d}"), w)));
        }
    }
    Ok(Ok(cases.len()))
}

const NK1_CASES: &[Case] = &[
    ("phi_a", "gamma_a", "c_a"),
    ("phibar_a", "b_a", "beta_a"),
    ("D(phi_a)", "c_a", "d(gamma_a)"),
    ("D(phibar_a)", "beta_a", "d(b_a)"),
    (":D(phi_a) D(phibar_a):", ":c_a beta_a:", ":d(gamma_a) beta_a: - :c_a d(b_a):"),
    (":d(phi_a) phibar_a:", ":d(gamma_a) b_a:", ":d(c_a) b_a: + :d(gamma_a) beta_a:"),
    (":phi_a d(phibar_a):", ":gamma_a d(b_a):", ":c_a d(b_a): + :gamma_a d(beta_a):"),
    ("phibar_b", "gamma_b", "c_b"),
    ("phi_b", "b_b", "beta_b"),
    (":phi_b d(phibar_b):", ":d(gamma_b) b_b:", ":d(c_b) b_b: + :d(gamma_b) beta_b:"),
    (":D(phi_b) D(phibar_b):", ":c_b beta_b:", ":d(gamma_b) beta_b: - :c_b d(b_b):"),
];

const NK2_CASES: &[Case] = &[
    ("Phi_a", "phi_a", "i*D(phi_a)"),
    (":D1(Phi_a) Phibar_a:", ":D(phi_a) phibar_a:", "-i*(:d(phi_a) phibar_a: + :D(phi_a) D(phibar_a):)"),
    (":Phi_a D1(Phibar_a):", ":phi_a D(phibar_a):", "-i*(:phi_a d(phibar_a): - :D(phi_a) D(phibar_a):)"),
    (":D1(Phibar_b) Phi_b:", ":D(phibar_b) phi_b:", "-i*(:phi_b d(phibar_b): + :D(phi_b) D(phibar_b):)"),
    (":Phibar_b D1(Phi_b):", ":phibar_b D(phi_b):", "-i*(:d(phi_b) phibar_b: - :D(phi_b) D(phibar_b):)"),
];

fn reduce(seed: u64) -> Result<Vec<SuiteLine>, Error> {
    let src = fields::susy_charged_fermions(&[("a", false), ("b", true)])?;
    let map = components_map_nk1(&src)?;
    let t = map.target.clone();
    let sym = Params::symbolic();
    let mut out = vec![line("superfield components of generators, derivatives and quadratic fields", component_cases(&src, &t, NK1_CASES, &map))];

    let vectors = (|| -> Result<Check, Error> {
        let pairs = [
            ("T_sh", vector(&t, "G_sh", &sym)?, vector(&t, "L_sh", &sym)?.scale(&Scalar::from_int(2))),
            ("J_sh", vector(&t, "Jz_sh", &sym)?, vector(&t, "Gm_sh", &sym)?.sub(&vector(&t, "Gp_sh", &sym)?)),
            ("T_st", vector(&t, "G_st", &sym)?, vector(&t, "L_st", &sym)?.scale(&Scalar::from_int(2))),
        ];
        for (name, body, theta) in &pairs {
            let got = map.components(&vector(&src, name, &sym)?)?;
            if &got.0 != body || &got.1 != theta {
                let w = json!({ "vector": name, "body": t.element_text(&got.0), "theta": t.element_text(&got.1) });
                return Ok(Err((format!("components of {name} differ"), w)));
            }
        }
        let gsum = vector(&t, "Gp_sh", &sym)?.add(&vector(&t, "Gm_sh", &sym)?);
        if gsum != pairs[0].1 {
            return Ok(Err(("G_sh is not G+ + G-".into(), json!({ "G_sh": t.element_text(&pairs[0].1) }))));
        }
        Ok(Ok(pairs.len() + 1))
    })();
    out.push(line("T_sh = (G+ + G-) + 2θL_sh, J_sh = J + θ(G- - G+), T_st = G_st + 2θL_st", vectors));

    let mut r = rng(tuple_seed(seed, 48, 0));
    let pool: Vec<Element> = (0..20).map(|_| random_monomial(&src, &mut r, 2, 2)).collect();
    let hom = first_failure(&pool, |u| {
        let cu = map.components(u)?;
        let du = map.components(&src.apply_translation(u, TransOp::D(1))?)?;
        let want = (cu.1.clone(), t.apply_translation(&cu.0, TransOp::Del)?);
        if du != want {
            return Ok(Some((format!("D does not act as (B, ∂A) on {}", src.element_text(u)), json!({ "u": src.element_text(u) }))));
        }
        for v in &pool[..5] {
            let uv = src.normal_product(u, v)?;
            let via = map.combine(&cu, &map.components(v)?);
            if map.components(&uv)? != via {
                let w = json!({ "u": src.element_text(u), "v": src.element_text(v) });
                return Ok(Some(("components of a product differ from the product of components".into(), w)));
            }
        }
        Ok(None)
    });
    out.push(line("components commute with D and with normally ordered products", hom));

    let mut basic = src.generators();
    for g in src.generators() {
        basic.push(src.apply_translation(&g, TransOp::D(1))?);
    }
    let consts = (|| -> Result<Check, Error> {
        let mut n = 0;
        for x in &basic {
            for y in &basic {
                let via = nonsusy_bracket_via_components(&map, x, y)?;
                let direct = t.bracket(&map.body(x)?, &map.body(y)?)?;
                n += 1;
                if via != direct {
                    let w = json!({ "x": src.element_text(x), "y": src.element_text(y), "via": t.lambda_text(&via), "direct": t.lambda_text(&direct) });
                    return Ok(Err(("χ-part reduction disagrees with the bc-βγ bracket".into(), w)));
                }
            }
        }
        let phi = src.gen("phi_a")?;
        let dbar = src.apply_translation(&src.gen("phibar_a")?, TransOp::D(1))?;
        let gb = nonsusy_bracket_via_components(&map, &phi, &dbar)?;
        if t.lambda_text(&gb) != "-1" {
            return Ok(Err(("[gamma λ beta] is not -1".into(), json!({ "value": t.lambda_text(&gb) }))));
        }
        Ok(Ok(n + 1))
    })();
    out.push(line("χ-parts of SUSY brackets give the bc-βγ structure constants", consts));

    let n2 = fields::n2_bc_beta_gamma(&[("a", false), ("b", true)])?;
    let m2 = components_map_nk2(&n2)?;
    let mid = m2.target.clone();
    out.push(line("N=2 superfield components of D1-products", component_cases(&n2, &mid, NK2_CASES, &m2)));
    let p = (|| -> Result<Check, Error> {
        let got = m2.components(&vector(&n2, "P_sh", &sym)?)?;
        let body = vector(&mid, "J_sh", &sym)?.scale(&-Scalar::i());
        let theta = vector(&mid, "T_sh", &sym)?.scale(&Scalar::from_int(-1));
        if got.0 != body || got.1 != theta {
            let w = json!({ "body": mid.element_text(&got.0), "theta": mid.element_text(&got.1) });
            return Ok(Err(("P_sh is not -iJ_sh - θ²T_sh".into(), w)));
        }
        Ok(Ok(1))
    })();
    out.push(line("P_sh = -iJ_sh - θ²T_sh", p));

    let red = N2Reduction::new(&n2)?;
    let mut gens = n2.generators();
    for g in n2.generators() {
        gens.push(n2.apply_translation(&g, TransOp::D(1))?);
    }
    let derivs = first_failure(&gens, |u| match red.check_derivations(u) {
        Ok(()) => Ok(None),
        Err(Error::Eval(m)) => Ok(Some((m.clone(), json!({ "u": n2.element_text(u), "reason": m })))),
        Err(e) => Err(e),
    });
    out.push(line("D1 and D2 act on bc-βγ bodies as zero modes of G+ ± G-", derivs));
    let mut pairs: Vec<(Element, Element)> = Vec::new();
    for x in &gens {
        for y in &gens {
            pairs.push((x.clone(), y.clone()));
        }
    }
    let psh = vector(&n2, "P_sh", &sym)?;
    pairs.push((psh.clone(), psh));
    let cross: Vec<Result<Option<(String, Json)>, Error>> = pairs
        .par_iter()
        .map(|(x, y)| {
            let via = red.bracket(x, y)?;
            let direct = red.direct(x, y)?;
            Ok((via != direct).then(|| {
                let b = red.bcbg();
                let w = json!({ "x": n2.element_text(x), "y": n2.element_text(y), "via": b.lambda_text(&via), "direct": b.lambda_text(&direct) });
                ("N=2 bracket disagrees with its bc-βγ reduction".to_string(), w)
            }))
        })
        .collect();
    let mut cross_check = Ok(pairs.len());
    for r in cross {
        if let Some(f) = r? {
            cross_check = Err(f);
            break;
        }
    }
    out.push(line("N=2 brackets agree with their reduction to bc-βγ brackets", Ok(cross_check)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regroup_keeps_linear_structure() {
        let alg = fields::susy_charged_fermions(&[("a", false)]).unwrap();
        let t = RawExpr::scaled(
            Scalar::from_int(3),
            RawExpr::prod(RawExpr::Sum(vec![RawExpr::gen("phi_a"), RawExpr::gen("phibar_a")]), RawExpr::gen("phi_a")),
        );
        assert_eq!(alg.normalize(&t).unwrap(), alg.normalize(&regroup(&t)).unwrap());
    }

    #[test]
    fn tree_of_is_a_fixed_point() {
        let alg = fields::n2_bc_beta_gamma(&[("a", false)]).unwrap();
        let mut r = rng(3);
        for _ in 0..20 {
            let e = random_monomial(&alg, &mut r, 3, 3);
            assert_eq!(alg.normalize(&tree_of(&alg, &e)).unwrap(), e);
        }
    }
}
