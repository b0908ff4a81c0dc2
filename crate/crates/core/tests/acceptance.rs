// Acceptance criteria for the engine, one line per criterion.
//
// Expected values come from hand-written formulas evaluated as λ-polynomials, so a
// bracket is compared against an independent expansion, never against itself.

use std::collections::HashMap;
use std::fmt::Display;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use scvertex::brst::Brst;
use scvertex::cli::eval::{eval_in, to_elem, to_poly};
use scvertex::cli::suite;
use scvertex::cli::Settings;
use scvertex::fields::{self, param_name, Params};
use scvertex::reduce::{components_map_nk1, N2Reduction};
use scvertex::sample::{random_monomial, rng};
use scvertex::{verify, Algebra, Element, LambdaElement, Scalar, TransOp};

type Outcome = Result<String, String>;

fn err(e: impl Display) -> String {
    e.to_string()
}

const QUADRATIC: &[(&str, &str)] = &[
    ("A", ":d(phi_a) phibar_a:"),
    ("B", ":phi_a d(phibar_a):"),
    ("C", ":D(phi_a) D(phibar_a):"),
    ("X", ":D(phi_a) phibar_a:"),
    ("Y", ":phi_a D(phibar_a):"),
    ("Z", ":phi_a phibar_a:"),
];

const N2_QUADRATIC: &[(&str, &str)] = &[("U", ":D1(Phi_a) Phibar_a:"), ("V", ":Phi_a Phibar_a:")];

/// Replaces whole-word abbreviations by their parenthesized definitions.
fn expand(src: &str, abbrev: &[(&str, &str)]) -> String {
    let cs: Vec<char> = src.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < cs.len() {
        if cs[i].is_ascii_alphabetic() || cs[i] == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            let w: String = cs[start..i].iter().collect();
            match abbrev.iter().find(|(k, _)| *k == w) {
                Some((_, v)) => out.push_str(&format!("({v})")),
                None => out.push_str(&w),
            }
        } else {
            out.push(cs[i]);
            i += 1;
        }
    }
    out
}

fn shift_params(alg: &Algebra) -> Vec<(String, Scalar)> {
    alg.basis.iter().map(|b| param_name(&b.name)).map(|p| (p.clone(), Scalar::param(&p))).collect()
}

fn field(alg: &Arc<Algebra>, src: &str, abbrev: &[(&str, &str)]) -> Result<Element, String> {
    let v = eval_in(alg, &expand(src, abbrev), &shift_params(alg)).map_err(err)?;
    to_elem(alg, v).map_err(err)
}

fn poly(alg: &Arc<Algebra>, src: &str, abbrev: &[(&str, &str)]) -> Result<LambdaElement, String> {
    let v = eval_in(alg, &expand(src, abbrev), &shift_params(alg)).map_err(err)?;
    Ok(to_poly(alg, v))
}

/// Rows `(x, y, expected)`; returns the rows where [x Λ y] differs from `expected`.
fn bracket_rows(alg: &Arc<Algebra>, rows: &[(&str, &str, &str)], abbrev: &[(&str, &str)]) -> Result<Vec<String>, String> {
    let mut bad = Vec::new();
    for (x, y, want) in rows {
        let got = alg.bracket(&field(alg, x, abbrev)?, &field(alg, y, abbrev)?).map_err(err)?;
        let want = poly(alg, want, abbrev)?;
        if got != want {
            bad.push(format!("[{x}, {y}] = {} (expected {})", alg.lambda_text(&got), alg.lambda_text(&want)));
        }
    }
    Ok(bad)
}

/// Σ (6 t_a + 3) over the basis.
fn shifted_central_charge(alg: &Algebra) -> Scalar {
    alg.basis.iter().fold(Scalar::zero(), |c, b| {
        let t = Scalar::param(&param_name(&b.name));
        c.add_ref(&t.mul_ref(&Scalar::from_int(6))).add_ref(&Scalar::from_int(3))
    })
}

const AGAINST_GENERATORS: &[(&str, &str, &str)] = &[
    ("A", "phi_a", "d(phi_a)"),
    ("A", "phibar_a", "(d + lambda)*phibar_a"),
    ("A", "D(phi_a)", "(D + chi)*d(phi_a)"),
    ("A", "D(phibar_a)", "(D + chi)*(d + lambda)*phibar_a"),
    ("A", "d(phi_a)", "(d + lambda)*d(phi_a)"),
    ("A", "d(phibar_a)", "(d + lambda)^2*phibar_a"),
    ("B", "phi_a", "-(d + lambda)*phi_a"),
    ("B", "phibar_a", "-d(phibar_a)"),
    ("B", "D(phi_a)", "-(D + chi)*(d + lambda)*phi_a"),
    ("B", "D(phibar_a)", "-(D + chi)*d(phibar_a)"),
    ("B", "d(phi_a)", "-(d + lambda)^2*phi_a"),
    ("B", "d(phibar_a)", "-(d + lambda)*d(phibar_a)"),
    ("C", "phi_a", "(d + chi*D)*phi_a"),
    ("C", "phibar_a", "(d + chi*D)*phibar_a"),
    ("C", "D(phi_a)", "(d + lambda)*D(phi_a)"),
    ("C", "D(phibar_a)", "(d + lambda)*D(phibar_a)"),
    ("C", "d(phi_a)", "(d + lambda)*(d + chi*D)*phi_a"),
    ("C", "d(phibar_a)", "(d + lambda)*(d + chi*D)*phibar_a"),
    ("X", "phi_a", "-D(phi_a)"),
    ("X", "phibar_a", "-(D + chi)*phibar_a"),
    ("X", "D(phi_a)", "(d + chi*D)*phi_a"),
    ("X", "D(phibar_a)", "(d + lambda)*phibar_a"),
    ("Y", "phi_a", "(D + chi)*phi_a"),
    ("Y", "phibar_a", "D(phibar_a)"),
    ("Y", "D(phi_a)", "-(d + lambda)*phi_a"),
    ("Y", "D(phibar_a)", "-(d + chi*D)*phibar_a"),
];

const SUPERCONFORMAL_TERMS: &[(&str, &str, &str)] = &[
    ("A", "A", "d(A) + 2*lambda*A"),
    ("A", "B", "d(B) + 2*lambda*B + lambda^2*Z"),
    ("A", "C", "d(C) + lambda*C + chi*D(C) + 1/2*lambda^2*chi - lambda*chi*X"),
    ("B", "A", "-d(A) - 2*lambda*A - lambda^2*Z"),
    ("B", "B", "-d(B) - 2*lambda*B"),
    ("B", "C", "-d(C) - lambda*C - chi*D(C) + 1/2*lambda^2*chi - lambda*chi*Y"),
    ("C", "A", "d(A) + lambda*A + chi*D(A) + 1/2*lambda^2*chi + lambda*chi*X"),
    ("C", "B", "d(B) + lambda*B + chi*D(B) + 1/2*lambda^2*chi + lambda*chi*Y"),
    ("C", "C", "d(C) + 2*lambda*C"),
];

const CURRENT_TERMS: &[(&str, &str, &str)] = &[
    ("A", "X", "d(X) + lambda*X + chi*D(X) + chi*C - 1/2*lambda^2"),
    ("A", "Y", "d(Y) + lambda*Y + chi*D(Y) - chi*C + lambda*chi*Z + 1/2*lambda^2"),
    ("B", "X", "-d(X) - lambda*X - chi*D(X) - chi*C - lambda*chi*Z - 1/2*lambda^2"),
    ("B", "Y", "-d(Y) - lambda*Y - chi*D(Y) + chi*C + 1/2*lambda^2"),
    ("C", "X", "d(X) + lambda*X - chi*C + 1/2*lambda^2"),
    ("C", "Y", "d(Y) + lambda*Y + chi*C + 1/2*lambda^2"),
    ("X", "X", "A + C + lambda*chi"),
    ("X", "Y", "B - C + lambda*Z"),
    ("Y", "X", "-A - C - lambda*Z"),
    ("Y", "Y", "-B + C - lambda*chi"),
];

fn golden_brackets() -> Outcome {
    let alg = fields::susy_charged_fermions(&[("a", false)]).map_err(err)?;
    let mut bad = Vec::new();
    for rows in [AGAINST_GENERATORS, SUPERCONFORMAL_TERMS, CURRENT_TERMS] {
        bad.extend(bracket_rows(&alg, rows, QUADRATIC)?);
    }
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    Ok(format!(
        "{} brackets: {} quadratic-against-generator entries (the table has {}, not 28), {} superconformal terms, {} current terms",
        AGAINST_GENERATORS.len() + SUPERCONFORMAL_TERMS.len() + CURRENT_TERMS.len(),
        AGAINST_GENERATORS.len(),
        AGAINST_GENERATORS.len(),
        SUPERCONFORMAL_TERMS.len(),
        CURRENT_TERMS.len()
    ))
}

const MIXED: &[(&str, bool)] = &[("a", false), ("b", false), ("c", true)];

fn superconformal_mixed_basis() -> Outcome {
    let alg = fields::susy_charged_fermions(MIXED).map_err(err)?;
    let t = fields::vector(&alg, "T_sh", &Params::symbolic()).map_err(err)?;
    let c = verify::check_susy_superconformal(&alg, &t).map_err(err)?;
    let want = shifted_central_charge(&alg);
    if c != want {
        return Err(format!("c = {}, expected {}", c.to_text(), want.to_text()));
    }
    let zero = Params::all(&["a", "b", "c"], Scalar::zero());
    let t0 = fields::vector(&alg, "T_sh", &zero).map_err(err)?;
    let c0 = verify::check_susy_superconformal(&alg, &t0).map_err(err)?;
    let st = fields::vector(&alg, "T_st", &Params::symbolic()).map_err(err)?;
    let cst = verify::check_susy_superconformal(&alg, &st).map_err(err)?;
    let dim = Scalar::from_int(3 * MIXED.len() as i64);
    if c0 != dim || cst != dim || t0 != st {
        return Err(format!("t = 0 gives c = {}, standard vector c = {}, expected {}", c0.to_text(), cst.to_text(), dim.to_text()));
    }
    Ok(format!("c = {} on 2 even + 1 odd; t = 0 gives {} = 3 dim U", c.to_text(), c0.to_text()))
}

fn conformal_weights() -> Outcome {
    let alg = fields::susy_charged_fermions(MIXED).map_err(err)?;
    let t = fields::vector(&alg, "T_sh", &Params::symbolic()).map_err(err)?;
    let mut n = 0;
    for b in &alg.basis {
        let ta = Scalar::param(&param_name(&b.name));
        let low = ta.mul_ref(&Scalar::from_ratio(-1, 2));
        let high = ta.add_ref(&Scalar::one()).mul_ref(&Scalar::from_ratio(1, 2));
        let (w_phi, w_bar) = if b.odd { (high, low) } else { (low, high) };
        for (g, want) in [(b.gens[0], w_phi), (b.gens[1], w_bar)] {
            let v = alg.gen_element(g);
            let r = verify::conformal_weight(&alg, &t, &v).map_err(err)?;
            if r.delta != want || !r.primary || !r.residual.is_zero() {
                return Err(format!(
                    "{}: weight {}, primary {}, expected {}",
                    alg.element_text(&v),
                    r.delta.to_text(),
                    r.primary,
                    want.to_text()
                ));
            }
            n += 1;
        }
    }
    Ok(format!("{n} generators, all primary with weights -t/2 and (t+1)/2"))
}

const CURRENT_DECOMPOSITION: &[(&str, &str, &str)] = &[
    ("catalog(T_st)", "catalog(J_st)", "(2*d + 2*lambda + chi*D)*catalog(J_st)"),
    ("catalog(T_st)", "catalog(J_ghost)", "(2*d + 2*lambda + chi*D)*catalog(J_ghost) + t_a*lambda^2 + t_a*lambda*chi*Z"),
    ("catalog(T_ghost)", "catalog(J_st)", "-t_a*lambda^2 - t_a*lambda*chi*Z"),
    ("catalog(T_ghost)", "catalog(J_ghost)", "0"),
    ("catalog(J_st)", "catalog(J_st)", "catalog(T_st) + lambda*chi"),
    ("catalog(J_st)", "catalog(J_ghost)", "catalog(T_ghost) + t_a*lambda*Z + t_a*lambda*chi"),
    ("catalog(J_ghost)", "catalog(J_st)", "-t_a*lambda*Z + t_a*lambda*chi"),
    ("catalog(J_ghost)", "catalog(J_ghost)", "0"),
];

fn n2_current() -> Outcome {
    let one = fields::susy_charged_fermions(&[("a", false)]).map_err(err)?;
    let bad = bracket_rows(&one, CURRENT_DECOMPOSITION, QUADRATIC)?;
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let alg = fields::susy_charged_fermions(MIXED).map_err(err)?;
    let sum: Vec<String> = alg.basis.iter().map(|b| format!("(2*{} + 1)", param_name(&b.name))).collect();
    let jj = format!("catalog(T_sh) + ({})*lambda*chi", sum.join(" + "));
    let rows = [
        ("catalog(T_sh)", "catalog(J_sh)", "(2*d + 2*lambda + chi*D)*catalog(J_sh)"),
        ("catalog(J_sh)", "catalog(J_sh)", jj.as_str()),
        ("catalog(T_sh)", "catalog(T_st) + catalog(T_ghost)", "[catalog(T_sh), catalog(T_sh)]"),
        ("catalog(J_sh)", "catalog(J_st) + catalog(J_ghost)", "[catalog(J_sh), catalog(J_sh)]"),
    ];
    let bad = bracket_rows(&alg, &rows, &[])?;
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    Ok(format!("[T Λ J] and [J Λ J] on 2 even + 1 odd; {} ghost-split brackets on one even pair", CURRENT_DECOMPOSITION.len()))
}

fn non_susy_structures() -> Outcome {
    let p = Params::symbolic();
    let bc = fields::bc_beta_gamma(&["a"]).map_err(err)?;
    let c_bc = verify::check_n1_pair(
        &bc,
        &fields::vector(&bc, "L_st", &p).map_err(err)?,
        &fields::vector(&bc, "G_st", &p).map_err(err)?,
    )
    .map_err(err)?;
    let osp = fields::osp12_fermions().map_err(err)?;
    let c_osp = verify::check_n1_pair(
        &osp,
        &fields::vector(&osp, "L_st", &p).map_err(err)?,
        &fields::vector(&osp, "G_st", &p).map_err(err)?,
    )
    .map_err(err)?;
    let two = fields::bc_beta_gamma(&["a", "b"]).map_err(err)?;
    let quad: Vec<Element> = ["L_sh", "Jz_sh", "Gp_sh", "Gm_sh"]
        .iter()
        .map(|n| fields::vector(&two, n, &p))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let c_n2 = verify::check_n2_component(&two, &quad[0], &quad[1], &quad[2], &quad[3]).map_err(err)?;
    let want = shifted_central_charge(&two);
    if c_bc != Scalar::from_int(3) || c_osp != Scalar::from_int(-3) || c_n2 != want {
        return Err(format!(
            "bc-βγ c = {}, osp(1|2) c = {}, N=2 quadruple c = {} (expected 3, -3, {})",
            c_bc.to_text(),
            c_osp.to_text(),
            c_n2.to_text(),
            want.to_text()
        ));
    }
    Ok(format!("bc-βγ c = 3, osp(1|2) c = -3, N=2 quadruple on two copies c = {}", c_n2.to_text()))
}

// The last two rows are the λ²-bearing brackets between :D1(Phi) Phibar: and
// D1(:Phi Phibar:) in the form they are usually quoted.
const N2_ROWS: &[(&str, &str, &str)] = &[
    ("Phi_a", "Phibar_a", "-i*chi1 + chi2"),
    ("U", "Phi_a", "i*(2*d + chi1*D1 + chi2*D2)*Phi_a"),
    ("U", "D1(Phi_a)", "i*(2*d + lambda + chi1*D1 + chi2*D2)*D1(Phi_a) - chi1*chi2*D1(Phi_a)"),
    ("U", "Phibar_a", "i*(2*d + lambda + chi1*D1 + chi2*D2)*Phibar_a + chi1*chi2*Phibar_a"),
    ("U", "U", "i*(2*d + 2*lambda + chi1*D1 + chi2*D2)*U - lambda*chi1*chi2"),
    ("V", "V", "0"),
    (
        "U",
        "D1(V)",
        "i*(2*d + 2*lambda + chi1*D1 + chi2*D2)*D1(V) + (i*lambda*chi1 + lambda*chi2)*V - i*lambda^2 - lambda*chi1*chi2",
    ),
    ("D1(V)", "U", "-(i*lambda*chi1 + lambda*chi2)*V + i*lambda^2 - lambda*chi1*chi2"),
];

fn bodies(red: &N2Reduction, p: &LambdaElement) -> Result<LambdaElement, String> {
    let mut out = LambdaElement::zero();
    for (w, e) in p.iter() {
        out.add_term(*w, red.body(e).map_err(err)?);
    }
    Ok(out)
}

fn n2_bc_beta_gamma() -> Outcome {
    let alg = fields::n2_bc_beta_gamma(&[("a", false)]).map_err(err)?;
    let red = N2Reduction::new(&alg).map_err(err)?;
    let mut bad = Vec::new();
    for (x, y, want) in N2_ROWS {
        let (u, v) = (field(&alg, x, N2_QUADRATIC)?, field(&alg, y, N2_QUADRATIC)?);
        let got = alg.bracket(&u, &v).map_err(err)?;
        let want = poly(&alg, want, N2_QUADRATIC)?;
        let reduced = red.bracket(&u, &v).map_err(err)?;
        if reduced != red.direct(&u, &v).map_err(err)? {
            bad.push(format!("[{x}, {y}]: engine and bc-βγ reduction disagree"));
        } else if got != want {
            let diff = got.sub(&want);
            let oracle = if reduced == bodies(&red, &want)? { "matches" } else { "contradicts" };
            bad.push(format!(
                "[{x}, {y}] differs from the expected form by {}; the bc-βγ reduction {oracle} the expected form",
                alg.lambda_text(&diff)
            ));
        }
    }
    let mixed = fields::n2_bc_beta_gamma(&[("a", false), ("b", true)]).map_err(err)?;
    let p = fields::vector(&mixed, "P_sh", &Params::symbolic()).map_err(err)?;
    let c = verify::check_nk2_superconformal(&mixed, &p).map_err(err)?;
    let want = shifted_central_charge(&mixed);
    if c != want {
        bad.push(format!("P_sh has c = {}, expected {}", c.to_text(), want.to_text()));
    }
    let red2 = N2Reduction::new(&mixed).map_err(err)?;
    let mut cross = 0;
    let mut pool = mixed.generators();
    for g in mixed.generators() {
        pool.push(mixed.apply_translation(&g, TransOp::D(1)).map_err(err)?);
    }
    pool.push(p.clone());
    for x in &pool {
        for y in &pool {
            if red2.bracket(x, y).map_err(err)? != red2.direct(x, y).map_err(err)? {
                bad.push(format!("reduction disagrees on [{}, {}]", mixed.element_text(x), mixed.element_text(y)));
            }
            cross += 1;
        }
    }
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    Ok(format!("{} brackets, P_sh c = {}, {cross} pairs agree with the bc-βγ reduction", N2_ROWS.len(), c.to_text()))
}

fn brst_operator() -> Outcome {
    let alg = fields::susy_charged_fermions(&[("a", false), ("b", true)]).map_err(err)?;
    let b = Brst::new(&alg, &Params::symbolic()).map_err(err)?;
    let mut pool = Vec::new();
    for g in alg.generators() {
        let mut x = g;
        for _ in 0..=3 {
            let next = alg.apply_translation(&x, TransOp::D(1)).map_err(err)?;
            pool.push(x);
            x = next;
        }
    }
    let mut r = rng(2024);
    for _ in 0..100 {
        pool.push(random_monomial(&alg, &mut r, 3, 2));
    }
    let txt = |e: &Element| alg.element_text(e);

    for v in &pool {
        let qq = b.q(&b.q(v).map_err(err)?).map_err(err)?;
        if !qq.is_zero() {
            return Err(format!("Q^2 {} = {}", txt(v), txt(&qq)));
        }
    }

    let table = [
        ("phi_a", "t_a"),
        ("phibar_a", "-t_a - 1"),
        ("phi_b", "-t_b - 1"),
        ("phibar_b", "t_b"),
    ];
    let params = shift_params(&alg);
    for (g, m) in table {
        let want = match eval_in(&alg, m, &params).map_err(err)? {
            scvertex::cli::Value::Scalar(s) => s,
            _ => return Err(format!("`{m}` is not a scalar")),
        };
        let got = b.charge_of(&alg.gen(g).map_err(err)?).map_err(err)?;
        if got != want {
            return Err(format!("charge of {g} is {}, expected {}", got.to_text(), want.to_text()));
        }
    }

    let (mut raised, mut lowered) = (0, 0);
    for v in &pool {
        if let Some(s) = b.charge_shift(v, |x| b.q(x)).map_err(err)? {
            if s != Scalar::one() {
                return Err(format!("Q shifts the charge of {} by {}", txt(v), s.to_text()));
            }
            raised += 1;
        }
        if let Some(s) = b.charge_shift(v, |x| b.h(x)).map_err(err)? {
            if s != Scalar::from_int(-1) {
                return Err(format!("H shifts the charge of {} by {}", txt(v), s.to_text()));
            }
            lowered += 1;
        }
    }

    let shifts = [Scalar::zero(), Scalar::from_int(7), Scalar::from_ratio(-1, 2)];
    for s in &shifts {
        let other = Brst::new(&alg, &Params::all(&["a", "b"], s.clone())).map_err(err)?;
        for v in &pool {
            if other.q(v).map_err(err)? != b.q(v).map_err(err)? {
                return Err(format!("Q {} depends on the shift (t = {})", txt(v), s.to_text()));
            }
        }
    }
    Ok(format!(
        "Q^2 = 0 on {} vectors, charge table, Q raises on {raised}, H lowers on {lowered}, Q fixed under {} shifts",
        pool.len(),
        shifts.len()
    ))
}

fn bracket_axioms() -> Outcome {
    let mut checks = 0;
    for alg in suite::axiom_algebras().map_err(err)? {
        let n = alg.sector.n();
        checks += suite::check_bracket_axioms(&alg, 0, suite::AXIOM_SAMPLES).map_err(|(d, w)| format!("sector {n}: {d} {w}"))?;
        checks += suite::check_normalization(&alg, 0, suite::AXIOM_SAMPLES)
            .map_err(err)?
            .map_err(|(d, w)| format!("sector {n}: {d} {w}"))?;
    }
    Ok(format!("{checks} checks over sectors 0, 1, 2 with {} samples each", suite::AXIOM_SAMPLES))
}

fn reduction() -> Outcome {
    let lines = suite::run("reduce", &Settings::default()).map_err(err)?;
    if let Some(l) = lines.iter().find(|l| !l.ok) {
        return Err(l.text());
    }
    let alg = fields::susy_charged_fermions(MIXED).map_err(err)?;
    let map = components_map_nk1(&alg).map_err(err)?;
    let bc = &map.target;
    let p = Params::symbolic();
    let (body, theta) = map.components(&fields::vector(&alg, "T_sh", &p).map_err(err)?).map_err(err)?;
    let g = fields::vector(bc, "G_sh", &p).map_err(err)?;
    let l = fields::vector(bc, "L_sh", &p).map_err(err)?;
    if body != g || theta != l.scale(&Scalar::from_int(2)) {
        return Err(format!("T_sh components ({}, {})", bc.element_text(&body), bc.element_text(&theta)));
    }
    let gb = bc.bracket(&bc.gen("gamma_a").map_err(err)?, &bc.gen("beta_a").map_err(err)?).map_err(err)?;
    if gb != LambdaElement::term(scvertex::MixedWord::ONE, bc.vacuum().scale(&Scalar::from_int(-1))) {
        return Err(format!("[gamma λ beta] = {}", bc.lambda_text(&gb)));
    }
    let checks: usize = lines.iter().map(|l| l.checks).sum();
    Ok(format!("{checks} reduction checks; T_sh = ΣG_sh + 2θΣL_sh on 2 even + 1 odd; [γ λ β] = -1"))
}

fn ansatz() -> Outcome {
    let alg = fields::susy_charged_fermions(&[("a", false)]).map_err(err)?;
    let monos = ["A", "B", "C"].map(|m| field(&alg, m, QUADRATIC));
    let monos: Vec<Element> = monos.into_iter().collect::<Result<_, _>>()?;
    let sys = verify::ansatz_constraints(&alg, &monos).map_err(err)?;
    let t = Scalar::param("t");
    let family = verify::assignment(&[("m1", t.add_ref(&Scalar::one())), ("m2", t.clone()), ("m3", Scalar::one())]);
    let (c, residuals) = sys.solve_central(&family);
    let want = t.mul_ref(&Scalar::from_int(6)).add_ref(&Scalar::from_int(3));
    if !residuals.is_empty() || c.as_ref() != Some(&want) {
        return Err(format!("(t+1, t, 1) leaves {} residuals, c = {:?}", residuals.len(), c.map(|c| c.to_text())));
    }
    let ones: HashMap<String, Scalar> = verify::assignment(&[("m1", Scalar::one()), ("m2", Scalar::one()), ("m3", Scalar::one())]);
    let (_, residuals) = sys.solve_central(&ones);
    let witness = residuals
        .iter()
        .find(|(e, _)| e.word.lam == 1)
        .ok_or("(1, 1, 1) has no nonzero λ-coefficient residual")?;
    let w = serde_json::json!({
        "assignment": { "m1": "1", "m2": "1", "m3": "1" },
        "equation": verify::equation_text(&alg, &witness.0),
        "residual": witness.1.to_text(),
    });
    Ok(format!("{} equations; (t+1, t, 1) solves them with c = 6*t + 3; (1, 1, 1) fails with witness {w}", sys.equations.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden bracket tables", golden_brackets),
        ("shifted superconformal vector on a mixed basis", superconformal_mixed_basis),
        ("conformal weights and primality of the generators", conformal_weights),
        ("shifted N=2 current and its ghost decomposition", n2_current),
        ("non-SUSY superconformal structures", non_susy_structures),
        ("N=2 bc-βγ brackets and P_sh", n2_bc_beta_gamma),
        ("BRST operator, homotopy and charges", brst_operator),
        ("skew-symmetry, Jacobi and normalization properties", bracket_axioms),
        ("superfield component reduction", reduction),
        ("coefficient equations of the quadratic ansatz", ansatz),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = run();
        let ms = t.elapsed().as_millis();
        match r {
            Ok(detail) => println!("PASS {:>2}  {name}: {detail} [{ms} ms]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}  {name}: {detail} [{ms} ms]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass in {:.1} s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
