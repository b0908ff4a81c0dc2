use std::sync::Arc;

use proptest::prelude::*;
use scvertex::brst::Brst;
use scvertex::cli::eval::{eval_in, to_elem};
use scvertex::cli::parser;
use scvertex::fields::{self, Params};
use scvertex::sample::{random_monomial, random_tree, rng};
use scvertex::{Algebra, Element, Error, TransOp};

fn n1() -> Arc<Algebra> {
    fields::susy_charged_fermions(&[("a", false), ("b", true)]).unwrap()
}

fn n2() -> Arc<Algebra> {
    fields::n2_bc_beta_gamma(&[("a", false), ("b", true)]).unwrap()
}

fn elem(alg: &Arc<Algebra>, src: &str) -> Element {
    to_elem(alg, eval_in(alg, src, &[]).unwrap()).unwrap()
}

#[test]
fn odd_derivation_squares_to_translation() {
    let alg = n1();
    for g in alg.generators() {
        let dd = alg.apply_translation(&alg.apply_translation(&g, TransOp::D(1)).unwrap(), TransOp::D(1)).unwrap();
        assert_eq!(dd, alg.apply_translation(&g, TransOp::Del).unwrap());
    }
}

#[test]
fn n2_derivations_anticommute() {
    let alg = n2();
    for g in alg.generators() {
        let d = |e: &Element, i| alg.apply_translation(e, TransOp::D(i)).unwrap();
        assert!(d(&d(&g, 1), 2).add(&d(&d(&g, 2), 1)).is_zero());
        assert_eq!(d(&d(&g, 2), 2), alg.apply_translation(&g, TransOp::Del).unwrap());
    }
}

#[test]
fn parity_of_products_and_derivatives() {
    let alg = n1();
    assert_eq!(elem(&alg, "phi_a").parity(), Some(0));
    assert_eq!(elem(&alg, "D(phi_a)").parity(), Some(1));
    assert_eq!(elem(&alg, "phi_b").parity(), Some(1));
    assert_eq!(elem(&alg, ":D(phi_a) phi_b:").parity(), Some(0));
    assert_eq!(elem(&alg, "phi_a + phi_b").parity(), None);
}

#[test]
fn nested_products_group_to_the_right() {
    let alg = n1();
    let inner = alg.normal_product(&elem(&alg, "D(phibar_a)"), &elem(&alg, "d(phi_b)")).unwrap();
    let nested = alg.normal_product(&elem(&alg, "phi_a"), &inner).unwrap();
    assert_eq!(elem(&alg, ":phi_a D(phibar_a) d(phi_b):"), nested);
}

#[test]
fn free_field_brackets() {
    let alg = n1();
    let p = alg.bracket(&elem(&alg, "phi_a"), &elem(&alg, "phibar_a")).unwrap();
    assert_eq!(alg.lambda_text(&p), "1");
    let q = alg.bracket(&elem(&alg, "phi_b"), &elem(&alg, "phibar_b")).unwrap();
    assert!(!q.is_zero());
    assert!(alg.bracket(&elem(&alg, "phi_a"), &elem(&alg, "phi_b")).unwrap().is_zero());
}

#[test]
fn unterminated_bracket_is_a_syntax_error() {
    match parser::parse_expr("[x, y") {
        Err(Error::Parse { .. }) => {}
        other => panic!("expected a parse error, got {other:?}"),
    }
    assert!(parser::parse("let x = ;").is_err());
}

#[test]
fn standard_catalog_vectors_have_expected_charge() {
    let alg = n1();
    let t = fields::vector(&alg, "T_st", &Params::symbolic()).unwrap();
    assert_eq!(scvertex::verify::check_susy_superconformal(&alg, &t).unwrap(), scvertex::Scalar::from_int(6));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let alg = n1();
        let mut r = rng(seed);
        let e = random_monomial(&alg, &mut r, 3, 2).add(&random_monomial(&alg, &mut r, 2, 2));
        prop_assert_eq!(alg.element_from_json(&alg.element_json(&e)).unwrap(), e.clone());
        let b = alg.bracket(&e, &random_monomial(&alg, &mut r, 2, 1)).unwrap();
        prop_assert_eq!(alg.lambda_from_json(&alg.lambda_json(&b)).unwrap(), b);
    }

    #[test]
    fn text_rendering_parses_back(seed in any::<u64>()) {
        let alg = n1();
        let mut r = rng(seed);
        let e = random_monomial(&alg, &mut r, 3, 2);
        let text = alg.element_text(&e);
        prop_assert_eq!(elem(&alg, &text), e);
    }

    #[test]
    fn skew_symmetry_holds(seed in any::<u64>()) {
        for alg in [n1(), n2()] {
            let mut r = rng(seed);
            let a = random_monomial(&alg, &mut r, 2, 1);
            let b = random_monomial(&alg, &mut r, 2, 1);
            prop_assert!(alg.skew_residual(&a, &b).unwrap().is_zero());
        }
    }

    #[test]
    fn jacobi_identity_holds(seed in any::<u64>()) {
        let alg = n1();
        let mut r = rng(seed);
        let [a, b, c] = [0; 3].map(|_| random_monomial(&alg, &mut r, 2, 1));
        prop_assert!(alg.jacobi_residual(&a, &b, &c).unwrap().is_zero());
    }

    #[test]
    fn normal_form_is_canonical(seed in any::<u64>()) {
        let alg = n1();
        let mut r = rng(seed);
        let tree = random_tree(&alg, &mut r, 3);
        let once = alg.normalize(&tree).unwrap();
        let again = alg.normalize(&tree).unwrap();
        prop_assert_eq!(&once, &again);
        let text = alg.element_text(&once);
        prop_assert_eq!(elem(&alg, &text), once);
    }

    #[test]
    fn brst_operator_squares_to_zero(seed in any::<u64>()) {
        let alg = n1();
        let b = Brst::new(&alg, &Params::symbolic()).unwrap();
        let mut r = rng(seed);
        let v = random_monomial(&alg, &mut r, 3, 2);
        prop_assert!(b.q(&b.q(&v).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_bilinear(seed in any::<u64>(), k in -5i64..5) {
        let alg = n1();
        let mut r = rng(seed);
        let [a, b, c] = [0; 3].map(|_| random_monomial(&alg, &mut r, 2, 1));
        let s = scvertex::Scalar::from_int(k);
        let lhs = alg.bracket(&a.add(&b.scale(&s)), &c).unwrap();
        let rhs = alg.bracket(&a, &c).unwrap().add(&alg.bracket(&b, &c).unwrap().scale(&s));
        prop_assert_eq!(lhs, rhs);
    }
}
