//! Seeded random elements for property checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::coeff::Scalar;
use crate::elements::{Element, RawExpr, TransOp};
use crate::formal::Sector;

pub use rand::SeedableRng;
pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_ops(alg: &Algebra, rng: &mut SampleRng, max_order: u32) -> Vec<TransOp> {
    let mut ops = Vec::new();
    let k = rng.gen_range(0..=max_order);
    for _ in 0..k {
        let op = match alg.sector {
            Sector::N0 => TransOp::Del,
            Sector::N1 => {
                if rng.gen_bool(0.5) {
                    TransOp::Del
                } else {
                    TransOp::D(1)
                }
            }
            Sector::N2 => match rng.gen_range(0..3) {
                0 => TransOp::Del,
                1 => TransOp::D(1),
                _ => TransOp::D(2),
            },
        };
        ops.push(op);
    }
    ops
}

/// A generator with a random tower of translations applied, derivative order ≤ `max_order`.
pub fn random_derived(alg: &Algebra, rng: &mut SampleRng, max_order: u32) -> Element {
    let g = rng.gen_range(0..alg.gens.len()) as u16;
    let mut e = alg.gen_element(g);
    for op in random_ops(alg, rng, max_order) {
        e = alg.apply_translation(&e, op).expect("sector-valid op");
    }
    e
}

/// A normally ordered product of 1..=max_len random derived generators.
pub fn random_monomial(alg: &Algebra, rng: &mut SampleRng, max_len: usize, max_order: u32) -> Element {
    let n = rng.gen_range(1..=max_len);
    let mut e = random_derived(alg, rng, max_order);
    for _ in 1..n {
        let f = random_derived(alg, rng, max_order);
        e = alg.normal_product(&f, &e).expect("same algebra");
    }
    e
}

/// A random unnormalized expression tree of the given depth.
pub fn random_tree(alg: &Algebra, rng: &mut SampleRng, depth: u32) -> RawExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        let name = alg.gens[rng.gen_range(0..alg.gens.len())].name.clone();
        return RawExpr::Gen(name);
    }
    match rng.gen_range(0..4) {
        0 => RawExpr::prod(random_tree(alg, rng, depth - 1), random_tree(alg, rng, depth - 1)),
        1 => {
            let ops = random_ops(alg, rng, 1);
            let inner = random_tree(alg, rng, depth - 1);
            match ops.first() {
                Some(op) => RawExpr::apply(*op, inner),
                None => inner,
            }
        }
        2 => RawExpr::scaled(Scalar::from_int(rng.gen_range(-3..=3)), random_tree(alg, rng, depth - 1)),
        _ => RawExpr::Sum(vec![random_tree(alg, rng, depth - 1), random_tree(alg, rng, depth - 1)]),
    }
}
