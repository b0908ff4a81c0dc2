// Charges, the BRST operator Q and the homotopy operator H.

use scvertex::brst::Brst;
use scvertex::fields::{self, Params};
use scvertex::{Error, TransOp};

pub fn run_example() -> Result<(), Error> {
    let alg = fields::susy_charged_fermions(&[("a", false), ("b", true)])?;
    let b = Brst::new(&alg, &Params::symbolic())?;
    let mut pool = Vec::new();
    for g in alg.generators() {
        let dg = alg.apply_translation(&g, TransOp::D(1))?;
        pool.push(g);
        pool.push(dg);
    }
    for v in &pool {
        println!(
            "{:<12} charge {:<10} Q: {:<16} H: {}",
            alg.element_text(v),
            b.charge_of(v)?.to_text(),
            alg.element_text(&b.q(v)?),
            alg.element_text(&b.h(v)?),
        );
    }
    let x = alg.normal_product(&pool[0], &pool[2])?;
    println!("{} has charge {}", alg.element_text(&x), b.charge_of(&x)?.to_text());
    println!("Q^2 = 0 on {} vectors", b.check_q_squared(&pool)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
