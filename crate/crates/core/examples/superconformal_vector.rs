// The shifted superconformal vector on a mixed basis, its central charge and
// the conformal weights of the generators.

use scvertex::fields::{self, Params};
use scvertex::{verify, Error, Scalar};

pub fn run_example() -> Result<(), Error> {
    let alg = fields::susy_charged_fermions(&[("a", false), ("b", false), ("c", true)])?;
    let t = fields::vector(&alg, "T_sh", &Params::symbolic())?;
    let c = verify::check_susy_superconformal(&alg, &t)?;
    println!("T_sh = {}", alg.element_text(&t));
    println!("c = {}", c.to_text());

    for g in alg.generators() {
        let w = verify::conformal_weight(&alg, &t, &g)?;
        println!("  {:<10} weight {:<14} primary {}", alg.element_text(&g), w.delta.to_text(), w.primary);
    }

    let standard = fields::vector(&alg, "T_sh", &Params::all(&["a", "b", "c"], Scalar::zero()))?;
    println!("all shifts zero: c = {}", verify::check_susy_superconformal(&alg, &standard)?.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
