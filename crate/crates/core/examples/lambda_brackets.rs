// Λ-brackets of quadratic fields in the SUSY charged free fermions.

use scvertex::{fields, Error, TransOp};

pub fn run_example() -> Result<(), Error> {
    let alg = fields::susy_charged_fermions(&[("a", false)])?;
    let phi = alg.gen("phi_a")?;
    let phibar = alg.gen("phibar_a")?;
    let d = |e| alg.apply_translation(e, TransOp::D(1));
    let del = |e| alg.apply_translation(e, TransOp::Del);

    let a = alg.normal_product(&del(&phi)?, &phibar)?;
    let c = alg.normal_product(&d(&phi)?, &d(&phibar)?)?;

    for (x, y) in [(&a, &phi), (&a, &c), (&c, &c)] {
        let v = alg.bracket(x, y)?;
        println!("[{} Λ {}] = {}", alg.element_text(x), alg.element_text(y), alg.lambda_text(&v));
    }
    let v = alg.bracket(&a, &c)?;
    println!("latex: {}", alg.lambda_latex(&v));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
