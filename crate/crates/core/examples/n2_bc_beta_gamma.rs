// The N=2 superconformal vector P_sh of the N=2 bc-βγ system, checked directly
// and through the reduction to ordinary brackets.

use scvertex::fields::{self, Params};
use scvertex::reduce::N2Reduction;
use scvertex::{verify, Error};

pub fn run_example() -> Result<(), Error> {
    let alg = fields::n2_bc_beta_gamma(&[("a", false)])?;
    let p = fields::vector(&alg, "P_sh", &Params::symbolic())?;
    println!("P_sh = {}", alg.element_text(&p));
    println!("[P Λ P] = {}", alg.lambda_text(&alg.bracket(&p, &p)?));
    println!("c = {}", verify::check_nk2_superconformal(&alg, &p)?.to_text());

    let red = N2Reduction::new(&alg)?;
    let via = red.bracket(&p, &p)?;
    println!("reduction agrees: {}", via == red.direct(&p, &p)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
