// The shifted current J_sh completes T_sh to an N=2 structure.

use scvertex::fields::{self, Params};
use scvertex::{verify, Error};

pub fn run_example() -> Result<(), Error> {
    let alg = fields::susy_charged_fermions(&[("a", false), ("b", true)])?;
    let p = Params::symbolic();
    let t = fields::vector(&alg, "T_sh", &p)?;
    let j = fields::vector(&alg, "J_sh", &p)?;
    println!("J_sh = {}", alg.element_text(&j));
    println!("[T Λ J] = {}", alg.lambda_text(&alg.bracket(&t, &j)?));
    println!("[J Λ J] = {}", alg.lambda_text(&alg.bracket(&j, &j)?));
    let c = verify::check_n2_susy_pair(&alg, &t, &j)?;
    println!("N=2 structure with c = {}", c.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
