// Splitting N_K=1 superfields into bc-βγ components.

use scvertex::fields::{self, Params};
use scvertex::reduce::components_map_nk1;
use scvertex::Error;

pub fn run_example() -> Result<(), Error> {
    let alg = fields::susy_charged_fermions(&[("a", false)])?;
    let map = components_map_nk1(&alg)?;
    let bc = &map.target;
    let p = Params::symbolic();
    for name in ["T_sh", "J_sh"] {
        let v = fields::vector(&alg, name, &p)?;
        let (body, theta) = map.components(&v)?;
        println!("{name}: {}  +  θ({})", bc.element_text(&body), bc.element_text(&theta));
    }
    for g in alg.generators() {
        let (body, theta) = map.components(&g)?;
        println!("{}: ({}, {})", alg.element_text(&g), bc.element_text(&body), bc.element_text(&theta));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
