// Running a script and reading its report.

use scvertex::cli::{run_script, Settings};
use scvertex::render::Format;
use scvertex::Error;

const SCRIPT: &str = "
algebra F = susy_cff { a: even };
param t_a;
let T = (t_a + 1)*:d(phi_a) phibar_a: + t_a*:phi_a d(phibar_a): + :D(phi_a) D(phibar_a):;
verify-sconf T;
bracket T, phi_a;
assert [T, phi_a] == (2*d - t_a*lambda + chi*D)*phi_a;
charge phibar_a;
";

pub fn run_example() -> Result<(), Error> {
    let report = run_script(SCRIPT, &Settings::default())?;
    print!("{}", report.render(Format::Text));

    let fixed = Settings { overrides: vec![Settings::parse_override("t_a=-1/2")?], ..Default::default() };
    let report = run_script(SCRIPT, &fixed)?;
    print!("{}", report.render(Format::Text));
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
