// A user-defined algebra read from the JSON definition format.

use scvertex::cli::algebra_file;
use scvertex::{verify, Error};

const VIRASORO: &str = r#"{
  "schema": "scvertex/1", "name": "vir", "sector": 0, "params": ["c"],
  "generators": [{ "name": "L" }],
  "brackets": [{ "left": "L", "right": "L", "value": "d(L) + 2*lambda*L + c/12*lambda^3" }]
}"#;

pub fn run_example() -> Result<(), Error> {
    let alg = algebra_file::from_json_str(VIRASORO)?;
    let l = alg.gen("L")?;
    println!("central charge {}", verify::check_virasoro(&alg, &l)?.to_text());
    let ll = alg.normal_product(&l, &l)?;
    println!("[L λ :LL:] = {}", alg.lambda_text(&alg.bracket(&l, &ll)?));
    println!("{}", serde_json::to_string_pretty(&algebra_file::export_json(&alg)).expect("json"));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
