// Coefficient equations for T = m1·∂φφ̄ + m2·φ∂φ̄ + m3·DφDφ̄ to be superconformal.

use scvertex::{fields, verify, Error, Scalar, TransOp};

pub fn run_example() -> Result<(), Error> {
    let alg = fields::susy_charged_fermions(&[("a", false)])?;
    let phi = alg.gen("phi_a")?;
    let phibar = alg.gen("phibar_a")?;
    let del = |e| alg.apply_translation(e, TransOp::Del);
    let d = |e| alg.apply_translation(e, TransOp::D(1));
    let monos = [
        alg.normal_product(&del(&phi)?, &phibar)?,
        alg.normal_product(&phi, &del(&phibar)?)?,
        alg.normal_product(&d(&phi)?, &d(&phibar)?)?,
    ];
    let sys = verify::ansatz_constraints(&alg, &monos)?;
    for e in &sys.equations {
        println!("{}", verify::equation_text(&alg, e));
    }

    let t = Scalar::param("t");
    let family = verify::assignment(&[("m1", t.add_ref(&Scalar::one())), ("m2", t), ("m3", Scalar::one())]);
    let (c, residuals) = sys.solve_central(&family);
    println!("(t+1, t, 1): {} residuals, c = {}", residuals.len(), c.map(|c| c.to_text()).unwrap_or_default());

    let ones = verify::assignment(&[("m1", Scalar::one()), ("m2", Scalar::one()), ("m3", Scalar::one())]);
    let (_, residuals) = sys.solve_central(&ones);
    for (e, r) in &residuals {
        println!("(1, 1, 1) fails: {} gives {}", verify::equation_text(&alg, e), r.to_text());
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
