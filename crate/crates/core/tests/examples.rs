mod lambda_brackets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lambda_brackets.rs"));
}

mod superconformal_vector {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/superconformal_vector.rs"));
}

mod n2_current {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/n2_current.rs"));
}

mod brst_charges {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/brst_charges.rs"));
}

mod superfield_components {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/superfield_components.rs"));
}

mod n2_bc_beta_gamma {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/n2_bc_beta_gamma.rs"));
}

mod ansatz_solver {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ansatz_solver.rs"));
}

mod custom_algebra {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/custom_algebra.rs"));
}

mod scripting {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scripting.rs"));
}

#[test]
fn lambda_brackets_example_runs() {
    lambda_brackets::run_example().expect("lambda_brackets example");
}

#[test]
fn superconformal_vector_example_runs() {
    superconformal_vector::run_example().expect("superconformal_vector example");
}

#[test]
fn n2_current_example_runs() {
    n2_current::run_example().expect("n2_current example");
}

#[test]
fn brst_charges_example_runs() {
    brst_charges::run_example().expect("brst_charges example");
}

#[test]
fn superfield_components_example_runs() {
    superfield_components::run_example().expect("superfield_components example");
}

#[test]
fn n2_bc_beta_gamma_example_runs() {
    n2_bc_beta_gamma::run_example().expect("n2_bc_beta_gamma example");
}

#[test]
fn ansatz_solver_example_runs() {
    ansatz_solver::run_example().expect("ansatz_solver example");
}

#[test]
fn custom_algebra_example_runs() {
    custom_algebra::run_example().expect("custom_algebra example");
}

#[test]
fn scripting_example_runs() {
    scripting::run_example().expect("scripting example");
}
