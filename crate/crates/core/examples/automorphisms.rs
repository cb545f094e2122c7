// Order of the automorphism group of the cap design.

use veronese_witt::automorphism::automorphism_order;
use veronese_witt::cap::build_cap_psi;
use veronese_witt::design::blocks;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let design = blocks(&build_cap_psi().points);
    let order = automorphism_order(&design);
    println!("|Aut| = {order}");
    if order != 95040 {
        return Err(format!("unexpected order {order}").into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
