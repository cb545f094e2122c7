// The cap points as columns of a generator matrix of the ternary Golay code.

use veronese_witt::cap::build_cap_psi;
use veronese_witt::golay::{generator_matrix, is_self_dual, minimum_distance, weight_distribution};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let code = generator_matrix(&build_cap_psi())?;
    print!("{}", code.emit_matrix());
    println!(
        "n={} k={} d={:?} self_dual={}",
        code.length(),
        code.dimension(),
        minimum_distance(&code),
        is_self_dual(&code)
    );
    for (w, c) in weight_distribution(&code) {
        println!("weight {w}: {c}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
