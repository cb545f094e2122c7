// Hyperplane sections of the cap form a 5-(12,6,1) design.

use veronese_witt::cap::build_cap_psi;
use veronese_witt::design::{blocks, hyperplane_profile, verify_witt};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cap = build_cap_psi();
    let design = blocks(&cap.points);
    let report = verify_witt(&design);
    println!(
        "pass={} blocks={} five_subsets={} lambda4={:?}",
        report.pass, report.blocks, report.five_subsets_checked, report.four_subset_covering
    );
    for (size, count) in hyperplane_profile(&cap.points) {
        println!("primes meeting the cap in {size} points: {count}");
    }
    let first = &design.blocks[0];
    println!("block {:?} on prime {}", first.indices(), first.carrier);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
