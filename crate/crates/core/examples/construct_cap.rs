// Two constructions of the 12-cap through a base point, and its dual.

use veronese_witt::cap::{build_cap_psi, build_cap_theorem1, build_dual_cap, disjointness_check, missing_primes};
use veronese_witt::pg::ProjPoint;
use veronese_witt::veronese::{is_cap, veronese_map, VeroneseModel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = VeroneseModel::build();

    let psi = build_cap_psi();
    for p in &psi.points {
        println!("{p}");
    }
    let geometric = build_cap_theorem1(&model, &psi.base_point)?;
    println!("constructions agree: {}", psi.sorted_points() == geometric.points);
    println!("cap: {}", is_cap(&psi.points));

    // any other point of the surface works as well
    let p = veronese_map(&"1:1:2".parse::<ProjPoint>()?)?;
    let other = build_cap_theorem1(&model, &p)?;
    let dual = build_dual_cap(&model, &p)?;
    println!(
        "base {p}: {} points, dual cap equals missing primes: {}, disjoint: {}",
        other.len(),
        dual.primes() == missing_primes(&other.points),
        disjointness_check(&other, &dual)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
