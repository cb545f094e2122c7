// Replacing conic points by internal or external points: the 81 twelve-sets
// and their three classes.

use std::collections::BTreeMap;

use veronese_witt::cap::base_point;
use veronese_witt::coset::CosetExplorer;
use veronese_witt::veronese::VeroneseModel;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = VeroneseModel::build();
    let explorer = CosetExplorer::new(&model, &base_point())?;

    let mut per_class = BTreeMap::new();
    for row in explorer.scan()? {
        *per_class.entry(row.class).or_insert(0) += 1;
    }
    for (class, n) in &per_class {
        let profile = explorer.reference_profile(*class);
        println!("{class}: {n} sets, six-point primes {}", profile.get(&6).copied().unwrap_or(0));
    }

    let orbits = explorer.verify_orbit_equivalence()?;
    println!(
        "group order {}, orbits {} and {}, pass={}",
        orbits.group_order, orbits.class_v_orbit, orbits.class_k_orbit, orbits.pass
    );
    let transport = explorer.verify_permutation_transport()?;
    println!("rearrangements equivalent: {}", transport.all_rearrangements_equivalent);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
