// A sum-2 twelve-set: not a cap, but its 42 six-point primes share one point.

use veronese_witt::cap::base_point;
use veronese_witt::coset::{CosetExplorer, Quadruple};
use veronese_witt::veronese::VeroneseModel;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = VeroneseModel::build();
    let explorer = CosetExplorer::new(&model, &base_point())?;

    let q: Quadruple = "2,0,0,0".parse()?;
    let set = explorer.twelve_set(q);
    println!("class {}", explorer.classify(&set)?);

    let report = explorer.analyze_r(&set, None)?;
    println!("six-point primes: {}", report.six_point_primes.len());
    if let Some(c) = &report.common_point {
        println!("common point {c}");
    }
    let proj = &report.projection;
    println!("projection into {}", proj.target);
    for line in &proj.lines {
        println!("  line {}", line.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    }
    println!("  transversals {}, pass={}", proj.transversal_count, report.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
