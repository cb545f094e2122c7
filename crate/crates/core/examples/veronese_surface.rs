// Builds the Veronese surface of PG(5,3) and looks at one conic plane.

use veronese_witt::cap::base_point;
use veronese_witt::veronese::{chordal_cubic_contains, VeroneseModel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = VeroneseModel::build();
    println!("{} points, {} conics", model.points().len(), model.conics().len());

    let p = base_point();
    let through = model.conics_through(&p);
    println!("{} conics through {p}", through.len());

    let conic = &model.conics()[through[0]];
    let part = conic.partition();
    println!(
        "conic {}: on={} internal={} external={}",
        conic.preimage_line,
        part.on_conic.len(),
        part.internal.len(),
        part.external.len()
    );
    println!("osculating prime {}", model.osculating_prime(through[0]));

    let tangent = model.tangent_plane(&p).ok_or("no tangent plane")?;
    println!("tangent plane at {p} has {} points", tangent.points().len());

    let on_chordal = part.internal.iter().chain(&part.external).all(chordal_cubic_contains);
    println!("conic plane inside the chordal cubic: {on_chordal}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
