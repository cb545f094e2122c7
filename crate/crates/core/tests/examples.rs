//! Every example must run to completion.

mod veronese_surface {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/veronese_surface.rs"));
}

#[test]
fn veronese_surface_runs() {
    veronese_surface::run_example().expect("veronese_surface example should run");
}

mod construct_cap {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/construct_cap.rs"));
}

#[test]
fn construct_cap_runs() {
    construct_cap::run_example().expect("construct_cap example should run");
}

mod witt_design {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/witt_design.rs"));
}

#[test]
fn witt_design_runs() {
    witt_design::run_example().expect("witt_design example should run");
}

mod automorphisms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/automorphisms.rs"));
}

#[test]
fn automorphisms_runs() {
    automorphisms::run_example().expect("automorphisms example should run");
}

mod golay_code {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/golay_code.rs"));
}

#[test]
fn golay_code_runs() {
    golay_code::run_example().expect("golay_code example should run");
}

mod replaced_conics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/replaced_conics.rs"));
}

#[test]
fn replaced_conics_runs() {
    replaced_conics::run_example().expect("replaced_conics example should run");
}

mod exotic_sets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exotic_sets.rs"));
}

#[test]
fn exotic_sets_runs() {
    exotic_sets::run_example().expect("exotic_sets example should run");
}
