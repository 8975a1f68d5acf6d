mod cube_metrics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cube_metrics.rs"));
}

#[test]
fn cube_metrics_example_runs() {
    cube_metrics::run_example().expect("cube_metrics example should run");
}

mod hyperspace_hausdorff {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hyperspace_hausdorff.rs"));
}

#[test]
fn hyperspace_hausdorff_example_runs() {
    hyperspace_hausdorff::run_example().expect("hyperspace_hausdorff example should run");
}

mod zmap_convergence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/zmap_convergence.rs"));
}

#[test]
fn zmap_convergence_example_runs() {
    zmap_convergence::run_example().expect("zmap_convergence example should run");
}

mod tail_homotopy {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tail_homotopy.rs"));
}

#[test]
fn tail_homotopy_example_runs() {
    tail_homotopy::run_example().expect("tail_homotopy example should run");
}

mod nearest_point {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/nearest_point.rs"));
}

#[test]
fn nearest_point_example_runs() {
    nearest_point::run_example().expect("nearest_point example should run");
}

mod factor_map {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/factor_map.rs"));
}

#[test]
fn factor_map_example_runs() {
    factor_map::run_example().expect("factor_map example should run");
}

mod wedge {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/wedge.rs"));
}

#[test]
fn wedge_example_runs() {
    wedge::run_example().expect("wedge example should run");
}

mod verify_all {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_all.rs"));
}

#[test]
fn verify_all_example_runs() {
    verify_all::run_example().expect("verify_all example should run");
}
