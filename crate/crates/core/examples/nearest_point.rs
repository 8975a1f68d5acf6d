// Nearest point of a convex hull in the embedded l2 norm, its brute-force
// cross-check, and invariance under blending toward the answer.

use hyperlab::distance;
use hyperlab::projection::{blend, eta, eta_oracle, objective_sensitivity, variational_residual, DEFAULT_TOL};
use hyperlab::{CubePoint, FiniteSubset, MetricKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = CubePoint::new(vec![0.0, 0.0, 1.0])?;
    let k = FiniteSubset::new(
        vec![CubePoint::new(vec![1.0])?, CubePoint::new(vec![0.0, 1.0])?, CubePoint::new(vec![0.5, 0.5, 0.5])?],
        3,
    )?;

    let solved = eta(&p, &k, DEFAULT_TOL)?;
    println!("solver: {}", serde_json::to_string(&solved)?);
    println!("variational residual {:.3e}", variational_residual(&p, k.points(), &solved.point));

    let oracle = eta_oracle(&p, &k, 0.01)?;
    let allowed = objective_sensitivity(&p, k.points()) * 0.01;
    println!("oracle objective {:.6} vs solver {:.6} (allowed gap {allowed:.3e})", oracle.objective, solved.objective);
    assert!((oracle.objective - solved.objective).abs() <= allowed);

    for t in [0.25, 0.5, 0.75] {
        let moved = eta(&p, &blend(&k, &solved.point, t)?, DEFAULT_TOL)?.point;
        println!("t={t}: deviation {:.3e}", distance(&moved, &solved.point, MetricKind::L2Embedded));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
