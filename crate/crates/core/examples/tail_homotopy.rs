// The tail-contracting homotopy on finite subsets and the straight-line
// contraction to the origin.

use hyperlab::homotopies::{tail_homotopy, induced_contraction, track_diameter, PointHomotopy};
use hyperlab::{CubePoint, FiniteSubset, MetricKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = FiniteSubset::new(
        vec![CubePoint::new(vec![0.9, 0.8, 0.7, 0.6])?, CubePoint::new(vec![0.1, 0.2, 0.3, 0.4])?],
        4,
    )?;
    let ts: Vec<f64> = (0..=100).map(|i| f64::from(i) / 100.0).collect();
    for k in 1..=4 {
        let diameter = track_diameter(&a, k, &ts, MetricKind::Product)?;
        let end = tail_homotopy(&a, k, 1.0)?;
        println!("k={k}: track diameter {diameter:.6} (bound {:.6}), G(A,1) = {:?}", 0.5f64.powi(k as i32), end.points());
    }

    let h = PointHomotopy::straight_line();
    for t in [0.0, 0.5, 1.0] {
        println!("contraction t={t}: {:?}", induced_contraction(&h, &a, t)?.points());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
