// Points of the truncated Hilbert cube and its two metrics.

use hyperlab::{distance, CubePoint, MetricKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = CubePoint::new(vec![1.0, 0.5, 0.25])?;
    let y = CubePoint::new(vec![0.0, 0.5])?;

    let product = distance(&x, &y, MetricKind::Product);
    let embedded = distance(&x, &y, MetricKind::L2Embedded);
    println!("x = {x:?}, y = {y:?}");
    println!("product metric     {product:.6}");
    println!("embedded l2 metric {embedded:.6}");
    assert!((product - (0.5 + 0.25 / 8.0)).abs() < 1e-15);

    // trailing zeros carry no information
    let padded = CubePoint::new(vec![0.0, 0.5, 0.0, 0.0])?;
    assert_eq!(padded, y);

    // the tail contraction only moves coordinates past k
    let moved = x.tail_contract(1, 1.0)?;
    println!("tail contraction past the first coordinate: {moved:?}");
    println!("JSON: {}", serde_json::to_string(&x)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
