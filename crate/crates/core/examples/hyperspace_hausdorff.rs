// Finite subsets with a cardinality bound, the Hausdorff metric, and
// induced maps.

use hyperlab::hyperspace::union;
use hyperlab::{hausdorff, induced_map, CubePoint, FiniteSubset, MetricKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = FiniteSubset::new(vec![CubePoint::new(vec![0.0])?, CubePoint::new(vec![1.0])?], 3)?;
    let b = FiniteSubset::singleton(CubePoint::new(vec![0.5])?, 3)?;

    let d = hausdorff(&a, &b, MetricKind::Product);
    println!("H(A, B) = {d}");
    assert_eq!(d, 0.25);

    let ab = union(&a, &b, 3)?;
    println!("A ∪ B has {} points", ab.len());

    // F_n(f) for f(x) = x / 2
    let halved = induced_map(|x: &CubePoint| x.scale(0.5).expect("scale in [0, 1]"), &a);
    println!("F_n(x/2)(A) = {:?}", halved.points());

    println!("JSON: {}", serde_json::to_string(&ab)?);
    let back: FiniteSubset<CubePoint> = serde_json::from_str(&serde_json::to_string(&ab)?)?;
    assert_eq!(back, ab);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
