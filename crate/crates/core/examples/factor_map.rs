// The fiberwise map F_n(X × Q) → F_n(X) × Q, a surjectivity witness, and
// the contraction of a fiber.

use hyperlab::factor_map::{ce_map, collapse_point, fiber_homotopy, FactorImage, ProductPoint, Site};
use hyperlab::{CubePoint, FiniteSubset};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = CubePoint::new(vec![0.5, 0.5])?;
    let s = FiniteSubset::new(
        vec![
            ProductPoint::new(Site(0), CubePoint::new(vec![1.0])?),
            ProductPoint::new(Site(3), CubePoint::new(vec![0.0, 1.0])?),
            ProductPoint::new(Site(3), CubePoint::new(vec![0.0])?),
        ],
        4,
    )?;
    let image = ce_map(&s, &p)?;
    println!("f(S) = {}", serde_json::to_string(&image)?);

    for t in [0.0, 0.5, 1.0] {
        let moved = fiber_homotopy(&s, &image.anchor, t)?;
        let again = ce_map(&moved, &p)?;
        println!("t={t}: |G(S,t)| = {}, stays in fiber: {}", moved.len(), again.approx_eq(&image, 1e-6));
    }

    let target = FactorImage { base_set: FiniteSubset::new(vec![Site(1), Site(2)], 4)?, anchor: CubePoint::new(vec![0.3])? };
    let witness = collapse_point(&target);
    assert!(ce_map(&witness, &p)?.approx_eq(&target, 1e-9));
    println!("witness for {:?}: {:?}", target.base_set.points(), witness.points());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
