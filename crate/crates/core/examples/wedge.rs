// Two cubes glued at a point: the decomposition of F_2 of the wedge and
// the push off the shared piece.

use hyperlab::homotopies::verify_zpush;
use hyperlab::wedge::Piece;
use hyperlab::{hausdorff_with, CubePoint, FiniteSubset, Side, WedgeSpace};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let space = WedgeSpace::new(2)?;
    let x = space.point(Side::One, CubePoint::new(vec![0.2, 0.7])?)?;
    let y = space.point(Side::Two, CubePoint::new(vec![0.4])?)?;
    let glue = space.glue_point();

    for set in [vec![x.clone(), y.clone()], vec![x.clone(), glue.clone()], vec![glue.clone()]] {
        let a = FiniteSubset::new(set, 2)?;
        println!("{:?} -> {:?}", a.points(), space.classify(&a)?);
    }

    let a = FiniteSubset::new(vec![x, glue], 2)?;
    assert_eq!(space.classify(&a)?, Piece::InF2Q1andK);
    let pushed = space.h_push(&a, 0.99)?;
    println!("pushed off the glue: {:?} -> {:?}", pushed.points(), space.classify(&pushed)?);

    let grid = WedgeSpace::all_pairs(&space.grid_points(&[0.0, 0.5, 1.0])?);
    println!("{}", space.verify_decomposition(&grid).summary());

    let samples = vec![a];
    let metric = |u: &FiniteSubset<_>, v: &FiniteSubset<_>| hausdorff_with(u, v, &space);
    println!("{}", verify_zpush(&space.zpush_family(), &samples, &[0.05, 0.01], &metric)?.summary());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
