//! The cell-like map `f: F_n(X × Q) → F_n(X) × Q`,
//!
//! `f({(x_1, q_1), ..., (x_l, q_l)}) = ({x_1, ..., x_l}, η_p({q_1, ..., q_l}))`,
//!
//! together with the homotopy that contracts each fiber of `f` by sliding
//! every `Q`-coordinate toward the anchor `q`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{distance, CubeError, CubePoint, MetricKind};
use crate::homotopies::to_json;
use crate::hyperspace::{induced_map, try_induced_map, FiniteSubset, HyperspaceError};
use crate::metric::Metric;
use crate::projection::{eta_points, ProjectionError, DEFAULT_TOL};
use crate::report::{Tally, VerificationReport, Violation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FactorError {
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Hyperspace(#[from] HyperspaceError),
    #[error("sample {index} is not in the fiber: {reason}")]
    NotInFiber { index: usize, reason: String },
    #[error("a finite metric space needs a square, symmetric, nonnegative matrix with zero diagonal")]
    BadDistanceMatrix,
    #[error("point index {index} is outside a space of {size} points")]
    UnknownSite { index: usize, size: usize },
}

/// A point `(x, q)` of `X × Q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProductPoint<B> {
    pub base: B,
    pub fiber: CubePoint,
}

impl<B> ProductPoint<B> {
    pub fn new(base: B, fiber: CubePoint) -> Self {
        Self { base, fiber }
    }
}

/// A point `(A, q)` of `F_n(X) × Q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "B: Deserialize<'de> + Ord"))]
pub struct FactorImage<B> {
    pub base_set: FiniteSubset<B>,
    pub anchor: CubePoint,
}

impl<B: PartialEq> FactorImage<B> {
    /// Base sets must match exactly; anchors within `tol` in the embedded norm.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.base_set.points() == other.base_set.points()
            && distance(&self.anchor, &other.anchor, MetricKind::L2Embedded) <= tol
    }
}

/// A point of a finite metric space, identified by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Site(pub usize);

/// A finite metric space given by its distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    distances: Vec<Vec<f64>>,
}

impl FiniteMetricSpace {
    pub fn new(distances: Vec<Vec<f64>>) -> Result<Self, FactorError> {
        let size = distances.len();
        let ok = distances.iter().enumerate().all(|(i, row)| {
            row.len() == size
                && row[i] == 0.0
                && row.iter().enumerate().all(|(j, &d)| d.is_finite() && d >= 0.0 && d == distances[j][i] && (i == j || d > 0.0))
        });
        if ok {
            Ok(Self { distances })
        } else {
            Err(FactorError::BadDistanceMatrix)
        }
    }

    /// `size` points on a line at unit spacing.
    pub fn path(size: usize) -> Self {
        let distances = (0..size)
            .map(|i| (0..size).map(|j| (i as f64 - j as f64).abs()).collect())
            .collect();
        Self { distances }
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn site(&self, index: usize) -> Result<Site, FactorError> {
        if index < self.len() {
            Ok(Site(index))
        } else {
            Err(FactorError::UnknownSite { index, size: self.len() })
        }
    }
}

impl Metric<Site> for FiniteMetricSpace {
    fn distance(&self, a: &Site, b: &Site) -> f64 {
        self.distances[a.0][b.0]
    }
}

/// `max(d_X(x, x'), |q - q'|)` on `X × Q`, the fiber measured in the
/// embedded norm.
#[derive(Debug, Clone)]
pub struct ProductMetric<M> {
    pub base: M,
}

impl<B, M: Metric<B>> Metric<ProductPoint<B>> for ProductMetric<M> {
    fn distance(&self, a: &ProductPoint<B>, b: &ProductPoint<B>) -> f64 {
        self.base
            .distance(&a.base, &b.base)
            .max(distance(&a.fiber, &b.fiber, MetricKind::L2Embedded))
    }
}

/// The map `f` with the default projection tolerance.
pub fn ce_map<B: Ord + Clone>(s: &FiniteSubset<ProductPoint<B>>, p: &CubePoint) -> Result<FactorImage<B>, ProjectionError> {
    ce_map_with_tol(s, p, DEFAULT_TOL)
}

pub fn ce_map_with_tol<B: Ord + Clone>(
    s: &FiniteSubset<ProductPoint<B>>,
    p: &CubePoint,
    tol: f64,
) -> Result<FactorImage<B>, ProjectionError> {
    let base_set = induced_map(|pt: &ProductPoint<B>| pt.base.clone(), s);
    let mut fibers: Vec<CubePoint> = s.iter().map(|pt| pt.fiber.clone()).collect();
    fibers.sort();
    fibers.dedup();
    let anchor = eta_points(p, &fibers, tol)?.point;
    Ok(FactorImage { base_set, anchor })
}

/// `G(S, t)`: bases fixed, every fiber coordinate moved to `(1 - t) q_i + t q`.
pub fn fiber_homotopy<B: Ord + Clone>(
    s: &FiniteSubset<ProductPoint<B>>,
    q: &CubePoint,
    t: f64,
) -> Result<FiniteSubset<ProductPoint<B>>, CubeError> {
    try_induced_map(|pt: &ProductPoint<B>| Ok(ProductPoint::new(pt.base.clone(), pt.fiber.lerp(q, t)?)), s)
}

/// `{(x, q) : x ∈ B}`: the preimage point that witnesses surjectivity, and
/// the point every fiber over `(B, q)` contracts to.
pub fn collapse_point<B: Ord + Clone>(image: &FactorImage<B>) -> FiniteSubset<ProductPoint<B>> {
    induced_map(|x: &B| ProductPoint::new(x.clone(), image.anchor.clone()), &image.base_set)
}

/// Builds a point of the fiber over `(base_set, q)` where `q = η_p(raw)`:
/// the raw fibers are blended toward `q` by `pull`, which keeps their
/// projection at `q`, then paired with bases so every base point is used.
///
/// Requires `raw.len() >= base_set.len()`; the result has cardinality
/// bound `n`.
pub fn construct_fiber_sample<B: Ord + Clone>(
    base_set: &FiniteSubset<B>,
    raw: &[CubePoint],
    pull: f64,
    p: &CubePoint,
    n: usize,
) -> Result<(FiniteSubset<ProductPoint<B>>, FactorImage<B>), FactorError> {
    if raw.len() < base_set.len() {
        return Err(FactorError::NotInFiber {
            index: 0,
            reason: format!("{} fibers cannot cover {} base points", raw.len(), base_set.len()),
        });
    }
    let q = eta_points(p, raw, DEFAULT_TOL)?.point;
    let bases = base_set.points();
    let points = raw
        .iter()
        .enumerate()
        .map(|(i, r)| Ok(ProductPoint::new(bases[i % bases.len()].clone(), r.lerp(&q, pull)?)))
        .collect::<Result<Vec<_>, CubeError>>()?;
    let sample = FiniteSubset::new(points, n)?;
    Ok((sample, FactorImage { base_set: base_set.clone(), anchor: q }))
}

/// Checks that `G` maps the fiber over `image` into itself: for every
/// sample and every `t`, `f(G(S, t)) = image` (bases exact, anchor within
/// `tol`). `worst` is the largest anchor deviation.
///
/// Samples whose own image differs from `image` are rejected.
pub fn verify_fiber_preservation<B>(
    image: &FactorImage<B>,
    samples: &[FiniteSubset<ProductPoint<B>>],
    p: &CubePoint,
    ts: &[f64],
    tol: f64,
) -> Result<VerificationReport, FactorError>
where
    B: Ord + Clone + Serialize + Send + Sync,
{
    for (index, s) in samples.iter().enumerate() {
        let own = ce_map(s, p)?;
        if own.base_set.points() != image.base_set.points() {
            return Err(FactorError::NotInFiber { index, reason: "base sets differ".into() });
        }
        let dev = distance(&own.anchor, &image.anchor, MetricKind::L2Embedded);
        if dev > tol {
            return Err(FactorError::NotInFiber { index, reason: format!("anchor deviates by {dev:e}") });
        }
    }
    let tallies = samples
        .par_iter()
        .map(|s| -> Result<Tally, FactorError> {
            let mut tally = Tally::new();
            for &t in ts {
                tally.trial();
                let moved = fiber_homotopy(s, &image.anchor, t)?;
                let out = ce_map(&moved, p)?;
                let dev = distance(&out.anchor, &image.anchor, MetricKind::L2Embedded);
                tally.observe(dev);
                if out.base_set.points() != image.base_set.points() {
                    tally.violate(Violation::new(format!("base[t={t}]"), to_json(s), out.base_set.len() as f64));
                }
                if dev > tol {
                    tally.violate(Violation::new(format!("anchor[t={t}]"), to_json(s), dev));
                }
            }
            Ok(tally)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let tally = tallies.into_iter().fold(Tally::new(), Tally::merge);
    Ok(tally.finish("fiber-preservation", tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::eta_oracle;

    fn pt(c: &[f64]) -> CubePoint {
        CubePoint::new(c.to_vec()).unwrap()
    }

    fn pp(b: usize, c: &[f64]) -> ProductPoint<Site> {
        ProductPoint::new(Site(b), pt(c))
    }

    #[test]
    fn singleton_maps_to_itself() {
        let s = FiniteSubset::singleton(pp(3, &[0.2, 0.7]), 4).unwrap();
        let img = ce_map(&s, &pt(&[0.9])).unwrap();
        assert_eq!(img.base_set.points(), &[Site(3)]);
        assert_eq!(img.anchor, pt(&[0.2, 0.7]));
    }

    #[test]
    fn shared_fiber_maps_to_it() {
        let q = pt(&[0.4, 0.1, 0.6]);
        let s = FiniteSubset::new(vec![pp(0, q.coords()), pp(2, q.coords()), pp(5, q.coords())], 4).unwrap();
        let img = ce_map(&s, &pt(&[1.0, 1.0])).unwrap();
        assert_eq!(img.base_set.points(), &[Site(0), Site(2), Site(5)]);
        assert_eq!(img.anchor, q);
    }

    #[test]
    fn distinct_fibers_match_the_oracle() {
        let s = FiniteSubset::new(vec![pp(0, &[0.9, 0.1]), pp(1, &[0.2, 0.8, 0.5]), pp(1, &[0.6, 0.6])], 3).unwrap();
        let p = pt(&[0.1, 0.1, 0.9]);
        let img = ce_map(&s, &p).unwrap();
        assert_eq!(img.base_set.points(), &[Site(0), Site(1)]);
        let fibers = FiniteSubset::new(s.iter().map(|x| x.fiber.clone()).collect(), 3).unwrap();
        let oracle = eta_oracle(&p, &fibers, 0.01).unwrap();
        let solver = distance(&img.anchor, &p, MetricKind::L2Embedded);
        let bound = crate::projection::objective_sensitivity(&p, fibers.points()) * 0.01;
        assert!((oracle.objective - solver).abs() <= bound);
        assert!(solver <= oracle.objective + 1e-12);
    }

    #[test]
    fn fiber_homotopy_endpoints() {
        let s = FiniteSubset::new(vec![pp(0, &[0.9, 0.1]), pp(1, &[0.2, 0.8]), pp(1, &[0.6, 0.6])], 3).unwrap();
        let q = pt(&[0.5, 0.5]);
        assert_eq!(fiber_homotopy(&s, &q, 0.0).unwrap(), s);
        let end = fiber_homotopy(&s, &q, 1.0).unwrap();
        assert_eq!(end, FiniteSubset::new(vec![pp(0, &[0.5, 0.5]), pp(1, &[0.5, 0.5])], 3).unwrap());
        for t in [0.1, 0.5, 0.9] {
            let moved = fiber_homotopy(&s, &q, t).unwrap();
            let bases: Vec<_> = moved.iter().map(|x| x.base).collect();
            let mut original: Vec<_> = s.iter().map(|x| x.base).collect();
            original.dedup();
            let mut b = bases.clone();
            b.dedup();
            assert_eq!(b, original);
        }
    }

    #[test]
    fn collapse_point_is_the_t1_image() {
        let base = FiniteSubset::new(vec![Site(1), Site(4)], 4).unwrap();
        let p = pt(&[0.3, 0.3, 0.3]);
        let raw = vec![pt(&[0.9, 0.1]), pt(&[0.1, 0.95, 0.4]), pt(&[0.7, 0.7, 0.7])];
        let (s, img) = construct_fiber_sample(&base, &raw, 0.3, &p, 4).unwrap();
        assert!(ce_map(&s, &p).unwrap().approx_eq(&img, 1e-9));
        assert_eq!(fiber_homotopy(&s, &img.anchor, 1.0).unwrap(), collapse_point(&img));
    }

    #[test]
    fn fiber_preservation_constant_fibers() {
        let q = pt(&[0.25, 0.5]);
        let img = FactorImage { base_set: FiniteSubset::new(vec![Site(0), Site(1)], 3).unwrap(), anchor: q.clone() };
        let samples = vec![collapse_point(&img)];
        let ts: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let r = verify_fiber_preservation(&img, &samples, &pt(&[1.0]), &ts, 1e-12).unwrap();
        assert!(r.pass);
        assert_eq!(r.worst, 0.0);
        assert_eq!(r.trials, 11);
    }

    #[test]
    fn fiber_preservation_rejects_outsiders() {
        let q = pt(&[0.25, 0.5]);
        let img = FactorImage { base_set: FiniteSubset::new(vec![Site(0)], 3).unwrap(), anchor: q.clone() };
        let stranger = FiniteSubset::singleton(pp(0, &[0.9]), 3).unwrap();
        let err = verify_fiber_preservation(&img, &[stranger], &pt(&[1.0]), &[0.5], 1e-6).unwrap_err();
        assert!(matches!(err, FactorError::NotInFiber { index: 0, .. }));
        let wrong_base = FiniteSubset::singleton(pp(1, &[0.25, 0.5]), 3).unwrap();
        assert!(verify_fiber_preservation(&img, &[wrong_base], &pt(&[1.0]), &[0.5], 1e-6).is_err());
    }

    #[test]
    fn finite_metric_space_validation() {
        assert!(FiniteMetricSpace::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_ok());
        assert!(FiniteMetricSpace::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(FiniteMetricSpace::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).is_err());
        let line = FiniteMetricSpace::path(4);
        assert_eq!(line.distance(&Site(0), &Site(3)), 3.0);
        assert!(line.site(4).is_err());
    }

    #[test]
    fn product_metric_is_a_max() {
        let m = ProductMetric { base: FiniteMetricSpace::path(3) };
        assert_eq!(m.distance(&pp(0, &[1.0]), &pp(2, &[0.0])), 2.0);
        assert_eq!(m.distance(&pp(1, &[1.0]), &pp(1, &[0.0])), 0.5);
    }
}
