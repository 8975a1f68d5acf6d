//! The symmetric product `F_n(X)`: nonempty subsets of `X` with at most `n`
//! points, under the Hausdorff metric.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{CubePoint, MetricKind};
use crate::metric::Metric;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperspaceError {
    #[error("a finite subset must contain at least one point")]
    Empty,
    #[error("the cardinality bound n must be at least 1")]
    ZeroBound,
    #[error("{len} distinct points exceed the cardinality bound n = {n}")]
    Overflow { len: usize, n: usize },
}

/// An element of `F_n(X)`.
///
/// Points are deduplicated under exact equality and kept sorted, so two
/// subsets are equal as sets iff they are equal as values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(
    try_from = "RawSubset<P>",
    bound(deserialize = "P: Deserialize<'de> + Ord")
)]
pub struct FiniteSubset<P> {
    n: usize,
    points: Vec<P>,
}

#[derive(Deserialize)]
struct RawSubset<P> {
    n: usize,
    points: Vec<P>,
}

impl<P: Ord> TryFrom<RawSubset<P>> for FiniteSubset<P> {
    type Error = HyperspaceError;

    fn try_from(raw: RawSubset<P>) -> Result<Self, Self::Error> {
        Self::new(raw.points, raw.n)
    }
}

impl<P: Ord> FiniteSubset<P> {
    pub fn new(mut points: Vec<P>, n: usize) -> Result<Self, HyperspaceError> {
        if n == 0 {
            return Err(HyperspaceError::ZeroBound);
        }
        points.sort();
        points.dedup();
        if points.is_empty() {
            return Err(HyperspaceError::Empty);
        }
        if points.len() > n {
            return Err(HyperspaceError::Overflow { len: points.len(), n });
        }
        Ok(Self { n, points })
    }

    pub fn singleton(point: P, n: usize) -> Result<Self, HyperspaceError> {
        Self::new(vec![point], n)
    }

    pub fn contains(&self, point: &P) -> bool {
        self.points.binary_search(point).is_ok()
    }

    /// Same points, different cardinality bound.
    pub fn with_bound(self, n: usize) -> Result<Self, HyperspaceError> {
        Self::new(self.points, n)
    }
}

impl<P> FiniteSubset<P> {
    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn bound(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; a finite subset is nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, P> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<P> {
        self.points
    }
}

impl<'a, P> IntoIterator for &'a FiniteSubset<P> {
    type Item = &'a P;
    type IntoIter = std::slice::Iter<'a, P>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// `max_{a ∈ A} min_{b ∈ B} d(a, b)`.
pub fn directed_hausdorff<P, M: Metric<P>>(a: &FiniteSubset<P>, b: &FiniteSubset<P>, metric: &M) -> f64 {
    a.iter()
        .map(|x| b.iter().map(|y| metric.distance(x, y)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Hausdorff distance between two finite subsets under an arbitrary metric.
pub fn hausdorff_with<P, M: Metric<P>>(a: &FiniteSubset<P>, b: &FiniteSubset<P>, metric: &M) -> f64 {
    directed_hausdorff(a, b, metric).max(directed_hausdorff(b, a, metric))
}

/// Hausdorff distance between subsets of the cube.
pub fn hausdorff(a: &FiniteSubset<CubePoint>, b: &FiniteSubset<CubePoint>, kind: MetricKind) -> f64 {
    hausdorff_with(a, b, &kind)
}

/// `F_n(f)(A) = f(A)`. The bound `n` is kept; collisions collapse.
pub fn induced_map<P, Q: Ord, F>(f: F, a: &FiniteSubset<P>) -> FiniteSubset<Q>
where
    F: Fn(&P) -> Q,
{
    let mut points: Vec<Q> = a.iter().map(f).collect();
    points.sort();
    points.dedup();
    FiniteSubset { n: a.n, points }
}

/// Fallible variant of [`induced_map`] for point maps that validate input.
pub fn try_induced_map<P, Q: Ord, E, F>(f: F, a: &FiniteSubset<P>) -> Result<FiniteSubset<Q>, E>
where
    F: Fn(&P) -> Result<Q, E>,
{
    let mut points = a.iter().map(f).collect::<Result<Vec<Q>, E>>()?;
    points.sort();
    points.dedup();
    Ok(FiniteSubset { n: a.n, points })
}

/// Set union with cardinality bound `n`.
pub fn union<P: Ord + Clone>(
    a: &FiniteSubset<P>,
    b: &FiniteSubset<P>,
    n: usize,
) -> Result<FiniteSubset<P>, HyperspaceError> {
    let points = a.iter().chain(b.iter()).cloned().collect();
    FiniteSubset::new(points, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> CubePoint {
        CubePoint::new(c.to_vec()).unwrap()
    }

    fn set(points: &[&[f64]], n: usize) -> FiniteSubset<CubePoint> {
        FiniteSubset::new(points.iter().map(|c| pt(c)).collect(), n).unwrap()
    }

    #[test]
    fn construction_invariants() {
        assert_eq!(FiniteSubset::<CubePoint>::new(vec![], 2), Err(HyperspaceError::Empty));
        assert_eq!(FiniteSubset::new(vec![pt(&[0.1])], 0), Err(HyperspaceError::ZeroBound));
        assert_eq!(
            FiniteSubset::new(vec![pt(&[0.1]), pt(&[0.2]), pt(&[0.3])], 2),
            Err(HyperspaceError::Overflow { len: 3, n: 2 })
        );
        // duplicates do not count against the bound
        let a = FiniteSubset::new(vec![pt(&[0.1]), pt(&[0.1, 0.0]), pt(&[0.2])], 2).unwrap();
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn hausdorff_examples() {
        let x = set(&[&[0.3, 0.4]], 2);
        assert_eq!(hausdorff(&x, &x, MetricKind::Product), 0.0);
        let a = set(&[&[0.0]], 2);
        let b = set(&[&[0.0], &[1.0]], 2);
        // oracle: the unmatched point (1) sits at 1/2 from (0)
        assert_eq!(hausdorff(&a, &b, MetricKind::Product), 0.5);
        assert_eq!(set(&[&[0.0], &[1.0]], 2), set(&[&[1.0], &[0.0]], 2));
        assert_eq!(hausdorff(&set(&[&[0.0], &[1.0]], 2), &set(&[&[1.0], &[0.0]], 2), MetricKind::L2Embedded), 0.0);
    }

    #[test]
    fn induced_map_examples() {
        let a = set(&[&[0.1], &[0.5], &[0.9]], 3);
        assert_eq!(induced_map(|x: &CubePoint| x.clone(), &a), a);
        let c = pt(&[0.7, 0.7]);
        let collapsed = induced_map(|_: &CubePoint| c.clone(), &a);
        assert_eq!(collapsed.len(), 1);
        assert_eq!(collapsed.bound(), 3);

        let b = set(&[&[0.5, 0.5, 0.5], &[0.5, 0.5, 0.9]], 2);
        let truncated = induced_map(|x: &CubePoint| x.truncate(2).unwrap(), &b);
        assert_eq!(truncated.points(), &[pt(&[0.5, 0.5])]);
    }

    #[test]
    fn union_examples() {
        let x = set(&[&[0.1]], 1);
        let y = set(&[&[0.2]], 1);
        assert_eq!(union(&x, &x, 2).unwrap().len(), 1);
        assert_eq!(union(&x, &y, 2).unwrap(), set(&[&[0.1], &[0.2]], 2));
        let ab = set(&[&[0.1], &[0.2]], 2);
        let bc = set(&[&[0.2], &[0.3]], 2);
        assert_eq!(union(&ab, &bc, 3).unwrap().len(), 3);
        assert_eq!(union(&ab, &bc, 2), Err(HyperspaceError::Overflow { len: 3, n: 2 }));
    }

    #[test]
    fn json_schema() {
        let a: FiniteSubset<CubePoint> = serde_json::from_str(r#"{"n": 3, "points": [[0.5],[1.0,0.25]]}"#).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"n":3,"points":[[0.5],[1.0,0.25]]}"#);
        assert!(serde_json::from_str::<FiniteSubset<CubePoint>>(r#"{"n": 1, "points": [[0.5],[0.25]]}"#).is_err());
        assert!(serde_json::from_str::<FiniteSubset<CubePoint>>(r#"{"n": 1, "points": []}"#).is_err());
    }
}
