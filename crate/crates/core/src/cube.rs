//! Points of the Hilbert cube `Q = I_1 × I_2 × ...`, stored as finite coordinate
//! prefixes. Every coordinate past the stored prefix is zero.
//!
//! Two metrics are provided:
//!
//! * [`MetricKind::Product`]: `Σ_j |x_j - y_j| / 2^j`. Truncating at depth `m`
//!   moves a point by at most `1/2^m`.
//! * [`MetricKind::L2Embedded`]: the Euclidean norm after scaling coordinate `j`
//!   by `1/2^j`, which places `Q` as a compact convex subset of `ℓ_2`. This norm
//!   is strictly convex, so nearest points in convex hulls are unique.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::Metric;

/// Default truncation depth used by samplers and suites.
pub const DEFAULT_DEPTH: usize = 8;

/// Largest supported truncation depth.
pub const MAX_DEPTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CubeError {
    #[error("coordinate {index} is {value}, outside [0, 1]")]
    OutOfRange { index: usize, value: f64 },
    #[error("{len} stored coordinates exceed the maximum depth {max}")]
    TooDeep { len: usize, max: usize },
    #[error("truncation depth must be at least 1")]
    ZeroDepth,
    #[error("parameter {name} = {value} is outside its allowed range")]
    BadParameter { name: &'static str, value: f64 },
}

/// Which metric to put on the cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Product,
    L2Embedded,
}

impl std::str::FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "product" => Ok(MetricKind::Product),
            "l2" | "l2-embedded" | "l2_embedded" => Ok(MetricKind::L2Embedded),
            other => Err(format!("unknown metric `{other}` (expected `product` or `l2`)")),
        }
    }
}

/// A point of the Hilbert cube.
///
/// The stored prefix never ends in a zero, so structural equality coincides
/// with equality of the infinite sequences.
#[derive(Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct CubePoint {
    coords: Vec<f64>,
}

impl CubePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, CubeError> {
        if coords.len() > MAX_DEPTH {
            return Err(CubeError::TooDeep { len: coords.len(), max: MAX_DEPTH });
        }
        for (index, &value) in coords.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(CubeError::OutOfRange { index: index + 1, value });
            }
        }
        Ok(Self::normalized(coords))
    }

    pub fn origin() -> Self {
        Self { coords: Vec::new() }
    }

    /// `(1, 1, ..., 1)` with `depth` ones followed by zeros.
    pub fn ones(depth: usize) -> Result<Self, CubeError> {
        Self::new(vec![1.0; depth])
    }

    /// Builds a point from arithmetic output. Rounding can push a convex
    /// combination one ulp outside `[0, 1]`; such values are clamped.
    pub(crate) fn from_arithmetic(mut coords: Vec<f64>) -> Self {
        debug_assert!(coords.len() <= MAX_DEPTH);
        for c in coords.iter_mut() {
            debug_assert!(c.is_finite());
            *c = c.clamp(0.0, 1.0);
        }
        Self::normalized(coords)
    }

    fn normalized(mut coords: Vec<f64>) -> Self {
        for c in coords.iter_mut() {
            if *c == 0.0 {
                // folds -0.0 into +0.0
                *c = 0.0;
            }
        }
        while coords.last() == Some(&0.0) {
            coords.pop();
        }
        Self { coords }
    }

    /// The stored prefix (no trailing zeros).
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Number of stored coordinates; zero for the origin.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinate at zero-based `index`, zero past the stored prefix.
    pub fn get(&self, index: usize) -> f64 {
        self.coords.get(index).copied().unwrap_or(0.0)
    }

    /// `f_m(x) = (x_1, ..., x_m, 0, 0, ...)`.
    pub fn truncate(&self, m: usize) -> Result<Self, CubeError> {
        if m == 0 {
            return Err(CubeError::ZeroDepth);
        }
        let keep = m.min(self.coords.len());
        Ok(Self::normalized(self.coords[..keep].to_vec()))
    }

    /// Coordinatewise `t · x`.
    pub fn scale(&self, t: f64) -> Result<Self, CubeError> {
        check_unit("t", t)?;
        Ok(Self::normalized(self.coords.iter().map(|c| t * c).collect()))
    }

    /// Keeps coordinates `1..=k` and multiplies the rest by `1 - t`.
    pub fn tail_contract(&self, k: usize, t: f64) -> Result<Self, CubeError> {
        if k == 0 {
            return Err(CubeError::ZeroDepth);
        }
        check_unit("t", t)?;
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &c)| if i < k { c } else { (1.0 - t) * c })
            .collect();
        Ok(Self::normalized(coords))
    }

    /// `(1 - t) · self + t · other`. Exact at `t = 0` and `t = 1`.
    pub fn lerp(&self, other: &Self, t: f64) -> Result<Self, CubeError> {
        check_unit("t", t)?;
        let len = self.len().max(other.len());
        let coords = (0..len)
            .map(|i| (1.0 - t) * self.get(i) + t * other.get(i))
            .collect();
        Ok(Self::from_arithmetic(coords))
    }

    /// Coordinates scaled by `1/2^j` and padded to `dim`: the image of the
    /// point in `ℓ_2`.
    pub fn embedded(&self, dim: usize) -> Vec<f64> {
        (0..dim).map(|i| self.get(i) * weight(i)).collect()
    }
}

/// `1/2^(index+1)`, exact in binary floating point.
pub(crate) fn weight(index: usize) -> f64 {
    0.5f64.powi(index as i32 + 1)
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<(), CubeError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(CubeError::BadParameter { name, value })
    }
}

/// Distance between two cube points under the chosen metric.
pub fn distance(x: &CubePoint, y: &CubePoint, kind: MetricKind) -> f64 {
    let len = x.len().max(y.len());
    match kind {
        MetricKind::Product => (0..len).map(|i| (x.get(i) - y.get(i)).abs() * weight(i)).sum(),
        MetricKind::L2Embedded => (0..len)
            .map(|i| {
                let d = (x.get(i) - y.get(i)) * weight(i);
                d * d
            })
            .sum::<f64>()
            .sqrt(),
    }
}

/// Inner product `⟨x - o, y - o⟩` in the embedded `ℓ_2` coordinates.
pub fn embedded_inner(x: &CubePoint, y: &CubePoint, o: &CubePoint) -> f64 {
    let len = x.len().max(y.len()).max(o.len());
    (0..len)
        .map(|i| {
            let w = weight(i) * weight(i);
            (x.get(i) - o.get(i)) * (y.get(i) - o.get(i)) * w
        })
        .sum()
}

impl Metric<CubePoint> for MetricKind {
    fn distance(&self, a: &CubePoint, b: &CubePoint) -> f64 {
        distance(a, b, *self)
    }
}

impl Eq for CubePoint {}

impl std::hash::Hash for CubePoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // stored coordinates are finite, never -0.0, and never trail in zero
        for c in &self.coords {
            c.to_bits().hash(state);
        }
    }
}

impl Ord for CubePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.len().max(other.len());
        (0..len)
            .map(|i| self.get(i).total_cmp(&other.get(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for CubePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<f64>> for CubePoint {
    type Error = CubeError;

    fn try_from(coords: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(coords)
    }
}

impl From<CubePoint> for Vec<f64> {
    fn from(p: CubePoint) -> Self {
        p.coords
    }
}

impl fmt::Debug for CubePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubePoint{:?}", self.coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> CubePoint {
        CubePoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&pt(&[0.0]), &pt(&[1.0]), MetricKind::Product), 0.5);
        assert_eq!(distance(&pt(&[1.0, 1.0]), &pt(&[0.0, 0.0]), MetricKind::Product), 0.75);
        assert_eq!(distance(&pt(&[1.0]), &pt(&[0.0]), MetricKind::L2Embedded), 0.5);
        let x = pt(&[0.3, 0.9, 0.1]);
        assert_eq!(distance(&x, &x, MetricKind::Product), 0.0);
        assert_eq!(distance(&x, &x, MetricKind::L2Embedded), 0.0);
    }

    #[test]
    fn trailing_zeros_are_implicit() {
        assert_eq!(pt(&[0.5, 0.0, 0.0]), pt(&[0.5]));
        assert_eq!(pt(&[0.0, -0.0]), CubePoint::origin());
        assert_eq!(pt(&[0.5, 0.0]).len(), 1);
    }

    #[test]
    fn rejects_bad_coordinates() {
        assert!(matches!(CubePoint::new(vec![1.5]), Err(CubeError::OutOfRange { index: 1, .. })));
        assert!(CubePoint::new(vec![f64::NAN]).is_err());
        assert!(matches!(CubePoint::new(vec![0.5; MAX_DEPTH + 1]), Err(CubeError::TooDeep { .. })));
    }

    #[test]
    fn truncate_examples() {
        let x = pt(&[0.5, 0.5, 0.5]);
        assert_eq!(x.truncate(2).unwrap(), pt(&[0.5, 0.5]));
        assert_eq!(x.truncate(0), Err(CubeError::ZeroDepth));

        // oracle: direct summation of the dropped tail
        let ones = CubePoint::ones(8).unwrap();
        let oracle: f64 = (4..=8).map(|j| 1.0 / f64::powi(2.0, j)).sum();
        assert_eq!(oracle, 31.0 / 256.0);
        assert_eq!(distance(&ones, &ones.truncate(3).unwrap(), MetricKind::Product), oracle);
    }

    #[test]
    fn scale_examples() {
        let x = pt(&[1.0, 1.0]);
        assert_eq!(x.scale(0.0).unwrap(), CubePoint::origin());
        assert_eq!(x.scale(1.0).unwrap(), x);
        assert!(x.scale(1.5).is_err());

        let ones = CubePoint::ones(8).unwrap();
        let oracle: f64 = 0.1 * (1..=8).map(|j| 1.0 / f64::powi(2.0, j)).sum::<f64>();
        let d = distance(&ones, &ones.scale(0.9).unwrap(), MetricKind::Product);
        assert!((d - 0.1 * 255.0 / 256.0).abs() < 1e-15);
        assert!((d - oracle).abs() < 1e-15);
    }

    #[test]
    fn tail_contract_examples() {
        let x = pt(&[0.5, 0.5, 0.5]);
        assert_eq!(x.tail_contract(1, 1.0).unwrap(), pt(&[0.5]));
        assert_eq!(x.tail_contract(1, 1.0).unwrap(), x.truncate(1).unwrap());
        assert_eq!(x.tail_contract(2, 0.0).unwrap(), x);
        let y = pt(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(y.tail_contract(2, 0.5).unwrap(), pt(&[1.0, 1.0, 0.5, 0.5]));
        assert!(y.tail_contract(0, 0.5).is_err());
        assert!(y.tail_contract(2, -0.1).is_err());
    }

    #[test]
    fn ordering_is_lexicographic_with_zero_padding() {
        assert!(pt(&[0.5]) < pt(&[0.5, 0.1]));
        assert!(pt(&[0.2, 0.9]) < pt(&[0.5]));
        assert_eq!(pt(&[0.5]).cmp(&pt(&[0.5, 0.0])), Ordering::Equal);
    }

    #[test]
    fn json_is_a_plain_array() {
        let x = pt(&[0.5, 1.0, 0.25]);
        assert_eq!(serde_json::to_string(&x).unwrap(), "[0.5,1.0,0.25]");
        let back: CubePoint = serde_json::from_str("[0.5,1.0,0.25,0.0]").unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CubePoint>("[2.0]").is_err());
    }

    #[test]
    fn lerp_endpoints_are_exact() {
        let a = pt(&[0.1, 0.7, 0.3]);
        let b = pt(&[0.9, 0.2]);
        assert_eq!(a.lerp(&b, 0.0).unwrap(), a);
        assert_eq!(a.lerp(&b, 1.0).unwrap(), b);
    }
}
