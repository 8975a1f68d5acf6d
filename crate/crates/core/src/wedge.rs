//! Two Hilbert cubes glued at one point: `X = Q_1 ∪ Q_2`, `Q_1 ∩ Q_2 = {p}`
//! with `p = (1, 1, ..., 1)`, and the pieces of its second symmetric product
//!
//! * `F_2(Q_1)` and `F_2(Q_2)`,
//! * `𝒦 = {{x_1, x_2} : x_1 ∈ Q_1, x_2 ∈ Q_2}`,
//!
//! which cover `F_2(X)`. The glue point is a cut point of `X`, so `X` is not
//! a Q-manifold even though `F_2(X)` is a Hilbert cube; that fact is not
//! checkable numerically and nothing here tries.
//!
//! Each cube is truncated at a fixed depth `d`, and `p` is the point whose
//! `d` stored coordinates are all `1`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{check_unit, distance, CubeError, CubePoint, MetricKind, MAX_DEPTH};
use crate::homotopies::{to_json, ZPushFamily};
use crate::hyperspace::{hausdorff_with, FiniteSubset, HyperspaceError};
use crate::metric::Metric;
use crate::report::{Tally, VerificationReport, Violation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WedgeError {
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Hyperspace(#[from] HyperspaceError),
    #[error("wedge depth must lie in [1, {MAX_DEPTH}], got {0}")]
    BadDepth(usize),
    #[error("point has {len} coordinates but the wedge is truncated at depth {depth}")]
    TooDeep { len: usize, depth: usize },
    #[error("symmetric products of the wedge are limited to two points, got {0}")]
    TooManyPoints(usize),
    #[error("set is not in F_2(Q_1) ∩ 𝒦")]
    NotInChartDomain,
    #[error("h_t only acts on subsets of Q_1")]
    NotInFirstCube,
    #[error("h_t needs t in (0, 1), got {0}")]
    BadPushParameter(f64),
    #[error("side must be 1 or 2, got {0}")]
    BadSide(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

impl TryFrom<u8> for Side {
    type Error = WedgeError;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Side::One),
            2 => Ok(Side::Two),
            other => Err(WedgeError::BadSide(other)),
        }
    }
}

impl From<Side> for u8 {
    fn from(s: Side) -> u8 {
        match s {
            Side::One => 1,
            Side::Two => 2,
        }
    }
}

/// A point of the wedge. Built through [`WedgeSpace::point`], which stores the
/// glue point on side one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WedgePoint {
    side: Side,
    coords: CubePoint,
}

impl WedgePoint {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coords(&self) -> &CubePoint {
        &self.coords
    }
}

impl fmt::Debug for WedgePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.side, self.coords.coords())
    }
}

/// Which pieces of `F_2(X)` contain a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Piece {
    InF2Q1,
    InF2Q2,
    InK,
    InF2Q1andK,
    InF2Q2andK,
    InAll,
}

/// Membership flags for the three pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Membership {
    pub f2q1: bool,
    pub f2q2: bool,
    pub k: bool,
}

impl Piece {
    pub fn membership(self) -> Membership {
        let (f2q1, f2q2, k) = match self {
            Piece::InF2Q1 => (true, false, false),
            Piece::InF2Q2 => (false, true, false),
            Piece::InK => (false, false, true),
            Piece::InF2Q1andK => (true, false, true),
            Piece::InF2Q2andK => (false, true, true),
            Piece::InAll => (true, true, true),
        };
        Membership { f2q1, f2q2, k }
    }
}

/// The wedge `Q_1 ∨ Q_2` truncated at a fixed depth.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeSpace {
    depth: usize,
    glue: CubePoint,
}

impl WedgeSpace {
    pub fn new(depth: usize) -> Result<Self, WedgeError> {
        if depth == 0 || depth > MAX_DEPTH {
            return Err(WedgeError::BadDepth(depth));
        }
        Ok(Self { depth, glue: CubePoint::ones(depth)? })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Coordinates of the glue point `p`.
    pub fn glue(&self) -> &CubePoint {
        &self.glue
    }

    pub fn glue_point(&self) -> WedgePoint {
        WedgePoint { side: Side::One, coords: self.glue.clone() }
    }

    pub fn point(&self, side: Side, coords: CubePoint) -> Result<WedgePoint, WedgeError> {
        if coords.len() > self.depth {
            return Err(WedgeError::TooDeep { len: coords.len(), depth: self.depth });
        }
        let side = if coords == self.glue { Side::One } else { side };
        Ok(WedgePoint { side, coords })
    }

    /// Re-validates a point obtained elsewhere (e.g. deserialized).
    pub fn canonical(&self, x: WedgePoint) -> Result<WedgePoint, WedgeError> {
        self.point(x.side, x.coords)
    }

    pub fn is_glue(&self, x: &WedgePoint) -> bool {
        x.coords == self.glue
    }

    pub fn in_first(&self, x: &WedgePoint) -> bool {
        x.side == Side::One || self.is_glue(x)
    }

    pub fn in_second(&self, x: &WedgePoint) -> bool {
        x.side == Side::Two || self.is_glue(x)
    }

    /// The involution exchanging the two cubes. Fixes `p`.
    pub fn swap(&self, x: &WedgePoint) -> WedgePoint {
        if self.is_glue(x) {
            x.clone()
        } else {
            WedgePoint { side: x.side.other(), coords: x.coords.clone() }
        }
    }

    pub fn swap_set(&self, a: &FiniteSubset<WedgePoint>) -> FiniteSubset<WedgePoint> {
        crate::hyperspace::induced_map(|x| self.swap(x), a)
    }

    /// Path metric through `p`: product metric within a cube, and
    /// `d(a, p) + d(p, b)` across cubes.
    pub fn wedge_distance(&self, a: &WedgePoint, b: &WedgePoint) -> f64 {
        if a.side == b.side || self.is_glue(a) || self.is_glue(b) {
            distance(&a.coords, &b.coords, MetricKind::Product)
        } else {
            distance(&a.coords, &self.glue, MetricKind::Product) + distance(&self.glue, &b.coords, MetricKind::Product)
        }
    }

    pub fn hausdorff(&self, a: &FiniteSubset<WedgePoint>, b: &FiniteSubset<WedgePoint>) -> f64 {
        hausdorff_with(a, b, self)
    }

    fn check_pair(&self, a: &FiniteSubset<WedgePoint>) -> Result<(), WedgeError> {
        if a.len() > 2 {
            Err(WedgeError::TooManyPoints(a.len()))
        } else {
            Ok(())
        }
    }

    /// Which of `F_2(Q_1)`, `F_2(Q_2)`, `𝒦` contain `a`.
    pub fn classify(&self, a: &FiniteSubset<WedgePoint>) -> Result<Piece, WedgeError> {
        self.check_pair(a)?;
        let glue = usize::from(a.iter().any(|x| self.is_glue(x)));
        let first = a.iter().filter(|x| !self.is_glue(x) && x.side == Side::One).count();
        let second = a.iter().filter(|x| !self.is_glue(x) && x.side == Side::Two).count();
        Ok(match (glue, first, second) {
            (1, 0, 0) => Piece::InAll,
            (1, 1, 0) => Piece::InF2Q1andK,
            (1, 0, 1) => Piece::InF2Q2andK,
            (0, _, 0) => Piece::InF2Q1,
            (0, 0, _) => Piece::InF2Q2,
            (0, 1, 1) => Piece::InK,
            _ => unreachable!("check_pair admits at most two points"),
        })
    }

    /// Membership read straight off the definitions, by trying every way to
    /// write `a` as `{x_1, x_2}` with `x_1 ∈ Q_1` and `x_2 ∈ Q_2`.
    pub fn membership_by_definition(&self, a: &FiniteSubset<WedgePoint>) -> Result<Membership, WedgeError> {
        self.check_pair(a)?;
        let f2q1 = a.iter().all(|x| self.in_first(x));
        let f2q2 = a.iter().all(|x| self.in_second(x));
        let k = a.iter().any(|x1| {
            a.iter().any(|x2| {
                self.in_first(x1) && self.in_second(x2) && a.iter().all(|y| y == x1 || y == x2)
            })
        });
        Ok(Membership { f2q1, f2q2, k })
    }

    /// `f(x_1, x_2) = {x_1, x_2}` from `Q_1 × Q_2` onto `𝒦`.
    pub fn k_chart(&self, x1: &CubePoint, x2: &CubePoint) -> Result<FiniteSubset<WedgePoint>, WedgeError> {
        let a = self.point(Side::One, x1.clone())?;
        let b = self.point(Side::Two, x2.clone())?;
        Ok(FiniteSubset::new(vec![a, b], 2)?)
    }

    /// Inverse of [`k_chart`](Self::k_chart) on `𝒦`: the `Q_1` and `Q_2`
    /// components. `None` outside `𝒦`.
    pub fn k_components(&self, a: &FiniteSubset<WedgePoint>) -> Option<(CubePoint, CubePoint)> {
        match self.classify(a).ok()? {
            Piece::InAll => Some((self.glue.clone(), self.glue.clone())),
            Piece::InK | Piece::InF2Q1andK | Piece::InF2Q2andK => {
                let component = |side: Side| {
                    a.iter()
                        .find(|x| !self.is_glue(x) && x.side == side)
                        .map_or_else(|| self.glue.clone(), |x| x.coords.clone())
                };
                Some((component(Side::One), component(Side::Two)))
            }
            _ => None,
        }
    }

    /// `g({x, p}) = x`, `g({p}) = p` on `F_2(Q_1) ∩ 𝒦`.
    pub fn g_chart(&self, a: &FiniteSubset<WedgePoint>) -> Result<CubePoint, WedgeError> {
        match self.classify(a)? {
            Piece::InAll => Ok(self.glue.clone()),
            Piece::InF2Q1andK => Ok(a
                .iter()
                .find(|x| !self.is_glue(x))
                .expect("a two-point set with one glue point")
                .coords
                .clone()),
            _ => Err(WedgeError::NotInChartDomain),
        }
    }

    /// `h_t({x, x'}) = {t x, t x'}` on `F_2(Q_1)`, for `t ∈ (0, 1)`. The image
    /// never contains `p`.
    pub fn h_push(&self, a: &FiniteSubset<WedgePoint>, t: f64) -> Result<FiniteSubset<WedgePoint>, WedgeError> {
        if !(t > 0.0 && t < 1.0) {
            return Err(WedgeError::BadPushParameter(t));
        }
        self.check_pair(a)?;
        if !a.iter().all(|x| self.in_first(x)) {
            return Err(WedgeError::NotInFirstCube);
        }
        check_unit("t", t)?;
        let points = a
            .iter()
            .map(|x| self.point(Side::One, x.coords.scale(t)?))
            .collect::<Result<Vec<_>, WedgeError>>()?;
        Ok(FiniteSubset::new(points, a.bound())?)
    }

    /// The pushes `h_t` with `t = 1 - ε/2`, avoiding `F_2(Q_1) ∩ 𝒦`.
    pub fn zpush_family(&self) -> ZPushFamily<FiniteSubset<WedgePoint>> {
        let push_space = self.clone();
        let avoid_space = self.clone();
        ZPushFamily::new(
            "h_t on F_2(Q_1), t = 1 - eps/2",
            move |eps, a: &FiniteSubset<WedgePoint>| Ok(push_space.h_push(a, 1.0 - eps / 2.0)?),
            move |a: &FiniteSubset<WedgePoint>| {
                matches!(avoid_space.classify(a), Ok(Piece::InF2Q1andK | Piece::InAll))
            },
        )
    }

    /// The same pushes acting on `F_2(Q_2)` through the side swap, avoiding
    /// `F_2(Q_2) ∩ 𝒦`.
    pub fn mirrored_zpush_family(&self) -> ZPushFamily<FiniteSubset<WedgePoint>> {
        let push_space = self.clone();
        let avoid_space = self.clone();
        ZPushFamily::new(
            "swap ∘ h_t ∘ swap on F_2(Q_2), t = 1 - eps/2",
            move |eps, a: &FiniteSubset<WedgePoint>| {
                let pushed = push_space.h_push(&push_space.swap_set(a), 1.0 - eps / 2.0)?;
                Ok(push_space.swap_set(&pushed))
            },
            move |a: &FiniteSubset<WedgePoint>| {
                matches!(avoid_space.classify(a), Ok(Piece::InF2Q2andK | Piece::InAll))
            },
        )
    }

    /// Checks on every sample that `classify` agrees with the definitions,
    /// that the three pieces cover `F_2(X)`, and that
    /// `[F_2(Q_1) ∪ 𝒦] ∩ F_2(Q_2) = 𝒦 ∩ F_2(Q_2)`.
    pub fn verify_decomposition(&self, samples: &[FiniteSubset<WedgePoint>]) -> VerificationReport {
        let mut tally = Tally::new();
        for a in samples {
            tally.trial();
            let (piece, truth) = match (self.classify(a), self.membership_by_definition(a)) {
                (Ok(p), Ok(m)) => (p, m),
                (Err(e), _) | (_, Err(e)) => {
                    tally.violate(Violation::new(format!("invalid sample: {e}"), to_json(a), a.len() as f64));
                    continue;
                }
            };
            if piece.membership() != truth {
                tally.violate(Violation::new(format!("classify {piece:?} vs definition {truth:?}"), to_json(a), 1.0));
            }
            if !(truth.f2q1 || truth.f2q2 || truth.k) {
                tally.violate(Violation::new("cover", to_json(a), 1.0));
            }
            let lhs = (truth.f2q1 || truth.k) && truth.f2q2;
            let rhs = truth.k && truth.f2q2;
            if lhs != rhs {
                tally.violate(Violation::new("intersection", to_json(a), 1.0));
            }
        }
        tally.finish("wedge-decomposition", 0.0)
    }

    /// Every wedge point whose coordinates come from `levels`, at full depth.
    pub fn grid_points(&self, levels: &[f64]) -> Result<Vec<WedgePoint>, WedgeError> {
        let mut cube_points = vec![Vec::new()];
        for _ in 0..self.depth {
            cube_points = cube_points
                .into_iter()
                .flat_map(|prefix: Vec<f64>| {
                    levels.iter().map(move |&l| {
                        let mut c = prefix.clone();
                        c.push(l);
                        c
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for c in cube_points {
            let c = CubePoint::new(c)?;
            for side in [Side::One, Side::Two] {
                out.push(self.point(side, c.clone())?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// All one- and two-point subsets of `points`.
    pub fn all_pairs(points: &[WedgePoint]) -> Vec<FiniteSubset<WedgePoint>> {
        let mut out = Vec::new();
        for (i, a) in points.iter().enumerate() {
            out.push(FiniteSubset::new(vec![a.clone()], 2).expect("singleton"));
            for b in &points[i + 1..] {
                out.push(FiniteSubset::new(vec![a.clone(), b.clone()], 2).expect("distinct pair"));
            }
        }
        out
    }
}

impl Metric<WedgePoint> for WedgeSpace {
    fn distance(&self, a: &WedgePoint, b: &WedgePoint) -> f64 {
        self.wedge_distance(a, b)
    }
}
