//! Explicit homotopies and Z-map sequences on the cube and its symmetric
//! products, plus the sampling verifiers for Z-pushes and uniform
//! convergence of induced maps.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cube::{check_unit, CubeError, CubePoint, MetricKind};
use crate::hyperspace::{hausdorff, hausdorff_with, induced_map, try_induced_map, FiniteSubset};
use crate::metric::Metric;
use crate::report::{ProfileEntry, Tally, VerificationReport, Violation};

/// Strict inequalities `x < ε` are checked as `x <= ε - STRICT_SLACK`.
pub const STRICT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("no samples supplied")]
    EmptySamples,
    #[error("no epsilons supplied")]
    EmptyEpsilons,
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("{maps} maps but {bounds} bounds")]
    BoundLength { maps: usize, bounds: usize },
}

type HomotopyFn<P> = dyn Fn(&P, f64) -> P + Send + Sync;

/// A homotopy `H: X × [0, 1] → X`.
pub struct PointHomotopy<P> {
    descriptor: String,
    eval: Box<HomotopyFn<P>>,
}

impl<P> PointHomotopy<P> {
    /// `eval` is only ever called with `t ∈ [0, 1]`.
    pub fn new(descriptor: impl Into<String>, eval: impl Fn(&P, f64) -> P + Send + Sync + 'static) -> Self {
        Self { descriptor: descriptor.into(), eval: Box::new(eval) }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn eval(&self, x: &P, t: f64) -> Result<P, CubeError> {
        check_unit("t", t)?;
        Ok((self.eval)(x, t))
    }
}

impl PointHomotopy<CubePoint> {
    /// `H(x, t) = (1 - t) x`, contracting `Q` to the origin.
    pub fn straight_line() -> Self {
        Self::new("straight-line contraction to the origin", |x: &CubePoint, t| {
            x.scale(1.0 - t).expect("1 - t lies in [0, 1]")
        })
    }

    /// `H(x, t) = (1 - t) x + t x0`.
    pub fn straight_line_to(x0: CubePoint) -> Self {
        Self::new("straight-line contraction", move |x: &CubePoint, t| {
            x.lerp(&x0, t).expect("t lies in [0, 1]")
        })
    }
}

impl<P> std::fmt::Debug for PointHomotopy<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PointHomotopy").field("descriptor", &self.descriptor).finish()
    }
}

/// `𝒢(A, t) = H(A × {t})`: the contraction of `X` lifted to `F_n(X)`.
pub fn induced_contraction<P: Ord>(
    h: &PointHomotopy<P>,
    a: &FiniteSubset<P>,
    t: f64,
) -> Result<FiniteSubset<P>, CubeError> {
    try_induced_map(|x| h.eval(x, t), a)
}

/// The tail-contraction homotopy on `F_n(Q)`: every point keeps its first `k`
/// coordinates and has the rest multiplied by `1 - t`.
pub fn tail_homotopy(a: &FiniteSubset<CubePoint>, k: usize, t: f64) -> Result<FiniteSubset<CubePoint>, CubeError> {
    try_induced_map(|x| x.tail_contract(k, t), a)
}

/// Largest Hausdorff distance between any two stages of the tail-contraction
/// track of `a`, over the supplied parameter grid.
pub fn track_diameter(a: &FiniteSubset<CubePoint>, k: usize, ts: &[f64], kind: MetricKind) -> Result<f64, CubeError> {
    let stages = ts.iter().map(|&t| tail_homotopy(a, k, t)).collect::<Result<Vec<_>, _>>()?;
    let mut diameter = 0.0f64;
    for (i, s) in stages.iter().enumerate() {
        for u in &stages[i + 1..] {
            diameter = diameter.max(hausdorff(s, u, kind));
        }
    }
    Ok(diameter)
}

/// The truncation map `f_m(x) = (x_1, ..., x_m, 0, ...)`.
pub fn truncation_zmap(m: usize) -> Result<impl Fn(&CubePoint) -> CubePoint + Clone + Send + Sync, CubeError> {
    if m == 0 {
        return Err(CubeError::ZeroDepth);
    }
    Ok(move |x: &CubePoint| x.truncate(m).expect("m >= 1"))
}

/// `[1/2, 1/4, ..., 1/2^count]`.
pub fn geometric_bounds(count: usize) -> Vec<f64> {
    (1..=count).map(|k| 0.5f64.powi(k as i32)).collect()
}

/// Checks `sup_A H(F_n(maps[k])(A), F_n(target)(A)) <= bounds[k]` over the
/// samples for every `k`.
///
/// `worst` in the report is the largest ratio of measured maximum to bound;
/// `bound` is `1`. The per-index maxima are in `profile`.
pub fn verify_uniform_convergence<P, F, T, M>(
    maps: &[F],
    target: &T,
    samples: &[FiniteSubset<P>],
    metric: &M,
    bounds: &[f64],
) -> Result<VerificationReport, VerifyError>
where
    P: Ord + Serialize + Send + Sync,
    F: Fn(&P) -> P + Sync,
    T: Fn(&P) -> P + Sync,
    M: Metric<P> + Sync,
{
    if samples.is_empty() {
        return Err(VerifyError::EmptySamples);
    }
    if maps.len() != bounds.len() {
        return Err(VerifyError::BoundLength { maps: maps.len(), bounds: bounds.len() });
    }
    let per_sample: Vec<Vec<f64>> = samples
        .par_iter()
        .map(|a| {
            let reference = induced_map(target, a);
            maps.iter()
                .map(|f| hausdorff_with(&induced_map(f, a), &reference, metric))
                .collect()
        })
        .collect();

    let mut tally = Tally::new();
    tally.trials = samples.len();
    let mut profile = Vec::with_capacity(maps.len());
    for (k, &bound) in bounds.iter().enumerate() {
        let (arg, max) = per_sample
            .iter()
            .enumerate()
            .map(|(i, row)| (i, row[k]))
            .fold((0, 0.0f64), |best, cur| if cur.1 > best.1 { cur } else { best });
        tally.observe(ratio(max, bound));
        if max > bound {
            tally.violate(Violation::new(format!("uniform-bound[{}]", k + 1), to_json(&samples[arg]), max));
        }
        profile.push(ProfileEntry { index: k + 1, measured: max, bound });
    }
    let mut report = tally.finish("uniform-convergence", 1.0);
    report.profile = profile;
    Ok(report)
}

/// Boxed error returned by a failing push.
pub type PushError = Box<dyn std::error::Error + Send + Sync>;

type PushFn<P> = dyn Fn(f64, &P) -> Result<P, PushError> + Send + Sync;
type MembershipFn<P> = dyn Fn(&P) -> bool + Send + Sync;

/// A family of maps `f_ε` that should move points less than `ε` and land
/// outside a designated set.
pub struct ZPushFamily<P> {
    descriptor: String,
    push: Box<PushFn<P>>,
    avoided: Box<MembershipFn<P>>,
}

impl<P> ZPushFamily<P> {
    pub fn new(
        descriptor: impl Into<String>,
        push: impl Fn(f64, &P) -> Result<P, PushError> + Send + Sync + 'static,
        avoided: impl Fn(&P) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self { descriptor: descriptor.into(), push: Box::new(push), avoided: Box::new(avoided) }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn push(&self, eps: f64, x: &P) -> Result<P, PushError> {
        (self.push)(eps, x)
    }

    /// Membership in the set the pushes must avoid.
    pub fn in_avoided(&self, x: &P) -> bool {
        (self.avoided)(x)
    }
}

impl<P: Clone + 'static> ZPushFamily<P> {
    /// Identity pushes. They pass exactly when no sample lies in `avoided`.
    pub fn identity(avoided: impl Fn(&P) -> bool + Send + Sync + 'static) -> Self {
        Self::new("identity", |_, x: &P| Ok(x.clone()), avoided)
    }
}

fn check_epsilons(epsilons: &[f64]) -> Result<(), VerifyError> {
    if epsilons.is_empty() {
        return Err(VerifyError::EmptyEpsilons);
    }
    match epsilons.iter().find(|e| e.is_nan() || **e <= 0.0) {
        Some(&e) => Err(VerifyError::NonPositiveEpsilon(e)),
        None => Ok(()),
    }
}

/// Runs every push `f_ε` on every sample and checks that the image avoids
/// the designated set and that `d(s, f_ε(s)) < ε`.
///
/// `worst` is the largest `movement / ε`; `bound` is `1`.
pub fn verify_zpush<P, M>(
    family: &ZPushFamily<P>,
    samples: &[P],
    epsilons: &[f64],
    metric: &M,
) -> Result<VerificationReport, VerifyError>
where
    P: Serialize + Sync,
    M: Metric<P> + Sync,
{
    if samples.is_empty() {
        return Err(VerifyError::EmptySamples);
    }
    check_epsilons(epsilons)?;
    let tally = epsilons
        .iter()
        .flat_map(|&eps| samples.iter().map(move |s| (eps, s)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(eps, s)| {
            let mut t = Tally::new();
            t.trial();
            match family.push(eps, s) {
                Ok(image) => {
                    if family.in_avoided(&image) {
                        t.violate(Violation::new(format!("avoidance[eps={eps}]"), to_json(s), eps));
                    }
                    check_movement(&mut t, metric.distance(s, &image), eps, s);
                }
                Err(e) => t.violate(Violation::new(format!("push failed[eps={eps}]: {e}"), to_json(s), eps)),
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(), Tally::merge);
    Ok(tally.finish("zpush", 1.0))
}

/// The induced form: `F_n(f_ε)` applied to sampled finite subsets. Every
/// image point must avoid the designated set and the Hausdorff movement must
/// stay below `ε`.
pub fn verify_zpush_induced<P, M>(
    family: &ZPushFamily<P>,
    samples: &[FiniteSubset<P>],
    epsilons: &[f64],
    metric: &M,
) -> Result<VerificationReport, VerifyError>
where
    P: Ord + Serialize + Send + Sync,
    M: Metric<P> + Sync,
{
    if samples.is_empty() {
        return Err(VerifyError::EmptySamples);
    }
    check_epsilons(epsilons)?;
    let tally = epsilons
        .iter()
        .flat_map(|&eps| samples.iter().map(move |s| (eps, s)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(eps, a)| {
            let mut t = Tally::new();
            t.trial();
            match try_induced_map(|x| family.push(eps, x), a) {
                Ok(image) => {
                    if image.iter().any(|x| family.in_avoided(x)) {
                        t.violate(Violation::new(format!("avoidance[eps={eps}]"), to_json(a), eps));
                    }
                    check_movement(&mut t, hausdorff_with(a, &image, metric), eps, a);
                }
                Err(e) => t.violate(Violation::new(format!("push failed[eps={eps}]: {e}"), to_json(a), eps)),
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(), Tally::merge);
    Ok(tally.finish("zpush-induced", 1.0))
}

fn check_movement<S: Serialize + ?Sized>(t: &mut Tally, movement: f64, eps: f64, input: &S) {
    t.observe(movement / eps);
    if movement > eps - STRICT_SLACK {
        t.violate(Violation::new(format!("movement[eps={eps}]"), to_json(input), movement));
    }
}

pub(crate) fn ratio(measured: f64, bound: f64) -> f64 {
    if measured == 0.0 {
        0.0
    } else if bound > 0.0 {
        measured / bound
    } else {
        f64::MAX
    }
}

pub(crate) fn to_json<S: Serialize + ?Sized>(value: &S) -> serde_json::Value {
    serde_json::to_value(value).unwrap_or(serde_json::Value::Null)
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
    fn contraction_examples() {
        let h = PointHomotopy::straight_line();
        let a = set(&[&[1.0], &[0.5]], 2);
        assert_eq!(induced_contraction(&h, &a, 1.0).unwrap(), FiniteSubset::singleton(CubePoint::origin(), 2).unwrap());
        assert_eq!(induced_contraction(&h, &a, 0.0).unwrap(), a);
        assert_eq!(induced_contraction(&h, &a, 0.5).unwrap(), set(&[&[0.5], &[0.25]], 2));
        assert!(induced_contraction(&h, &a, 1.5).is_err());
    }

    #[test]
    fn contraction_to_a_point() {
        let x0 = pt(&[0.3, 0.6]);
        let h = PointHomotopy::straight_line_to(x0.clone());
        let a = set(&[&[1.0], &[0.5, 0.2], &[0.0, 0.9]], 3);
        assert_eq!(induced_contraction(&h, &a, 1.0).unwrap().points(), &[x0]);
    }

    #[test]
    fn tail_homotopy_examples() {
        let a = set(&[&[0.2, 0.9, 0.4], &[0.7, 0.1]], 2);
        assert_eq!(tail_homotopy(&a, 2, 0.0).unwrap(), a);
        assert_eq!(tail_homotopy(&set(&[&[1.0, 1.0, 1.0]], 1), 1, 1.0).unwrap(), set(&[&[1.0]], 1));
        let ts: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
        let ones = set(&[&[1.0; 8]], 1);
        for k in 1..=8 {
            let d = track_diameter(&ones, k, &ts, MetricKind::Product).unwrap();
            assert!(d <= 0.5f64.powi(k as i32), "k={k} d={d}");
        }
    }

    #[test]
    fn truncation_zmap_examples() {
        let f = truncation_zmap(2).unwrap();
        assert_eq!(f(&pt(&[0.5, 0.5, 0.5])), pt(&[0.5, 0.5]));
        assert!(truncation_zmap(0).is_err());
    }

    #[test]
    fn uniform_convergence_passes_for_truncations() {
        let maps: Vec<_> = (1..=8).map(|m| truncation_zmap(m).unwrap()).collect();
        let samples = vec![set(&[&[1.0; 8], &[0.5; 8]], 2), set(&[&[0.25, 1.0, 0.75, 0.0, 1.0, 1.0, 0.5, 1.0]], 2)];
        let id = |x: &CubePoint| x.clone();
        let r = verify_uniform_convergence(&maps, &id, &samples, &MetricKind::Product, &geometric_bounds(8)).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.profile.len(), 8);
        assert!(r.worst < 1.0);
    }

    #[test]
    fn uniform_convergence_equal_maps_have_zero_maxima() {
        let id = |x: &CubePoint| x.clone();
        let maps = vec![id; 3];
        let samples = vec![set(&[&[0.3]], 1)];
        let r = verify_uniform_convergence(&maps, &id, &samples, &MetricKind::Product, &geometric_bounds(3)).unwrap();
        assert!(r.pass);
        assert!(r.profile.iter().all(|e| e.measured == 0.0));
    }

    #[test]
    fn uniform_convergence_detects_constant_maps() {
        // oracle: the constant origin map moves (1,1,...,1) by 255/256 > 1/2
        let constant = |_: &CubePoint| CubePoint::origin();
        let maps = vec![constant; 4];
        let id = |x: &CubePoint| x.clone();
        let samples = vec![set(&[&[1.0; 8]], 1)];
        let r = verify_uniform_convergence(&maps, &id, &samples, &MetricKind::Product, &geometric_bounds(4)).unwrap();
        assert!(!r.pass);
        assert_eq!(r.violations.len(), 4);
        assert_eq!(r.profile[0].measured, 255.0 / 256.0);
    }

    #[test]
    fn uniform_convergence_input_errors() {
        let id = |x: &CubePoint| x.clone();
        let maps = vec![id];
        assert_eq!(
            verify_uniform_convergence(&maps, &id, &[], &MetricKind::Product, &[0.5]).unwrap_err(),
            VerifyError::EmptySamples
        );
        let samples = vec![set(&[&[0.3]], 1)];
        assert!(matches!(
            verify_uniform_convergence(&maps, &id, &samples, &MetricKind::Product, &[]),
            Err(VerifyError::BoundLength { .. })
        ));
    }

    #[test]
    fn zpush_identity_cases() {
        let samples = vec![pt(&[0.2]), pt(&[1.0, 1.0])];
        let fam = ZPushFamily::<CubePoint>::identity(|_| false);
        let r = verify_zpush(&fam, &samples, &[0.1], &MetricKind::Product).unwrap();
        assert!(r.pass);
        assert_eq!(r.worst, 0.0);

        let fam = ZPushFamily::<CubePoint>::identity(|x: &CubePoint| x.get(0) == 1.0);
        let r = verify_zpush(&fam, &samples, &[0.1], &MetricKind::Product).unwrap();
        assert!(!r.pass);
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].check.starts_with("avoidance"));
    }

    #[test]
    fn zpush_rejects_bad_epsilons() {
        let fam = ZPushFamily::<CubePoint>::identity(|_| false);
        let samples = vec![pt(&[0.2])];
        assert_eq!(
            verify_zpush(&fam, &samples, &[0.1, 0.0], &MetricKind::Product).unwrap_err(),
            VerifyError::NonPositiveEpsilon(0.0)
        );
        assert_eq!(verify_zpush(&fam, &samples, &[], &MetricKind::Product).unwrap_err(), VerifyError::EmptyEpsilons);
        assert_eq!(verify_zpush(&fam, &[], &[0.1], &MetricKind::Product).unwrap_err(), VerifyError::EmptySamples);
    }

    /// The face `{x_1 = 1}` is a Z-set of `Q`; pushing the first coordinate
    /// down lifts to `F_n(Q)` with every image point off the face.
    fn face_push() -> ZPushFamily<CubePoint> {
        ZPushFamily::new(
            "first-coordinate push",
            |eps, x: &CubePoint| {
                let mut c = x.coords().to_vec();
                if c.is_empty() {
                    c.push(0.0);
                }
                c[0] *= 1.0 - eps;
                Ok(CubePoint::new(c)?)
            },
            |x: &CubePoint| x.get(0) == 1.0,
        )
    }

    #[test]
    fn zpush_induced_face() {
        let samples = vec![set(&[&[1.0, 0.5], &[0.3]], 3), set(&[&[1.0; 8]], 3), set(&[&[0.0]], 3)];
        let r = verify_zpush_induced(&face_push(), &samples, &[0.5, 0.05, 0.001], &MetricKind::Product).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.trials, 9);
        assert!(r.worst < 1.0);
    }

    #[test]
    fn zpush_push_failures_are_violations() {
        let fam = ZPushFamily::<CubePoint>::new("broken", |_, _| Err("nope".into()), |_| false);
        let r = verify_zpush(&fam, &[pt(&[0.2])], &[0.1], &MetricKind::Product).unwrap();
        assert!(!r.pass);
    }
}
