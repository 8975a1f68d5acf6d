//! Seeded verification suites. Every suite draws its inputs from
//! per-trial random streams and reduces trial outcomes in trial order, so a
//! report depends only on its configuration, not on the thread count.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cube::{distance, CubePoint, MetricKind, MAX_DEPTH};
use crate::factor_map::{
    ce_map_with_tol, collapse_point, construct_fiber_sample, fiber_homotopy, verify_fiber_preservation, FactorError,
    FactorImage, ProductPoint, Site,
};
use crate::homotopies::{
    tail_homotopy, geometric_bounds, induced_contraction, ratio, to_json, track_diameter, truncation_zmap,
    verify_uniform_convergence, verify_zpush, PointHomotopy,
};
use crate::hyperspace::{hausdorff, hausdorff_with, FiniteSubset};
use crate::projection::{
    blend, eta, eta_oracle, objective_sensitivity, variational_residual, ProjectionError, DEFAULT_TOL,
};
use crate::report::{ProfileEntry, Tally, VerificationReport, Violation};
use crate::sampling::{random_point, random_sites, random_subset, random_wedge_subset, trial_rng};
use crate::wedge::{Side, WedgePoint, WedgeSpace};

pub const DEFAULT_SEED: u64 = 7;

/// Slack on triangle inequalities.
pub const TRIANGLE_SLACK: f64 = 1e-12;

/// Blending-invariance tolerance in the embedded norm.
pub const INVARIANCE_TOL: f64 = 1e-6;

/// Anchor tolerance for exact-by-construction factor-map identities.
pub const ANCHOR_EXACT_TOL: f64 = 1e-9;

/// Grid spacing for the brute-force projection oracle.
pub const ORACLE_GRID_STEP: f64 = 0.01;

/// Size of the finite base space `X` used by the factor-map suites.
pub const BASE_SPACE_SIZE: usize = 8;

/// Parameter values for blending and fiber homotopies.
pub const BLEND_TS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("projection solver failed: {0}")]
    Solver(#[from] ProjectionError),
    #[error("{0}")]
    Internal(String),
}

impl From<FactorError> for SuiteError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::Projection(p) => SuiteError::Solver(p),
            other => SuiteError::Internal(other.to_string()),
        }
    }
}

macro_rules! internal_from {
    ($($t:ty),*) => {
        $(impl From<$t> for SuiteError {
            fn from(e: $t) -> Self {
                SuiteError::Internal(e.to_string())
            }
        })*
    };
}

internal_from!(
    crate::cube::CubeError,
    crate::wedge::WedgeError,
    crate::homotopies::VerifyError,
    crate::hyperspace::HyperspaceError
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    MetricAxioms,
    HausdorffAxioms,
    TailDiameter,
    ZmapConvergence,
    ZpushWedge,
    EtaOracle,
    EtaInvariance,
    FiberPreservation,
    Surjectivity,
    WedgeDecomposition,
    Contraction,
}

/// Per-suite defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteDefaults {
    pub trials: usize,
    pub n: usize,
    pub depth: usize,
    /// Largest `n` the suite accepts.
    pub max_n: usize,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::MetricAxioms,
        Suite::HausdorffAxioms,
        Suite::TailDiameter,
        Suite::ZmapConvergence,
        Suite::ZpushWedge,
        Suite::EtaOracle,
        Suite::EtaInvariance,
        Suite::FiberPreservation,
        Suite::Surjectivity,
        Suite::WedgeDecomposition,
        Suite::Contraction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MetricAxioms => "metric-axioms",
            Suite::HausdorffAxioms => "hausdorff-axioms",
            Suite::TailDiameter => "eq1-diameter",
            Suite::ZmapConvergence => "zmap-convergence",
            Suite::ZpushWedge => "zpush-wedge",
            Suite::EtaOracle => "eta-oracle",
            Suite::EtaInvariance => "eta-invariance",
            Suite::FiberPreservation => "fiber-preservation",
            Suite::Surjectivity => "surjectivity",
            Suite::WedgeDecomposition => "wedge-decomposition",
            Suite::Contraction => "contraction",
        }
    }

    pub fn defaults(self) -> SuiteDefaults {
        let (trials, n, depth, max_n) = match self {
            Suite::MetricAxioms => (10_000, 1, 8, 8),
            Suite::HausdorffAxioms => (10_000, 4, 8, 8),
            Suite::TailDiameter => (200, 4, 8, 8),
            Suite::ZmapConvergence => (500, 4, 8, 8),
            Suite::ZpushWedge => (1000, 2, 8, 2),
            Suite::EtaOracle => (200, 3, 6, 4),
            Suite::EtaInvariance => (1000, 4, 6, 8),
            Suite::FiberPreservation => (500, 4, 6, 8),
            Suite::Surjectivity => (500, 4, 6, 8),
            Suite::WedgeDecomposition => (10_000, 2, 8, 2),
            Suite::Contraction => (500, 4, 8, 8),
        };
        SuiteDefaults { trials, n, depth, max_n }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

/// Configuration for a suite run. Unset fields take the suite's defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub n: Option<usize>,
    pub depth: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    /// Solver tolerance for projection-based suites.
    pub tol: Option<f64>,
    /// Replaces the suite's pass bound.
    pub bound: Option<f64>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        Self { suite, n: None, depth: None, trials: None, seed: DEFAULT_SEED, tol: None, bound: None, threads: None }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = Some(trials);
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Params {
    n: usize,
    depth: usize,
    trials: usize,
    seed: u64,
    tol: f64,
    bound: Option<f64>,
}

fn resolve(cfg: &SuiteConfig, clamp_n: bool) -> Result<Params, SuiteError> {
    let d = cfg.suite.defaults();
    let mut n = cfg.n.unwrap_or(d.n);
    if clamp_n {
        n = n.min(d.max_n);
    }
    let depth = cfg.depth.unwrap_or(d.depth);
    let trials = cfg.trials.unwrap_or(d.trials);
    let tol = cfg.tol.unwrap_or(DEFAULT_TOL);
    if trials == 0 {
        return Err(SuiteError::Config("trials must be at least 1".into()));
    }
    if !(1..=MAX_DEPTH).contains(&depth) {
        return Err(SuiteError::Config(format!("depth must lie in [1, {MAX_DEPTH}], got {depth}")));
    }
    if !(1..=d.max_n).contains(&n) {
        return Err(SuiteError::Config(format!("{} needs n in [1, {}], got {n}", cfg.suite, d.max_n)));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(SuiteError::Config(format!("tol must be positive, got {tol}")));
    }
    if let Some(b) = cfg.bound {
        if b.is_nan() || b < 0.0 {
            return Err(SuiteError::Config(format!("bound must be nonnegative, got {b}")));
        }
    }
    if cfg.threads == Some(0) {
        return Err(SuiteError::Config("threads must be at least 1".into()));
    }
    Ok(Params { n, depth, trials, seed: cfg.seed, tol, bound: cfg.bound })
}

/// Runs one suite.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let params = resolve(cfg, false)?;
    with_threads(cfg.threads, || dispatch(cfg.suite, params))
}

/// Result of [`run_all`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateReport {
    pub pass: bool,
    pub reports: Vec<VerificationReport>,
}

impl AggregateReport {
    /// One JSON line per suite.
    pub fn to_json_lines(&self) -> String {
        self.reports.iter().map(|r| r.to_json_line() + "\n").collect()
    }
}

/// Runs every suite with the shared seed. `cfg.suite` is ignored; `n` is
/// capped at each suite's maximum.
pub fn run_all(cfg: &SuiteConfig) -> Result<AggregateReport, SuiteError> {
    with_threads(cfg.threads, || {
        let reports = Suite::ALL
            .into_iter()
            .map(|suite| {
                let c = SuiteConfig { suite, ..cfg.clone() };
                dispatch(suite, resolve(&c, true)?)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AggregateReport { pass: reports.iter().all(|r| r.pass), reports })
    })
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    job: impl FnOnce() -> Result<T, SuiteError> + Send,
) -> Result<T, SuiteError> {
    match threads {
        None => job(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| SuiteError::Internal(e.to_string()))?
            .install(job),
    }
}

fn dispatch(suite: Suite, p: Params) -> Result<VerificationReport, SuiteError> {
    let mut report = match suite {
        Suite::MetricAxioms => metric_axioms(p),
        Suite::HausdorffAxioms => hausdorff_axioms(p),
        Suite::TailDiameter => tail_diameter(p),
        Suite::ZmapConvergence => zmap_convergence(p),
        Suite::ZpushWedge => zpush_wedge(p),
        Suite::EtaOracle => eta_vs_oracle(p),
        Suite::EtaInvariance => eta_invariance(p),
        Suite::FiberPreservation => fiber_preservation(p),
        Suite::Surjectivity => surjectivity(p),
        Suite::WedgeDecomposition => wedge_decomposition(p),
        Suite::Contraction => contraction(p),
    }?;
    report.suite = suite.name().to_string();
    Ok(report)
}

/// Evaluates `trial` for every index in parallel and merges in index order.
fn run_trials<F>(p: &Params, salt: &str, trial: F) -> Result<Tally, SuiteError>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Result<Tally, SuiteError> + Sync,
{
    let tallies = (0..p.trials as u64)
        .into_par_iter()
        .map(|i| trial(&mut trial_rng(p.seed, salt, i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(tallies.into_iter().fold(Tally::new(), Tally::merge))
}

#[derive(Serialize)]
struct Triple<'a, T> {
    x: &'a T,
    y: &'a T,
    z: &'a T,
}

fn check_metric_axioms<T: PartialEq + Serialize>(
    t: &mut Tally,
    label: &str,
    (x, y, z): (&T, &T, &T),
    d: impl Fn(&T, &T) -> f64,
    slack: f64,
) {
    let input = || to_json(&Triple { x, y, z });
    let (dxy, dyx, dyz, dxz, dxx) = (d(x, y), d(y, x), d(y, z), d(x, z), d(x, x));
    if dxx != 0.0 {
        t.violate(Violation::new(format!("{label}: identity"), input(), dxx));
    }
    if dxy < 0.0 || (x != y && dxy <= 0.0) || (x == y && dxy != 0.0) {
        t.violate(Violation::new(format!("{label}: zero iff equal"), input(), dxy));
    }
    if dxy != dyx {
        t.violate(Violation::new(format!("{label}: symmetry"), input(), (dxy - dyx).abs()));
    }
    let excess = dxz - dxy - dyz;
    t.observe(excess.max(0.0));
    if excess > slack {
        t.violate(Violation::new(format!("{label}: triangle"), input(), excess));
    }
}

fn metric_axioms(p: Params) -> Result<VerificationReport, SuiteError> {
    let slack = p.bound.unwrap_or(TRIANGLE_SLACK);
    let tally = run_trials(&p, "metric-axioms", |rng| {
        let mut t = Tally::new();
        t.trial();
        let x = random_point(rng, p.depth);
        // occasional coincidences exercise the identity axiom
        let y = if rng.gen_bool(0.1) { x.clone() } else { random_point(rng, p.depth) };
        let z = random_point(rng, p.depth);
        for kind in [MetricKind::Product, MetricKind::L2Embedded] {
            check_metric_axioms(&mut t, &format!("{kind:?}"), (&x, &y, &z), |a, b| distance(a, b, kind), slack);
        }
        Ok(t)
    })?;
    Ok(tally.finish("", slack))
}

fn hausdorff_axioms(p: Params) -> Result<VerificationReport, SuiteError> {
    let slack = p.bound.unwrap_or(TRIANGLE_SLACK);
    let tally = run_trials(&p, "hausdorff-axioms", |rng| {
        let mut t = Tally::new();
        t.trial();
        let a = random_subset(rng, p.n, p.depth);
        let b = if rng.gen_bool(0.1) { a.clone() } else { random_subset(rng, p.n, p.depth) };
        let c = random_subset(rng, p.n, p.depth);
        for kind in [MetricKind::Product, MetricKind::L2Embedded] {
            check_metric_axioms(&mut t, &format!("{kind:?}"), (&a, &b, &c), |u, v| hausdorff(u, v, kind), slack);
        }
        Ok(t)
    })?;
    Ok(tally.finish("", slack))
}

fn parameter_grid(points: usize) -> Vec<f64> {
    (0..points).map(|i| i as f64 / (points - 1) as f64).collect()
}

fn tail_diameter(p: Params) -> Result<VerificationReport, SuiteError> {
    let ts = parameter_grid(101);
    let bounds: Vec<f64> = match p.bound {
        Some(b) => vec![b; p.depth],
        None => geometric_bounds(p.depth),
    };
    let rows = (0..p.trials as u64)
        .into_par_iter()
        .map(|i| -> Result<(Tally, Vec<f64>), SuiteError> {
            let mut rng = trial_rng(p.seed, "eq1-diameter", i);
            let a = random_subset(&mut rng, p.n, p.depth);
            let mut t = Tally::new();
            t.trial();
            let mut diameters = Vec::with_capacity(p.depth);
            for k in 1..=p.depth {
                if tail_homotopy(&a, k, 0.0)? != a {
                    t.violate(Violation::new(format!("G(A,0)=A [k={k}]"), to_json(&a), 1.0));
                }
                let end = tail_homotopy(&a, k, 1.0)?;
                let tail = end.iter().flat_map(|x| x.coords().iter().skip(k)).fold(0.0f64, |m, c| m.max(c.abs()));
                if tail != 0.0 {
                    t.violate(Violation::new(format!("tail at t=1 [k={k}]"), to_json(&a), tail));
                }
                let diameter = track_diameter(&a, k, &ts, MetricKind::Product)?;
                t.observe(ratio(diameter, bounds[k - 1]));
                if diameter > bounds[k - 1] {
                    t.violate(Violation::new(format!("track diameter [k={k}]"), to_json(&a), diameter));
                }
                diameters.push(diameter);
            }
            Ok((t, diameters))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let profile = (0..p.depth)
        .map(|k| ProfileEntry {
            index: k + 1,
            measured: rows.iter().map(|(_, d)| d[k]).fold(0.0, f64::max),
            bound: bounds[k],
        })
        .collect();
    let tally = rows.into_iter().map(|(t, _)| t).fold(Tally::new(), Tally::merge);
    let mut report = tally.finish("", 1.0);
    report.profile = profile;
    Ok(report)
}

fn zmap_convergence(p: Params) -> Result<VerificationReport, SuiteError> {
    let samples: Vec<FiniteSubset<CubePoint>> = (0..p.trials as u64)
        .map(|i| random_subset(&mut trial_rng(p.seed, "zmap-convergence", i), p.n, p.depth))
        .collect();
    let maps = (1..=p.depth).map(truncation_zmap).collect::<Result<Vec<_>, _>>()?;
    let bounds = match p.bound {
        Some(b) => vec![b; p.depth],
        None => geometric_bounds(p.depth),
    };
    let identity = |x: &CubePoint| x.clone();
    Ok(verify_uniform_convergence(&maps, &identity, &samples, &MetricKind::Product, &bounds)?)
}

/// Merges reports of sub-checks into one. `trials` counts random inputs
/// only, not their repetitions or fixed grid cases.
fn merge_reports(parts: Vec<VerificationReport>, bound: f64, trials: usize) -> VerificationReport {
    let tally = parts
        .into_iter()
        .map(|r| Tally { trials: r.trials, worst: r.worst, violations: r.violations })
        .fold(Tally::new(), Tally::merge);
    let mut report = tally.finish("", bound);
    report.trials = trials;
    report
}

fn zpush_wedge(p: Params) -> Result<VerificationReport, SuiteError> {
    let space = WedgeSpace::new(p.depth)?;
    let epsilons = [0.05, 0.01];
    let samples: Vec<FiniteSubset<WedgePoint>> = (0..p.trials as u64)
        .map(|i| random_wedge_subset(&mut trial_rng(p.seed, "zpush-wedge", i), &space, p.n, Some(Side::One), 0.25))
        .collect();
    let mirrored: Vec<_> = samples.iter().map(|a| space.swap_set(a)).collect();
    let metric = |a: &FiniteSubset<WedgePoint>, b: &FiniteSubset<WedgePoint>| hausdorff_with(a, b, &space);
    let first = verify_zpush(&space.zpush_family(), &samples, &epsilons, &metric)?;
    let second = verify_zpush(&space.mirrored_zpush_family(), &mirrored, &epsilons, &metric)?;
    Ok(merge_reports(vec![first, second], 1.0, p.trials))
}

fn eta_vs_oracle(p: Params) -> Result<VerificationReport, SuiteError> {
    let residual_bound = p.tol;
    let tally = run_trials(&p, "eta-oracle", |rng| {
        let mut t = Tally::new();
        t.trial();
        let point = random_point(rng, p.depth);
        let hull = random_subset(rng, p.n, p.depth);
        let solver = eta(&point, &hull, p.tol)?;
        let oracle = eta_oracle(&point, &hull, ORACLE_GRID_STEP)?;
        let allowed = p.bound.unwrap_or(objective_sensitivity(&point, hull.points()) * ORACLE_GRID_STEP);
        let gap = (solver.objective - oracle.objective).abs();
        let input = || serde_json::json!({ "p": point, "K": hull.points() });
        t.observe(ratio(gap, allowed));
        if gap > allowed {
            t.violate(Violation::new("objective vs oracle", input(), gap));
        }
        let residual = variational_residual(&point, hull.points(), &solver.point);
        if residual > residual_bound {
            t.violate(Violation::new("variational residual", input(), residual));
        }
        Ok(t)
    })?;
    Ok(tally.finish("", 1.0))
}

fn eta_invariance(p: Params) -> Result<VerificationReport, SuiteError> {
    let bound = p.bound.unwrap_or(INVARIANCE_TOL);
    let endpoint_bound = bound.min(p.tol);
    let tally = run_trials(&p, "eta-invariance", |rng| {
        let mut t = Tally::new();
        t.trial();
        let point = random_point(rng, p.depth);
        let hull = random_subset(rng, p.n, p.depth);
        let base = eta(&point, &hull, p.tol)?;
        let q = &base.point;
        let input = |t: f64| serde_json::json!({ "p": point, "K": hull.points(), "t": t });
        for &s in &BLEND_TS {
            let blended = blend(&hull, q, s)?;
            let moved = eta(&point, &blended, p.tol)?.point;
            let dev = distance(&moved, q, MetricKind::L2Embedded);
            t.observe(dev);
            let allowed = if s == 0.0 || s == 1.0 { endpoint_bound } else { bound };
            if dev > allowed {
                t.violate(Violation::new("eta(blend) = q", input(s), dev));
            }
            // the weights of q, applied to the blended points in order, give q
            let aligned = hull.iter().map(|x| x.lerp(q, s)).collect::<Result<Vec<_>, _>>()?;
            let rebuilt = base.weights.combine(&aligned);
            let dev = distance(&rebuilt, q, MetricKind::L2Embedded);
            if dev > bound {
                t.violate(Violation::new("q in co(blend)", input(s), dev));
            }
        }
        Ok(t)
    })?;
    Ok(tally.finish("", bound))
}

fn fiber_preservation(p: Params) -> Result<VerificationReport, SuiteError> {
    let bound = p.bound.unwrap_or(INVARIANCE_TOL);
    let ts = parameter_grid(11);
    let tally = run_trials(&p, "fiber-preservation", |rng| {
        let point = random_point(rng, p.depth);
        let bases = random_sites(rng, p.n, BASE_SPACE_SIZE);
        let count = rng.gen_range(bases.len()..=p.n);
        let raw: Vec<CubePoint> = (0..count).map(|_| random_point(rng, p.depth)).collect();
        let pull = rng.gen_range(0.0..0.9);
        let (sample, image) = construct_fiber_sample(&bases, &raw, pull, &point, p.n)?;
        let mut t = match verify_fiber_preservation(&image, std::slice::from_ref(&sample), &point, &ts, bound) {
            Ok(report) => Tally { trials: 1, worst: report.worst, violations: report.violations },
            Err(FactorError::NotInFiber { reason, .. }) => {
                let mut t = Tally::new();
                t.trial();
                t.violate(Violation::new(format!("constructed sample left the fiber: {reason}"), to_json(&sample), 1.0));
                return Ok(t);
            }
            Err(e) => return Err(e.into()),
        };
        // t = 1 lands on the canonical point {(x, q) : x ∈ A}
        let end = fiber_homotopy(&sample, &image.anchor, 1.0)?;
        if end != collapse_point(&image).with_bound(p.n)? {
            t.violate(Violation::new("collapse point", to_json(&sample), 1.0));
        }
        let out = ce_map_with_tol(&end, &point, p.tol)?;
        let dev = distance(&out.anchor, &image.anchor, MetricKind::L2Embedded);
        if out.base_set.points() != image.base_set.points() || dev > ANCHOR_EXACT_TOL {
            t.violate(Violation::new("collapse image", to_json(&sample), dev));
        }
        Ok(t)
    })?;
    Ok(tally.finish("", bound))
}

fn surjectivity(p: Params) -> Result<VerificationReport, SuiteError> {
    let bound = p.bound.unwrap_or(ANCHOR_EXACT_TOL);
    let tally = run_trials(&p, "surjectivity", |rng| {
        let mut t = Tally::new();
        t.trial();
        let point = random_point(rng, p.depth);
        let target = FactorImage { base_set: random_sites(rng, p.n, BASE_SPACE_SIZE), anchor: random_point(rng, p.depth) };
        let witness: FiniteSubset<ProductPoint<Site>> = collapse_point(&target);
        let out = ce_map_with_tol(&witness, &point, p.tol)?;
        let dev = distance(&out.anchor, &target.anchor, MetricKind::L2Embedded);
        t.observe(dev);
        if out.base_set.points() != target.base_set.points() || dev > bound {
            t.violate(Violation::new("f(witness) = (B, q)", to_json(&target), dev));
        }
        Ok(t)
    })?;
    Ok(tally.finish("", bound))
}

fn wedge_decomposition(p: Params) -> Result<VerificationReport, SuiteError> {
    let grid_space = WedgeSpace::new(2)?;
    let grid = WedgeSpace::all_pairs(&grid_space.grid_points(&[0.0, 0.5, 1.0])?);
    let exhaustive = grid_space.verify_decomposition(&grid);

    let space = WedgeSpace::new(p.depth)?;
    let samples: Vec<_> = (0..p.trials as u64)
        .map(|i| random_wedge_subset(&mut trial_rng(p.seed, "wedge-decomposition", i), &space, p.n, None, 0.25))
        .collect();
    let random = space.verify_decomposition(&samples);
    Ok(merge_reports(vec![exhaustive, random], 0.0, p.trials))
}

fn contraction(p: Params) -> Result<VerificationReport, SuiteError> {
    let h = PointHomotopy::straight_line();
    let tally = run_trials(&p, "contraction", |rng| {
        let mut t = Tally::new();
        t.trial();
        let a = random_subset(rng, p.n, p.depth);
        if induced_contraction(&h, &a, 0.0)? != a {
            t.violate(Violation::new("G(A,0) = A", to_json(&a), 1.0));
        }
        let end = induced_contraction(&h, &a, 1.0)?;
        if end.points() != [CubePoint::origin()] {
            t.violate(Violation::new("G(A,1) = {origin}", to_json(&a), end.len() as f64));
        }
        Ok(t)
    })?;
    Ok(tally.finish("", 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(SuiteError::UnknownSuite(_))));
    }

    #[test]
    fn config_validation() {
        let base = SuiteConfig::new(Suite::Contraction);
        assert!(matches!(run_suite(&SuiteConfig { trials: Some(0), ..base.clone() }), Err(SuiteError::Config(_))));
        assert!(matches!(run_suite(&SuiteConfig { depth: Some(17), ..base.clone() }), Err(SuiteError::Config(_))));
        assert!(matches!(run_suite(&SuiteConfig { n: Some(9), ..base.clone() }), Err(SuiteError::Config(_))));
        let wedge = SuiteConfig::new(Suite::ZpushWedge);
        assert!(matches!(run_suite(&SuiteConfig { n: Some(3), ..wedge }), Err(SuiteError::Config(_))));
    }

    #[test]
    fn one_trial_reports_one_trial() {
        for suite in Suite::ALL {
            let r = run_suite(&SuiteConfig::new(suite).with_trials(1)).unwrap();
            assert_eq!(r.trials, 1, "{suite}");
            assert!(r.pass);
        }
    }

    #[test]
    fn zero_bound_forces_failure() {
        let cfg = SuiteConfig { bound: Some(0.0), ..SuiteConfig::new(Suite::ZmapConvergence).with_trials(5) };
        let r = run_suite(&cfg).unwrap();
        assert!(!r.pass);
    }
}
