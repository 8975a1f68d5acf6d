//! Seeded random inputs. Each trial draws from its own ChaCha stream, so the
//! values a trial sees depend only on `(seed, salt, trial)` and never on how
//! trials are scheduled across threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cube::CubePoint;
use crate::factor_map::Site;
use crate::hyperspace::FiniteSubset;
use crate::wedge::{Side, WedgePoint, WedgeSpace};

/// Generator for one trial of one suite.
pub fn trial_rng(seed: u64, salt: &str, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(salt.as_bytes()));
    rng.set_stream(trial);
    rng
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Coordinates i.i.d. uniform on `[0, 1]`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, depth: usize) -> CubePoint {
    CubePoint::new((0..depth).map(|_| rng.gen::<f64>()).collect()).expect("uniform draws lie in [0, 1)")
}

/// Cardinality uniform on `[1, n]`, points from [`random_point`].
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize, depth: usize) -> FiniteSubset<CubePoint> {
    let size = rng.gen_range(1..=n);
    random_subset_of_size(rng, size, n, depth)
}

pub fn random_subset_of_size<R: Rng + ?Sized>(rng: &mut R, size: usize, n: usize, depth: usize) -> FiniteSubset<CubePoint> {
    let points = (0..size).map(|_| random_point(rng, depth)).collect();
    FiniteSubset::new(points, n).expect("size <= n")
}

/// A random nonempty set of at most `n` sites out of `0..space_size`.
pub fn random_sites<R: Rng + ?Sized>(rng: &mut R, n: usize, space_size: usize) -> FiniteSubset<Site> {
    let size = rng.gen_range(1..=n.min(space_size));
    let chosen = rand::seq::index::sample(rng, space_size, size);
    FiniteSubset::new(chosen.into_iter().map(Site).collect(), n).expect("distinct sites")
}

/// A wedge point: the glue point with probability `glue_chance`, otherwise a
/// uniform point on `side` (or on a uniformly chosen side).
pub fn random_wedge_point<R: Rng + ?Sized>(
    rng: &mut R,
    space: &WedgeSpace,
    side: Option<Side>,
    glue_chance: f64,
) -> WedgePoint {
    if rng.gen_bool(glue_chance) {
        return space.glue_point();
    }
    let side = side.unwrap_or_else(|| if rng.gen_bool(0.5) { Side::One } else { Side::Two });
    space
        .point(side, random_point(rng, space.depth()))
        .expect("depth matches the space")
}

pub fn random_wedge_subset<R: Rng + ?Sized>(
    rng: &mut R,
    space: &WedgeSpace,
    n: usize,
    side: Option<Side>,
    glue_chance: f64,
) -> FiniteSubset<WedgePoint> {
    let size = rng.gen_range(1..=n);
    let points = (0..size).map(|_| random_wedge_point(rng, space, side, glue_chance)).collect();
    FiniteSubset::new(points, n).expect("size <= n")
}
