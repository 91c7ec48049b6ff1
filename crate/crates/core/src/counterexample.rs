//! The three-point example separating classical and idempotent measures as
//! functors.
//!
//! `X = {a,b,c}`, `Y = {a,b}`, `Z = {a,c}`, with `f(a)=f(c)=a, f(b)=b` and
//! `g(a)=g(b)=a, g(c)=c`. On classical measures `μ ↦ (f₊μ, g₊μ)` is
//! injective: the four image weights form a linear system of rank three in
//! the three unknowns. On idempotent measures the same map forgets
//! information, since every `(λ, 0, 0)` has image `((0,0),(0,0))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridge::naturality_gap;
use crate::error::Result;
use crate::functor::{pushforward_classical, pushforward_idempotent, PointMap};
use crate::maxplus::Finite;
use crate::measure::{ClassicalMeasure, IdempotentMeasure};
use crate::parallel;
use crate::space::FiniteSpace;

/// Number of random pairs checked on the classical side.
pub const RANDOM_PAIRS: usize = 10_000;
/// Simplex grid step denominator for the exhaustive pair check.
pub const GRID_STEPS: usize = 10;
/// Images closer than this must come from measures closer than this.
pub const INJECTIVITY_TOLERANCE: f64 = 1e-9;

const SEED: u64 = 0x6d61_736c_6f76;

/// The spaces and maps of the example.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub x: FiniteSpace,
    pub y: FiniteSpace,
    pub z: FiniteSpace,
    pub f: PointMap,
    pub g: PointMap,
}

impl Fixture {
    pub fn new() -> Self {
        let x = FiniteSpace::new(["a", "b", "c"]).expect("static labels");
        let y = FiniteSpace::new(["a", "b"]).expect("static labels");
        let z = FiniteSpace::new(["a", "c"]).expect("static labels");
        let f = PointMap::from_labels(x.clone(), y.clone(), [("a", "a"), ("b", "b"), ("c", "a")])
            .expect("static map");
        let g = PointMap::from_labels(x.clone(), z.clone(), [("a", "a"), ("b", "a"), ("c", "c")])
            .expect("static map");
        Fixture { x, y, z, f, g }
    }

    /// Concatenated weights of `(f₊μ, g₊μ)`.
    pub fn classical_image(&self, mu: &ClassicalMeasure) -> Result<Vec<f64>> {
        let mut out = pushforward_classical(&self.f, mu)?.weights().to_vec();
        out.extend_from_slice(pushforward_classical(&self.g, mu)?.weights());
        Ok(out)
    }

    pub fn idempotent_image(
        &self,
        mu: &IdempotentMeasure,
    ) -> Result<(IdempotentMeasure, IdempotentMeasure)> {
        Ok((
            pushforward_idempotent(&self.f, mu)?,
            pushforward_idempotent(&self.g, mu)?,
        ))
    }
}

impl Default for Fixture {
    fn default() -> Self {
        Fixture::new()
    }
}

/// 0/1 matrix of the linear map `α ↦ (f₊α, g₊α)`: one row per image
/// coordinate, one column per domain point.
pub fn pair_incidence(f: &PointMap, g: &PointMap) -> Vec<Vec<i64>> {
    let n = f.domain().len();
    let mut rows = Vec::new();
    for map in [f, g] {
        for j in 0..map.codomain().len() {
            rows.push((0..n).map(|i| i64::from(map.image()[i] == j)).collect());
        }
    }
    rows
}

/// Rank over the rationals, by fraction-free elimination.
#[allow(clippy::needless_range_loop)]
pub fn integer_rank(mut m: Vec<Vec<i64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = a * m[r][k] - b * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `A α = image` by least squares through the normal equations and
/// returns `α` if `A` has full column rank and the residual is tiny.
#[allow(clippy::needless_range_loop)]
fn solve_preimage(a: &[Vec<i64>], image: &[f64]) -> Option<Vec<f64>> {
    let n = a[0].len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n)
                .map(|j| a.iter().map(|r| (r[i] * r[j]) as f64).sum())
                .collect();
            row.push(a.iter().zip(image).map(|(r, y)| r[i] as f64 * y).sum());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&r, &s| m[r][c].abs().total_cmp(&m[s][c].abs()))?;
        if m[p][c].abs() < 1e-12 {
            return None;
        }
        m.swap(c, p);
        for r in 0..n {
            if r != c {
                let k = m[r][c] / m[c][c];
                for j in c..=n {
                    m[r][j] -= k * m[c][j];
                }
            }
        }
    }
    let alpha: Vec<f64> = (0..n).map(|i| m[i][n] / m[i][i]).collect();
    let residual = a
        .iter()
        .zip(image)
        .map(|(r, y)| {
            (r.iter()
                .zip(&alpha)
                .map(|(&c, x)| c as f64 * x)
                .sum::<f64>()
                - y)
                .abs()
        })
        .fold(0.0, f64::max);
    (residual <= 1e-12).then_some(alpha)
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Two distinct idempotent measures with the same image under `(f, g)`.
#[derive(Clone, Debug)]
pub struct IdempotentWitness {
    pub mu: IdempotentMeasure,
    pub nu: IdempotentMeasure,
    pub image: (IdempotentMeasure, IdempotentMeasure),
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub classical_injective: bool,
    /// Rank of the 4×3 image system; 3 means a unique preimage.
    pub system_rank: usize,
    pub random_pairs: usize,
    pub grid_pairs: usize,
    /// Largest preimage reconstruction error over all sampled measures.
    pub max_reconstruction_error: f64,
    pub idempotent_witness: IdempotentWitness,
    pub witness_images_equal: bool,
    pub naturality_gap: f64,
}

fn simplex_grid(steps: usize) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for i in 0..=steps {
        for j in 0..=steps - i {
            let k = steps - i - j;
            let s = steps as f64;
            out.push([i as f64 / s, j as f64 / s, k as f64 / s]);
        }
    }
    out
}

fn random_simplex(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let e: [f64; 3] = std::array::from_fn(|_| -(1.0 - rng.gen::<f64>()).ln());
    let s: f64 = e.iter().sum();
    e.map(|v| v / s)
}

struct PairCheck {
    injective: bool,
    reconstruction_error: f64,
}

fn check_pair(fx: &Fixture, system: &[Vec<i64>], a: [f64; 3], b: [f64; 3]) -> Result<PairCheck> {
    let mu = ClassicalMeasure::renormalized(fx.x.clone(), a.to_vec())?;
    let nu = ClassicalMeasure::renormalized(fx.x.clone(), b.to_vec())?;
    let (img_mu, img_nu) = (fx.classical_image(&mu)?, fx.classical_image(&nu)?);
    let mut reconstruction_error: f64 = 0.0;
    for (m, img) in [(&mu, &img_mu), (&nu, &img_nu)] {
        reconstruction_error = match solve_preimage(system, img) {
            Some(alpha) => reconstruction_error.max(sup_distance(&alpha, m.weights())),
            None => f64::INFINITY,
        };
    }
    let same_image = sup_distance(&img_mu, &img_nu) <= INJECTIVITY_TOLERANCE;
    let same_measure = sup_distance(mu.weights(), nu.weights()) <= INJECTIVITY_TOLERANCE;
    Ok(PairCheck {
        injective: !same_image || same_measure,
        reconstruction_error,
    })
}

/// Runs the whole example: exact rank of the classical system, randomized
/// and gridded pair checks, the idempotent witness `(−1,0,0)` vs `(−2,0,0)`,
/// and the naturality gap of the log conversion under `f`.
pub fn verify_counterexample() -> Result<CounterexampleReport> {
    let fx = Fixture::new();
    let system = pair_incidence(&fx.f, &fx.g);
    let system_rank = integer_rank(system.clone());

    // every third random pair is a near-duplicate, so equal-image pairs occur
    let random = parallel::map_indices(RANDOM_PAIRS, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        rng.set_stream(i as u64);
        let a = random_simplex(&mut rng);
        let b = if i % 3 == 0 {
            let jitter: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1e-11..1e-11));
            std::array::from_fn(|k| (a[k] + jitter[k]).max(0.0))
        } else {
            random_simplex(&mut rng)
        };
        check_pair(&fx, &system, a, b)
    });
    let grid = simplex_grid(GRID_STEPS);
    let grid_checks = parallel::map_indices(grid.len() * grid.len(), |k| {
        check_pair(&fx, &system, grid[k / grid.len()], grid[k % grid.len()])
    });

    let mut classical_injective = system_rank == fx.x.len();
    let mut max_reconstruction_error: f64 = 0.0;
    for check in random.into_iter().chain(grid_checks) {
        let check = check?;
        classical_injective &= check.injective;
        max_reconstruction_error = max_reconstruction_error.max(check.reconstruction_error);
    }
    classical_injective &= max_reconstruction_error <= INJECTIVITY_TOLERANCE;

    let mu = IdempotentMeasure::new(fx.x.clone(), vec![Finite(-1.0), Finite(0.0), Finite(0.0)])?;
    let nu = IdempotentMeasure::new(fx.x.clone(), vec![Finite(-2.0), Finite(0.0), Finite(0.0)])?;
    let image = fx.idempotent_image(&mu)?;
    let witness_images_equal = fx.idempotent_image(&nu)? == image && mu != nu;

    let probe = ClassicalMeasure::new(fx.x.clone(), vec![0.4, 0.2, 0.4])?;
    let naturality_gap = naturality_gap(&fx.f, &probe)?;

    Ok(CounterexampleReport {
        classical_injective,
        system_rank,
        random_pairs: RANDOM_PAIRS,
        grid_pairs: grid.len() * grid.len(),
        max_reconstruction_error,
        idempotent_witness: IdempotentWitness { mu, nu, image },
        witness_images_equal,
        naturality_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxplus::MaxPlus;

    #[test]
    fn incidence_matrix_of_fixture() {
        let fx = Fixture::new();
        let a = pair_incidence(&fx.f, &fx.g);
        assert_eq!(
            a,
            vec![vec![1, 0, 1], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(integer_rank(a), 3);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(integer_rank(vec![vec![1, 1], vec![2, 2]]), 1);
        assert_eq!(integer_rank(vec![vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(
            integer_rank(vec![vec![2, 1, 0], vec![1, 3, 1], vec![3, 4, 1]]),
            2
        );
    }

    #[test]
    fn preimage_solve() {
        let fx = Fixture::new();
        let a = pair_incidence(&fx.f, &fx.g);
        let mu = ClassicalMeasure::new(fx.x.clone(), vec![0.2, 0.3, 0.5]).unwrap();
        let alpha = solve_preimage(&a, &fx.classical_image(&mu).unwrap()).unwrap();
        assert!(sup_distance(&alpha, mu.weights()) < 1e-15);
        // rank-deficient: both points of the domain go to the same place
        let x = FiniteSpace::new(["p", "q"]).unwrap();
        let one = FiniteSpace::new(["*"]).unwrap();
        let c = PointMap::new(x, one, vec![0, 0]).unwrap();
        assert!(solve_preimage(&pair_incidence(&c, &c), &[1.0, 1.0]).is_none());
    }

    #[test]
    fn classical_images_differ() {
        let fx = Fixture::new();
        let a = ClassicalMeasure::new(fx.x.clone(), vec![0.2, 0.3, 0.5]).unwrap();
        let b = ClassicalMeasure::new(fx.x.clone(), vec![0.25, 0.3, 0.45]).unwrap();
        // (0.7, 0.3, 0.5, 0.5) vs (0.7, 0.3, 0.55, 0.45)
        let (ia, ib) = (
            fx.classical_image(&a).unwrap(),
            fx.classical_image(&b).unwrap(),
        );
        assert!((sup_distance(&ia, &ib) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn idempotent_family_collapses() {
        let fx = Fixture::new();
        let zero = IdempotentMeasure::new(fx.x.clone(), vec![Finite(0.0); 3]).unwrap();
        let target = fx.idempotent_image(&zero).unwrap();
        for lambda in [-0.001, -1.0, -2.0, -50.0] {
            let m = IdempotentMeasure::new(
                fx.x.clone(),
                vec![Finite(lambda), Finite(0.0), Finite(0.0)],
            )
            .unwrap();
            assert_eq!(fx.idempotent_image(&m).unwrap(), target);
        }
        assert!(target.0.weights().iter().all(|&w| w == MaxPlus::ONE));
    }

    #[test]
    fn report() {
        let r = verify_counterexample().unwrap();
        assert!(r.classical_injective);
        assert_eq!(r.system_rank, 3);
        assert!(r.witness_images_equal);
        assert!((r.naturality_gap - std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(r.grid_pairs, 66 * 66);
    }
}
