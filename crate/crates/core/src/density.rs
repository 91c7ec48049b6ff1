//! Grid discretization of idempotent measures on `[0, 1]`.
//!
//! A measure on the interval is given by a piecewise-linear density `d ≤ 0`
//! with `sup d = 0`, acting by `μ(φ) = sup (d(x) + φ(x))`. Sampling `d` on the
//! grid `k/n` gives a finite-support measure; [`convergence_report`] compares
//! its value on `φ` with a fine-grid evaluation of the interval measure.

use crate::error::{Error, Result};
use crate::maxplus::Finite;
use crate::measure::{normalize_idempotent, IdempotentMeasure};
use crate::parallel;
use crate::space::{FiniteSpace, TestFunction};

/// Probe resolution of the reference evaluation.
pub const ORACLE_RESOLUTION: usize = 1_000_000;
/// Smallest resolution accepted by [`eval_density_measure`].
pub const MIN_ORACLE_RESOLUTION: usize = 10_000;

const SLOPE_TOLERANCE: f64 = 1e-12;
const SUP_TOLERANCE: f64 = 1e-9;

/// A continuous piecewise-linear function on `[0, 1]` with a declared
/// Lipschitz bound.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
    lipschitz: f64,
}

impl PiecewiseLinear {
    /// Breakpoints must start at `0`, end at `1`, and have strictly
    /// increasing abscissae. A single breakpoint `(0, c)` is not enough;
    /// constants are `[(0, c), (1, c)]`.
    pub fn new(breakpoints: Vec<(f64, f64)>, lipschitz: f64) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidFunction(m));
        if breakpoints.len() < 2 {
            return bad("need at least two breakpoints".into());
        }
        if !(lipschitz.is_finite() && lipschitz >= 0.0) {
            return bad(format!(
                "lipschitz constant {lipschitz} must be finite and nonnegative"
            ));
        }
        if breakpoints
            .iter()
            .any(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return bad("breakpoints must be finite".into());
        }
        let (xs, ys): (Vec<f64>, Vec<f64>) = breakpoints.into_iter().unzip();
        if xs[0] != 0.0 || xs[xs.len() - 1] != 1.0 {
            return bad("breakpoints must span [0, 1]".into());
        }
        for i in 1..xs.len() {
            if xs[i] <= xs[i - 1] {
                return bad("breakpoint abscissae must increase".into());
            }
            let slope = ((ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1])).abs();
            if slope > lipschitz * (1.0 + SLOPE_TOLERANCE) + SLOPE_TOLERANCE {
                return bad(format!(
                    "slope {slope} on [{}, {}] exceeds lipschitz constant {lipschitz}",
                    xs[i - 1],
                    xs[i]
                ));
            }
        }
        Ok(PiecewiseLinear { xs, ys, lipschitz })
    }

    pub fn constant(c: f64) -> Result<Self> {
        PiecewiseLinear::new(vec![(0.0, c), (1.0, c)], 0.0)
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    /// Value at `x`, clamped to `[0, 1]`. Exact at breakpoints.
    pub fn eval(&self, x: f64) -> f64 {
        let k = self.xs.partition_point(|&b| b <= x);
        if k == 0 {
            return self.ys[0];
        }
        let (x0, y0) = (self.xs[k - 1], self.ys[k - 1]);
        if x0 == x || k == self.xs.len() {
            return y0;
        }
        let (x1, y1) = (self.xs[k], self.ys[k]);
        y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
    }

    fn max_value(&self) -> f64 {
        self.ys.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// An idempotent measure on `[0, 1]` given by its density.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMeasure(PiecewiseLinear);

impl DensityMeasure {
    /// The density must be `≤ 0` with supremum within `1e-9` of `0`. For a
    /// piecewise-linear density the supremum is the largest breakpoint value,
    /// so the check is exact.
    pub fn new(density: PiecewiseLinear) -> Result<Self> {
        let top = density.max_value();
        if top > 0.0 {
            return Err(Error::InvalidMeasure(format!("density reaches {top} > 0")));
        }
        if top < -SUP_TOLERANCE {
            return Err(Error::InvalidMeasure(format!(
                "density supremum {top} is not 0"
            )));
        }
        Ok(DensityMeasure(density))
    }

    pub fn density(&self) -> &PiecewiseLinear {
        &self.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.eval(x)
    }

    pub fn lipschitz(&self) -> f64 {
        self.0.lipschitz
    }
}

/// A test function on `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuousTestFunction(PiecewiseLinear);

impl ContinuousTestFunction {
    pub fn new(f: PiecewiseLinear) -> Self {
        ContinuousTestFunction(f)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.eval(x)
    }

    pub fn lipschitz(&self) -> f64 {
        self.0.lipschitz
    }

    /// Restriction to the grid `k/n`.
    pub fn on_grid(&self, space: &FiniteSpace, n: usize) -> Result<TestFunction> {
        TestFunction::from_fn(space.clone(), |k| self.eval(grid_point(k, n)))
    }
}

fn grid_point(k: usize, n: usize) -> f64 {
    k as f64 / n as f64
}

/// The points `k/n`, `k = 0..=n`, labeled by their decimal value.
pub fn grid_space(n: usize) -> Result<FiniteSpace> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "grid size must be at least 1".into(),
        ));
    }
    FiniteSpace::new((0..=n).map(|k| grid_point(k, n).to_string()))
}

/// Samples the density on the grid `k/n` and normalizes.
pub fn discretize(d: &DensityMeasure, n: usize) -> Result<IdempotentMeasure> {
    let space = grid_space(n)?;
    let raw = (0..=n).map(|k| Finite(d.eval(grid_point(k, n)))).collect();
    normalize_idempotent(space, raw)
}

/// Largest density value on the grid `k/n`, before normalization.
pub fn raw_grid_max(d: &DensityMeasure, n: usize) -> f64 {
    parallel::max_over(n, |k| d.eval(grid_point(k, n)))
}

/// `max (d(x) + φ(x))` over the grid of the given resolution.
pub fn eval_density_measure(
    d: &DensityMeasure,
    phi: &ContinuousTestFunction,
    resolution: usize,
) -> Result<f64> {
    if resolution < MIN_ORACLE_RESOLUTION {
        return Err(Error::InvalidArgument(format!(
            "resolution {resolution} is below {MIN_ORACLE_RESOLUTION}"
        )));
    }
    Ok(parallel::max_over(resolution, |k| {
        let x = grid_point(k, resolution);
        d.eval(x) + phi.eval(x)
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub error: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    /// Sorted by increasing `n`.
    pub rows: Vec<ConvergenceRow>,
    pub oracle_value: f64,
    pub within_bound: bool,
    pub non_increasing: bool,
}

/// Errors of the grid discretizations against the fine-grid reference, with
/// the bound `(L_φ + L_d)/n`.
pub fn convergence_report(
    d: &DensityMeasure,
    phi: &ContinuousTestFunction,
    ns: &[usize],
) -> Result<ConvergenceReport> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("no grid sizes given".into()));
    }
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let oracle_value = eval_density_measure(d, phi, ORACLE_RESOLUTION)?;
    let lip = d.lipschitz() + phi.lipschitz();
    let rows = ns
        .iter()
        .map(|&n| {
            let mu = discretize(d, n)?;
            let on_grid = phi.on_grid(mu.space(), n)?;
            let error = (mu.evaluate(&on_grid)? - oracle_value).abs();
            Ok(ConvergenceRow {
                n,
                error,
                bound: lip / n as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let within_bound = rows.iter().all(|r| r.error <= r.bound);
    let non_increasing = rows.windows(2).all(|w| w[1].error <= w[0].error + 1e-12);
    Ok(ConvergenceReport {
        rows,
        oracle_value,
        within_bound,
        non_increasing,
    })
}
