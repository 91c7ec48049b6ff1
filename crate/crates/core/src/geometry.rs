//! Max-plus segments, the distance along them, the approximation maps
//! `f_ε`, and the support-meets-`A` sets `S_I(A)`.
//!
//! For `0 < ε ≤ 1` the map `f_ε` moves a measure `μ` toward a target `τ`
//! (a Dirac measure or a fixed measure) along the segment `[μ, τ]`:
//!
//! ```text
//! f_ε(μ) = (ln(1−ε) − m) ⊙ μ  ⊕  (ln ε − m) ⊙ τ,   m = ln(1−ε) ⊕ ln ε
//! ```
//!
//! The coefficient pair is a [`SegmentPoint`]; `μ` itself sits at `(0, Bottom)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::maxplus::{Bottom, MaxPlus};
use crate::measure::{maxplus_combine, IdempotentMeasure};

/// Coefficients `(α, β)` of a point `α⊙x ⊕ β⊙y` on a max-plus segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentPoint {
    alpha: MaxPlus,
    beta: MaxPlus,
}

impl SegmentPoint {
    pub fn new(alpha: MaxPlus, beta: MaxPlus) -> Result<Self> {
        if alpha > MaxPlus::ONE || beta > MaxPlus::ONE || alpha.oplus(beta) != MaxPlus::ONE {
            return Err(Error::NotConvexCombination(format!("({alpha}, {beta})")));
        }
        Ok(SegmentPoint { alpha, beta })
    }

    /// The left endpoint `x`.
    pub fn start() -> Self {
        SegmentPoint {
            alpha: MaxPlus::ONE,
            beta: Bottom,
        }
    }

    /// The right endpoint `y`.
    pub fn end() -> Self {
        SegmentPoint {
            alpha: Bottom,
            beta: MaxPlus::ONE,
        }
    }

    pub fn alpha(&self) -> MaxPlus {
        self.alpha
    }

    pub fn beta(&self) -> MaxPlus {
        self.beta
    }
}

/// `ρ(x, y) = |e^y − e^x|` on `[−∞, 0]`.
pub fn scalar_distance(x: MaxPlus, y: MaxPlus) -> f64 {
    (y.exp() - x.exp()).abs()
}

/// `ρ(p, q) = |e^{α₂} − e^{α₁}| + |e^{β₂} − e^{β₁}|`.
pub fn segment_distance(p: SegmentPoint, q: SegmentPoint) -> f64 {
    scalar_distance(p.alpha, q.alpha) + scalar_distance(p.beta, q.beta)
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange(eps))
    }
}

/// Segment coefficients of `f_ε`. At `ε = 1` the first coefficient is `Bottom`.
pub fn approx_coefficients(eps: f64) -> Result<SegmentPoint> {
    check_epsilon(eps)?;
    let keep = MaxPlus::ln(1.0 - eps);
    let toward = MaxPlus::ln(eps);
    let top = keep.oplus(toward).to_f64();
    SegmentPoint::new(keep.shift(-top), toward.shift(-top))
}

/// `f_ε(μ)` moving toward the Dirac measure at `x0`.
pub fn approx_toward_point(
    mu: &IdempotentMeasure,
    x0: &str,
    eps: f64,
) -> Result<IdempotentMeasure> {
    let target = crate::measure::dirac(mu.space(), x0)?;
    approx_toward_measure(mu, &target, eps)
}

/// `f_ε(μ)` moving toward `nu`; the result's support contains both supports.
pub fn approx_toward_measure(
    mu: &IdempotentMeasure,
    nu: &IdempotentMeasure,
    eps: f64,
) -> Result<IdempotentMeasure> {
    let c = approx_coefficients(eps)?;
    maxplus_combine(c.alpha, mu, c.beta, nu)
}

/// Distance from `μ` to `f_ε(μ)` along `[μ, τ]`.
///
/// Equals `ε/(1−ε)` for `ε ≤ 1/2`. For `ε > 1/2` the `μ`-coefficient is
/// `ln((1−ε)/ε)`, so the first term is `1 − (1−ε)/ε` and the total is
/// `(3ε−1)/ε`. Both branches give `1` at `ε = 1/2`.
pub fn approx_distance_closed_form(eps: f64) -> Result<f64> {
    check_epsilon(eps)?;
    Ok(if eps <= 0.5 {
        eps / (1.0 - eps)
    } else {
        (3.0 * eps - 1.0) / eps
    })
}

/// Membership in `S_I(A)`: the support of `mu` meets `a`.
pub fn is_in_si<S: AsRef<str>>(mu: &IdempotentMeasure, a: &[S]) -> Result<bool> {
    let a = resolve(mu, a)?;
    Ok(mu.support().iter().any(|i| a.contains(i)))
}

/// Membership in `I(B)`: the support of `mu` lies inside `b`.
pub fn is_supported_in<S: AsRef<str>>(mu: &IdempotentMeasure, b: &[S]) -> Result<bool> {
    let b = resolve(mu, b)?;
    Ok(mu.support().is_subset(&b))
}

fn resolve<S: AsRef<str>>(mu: &IdempotentMeasure, labels: &[S]) -> Result<BTreeSet<usize>> {
    labels
        .iter()
        .map(|l| mu.space().index_of(l.as_ref()))
        .collect()
}
