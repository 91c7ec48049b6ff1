//! The mutually inverse conversions between classical and idempotent
//! measures on a finite space.
//!
//! A classical measure `Σ αᵢ δᵢ` goes to `⊕ (ln αᵢ − max ln αⱼ) ⊙ δᵢ`, and an
//! idempotent measure `⊕ λᵢ ⊙ δᵢ` goes back to `Σ (e^{λᵢ} / Σ e^{λⱼ}) δᵢ`.
//! Both maps preserve supports. They do not commute with pushforward: summing
//! over a fiber and then taking logs differs from taking the max of logs,
//! which is what [`naturality_gap`] measures.

use crate::error::Result;
use crate::functor::{pushforward_classical, pushforward_idempotent, PointMap};
use crate::maxplus::{Bottom, Finite, MaxPlus};
use crate::measure::{ClassicalMeasure, IdempotentMeasure, Measure};

pub fn to_idempotent(mu: &ClassicalMeasure) -> IdempotentMeasure {
    let logs: Vec<MaxPlus> = mu.weights().iter().map(|&a| MaxPlus::ln(a)).collect();
    let top = logs
        .iter()
        .filter_map(|l| l.finite())
        .fold(f64::NEG_INFINITY, f64::max);
    let weights = logs.into_iter().map(|l| l.shift(-top)).collect();
    IdempotentMeasure::new_unchecked(mu.space().clone(), weights)
}

/// Weights below about `-745` underflow `e^λ` to zero and drop out of the
/// support of the result.
pub fn to_classical(mu: &IdempotentMeasure) -> ClassicalMeasure {
    // max weight is 0, so every e^λ ≤ 1 and the sum is in [1, n]
    let exps: Vec<f64> = mu.weights().iter().map(|w| w.exp()).collect();
    let total: f64 = exps.iter().sum();
    let weights = exps.into_iter().map(|e| e / total).collect();
    ClassicalMeasure::new_unchecked(mu.space().clone(), weights)
}

pub fn convert(mu: &Measure) -> Measure {
    match mu {
        Measure::Idempotent(m) => to_classical(m).into(),
        Measure::Classical(m) => to_idempotent(m).into(),
    }
}

/// Largest weight difference between `mu` and its image after converting to
/// the other kind and back. Bottom only matches Bottom.
pub fn roundtrip_gap(mu: &Measure) -> f64 {
    match mu {
        Measure::Classical(m) => {
            let back = to_classical(&to_idempotent(m));
            m.weights()
                .iter()
                .zip(back.weights())
                .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
        }
        Measure::Idempotent(m) => {
            let back = to_idempotent(&to_classical(m));
            weight_gap(m.weights(), back.weights())
        }
    }
}

/// Sup-distance between two weight vectors; `Bottom` against a finite value
/// counts as infinitely far.
pub fn weight_gap(a: &[MaxPlus], b: &[MaxPlus]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, pair| {
        let d = match pair {
            (Bottom, Bottom) => 0.0,
            (Finite(x), Finite(y)) => (x - y).abs(),
            _ => f64::INFINITY,
        };
        acc.max(d)
    })
}

/// How far the conversion fails to commute with pushforward along `f`:
/// compares `to_idempotent(f₊μ)` with `f₊(to_idempotent(μ))` atom by atom.
pub fn naturality_gap(f: &PointMap, mu: &ClassicalMeasure) -> Result<f64> {
    let via_classical = to_idempotent(&pushforward_classical(f, mu)?);
    let via_idempotent = pushforward_idempotent(f, &to_idempotent(mu))?;
    Ok(weight_gap(
        via_classical.weights(),
        via_idempotent.weights(),
    ))
}
