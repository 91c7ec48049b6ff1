//! Idempotent and classical probability measures with finite support.
//!
//! Both kinds store one weight per point of their space. An idempotent
//! measure `μ = ⊕ λᵢ ⊙ δ_{xᵢ}` has weights `λᵢ ≤ 0` with `⊕ λᵢ = 0` and acts
//! on functions by `μ(φ) = max (λᵢ + φ(xᵢ))`. A classical measure has
//! weights `αᵢ ≥ 0` summing to one and acts by expectation. Atoms with weight
//! `Bottom` (resp. `0`) are outside the support.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::maxplus::{big_oplus, Bottom, MaxPlus};
use crate::space::{FiniteSpace, TestFunction};

/// Inputs whose weights sum to one within this tolerance are accepted as-is.
pub const CLASSICAL_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentMeasure {
    space: FiniteSpace,
    weights: Vec<MaxPlus>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalMeasure {
    space: FiniteSpace,
    weights: Vec<f64>,
}

/// Either kind of measure, for code that dispatches on kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Measure {
    Idempotent(IdempotentMeasure),
    Classical(ClassicalMeasure),
}

/// Checks that `label` belongs to `space` and returns the Dirac measure there.
pub fn dirac(space: &FiniteSpace, label: &str) -> Result<IdempotentMeasure> {
    let at = space.index_of(label)?;
    Ok(IdempotentMeasure::dirac_at(space.clone(), at))
}

/// Shifts raw weights so that their maximum becomes `0`.
pub fn normalize_idempotent(space: FiniteSpace, raw: Vec<MaxPlus>) -> Result<IdempotentMeasure> {
    if raw.len() != space.len() {
        return Err(Error::InvalidMeasure(format!(
            "expected {} weights, got {}",
            space.len(),
            raw.len()
        )));
    }
    let top = big_oplus(raw.iter().copied())
        .finite()
        .ok_or(Error::EmptySupport)?;
    let weights = raw.into_iter().map(|w| w.shift(-top)).collect();
    Ok(IdempotentMeasure { space, weights })
}

impl IdempotentMeasure {
    /// Builds a measure from already-normalized weights.
    pub fn new(space: FiniteSpace, weights: Vec<MaxPlus>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::InvalidMeasure(format!(
                "expected {} weights, got {}",
                space.len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| *w > MaxPlus::ONE) {
            return Err(Error::InvalidMeasure(format!(
                "weight of {:?} is positive",
                space.label(i)
            )));
        }
        if big_oplus(weights.iter().copied()) != MaxPlus::ONE {
            return Err(Error::InvalidMeasure("maximum weight is not 0".into()));
        }
        Ok(IdempotentMeasure { space, weights })
    }

    pub(crate) fn new_unchecked(space: FiniteSpace, weights: Vec<MaxPlus>) -> Self {
        debug_assert_eq!(big_oplus(weights.iter().copied()), MaxPlus::ONE);
        IdempotentMeasure { space, weights }
    }

    pub(crate) fn dirac_at(space: FiniteSpace, at: usize) -> Self {
        let mut weights = vec![Bottom; space.len()];
        weights[at] = MaxPlus::ONE;
        IdempotentMeasure { space, weights }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn weights(&self) -> &[MaxPlus] {
        &self.weights
    }

    pub fn weight(&self, label: &str) -> Result<MaxPlus> {
        Ok(self.weights[self.space.index_of(label)?])
    }

    /// `μ(φ) = ⊕ᵢ λᵢ ⊙ φ(xᵢ)`.
    pub fn evaluate(&self, phi: &TestFunction) -> Result<f64> {
        self.space.ensure_same(phi.space())?;
        Ok(self.evaluate_values(phi.values()))
    }

    pub(crate) fn evaluate_values(&self, values: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(values)
            .filter_map(|(w, v)| w.finite().map(|w| w + v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices of atoms with weight above `Bottom`.
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.weights.len())
            .filter(|&i| !self.weights[i].is_bottom())
            .collect()
    }

    pub fn support_labels(&self) -> Vec<&str> {
        self.support()
            .into_iter()
            .map(|i| self.space.label(i))
            .collect()
    }

    /// Membership in `Iₙ(X)`: at most `n` atoms.
    pub fn is_in_in(&self, n: usize) -> Result<bool> {
        if n < 1 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        Ok(self.support().len() <= n)
    }
}

/// Max-plus convex combination `α⊙μ ⊕ β⊙ν`; requires `α ⊕ β = 0`.
pub fn maxplus_combine(
    alpha: MaxPlus,
    mu: &IdempotentMeasure,
    beta: MaxPlus,
    nu: &IdempotentMeasure,
) -> Result<IdempotentMeasure> {
    mu.space.ensure_same(&nu.space)?;
    if alpha.oplus(beta) != MaxPlus::ONE {
        return Err(Error::NotConvexCombination(format!("{alpha} ⊕ {beta} ≠ 0")));
    }
    let weights = mu
        .weights
        .iter()
        .zip(&nu.weights)
        .map(|(&l, &g)| alpha.odot(l).oplus(beta.odot(g)))
        .collect();
    Ok(IdempotentMeasure::new_unchecked(mu.space.clone(), weights))
}

impl ClassicalMeasure {
    /// Accepts weights that are nonnegative, finite and sum to one within
    /// [`CLASSICAL_SUM_TOLERANCE`].
    pub fn new(space: FiniteSpace, weights: Vec<f64>) -> Result<Self> {
        let sum = Self::check_weights(&space, &weights)?;
        if (sum - 1.0).abs() > CLASSICAL_SUM_TOLERANCE {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(ClassicalMeasure { space, weights })
    }

    /// Like [`ClassicalMeasure::new`] but rescales any positive total to one.
    pub fn renormalized(space: FiniteSpace, weights: Vec<f64>) -> Result<Self> {
        let sum = Self::check_weights(&space, &weights)?;
        if sum <= 0.0 {
            return Err(Error::EmptySupport);
        }
        let weights = weights.into_iter().map(|w| w / sum).collect();
        Ok(ClassicalMeasure { space, weights })
    }

    pub(crate) fn new_unchecked(space: FiniteSpace, weights: Vec<f64>) -> Self {
        ClassicalMeasure { space, weights }
    }

    /// Point mass at `label`.
    pub fn point_mass(space: &FiniteSpace, label: &str) -> Result<Self> {
        let at = space.index_of(label)?;
        let mut weights = vec![0.0; space.len()];
        weights[at] = 1.0;
        Ok(ClassicalMeasure {
            space: space.clone(),
            weights,
        })
    }

    fn check_weights(space: &FiniteSpace, weights: &[f64]) -> Result<f64> {
        if weights.len() != space.len() {
            return Err(Error::InvalidMeasure(format!(
                "expected {} weights, got {}",
                space.len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidMeasure(format!(
                "weight of {:?} must be a nonnegative number",
                space.label(i)
            )));
        }
        Ok(weights.iter().sum())
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, label: &str) -> Result<f64> {
        Ok(self.weights[self.space.index_of(label)?])
    }

    /// Expectation `Σ αᵢ φ(xᵢ)`.
    pub fn evaluate(&self, phi: &TestFunction) -> Result<f64> {
        self.space.ensure_same(phi.space())?;
        Ok(self
            .weights
            .iter()
            .zip(phi.values())
            .map(|(a, v)| a * v)
            .sum())
    }

    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.weights.len())
            .filter(|&i| self.weights[i] > 0.0)
            .collect()
    }

    pub fn support_labels(&self) -> Vec<&str> {
        self.support()
            .into_iter()
            .map(|i| self.space.label(i))
            .collect()
    }
}

impl Measure {
    pub fn space(&self) -> &FiniteSpace {
        match self {
            Measure::Idempotent(m) => m.space(),
            Measure::Classical(m) => m.space(),
        }
    }

    pub fn evaluate(&self, phi: &TestFunction) -> Result<f64> {
        match self {
            Measure::Idempotent(m) => m.evaluate(phi),
            Measure::Classical(m) => m.evaluate(phi),
        }
    }

    pub fn support(&self) -> BTreeSet<usize> {
        match self {
            Measure::Idempotent(m) => m.support(),
            Measure::Classical(m) => m.support(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Measure::Idempotent(_) => "idempotent",
            Measure::Classical(_) => "classical",
        }
    }
}

impl From<IdempotentMeasure> for Measure {
    fn from(m: IdempotentMeasure) -> Self {
        Measure::Idempotent(m)
    }
}

impl From<ClassicalMeasure> for Measure {
    fn from(m: ClassicalMeasure) -> Self {
        Measure::Classical(m)
    }
}
