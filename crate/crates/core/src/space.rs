//! Finite spaces and real-valued functions on them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered set of distinct, nonempty point labels.
///
/// Cloning is cheap; the label table is shared.
#[derive(Clone, Debug)]
pub struct FiniteSpace {
    inner: Arc<SpaceInner>,
}

#[derive(Debug)]
struct SpaceInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidSpace("space has no points".into()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidSpace("empty point label".into()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate label {label:?}")));
            }
        }
        Ok(FiniteSpace {
            inner: Arc::new(SpaceInner { labels, index }),
        })
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.inner.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.inner
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::PointNotInSpace(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.inner.index.contains_key(label)
    }

    pub(crate) fn ensure_same(&self, other: &FiniteSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.labels == other.inner.labels
    }
}

impl Eq for FiniteSpace {}

/// A finite real-valued function on a [`FiniteSpace`], one value per point.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction {
    space: FiniteSpace,
    values: Vec<f64>,
}

impl TestFunction {
    pub fn new(space: FiniteSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::InvalidFunction(format!(
                "expected {} values, got {}",
                space.len(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidFunction(format!("non-finite value {bad}")));
        }
        Ok(TestFunction { space, values })
    }

    /// The constant function `c_X`.
    pub fn constant(space: FiniteSpace, c: f64) -> Result<Self> {
        let n = space.len();
        TestFunction::new(space, vec![c; n])
    }

    pub fn from_fn(space: FiniteSpace, f: impl FnMut(usize) -> f64) -> Result<Self> {
        let values = (0..space.len()).map(f).collect();
        TestFunction::new(space, values)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, label: &str) -> Result<f64> {
        Ok(self.values[self.space.index_of(label)?])
    }

    /// Sup-norm `max |φ(x)|`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `λ ⊙ φ`, i.e. `x ↦ λ + φ(x)`.
    pub fn shifted(&self, lambda: f64) -> Self {
        TestFunction {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v + lambda).collect(),
        }
    }

    /// Pointwise `φ ⊕ ψ`.
    pub fn pointwise_max(&self, other: &TestFunction) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        Ok(TestFunction {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.max(*b))
                .collect(),
        })
    }
}
