//! Pushforward along point maps and product measures.
//!
//! Under a map `f: X → Y` the idempotent image takes the max of the weights
//! in each fiber `f⁻¹(y)`; the classical image sums them. Products of two
//! measures put weight `λₓ ⊙ γᵧ` (resp. `αₓ·βᵧ`) on the pair `(x,y)`.

use crate::error::{Error, Result};
use crate::maxplus::{Bottom, MaxPlus};
use crate::measure::{ClassicalMeasure, IdempotentMeasure, Measure};
use crate::space::{FiniteSpace, TestFunction};

/// A total map between finite spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMap {
    domain: FiniteSpace,
    codomain: FiniteSpace,
    image: Vec<usize>,
}

impl PointMap {
    /// `image[i]` is the codomain index of domain point `i`.
    pub fn new(domain: FiniteSpace, codomain: FiniteSpace, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.len() {
            return Err(Error::InvalidMap(format!(
                "expected {} images, got {}",
                domain.len(),
                image.len()
            )));
        }
        if let Some(&j) = image.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::InvalidMap(format!("image index {j} out of range")));
        }
        Ok(PointMap {
            domain,
            codomain,
            image,
        })
    }

    /// Builds a map from `(source, target)` label pairs covering the domain.
    pub fn from_labels<'a, I>(domain: FiniteSpace, codomain: FiniteSpace, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut image = vec![None; domain.len()];
        for (from, to) in pairs {
            let i = domain.index_of(from)?;
            let j = codomain.index_of(to)?;
            if image[i].replace(j).is_some() {
                return Err(Error::InvalidMap(format!("{from:?} mapped twice")));
            }
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(i, j)| {
                j.ok_or_else(|| Error::InvalidMap(format!("{:?} has no image", domain.label(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        PointMap::new(domain, codomain, image)
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        PointMap {
            domain: space.clone(),
            codomain: space.clone(),
            image: (0..space.len()).collect(),
        }
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.codomain
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.image
            .iter()
            .all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PointMap) -> Result<PointMap> {
        self.codomain.ensure_same(&next.domain)?;
        Ok(PointMap {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            image: self.image.iter().map(|&j| next.image[j]).collect(),
        })
    }

    /// The pulled-back function `ψ ∘ f`.
    pub fn pull_back(&self, psi: &TestFunction) -> Result<TestFunction> {
        self.codomain.ensure_same(psi.space())?;
        TestFunction::from_fn(self.domain.clone(), |i| psi.values()[self.image[i]])
    }
}

/// `X × Y` with points labeled `"(x,y)"`, ordered with `x` outermost.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductSpace {
    left: FiniteSpace,
    right: FiniteSpace,
    space: FiniteSpace,
}

impl ProductSpace {
    pub fn new(left: &FiniteSpace, right: &FiniteSpace) -> Result<Self> {
        let labels = left
            .labels()
            .iter()
            .flat_map(|x| right.labels().iter().map(move |y| format!("({x},{y})")));
        // labels containing commas can collide, e.g. "a,b" × "c" vs "a" × "b,c"
        let space = FiniteSpace::new(labels)?;
        Ok(ProductSpace {
            left: left.clone(),
            right: right.clone(),
            space,
        })
    }

    pub fn left(&self) -> &FiniteSpace {
        &self.left
    }

    pub fn right(&self) -> &FiniteSpace {
        &self.right
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right.len() + j
    }

    /// The function `(x,y) ↦ φ(x) + ψ(y)`.
    pub fn tensor(&self, phi: &TestFunction, psi: &TestFunction) -> Result<TestFunction> {
        self.left.ensure_same(phi.space())?;
        self.right.ensure_same(psi.space())?;
        let m = self.right.len();
        TestFunction::from_fn(self.space.clone(), |k| {
            phi.values()[k / m] + psi.values()[k % m]
        })
    }
}

pub fn pushforward_idempotent(f: &PointMap, mu: &IdempotentMeasure) -> Result<IdempotentMeasure> {
    f.domain.ensure_same(mu.space())?;
    let mut weights = vec![Bottom; f.codomain.len()];
    for (&j, &w) in f.image.iter().zip(mu.weights()) {
        weights[j] = weights[j].oplus(w);
    }
    Ok(IdempotentMeasure::new_unchecked(
        f.codomain.clone(),
        weights,
    ))
}

pub fn pushforward_classical(f: &PointMap, mu: &ClassicalMeasure) -> Result<ClassicalMeasure> {
    f.domain.ensure_same(mu.space())?;
    let mut weights = vec![0.0; f.codomain.len()];
    for (&j, &w) in f.image.iter().zip(mu.weights()) {
        weights[j] += w;
    }
    Ok(ClassicalMeasure::new_unchecked(f.codomain.clone(), weights))
}

pub fn pushforward(f: &PointMap, mu: &Measure) -> Result<Measure> {
    Ok(match mu {
        Measure::Idempotent(m) => pushforward_idempotent(f, m)?.into(),
        Measure::Classical(m) => pushforward_classical(f, m)?.into(),
    })
}

/// The measure `μ ⊗ ν` on `X × Y`, the unique one with
/// `(μ⊗ν)(φ⊙ψ) = μ(φ) ⊙ ν(ψ)`.
pub fn product_idempotent(
    mu: &IdempotentMeasure,
    nu: &IdempotentMeasure,
) -> Result<IdempotentMeasure> {
    let prod = ProductSpace::new(mu.space(), nu.space())?;
    let weights = mu
        .weights()
        .iter()
        .flat_map(|&l| nu.weights().iter().map(move |&g| l.odot(g)))
        .collect();
    Ok(IdempotentMeasure::new_unchecked(prod.space, weights))
}

pub fn product_classical(mu: &ClassicalMeasure, nu: &ClassicalMeasure) -> Result<ClassicalMeasure> {
    let prod = ProductSpace::new(mu.space(), nu.space())?;
    let weights = mu
        .weights()
        .iter()
        .flat_map(|&a| nu.weights().iter().map(move |&b| a * b))
        .collect();
    Ok(ClassicalMeasure::new_unchecked(prod.space, weights))
}

pub fn product(mu: &Measure, nu: &Measure) -> Result<Measure> {
    match (mu, nu) {
        (Measure::Idempotent(a), Measure::Idempotent(b)) => Ok(product_idempotent(a, b)?.into()),
        (Measure::Classical(a), Measure::Classical(b)) => Ok(product_classical(a, b)?.into()),
        _ => Err(Error::InvalidArgument(
            "cannot multiply measures of different kinds".into(),
        )),
    }
}

/// `((f,g))(μ) = (f₊μ, g₊μ)` for either kind of measure.
pub fn pair_map_image(f: &PointMap, g: &PointMap, mu: &Measure) -> Result<(Measure, Measure)> {
    f.domain.ensure_same(&g.domain)?;
    Ok((pushforward(f, mu)?, pushforward(g, mu)?))
}

/// Max-plus indicator functions and the constructive uniqueness check for
/// the idempotent product.
///
/// Every `h` on `X × Y` is `⊕ h(x,y) ⊙ χₓ ⊙ χᵧ`, where `χₓ` is `0` at `x` and
/// `Bottom` elsewhere. A measure that is max-plus additive and homogeneous is
/// therefore fixed by its values on the `χₓ ⊙ χᵧ`, and those values are
/// `μ(χₓ) ⊙ ν(χᵧ)` by the defining property of the product.
pub mod indicators {
    use super::*;

    /// `χ_at` on a space of `len` points.
    pub fn indicator(len: usize, at: usize) -> Vec<MaxPlus> {
        let mut values = vec![Bottom; len];
        values[at] = MaxPlus::ONE;
        values
    }

    /// `μ(h) = ⊕ λᵢ ⊙ h(xᵢ)` for functions that may take the value `Bottom`.
    pub fn evaluate_extended(mu: &IdempotentMeasure, h: &[MaxPlus]) -> Result<MaxPlus> {
        if h.len() != mu.space().len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(mu
            .weights()
            .iter()
            .zip(h)
            .fold(Bottom, |acc, (&w, &v)| acc.oplus(w.odot(v))))
    }

    /// Rebuilds the product from factor evaluations `μ(χₓ) ⊙ ν(χᵧ)` alone.
    pub fn reconstruct_product(
        mu: &IdempotentMeasure,
        nu: &IdempotentMeasure,
    ) -> Result<IdempotentMeasure> {
        let prod = ProductSpace::new(mu.space(), nu.space())?;
        let (n, m) = (mu.space().len(), nu.space().len());
        let left = (0..n)
            .map(|i| evaluate_extended(mu, &indicator(n, i)))
            .collect::<Result<Vec<_>>>()?;
        let right = (0..m)
            .map(|j| evaluate_extended(nu, &indicator(m, j)))
            .collect::<Result<Vec<_>>>()?;
        let weights = left
            .iter()
            .flat_map(|&l| right.iter().map(move |&r| l.odot(r)))
            .collect();
        IdempotentMeasure::new(prod.space, weights)
    }

    /// Evaluates `ξ` on `χₓ ⊙ χᵧ` for every pair, i.e. reads `ξ` back through
    /// the indicator decomposition.
    pub fn read_back(xi: &IdempotentMeasure, prod: &ProductSpace) -> Result<Vec<MaxPlus>> {
        xi.space().ensure_same(prod.space())?;
        let (n, m) = (prod.left().len(), prod.right().len());
        let mut out = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                let chi: Vec<MaxPlus> = (0..n * m)
                    .map(|k| indicator(n, i)[k / m].odot(indicator(m, j)[k % m]))
                    .collect();
                out.push(evaluate_extended(xi, &chi)?);
            }
        }
        Ok(out)
    }
}
