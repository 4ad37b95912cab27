//! Radical-graded decomposition of morphisms relative to a mesh-comparison.
//!
//! Peeling off one radical layer at a time: the residue in `radⁿ/radⁿ⁺¹` is
//! written over the images of the degree-`n` graded basis, that combination
//! becomes the `n`-th part, and what survives every layer lies in `rad^∞`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::component::{blocks_text, ArComponent};
use crate::error::{Error, Result};
use crate::format::BlocksText;
use crate::linalg::Matrix;
use crate::mesh::GradedHomTable;
use crate::module::{Depth, Morphism};
use crate::riedtmann::{graded_images, RiedtmannFunctor};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismParts<S> {
    pub source: usize,
    pub target: usize,
    pub f: Morphism<S>,
    /// Nonzero parts only.
    pub parts: BTreeMap<usize, Morphism<S>>,
    pub infinite_part: Morphism<S>,
    /// Coefficients of each nonzero part over the images of the graded
    /// basis of that degree.
    pub witnesses: BTreeMap<usize, Vec<S>>,
}

impl<S: Scalar> MorphismParts<S> {
    /// The `n`-th part, zero if absent.
    pub fn part(&self, n: usize) -> Morphism<S> {
        self.parts.get(&n).cloned().unwrap_or_else(|| self.zero())
    }

    pub fn finite_part(&self) -> Morphism<S> {
        self.parts.values().fold(self.zero(), |acc, p| acc.add(p))
    }

    /// Index of the first nonzero part.
    pub fn depth(&self) -> Depth {
        self.parts.keys().next().map_or(Depth::Infinite, |&n| Depth::Finite(n))
    }

    fn zero(&self) -> Morphism<S> {
        Morphism::zero(&self.f.source_dims(), &self.f.target_dims())
    }

    pub fn to_text(&self, c: &ArComponent<S>) -> PartsText {
        let q = c.algebra.quiver();
        PartsText {
            source: c.name(self.source).to_string(),
            target: c.name(self.target).to_string(),
            depth: self.depth(),
            parts: self
                .parts
                .iter()
                .map(|(n, p)| (n.to_string(), blocks_text(q, p)))
                .collect(),
            infinite_part: (!self.infinite_part.is_zero()).then(|| blocks_text(q, &self.infinite_part)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartsText {
    pub source: String,
    pub target: String,
    pub depth: Depth,
    pub parts: BTreeMap<String, BlocksText>,
    pub infinite_part: Option<BlocksText>,
}

/// Splits `f: x -> y` into its parts. With `tie_break`, each graded basis is
/// replaced by a random invertible recombination before solving; the parts
/// do not depend on it.
pub fn decompose<S: Scalar>(
    c: &ArComponent<S>,
    functor: &RiedtmannFunctor<S>,
    table: &GradedHomTable<S>,
    x: usize,
    y: usize,
    f: &Morphism<S>,
    tie_break: Option<u64>,
) -> Result<MorphismParts<S>> {
    f.check(c.rep(x), c.rep(y))?;
    let stable = c.filtration.stable_index();
    if stable > 0 && table.cap() < stable - 1 {
        return Err(Error::Precondition(format!(
            "mesh table of degree {} is too shallow for stabilization index {stable}",
            table.cap()
        )));
    }
    let mut rng = tie_break.map(ChaCha8Rng::seed_from_u64);
    let mut residue = f.clone();
    let mut parts = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for n in 0..stable {
        let flat = residue.flatten();
        if !c.filtration.rad_power(x, y, n).contains(&flat) {
            return Err(Error::Internal(format!("residue left rad^{n} at degree {n}")));
        }
        let images = graded_images(c, functor, table, x, y, n)?;
        let k = images.len();
        let change = match rng.as_mut() {
            Some(rng) => random_invertible::<S>(k, rng),
            None => Matrix::identity(k),
        };
        // Columns: recombined images, then a basis of radⁿ⁺¹.
        let image_cols: Vec<Vec<S>> = images.iter().map(Morphism::flatten).collect();
        let mut cols: Vec<Vec<S>> = (0..k)
            .map(|j| {
                let terms: Vec<(S, &[S])> = (0..k)
                    .map(|i| (change[(i, j)].clone(), image_cols[i].as_slice()))
                    .collect();
                crate::linalg::linear_combination(flat.len(), &terms)
            })
            .collect();
        let lower = c.filtration.rad_power(x, y, n + 1);
        cols.extend(lower.basis().iter().cloned());
        let system = Matrix::from_columns(flat.len(), &cols);
        if system.rank() != cols.len() {
            return Err(Error::Internal(format!(
                "graded images at {} -> {} in degree {n} are dependent modulo rad^{}",
                c.name(x),
                c.name(y),
                n + 1
            )));
        }
        let sol = system
            .solve(&flat)
            .ok_or_else(|| Error::Internal(format!("residue at degree {n} is not reached by graded images")))?;
        let coeffs = change.mul_vec(&sol[..k]);
        if coeffs.iter().all(|v| v.is_zero()) {
            continue;
        }
        let terms: Vec<(S, &Morphism<S>)> = coeffs.iter().cloned().zip(&images).collect();
        let part = Morphism::combination(&f.source_dims(), &f.target_dims(), &terms);
        residue = residue.sub(&part);
        parts.insert(n, part);
        witnesses.insert(n, coeffs);
    }
    if !c.filtration.rad_infty(x, y).contains(&residue.flatten()) {
        return Err(Error::Internal(
            "remainder after the last layer is not in rad^inf".into(),
        ));
    }
    Ok(MorphismParts {
        source: x,
        target: y,
        f: f.clone(),
        parts,
        infinite_part: residue,
        witnesses,
    })
}

fn random_invertible<S: Scalar>(k: usize, rng: &mut ChaCha8Rng) -> Matrix<S> {
    loop {
        let m = Matrix::from_fn(k, k, |_, _| S::sample(rng));
        if m.is_invertible() {
            return m;
        }
    }
}

/// Depth of `f: x -> y`.
pub fn depth<S: Scalar>(c: &ArComponent<S>, x: usize, y: usize, f: &Morphism<S>) -> Depth {
    c.filtration.depth(x, y, f)
}

/// The principal part (first nonzero part, or the infinite part when every
/// finite part vanishes) and the secondary part `f - principal`.
pub fn principal_secondary<S: Scalar>(parts: &MorphismParts<S>) -> Result<(Morphism<S>, Morphism<S>)> {
    if parts.f.is_zero() {
        return Err(Error::ZeroMorphism);
    }
    let principal = match parts.parts.values().next() {
        Some(p) => p.clone(),
        None => parts.infinite_part.clone(),
    };
    let secondary = parts.f.sub(&principal);
    Ok((principal, secondary))
}
