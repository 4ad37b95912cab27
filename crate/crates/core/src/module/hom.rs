use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::repr::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Subspace};
use crate::scalar::Scalar;

/// `Hom(M, N)` with a basis and its span inside the space of block tuples.
#[derive(Clone, Debug)]
pub struct HomSpace<S> {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub basis: Vec<Morphism<S>>,
    pub span: Subspace<S>,
}

impl<S: Scalar> HomSpace<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Length of a flattened block tuple.
    pub fn ambient(&self) -> usize {
        self.source.iter().zip(&self.target).map(|(s, t)| s * t).sum()
    }

    pub fn morphism(&self, flat: &[S]) -> Morphism<S> {
        Morphism::unflatten(&self.source, &self.target, flat)
    }

    pub fn zero(&self) -> Morphism<S> {
        Morphism::zero(&self.source, &self.target)
    }

    /// Coordinates of `f` in `basis`, if `f` lies in the span.
    pub fn coordinates(&self, f: &Morphism<S>) -> Option<Vec<S>> {
        let m = Matrix::from_columns(
            self.ambient(),
            &self.basis.iter().map(Morphism::flatten).collect::<Vec<_>>(),
        );
        m.solve(&f.flatten())
    }

    /// Basis morphisms of a subspace of this Hom space.
    pub fn morphisms_of(&self, sub: &Subspace<S>) -> Vec<Morphism<S>> {
        sub.basis().iter().map(|v| self.morphism(v)).collect()
    }
}

/// Solves the intertwining system for `Hom(M, N)`. The basis comes from the
/// reduced echelon form of the solution space, so it is deterministic.
pub fn hom_basis<S: Scalar>(m: &Representation<S>, n: &Representation<S>) -> Result<HomSpace<S>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let q = m.algebra().quiver();
    let (dm, dn) = (m.dims(), n.dims());
    let mut offset = Vec::with_capacity(dm.len());
    let mut total = 0;
    for v in 0..dm.len() {
        offset.push(total);
        total += dm[v] * dn[v];
    }
    // unknown (v, r, c) is entry r,c of the block at v
    let var = |v: usize, r: usize, c: usize| offset[v] + r * dm[v] + c;
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (k, a) in q.arrows().iter().enumerate() {
        let (u, v) = (a.source, a.target);
        let (na, ma) = (n.map(k), m.map(k));
        // (N_a X_u - X_v M_a)[r, c] = 0
        for r in 0..dn[v] {
            for c in 0..dm[u] {
                let mut row = vec![S::zero(); total];
                for t in 0..dn[u] {
                    let x = &na[(r, t)];
                    if !x.is_zero() {
                        let i = var(u, t, c);
                        row[i] = row[i].clone() + x.clone();
                    }
                }
                for t in 0..dm[v] {
                    let x = &ma[(t, c)];
                    if !x.is_zero() {
                        let i = var(v, r, t);
                        row[i] = row[i].clone() - x.clone();
                    }
                }
                rows.push(row);
            }
        }
    }
    let span = if rows.is_empty() {
        Subspace::full(total)
    } else {
        kernel_basis(&Matrix::from_rows(rows).expect("uniform rows"))
    };
    let basis = span.basis().iter().map(|v| Morphism::unflatten(dm, dn, v)).collect();
    Ok(HomSpace {
        source: dm.to_vec(),
        target: dn.to_vec(),
        basis,
        span,
    })
}

/// Splits an endomorphism as `λ·id + nilpotent`, returning `λ`.
fn split_scalar<S: Scalar>(f: &Morphism<S>, dims: &[usize]) -> Option<S> {
    let candidates: Vec<S> = match dims
        .iter()
        .enumerate()
        .find(|(_, &d)| d > 0 && !S::from_i64(d as i64).is_zero())
    {
        Some((v, &d)) => vec![f.blocks[v].trace() / S::from_i64(d as i64)],
        None => S::elements()?,
    };
    let id = Morphism::identity(dims);
    candidates
        .into_iter()
        .find(|l| is_nilpotent(&f.sub(&id.scale(l)), dims))
}

fn is_nilpotent<S: Scalar>(f: &Morphism<S>, dims: &[usize]) -> bool {
    let d = dims.iter().copied().max().unwrap_or(0);
    f.blocks.iter().all(|b| b.pow(d).is_zero())
}

/// The radical of `End(M)` for `M` with local endomorphism ring whose residue
/// field is the base field. Anything else is reported as an error.
pub fn end_radical<S: Scalar>(m: &Representation<S>, name: &str) -> Result<Subspace<S>> {
    let end = hom_basis(m, m)?;
    end_radical_of(&end, m.dims(), name)
}

pub(crate) fn end_radical_of<S: Scalar>(end: &HomSpace<S>, dims: &[usize], name: &str) -> Result<Subspace<S>> {
    let not_local = || Error::EndNotLocalOverField(name.to_string());
    if end.dim() == 0 {
        return Err(Error::Precondition(format!("{name} is the zero module")));
    }
    let id = Morphism::identity(dims);
    let mut nilpotent = Vec::new();
    for f in &end.basis {
        let l = split_scalar(f, dims).ok_or_else(not_local)?;
        nilpotent.push(f.sub(&id.scale(&l)).flatten());
    }
    let rad = Subspace::span(end.ambient(), nilpotent);
    if rad.dim() + 1 != end.dim() {
        return Err(not_local());
    }
    // rad must be a nilpotent two-sided ideal
    let rad_maps = end.morphisms_of(&rad);
    for r in &rad_maps {
        for e in &end.basis {
            if !rad.contains(&r.after(e).flatten()) || !rad.contains(&e.after(r).flatten()) {
                return Err(not_local());
            }
        }
    }
    let mut power = rad.clone();
    for _ in 0..=dims.iter().sum::<usize>() {
        if power.is_zero() {
            return Ok(rad);
        }
        let gens: Vec<Vec<S>> = end
            .morphisms_of(&power)
            .iter()
            .flat_map(|p| rad_maps.iter().map(move |r| p.after(r).flatten()))
            .collect();
        let next = Subspace::span(end.ambient(), gens);
        if next == power {
            break;
        }
        power = next;
    }
    if power.is_zero() {
        Ok(rad)
    } else {
        Err(not_local())
    }
}

/// Non-isomorphisms `M -> N` between indecomposables.
pub fn rad_basis<S: Scalar>(m: &Representation<S>, n: &Representation<S>, seed: u64) -> Result<Subspace<S>> {
    // transport along an isomorphism N -> M when there is one
    if let Some(iso) = find_isomorphism(n, m, seed)? {
        let hom = hom_basis(m, n)?;
        let rad = end_radical(m, "source")?;
        let end = hom_basis(m, m)?;
        // rad(M,N) = {f : iso∘f ∈ rad End(M)}
        let images: Vec<Vec<S>> = hom.basis.iter().map(|f| iso.after(f).flatten()).collect();
        let quotient_rows: Vec<Vec<S>> = images.iter().map(|v| rad.reduce(v)).collect();
        let mat = Matrix::from_columns(end.ambient(), &quotient_rows);
        let kernel = kernel_basis(&mat);
        let vectors = kernel.basis().iter().map(|c| {
            let terms: Vec<(S, &Morphism<S>)> = c.iter().cloned().zip(hom.basis.iter()).collect();
            Morphism::combination(m.dims(), n.dims(), &terms).flatten()
        });
        Ok(Subspace::span(hom.ambient(), vectors.collect::<Vec<_>>()))
    } else {
        Ok(hom_basis(m, n)?.span)
    }
}

/// Decides `M ≅ N`. See [`find_isomorphism`].
pub fn is_isomorphic<S: Scalar>(m: &Representation<S>, n: &Representation<S>, seed: u64) -> Result<bool> {
    Ok(find_isomorphism(m, n, seed)?.is_some())
}

/// Budget for exhaustive and randomized isomorphism search.
const ISO_BUDGET: usize = 4096;

/// Finds an isomorphism `M -> N`, or proves there is none.
///
/// When `End(M)` is local with residue field `k`, `M ≅ N` holds exactly when
/// some product `g∘f` of basis elements of `Hom(N, M)` and `Hom(M, N)` lies
/// outside `rad End(M)`; then `f` itself or a short combination is an
/// isomorphism. Otherwise the search is exhaustive over small prime fields
/// and randomized over `Q`, returning [`Error::Inconclusive`] when neither
/// route certifies an answer.
pub fn find_isomorphism<S: Scalar>(
    m: &Representation<S>,
    n: &Representation<S>,
    seed: u64,
) -> Result<Option<Morphism<S>>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let mn = hom_basis(m, n)?;
    if mn.dim() == 0 {
        return Ok((m.total_dim() == 0).then(|| Morphism::identity(m.dims())));
    }
    for f in &mn.basis {
        if f.is_isomorphism() {
            return Ok(Some(f.clone()));
        }
    }
    let nm = hom_basis(n, m)?;
    if nm.dim() == 0 {
        return Ok(None);
    }
    if let Ok(rad) = end_radical(m, "module") {
        let mut witness = None;
        'outer: for f in &mn.basis {
            for g in &nm.basis {
                if !rad.contains(&g.after(f).flatten()) {
                    witness = Some(f);
                    break 'outer;
                }
            }
        }
        let Some(f) = witness else {
            return Ok(None);
        };
        // g∘f is invertible so f is a split mono between equal dimensions
        if f.is_isomorphism() {
            return Ok(Some(f.clone()));
        }
        return Err(Error::Internal(
            "split mono between equal dimensions is not invertible".into(),
        ));
    }
    search_isomorphism(&mn, seed)
}

fn search_isomorphism<S: Scalar>(hom: &HomSpace<S>, seed: u64) -> Result<Option<Morphism<S>>> {
    if let Some(elems) = S::elements() {
        let total = (elems.len() as f64).powi(hom.dim() as i32);
        if total <= ISO_BUDGET as f64 {
            let mut idx = vec![0usize; hom.dim()];
            loop {
                let terms: Vec<(S, &Morphism<S>)> =
                    idx.iter().map(|&i| elems[i].clone()).zip(hom.basis.iter()).collect();
                let f = Morphism::combination(&hom.source, &hom.target, &terms);
                if f.is_isomorphism() {
                    return Ok(Some(f));
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return Ok(None);
                    }
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_BUDGET {
        let terms: Vec<(S, &Morphism<S>)> = hom.basis.iter().map(|f| (S::sample(&mut rng), f)).collect();
        let f = Morphism::combination(&hom.source, &hom.target, &terms);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    Err(Error::Inconclusive(
        "no isomorphism found within the search budget".into(),
    ))
}
