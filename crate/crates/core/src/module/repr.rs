use std::sync::Arc;

use super::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Subspace};
use crate::quiver::QPath;
use crate::scalar::Scalar;

/// A representation of a bound quiver: one space per vertex and one matrix
/// per arrow. The matrix of `a: u -> v` has shape `dims[v] x dims[u]`.
#[derive(Clone, Debug)]
pub struct Representation<S> {
    algebra: Arc<Algebra<S>>,
    dims: Vec<usize>,
    maps: Vec<Matrix<S>>,
}

impl<S: Scalar> Representation<S> {
    /// Checks matrix shapes and every relation of the algebra.
    pub fn new(algebra: Arc<Algebra<S>>, dims: Vec<usize>, maps: Vec<Matrix<S>>, name: &str) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrow_count() {
            return Err(Error::Shape(format!("{name}: wrong number of spaces or maps")));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Shape(format!(
                    "{name}: map {} is {}x{}, expected {}x{}",
                    a.id,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        let rep = Representation { algebra, dims, maps };
        for (k, rel) in rep.algebra.relations().iter().enumerate() {
            let (_, first) = &rel.terms[0];
            let end = first.end(rep.algebra.quiver());
            let mut sum = Matrix::zeros(rep.dims[end], rep.dims[first.start]);
            for (c, p) in &rel.terms {
                sum = sum.add(&rep.path_matrix(p).scale(c));
            }
            if !sum.is_zero() {
                return Err(Error::RelationViolated {
                    module: name.to_string(),
                    relation: k,
                });
            }
        }
        Ok(rep)
    }

    pub fn algebra(&self) -> &Arc<Algebra<S>> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, arrow: usize) -> &Matrix<S> {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix<S>] {
        &self.maps
    }

    /// The action of a path, first arrow applied first.
    pub fn path_matrix(&self, p: &QPath) -> Matrix<S> {
        let mut m = Matrix::identity(self.dims[p.start]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.same_quiver(&other.algebra)
    }

    /// `M_1 ⊕ ... ⊕ M_r` with block-diagonal maps.
    pub fn direct_sum(parts: &[&Representation<S>]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::Precondition("empty direct sum needs an algebra".into()));
        };
        if parts.iter().any(|p| !p.same_algebra(first)) {
            return Err(Error::AlgebraMismatch);
        }
        let n = first.dims.len();
        let dims = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..first.maps.len())
            .map(|a| Matrix::block_diagonal(&parts.iter().map(|p| p.maps[a].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(Representation {
            algebra: first.algebra.clone(),
            dims,
            maps,
        })
    }

    /// The zero representation.
    pub fn zero(algebra: Arc<Algebra<S>>) -> Self {
        let q = algebra.quiver();
        let dims = vec![0; q.vertex_count()];
        let maps = vec![Matrix::zeros(0, 0); q.arrow_count()];
        Representation { algebra, dims, maps }
    }
}

/// A morphism of representations, one block per vertex. Block `v` has shape
/// `target.dims[v] x source.dims[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism<S> {
    pub blocks: Vec<Matrix<S>>,
}

impl<S: Scalar> Morphism<S> {
    pub fn zero(source: &[usize], target: &[usize]) -> Self {
        Morphism {
            blocks: source.iter().zip(target).map(|(&s, &t)| Matrix::zeros(t, s)).collect(),
        }
    }

    pub fn identity(dims: &[usize]) -> Self {
        Morphism {
            blocks: dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    /// Checks shapes and the intertwining condition.
    pub fn new(source: &Representation<S>, target: &Representation<S>, blocks: Vec<Matrix<S>>) -> Result<Self> {
        if !source.same_algebra(target) {
            return Err(Error::AlgebraMismatch);
        }
        let f = Morphism { blocks };
        f.check(source, target)?;
        Ok(f)
    }

    pub fn check(&self, source: &Representation<S>, target: &Representation<S>) -> Result<()> {
        let q = source.algebra().quiver();
        if self.blocks.len() != q.vertex_count() {
            return Err(Error::Shape("wrong number of blocks".into()));
        }
        for (v, b) in self.blocks.iter().enumerate() {
            if b.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::Shape(format!(
                    "block at {} is {}x{}, expected {}x{}",
                    q.vertex_id(v),
                    b.rows(),
                    b.cols(),
                    target.dims[v],
                    source.dims[v]
                )));
            }
        }
        for (k, a) in q.arrows().iter().enumerate() {
            let lhs = target.map(k).mul(&self.blocks[a.source]);
            let rhs = self.blocks[a.target].mul(source.map(k));
            if lhs != rhs {
                return Err(Error::NotIntertwining(format!(
                    "square at arrow {} does not commute",
                    a.id
                )));
            }
        }
        Ok(())
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Self) -> Self {
        Morphism {
            blocks: self.blocks.iter().zip(&first.blocks).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Morphism {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Morphism {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Morphism {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::cols).collect()
    }

    pub fn target_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    /// All blocks square and invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    /// Concatenation of the blocks in row-major order.
    pub fn flatten(&self) -> Vec<S> {
        self.blocks.iter().flat_map(|b| b.data().iter().cloned()).collect()
    }

    pub fn unflatten(source: &[usize], target: &[usize], flat: &[S]) -> Self {
        let mut off = 0;
        let blocks = source
            .iter()
            .zip(target)
            .map(|(&s, &t)| {
                let b = Matrix::from_vec(t, s, flat[off..off + s * t].to_vec()).expect("flat length");
                off += s * t;
                b
            })
            .collect();
        Morphism { blocks }
    }

    /// Linear combination `Σ c_i f_i`; all terms share a shape.
    pub fn combination(source: &[usize], target: &[usize], terms: &[(S, &Morphism<S>)]) -> Self {
        let mut acc = Self::zero(source, target);
        for (c, f) in terms {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }

    /// Components `M_j -> N` of a morphism out of a direct sum whose summands
    /// have the given dimension vectors.
    pub fn split_columns(&self, parts: &[Vec<usize>]) -> Vec<Self> {
        let mut offs = vec![0; self.blocks.len()];
        parts
            .iter()
            .map(|d| {
                let blocks = self
                    .blocks
                    .iter()
                    .enumerate()
                    .map(|(v, b)| {
                        let out = Matrix::from_fn(b.rows(), d[v], |i, j| b[(i, offs[v] + j)].clone());
                        offs[v] += d[v];
                        out
                    })
                    .collect();
                Morphism { blocks }
            })
            .collect()
    }

    /// `[f_1 ... f_r]: M_1 ⊕ ... ⊕ M_r -> N`.
    pub fn row(parts: &[&Morphism<S>]) -> Self {
        let n = parts[0].blocks.len();
        let blocks = (0..n)
            .map(|v| {
                parts[1..]
                    .iter()
                    .fold(parts[0].blocks[v].clone(), |acc, p| acc.hstack(&p.blocks[v]))
            })
            .collect();
        Morphism { blocks }
    }

    /// `(f_1, ..., f_r)^T: M -> N_1 ⊕ ... ⊕ N_r`.
    pub fn column(parts: &[&Morphism<S>]) -> Self {
        let n = parts[0].blocks.len();
        let blocks = (0..n)
            .map(|v| {
                parts[1..]
                    .iter()
                    .fold(parts[0].blocks[v].clone(), |acc, p| acc.vstack(&p.blocks[v]))
            })
            .collect();
        Morphism { blocks }
    }

    /// Whether every block is injective.
    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }
}

/// The kernel of `f: M -> N` as a representation, with its inclusion.
pub fn kernel<S: Scalar>(f: &Morphism<S>, source: &Representation<S>) -> (Representation<S>, Morphism<S>) {
    let q = source.algebra().quiver();
    let kernels: Vec<Subspace<S>> = f.blocks.iter().map(kernel_basis).collect();
    let dims: Vec<usize> = kernels.iter().map(Subspace::dim).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let (ku, kv) = (&kernels[a.source], &kernels[a.target]);
            let cols: Vec<Vec<S>> = ku
                .basis()
                .iter()
                .map(|b| {
                    kv.coordinates(&source.map(k).mul_vec(b))
                        .expect("kernel is a subrepresentation")
                })
                .collect();
            Matrix::from_columns(kv.dim(), &cols)
        })
        .collect();
    let inclusion = Morphism {
        blocks: kernels
            .iter()
            .zip(source.dims())
            .map(|(k, &d)| Matrix::from_columns(d, k.basis()))
            .collect(),
    };
    let rep = Representation {
        algebra: source.algebra().clone(),
        dims,
        maps,
    };
    (rep, inclusion)
}

/// The cokernel of `f: M -> N` as a representation, with its projection.
pub fn cokernel<S: Scalar>(f: &Morphism<S>, target: &Representation<S>) -> (Representation<S>, Morphism<S>) {
    let q = target.algebra().quiver();
    // rows of P_v span the annihilator of the image of f_v
    let proj: Vec<Matrix<S>> = f
        .blocks
        .iter()
        .zip(target.dims())
        .map(|(b, &d)| {
            let left = kernel_basis(&b.transpose());
            if left.dim() == 0 {
                Matrix::zeros(0, d)
            } else {
                Matrix::from_rows(left.basis().to_vec()).expect("uniform rows")
            }
        })
        .collect();
    let sections: Vec<Matrix<S>> = proj
        .iter()
        .map(|p| {
            let cols: Vec<Vec<S>> = (0..p.rows())
                .map(|i| {
                    let mut e = vec![S::zero(); p.rows()];
                    e[i] = S::one();
                    p.solve(&e).expect("projection has full row rank")
                })
                .collect();
            Matrix::from_columns(p.cols(), &cols)
        })
        .collect();
    let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| proj[a.target].mul(target.map(k)).mul(&sections[a.source]))
        .collect();
    let rep = Representation {
        algebra: target.algebra().clone(),
        dims,
        maps,
    };
    (rep, Morphism { blocks: proj })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Relation;
    use crate::quiver::linear_quiver;
    use crate::scalar::Rational;
    use num_traits::One;

    type Q = Rational;

    fn one() -> Matrix<Q> {
        Matrix::identity(1)
    }

    fn a3() -> Arc<Algebra<Q>> {
        Arc::new(Algebra::new(linear_quiver(3), vec![]).unwrap())
    }

    #[test]
    fn shapes_are_checked() {
        let alg = a3();
        let bad = Representation::new(
            alg.clone(),
            vec![1, 1, 0],
            vec![Matrix::zeros(1, 2), Matrix::zeros(0, 1)],
            "M",
        );
        assert!(matches!(bad, Err(Error::Shape(_))));
    }

    #[test]
    fn relations_are_checked() {
        let q = linear_quiver(3);
        let rel = Relation {
            terms: vec![(Q::one(), q.path(None, &["a1", "a2"]).unwrap())],
        };
        let alg = Arc::new(Algebra::new(q, vec![rel]).unwrap());
        let err = Representation::new(alg.clone(), vec![1, 1, 1], vec![one(), one()], "P1").unwrap_err();
        assert!(matches!(err, Error::RelationViolated { relation: 0, .. }));
        assert!(Representation::new(alg, vec![1, 1, 1], vec![one(), Matrix::zeros(1, 1)], "M").is_ok());
    }

    #[test]
    fn kernel_and_cokernel_of_projection() {
        let alg = a3();
        // 1 -> 2 -> 3 with everything one-dimensional, onto its top at 1
        let m = Representation::new(alg.clone(), vec![1, 1, 1], vec![one(), one()], "M").unwrap();
        let s = Representation::new(
            alg.clone(),
            vec![1, 0, 0],
            vec![Matrix::zeros(0, 1), Matrix::zeros(0, 0)],
            "S",
        )
        .unwrap();
        let f = Morphism::new(&m, &s, vec![one(), Matrix::zeros(0, 1), Matrix::zeros(0, 1)]).unwrap();
        let (k, inc) = kernel(&f, &m);
        assert_eq!(k.dims(), &[0, 1, 1]);
        assert!(f.after(&inc).is_zero());
        inc.check(&k, &m).unwrap();
        let (c, proj) = cokernel(&f, &s);
        assert_eq!(c.total_dim(), 0);
        proj.check(&s, &c).unwrap();
        let (c, proj) = cokernel(&inc, &m);
        assert_eq!(c.dims(), &[1, 0, 0]);
        proj.check(&m, &c).unwrap();
    }

    #[test]
    fn non_intertwining_blocks_are_rejected() {
        let alg = a3();
        let m = Representation::new(alg.clone(), vec![1, 1, 1], vec![one(), one()], "M").unwrap();
        let blocks = vec![one(), Matrix::zeros(1, 1), one()];
        assert!(matches!(Morphism::new(&m, &m, blocks), Err(Error::NotIntertwining(_))));
    }
}
