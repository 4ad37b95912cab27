//! Dense exact linear algebra: matrices, reduced echelon forms and
//! canonical subspaces.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone)]
pub struct Echelon<S> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from its rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c.clone()).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diagonal(blocks: &[Matrix<S>]) -> Self {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Echelon<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inverse().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = m[(r, j)].clone();
                    if !v.is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        S::rank(self)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let ech = aug.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (i, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.matrix[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let ech = self.hstack(&Self::identity(n)).rref();
        if n > 0 && ech.pivots.get(n - 1).is_none_or(|&p| p >= n) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| ech.matrix[(i, n + j)].clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += c * x`
pub fn axpy<S: Scalar>(y: &mut [S], c: &S, x: &[S]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.clone() + c.clone() * xi.clone();
        }
    }
}

pub fn linear_combination<S: Scalar>(len: usize, terms: &[(S, &[S])]) -> Vec<S> {
    let mut out = vec![S::zero(); len];
    for (c, v) in terms {
        axpy(&mut out, c, v);
    }
    out
}

pub fn unit_vector<S: Scalar>(len: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); len];
    v[i] = S::one();
    v
}

/// A subspace of `S^n`, stored as the nonzero rows of a reduced row echelon
/// form. Equal subspaces have identical stored bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = Vec<S>>>(ambient: usize, vectors: I) -> Self {
        let rows: Vec<Vec<S>> = vectors.into_iter().collect();
        for r in &rows {
            assert_eq!(r.len(), ambient, "vector length does not match ambient dimension");
        }
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(rows).expect("rows checked");
        Self::from_echelon(ambient, m.rref())
    }

    fn from_echelon(ambient: usize, ech: Echelon<S>) -> Self {
        let basis = (0..ech.pivots.len()).map(|i| ech.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots: ech.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo this subspace: zero in every pivot column.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if !c.is_zero() {
                axpy(&mut out, &-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[S]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        Self::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        // Solve a·A = b·B; the intersection is spanned by a·A.
        let (da, db) = (self.dim(), other.dim());
        let m = Matrix::from_fn(self.ambient, da + db, |i, j| {
            if j < da {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - da][i].clone()
            }
        });
        let kernel = kernel_basis(&m);
        let vectors = kernel.basis.iter().map(|k| {
            let terms: Vec<(S, &[S])> = (0..da).map(|j| (k[j].clone(), self.basis[j].as_slice())).collect();
            linear_combination(self.ambient, &terms)
        });
        Self::span(self.ambient, vectors.collect::<Vec<_>>())
    }

    /// Adds `v` to the subspace; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<S>) -> bool {
        if self.contains(&v) {
            return false;
        }
        *self = Self::span(self.ambient, self.basis.iter().cloned().chain(std::iter::once(v)));
        true
    }
}

impl<S: fmt::Debug> fmt::Debug for Subspace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(ambient={}, basis=[", self.ambient)?;
        for (k, b) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x:?}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "])")
    }
}

/// Null space of `m`.
pub fn kernel_basis<S: Scalar>(m: &Matrix<S>) -> Subspace<S> {
    let n = m.cols();
    let ech = m.rref();
    let mut vectors = Vec::new();
    let mut pivot_iter = ech.pivots.iter().peekable();
    for free in 0..n {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut v = vec![S::zero(); n];
        v[free] = S::one();
        for (row, &p) in ech.pivots.iter().enumerate() {
            v[p] = -ech.matrix[(row, free)].clone();
        }
        vectors.push(v);
    }
    Subspace::span(n, vectors)
}

/// Columns extending a basis of `small` to a basis of `big`, drawn greedily
/// from the echelon basis of `big`.
pub fn quotient_basis<S: Scalar>(big: &Subspace<S>, small: &Subspace<S>) -> Result<Vec<Vec<S>>> {
    if big.ambient_dim() != small.ambient_dim() || !big.contains_subspace(small) {
        return Err(Error::ContainmentViolation);
    }
    let mut acc = small.clone();
    let mut out = Vec::new();
    for b in big.basis() {
        if out.len() + small.dim() == big.dim() {
            break;
        }
        if acc.insert(b.clone()) {
            out.push(b.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel_basis(&Matrix::<Rational>::identity(3));
        assert_eq!(k.dim(), 0);
        assert_eq!(k.ambient_dim(), 3);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = kernel_basis(&Matrix::<Rational>::zeros(2, 3));
        assert_eq!(k, Subspace::full(3));
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        // Hand row reduction: [[1,2],[2,4]] -> [[1,2],[0,0]], x = -2y.
        let k = kernel_basis(&qm(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k, Subspace::span(2, vec![vec![q(-2), q(1)]]));
    }

    #[test]
    fn quotient_of_equal_subspaces_is_empty() {
        let s = Subspace::span(2, vec![vec![q(1), q(1)]]);
        assert!(quotient_basis(&s, &s).unwrap().is_empty());
    }

    #[test]
    fn quotient_of_full_by_zero() {
        let out = quotient_basis(&Subspace::<Rational>::full(2), &Subspace::zero(2)).unwrap();
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn quotient_column_lies_outside_small() {
        let big = Subspace::span(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let small = Subspace::span(3, vec![vec![q(1), q(1), q(0)]]);
        let cols = quotient_basis(&big, &small).unwrap();
        assert_eq!(cols.len(), 1);
        // Rank check: small + column has dimension 2 and stays inside big.
        let joined = small.sum(&Subspace::span(3, cols.clone()));
        assert_eq!(joined, big);
        assert!(!small.contains(&cols[0]));
    }

    #[test]
    fn quotient_rejects_non_containment() {
        let big = Subspace::span(2, vec![vec![q(1), q(0)]]);
        let small = Subspace::span(2, vec![vec![q(0), q(1)]]);
        assert!(matches!(quotient_basis(&big, &small), Err(Error::ContainmentViolation)));
    }

    #[test]
    fn solve_and_inverse() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let x = m.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(qm(&[&[1, 2], &[2, 4]]).solve(&[q(1), q(0)]).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::span(3, vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert_eq!(a.intersection(&b), Subspace::span(3, vec![vec![q(0), q(1), q(0)]]));
    }

    type F5 = Fp<5>;

    fn gf5_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<F5>> {
        proptest::collection::vec(0u64..5, rows * cols)
            .prop_map(move |d| Matrix::from_vec(rows, cols, d.into_iter().map(F5::new).collect()).unwrap())
    }

    fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), rows * cols).prop_map(move |d| {
            Matrix::from_vec(rows, cols, d.into_iter().map(|(n, den)| q(n) / q(den)).collect()).unwrap()
        })
    }

    fn vectors(n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..=k)
            .prop_map(|vs| vs.into_iter().map(|v| v.into_iter().map(q).collect()).collect())
    }

    proptest! {
        #[test]
        fn rank_nullity_gf5(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| gf5_matrix(r, c))) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.dim() + m.rank(), m.cols());
            for v in k.basis() {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
        }

        #[test]
        fn rank_nullity_rational(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| rational_matrix(r, c))) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.dim() + m.rank(), m.cols());
            prop_assert_eq!(m.rank(), m.rref().pivots.len());
        }

        #[test]
        fn subspace_sums_are_canonical(a in vectors(4, 3), b in vectors(4, 3), c in vectors(4, 3)) {
            let (a, b, c) = (Subspace::span(4, a), Subspace::span(4, b), Subspace::span(4, c));
            prop_assert_eq!(a.sum(&b).sum(&c), a.sum(&b.sum(&c)));
            prop_assert_eq!(a.sum(&b), b.sum(&a));
            prop_assert_eq!(a.sum(&a), a.clone());
            prop_assert_eq!(a.intersection(&b), b.intersection(&a));
            prop_assert_eq!(a.intersection(&a), a.clone());
            let i = a.intersection(&b);
            prop_assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
            prop_assert_eq!(a.dim() + b.dim(), a.sum(&b).dim() + i.dim());
        }
    }
}
