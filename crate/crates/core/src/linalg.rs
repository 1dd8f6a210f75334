//! Dense exact linear algebra over a single field level.
//!
//! Subspaces are stored as reduced row-echelon bases, so two subspaces are
//! equal exactly when their bases are bit-identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf::{Elem, Gf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrices or vectors over different fields")]
    FieldMismatch,
}

pub(crate) fn shape(msg: impl Into<String>) -> LinalgError {
    LinalgError::Shape(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Gf,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Gauss–Jordan result.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Gf, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Gf, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_data(field: &Gf, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(&e) = data.iter().find(|&&e| e >= field.size()) {
            return Err(shape(format!("entry {e} is not an element of {field:?}")));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Gf, cols: usize, rows: &[Vec<Elem>]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(shape(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend_from_slice(r);
        }
        Self::from_data(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Gf, rows: usize, cols: &[Vec<Elem>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(shape(format!("column of length {} in a {rows}-row matrix", c.len())));
            }
            for (i, &e) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = e;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>, LinalgError> {
        if v.len() != self.cols {
            return Err(shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols {
            return Err(shape("vstack of matrices with different column counts"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row-echelon form; pivots are chosen leftmost column first, then topmost row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = rref_in_place(&self.field, &mut m.data, self.rows, self.cols);
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut scratch = self.data.clone();
        rref_in_place(&self.field, &mut scratch, self.rows, self.cols).len()
    }

    /// `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let r = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (row, &pc) in r.pivots.iter().enumerate() {
                v[pc] = f.neg(r.matrix.get(row, fc));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis).expect("kernel vectors have ambient length")
    }

    /// Canonical solution of `M v = b` (free variables zero), if consistent.
    pub fn solve(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>, LinalgError> {
        if b.len() != self.rows {
            return Err(shape(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let r = aug.rref();
        if r.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut v = vec![0; self.cols];
        for (row, &pc) in r.pivots.iter().enumerate() {
            v[pc] = r.matrix.get(row, self.cols);
        }
        Ok(Some(v))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Seeded uniform sampling, rejected until invertible.
    pub fn random_invertible(field: &Gf, n: usize, seed: u64) -> Matrix {
        assert!(n >= 1, "dimension must be positive");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let data = (0..n * n).map(|_| rng.gen_range(0..field.size())).collect();
            let m = Matrix { field: field.clone(), rows: n, cols: n, data };
            if m.is_invertible() {
                return m;
            }
        }
    }
}

/// Gauss–Jordan elimination on a row-major buffer; returns the pivot columns.
pub(crate) fn rref_in_place(f: &Gf, data: &mut [Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            data[r * cols + j] = f.mul(data[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            let nf = f.neg(factor);
            for j in c..cols {
                let t = f.mul(nf, data[r * cols + j]);
                data[i * cols + j] = f.add(data[i * cols + j], t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A subspace of `field^ambient` in canonical RREF form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Gf, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &Gf, ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(field: &Gf, ambient: usize, vectors: &[Vec<Elem>]) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows(field, ambient, vectors)?;
        Ok(Self::from_matrix_rows(&m))
    }

    /// Row space of a matrix.
    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let r = m.rref();
        let mut basis = r.matrix;
        basis.data.truncate(r.rank * basis.cols);
        basis.rows = r.rank;
        Subspace { basis, pivots: r.pivots }
    }

    /// Standard basis vectors with the given indices.
    pub fn coordinate(field: &Gf, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vs: Vec<Vec<Elem>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self::span(field, ambient, &vs).expect("standard vectors")
    }

    pub fn field(&self) -> &Gf {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of elements, `q^dim`.
    pub fn cardinality(&self) -> u128 {
        (self.field().size() as u128).pow(self.dim() as u32)
    }

    /// `v` minus its projection along the pivots; zero iff `v` is a member.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (o, &b) in out.iter_mut().zip(self.basis.row(row)) {
                *o = f.add(*o, f.mul(nc, b));
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Elem]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient() {
            return Err(shape(format!("vector of length {} in ambient {}", v.len(), self.ambient())));
        }
        Ok(self.reduce(v).iter().all(|&x| x == 0))
    }

    /// Coordinates of a member with respect to the canonical basis.
    pub fn coordinates_of(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if v.len() != self.ambient() || self.reduce(v).iter().any(|&x| x != 0) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ambient() != other.ambient() {
            return Err(shape(format!("ambient {} vs {}", self.ambient(), other.ambient())));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        Ok(Self::from_matrix_rows(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection from the kernel of `[Uᵀ | -Vᵀ]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let f = self.field().clone();
        let (du, dv, n) = (self.dim(), other.dim(), self.ambient());
        let mut m = Matrix::zeros(&f, n, du + dv);
        for k in 0..n {
            for i in 0..du {
                m.set(k, i, self.basis.get(i, k));
            }
            for j in 0..dv {
                m.set(k, du + j, f.neg(other.basis.get(j, k)));
            }
        }
        let vs: Vec<Vec<Elem>> = m
            .kernel()
            .basis_vectors()
            .into_iter()
            .map(|coef| {
                let mut v = vec![0; n];
                for (i, &c) in coef[..du].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (o, &b) in v.iter_mut().zip(self.basis.row(i)) {
                        *o = f.add(*o, f.mul(c, b));
                    }
                }
                v
            })
            .collect();
        Subspace::span(&f, n, &vs)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok((0..other.dim()).all(|i| self.reduce(other.basis.row(i)).iter().all(|&x| x == 0)))
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(self == other)
    }

    /// All members in canonical order of their basis coordinates.
    pub fn elements(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let f = self.field().clone();
        let q = f.size() as u128;
        let d = self.dim();
        (0..self.cardinality()).map(move |mut idx| {
            let mut v = vec![0; self.ambient()];
            for row in 0..d {
                let c = (idx % q) as Elem;
                idx /= q;
                if c == 0 {
                    continue;
                }
                for (o, &b) in v.iter_mut().zip(self.basis.row(row)) {
                    *o = f.add(*o, f.mul(c, b));
                }
            }
            v
        })
    }
}

/// Linear combination `Σ c_i v_i`.
pub fn combine(f: &Gf, len: usize, terms: &[(Elem, &[Elem])]) -> Vec<Elem> {
    let mut out = vec![0; len];
    for &(c, v) in terms {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Gf {
        Gf::prime(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f3 = f(3);
        assert_eq!(Matrix::zeros(&f3, 3, 3).rref().rank, 0);
        assert_eq!(Matrix::identity(&f3, 4).rref().rank, 4);
        let f5 = f(5);
        let m = Matrix::from_rows(&f5, 2, &[vec![1, 2], vec![2, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f3 = f(3);
        assert_eq!(Matrix::zeros(&f3, 3, 3).kernel(), Subspace::full(&f3, 3));
        assert_eq!(Matrix::identity(&f3, 3).kernel().dim(), 0);
        let f5 = f(5);
        let k = Matrix::from_rows(&f5, 2, &[vec![1, 2]]).unwrap().kernel();
        assert_eq!(k, Subspace::span(&f5, 2, &[vec![3, 1]]).unwrap());
    }

    #[test]
    fn solve_examples() {
        let f5 = f(5);
        let id = Matrix::identity(&f5, 3);
        assert_eq!(id.solve(&[4, 0, 2]).unwrap(), Some(vec![4, 0, 2]));
        let m = Matrix::from_rows(&f5, 1, &[vec![1], vec![1]]).unwrap();
        assert_eq!(m.solve(&[0, 1]).unwrap(), None);
        let m = Matrix::from_rows(&f5, 1, &[vec![2]]).unwrap();
        assert_eq!(m.solve(&[1]).unwrap(), Some(vec![3]));
        assert!(matches!(m.solve(&[1, 2]), Err(LinalgError::Shape(_))));
    }

    #[test]
    fn subspace_examples() {
        let f3 = f(3);
        let u = Subspace::span(&f3, 2, &[vec![1, 1]]).unwrap();
        let v = Subspace::span(&f3, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(u.sum(&Subspace::zero(&f3, 2)).unwrap(), u);
        assert_eq!(u.intersect(&v).unwrap().dim(), 0);
        assert!(Subspace::full(&f3, 2).contains(&u).unwrap());
        assert!(u.contains_vector(&[2, 2]).unwrap());
        assert!(matches!(u.sum(&Subspace::zero(&f3, 3)), Err(LinalgError::Shape(_))));
    }

    #[test]
    fn random_invertible_is_deterministic() {
        let f3 = f(3);
        let a = Matrix::random_invertible(&f3, 1, 9);
        assert_ne!(a.get(0, 0), 0);
        let b = Matrix::random_invertible(&f3, 5, 42);
        assert_eq!(b.rref().rank, 5);
        assert_eq!(b, Matrix::random_invertible(&f3, 5, 42));
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv).unwrap(), Matrix::identity(&f3, 5));
    }

    #[test]
    fn subspace_elements_enumerate_members() {
        let f3 = f(3);
        let u = Subspace::span(&f3, 3, &[vec![1, 0, 2], vec![0, 1, 1]]).unwrap();
        let all: Vec<_> = u.elements().collect();
        assert_eq!(all.len(), 9);
        assert!(all.iter().all(|v| u.contains_vector(v).unwrap()));
        assert_eq!(u.coordinates_of(&[2, 1, 2]), Some(vec![2, 1]));
    }
}
