//! Dense matrices over Q(q) with exact Gaussian elimination.

use std::fmt;

use crate::cyclotomic::{Cyc, Field, FieldExt};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Cyc>,
}

pub type Vector = Vec<Cyc>;

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.d() == other.field.d()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for ExactMatrix {}

impl ExactMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        ExactMatrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        ExactMatrix::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: &Cyc) -> Self {
        let mut m = ExactMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[Cyc]) -> Self {
        let n = diag.len();
        let mut m = ExactMatrix::zeros(field, n, n);
        for (i, c) in diag.iter().enumerate() {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Cyc>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for x in row {
                if x.field().d() != field.d() {
                    return Err(Error::ContextMismatch(x.field().d(), field.d()));
                }
                data.push(x);
            }
        }
        Ok(ExactMatrix { field: field.clone(), rows: r, cols: c, data })
    }

    /// The matrix whose columns are `vecs`, each of length `rows`.
    pub fn from_columns(field: &Field, rows: usize, vecs: &[Vector]) -> Self {
        let mut m = ExactMatrix::zeros(field, rows, vecs.len());
        for (j, v) in vecs.iter().enumerate() {
            for i in 0..rows {
                m.data[i * vecs.len() + j] = v[i].clone();
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyc) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cyc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyc>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Cyc] {
        &self.data
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyc::is_zero)
    }

    /// `Some(c)` when the matrix is `c * I`.
    pub fn as_scalar(&self) -> Option<Cyc> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { self.field.zero() } else { self.get(0, 0).clone() };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let ok = if i == j { self.get(i, j) == &c } else { self.get(i, j).is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    fn same_shape(&self, other: &ExactMatrix) -> Result<()> {
        if self.field.d() != other.field.d() {
            return Err(Error::ContextMismatch(self.field.d(), other.field.d()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { data, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { data, ..self.clone_shape() })
    }

    fn clone_shape(&self) -> ExactMatrix {
        ExactMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: Vec::new() }
    }

    pub fn scale(&self, c: &Cyc) -> ExactMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        ExactMatrix { data, ..self.clone_shape() }
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &Cyc) -> ExactMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.data[i * self.cols + i] = &m.data[i * self.cols + i] - c;
        }
        m
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.field.d() != other.field.d() {
            return Err(Error::ContextMismatch(self.field.d(), other.field.d()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Square-matrix product that panics on shape mismatch; for internal use
    /// where shapes are fixed by construction.
    pub fn dot(&self, other: &ExactMatrix) -> ExactMatrix {
        self.mul(other).expect("compatible shapes")
    }

    pub fn apply(&self, v: &[Cyc]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> ExactMatrix {
        let mut acc = ExactMatrix::identity(&self.field, self.rows);
        for _ in 0..k {
            acc = acc.dot(self);
        }
        acc
    }

    pub fn commutator(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &ExactMatrix) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns; pivots are the first
    /// nonzero entry in each column.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            out.push(v);
        }
        out
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
            .finish()
    }
}

/// Rank of a family of vectors of common length `n`.
pub fn span_rank(field: &Field, n: usize, vecs: &[Vector]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    ExactMatrix::from_columns(field, n, vecs).rank()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(field: &Field, n: usize, basis: &[Vector], v: &[Cyc]) -> bool {
    if v.iter().all(Cyc::is_zero) {
        return true;
    }
    let r = span_rank(field, n, basis);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    span_rank(field, n, &ext) == r
}

/// Whether every vector of `vecs` lies in the span of `basis`.
pub fn all_in_span(field: &Field, n: usize, basis: &[Vector], vecs: &[Vector]) -> bool {
    let r = span_rank(field, n, basis);
    let mut ext = basis.to_vec();
    ext.extend(vecs.iter().cloned());
    span_rank(field, n, &ext) == r
}

/// Incrementally maintained echelon basis; `insert` reports whether the
/// vector was new.
pub struct EchelonBasis {
    field: Field,
    rows: Vec<(usize, Vector)>,
}

impl EchelonBasis {
    pub fn new(field: &Field) -> Self {
        EchelonBasis { field: field.clone(), rows: Vec::new() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, v: &[Cyc]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: &[Cyc]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        // keep earlier rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if !c.is_zero() {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = &*x - &(&c * r);
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::make_field;

    fn m(f: &Field, rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let f = make_field(5).unwrap();
        let a = m(&f, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).iter().all(Cyc::is_zero));
    }

    #[test]
    fn products_and_scalars() {
        let f = make_field(7).unwrap();
        let a = m(&f, &[&[0, 1], &[0, 0]]);
        assert!(a.dot(&a).is_zero());
        assert_eq!(ExactMatrix::scalar(&f, 3, &f.q()).as_scalar(), Some(f.q()));
        assert_eq!(a.as_scalar(), None);
        assert!(a.mul(&ExactMatrix::zeros(&f, 3, 3)).is_err());
        let b = a.shift(&f.q());
        assert_eq!(b.get(0, 0), &-f.q());
    }

    #[test]
    fn span_membership() {
        let f = make_field(8).unwrap();
        let basis = vec![vec![f.one(), f.zero(), f.q()]];
        assert!(in_span(&f, 3, &basis, &[f.q(), f.zero(), f.q_power(2)]));
        assert!(!in_span(&f, 3, &basis, &[f.zero(), f.one(), f.zero()]));
        let mut e = EchelonBasis::new(&f);
        assert!(e.insert(&basis[0]));
        assert!(!e.insert(&[f.q(), f.zero(), f.q_power(2)]));
        assert!(e.insert(&[f.zero(), f.one(), f.zero()]));
        assert_eq!(e.len(), 2);
    }
}
