//! Exact linear algebra over the coefficient fields.
//!
//! Pivoting is deterministic everywhere: columns are scanned left to right
//! and the first row (top-down) with a nonzero entry is used.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, FieldElem};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// The common field of all entries, or an error if entries disagree.
/// Returns `None` for matrices without entries.
pub fn common_field(m: &Matrix<FieldElem>) -> Result<Option<Field>> {
    let mut it = m.iter();
    let Some(first) = it.next() else { return Ok(None) };
    let d = first.descriptor();
    for e in it {
        if e.descriptor() != d {
            return Err(Error::DescriptorMismatch(d.to_string(), e.descriptor().to_string()));
        }
    }
    Ok(Some(first.field()))
}

/// Rank of a matrix over its coefficient field.
pub fn rank_exact(m: &Matrix<FieldElem>) -> Result<usize> {
    let Some(field) = common_field(m)? else { return Ok(0) };
    match field {
        Field::Rationals => Ok(bareiss_rank(m)),
        _ => Ok(rref(&field, m.to_rows(), m.cols()).1.len()),
    }
}

/// Fraction-free elimination over Q, after clearing row denominators.
fn bareiss_rank(m: &Matrix<FieldElem>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row: Vec<_> = m.row(i).iter().map(|e| e.as_rational().unwrap()).collect();
            let lcm = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            row.iter().map(|q| (q * lcm.clone()).to_integer()).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(_field: &Field, mut rows: Vec<Vec<FieldElem>>, ncols: usize) -> (Vec<Vec<FieldElem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : m x = 0}`, one vector per free column in increasing order.
pub fn right_kernel(field: &Field, m: &Matrix<FieldElem>) -> Vec<Vec<FieldElem>> {
    let n = m.cols();
    let (rows, pivots) = rref(field, m.to_rows(), n);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Basis of `{x : x m = 0}` (row vectors).
pub fn left_kernel(field: &Field, m: &Matrix<FieldElem>) -> Vec<Vec<FieldElem>> {
    right_kernel(field, &m.transpose())
}

/// Row vector times matrix.
pub fn vec_mat(field: &Field, v: &[FieldElem], m: &Matrix<FieldElem>) -> Vec<FieldElem> {
    assert_eq!(v.len(), m.rows());
    let mut out = vec![field.zero(); m.cols()];
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(m.row(i)) {
            if !y.is_zero() {
                *o = &*o + &(x * y);
            }
        }
    }
    out
}

/// Coefficients `c` with `sum c_i gens_i = v`, if `v` lies in the span.
/// When the generators are independent the answer is unique.
pub fn solve_in_span(field: &Field, gens: &[Vec<FieldElem>], v: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let k = gens.len();
    let n = v.len();
    // Columns are the generators, augmented by v.
    let rows: Vec<Vec<FieldElem>> = (0..n)
        .map(|i| {
            let mut row: Vec<FieldElem> = gens.iter().map(|g| g[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let (red, pivots) = rref(field, rows, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut c = vec![field.zero(); k];
    for (row, &p) in red.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(field: &Field, m: &Matrix<FieldElem>) -> Option<Matrix<FieldElem>> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let rows: Vec<Vec<FieldElem>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            row
        })
        .collect();
    let (red, pivots) = rref(field, rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_rows(red.into_iter().map(|r| r[n..].to_vec()).collect(), n))
}

/// A subspace of `k^n`, kept as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: &Field, ncols: usize) -> Self {
        RowSpace { field: field.clone(), ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by<I: IntoIterator<Item = Vec<FieldElem>>>(field: &Field, ncols: usize, vecs: I) -> Self {
        let mut s = Self::new(field, ncols);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ncols
    }

    pub fn basis(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    /// Remainder of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v).iter().all(FieldElem::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<FieldElem>) -> bool {
        assert_eq!(v.len(), self.ncols);
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().unwrap();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::FieldDescriptor;

    fn mat(field: &Field, rows: &[&[i64]]) -> Matrix<FieldElem> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(), cols)
    }

    #[test]
    fn identity_rank() {
        for d in [FieldDescriptor::Rationals, FieldDescriptor::PrimeField(3), FieldDescriptor::Cyclotomic(5)] {
            let f = Field::new(d).unwrap();
            let id = Matrix::identity(4, &f.zero(), &f.one());
            assert_eq!(rank_exact(&id).unwrap(), 4);
        }
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let q = Field::rationals();
        let f2 = Field::prime(2).unwrap();
        let rows: &[&[i64]] = &[&[1, 1], &[1, -1]];
        assert_eq!(rank_exact(&mat(&q, rows)).unwrap(), 2);
        assert_eq!(rank_exact(&mat(&f2, rows)).unwrap(), 1);
    }

    #[test]
    fn zeta_minus_one_column() {
        for d in 2..8u32 {
            let f = Field::cyclotomic(d).unwrap();
            let z1 = &f.zeta().unwrap() - &f.one();
            let m = Matrix::from_rows(vec![vec![z1.clone()], vec![z1]], 1);
            assert_eq!(rank_exact(&m).unwrap(), 1);
        }
    }

    #[test]
    fn mixed_descriptors_rejected() {
        let q = Field::rationals();
        let f3 = Field::prime(3).unwrap();
        let m = Matrix::from_rows(vec![vec![q.one(), f3.one()]], 2);
        assert!(matches!(rank_exact(&m), Err(Error::DescriptorMismatch(_, _))));
    }

    #[test]
    fn kernels_and_spans() {
        let q = Field::rationals();
        let m = mat(&q, &[&[1, 2, 3], &[2, 4, 6]]);
        let k = right_kernel(&q, &m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let img = vec_mat(&q, v, &m.transpose());
            assert!(img.iter().all(FieldElem::is_zero));
        }
        let lk = left_kernel(&q, &m);
        assert_eq!(lk.len(), 1);
        let s = RowSpace::spanned_by(&q, 3, m.to_rows());
        assert_eq!(s.dim(), 1);
        let target: Vec<_> = [3, 6, 9].iter().map(|&x| q.from_i64(x)).collect();
        assert!(s.contains(&target));
        let c = solve_in_span(&q, &[m.row(0).to_vec()], &target).unwrap();
        assert_eq!(c, vec![q.from_i64(3)]);
    }

    #[test]
    fn inverse() {
        let q = Field::rationals();
        let m = mat(&q, &[&[2, 1], &[1, 1]]);
        let inv = invert(&q, &m).unwrap();
        assert_eq!(m.mul_with(&inv, &q.zero()), Matrix::identity(2, &q.zero(), &q.one()));
        assert!(invert(&q, &mat(&q, &[&[1, 2], &[2, 4]])).is_none());
    }
}
