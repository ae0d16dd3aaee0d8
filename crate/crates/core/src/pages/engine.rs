//! The filtered complex `C(X, kG)` realized over a finite-dimensional model
//! of `kG`, and the subspaces `Z^r_s = F^s ∩ d^-1(F^(s+r))`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::coeffs::linalg::{left_kernel, vec_mat};
use crate::coeffs::{Field, FieldElem, RowSpace};
use crate::complex::EquivariantComplex;
use crate::groupring::FilteredAlgebra;
use crate::matrix::Matrix;

/// Chains in degree `q` are vectors indexed by `cell * dim(A) + basis`,
/// where `A` is the filtered model of `kG`.
pub struct Engine<'a> {
    pub(crate) complex: &'a EquivariantComplex,
    pub(crate) alg: FilteredAlgebra,
    field: Field,
    /// `mats[q]` is the matrix of `d_q` over `k` (row convention).
    mats: Vec<Matrix<FieldElem>>,
    cache: RefCell<HashMap<(usize, i64, i64), Rc<RowSpace>>>,
}

impl<'a> Engine<'a> {
    /// `trunc` is the truncation level for free abelian groups.
    pub fn new(complex: &'a EquivariantComplex, trunc: usize) -> Self {
        let field = complex.field().clone();
        let alg = FilteredAlgebra::new(complex.group(), &field, trunc);
        let a = alg.dim();
        let mut mats = vec![Matrix::filled(complex.dim(0) * a, 0, field.zero())];
        for q in 1..=complex.top_degree() {
            let b = complex.boundary(q);
            let mut m = Matrix::filled(b.rows() * a, b.cols() * a, field.zero());
            for e in 0..b.rows() {
                for f in 0..b.cols() {
                    if b[(e, f)].is_zero() {
                        continue;
                    }
                    let block = alg.mul_matrix(&b[(e, f)]);
                    for i in 0..a {
                        for j in 0..a {
                            m[(e * a + i, f * a + j)] = block[(i, j)].clone();
                        }
                    }
                }
            }
            mats.push(m);
        }
        Engine { complex, alg, field, mats, cache: RefCell::new(HashMap::new()) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Dimension of the chain space in degree `q`.
    pub fn chain_dim(&self, q: usize) -> usize {
        self.complex.dim(q) * self.alg.dim()
    }

    /// Filtration degree of coordinate `i` (`None` = infinite).
    pub fn coord_degree(&self, i: usize) -> Option<usize> {
        self.alg.degree(i % self.alg.dim())
    }

    fn in_filtration(&self, i: usize, s: i64) -> bool {
        s <= 0 || self.coord_degree(i).is_none_or(|d| d as i64 >= s)
    }

    /// The matrix of `d_q` over `k`; `None` when `q` is out of range.
    pub fn matrix(&self, q: usize) -> Option<&Matrix<FieldElem>> {
        if q >= 1 && q <= self.complex.top_degree() {
            Some(&self.mats[q])
        } else {
            None
        }
    }

    /// `d(v)` for a chain `v` in degree `q`.
    pub fn boundary(&self, q: usize, v: &[FieldElem]) -> Vec<FieldElem> {
        match self.matrix(q) {
            Some(m) => vec_mat(&self.field, v, m),
            None => vec![self.field.zero(); self.chain_dim(q.saturating_sub(1))],
        }
    }

    /// `Z^r_s` in degree `q`.
    pub fn z(&self, q: usize, s: i64, r: i64) -> Rc<RowSpace> {
        let key = (q, s, r);
        if let Some(z) = self.cache.borrow().get(&key) {
            return z.clone();
        }
        let n = self.chain_dim(q);
        let rows: Vec<usize> = (0..n).filter(|&i| self.in_filtration(i, s)).collect();
        let level = s + r;
        let z = match self.matrix(q) {
            Some(m) if level > 0 => {
                let cols: Vec<usize> =
                    (0..m.cols()).filter(|&j| self.coord_degree(j).is_some_and(|d| (d as i64) < level)).collect();
                let sub = m.select(&rows, &cols);
                let kernel = left_kernel(&self.field, &sub);
                RowSpace::spanned_by(&self.field, n, kernel.into_iter().map(|k| self.embed(&rows, &k, n)))
            }
            _ => RowSpace::spanned_by(&self.field, n, rows.iter().map(|&i| self.unit(i, n))),
        };
        let z = Rc::new(z);
        self.cache.borrow_mut().insert(key, z.clone());
        z
    }

    fn unit(&self, i: usize, n: usize) -> Vec<FieldElem> {
        let mut v = vec![self.field.zero(); n];
        v[i] = self.field.one();
        v
    }

    fn embed(&self, rows: &[usize], k: &[FieldElem], n: usize) -> Vec<FieldElem> {
        let mut v = vec![self.field.zero(); n];
        for (&i, x) in rows.iter().zip(k) {
            v[i] = x.clone();
        }
        v
    }

    /// `d(Z^r_s)` in degree `q - 1`, for `Z^r_s` in degree `q`.
    pub fn dz(&self, q: usize, s: i64, r: i64) -> RowSpace {
        if q == 0 {
            return RowSpace::new(&self.field, 0);
        }
        let n = self.chain_dim(q - 1);
        if self.matrix(q).is_none() {
            return RowSpace::new(&self.field, n);
        }
        let z = self.z(q, s, r);
        RowSpace::spanned_by(&self.field, n, z.basis().iter().map(|v| self.boundary(q, v)))
    }

    /// The denominator `Z^(r-1)_(s+1) + d Z^(r-1)_(s-r+1)` of `E^r_s`.
    pub fn denominator(&self, q: usize, s: i64, r: i64) -> RowSpace {
        let below = self.z(q, s + 1, r - 1);
        if q < self.complex.top_degree() {
            below.sum(&self.dz(q + 1, s - r + 1, r - 1))
        } else {
            (*below).clone()
        }
    }

    /// `dim E^r_s` in degree `q`.
    pub fn dim_e(&self, r: i64, s: i64, q: usize) -> usize {
        if s < 0 {
            return 0;
        }
        self.z(q, s, r).dim() - self.denominator(q, s, r).dim()
    }

    /// Rank of `d^r` leaving `E^r_s` in degree `q`.
    pub fn rank_out(&self, r: i64, s: i64, q: usize) -> usize {
        if s < 0 {
            return 0;
        }
        let kernel = self.z(q, s, r + 1).sum(&self.z(q, s + 1, r - 1));
        self.z(q, s, r).dim() - kernel.dim()
    }

    /// Chains `1 ⊗ e` for a chain `e` of `C(X, k)` (cell coordinates).
    pub fn lift_constant(&self, q: usize, cells: &[FieldElem]) -> Vec<FieldElem> {
        let a = self.alg.dim();
        let mut v = vec![self.field.zero(); self.chain_dim(q)];
        let unit = (0..a).find(|&i| self.alg.degree(i) == Some(0)).expect("model contains 1");
        for (e, c) in cells.iter().enumerate() {
            v[e * a + unit] = c.clone();
        }
        v
    }
}
