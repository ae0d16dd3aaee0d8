//! Finite-dimensional models of `kG` with a basis adapted to the J-adic
//! filtration: `J^s` is spanned by the basis vectors of degree `>= s`.
//!
//! For `Z^n` the model is the truncation `kG / J^M` with basis the monomials
//! `x^alpha` (`x_i = t_i - 1`, `|alpha| < M`). For `Z/m` it is the whole group
//! ring, with a basis chosen along the chain `J^0 ⊇ J^1 ⊇ ...`; vectors in the
//! stable part `J^inf` get degree `None`.

use std::collections::HashMap;

use super::{monomials_of_degree, GroupDescriptor, GroupRingElem};
use crate::coeffs::linalg::{invert, vec_mat};
use crate::coeffs::{Field, FieldElem, RowSpace};
use crate::matrix::Matrix;

/// `J^0, J^1, ..., J^L` in `k[Z/m]` (monomial coordinates), where `L` is the
/// first index with `J^L = J^(L+1)`.
pub fn cyclic_power_chain(m: u64, field: &Field) -> Vec<RowSpace> {
    let m = m as usize;
    let all = RowSpace::spanned_by(field, m, (0..m).map(|j| unit(field, m, j)));
    let mut chain = vec![all];
    loop {
        let last = chain.last().unwrap();
        let next = RowSpace::spanned_by(field, m, last.basis().iter().map(|v| times_t_minus_one(v)));
        if next.dim() == last.dim() {
            return chain;
        }
        chain.push(next);
    }
}

fn unit(field: &Field, m: usize, j: usize) -> Vec<FieldElem> {
    let mut v = vec![field.zero(); m];
    v[j] = field.one();
    v
}

/// `(t - 1) * v` in monomial coordinates of `k[Z/m]`.
fn times_t_minus_one(v: &[FieldElem]) -> Vec<FieldElem> {
    let m = v.len();
    (0..m).map(|j| &v[(j + m - 1) % m] - &v[j]).collect()
}

#[derive(Clone, Debug)]
enum Model {
    Free { trunc: usize, monomials: Vec<Vec<usize>>, index: HashMap<Vec<usize>, usize> },
    Cyclic { m: usize, basis: Matrix<FieldElem>, inverse: Matrix<FieldElem> },
}

/// A filtered finite-dimensional model of `kG`.
#[derive(Clone, Debug)]
pub struct FilteredAlgebra {
    group: GroupDescriptor,
    field: Field,
    degrees: Vec<Option<usize>>,
    model: Model,
}

impl FilteredAlgebra {
    /// `trunc` is the truncation level `M` for `Z^n`; ignored for `Z/m`.
    pub fn new(group: GroupDescriptor, field: &Field, trunc: usize) -> Self {
        match group {
            GroupDescriptor::FreeAbelian(n) => {
                let monomials: Vec<Vec<usize>> = (0..trunc).flat_map(|s| monomials_of_degree(n, s)).collect();
                let degrees = monomials.iter().map(|a| Some(a.iter().sum())).collect();
                let index = monomials.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
                FilteredAlgebra { group, field: field.clone(), degrees, model: Model::Free { trunc, monomials, index } }
            }
            GroupDescriptor::Cyclic { m, .. } => {
                let chain = cyclic_power_chain(m, field);
                let m = m as usize;
                let mut rows: Vec<Vec<FieldElem>> = Vec::new();
                let mut degrees = Vec::new();
                let last = chain.len() - 1;
                for s in 0..last {
                    let mut span = chain[s + 1].clone();
                    // (t-1)^s t^j for j = 0..m span J^s.
                    let mut g = unit(field, m, 0);
                    for _ in 0..s {
                        g = times_t_minus_one(&g);
                    }
                    for _ in 0..m {
                        if span.insert(g.clone()) {
                            rows.push(g.clone());
                            degrees.push(Some(s));
                        }
                        g = (0..m).map(|j| g[(j + m - 1) % m].clone()).collect();
                    }
                }
                for v in chain[last].basis() {
                    rows.push(v.clone());
                    degrees.push(None);
                }
                let basis = Matrix::from_rows(rows, m);
                let inverse = invert(field, &basis).expect("adapted basis is a basis");
                FilteredAlgebra { group, field: field.clone(), degrees, model: Model::Cyclic { m, basis, inverse } }
            }
        }
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Filtration degree of basis vector `i`; `None` for the stable part.
    pub fn degree(&self, i: usize) -> Option<usize> {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[Option<usize>] {
        &self.degrees
    }

    /// Whether basis vector `i` lies in `J^s`.
    pub fn in_filtration(&self, i: usize, s: usize) -> bool {
        self.degrees[i].is_none_or(|d| d >= s)
    }

    /// Indices of basis vectors of degree exactly 1, in order. For `Z^n` these
    /// are `x_1, ..., x_n`.
    pub fn degree_one(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == Some(1)).collect()
    }

    pub fn truncation(&self) -> Option<usize> {
        match &self.model {
            Model::Free { trunc, .. } => Some(*trunc),
            Model::Cyclic { .. } => None,
        }
    }

    /// Index of the monomial `x^alpha` (free abelian models only).
    pub fn monomial_index(&self, alpha: &[usize]) -> Option<usize> {
        match &self.model {
            Model::Free { index, .. } => index.get(alpha).copied(),
            Model::Cyclic { .. } => None,
        }
    }

    /// Basis vector `i` as a group ring element.
    pub fn basis_element(&self, i: usize) -> GroupRingElem {
        match &self.model {
            Model::Free { monomials, .. } => {
                let n = self.group.nvars();
                monomials[i].iter().enumerate().fold(GroupRingElem::one(self.group, &self.field), |acc, (j, &k)| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    &acc * &GroupRingElem::element_minus_one(self.group, &self.field, e).pow(k as u32)
                })
            }
            Model::Cyclic { basis, .. } => GroupRingElem::from_terms(
                self.group,
                &self.field,
                basis.row(i).iter().enumerate().map(|(j, c)| (vec![j as i64], c.clone())),
            ),
        }
    }

    /// Human-readable name of basis vector `i`.
    pub fn label(&self, i: usize) -> String {
        match &self.model {
            Model::Free { monomials, .. } => {
                let n = self.group.nvars();
                let parts: Vec<String> = monomials[i]
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(j, &k)| {
                        let v = if n == 1 { "x".to_string() } else { format!("x{}", j + 1) };
                        if k == 1 {
                            v
                        } else {
                            format!("{v}^{k}")
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("*")
                }
            }
            Model::Cyclic { .. } => match self.degrees[i] {
                Some(0) => "1".into(),
                Some(1) => "x".into(),
                Some(s) => format!("x^{s}"),
                None => format!("j{i}"),
            },
        }
    }

    /// Coordinates of the image of `a` in the model.
    pub fn vector(&self, a: &GroupRingElem) -> Vec<FieldElem> {
        assert_eq!(a.group(), self.group);
        match &self.model {
            Model::Free { trunc, index, .. } => {
                let mut v = vec![self.field.zero(); self.dim()];
                for (alpha, c) in a.x_expansion(*trunc) {
                    v[index[&alpha]] = c;
                }
                v
            }
            Model::Cyclic { inverse, .. } => vec_mat(&self.field, &a.cyclic_vector(), inverse),
        }
    }

    /// Matrix of multiplication by `a`: row `i` holds the coordinates of
    /// `b_i * a`.
    pub fn mul_matrix(&self, a: &GroupRingElem) -> Matrix<FieldElem> {
        let zero = self.field.zero();
        match &self.model {
            Model::Free { trunc, monomials, index } => {
                let exp = a.x_expansion(*trunc);
                let mut out = Matrix::filled(self.dim(), self.dim(), zero);
                for (i, beta) in monomials.iter().enumerate() {
                    let db: usize = beta.iter().sum();
                    for (alpha, c) in &exp {
                        let da: usize = alpha.iter().sum();
                        if da + db >= *trunc {
                            continue;
                        }
                        let sum: Vec<usize> = beta.iter().zip(alpha).map(|(x, y)| x + y).collect();
                        out[(i, index[&sum])] = c.clone();
                    }
                }
                out
            }
            Model::Cyclic { m, basis, inverse } => {
                let av = a.cyclic_vector();
                let rows: Vec<Vec<FieldElem>> =
                    (0..*m).map(|j| (0..*m).map(|k| av[(k + m - j) % m].clone()).collect()).collect();
                let mono = Matrix::from_rows(rows, *m);
                basis.mul_with(&mono, &zero).mul_with(inverse, &zero)
            }
        }
    }
}
