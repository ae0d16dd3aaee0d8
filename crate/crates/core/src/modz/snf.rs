//! Smith normal form over a Euclidean domain, with transforms.

use super::euclid::{unit_inverse, EuclideanDomain};
use crate::matrix::Matrix;

/// `U * A * V = D` with `D` diagonal, each diagonal entry dividing the next
/// and in normal form; `v_inv` is the inverse of `V`.
#[derive(Clone, Debug)]
pub struct SnfResult<E> {
    pub diagonal: Vec<E>,
    pub d: Matrix<E>,
    pub u: Matrix<E>,
    pub v: Matrix<E>,
    pub v_inv: Matrix<E>,
}

impl<E> SnfResult<E> {
    /// Number of nonzero diagonal entries.
    pub fn rank<D: EuclideanDomain<Elem = E>>(&self, dom: &D) -> usize {
        self.diagonal.iter().filter(|x| !dom.is_zero(x)).count()
    }
}

pub fn mat_mul<D: EuclideanDomain>(dom: &D, a: &Matrix<D::Elem>, b: &Matrix<D::Elem>) -> Matrix<D::Elem> {
    assert_eq!(a.cols(), b.rows());
    let mut out = Matrix::filled(a.rows(), b.cols(), dom.zero());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            if dom.is_zero(&a[(i, k)]) {
                continue;
            }
            for j in 0..b.cols() {
                if !dom.is_zero(&b[(k, j)]) {
                    out[(i, j)] = dom.add(&out[(i, j)], &dom.mul(&a[(i, k)], &b[(k, j)]));
                }
            }
        }
    }
    out
}

struct State<'a, D: EuclideanDomain> {
    dom: &'a D,
    a: Matrix<D::Elem>,
    u: Matrix<D::Elem>,
    v: Matrix<D::Elem>,
    v_inv: Matrix<D::Elem>,
}

impl<D: EuclideanDomain> State<'_, D> {
    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &D::Elem) {
        for m in [&mut self.a, &mut self.u] {
            for k in 0..m.cols() {
                let x = self.dom.mul(c, &m[(j, k)]);
                m[(i, k)] = self.dom.add(&m[(i, k)], &x);
            }
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &D::Elem) {
        for m in [&mut self.a, &mut self.v] {
            for k in 0..m.rows() {
                let x = self.dom.mul(c, &m[(k, j)]);
                m[(k, i)] = self.dom.add(&m[(k, i)], &x);
            }
        }
        // V^-1 gets the inverse operation on rows: row_j -= c * row_i.
        let m = &mut self.v_inv;
        for k in 0..m.cols() {
            let x = self.dom.mul(c, &m[(i, k)]);
            m[(j, k)] = self.dom.sub(&m[(j, k)], &x);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn scale_row(&mut self, i: usize, c: &D::Elem) {
        for m in [&mut self.a, &mut self.u] {
            for k in 0..m.cols() {
                m[(i, k)] = self.dom.mul(c, &m[(i, k)]);
            }
        }
    }

    /// Smallest-norm nonzero entry in the trailing block, ties to the lowest
    /// row, then column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_norm = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if self.dom.is_zero(x) {
                    continue;
                }
                let n = self.dom.norm(x);
                if best_norm.as_ref().is_none_or(|b| n < *b) {
                    best = Some((i, j));
                    best_norm = Some(n);
                }
            }
        }
        best
    }
}

/// Smith normal form of `a` over `dom`.
pub fn smith_normal_form<D: EuclideanDomain>(dom: &D, a: &Matrix<D::Elem>) -> SnfResult<D::Elem> {
    let (rows, cols) = (a.rows(), a.cols());
    let zero = dom.zero();
    let one = dom.one();
    let mut st = State {
        dom,
        a: a.clone(),
        u: Matrix::identity(rows, &zero, &one),
        v: Matrix::identity(cols, &zero, &one),
        v_inv: Matrix::identity(cols, &zero, &one),
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        while let Some((pi, pj)) = st.pivot(t) {
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            let p = st.a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if dom.is_zero(&st.a[(i, t)]) {
                    continue;
                }
                let (q, r) = dom.div_rem(&st.a[(i, t)], &p);
                st.add_row(i, t, &dom.sub(&zero, &q));
                dirty |= !dom.is_zero(&r);
            }
            for j in t + 1..cols {
                if dom.is_zero(&st.a[(t, j)]) {
                    continue;
                }
                let (q, r) = dom.div_rem(&st.a[(t, j)], &p);
                st.add_col(j, t, &dom.sub(&zero, &q));
                dirty |= !dom.is_zero(&r);
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !dom.divides(&p, &st.a[(i, j)])));
            match bad {
                Some(i) => st.add_row(t, i, &one),
                None => break,
            }
        }
        if dom.is_zero(&st.a[(t, t)]) {
            break;
        }
        let u = dom.normalizing_unit(&st.a[(t, t)]);
        st.scale_row(t, &u);
    }
    let diagonal = (0..steps).map(|i| st.a[(i, i)].clone()).collect();
    SnfResult { diagonal, d: st.a, u: st.u, v: st.v, v_inv: st.v_inv }
}

/// Checks the Smith normal form postconditions; returns a description of
/// the first violation.
pub fn verify_snf<D: EuclideanDomain>(dom: &D, a: &Matrix<D::Elem>, res: &SnfResult<D::Elem>) -> Result<(), String> {
    let uav = mat_mul(dom, &mat_mul(dom, &res.u, a), &res.v);
    if uav != res.d {
        return Err("U*A*V differs from D".into());
    }
    for i in 0..res.d.rows() {
        for j in 0..res.d.cols() {
            if i != j && !dom.is_zero(&res.d[(i, j)]) {
                return Err(format!("off-diagonal entry at ({i}, {j})"));
            }
        }
    }
    for w in res.diagonal.windows(2) {
        if !dom.divides(&w[0], &w[1]) {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    for x in &res.diagonal {
        if !dom.is_zero(x) && dom.normalize(x) != *x {
            return Err(format!("diagonal entry {x} not normalized"));
        }
    }
    let vv = mat_mul(dom, &res.v, &res.v_inv);
    if vv != Matrix::identity(res.v.rows(), &dom.zero(), &dom.one()) {
        return Err("V*V^-1 is not the identity".into());
    }
    if !is_invertible(dom, &res.u) {
        return Err("U is not invertible".into());
    }
    Ok(())
}

/// Invertibility over the domain: the Smith form is the identity.
pub fn is_invertible<D: EuclideanDomain>(dom: &D, m: &Matrix<D::Elem>) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let s = smith_normal_form(dom, m);
    s.diagonal.iter().all(|x| dom.is_unit(x)) && s.diagonal.iter().all(|x| unit_inverse(dom, x).is_ok())
}

#[cfg(test)]
mod tests {
    use super::super::euclid::{Integers, LaurentPoly, LaurentRing};
    use super::*;
    use crate::coeffs::Field;
    use crate::groupring::GroupDescriptor;
    use num_bigint::BigInt;

    fn zmat(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), rows[0].len())
    }

    #[test]
    fn integer_examples() {
        let a = zmat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&Integers, &a);
        verify_snf(&Integers, &a, &s).unwrap();
        let d: Vec<i64> = s.diagonal.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        let z = zmat(&[&[0, 0], &[0, 0]]);
        let s = smith_normal_form(&Integers, &z);
        verify_snf(&Integers, &z, &s).unwrap();
        assert_eq!(s.rank(&Integers), 0);
    }

    #[test]
    fn laurent_examples() {
        let q = Field::rationals();
        let lam = LaurentRing::new(&q);
        let g = GroupDescriptor::FreeAbelian(1);
        let p = |s: &str| LaurentPoly::from_elem(&crate::groupring::parse(s, g, &q).unwrap());
        let a = Matrix::from_rows(vec![vec![p("t - 1")], vec![p("1 - t")]], 1);
        let s = smith_normal_form(&lam, &a);
        verify_snf(&lam, &a, &s).unwrap();
        assert_eq!(s.diagonal[0].to_string(), "t - 1");
        let diag = Matrix::from_rows(vec![vec![p("1"), p("0")], vec![p("0"), p("t - 1")]], 2);
        let s = smith_normal_form(&lam, &diag);
        let d: Vec<String> = s.diagonal.iter().map(ToString::to_string).collect();
        assert_eq!(d, vec!["1", "t - 1"]);
        let b = Matrix::from_rows(vec![vec![p("t - 1"), p("0")], vec![p("0"), p("t + 1")]], 2);
        let s = smith_normal_form(&lam, &b);
        verify_snf(&lam, &b, &s).unwrap();
        let d: Vec<String> = s.diagonal.iter().map(ToString::to_string).collect();
        assert_eq!(d, vec!["1", "t^2 - 1"]);
    }
}
