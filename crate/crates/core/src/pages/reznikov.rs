//! `G = Z/p^r` over a field of characteristic `p`: `J^(p^r) = 0`, so the
//! pages stop changing at `E^(p^r)`.

use serde::{Deserialize, Serialize};

use super::{compute_pages, d1_closed_form, PageTable, SpectralSequence};
use crate::coeffs::linalg::left_kernel;
use crate::coeffs::{rank_exact, Field, FieldElem, RowSpace};
use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};
use crate::groupring::{GroupDescriptor, GroupRingElem};
use crate::matrix::Matrix;

/// Pages of a `Z/p^r` complex in characteristic `p`, with the homology
/// computed directly over `k[t]/(t^(p^r) - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReznikovReport {
    pub p: u64,
    pub r: u32,
    pub sequence: SpectralSequence,
    pub e_infinity: PageTable,
    /// `dim_k H_q(X, kG)` from the monomial-basis complex.
    pub homology_dims: Vec<usize>,
}

fn prime_power_group(c: &EquivariantComplex) -> Result<(u64, u32, usize)> {
    let GroupDescriptor::Cyclic { m, prime_power: Some((p, r)) } = c.group() else {
        return Err(Error::WrongGroup(format!("expected Zmod:p^r, got {}", c.group())));
    };
    if c.ring().characteristic() != p {
        return Err(Error::CharacteristicMismatch(format!(
            "group Zmod:{m} needs characteristic {p}, coefficients are {}",
            c.ring()
        )));
    }
    Ok((p, r, m as usize))
}

/// Matrix of multiplication by `a` on `k[Z/m]` in the monomial basis (row
/// `i` is `t^i a`).
fn monomial_block(a: &GroupRingElem, m: usize) -> Vec<Vec<FieldElem>> {
    let v = a.cyclic_vector();
    (0..m).map(|i| (0..m).map(|j| v[(j + m - i) % m].clone()).collect()).collect()
}

/// The complex `C(X, kG)` as `k`-linear maps on the monomial basis; chain
/// coordinates are `cell * m + i` for `t^i e`.
pub(crate) fn monomial_complex(c: &EquivariantComplex, m: usize) -> Vec<Matrix<FieldElem>> {
    let f = c.field();
    let mut mats = vec![Matrix::filled(c.dim(0) * m, 0, f.zero())];
    for q in 1..=c.top_degree() {
        let b = c.boundary(q);
        let mut out = Matrix::filled(b.rows() * m, b.cols() * m, f.zero());
        for e in 0..b.rows() {
            for g in 0..b.cols() {
                if b[(e, g)].is_zero() {
                    continue;
                }
                for (i, row) in monomial_block(&b[(e, g)], m).into_iter().enumerate() {
                    for (j, x) in row.into_iter().enumerate() {
                        out[(e * m + i, g * m + j)] = x;
                    }
                }
            }
        }
        mats.push(out);
    }
    mats
}

fn direct_homology(c: &EquivariantComplex, mats: &[Matrix<FieldElem>], m: usize) -> Result<Vec<usize>> {
    let mut ranks = vec![0];
    for mat in &mats[1..] {
        ranks.push(rank_exact(mat)?);
    }
    ranks.push(0);
    Ok((0..=c.top_degree()).map(|q| c.dim(q) * m - ranks[q] - ranks[q + 1]).collect())
}

/// Pages `E^1 .. E^(p^r)` over filtration degrees `0 .. p^r - 1`, asserting
/// that the total dimension in each degree equals `dim_k H_q(X, kG)`.
pub fn reznikov_collapse(c: &EquivariantComplex) -> Result<ReznikovReport> {
    let (p, r, m) = prime_power_group(c)?;
    let sequence = compute_pages(c, m, m - 1)?;
    let e_infinity = sequence.last().clone();
    let homology_dims = direct_homology(c, &monomial_complex(c, m), m)?;
    for (q, &h) in homology_dims.iter().enumerate() {
        if e_infinity.total(q) != h {
            return Err(Error::CrossCheck(format!(
                "degree {q}: E^inf totals {} but dim H_q(X, kG) = {h}",
                e_infinity.total(q)
            )));
        }
    }
    Ok(ReznikovReport { p, r, sequence, e_infinity, homology_dims })
}

/// The check that `(t - 1)^2` kills `H_q(X, F_p Z_p)` whenever the complex
/// `(H_*(X, F_p), d^1)` is exact at `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanWitness {
    pub q: usize,
    pub betti: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub acyclic: bool,
    /// Whether `(t - 1)^2 z` is a boundary for every cycle `z`.
    pub j2_kills: bool,
}

/// Evaluates the witness in degree `q` for `G = Z/p` in characteristic `p`.
pub fn jordan_witness(c: &EquivariantComplex, q: usize) -> Result<JordanWitness> {
    let (p, r, m) = prime_power_group(c)?;
    if r != 1 {
        return Err(Error::WrongGroup(format!("expected Zmod:{p}, got Zmod:{m}")));
    }
    if q > c.top_degree() {
        return Err(Error::IndexOutOfRange { index: q, arity: c.top_degree() + 1 });
    }
    let betti = c.betti_numbers()?[q];
    let rank_out = d1_closed_form(c, q)?.rank();
    let rank_in = if q < c.top_degree() { d1_closed_form(c, q + 1)?.rank() } else { 0 };
    let acyclic = rank_in + rank_out == betti;

    let f: &Field = c.field();
    let mats = monomial_complex(c, m);
    let n = c.dim(q) * m;
    let cycles = if q == 0 { identity_rows(f, n) } else { left_kernel(f, &mats[q]) };
    let boundaries =
        if q < c.top_degree() { RowSpace::spanned_by(f, n, mats[q + 1].to_rows()) } else { RowSpace::new(f, n) };
    let g = c.group();
    let x = GroupRingElem::element_minus_one(g, f, vec![1]);
    let square = monomial_block(&(&x * &x), m);
    let j2_kills = cycles.iter().all(|z| {
        let mut w = vec![f.zero(); n];
        for cell in 0..c.dim(q) {
            for (i, row) in square.iter().enumerate() {
                let zi = &z[cell * m + i];
                if zi.is_zero() {
                    continue;
                }
                for (j, y) in row.iter().enumerate() {
                    w[cell * m + j] = &w[cell * m + j] + &(zi * y);
                }
            }
        }
        boundaries.contains(&w)
    });
    if acyclic && !j2_kills {
        return Err(Error::CrossCheck(format!(
            "d^1 is exact at degree {q} but (t - 1)^2 does not kill H_{q}(X, F_p Z_p)"
        )));
    }
    Ok(JordanWitness { q, betti, rank_out, rank_in, acyclic, j2_kills })
}

fn identity_rows(f: &Field, n: usize) -> Vec<Vec<FieldElem>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{presentation_complex, Epimorphism, Presentation};

    fn cyclic_complex(gens: &[&str], rels: &[&str], p: u64) -> EquivariantComplex {
        let pr = Presentation::parse(gens, rels).unwrap();
        let nu = Epimorphism::abelianization(&pr).unwrap();
        let c = presentation_complex(&pr, &nu, format!("Fp:{p}").parse().unwrap()).unwrap();
        let images: Vec<Vec<i64>> = (0..gens.len()).map(|_| vec![1]).collect();
        let n = gens.len();
        let c = if n == 1 { c } else { c.base_change(GroupDescriptor::FreeAbelian(1), &images).unwrap() };
        c.base_change(GroupDescriptor::cyclic(p).unwrap(), &[vec![1]]).unwrap()
    }

    #[test]
    fn circle_mod_two() {
        let c = cyclic_complex(&["x"], &[], 2);
        let rep = reznikov_collapse(&c).unwrap();
        assert_eq!(rep.homology_dims, vec![1, 1, 0]);
        assert_eq!(rep.e_infinity.dim(1, 1), 1);
        assert_eq!(rep.e_infinity.dim(0, 1), 0);
    }

    #[test]
    fn circle_mod_three() {
        let c = cyclic_complex(&["x"], &[], 3);
        let rep = reznikov_collapse(&c).unwrap();
        assert_eq!(rep.e_infinity.dim(2, 1), 1);
        assert_eq!(rep.e_infinity.total(1), 1);
        let w = jordan_witness(&c, 1).unwrap();
        assert!(w.acyclic && w.j2_kills);
    }

    #[test]
    fn torus_witness() {
        let c = cyclic_complex(&["a", "b"], &["abAB"], 3);
        for q in 0..=2 {
            let w = jordan_witness(&c, q).unwrap();
            assert!(!w.acyclic || w.j2_kills);
        }
    }

    #[test]
    fn wrong_characteristic() {
        let pr = Presentation::parse(&["x"], &[]).unwrap();
        let nu = Epimorphism::abelianization(&pr).unwrap();
        let c = presentation_complex(&pr, &nu, "Fp:2".parse().unwrap()).unwrap();
        let c = c.base_change(GroupDescriptor::cyclic(3).unwrap(), &[vec![1]]).unwrap();
        assert!(matches!(reznikov_collapse(&c), Err(Error::CharacteristicMismatch(_))));
    }
}
