//! The differential `d^1 : gr^0 ⊗ H_q -> gr^1 ⊗ H_(q-1)`, computed two ways:
//! from the linear parts of the boundary entries, and by lifting cycles
//! through the filtered model used for the pages.

use serde::{Deserialize, Serialize};

use super::engine::Engine;
use crate::coeffs::linalg::solve_in_span;
use crate::coeffs::{FieldElem, RowSpace};
use crate::complex::{homology_basis, EquivariantComplex, HomologyBasis};
use crate::error::{Error, Result};
use crate::groupring::{gr_dimension, GroupDescriptor};
use crate::matrix::Matrix;

/// The matrix of `d^1` out of `gr^0 ⊗ H_q` in the canonical homology bases.
/// Row `l` is the image of the `l`-th basis class; column `i * h + m`
/// is the coefficient of `x_i ⊗ [w_m]`, with `h = dim H_(q-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D1Map {
    pub q: usize,
    pub gr1_dim: usize,
    pub matrix: Matrix<FieldElem>,
}

impl D1Map {
    pub fn rank(&self) -> usize {
        crate::coeffs::rank_exact(&self.matrix).expect("single field")
    }

    pub fn report(&self) -> D1Report {
        D1Report {
            q: self.q,
            rows: self.matrix.rows(),
            cols: self.matrix.cols(),
            rank: self.rank(),
            matrix: self.matrix.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct D1Report {
    pub q: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub matrix: Vec<Vec<String>>,
}

fn check_coefficients(c: &EquivariantComplex) -> Result<()> {
    if c.ring().is_field() {
        return Ok(());
    }
    let torsion = crate::modz::integral_torsion_check(c)?;
    if torsion.all_torsion_free() {
        Ok(())
    } else {
        Err(Error::UnsupportedCoefficients("d^1 over Z needs torsion-free integral homology; reduce to a field".into()))
    }
}

fn gr1_dim(c: &EquivariantComplex) -> Result<usize> {
    gr_dimension(c.group(), c.field().descriptor(), 1)
}

/// The matrix with rows `z_l` from `basis` and columns indexed by `(i, m)`.
fn assemble(
    q: usize,
    n1: usize,
    sources: &HomologyBasis,
    targets: &HomologyBasis,
    mut coords: impl FnMut(&[FieldElem]) -> Result<Vec<Vec<FieldElem>>>,
    zero: &FieldElem,
) -> Result<D1Map> {
    let h = targets.len();
    let mut rows = Vec::new();
    for z in &sources.cycles {
        let per_var = coords(z)?;
        let mut row = vec![zero.clone(); n1 * h];
        for (i, v) in per_var.iter().enumerate() {
            for (m, x) in v.iter().enumerate() {
                row[i * h + m] = x.clone();
            }
        }
        rows.push(row);
    }
    Ok(D1Map { q, gr1_dim: n1, matrix: Matrix::from_rows(rows, n1 * h) })
}

/// `d^1` on `gr^0 ⊗ H_q` from the linear parts of `Mat(d_q)`: the class of
/// `d(1 ⊗ z)` in `J/J^2 ⊗ H_(q-1)`.
pub fn d1_closed_form(c: &EquivariantComplex, q: usize) -> Result<D1Map> {
    check_coefficients(c)?;
    let c = if c.ring().is_field() { c.clone() } else { c.change_coefficients("Q".parse()?)? };
    let f = c.field().clone();
    let n1 = gr1_dim(&c)?;
    let sources = homology_basis(&c, q);
    if q == 0 {
        return Ok(D1Map { q, gr1_dim: n1, matrix: Matrix::from_rows(vec![vec![]; sources.len()], 0) });
    }
    let targets = homology_basis(&c, q - 1);
    let m = c.boundary(q);
    let lin: Vec<Vec<Vec<FieldElem>>> =
        (0..m.rows()).map(|e| (0..m.cols()).map(|g| m[(e, g)].linear_part()).collect()).collect();
    let vars = match c.group() {
        GroupDescriptor::FreeAbelian(n) => n,
        GroupDescriptor::Cyclic { .. } => 1,
    };
    assemble(
        q,
        n1,
        &sources,
        &targets,
        |z| {
            (0..n1.min(vars))
                .map(|i| {
                    let y: Vec<FieldElem> = (0..m.cols())
                        .map(|g| z.iter().enumerate().fold(f.zero(), |acc, (e, ze)| &acc + &(ze * &lin[e][g][i])))
                        .collect();
                    targets.coordinates(&y)
                })
                .collect()
        },
        &f.zero(),
    )
}

/// `d^1` on `gr^0 ⊗ H_q` read off the filtered model: `d(1 ⊗ z)` is written
/// as `sum c x_i ⊗ w_m` modulo `F^2 + d F^1`.
pub fn d1_from_engine(engine: &Engine<'_>, q: usize) -> Result<D1Map> {
    let c = engine.complex;
    let f = engine.field().clone();
    let n1 = gr1_dim(c)?;
    let sources = homology_basis(c, q);
    if q == 0 {
        return Ok(D1Map { q, gr1_dim: n1, matrix: Matrix::from_rows(vec![vec![]; sources.len()], 0) });
    }
    let targets = homology_basis(c, q - 1);
    let a = engine.alg.dim();
    let ones = engine.alg.degree_one();
    let cells = c.dim(q - 1);
    // Project chains of degree q-1 onto gr^1 ⊗ C_(q-1): coordinate (i, cell).
    let project = |v: &[FieldElem]| -> Vec<FieldElem> {
        ones.iter().flat_map(|&b| (0..cells).map(move |g| (b, g))).map(|(b, g)| v[g * a + b].clone()).collect()
    };
    let embed = |i: usize, w: &[FieldElem]| -> Vec<FieldElem> {
        let mut out = vec![f.zero(); ones.len() * cells];
        out[i * cells..(i + 1) * cells].clone_from_slice(w);
        out
    };
    // d F^1 projected to gr^1 is gr^1 ⊗ B_(q-1).
    let boundaries: &RowSpace = targets.boundaries();
    let mut gens: Vec<Vec<FieldElem>> = Vec::new();
    for i in 0..ones.len() {
        for w in &targets.cycles {
            gens.push(embed(i, w));
        }
    }
    let named = gens.len();
    for i in 0..ones.len() {
        for b in boundaries.basis() {
            gens.push(embed(i, b));
        }
    }
    let h = targets.len();
    assemble(
        q,
        n1,
        &sources,
        &targets,
        |z| {
            let image = engine.boundary(q, &engine.lift_constant(q, z));
            let v = project(&image);
            let sol = solve_in_span(&f, &gens, &v)
                .ok_or_else(|| Error::CrossCheck(format!("d(1 ⊗ z) in degree {q} does not lie in gr^1 ⊗ cycles")))?;
            Ok((0..ones.len()).map(|i| sol[i * h..(i + 1) * h].to_vec()).collect::<Vec<_>>())
        },
        &f.zero(),
    )
    .map(|mut d| {
        debug_assert!(named == ones.len() * h);
        d.gr1_dim = ones.len();
        d
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{presentation_complex, Epimorphism, Presentation};

    #[test]
    fn torus_d1() {
        let p = Presentation::parse(&["a", "b"], &["abAB"]).unwrap();
        let nu = Epimorphism::abelianization(&p).unwrap();
        let c = presentation_complex(&p, &nu, "Q".parse().unwrap()).unwrap();
        let d = d1_closed_form(&c, 2).unwrap();
        let f = c.field();
        // d([e2]) = -x_b ⊗ [e_a] + x_a ⊗ [e_b]: columns (x_a,e_a), (x_a,e_b), (x_b,e_a), (x_b,e_b).
        let expect = vec![vec![f.zero(), f.one(), -f.one(), f.zero()]];
        assert_eq!(d.matrix.to_rows(), expect);
        let engine = Engine::new(&c, 3);
        assert_eq!(d1_from_engine(&engine, 2).unwrap(), d);
        let d1 = d1_closed_form(&c, 1).unwrap();
        assert_eq!(d1.matrix.to_rows(), vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]]);
        assert_eq!(d1_from_engine(&engine, 1).unwrap(), d1);
    }
}
