//! Equivariant cellular chain complexes over `kG`.
//!
//! Boundary matrices use the row convention: `Mat(d_q)` has `dims[q]` rows
//! and `dims[q-1]` columns, row `e` holding the image of the cell `e`. A
//! chain is a row vector and `d(x) = x * Mat(d_q)`, so `Mat(d_(q+1)) *
//! Mat(d_q) = 0`.

pub mod fox;
pub mod homology;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use fox::{check_surjective, fox_derivative, Epimorphism, FreeWord, Letter, Presentation};
pub use homology::{homology_basis, HomologyBasis};

use crate::coeffs::{CoeffRing, Field, FieldElem, RowSpace};
use crate::error::{Error, Result};
use crate::groupring::{GroupDescriptor, GroupRingElem};
use crate::matrix::Matrix;

/// How a complex was specified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Presentation,
    Matrices,
    Hybrid,
}

/// A finite free chain complex over `kG` with a single 0-cell.
#[derive(Clone, Debug)]
pub struct EquivariantComplex {
    ring: CoeffRing,
    field: Field,
    group: GroupDescriptor,
    dims: Vec<usize>,
    boundaries: Vec<Matrix<GroupRingElem>>,
    provenance: Provenance,
    shadow: Option<Vec<Matrix<BigInt>>>,
    presentation: Option<(Presentation, Epimorphism)>,
}

impl EquivariantComplex {
    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    /// The field in which coefficients are stored (`Q` for the integers).
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Highest degree carrying cells.
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Cells in degree `q` (0 outside the complex).
    pub fn dim(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    /// `Mat(d_q)` for `1 <= q <= top_degree`.
    pub fn boundary(&self, q: usize) -> &Matrix<GroupRingElem> {
        &self.boundaries[q - 1]
    }

    /// `Mat(d_q)`, or an empty matrix of the right shape outside the complex.
    pub fn boundary_or_zero(&self, q: usize) -> Matrix<GroupRingElem> {
        if q >= 1 && q <= self.top_degree() {
            self.boundaries[q - 1].clone()
        } else {
            Matrix::filled(self.dim(q), if q == 0 { 0 } else { self.dim(q - 1) }, self.zero())
        }
    }

    pub fn boundaries(&self) -> &[Matrix<GroupRingElem>] {
        &self.boundaries
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The augmentation-specialized boundaries over `Z`, when known.
    pub fn integral_shadow(&self) -> Option<&[Matrix<BigInt>]> {
        self.shadow.as_deref()
    }

    pub fn presentation(&self) -> Option<&(Presentation, Epimorphism)> {
        self.presentation.as_ref()
    }

    pub fn zero(&self) -> GroupRingElem {
        GroupRingElem::zero(self.group, &self.field)
    }

    fn validate(&self) -> Result<()> {
        if self.dims.first() != Some(&1) {
            return Err(Error::ShapeMismatch(format!("a complex needs exactly one 0-cell, got dims {:?}", self.dims)));
        }
        if self.boundaries.len() + 1 != self.dims.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} boundary matrices for dims {:?}",
                self.boundaries.len(),
                self.dims
            )));
        }
        for (k, m) in self.boundaries.iter().enumerate() {
            let q = k + 1;
            if m.rows() != self.dims[q] || m.cols() != self.dims[q - 1] {
                return Err(Error::ShapeMismatch(format!(
                    "boundary in degree {q} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.dims[q],
                    self.dims[q - 1]
                )));
            }
            for e in m.iter() {
                if e.group() != self.group || *e.field() != self.field {
                    return Err(Error::DescriptorMismatch(
                        format!("{} over {}", e.group(), e.field().descriptor()),
                        format!("{} over {}", self.group, self.field.descriptor()),
                    ));
                }
                if self.ring == CoeffRing::Integers && e.integer_terms().is_none() {
                    return Err(Error::UnsupportedCoefficients(format!("entry `{e}` in degree {q} is not integral")));
                }
            }
        }
        if let Some(d1) = self.boundaries.first() {
            if let Some((i, e)) = d1.iter().enumerate().find(|(_, e)| !e.augmentation().is_zero()) {
                return Err(Error::ShapeMismatch(format!(
                    "entry `{e}` of the degree 1 boundary (cell {}) does not augment to 0",
                    i + 1
                )));
            }
        }
        for q in 1..self.boundaries.len() {
            let prod = self.boundaries[q].mul_with(&self.boundaries[q - 1], &self.zero());
            if prod.iter().any(|e| !e.is_zero()) {
                return Err(Error::CompositionFailure { degree: q });
            }
        }
        Ok(())
    }

    /// Augmentation specialization of `Mat(d_q)` over the coefficient field.
    pub fn epsilon_boundary(&self, q: usize) -> Matrix<FieldElem> {
        self.boundary_or_zero(q).map(GroupRingElem::augmentation)
    }

    /// Ranks of the augmentation-specialized boundaries, indexed by `q`
    /// (`ranks[0] = 0`).
    fn epsilon_ranks(&self) -> Result<Vec<usize>> {
        let mut ranks = vec![0];
        for q in 1..=self.top_degree() {
            ranks.push(crate::coeffs::rank_exact(&self.epsilon_boundary(q))?);
        }
        ranks.push(0);
        Ok(ranks)
    }

    /// Betti numbers `b_q(X, k)` for `q = 0..=top_degree`.
    pub fn betti_numbers(&self) -> Result<Vec<usize>> {
        if !self.ring.is_field() {
            return Err(Error::UnsupportedCoefficients(
                "Betti numbers need field coefficients; reduce to Q or Fp first".into(),
            ));
        }
        let ranks = self.epsilon_ranks()?;
        Ok((0..=self.top_degree()).map(|q| self.dims[q] - ranks[q] - ranks[q + 1]).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// Entries `(q, row, col, value)` of the augmentation-specialized
    /// boundaries that are nonzero.
    pub fn nonzero_specialized_entries(&self) -> Vec<(usize, usize, usize, FieldElem)> {
        let mut out = Vec::new();
        for q in 1..=self.top_degree() {
            let m = self.epsilon_boundary(q);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if !m[(i, j)].is_zero() {
                        out.push((q, i, j, m[(i, j)].clone()));
                    }
                }
            }
        }
        out
    }

    /// Whether every augmentation-specialized boundary vanishes.
    pub fn is_minimal(&self) -> bool {
        self.nonzero_specialized_entries().is_empty()
    }

    /// Applies the ring map induced by a surjection `G -> target` sending
    /// generator `i` of `G` to `images[i]`.
    pub fn base_change(&self, target: GroupDescriptor, images: &[Vec<i64>]) -> Result<Self> {
        check_homomorphism(self.group, target, images)?;
        check_surjective(target, images)?;
        let boundaries = self.boundaries.iter().map(|m| m.map(|e| e.map_group(target, images))).collect();
        let presentation = self.presentation.as_ref().map(|(p, nu)| (p.clone(), nu.compose(target, images)));
        let out = EquivariantComplex { group: target, boundaries, presentation, ..self.clone() };
        out.validate()?;
        Ok(out)
    }

    /// Changes the coefficient ring (e.g. `Z -> Fp`, `Q -> Q(zeta_d)`).
    pub fn change_coefficients(&self, ring: CoeffRing) -> Result<Self> {
        let field = Field::new(ring.carrier())?;
        let boundaries =
            self.boundaries.iter().map(|m| m.try_map(|e| e.change_field(&field))).collect::<Result<Vec<_>>>()?;
        let out = EquivariantComplex { ring, field, boundaries, ..self.clone() };
        out.validate()?;
        Ok(out)
    }

    /// Appends cells in degrees `top_degree + 1, ...`.
    pub fn with_extra_cells(&self, cells: Vec<Matrix<GroupRingElem>>) -> Result<Self> {
        let mut out = self.clone();
        for m in cells {
            out.dims.push(m.rows());
            if let Some(shadow) = out.shadow.as_mut() {
                match integral_specialization(&m) {
                    Some(s) => shadow.push(s),
                    None => out.shadow = None,
                }
            }
            out.boundaries.push(m);
        }
        if out.provenance == Provenance::Presentation && out.dims.len() > self.dims.len() {
            out.provenance = Provenance::Hybrid;
        }
        out.validate()?;
        Ok(out)
    }

    /// A copy carrying a different `kG` structure on the same cells; used
    /// internally by reductions that rescale exponents.
    pub(crate) fn with_boundaries(
        &self,
        group: GroupDescriptor,
        boundaries: Vec<Matrix<GroupRingElem>>,
    ) -> Result<Self> {
        let out = EquivariantComplex { group, boundaries, presentation: None, ..self.clone() };
        out.validate()?;
        Ok(out)
    }

    /// Evaluates every boundary at `t_i = values[i]`.
    pub fn evaluate_boundary(&self, q: usize, values: &[FieldElem]) -> Result<Matrix<FieldElem>> {
        self.boundary_or_zero(q).try_map(|e| e.evaluate(values))
    }

    /// Left kernel of the specialized `d_q` (the cycles `Z_q(X, k)`) and row
    /// space of `d_(q+1)` (the boundaries), in cell coordinates.
    pub fn epsilon_cycles_and_boundaries(&self, q: usize) -> (Vec<Vec<FieldElem>>, RowSpace) {
        let f = &self.field;
        let n = self.dim(q);
        let cycles = if q == 0 {
            (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
        } else {
            crate::coeffs::linalg::left_kernel(f, &self.epsilon_boundary(q))
        };
        let b = RowSpace::spanned_by(f, n, self.epsilon_boundary(q + 1).to_rows());
        (cycles, b)
    }
}

fn integral_specialization(m: &Matrix<GroupRingElem>) -> Option<Matrix<BigInt>> {
    m.try_map(|e| e.augmentation().as_integer().ok_or(())).ok()
}

/// Checks that `images` define a homomorphism `source -> target`.
pub fn check_homomorphism(source: GroupDescriptor, target: GroupDescriptor, images: &[Vec<i64>]) -> Result<()> {
    if images.len() != source.nvars() {
        return Err(Error::LengthMismatch { expected: source.nvars(), got: images.len() });
    }
    if let Some(v) = images.iter().find(|v| v.len() != target.nvars()) {
        return Err(Error::LengthMismatch { expected: target.nvars(), got: v.len() });
    }
    if let GroupDescriptor::Cyclic { m, .. } = source {
        let killed: Vec<i64> = target.normalize(images[0].iter().map(|x| x * m as i64).collect());
        if killed.iter().any(|&x| x != 0) {
            return Err(Error::Homomorphism(format!(
                "the generator of Z/{m} must map to an element of order dividing {m} in {target}"
            )));
        }
    }
    Ok(())
}

/// Builds the 2-complex of a presentation with coefficients in `kG` via `nu`.
pub fn presentation_complex(p: &Presentation, nu: &Epimorphism, ring: CoeffRing) -> Result<EquivariantComplex> {
    let q = Field::rationals();
    let group = nu.target();
    let n = p.generators().len();
    let m = p.relators().len();
    let d1 = Matrix::from_rows(
        nu.images().iter().map(|img| vec![GroupRingElem::element_minus_one(group, &q, img.clone())]).collect(),
        1,
    );
    let mut rows = Vec::with_capacity(m);
    for r in p.relators() {
        rows.push((0..n).map(|i| nu.fox_image(r, i, &q)).collect::<Result<Vec<_>>>()?);
    }
    let d2 = Matrix::from_rows(rows, n);
    let shadow = vec![
        Matrix::filled(n, 1, BigInt::zero()),
        Matrix::from_rows(
            p.relators().iter().map(|r| r.abelianization().into_iter().map(BigInt::from).collect()).collect(),
            n,
        ),
    ];
    let integral = EquivariantComplex {
        ring: CoeffRing::Integers,
        field: q,
        group,
        dims: vec![1, n, m],
        boundaries: vec![d1, d2],
        provenance: Provenance::Presentation,
        shadow: Some(shadow),
        presentation: Some((p.clone(), nu.clone())),
    };
    integral.validate()?;
    integral.change_coefficients(ring)
}

/// Builds a complex from explicit boundary matrices.
pub fn complex_from_matrices(
    ring: CoeffRing,
    group: GroupDescriptor,
    dims: Vec<usize>,
    boundaries: Vec<Matrix<GroupRingElem>>,
) -> Result<EquivariantComplex> {
    let field = Field::new(ring.carrier())?;
    let shadow = if ring == CoeffRing::Integers {
        boundaries.iter().map(integral_specialization).collect::<Option<Vec<_>>>()
    } else {
        None
    };
    let c = EquivariantComplex {
        ring,
        field,
        group,
        dims,
        boundaries,
        provenance: Provenance::Matrices,
        shadow,
        presentation: None,
    };
    c.validate()?;
    Ok(c)
}

/// Parses a matrix of group ring elements written as strings.
pub fn parse_matrix<S: AsRef<str>>(
    rows: &[Vec<S>],
    group: GroupDescriptor,
    field: &Field,
) -> Result<Matrix<GroupRingElem>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(Error::ShapeMismatch(format!("row {} has {} entries, expected {cols}", i + 1, r.len())));
        }
        out.push(r.iter().map(|s| crate::groupring::parse(s.as_ref(), group, field)).collect::<Result<Vec<_>>>()?);
    }
    Ok(Matrix::from_rows(out, cols))
}
