//! Canonical bases of the ordinary homology `H_q(X, k)`.

use super::EquivariantComplex;
use crate::coeffs::linalg::solve_in_span;
use crate::coeffs::{FieldElem, RowSpace};
use crate::error::{Error, Result};

/// Cycle representatives of a basis of `H_q(X, k)`, chosen greedily from the
/// reduced-echelon kernel basis of the specialized `d_q` modulo boundaries.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub q: usize,
    pub cycles: Vec<Vec<FieldElem>>,
    boundaries: RowSpace,
}

impl HomologyBasis {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn boundaries(&self) -> &RowSpace {
        &self.boundaries
    }

    /// Coordinates of the class of the cycle `z` in this basis.
    pub fn coordinates(&self, z: &[FieldElem]) -> Result<Vec<FieldElem>> {
        let field = self.boundaries.field();
        let mut gens = self.cycles.clone();
        gens.extend(self.boundaries.basis().iter().cloned());
        let sol = solve_in_span(field, &gens, z)
            .ok_or_else(|| Error::CrossCheck(format!("chain in degree {} is not a cycle", self.q)))?;
        Ok(sol[..self.cycles.len()].to_vec())
    }
}

/// The canonical basis of `H_q(X, k)`; requires field coefficients.
pub fn homology_basis(c: &EquivariantComplex, q: usize) -> HomologyBasis {
    let (cycles, b) = c.epsilon_cycles_and_boundaries(q);
    let mut span = b.clone();
    let mut chosen = Vec::new();
    for z in cycles {
        if span.insert(z.clone()) {
            chosen.push(z);
        }
    }
    HomologyBasis { q, cycles: chosen, boundaries: b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{presentation_complex, Epimorphism, Presentation};

    #[test]
    fn torus_basis_is_cells() {
        let p = Presentation::parse(&["a", "b"], &["abAB"]).unwrap();
        let nu = Epimorphism::abelianization(&p).unwrap();
        let c = presentation_complex(&p, &nu, "Q".parse().unwrap()).unwrap();
        let h: Vec<usize> = (0..3).map(|q| homology_basis(&c, q).len()).collect();
        assert_eq!(h, vec![1, 2, 1]);
        let h1 = homology_basis(&c, 1);
        let f = c.field();
        assert_eq!(h1.cycles, vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]]);
        let coords = h1.coordinates(&[f.from_i64(3), f.from_i64(-1)]).unwrap();
        assert_eq!(coords, vec![f.from_i64(3), f.from_i64(-1)]);
    }
}
