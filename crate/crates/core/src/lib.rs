//! Exact computation of the equivariant spectral sequence of a finite
//! CW-complex with coefficients in group rings of free abelian and finite
//! cyclic groups, together with the invariants read off from it: twisted
//! Betti numbers at roots of unity, Aomoto Betti numbers, monodromy
//! decompositions over `k[t, t^-1]` and Alexander polynomials.
//!
//! All arithmetic is exact. The modules build on each other:
//!
//! * [`coeffs`]: integers, rationals, prime fields and cyclotomic fields.
//! * [`groupring`]: Laurent polynomials and truncated cyclic group rings.
//! * [`complex`]: equivariant chain complexes, Fox calculus, base change.
//! * [`pages`]: the spectral sequence engine.
//! * [`modz`]: Smith normal form and module structure over `k[t, t^-1]`.
//! * [`aomoto`]: Aomoto complexes and their Betti numbers.
//! * [`twisted`]: twisted Betti numbers, Alexander polynomials, bounds.

pub mod aomoto;
pub mod coeffs;
pub mod complex;
pub mod error;
pub mod groupring;
pub mod matrix;
pub mod modz;
pub mod pages;
pub mod twisted;

pub use error::{Error, Result};
pub use matrix::Matrix;
