//! Modules over the principal ideal domains `Lambda = k[t, t^-1]` and `Z`:
//! Smith normal forms, the structure of `H_q(X, kZ)`, its associated graded
//! module, the monodromy report, and integral torsion checks.

pub mod euclid;
pub mod snf;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use euclid::{EuclideanDomain, Integers, LaurentPoly, LaurentRing};
pub use snf::{smith_normal_form, verify_snf, SnfResult};

use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};
use crate::groupring::GroupDescriptor;
use crate::matrix::Matrix;

/// Index of the subgroup of `Z^k` generated by `images`, or `None` when
/// they span a subgroup of lower rank.
pub fn lattice_index(images: &[Vec<i64>], k: usize) -> Option<BigInt> {
    if images.is_empty() {
        return if k == 0 { Some(BigInt::one()) } else { None };
    }
    let m = Matrix::from_rows(images.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect(), k);
    let s = smith_normal_form(&Integers, &m);
    if s.rank(&Integers) < k {
        return None;
    }
    Some(s.diagonal.iter().fold(BigInt::one(), |acc, d| acc * d.abs()))
}

fn require_z(c: &EquivariantComplex) -> Result<()> {
    if c.group() != GroupDescriptor::FreeAbelian(1) {
        return Err(Error::WrongGroup(format!("this needs G = Z, got {}", c.group())));
    }
    if !c.ring().is_field() {
        return Err(Error::UnsupportedCoefficients(
            "module structure over Z[t^-1, t] is not computed; choose a field".into(),
        ));
    }
    Ok(())
}

/// `Mat(d_q)` with entries as Laurent polynomials.
pub fn laurent_boundary(c: &EquivariantComplex, q: usize) -> Matrix<LaurentPoly> {
    c.boundary_or_zero(q).map(LaurentPoly::from_elem)
}

/// A primary summand `Lambda/(f^exp)` with `f(1) != 0`, repeated `mult` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OtherPrimary {
    pub poly: LaurentPoly,
    pub exp: usize,
    pub mult: usize,
}

/// `H_q(X, kZ) = Lambda^r + sum Lambda/(t-1)^e + sum (f(1) != 0 parts)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentModuleDecomp {
    pub q: usize,
    pub free_rank: usize,
    /// Non-unit invariant factors, monic with lowest exponent 0.
    pub invariant_factors: Vec<LaurentPoly>,
    /// Sizes of the `(t-1)`-primary blocks, ascending.
    pub t_minus_1_blocks: Vec<usize>,
    pub other_primary: Vec<OtherPrimary>,
}

impl LaurentModuleDecomp {
    /// Whether the `J`-adic filtration on `H_q` is separated.
    pub fn is_separated(&self) -> bool {
        self.other_primary.is_empty()
    }

    /// Whether `H_q` is finite-dimensional over `k`.
    pub fn is_finite_dimensional(&self) -> bool {
        self.free_rank == 0
    }

    pub fn report(&self) -> DecompositionReport {
        DecompositionReport {
            q: self.q,
            free_rank: self.free_rank,
            t_minus_1_blocks: self.t_minus_1_blocks.clone(),
            other_primary: self
                .other_primary
                .iter()
                .map(|o| OtherPrimaryReport { poly: o.poly.to_string(), exp: o.exp, mult: o.mult })
                .collect(),
            invariant_factors: self.invariant_factors.iter().map(ToString::to_string).collect(),
            separated: self.is_separated(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OtherPrimaryReport {
    pub poly: String,
    pub exp: usize,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub q: usize,
    pub free_rank: usize,
    pub t_minus_1_blocks: Vec<usize>,
    pub other_primary: Vec<OtherPrimaryReport>,
    pub invariant_factors: Vec<String>,
    pub separated: bool,
}

/// Decomposes `H_q(X, kZ_nu)` over `Lambda`.
pub fn homology_decomposition(c: &EquivariantComplex, q: usize) -> Result<LaurentModuleDecomp> {
    require_z(c)?;
    let lam = LaurentRing::new(c.field());
    let n = c.dim(q);
    // Cycles: the kernel of x -> x * Mat(d_q), i.e. of D = Mat(d_q)^T.
    let (r, v_inv) = if q >= 1 && q <= c.top_degree() {
        let d = laurent_boundary(c, q).transpose();
        let s = smith_normal_form(&lam, &d);
        (s.rank(&lam), s.v_inv)
    } else {
        (0, Matrix::identity(n, &lam.zero(), &lam.one()))
    };
    let k = n - r;
    // Boundaries, in the kernel basis given by the last k columns of V.
    let b = laurent_boundary(c, q + 1).transpose();
    let coords = snf::mat_mul(&lam, &v_inv, &b);
    let rows: Vec<usize> = (r..n).collect();
    let cols: Vec<usize> = (0..coords.cols()).collect();
    let p = coords.select(&rows, &cols);
    let s = smith_normal_form(&lam, &p);
    let nonzero: Vec<LaurentPoly> = s.diagonal.iter().filter(|x| !x.is_zero()).cloned().collect();
    let free_rank = k - nonzero.len();
    let invariant_factors: Vec<LaurentPoly> = nonzero.into_iter().filter(|x| !lam.is_unit(x)).collect();
    let mut blocks = Vec::new();
    let mut others: BTreeMap<String, OtherPrimary> = BTreeMap::new();
    for f in &invariant_factors {
        let (e, g) = f.split_t_minus_one(c.field());
        if e > 0 {
            blocks.push(e);
        }
        if g.span() > 0 {
            let g = lam.normalize(&g);
            others.entry(g.to_string()).and_modify(|o| o.mult += 1).or_insert(OtherPrimary {
                poly: g,
                exp: 1,
                mult: 1,
            });
        }
    }
    blocks.sort_unstable();
    Ok(LaurentModuleDecomp {
        q,
        free_rank,
        invariant_factors,
        t_minus_1_blocks: blocks,
        other_primary: others.into_values().collect(),
    })
}

/// The `k[x]`-module `k[x]^r + sum k[x]/x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrModule {
    pub free_rank: usize,
    pub blocks: Vec<usize>,
}

impl GrModule {
    /// `dim gr^s` for `s = 0..=s_max`.
    pub fn dims(&self, s_max: usize) -> Vec<usize> {
        (0..=s_max).map(|s| self.free_rank + self.blocks.iter().filter(|&&b| b > s).count()).collect()
    }
}

/// The associated graded of `H_q` for the `J`-adic filtration.
pub fn einf_gr_module(d: &LaurentModuleDecomp) -> GrModule {
    GrModule { free_rank: d.free_rank, blocks: d.t_minus_1_blocks.clone() }
}

/// Largest `(t-1)`-adic valuation of a nonzero invariant factor of any
/// boundary map. The `J`-adic spectral sequence over `kZ` has
/// `E^inf = E^(bound + 1)`.
pub fn collapse_bound(c: &EquivariantComplex) -> Result<usize> {
    require_z(c)?;
    let lam = LaurentRing::new(c.field());
    let mut best = 0;
    for q in 1..=c.top_degree() {
        let s = smith_normal_form(&lam, &laurent_boundary(c, q));
        for f in s.diagonal.iter().filter(|x| !x.is_zero()) {
            best = best.max(f.split_t_minus_one(c.field()).0);
        }
    }
    Ok(best)
}

/// `H_q(X, Z)` as `Z^rank + sum Z/torsion_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralHomology {
    pub q: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub torsion_free: Vec<bool>,
    pub homology: Vec<IntegralHomology>,
}

impl TorsionReport {
    pub fn all_torsion_free(&self) -> bool {
        self.torsion_free.iter().all(|&b| b)
    }
}

/// Integral homology of `X` from the integral shadow.
pub fn integral_torsion_check(c: &EquivariantComplex) -> Result<TorsionReport> {
    let shadow = c.integral_shadow().ok_or(Error::MissingShadow)?;
    let top = c.top_degree();
    let mut ranks = vec![0usize; top + 2];
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 2];
    for q in 1..=top {
        let s = smith_normal_form(&Integers, &shadow[q - 1]);
        ranks[q] = s.rank(&Integers);
        factors[q] = s.diagonal.into_iter().filter(|x| !x.is_zero()).collect();
    }
    let mut torsion_free = Vec::new();
    let mut homology = Vec::new();
    for q in 0..=top {
        let torsion: Vec<String> =
            factors[q + 1].iter().filter(|x| x.abs() > BigInt::one()).map(|x| x.abs().to_string()).collect();
        torsion_free.push(torsion.is_empty());
        homology.push(IntegralHomology { q, rank: c.dims()[q] - ranks[q] - ranks[q + 1], torsion });
    }
    Ok(TorsionReport { torsion_free, homology })
}

/// One degree of the monodromy report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyDegree {
    pub q: usize,
    pub aomoto_betti: usize,
    pub decomposition: DecompositionReport,
    /// `dim gr^1 H_q` read from `E^inf`.
    pub einf_s1: usize,
    /// The three equivalent conditions, cumulative over degrees `<= q`:
    /// finite dimension without blocks of size > 1 (from the Smith form),
    /// vanishing `E^inf` in filtration 1 (from the pages), and vanishing
    /// Aomoto Betti numbers.
    pub blocks_condition: bool,
    pub spectral_condition: bool,
    pub aomoto_condition: bool,
    pub monodromy_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyReport {
    pub field: String,
    pub degrees: Vec<MonodromyDegree>,
}

/// Monodromy triviality in degrees `<= k_max`, decided three ways that must
/// agree.
pub fn monodromy_report(c: &EquivariantComplex, k_max: usize) -> Result<MonodromyReport> {
    require_z(c)?;
    let betas = crate::aomoto::aomoto_betti(c)?;
    let einf = crate::pages::e_infinity_z(c, 1)?;
    let mut degrees = Vec::new();
    let (mut c1, mut c2, mut c3) = (true, true, true);
    for q in 0..=k_max {
        let d = homology_decomposition(c, q)?;
        let gr1 = einf_gr_module(&d).dims(1)[1];
        let e1 = einf.dim(1, q);
        if gr1 != e1 {
            return Err(Error::CrossCheck(format!(
                "degree {q}: Smith form gives dim gr^1 = {gr1}, spectral sequence gives {e1}"
            )));
        }
        let beta = betas.beta(q);
        c1 &= d.free_rank == 0 && d.t_minus_1_blocks.iter().all(|&b| b <= 1);
        c2 &= e1 == 0;
        c3 &= beta == 0;
        if c1 != c2 || c2 != c3 {
            return Err(Error::CrossCheck(format!(
                "monodromy conditions disagree through degree {q}: blocks {c1}, spectral {c2}, aomoto {c3}"
            )));
        }
        degrees.push(MonodromyDegree {
            q,
            aomoto_betti: beta,
            decomposition: d.report(),
            einf_s1: e1,
            blocks_condition: c1,
            spectral_condition: c2,
            aomoto_condition: c3,
            monodromy_trivial: c1,
        });
    }
    Ok(MonodromyReport { field: c.field().descriptor().to_string(), degrees })
}
