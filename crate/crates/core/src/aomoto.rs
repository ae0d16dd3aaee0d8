//! Aomoto complexes: the Betti numbers `beta_q(X, nu_k)` through `E^2` of
//! the `kZ` spectral sequence, and the universal Aomoto complex of a
//! minimal complex, linear over `Sym(H_1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffs::{rank_exact, Field, FieldElem};
use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};
use crate::groupring::GroupDescriptor;
use crate::matrix::Matrix;
use crate::pages::{compute_pages, d1_closed_form};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AomotoRoute {
    /// `beta_q = dim E^2` at filtration 1.
    E2,
    /// Ranks of the specialized universal Aomoto complex.
    MinimalLinearization,
}

/// Aomoto Betti numbers with the ranks of the differentials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AomotoData {
    pub route: AomotoRoute,
    pub betti: Vec<usize>,
    pub betas: Vec<usize>,
    /// `ranks[q]` is the rank of the map between degrees `q` and `q - 1`
    /// (`ranks[0] = 0`).
    pub ranks: Vec<usize>,
}

impl AomotoData {
    /// `beta_q`, zero past the top degree.
    pub fn beta(&self, q: usize) -> usize {
        self.betas.get(q).copied().unwrap_or(0)
    }

    fn from_ranks(route: AomotoRoute, betti: Vec<usize>, ranks: Vec<usize>) -> Result<Self> {
        let top = betti.len();
        let rank = |q: usize| ranks.get(q).copied().unwrap_or(0);
        let mut betas = Vec::with_capacity(top);
        for (q, &b) in betti.iter().enumerate() {
            let used = rank(q) + rank(q + 1);
            if used > b {
                return Err(Error::CrossCheck(format!("degree {q}: differential ranks {used} exceed b_q = {b}")));
            }
            betas.push(b - used);
        }
        let euler = |v: &[usize]| {
            v.iter().enumerate().map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>()
        };
        if euler(&betas) != euler(&betti) {
            return Err(Error::CrossCheck("Aomoto Betti numbers change the Euler characteristic".into()));
        }
        Ok(AomotoData { route, betti, betas, ranks })
    }
}

/// `beta_q(X, nu_k) = dim E^2` at filtration degree 1 of the spectral
/// sequence over `kZ`; cross-checked against the rank formula from `d^1`.
pub fn aomoto_betti(c: &EquivariantComplex) -> Result<AomotoData> {
    if c.group() != GroupDescriptor::FreeAbelian(1) {
        return Err(Error::WrongGroup(format!(
            "Aomoto Betti numbers are read over kZ; base change along nu first (got {})",
            c.group()
        )));
    }
    let ss = compute_pages(c, 2, 1)?;
    let e2 = ss.page(2);
    let betti = c.betti_numbers()?;
    let mut ranks = vec![0];
    for q in 1..=c.top_degree() {
        let r = d1_closed_form(c, q)?.rank();
        if r != ss.page(1).d_rank(0, q) || r != ss.page(1).d_rank(1, q) {
            return Err(Error::CrossCheck(format!(
                "degree {q}: d^1 rank {r} disagrees with the page ranks {} / {}",
                ss.page(1).d_rank(0, q),
                ss.page(1).d_rank(1, q)
            )));
        }
        ranks.push(r);
    }
    let data = AomotoData::from_ranks(AomotoRoute::E2, betti, ranks)?;
    for q in 0..=c.top_degree() {
        if e2.dim(1, q) != data.beta(q) {
            return Err(Error::CrossCheck(format!(
                "degree {q}: dim E^2 = {} but the rank formula gives {}",
                e2.dim(1, q),
                data.beta(q)
            )));
        }
    }
    Ok(data)
}

/// A linear form `sum c_i e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm(pub Vec<FieldElem>);

impl LinearForm {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElem::is_zero)
    }

    pub fn evaluate(&self, field: &Field, z: &[FieldElem]) -> FieldElem {
        self.0.iter().zip(z).fold(field.zero(), |acc, (c, x)| &acc + &(c * x))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains([' ', '+', '-']) => (true, rest.to_string()),
                _ => (false, s),
            };
            let mag = if mag.contains(' ') { format!("({mag})") } else { mag };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if mag == "1" {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "{mag}*e{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The universal Aomoto complex: `differentials[q]` is `D^q`, of shape
/// `dims[q] x dims[q+1]`, with entries linear forms in `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalAomoto {
    pub field: Field,
    pub n: usize,
    pub dims: Vec<usize>,
    pub differentials: Vec<Matrix<LinearForm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalAomotoReport {
    pub n: usize,
    pub dims: Vec<usize>,
    pub differentials: Vec<Vec<Vec<String>>>,
}

impl UniversalAomoto {
    pub fn report(&self) -> UniversalAomotoReport {
        UniversalAomotoReport {
            n: self.n,
            dims: self.dims.clone(),
            differentials: self
                .differentials
                .iter()
                .map(|m| m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect())
                .collect(),
        }
    }

    /// Checks `D^(q+1) D^q = 0` in `Sym(H_1)`.
    pub fn check_square_zero(&self) -> Result<()> {
        let f = &self.field;
        for q in 0..self.differentials.len().saturating_sub(1) {
            let (a, b) = (&self.differentials[q], &self.differentials[q + 1]);
            for i in 0..a.rows() {
                for j in 0..b.cols() {
                    let mut quad = vec![vec![f.zero(); self.n]; self.n];
                    for k in 0..a.cols() {
                        let (x, y) = (&a[(i, k)].0, &b[(k, j)].0);
                        for (u, xu) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            for (v, yv) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                                let (lo, hi) = (u.min(v), u.max(v));
                                quad[lo][hi] = &quad[lo][hi] + &(xu * yv);
                            }
                        }
                    }
                    if quad.iter().flatten().any(|c| !c.is_zero()) {
                        return Err(Error::CrossCheck(format!("D^{} D^{q} is nonzero at ({i}, {j})", q + 1)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The universal Aomoto complex of a minimal complex over `kZ^n`: `D^(q-1)`
/// is the transpose of `Mat(d_q)` reduced mod `J^2`, written in the
/// variables `e_i` dual to `x_i = t_i - 1`.
pub fn universal_aomoto(c: &EquivariantComplex) -> Result<UniversalAomoto> {
    let GroupDescriptor::FreeAbelian(n) = c.group() else {
        return Err(Error::WrongGroup(format!("the universal Aomoto complex needs G = Z^n, got {}", c.group())));
    };
    let bad = c.nonzero_specialized_entries();
    if !bad.is_empty() {
        let list: Vec<String> = bad.iter().map(|(q, i, j, v)| format!("d_{q}[{i}][{j}] = {v}")).collect();
        return Err(Error::MinimalityViolation(list.join(", ")));
    }
    let differentials: Vec<Matrix<LinearForm>> =
        (1..=c.top_degree()).map(|q| c.boundary(q).transpose().map(|e| LinearForm(e.linear_part()))).collect();
    let u = UniversalAomoto { field: c.field().clone(), n, dims: c.dims().to_vec(), differentials };
    u.check_square_zero()?;
    Ok(u)
}

/// Aomoto Betti numbers of `U` at the point `z`.
pub fn aomoto_specialize(u: &UniversalAomoto, z: &[FieldElem]) -> Result<AomotoData> {
    if z.len() != u.n {
        return Err(Error::LengthMismatch { expected: u.n, got: z.len() });
    }
    let mut ranks = vec![0];
    for d in &u.differentials {
        ranks.push(rank_exact(&d.map(|l| l.evaluate(&u.field, z)))?);
    }
    AomotoData::from_ranks(AomotoRoute::MinimalLinearization, u.dims.clone(), ranks)
}
