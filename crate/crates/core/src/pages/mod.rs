//! The spectral sequence of the `J`-adic filtration on `C(X, kG)`.
//!
//! Positions are indexed by the filtration degree `s >= 0` and the degree
//! `q` of `H_q(X, k)` at `E^1`, so the total degree is `q` and the spot is
//! `E_{-s, s+q}`. `d^r` goes from `(s, q)` to `(s + r, q - 1)`.

mod d1;
mod engine;
mod reznikov;

use serde::{Deserialize, Serialize};

pub use d1::{d1_closed_form, d1_from_engine, D1Map};
pub use engine::Engine;
pub use reznikov::{jordan_witness, reznikov_collapse, JordanWitness, ReznikovReport};

use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};
use crate::groupring::GroupDescriptor;

/// One position of a page.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub s: usize,
    pub q: usize,
    pub dim: usize,
    /// Rank of `d^r` out of this position.
    pub d_rank: usize,
}

/// The page `E^r` over the window `0 <= s <= s_max`, `0 <= q <= q_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageTable {
    pub page: usize,
    pub entries: Vec<PageEntry>,
}

impl PageTable {
    fn entry(&self, s: usize, q: usize) -> Option<&PageEntry> {
        self.entries.iter().find(|e| e.s == s && e.q == q)
    }

    /// `dim E^r` at `(s, q)`; zero outside the window.
    pub fn dim(&self, s: usize, q: usize) -> usize {
        self.entry(s, q).map_or(0, |e| e.dim)
    }

    pub fn d_rank(&self, s: usize, q: usize) -> usize {
        self.entry(s, q).map_or(0, |e| e.d_rank)
    }

    pub fn s_max(&self) -> usize {
        self.entries.iter().map(|e| e.s).max().unwrap_or(0)
    }

    pub fn q_max(&self) -> usize {
        self.entries.iter().map(|e| e.q).max().unwrap_or(0)
    }

    /// Whether the dimensions agree with another page on the same window.
    pub fn same_dims(&self, other: &PageTable) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.s == b.s && a.q == b.q && a.dim == b.dim)
    }

    /// Sum over `s` of the dimensions in degree `q`.
    pub fn total(&self, q: usize) -> usize {
        self.entries.iter().filter(|e| e.q == q).map(|e| e.dim).sum()
    }

    /// Aligned text rendering: one row per `q`, one column per `s`.
    pub fn render(&self) -> String {
        let (s_max, q_max) = (self.s_max(), self.q_max());
        let mut out = format!("E^{}\n  q\\s", self.page);
        for s in 0..=s_max {
            out.push_str(&format!("{s:>8}"));
        }
        out.push('\n');
        for q in (0..=q_max).rev() {
            out.push_str(&format!("{q:>5}"));
            for s in 0..=s_max {
                let cell = match self.entry(s, q) {
                    Some(e) if e.d_rank > 0 => format!("{}({})", e.dim, e.d_rank),
                    Some(e) => e.dim.to_string(),
                    None => ".".into(),
                };
                out.push_str(&format!("{cell:>8}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Pages `E^1 .. E^r_max` of a complex over a window of filtration degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSequence {
    pub r_max: usize,
    pub s_max: usize,
    pub q_max: usize,
    /// Truncation level of the model of `kG` (free abelian groups only).
    pub truncation: Option<usize>,
    pub pages: Vec<PageTable>,
    /// First `r` with `E^r = E^(r+1)` on the window, if any page up to
    /// `r_max` is stable there.
    pub window_collapse: Option<usize>,
}

impl SpectralSequence {
    pub fn page(&self, r: usize) -> &PageTable {
        &self.pages[r - 1]
    }

    pub fn last(&self) -> &PageTable {
        self.pages.last().expect("at least one page")
    }
}

fn require_field(c: &EquivariantComplex) -> Result<()> {
    if c.ring().is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedCoefficients(
            "the spectral sequence is computed over a field; reduce the coefficients to Q or Fp".into(),
        ))
    }
}

/// Truncation level needed for exact pages `E^1..E^(r_max+1)` and the ranks
/// of `d^1..d^r_max` over filtration degrees `<= s_max`.
pub fn truncation_level(r_max: usize, s_max: usize) -> usize {
    s_max + r_max + 1
}

/// Computes `E^1 .. E^r_max` for `0 <= s <= s_max`, checking the rank
/// bookkeeping `dim E^(r+1) = dim E^r - rank(d^r in) - rank(d^r out)` at
/// every position.
pub fn compute_pages(c: &EquivariantComplex, r_max: usize, s_max: usize) -> Result<SpectralSequence> {
    require_field(c)?;
    if r_max == 0 {
        return Err(Error::ShapeMismatch("pages start at r = 1".into()));
    }
    let trunc = truncation_level(r_max, s_max);
    let engine = Engine::new(c, trunc);
    let q_max = c.top_degree();
    let (r_top, s_top) = (r_max as i64, s_max as i64);
    let mut dims = vec![];
    let mut ranks = vec![];
    for r in 1..=r_top + 1 {
        let mut d = vec![vec![0; q_max + 1]; s_max + 1];
        let mut k = vec![vec![0; q_max + 1]; s_max + 1];
        for s in 0..=s_top {
            for q in 0..=q_max {
                d[s as usize][q] = engine.dim_e(r, s, q);
                if r <= r_top {
                    k[s as usize][q] = engine.rank_out(r, s, q);
                }
            }
        }
        dims.push(d);
        ranks.push(k);
    }
    for r in 1..=r_max {
        for s in 0..=s_max {
            for q in 0..=q_max {
                let rank_in = if s >= r && q < q_max { ranks[r - 1][s - r][q + 1] } else { 0 };
                let here = dims[r - 1][s][q];
                let next = dims[r][s][q];
                let out = ranks[r - 1][s][q];
                if here < rank_in + out || next != here - rank_in - out {
                    return Err(Error::CrossCheck(format!(
                        "page bookkeeping fails at r = {r}, s = {s}, q = {q}: \
                         dim E^r = {here}, rank in = {rank_in}, rank out = {out}, dim E^(r+1) = {next}"
                    )));
                }
            }
        }
    }
    let table = |r: usize| PageTable {
        page: r,
        entries: (0..=s_max)
            .flat_map(|s| (0..=q_max).map(move |q| (s, q)))
            .map(|(s, q)| PageEntry {
                s,
                q,
                dim: dims[r - 1][s][q],
                d_rank: if r <= r_max { ranks[r - 1][s][q] } else { 0 },
            })
            .collect(),
    };
    let pages: Vec<PageTable> = (1..=r_max).map(table).collect();
    let window_collapse = (1..=r_max).find(|&r| dims[r - 1] == dims[r]);
    Ok(SpectralSequence { r_max, s_max, q_max, truncation: engine.alg.truncation(), pages, window_collapse })
}

/// `E^inf` over `0 <= s <= s_max` for `G = Z`, using the collapse bound
/// from the Smith forms of the boundary maps.
pub fn e_infinity_z(c: &EquivariantComplex, s_max: usize) -> Result<PageTable> {
    if c.group() != GroupDescriptor::FreeAbelian(1) {
        return Err(Error::WrongGroup(format!("E^inf is computed for G = Z, got {}", c.group())));
    }
    let r = crate::modz::collapse_bound(c)? + 1;
    let ss = compute_pages(c, r, s_max)?;
    let mut page = ss.last().clone();
    for e in &mut page.entries {
        e.d_rank = 0;
    }
    Ok(page)
}

/// `dim E^2` at `(s, q)` for `q = 0..=top_degree`.
pub fn e2_column(c: &EquivariantComplex, s: usize) -> Result<Vec<usize>> {
    let ss = compute_pages(c, 2, s)?;
    Ok((0..=c.top_degree()).map(|q| ss.page(2).dim(s, q)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{presentation_complex, Epimorphism, Presentation};

    fn circle(field: &str) -> EquivariantComplex {
        let p = Presentation::parse(&["x"], &[]).unwrap();
        let nu = Epimorphism::abelianization(&p).unwrap();
        presentation_complex(&p, &nu, field.parse().unwrap()).unwrap()
    }

    #[test]
    fn circle_over_cyclic_group() {
        let c = circle("Fp:3").base_change(GroupDescriptor::cyclic(3).unwrap(), &[vec![1]]).unwrap();
        let ss = compute_pages(&c, 3, 3).unwrap();
        let e1 = ss.page(1);
        for s in 0..3 {
            assert_eq!((e1.dim(s, 0), e1.dim(s, 1)), (1, 1), "s = {s}");
        }
        assert_eq!(e1.dim(3, 1), 0);
        assert_eq!(e1.d_rank(0, 1), 1);
        let last = ss.last();
        assert_eq!(last.total(1), 1);
        assert_eq!(last.dim(2, 1), 1);
    }

    #[test]
    fn wedge_e1() {
        let p = Presentation::parse(&["a", "b"], &[]).unwrap();
        let nu = Epimorphism::abelianization(&p).unwrap();
        let c = presentation_complex(&p, &nu, "Q".parse().unwrap()).unwrap();
        let ss = compute_pages(&c, 1, 3).unwrap();
        for s in 0..=3 {
            assert_eq!(ss.page(1).dim(s, 1), 2 * (s + 1));
            assert_eq!(ss.page(1).dim(s, 0), s + 1);
        }
    }

    #[test]
    fn circle_over_integers_collapses() {
        let c = circle("Q");
        let einf = e_infinity_z(&c, 3).unwrap();
        let dims: Vec<usize> = (0..=3).map(|s| einf.dim(s, 0)).collect();
        assert_eq!(dims, vec![1, 0, 0, 0]);
        assert_eq!(einf.total(1), 0);
    }
}
