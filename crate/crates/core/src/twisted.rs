//! Twisted Betti numbers `b_q(X, nu/d)` at roots of unity, Alexander
//! polynomials, and the comparison of twisted, Aomoto and mod-`p` Betti
//! numbers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::aomoto::aomoto_betti;
use crate::coeffs::upoly::{self, UPoly};
use crate::coeffs::{rank_exact, CoeffRing, Field, FieldDescriptor, FieldElem};
use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};
use crate::groupring::{GroupDescriptor, GroupRingElem};
use crate::modz::integral_torsion_check;
use crate::pages::e2_column;

fn require_char_zero(c: &EquivariantComplex) -> Result<()> {
    match c.ring() {
        CoeffRing::Integers | CoeffRing::Field(FieldDescriptor::Rationals) => Ok(()),
        other => Err(Error::UnsupportedCoefficients(format!(
            "twisted Betti numbers are computed from Z or Q coefficients, got {other}"
        ))),
    }
}

fn require_integers_group(c: &EquivariantComplex) -> Result<()> {
    if c.group().is_integers() {
        Ok(())
    } else {
        Err(Error::WrongGroup(format!("expected G = Z, got {}; base change along nu first", c.group())))
    }
}

/// Ranks of `d_q` evaluated at `t_i = values[i]`, indexed by `q`, with
/// zeros at both ends.
fn ranks_at(c: &EquivariantComplex, values: &[FieldElem]) -> Result<Vec<usize>> {
    let mut ranks = vec![0];
    for q in 1..=c.top_degree() {
        ranks.push(rank_exact(&c.evaluate_boundary(q, values)?)?);
    }
    ranks.push(0);
    Ok(ranks)
}

fn betti_from_ranks(c: &EquivariantComplex, ranks: &[usize]) -> Vec<usize> {
    (0..=c.top_degree()).map(|q| c.dim(q) - ranks[q] - ranks[q + 1]).collect()
}

fn over_cyclotomic(c: &EquivariantComplex, d: u32) -> Result<(EquivariantComplex, Field)> {
    let field = Field::cyclotomic(d)?;
    Ok((c.change_coefficients(CoeffRing::Field(field.descriptor()))?, field))
}

/// `b_q(X, nu/d)` at the root `zeta_d^a` of the cyclotomic field, for a
/// complex over `kZ`; `a` must be prime to `d`.
pub fn twisted_betti_at(c: &EquivariantComplex, d: u32, a: i64) -> Result<Vec<usize>> {
    require_char_zero(c)?;
    require_integers_group(c)?;
    if d == 0 {
        return Err(Error::InvalidDescriptor("order 0".into()));
    }
    if a.gcd(&(d as i64)) != 1 {
        return Err(Error::InvalidDescriptor(format!("zeta_{d}^{a} is not primitive")));
    }
    let (cc, field) = over_cyclotomic(c, d)?;
    let z = field.zeta_pow(a).expect("cyclotomic field");
    Ok(betti_from_ranks(&cc, &ranks_at(&cc, &[z])?))
}

/// `b_q(X, nu/d) = dim C_q - rank d_q(zeta_d) - rank d_(q+1)(zeta_d)`.
pub fn twisted_betti(c: &EquivariantComplex, d: u32) -> Result<Vec<usize>> {
    twisted_betti_at(c, d, 1)
}

fn nu_gcd(nu: &[i64]) -> i64 {
    nu.iter().fold(0i64, |g, x| g.gcd(x))
}

fn check_nu(c: &EquivariantComplex, nu: &[i64]) -> Result<()> {
    match c.group() {
        GroupDescriptor::FreeAbelian(n) if n == nu.len() => Ok(()),
        GroupDescriptor::FreeAbelian(n) => Err(Error::LengthMismatch { expected: n, got: nu.len() }),
        g => Err(Error::WrongGroup(format!("nu is read on Z^n, got {g}"))),
    }
}

/// The surjection `nu' = nu / m` onto `Z` and the content `m` of `nu`
/// (`None` when `nu = 0`).
fn reduce_nu(c: &EquivariantComplex, nu: &[i64]) -> Result<Option<(EquivariantComplex, i64)>> {
    check_nu(c, nu)?;
    let m = nu_gcd(nu);
    if m == 0 {
        return Ok(None);
    }
    let images: Vec<Vec<i64>> = nu.iter().map(|x| vec![x / m]).collect();
    Ok(Some((c.base_change(GroupDescriptor::FreeAbelian(1), &images)?, m)))
}

/// `b_q(X, nu/d)` for a complex over `kZ^n` and any `nu: Z^n -> Z`. With
/// `nu = m nu'`, the character `t -> zeta_d` along `nu` is `zeta_d^m`
/// along `nu'`, of order `d / gcd(d, m)`. Cross-checked by substituting
/// `t_i = zeta_d^(nu_i)` directly.
pub fn twisted_betti_along(c: &EquivariantComplex, nu: &[i64], d: u32) -> Result<Vec<usize>> {
    require_char_zero(c)?;
    check_nu(c, nu)?;
    let (cc, field) = over_cyclotomic(c, d)?;
    let values: Vec<FieldElem> = nu.iter().map(|&x| field.zeta_pow(x).expect("cyclotomic field")).collect();
    let direct = betti_from_ranks(&cc, &ranks_at(&cc, &values)?);
    let reduced = match reduce_nu(c, nu)? {
        None => c.change_coefficients(CoeffRing::Field(FieldDescriptor::Rationals))?.betti_numbers()?,
        Some((c1, m)) => twisted_betti(&c1, d / (d as i64).gcd(&m) as u32)?,
    };
    if reduced != direct {
        return Err(Error::CrossCheck(format!(
            "b(X, nu/{d}): reduction to a surjection gives {reduced:?}, direct substitution {direct:?}"
        )));
    }
    Ok(direct)
}

/// `beta_q(X, nu_(F_p))` for `nu: Z^n -> Z`. When `p | m` the class
/// `nu mod p` vanishes and `beta_q = b_q(X, F_p)`; otherwise `nu mod p` is a
/// unit multiple of `nu' mod p`. Cross-checked against `E^2` of the complex
/// carried along `nu` itself.
pub fn aomoto_betti_along(c: &EquivariantComplex, nu: &[i64], p: u64) -> Result<Vec<usize>> {
    check_nu(c, nu)?;
    let fp = CoeffRing::Field(FieldDescriptor::prime(p)?);
    let m = nu_gcd(nu);
    if m == 0 || m.rem_euclid(p as i64) == 0 {
        return c.change_coefficients(fp)?.betti_numbers();
    }
    let (c1, _) = reduce_nu(c, nu)?.expect("nu is nonzero");
    let betas = aomoto_betti(&c1.change_coefficients(fp)?)?.betas;
    let cp = c.change_coefficients(fp)?;
    let images: Vec<Vec<i64>> = nu.iter().map(|&x| vec![x]).collect();
    let along = cp.with_boundaries(
        GroupDescriptor::FreeAbelian(1),
        cp.boundaries().iter().map(|b| b.map(|e| e.map_group(GroupDescriptor::FreeAbelian(1), &images))).collect(),
    )?;
    let e2 = e2_column(&along, 1)?;
    if e2 != betas {
        return Err(Error::CrossCheck(format!("beta along nu: {e2:?} from E^2, {betas:?} through the surjection")));
    }
    Ok(betas)
}

/// Verdict on an inequality that is only claimed under hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsDegree {
    pub q: usize,
    /// `b_q(X, nu/p^r)`.
    pub twisted: usize,
    /// `b_q(X, F_p)`.
    pub betti_fp: usize,
    /// `beta_q(X, nu_(F_p))`.
    pub beta: usize,
    /// Whether `H_q(X, Z)` is torsion-free; `None` without integral data.
    pub torsion_free: Option<bool>,
    /// `rank d_q(zeta_(p^r))` and `rank_(F_p) d_q(1)`.
    pub rank_at_zeta: usize,
    pub rank_mod_p: usize,
    /// `twisted <= betti_fp`.
    pub betti_bound: bool,
    /// `twisted <= beta`, reported whether or not it is claimed.
    pub aomoto_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub p: u64,
    pub r: u32,
    pub nu: Vec<i64>,
    pub degrees: Vec<BoundsDegree>,
    pub all_torsion_free: bool,
    pub betti_bound: Verdict,
    pub aomoto_bound: Verdict,
    pub notices: Vec<String>,
}

/// Compares `b_q(X, nu/p^r)`, `beta_q(X, nu_(F_p))` and `b_q(X, F_p)`.
/// `b(nu/p^r) <= b(F_p)` always holds; `b(nu/p^r) <= beta` is claimed when
/// `H_*(X, Z)` is torsion-free, and reported as not applicable otherwise.
pub fn bounds_report(c: &EquivariantComplex, nu: &[i64], p: u64, r: u32) -> Result<BoundsReport> {
    require_char_zero(c)?;
    let fp = CoeffRing::Field(FieldDescriptor::prime(p)?);
    let d = p
        .checked_pow(r)
        .filter(|&d| d <= u32::MAX as u64)
        .ok_or_else(|| Error::InvalidDescriptor(format!("{p}^{r} is too large")))? as u32;
    let twisted = twisted_betti_along(c, nu, d)?;
    let cp = c.change_coefficients(fp)?;
    let betti_fp = cp.betti_numbers()?;
    let beta = aomoto_betti_along(c, nu, p)?;

    let (cc, field) = over_cyclotomic(c, d)?;
    let values: Vec<FieldElem> = nu.iter().map(|&x| field.zeta_pow(x).expect("cyclotomic field")).collect();
    let rz = ranks_at(&cc, &values)?;
    let rp = ranks_at(&cp, &vec![cp.field().one(); nu.len()])?;

    let mut notices = Vec::new();
    let torsion = match integral_torsion_check(c) {
        Ok(t) => Some(t.torsion_free),
        Err(Error::MissingShadow) => {
            notices.push("no integral data; torsion-freeness unknown".into());
            None
        }
        Err(e) => return Err(e),
    };
    let mut degrees = Vec::new();
    for q in 0..=c.top_degree() {
        let deg = BoundsDegree {
            q,
            twisted: twisted[q],
            betti_fp: betti_fp[q],
            beta: beta[q],
            torsion_free: torsion.as_ref().map(|t| t[q]),
            rank_at_zeta: rz[q],
            rank_mod_p: rp[q],
            betti_bound: twisted[q] <= betti_fp[q],
            aomoto_bound: twisted[q] <= beta[q],
        };
        if deg.rank_at_zeta < deg.rank_mod_p {
            return Err(Error::CrossCheck(format!(
                "degree {q}: rank at zeta_{d} is {} < rank mod {p} at 1 = {}",
                deg.rank_at_zeta, deg.rank_mod_p
            )));
        }
        if !deg.betti_bound {
            return Err(Error::CrossCheck(format!(
                "degree {q}: b(nu/{d}) = {} exceeds b(F_{p}) = {}",
                deg.twisted, deg.betti_fp
            )));
        }
        if deg.beta > deg.betti_fp {
            return Err(Error::CrossCheck(format!("degree {q}: beta {} exceeds b(F_{p}) {}", deg.beta, deg.betti_fp)));
        }
        degrees.push(deg);
    }
    let all_torsion_free = torsion.as_ref().is_some_and(|t| t.iter().all(|&x| x));
    let aomoto_bound = if !all_torsion_free {
        Verdict::NotApplicable
    } else if degrees.iter().all(|g| g.aomoto_bound) {
        Verdict::Holds
    } else {
        return Err(Error::CrossCheck("integral homology is torsion-free but b(nu/p^r) <= beta fails".into()));
    };
    Ok(BoundsReport {
        p,
        r,
        nu: nu.to_vec(),
        degrees,
        all_torsion_free,
        betti_bound: Verdict::Holds,
        aomoto_bound,
        notices,
    })
}

/// A normalized Alexander polynomial: lowest exponent 0; over `Z` and `Q`
/// primitive up to content with positive leading coefficient, over other
/// fields monic. Coefficients are lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPolynomial {
    pub ring: CoeffRing,
    pub field: Field,
    pub coeffs: UPoly,
    pub notice: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderReport {
    pub ring: CoeffRing,
    pub polynomial: String,
    pub notice: Option<String>,
}

impl AlexanderPolynomial {
    pub fn to_elem(&self) -> GroupRingElem {
        let g = GroupDescriptor::FreeAbelian(1);
        GroupRingElem::from_terms(
            g,
            &self.field,
            self.coeffs.iter().enumerate().map(|(i, c)| (vec![i as i64], c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        upoly::degree(&self.coeffs)
    }

    /// Whether `Phi_d` divides the polynomial (characteristic 0 only).
    pub fn divisible_by_cyclotomic(&self, d: u64) -> bool {
        let phi: UPoly =
            crate::coeffs::cyclotomic_polynomial(d).coeffs().iter().map(|c| self.field.from_bigint(c)).collect();
        let (_, r) = upoly::div_rem(&self.field, &self.coeffs, &phi);
        r.is_empty()
    }

    pub fn report(&self) -> AlexanderReport {
        AlexanderReport { ring: self.ring, polynomial: self.to_string(), notice: self.notice.clone() }
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_elem())
    }
}

fn entry_poly(e: &GroupRingElem, shift: i64, field: &Field) -> UPoly {
    let mut out = Vec::new();
    for (exp, c) in e.terms() {
        let k = (exp[0] - shift) as usize;
        if out.len() <= k {
            out.resize(k + 1, field.zero());
        }
        out[k] = c.clone();
    }
    upoly::trim(out)
}

/// Fraction-free determinant over `k[t]`.
fn det(field: &Field, mut a: Vec<Vec<UPoly>>) -> UPoly {
    let n = a.len();
    if n == 0 {
        return vec![field.one()];
    }
    let mut negate = false;
    let mut prev: UPoly = vec![field.one()];
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_empty()) else { return Vec::new() };
        if piv != k {
            a.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = upoly::sub(&upoly::mul(field, &a[i][j], &a[k][k]), &upoly::mul(field, &a[i][k], &a[k][j]));
                let (q, r) = upoly::div_rem(field, &num, &prev);
                debug_assert!(r.is_empty());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        upoly::neg(&d)
    } else {
        d
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn as_rationals(p: &[FieldElem]) -> Vec<BigRational> {
    p.iter().map(|c| c.as_rational().expect("rational coefficients")).collect()
}

/// Clears denominators and content; positive leading coefficient.
fn primitive_integral(p: &[FieldElem]) -> Vec<BigInt> {
    let q = as_rationals(p);
    let den = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = q.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if ints.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|c| c / &content * &sign).collect()
}

/// Generator of the ideal of codimension-1 minors of the Alexander matrix
/// `Mat(d_2)` (relators by generators).
pub fn alexander_polynomial(c: &EquivariantComplex) -> Result<AlexanderPolynomial> {
    require_integers_group(c)?;
    let field = c.field().clone();
    let make = |coeffs: UPoly, notice: Option<String>| AlexanderPolynomial {
        ring: c.ring(),
        field: field.clone(),
        coeffs,
        notice,
    };
    if c.top_degree() < 2 {
        return Ok(make(vec![field.one()], Some("no 2-cells; the polynomial is 1".into())));
    }
    let m = c.boundary(2);
    let (rows, cols) = (m.rows(), m.cols());
    let k = cols.saturating_sub(1);
    if k == 0 {
        return Ok(make(vec![field.one()], None));
    }
    if rows < k {
        return Ok(make(Vec::new(), Some("fewer relators than generators minus one".into())));
    }
    let polys: Vec<Vec<UPoly>> = (0..rows)
        .map(|i| {
            let shift =
                (0..cols).flat_map(|j| m[(i, j)].terms().keys().map(|e| e[0]).collect::<Vec<_>>()).min().unwrap_or(0);
            (0..cols).map(|j| entry_poly(&m[(i, j)], shift, &field)).collect()
        })
        .collect();
    let mut minors = Vec::new();
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            let sub = rs.iter().map(|&i| cs.iter().map(|&j| polys[i][j].clone()).collect()).collect();
            minors.push(det(&field, sub));
        }
    }
    let g = minors.iter().fold(Vec::new(), |g: UPoly, x| upoly::gcd_monic(&field, &g, x));
    if g.is_empty() {
        return Ok(make(g, None));
    }
    let lowest = g.iter().position(|x| !x.is_zero()).unwrap_or(0);
    let g = g[lowest..].to_vec();
    let coeffs = match c.ring() {
        CoeffRing::Integers | CoeffRing::Field(FieldDescriptor::Rationals) => {
            let mut ints = primitive_integral(&g);
            if c.ring() == CoeffRing::Integers {
                let content =
                    minors.iter().flat_map(|x| as_rationals(x)).fold(BigInt::zero(), |acc, q| acc.gcd(&q.to_integer()));
                ints = ints.iter().map(|x| x * &content).collect();
            }
            ints.iter().map(|x| field.from_bigint(x)).collect()
        }
        _ => g,
    };
    Ok(make(coeffs, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{presentation_complex, Epimorphism, Presentation};

    fn knot(gens: &[&str], rel: &str) -> EquivariantComplex {
        let p = Presentation::parse(gens, &[rel]).unwrap();
        let images = gens.iter().map(|_| vec![1]).collect();
        let nu = Epimorphism::new(&p, GroupDescriptor::FreeAbelian(1), images).unwrap();
        presentation_complex(&p, &nu, CoeffRing::Integers).unwrap()
    }

    #[test]
    fn trefoil() {
        let c = knot(&["x", "y"], "xyxYXY");
        assert_eq!(alexander_polynomial(&c).unwrap().to_string(), "t^2 - t + 1");
        assert_eq!(twisted_betti(&c, 6).unwrap()[1], 1);
        assert_eq!(twisted_betti(&c, 5).unwrap()[1], 0);
        assert_eq!(twisted_betti_at(&c, 6, 5).unwrap(), twisted_betti(&c, 6).unwrap());
    }

    #[test]
    fn circle_is_trivial() {
        let p = Presentation::parse(&["x"], &[]).unwrap();
        let nu = Epimorphism::abelianization(&p).unwrap();
        let c = presentation_complex(&p, &nu, CoeffRing::Integers).unwrap();
        let a = alexander_polynomial(&c).unwrap();
        assert_eq!(a.to_string(), "1");
    }

    #[test]
    fn non_surjective_nu() {
        let p = Presentation::parse(&["a", "b"], &["abAB"]).unwrap();
        let nu = Epimorphism::abelianization(&p).unwrap();
        let c = presentation_complex(&p, &nu, CoeffRing::Integers).unwrap();
        assert_eq!(twisted_betti_along(&c, &[2, 4], 4).unwrap(), vec![0, 0, 0]);
        assert_eq!(twisted_betti_along(&c, &[2, 4], 2).unwrap(), vec![1, 2, 1]);
        assert_eq!(aomoto_betti_along(&c, &[3, 3], 3).unwrap(), vec![1, 2, 1]);
        assert_eq!(aomoto_betti_along(&c, &[2, 2], 3).unwrap(), vec![0, 0, 0]);
        assert_eq!(twisted_betti_along(&c, &[0, 0], 5).unwrap(), vec![1, 2, 1]);
    }
}
