//! Exact coefficient domains: rationals, prime fields `F_p`, cyclotomic
//! fields `Q(zeta_d) = Q[s]/(Phi_d(s))`, and the integers (as a ring).

mod intpoly;
pub mod linalg;
pub mod upoly;

pub use intpoly::{cyclotomic_polynomial, IntPoly};
pub use linalg::{rank_exact, RowSpace};

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
    Cyclotomic(u32),
}

impl FieldDescriptor {
    /// Validating constructor for prime fields.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldDescriptor::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn cyclotomic(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDescriptor("cyclotomic:0".into()));
        }
        Ok(FieldDescriptor::Cyclotomic(d))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::PrimeField(p) => *p,
            _ => 0,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "Fp:{p}"),
            FieldDescriptor::Cyclotomic(d) => write!(f, "cyclotomic:{d}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidDescriptor(s.to_string());
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u64 = rest.trim().parse().map_err(|_| bad())?;
            return FieldDescriptor::prime(p);
        }
        if let Some(rest) = s.strip_prefix("cyclotomic:") {
            let d: u32 = rest.trim().parse().map_err(|_| bad())?;
            return FieldDescriptor::cyclotomic(d).map_err(|_| bad());
        }
        Err(bad())
    }
}

impl TryFrom<String> for FieldDescriptor {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FieldDescriptor> for String {
    fn from(d: FieldDescriptor) -> String {
        d.to_string()
    }
}

/// Coefficient ring of a complex: a field, or the integers.
///
/// Integer data is carried in rational arithmetic with denominator one; the
/// tag records that only ring operations (and SNF over Z) are meaningful.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum CoeffRing {
    Integers,
    Field(FieldDescriptor),
}

impl CoeffRing {
    /// The field used to hold the values (Q for the integers).
    pub fn carrier(&self) -> FieldDescriptor {
        match self {
            CoeffRing::Integers => FieldDescriptor::Rationals,
            CoeffRing::Field(d) => *d,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CoeffRing::Field(_))
    }

    pub fn characteristic(&self) -> u64 {
        self.carrier().characteristic()
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Field(d) => write!(f, "{d}"),
        }
    }
}

impl FromStr for CoeffRing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "Z" {
            Ok(CoeffRing::Integers)
        } else {
            Ok(CoeffRing::Field(s.parse()?))
        }
    }
}

impl TryFrom<String> for CoeffRing {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CoeffRing> for String {
    fn from(d: CoeffRing) -> String {
        d.to_string()
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// If `n = p^r` with `p` prime and `r >= 1`, returns `(p, r)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > n {
        p = n;
    }
    let mut m = n;
    let mut r = 0;
    while m.is_multiple_of(p) {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(p as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(p as i128) as u64)
}

/// Data of `Q(zeta_d)`: the modulus `Phi_d` as a monic rational polynomial.
#[derive(Debug)]
pub struct CycField {
    d: u32,
    /// `Phi_d` coefficients, lowest degree first, monic.
    phi: Vec<BigRational>,
}

impl CycField {
    pub fn order(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let n = self.degree();
        while c.len() > n {
            let top = c.pop().unwrap();
            if !top.is_zero() {
                let off = c.len() - n;
                for (i, ph) in self.phi[..n].iter().enumerate() {
                    c[off + i] -= &top * ph;
                }
            }
        }
        c.resize(n, BigRational::zero());
        c
    }
}

/// A coefficient field, shared by all of its elements.
#[derive(Clone, Debug)]
pub enum Field {
    Rationals,
    Prime(u64),
    Cyclotomic(Arc<CycField>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor() == other.descriptor()
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(desc: FieldDescriptor) -> Result<Field> {
        Ok(match desc {
            FieldDescriptor::Rationals => Field::Rationals,
            FieldDescriptor::PrimeField(p) => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                Field::Prime(p)
            }
            FieldDescriptor::Cyclotomic(d) => {
                if d == 0 {
                    return Err(Error::InvalidDescriptor("cyclotomic:0".into()));
                }
                let phi = cyclotomic_polynomial(d as u64)
                    .coeffs()
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect();
                Field::Cyclotomic(Arc::new(CycField { d, phi }))
            }
        })
    }

    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(FieldDescriptor::PrimeField(p))
    }

    pub fn cyclotomic(d: u32) -> Result<Field> {
        Field::new(FieldDescriptor::Cyclotomic(d))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            Field::Rationals => FieldDescriptor::Rationals,
            Field::Prime(p) => FieldDescriptor::PrimeField(*p),
            Field::Cyclotomic(c) => FieldDescriptor::Cyclotomic(c.d),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.descriptor().characteristic()
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let v = n.mod_floor(&BigInt::from(*p)).to_u64().unwrap();
                FieldElem::Mod { v, p: *p }
            }
            Field::Cyclotomic(c) => {
                let mut v = vec![BigRational::zero(); c.degree()];
                v[0] = BigRational::from_integer(n.clone());
                FieldElem::Cyc { field: c.clone(), c: v }
            }
        }
    }

    /// Image of a rational number; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        match self {
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                Ok(&num * &den.inv()?)
            }
            Field::Rationals => Ok(FieldElem::Rat(q.clone())),
            Field::Cyclotomic(c) => {
                let mut v = vec![BigRational::zero(); c.degree()];
                v[0] = q.clone();
                Ok(FieldElem::Cyc { field: c.clone(), c: v })
            }
        }
    }

    /// `zeta^k` for the distinguished primitive root of a cyclotomic field.
    pub fn zeta_pow(&self, k: i64) -> Option<FieldElem> {
        match self {
            Field::Cyclotomic(c) => {
                let e = k.rem_euclid(c.d as i64) as usize;
                let mut v = vec![BigRational::zero(); e + 1];
                v[e] = BigRational::one();
                Some(FieldElem::Cyc { field: c.clone(), c: c.reduce(v) })
            }
            _ => None,
        }
    }

    pub fn zeta(&self) -> Option<FieldElem> {
        self.zeta_pow(1)
    }
}

/// An element of one of the coefficient fields.
#[derive(Clone, Debug)]
pub enum FieldElem {
    Rat(BigRational),
    Mod {
        v: u64,
        p: u64,
    },
    /// Coefficients in the power basis `1, z, ..., z^(deg-1)`, already reduced.
    Cyc {
        field: Arc<CycField>,
        c: Vec<BigRational>,
    },
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => a == b,
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, p: q }) => a == b && p == q,
            (FieldElem::Cyc { field: f, c: a }, FieldElem::Cyc { field: g, c: b }) => f.d == g.d && a == b,
            _ => false,
        }
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            FieldElem::Rat(a) => {
                0u8.hash(state);
                a.hash(state);
            }
            FieldElem::Mod { v, p } => {
                1u8.hash(state);
                v.hash(state);
                p.hash(state);
            }
            FieldElem::Cyc { field, c } => {
                2u8.hash(state);
                field.d.hash(state);
                c.hash(state);
            }
        }
    }
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rat(_) => Field::Rationals,
            FieldElem::Mod { p, .. } => Field::Prime(*p),
            FieldElem::Cyc { field, .. } => Field::Cyclotomic(field.clone()),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldElem::Rat(_) => FieldDescriptor::Rationals,
            FieldElem::Mod { p, .. } => FieldDescriptor::PrimeField(*p),
            FieldElem::Cyc { field, .. } => FieldDescriptor::Cyclotomic(field.d),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(a) => a.is_zero(),
            FieldElem::Mod { v, .. } => *v == 0,
            FieldElem::Cyc { c, .. } => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(a) => a.is_one(),
            FieldElem::Mod { v, .. } => *v == 1,
            FieldElem::Cyc { c, .. } => c[0].is_one() && c[1..].iter().all(Zero::is_zero),
        }
    }

    /// The rational value, when the element is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            FieldElem::Rat(a) => Some(a.clone()),
            FieldElem::Mod { .. } => None,
            FieldElem::Cyc { c, .. } => c[1..].iter().all(Zero::is_zero).then(|| c[0].clone()),
        }
    }

    /// The integer value, when the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Rat(a) => FieldElem::Rat(a.recip()),
            FieldElem::Mod { v, p } => FieldElem::Mod { v: inv_mod(*v, *p).unwrap(), p: *p },
            FieldElem::Cyc { field, c } => {
                let q = Field::Rationals;
                let a: Vec<FieldElem> = c.iter().map(|x| FieldElem::Rat(x.clone())).collect();
                let m: Vec<FieldElem> = field.phi.iter().map(|x| FieldElem::Rat(x.clone())).collect();
                let (g, u, _) = upoly::ext_gcd(&q, &a, &m);
                // g is a nonzero constant since Phi_d is irreducible and a is nonzero mod Phi_d.
                debug_assert_eq!(g.len(), 1);
                let ginv = g[0].inv()?;
                let coeffs = u
                    .iter()
                    .map(|x| match &(x * &ginv) {
                        FieldElem::Rat(r) => r.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                FieldElem::Cyc { field: field.clone(), c: field.reduce(coeffs) }
            }
        })
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    fn assert_same(&self, other: &FieldElem) {
        assert_eq!(self.descriptor(), other.descriptor(), "arithmetic between different coefficient fields");
    }
}

/// `field_inverse` under its conventional name.
pub fn field_inverse(a: &FieldElem) -> Result<FieldElem> {
    a.inv()
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        self.assert_same(rhs);
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, .. }) => {
                FieldElem::Mod { v: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            (FieldElem::Cyc { field, c: a }, FieldElem::Cyc { c: b, .. }) => {
                FieldElem::Cyc { field: field.clone(), c: a.iter().zip(b).map(|(x, y)| x + y).collect() }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Mod { v, p } => FieldElem::Mod { v: (p - v) % p, p: *p },
            FieldElem::Cyc { field, c } => FieldElem::Cyc { field: field.clone(), c: c.iter().map(|x| -x).collect() },
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        self.assert_same(rhs);
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, .. }) => {
                FieldElem::Mod { v: mul_mod(*a, *b, *p), p: *p }
            }
            (FieldElem::Cyc { field, c: a }, FieldElem::Cyc { c: b, .. }) => {
                let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                FieldElem::Cyc { field: field.clone(), c: field.reduce(prod) }
            }
            _ => unreachable!(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &'a FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(a) => write!(f, "{}", fmt_rational(a)),
            FieldElem::Mod { v, .. } => write!(f, "{v}"),
            FieldElem::Cyc { c, .. } => {
                let mut out = String::new();
                for (i, x) in c.iter().enumerate().rev() {
                    if x.is_zero() {
                        continue;
                    }
                    let neg = x.is_negative();
                    let mag = fmt_rational(&x.abs());
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    match i {
                        0 => out.push_str(&mag),
                        _ => {
                            if mag != "1" {
                                out.push_str(&mag);
                                out.push('*');
                            }
                            out.push('z');
                            if i > 1 {
                                out.push_str(&format!("^{i}"));
                            }
                        }
                    }
                }
                if out.is_empty() {
                    out.push('0');
                }
                write!(f, "{out}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for s in ["Q", "Fp:5", "cyclotomic:6"] {
            let d: FieldDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!("Fp:4".parse::<FieldDescriptor>(), Err(Error::NotPrime(4)));
        assert!("R".parse::<FieldDescriptor>().is_err());
        assert_eq!("Z".parse::<CoeffRing>().unwrap(), CoeffRing::Integers);
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn inverse_examples() {
        let q = Field::rationals();
        assert_eq!(q.one().inv().unwrap(), q.one());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.from_i64(2).inv().unwrap(), f5.from_i64(3));
        assert_eq!(f5.zero().inv(), Err(Error::DivisionByZero));
        let c6 = Field::cyclotomic(6).unwrap();
        let z = c6.zeta().unwrap();
        let zi = z.inv().unwrap();
        assert!((&z * &zi).is_one());
        assert_eq!(zi, c6.zeta_pow(5).unwrap());
        // zeta_6^5 = 1 - zeta_6 modulo z^2 - z + 1
        assert_eq!(zi, &c6.one() - &z);
    }

    #[test]
    fn degenerate_cyclotomics() {
        let c1 = Field::cyclotomic(1).unwrap();
        assert!(c1.zeta().unwrap().is_one());
        let c2 = Field::cyclotomic(2).unwrap();
        assert_eq!(c2.zeta().unwrap(), -c2.one());
    }

    #[test]
    fn zeta_has_exact_order() {
        for d in 1..=12u32 {
            let f = Field::cyclotomic(d).unwrap();
            let z = f.zeta().unwrap();
            assert!(z.pow(d as i64).unwrap().is_one());
            for k in 1..d {
                assert!(!z.pow(k as i64).unwrap().is_one(), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn prime_field_rational_images() {
        let f3 = Field::prime(3).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f3.from_rational(&half).unwrap(), f3.from_i64(2));
        let third = BigRational::new(1.into(), 3.into());
        assert!(f3.from_rational(&third).is_err());
        assert_eq!(f3.from_i64(-1), f3.from_i64(2));
    }
}
