//! Euclidean domains used for Smith normal forms: the integers and the
//! Laurent polynomial ring `k[t, t^-1]` over a field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeffs::upoly;
use crate::coeffs::{Field, FieldElem};
use crate::error::{Error, Result};
use crate::groupring::{GroupDescriptor, GroupRingElem};

/// A Euclidean domain with a chosen normal form for associates.
pub trait EuclideanDomain {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Euclidean norm; smaller is simpler. Units have norm 0.
    fn norm(&self, a: &Self::Elem) -> BigInt;
    /// `a = q b + r` with `r = 0` or `norm(r) < norm(b)`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// A unit `u` such that `u * a` is the normal form of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        !self.is_zero(a) && self.norm(a).is_zero()
    }

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.div_rem(b, a).1)
    }

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) {
            return a.clone();
        }
        self.mul(&self.normalizing_unit(a), a)
    }
}

/// The ring `Z`, with absolute value as norm (shifted so units have norm 0).
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl EuclideanDomain for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn norm(&self, a: &BigInt) -> BigInt {
        a.abs() - 1
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let (q, r) = a.div_mod_floor(b);
        // Pick the remainder of least absolute value.
        if (&r * BigInt::from(2)).abs() > b.abs() {
            (q + 1, r - b)
        } else {
            (q, r)
        }
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

/// An element `t^shift * (c_0 + c_1 t + ...)` of `k[t, t^-1]` with `c_0 != 0`
/// (the zero element has no coefficients and shift 0).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    shift: i64,
    coeffs: Vec<FieldElem>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { shift: 0, coeffs: Vec::new() }
    }

    /// Builds `t^shift * sum coeffs[i] t^i`, normalizing the representation.
    pub fn new(shift: i64, coeffs: Vec<FieldElem>) -> Self {
        let mut coeffs = upoly::trim(coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if coeffs.is_empty() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly { shift: shift + lead_zeros as i64, coeffs }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(k: i64, c: FieldElem) -> Self {
        Self::new(k, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Coefficients of `t^shift, t^(shift+1), ...`.
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Difference between the highest and lowest exponent.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn field(&self) -> Option<Field> {
        self.coeffs.first().map(FieldElem::field)
    }

    /// From an element of `kZ`.
    pub fn from_elem(a: &GroupRingElem) -> Self {
        assert_eq!(a.group(), GroupDescriptor::FreeAbelian(1), "Laurent polynomials live over kZ");
        let Some(lo) = a.terms().keys().map(|e| e[0]).min() else { return Self::zero() };
        let hi = a.terms().keys().map(|e| e[0]).max().unwrap();
        let mut coeffs = vec![a.field().zero(); (hi - lo + 1) as usize];
        for (e, c) in a.terms() {
            coeffs[(e[0] - lo) as usize] = c.clone();
        }
        Self::new(lo, coeffs)
    }

    pub fn to_elem(&self, field: &Field) -> GroupRingElem {
        GroupRingElem::from_terms(
            GroupDescriptor::FreeAbelian(1),
            field,
            self.coeffs.iter().enumerate().map(|(i, c)| (vec![self.shift + i as i64], c.clone())),
        )
    }

    /// The value at `t = 1`.
    pub fn eval_one(&self, field: &Field) -> FieldElem {
        self.coeffs.iter().fold(field.zero(), |acc, c| &acc + c)
    }

    /// Largest `e` with `(t-1)^e` dividing `self`, and the cofactor.
    pub fn split_t_minus_one(&self, field: &Field) -> (usize, LaurentPoly) {
        assert!(!self.is_zero());
        let x = vec![-field.one(), field.one()];
        let mut cur = self.coeffs.clone();
        let mut e = 0;
        loop {
            let (q, r) = upoly::div_rem(field, &cur, &x);
            if !r.is_empty() {
                return (e, LaurentPoly::new(self.shift, cur));
            }
            cur = q;
            e += 1;
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field() {
            None => write!(f, "0"),
            Some(field) => write!(f, "{}", self.to_elem(&field)),
        }
    }
}

/// The Laurent polynomial ring `k[t, t^-1]`, normed by span; normal forms
/// are monic with lowest exponent 0.
#[derive(Clone, Debug)]
pub struct LaurentRing {
    pub field: Field,
}

impl LaurentRing {
    pub fn new(field: &Field) -> Self {
        LaurentRing { field: field.clone() }
    }
}

impl EuclideanDomain for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::constant(self.field.one())
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let lo = a.shift.min(b.shift);
        let pad = |p: &LaurentPoly| {
            let mut v = vec![self.field.zero(); (p.shift - lo) as usize];
            v.extend(p.coeffs.iter().cloned());
            v
        };
        LaurentPoly::new(lo, upoly::add(&pad(a), &pad(b)))
    }
    fn sub(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let nb = LaurentPoly { shift: b.shift, coeffs: upoly::neg(&b.coeffs) };
        self.add(a, &nb)
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(a.shift + b.shift, upoly::mul(&self.field, &a.coeffs, &b.coeffs))
    }
    fn norm(&self, a: &LaurentPoly) -> BigInt {
        BigInt::from(a.span())
    }
    fn div_rem(&self, a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!b.is_zero(), "Laurent division by zero");
        if a.is_zero() {
            return (LaurentPoly::zero(), LaurentPoly::zero());
        }
        let (q, r) = upoly::div_rem(&self.field, &a.coeffs, &b.coeffs);
        (LaurentPoly::new(a.shift - b.shift, q), LaurentPoly::new(a.shift, r))
    }
    fn normalizing_unit(&self, a: &LaurentPoly) -> LaurentPoly {
        let lead = a.coeffs.last().expect("nonzero").inv().expect("nonzero leading coefficient");
        LaurentPoly::monomial(-a.shift, lead)
    }
}

/// Inverse of a unit, for either domain.
pub fn unit_inverse<D: EuclideanDomain>(d: &D, u: &D::Elem) -> Result<D::Elem> {
    let (q, r) = d.div_rem(&d.one(), u);
    if d.is_zero(&r) && d.mul(&q, u) == d.one() {
        Ok(q)
    } else {
        Err(Error::DivisionByZero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_division() {
        let z = Integers;
        let (q, r) = z.div_rem(&BigInt::from(7), &BigInt::from(-3));
        assert_eq!(q * -3 + &r, BigInt::from(7));
        assert!(r.abs() <= BigInt::from(1));
        assert_eq!(z.normalize(&BigInt::from(-4)), BigInt::from(4));
    }

    #[test]
    fn laurent_division() {
        let q = Field::rationals();
        let lam = LaurentRing::new(&q);
        let g = GroupDescriptor::FreeAbelian(1);
        let a = LaurentPoly::from_elem(&crate::groupring::parse("t^-2*(t^3 + 2*t - 1)", g, &q).unwrap());
        let b = LaurentPoly::from_elem(&crate::groupring::parse("t^5 - t^4", g, &q).unwrap());
        let (quo, rem) = lam.div_rem(&a, &b);
        assert_eq!(lam.add(&lam.mul(&quo, &b), &rem), a);
        assert!(rem.span() < b.span());
        assert_eq!(lam.normalize(&b).to_string(), "t - 1");
        let (e, rest) =
            LaurentPoly::from_elem(&crate::groupring::parse("(t - 1)^2*(t + 1)", g, &q).unwrap()).split_t_minus_one(&q);
        assert_eq!((e, rest.to_string()), (2, "t + 1".to_string()));
        let u = LaurentPoly::monomial(3, q.from_i64(-2));
        let inv = unit_inverse(&lam, &u).unwrap();
        assert_eq!(lam.mul(&u, &inv), lam.one());
    }
}
