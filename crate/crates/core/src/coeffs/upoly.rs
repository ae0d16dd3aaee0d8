//! Dense univariate polynomials over a field, as coefficient vectors with the
//! lowest degree first. The zero polynomial is the empty vector; all results
//! are trimmed of trailing zeros.

use super::{Field, FieldElem};

pub type UPoly = Vec<FieldElem>;

pub fn trim(mut a: UPoly) -> UPoly {
    while a.last().is_some_and(FieldElem::is_zero) {
        a.pop();
    }
    a
}

pub fn degree(a: &[FieldElem]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = &*o + s;
    }
    trim(out)
}

pub fn neg(a: &[FieldElem]) -> UPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    add(a, &neg(b))
}

pub fn scale(a: &[FieldElem], c: &FieldElem) -> UPoly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn mul(field: &Field, a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`. Panics if `b = 0`.
pub fn div_rem(field: &Field, a: &[FieldElem], b: &[FieldElem]) -> (UPoly, UPoly) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("polynomial division by zero");
    let lead_inv = b[db].inv().unwrap();
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&c * bc);
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

/// Returns `(g, u, v)` with `u*a + v*b = g` and `g` a gcd (not normalized).
pub fn ext_gcd(field: &Field, a: &[FieldElem], b: &[FieldElem]) -> (UPoly, UPoly, UPoly) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![field.one()];
    let mut s1: UPoly = Vec::new();
    let mut t0: UPoly = Vec::new();
    let mut t1 = vec![field.one()];
    while !r1.is_empty() {
        let (q, r) = div_rem(field, &r0, &r1);
        let s2 = sub(&s0, &mul(field, &q, &s1));
        let t2 = sub(&t0, &mul(field, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd_monic(field: &Field, a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    let (g, _, _) = ext_gcd(field, a, b);
    make_monic(&g)
}

pub fn make_monic(a: &[FieldElem]) -> UPoly {
    let a = trim(a.to_vec());
    match a.last() {
        None => a,
        Some(l) => {
            let inv = l.inv().unwrap();
            scale(&a, &inv)
        }
    }
}

pub fn eval(field: &Field, a: &[FieldElem], x: &FieldElem) -> FieldElem {
    let mut acc = field.zero();
    for c in a.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(field: &Field, c: &[i64]) -> UPoly {
        trim(c.iter().map(|&x| field.from_i64(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let q = Field::rationals();
        // (t^2 - 1) = (t - 1)(t + 1)
        let a = p(&q, &[-1, 0, 1]);
        let b = p(&q, &[-1, 1]);
        let (quo, rem) = div_rem(&q, &a, &b);
        assert_eq!(quo, p(&q, &[1, 1]));
        assert!(rem.is_empty());
        let c = p(&q, &[1, 2, 1]);
        assert_eq!(gcd_monic(&q, &a, &c), p(&q, &[1, 1]));
        let (g, u, v) = ext_gcd(&q, &a, &c);
        assert_eq!(add(&mul(&q, &u, &a), &mul(&q, &v, &c)), g);
    }

    #[test]
    fn works_over_prime_fields() {
        let f2 = Field::prime(2).unwrap();
        // over F_2, t^2 + 1 = (t + 1)^2
        let a = p(&f2, &[1, 0, 1]);
        let b = p(&f2, &[1, 1]);
        assert_eq!(gcd_monic(&f2, &a, &b), b);
        assert!(eval(&f2, &a, &f2.one()).is_zero());
    }
}
