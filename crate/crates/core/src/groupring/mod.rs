//! Group rings `kG` for `G = Z^n` (Laurent polynomials) and `G = Z/m`
//! (`k[t]/(t^m - 1)`), with augmentation, the J-adic valuation and the
//! graded pieces `J^s / J^(s+1)`.

mod filtered;
mod parse;

pub use filtered::{cyclic_power_chain, FilteredAlgebra};
pub use parse::parse_element;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeffs::{prime_power, Field, FieldDescriptor, FieldElem};
use crate::error::{Error, Result};

/// The deck group `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GroupDescriptor {
    FreeAbelian(usize),
    /// `Z/m`; `prime_power` is `Some((p, r))` when `m = p^r`.
    Cyclic {
        m: u64,
        prime_power: Option<(u64, u32)>,
    },
}

impl GroupDescriptor {
    pub fn free_abelian(n: usize) -> Self {
        GroupDescriptor::FreeAbelian(n)
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidDescriptor(format!("Zmod:{m}")));
        }
        Ok(GroupDescriptor::Cyclic { m, prime_power: prime_power(m) })
    }

    /// Number of exponent coordinates.
    pub fn nvars(&self) -> usize {
        match self {
            GroupDescriptor::FreeAbelian(n) => *n,
            GroupDescriptor::Cyclic { .. } => 1,
        }
    }

    pub fn is_integers(&self) -> bool {
        *self == GroupDescriptor::FreeAbelian(1)
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            GroupDescriptor::FreeAbelian(_) => None,
            GroupDescriptor::Cyclic { m, .. } => Some(*m),
        }
    }

    /// Canonical exponent vector (cyclic exponents reduced into `[0, m)`).
    pub fn normalize(&self, mut e: Vec<i64>) -> Vec<i64> {
        if let GroupDescriptor::Cyclic { m, .. } = self {
            e[0] = e[0].rem_euclid(*m as i64);
        }
        e
    }

    /// Variable names used when printing elements.
    pub fn var_name(&self, i: usize) -> String {
        if self.nvars() == 1 {
            "t".to_string()
        } else {
            format!("t{}", i + 1)
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::FreeAbelian(1) => write!(f, "Z"),
            GroupDescriptor::FreeAbelian(n) => write!(f, "Z^{n}"),
            GroupDescriptor::Cyclic { m, .. } => write!(f, "Zmod:{m}"),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidDescriptor(s.to_string());
        if s == "Z" {
            return Ok(GroupDescriptor::FreeAbelian(1));
        }
        if let Some(n) = s.strip_prefix("Z^") {
            return Ok(GroupDescriptor::FreeAbelian(n.parse().map_err(|_| bad())?));
        }
        if let Some(m) = s.strip_prefix("Zmod:") {
            return GroupDescriptor::cyclic(m.parse().map_err(|_| bad())?).map_err(|_| bad());
        }
        Err(bad())
    }
}

impl TryFrom<String> for GroupDescriptor {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GroupDescriptor> for String {
    fn from(g: GroupDescriptor) -> String {
        g.to_string()
    }
}

/// J-adic valuation: the largest `n` with `a` in `J^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(usize),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => write!(f, "{n}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Generalized binomial coefficient `C(e, k)`, valid for negative `e`.
pub fn binomial(e: i64, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(e - i as i64);
        den *= BigInt::from(i as i64 + 1);
    }
    num / den
}

/// An element of `kG`, as a sparse map from exponent vectors to nonzero
/// coefficients.
#[derive(Clone, Debug)]
pub struct GroupRingElem {
    group: GroupDescriptor,
    field: Field,
    terms: BTreeMap<Vec<i64>, FieldElem>,
}

impl PartialEq for GroupRingElem {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.field == other.field && self.terms == other.terms
    }
}

impl Eq for GroupRingElem {}

impl GroupRingElem {
    pub fn zero(group: GroupDescriptor, field: &Field) -> Self {
        GroupRingElem { group, field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(group: GroupDescriptor, field: &Field) -> Self {
        Self::monomial(group, field, vec![0; group.nvars()], field.one())
    }

    pub fn constant(group: GroupDescriptor, c: FieldElem) -> Self {
        let field = c.field();
        Self::monomial(group, &field, vec![0; group.nvars()], c)
    }

    pub fn monomial(group: GroupDescriptor, field: &Field, exps: Vec<i64>, c: FieldElem) -> Self {
        assert_eq!(exps.len(), group.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(group.normalize(exps), c);
        }
        GroupRingElem { group, field: field.clone(), terms }
    }

    /// The group element with exponent vector `exps`.
    pub fn group_element(group: GroupDescriptor, field: &Field, exps: Vec<i64>) -> Self {
        Self::monomial(group, field, exps, field.one())
    }

    /// The variable `t_i` (0-based).
    pub fn var(group: GroupDescriptor, field: &Field, i: usize) -> Self {
        let mut e = vec![0; group.nvars()];
        e[i] = 1;
        Self::group_element(group, field, e)
    }

    /// `g - 1` for the group element with exponent vector `exps`.
    pub fn element_minus_one(group: GroupDescriptor, field: &Field, exps: Vec<i64>) -> Self {
        &Self::group_element(group, field, exps) - &Self::one(group, field)
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, FieldElem)>>(
        group: GroupDescriptor,
        field: &Field,
        terms: I,
    ) -> Self {
        let mut out = Self::zero(group, field);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<i64>, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        let e = self.group.normalize(e);
        let updated = match self.terms.get(&e) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if updated.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, updated);
        }
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, FieldElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self::from_terms(self.group, &self.field, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> FieldElem {
        self.terms.values().fold(self.field.zero(), |acc, c| &acc + c)
    }

    /// Componentwise minimum of the exponent vectors (zero vector for 0).
    pub fn min_exponents(&self) -> Vec<i64> {
        let n = self.group.nvars();
        let mut m = vec![i64::MAX; n];
        for e in self.terms.keys() {
            for i in 0..n {
                m[i] = m[i].min(e[i]);
            }
        }
        m.iter().map(|&x| if x == i64::MAX { 0 } else { x }).collect()
    }

    /// The class of the element in `J/J^2` as a vector over `k`: coordinate
    /// `i` is `sum c_e e_i` (for `Z/m`, exponents are read mod `m`).
    pub fn linear_part(&self) -> Vec<FieldElem> {
        (0..self.group.nvars())
            .map(|i| self.terms.iter().fold(self.field.zero(), |acc, (e, c)| &acc + &(c * &self.field.from_i64(e[i]))))
            .collect()
    }

    /// Coefficients of the expansion in `x_i = t_i - 1` up to total degree
    /// `< bound`, for `G = Z^n`.
    pub fn x_expansion(&self, bound: usize) -> BTreeMap<Vec<usize>, FieldElem> {
        assert!(matches!(self.group, GroupDescriptor::FreeAbelian(_)));
        let n = self.group.nvars();
        let mut out: BTreeMap<Vec<usize>, FieldElem> = BTreeMap::new();
        for (e, c) in &self.terms {
            // Product over variables of sum_k C(e_i, k) x_i^k, truncated.
            let mut partial: Vec<(Vec<usize>, usize, FieldElem)> = vec![(Vec::new(), 0, c.clone())];
            for &ei in e.iter().take(n) {
                let mut next = Vec::new();
                for (alpha, deg, coeff) in &partial {
                    for k in 0..bound - deg {
                        if ei >= 0 && k as i64 > ei {
                            break;
                        }
                        let b = self.field.from_bigint(&binomial(ei, k));
                        if b.is_zero() {
                            continue;
                        }
                        let mut a = alpha.clone();
                        a.push(k);
                        next.push((a, deg + k, coeff * &b));
                    }
                }
                partial = next;
            }
            for (alpha, _, coeff) in partial {
                let entry = out.entry(alpha).or_insert_with(|| self.field.zero());
                *entry = &*entry + &coeff;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The largest `n` with the element in `J^n`.
    pub fn j_valuation(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        match self.group {
            GroupDescriptor::FreeAbelian(_) => {
                // Multiplying by a group element does not change the valuation,
                // and the shifted element is a polynomial whose x-expansion is finite.
                let shift: Vec<i64> = self.min_exponents().iter().map(|x| -x).collect();
                let shifted = self * &Self::group_element(self.group, &self.field, shift);
                let total: i64 = shifted.terms.keys().map(|e| e.iter().sum::<i64>()).max().unwrap();
                let exp = shifted.x_expansion(total as usize + 1);
                let v = exp.keys().map(|a| a.iter().sum::<usize>()).min().expect("nonzero element");
                Valuation::Finite(v)
            }
            GroupDescriptor::Cyclic { m, .. } => {
                let chain = cyclic_power_chain(m, &self.field);
                let v = self.cyclic_vector();
                let last = chain.len() - 1;
                for (s, space) in chain.iter().enumerate().skip(1) {
                    if !space.contains(&v) {
                        return Valuation::Finite(s - 1);
                    }
                    if s == last {
                        break;
                    }
                }
                Valuation::Infinite
            }
        }
    }

    /// Dense coordinates in the monomial basis `1, t, ..., t^(m-1)` of `k[Z/m]`.
    pub fn cyclic_vector(&self) -> Vec<FieldElem> {
        let m = self.group.order().expect("cyclic group") as usize;
        let mut v = vec![self.field.zero(); m];
        for (e, c) in &self.terms {
            v[e[0] as usize] = c.clone();
        }
        v
    }

    /// Image under the homomorphism sending generator `i` to `images[i]`.
    pub fn map_group(&self, target: GroupDescriptor, images: &[Vec<i64>]) -> Self {
        assert_eq!(images.len(), self.group.nvars());
        let k = target.nvars();
        Self::from_terms(
            target,
            &self.field,
            self.terms.iter().map(|(e, c)| {
                let mut out = vec![0i64; k];
                for (ei, img) in e.iter().zip(images) {
                    for j in 0..k {
                        out[j] += ei * img[j];
                    }
                }
                (out, c.clone())
            }),
        )
    }

    /// Image under a coefficient change (rational coefficients only).
    pub fn change_field(&self, field: &Field) -> Result<Self> {
        if self.field == *field {
            return Ok(self.clone());
        }
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            let q = c.as_rational().ok_or_else(|| {
                Error::UnsupportedCoefficients(format!(
                    "cannot map {} coefficients into {}",
                    self.field.descriptor(),
                    field.descriptor()
                ))
            })?;
            terms.push((e.clone(), field.from_rational(&q)?));
        }
        Ok(Self::from_terms(self.group, field, terms))
    }

    /// Evaluates at `t_i = values[i]` in the field of the values.
    pub fn evaluate(&self, values: &[FieldElem]) -> Result<FieldElem> {
        assert_eq!(values.len(), self.group.nvars());
        let Some(target) = values.first().map(FieldElem::field) else {
            return Ok(self.augmentation());
        };
        let mut acc = target.zero();
        for (e, c) in &self.terms {
            let mut term = match c.as_rational() {
                Some(q) => target.from_rational(&q)?,
                None if c.descriptor() == target.descriptor() => c.clone(),
                None => {
                    return Err(Error::DescriptorMismatch(c.descriptor().to_string(), target.descriptor().to_string()))
                }
            };
            for (x, &k) in values.iter().zip(e) {
                term = &term * &x.pow(k)?;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.group, &self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.group, other.group, "group ring elements over different groups");
        assert_eq!(self.field, other.field, "group ring elements over different fields");
    }
}

impl<'a> Add<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &'a GroupRingElem) -> GroupRingElem {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        GroupRingElem {
            group: self.group,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, rhs: &'a GroupRingElem) -> GroupRingElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &'a GroupRingElem) -> GroupRingElem {
        self.assert_compatible(rhs);
        let mut out = GroupRingElem::zero(self.group, &self.field);
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let sum: Vec<i64> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.add_term(sum, &(c * d));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GroupRingElem> for GroupRingElem {
            type Output = GroupRingElem;
            fn $m(self, rhs: GroupRingElem) -> GroupRingElem {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        -&self
    }
}

impl fmt::Display for GroupRingElem {
    /// Monomial syntax, highest terms first: `t^2 - t + 1`, `-3*t1^-2*t2^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(self.group.var_name(i)),
                    _ => mono.push(format!("{}^{}", self.group.var_name(i), k)),
                }
            }
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let mag = if mag.contains(' ') { format!("({mag})") } else { mag };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A graded piece `J^s / J^(s+1)` with representatives of a basis.
#[derive(Clone, Debug)]
pub struct GrPiece {
    pub group: GroupDescriptor,
    pub s: usize,
    /// Representatives in `J^s`; for `Z^n` these are the monomials
    /// `prod (t_i - 1)^(alpha_i)` with `|alpha| = s`.
    pub basis: Vec<GroupRingElem>,
    /// Exponent vectors `alpha` of the representatives in the `x_i = t_i - 1`
    /// variables (for `Z/m`, `[s]`).
    pub labels: Vec<Vec<usize>>,
}

/// All exponent vectors of total degree `s` in `n` variables, in descending
/// lexicographic order (so `x_1` precedes `x_2`).
pub fn monomials_of_degree(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, s: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if s == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if n == 1 {
            prefix.push(s);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=s).rev() {
            prefix.push(k);
            rec(n - 1, s - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, s, &mut Vec::new(), &mut out);
    out
}

fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// `dim_k J^s / J^(s+1)`.
pub fn gr_dimension(group: GroupDescriptor, field: FieldDescriptor, s: usize) -> Result<usize> {
    Ok(match group {
        GroupDescriptor::FreeAbelian(0) => usize::from(s == 0),
        GroupDescriptor::FreeAbelian(n) => binomial_usize(s + n - 1, n - 1),
        GroupDescriptor::Cyclic { m, prime_power: Some((p, _)) } if field.characteristic() == p => {
            usize::from((s as u64) < m)
        }
        GroupDescriptor::Cyclic { m, .. } => {
            let chain = cyclic_power_chain(m, &Field::new(field)?);
            let dim = |i: usize| chain[i.min(chain.len() - 1)].dim();
            dim(s) - dim(s + 1)
        }
    })
}

/// Basis representatives of `J^s / J^(s+1)`.
pub fn gr_piece(group: GroupDescriptor, field: &Field, s: usize) -> GrPiece {
    match group {
        GroupDescriptor::FreeAbelian(n) => {
            let labels = monomials_of_degree(n, s);
            let basis = labels
                .iter()
                .map(|alpha| {
                    alpha.iter().enumerate().fold(GroupRingElem::one(group, field), |acc, (i, &k)| {
                        let mut e = vec![0; n];
                        e[i] = 1;
                        &acc * &GroupRingElem::element_minus_one(group, field, e).pow(k as u32)
                    })
                })
                .collect();
            GrPiece { group, s, basis, labels }
        }
        GroupDescriptor::Cyclic { .. } => {
            let alg = FilteredAlgebra::new(group, field, 0);
            let mut basis = Vec::new();
            let mut labels = Vec::new();
            for i in 0..alg.dim() {
                if alg.degree(i) == Some(s) {
                    basis.push(alg.basis_element(i));
                    labels.push(vec![s]);
                }
            }
            GrPiece { group, s, basis, labels }
        }
    }
}

/// Whether `J` is nilpotent on `k[Z/m]` for this characteristic, i.e. `m`
/// is a power of the characteristic.
pub fn cyclic_is_unipotent(m: u64, characteristic: u64) -> bool {
    matches!(prime_power(m), Some((p, _)) if p == characteristic)
}

/// Parses a group ring element, see [`parse_element`].
pub fn parse(text: &str, group: GroupDescriptor, field: &Field) -> Result<GroupRingElem> {
    parse_element(text, group, field)
}

impl GroupRingElem {
    /// Numerical gcd of all exponents appearing (0 when all are zero).
    pub fn exponent_gcd(&self) -> i64 {
        self.terms.keys().flatten().fold(0i64, |g, &e| g.gcd(&e))
    }

    /// Integer coefficients, when every coefficient is a rational integer.
    pub fn integer_terms(&self) -> Option<BTreeMap<Vec<i64>, BigInt>> {
        self.terms.iter().map(|(e, c)| c.as_integer().map(|z| (e.clone(), z))).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms.values().next().unwrap().is_one()
    }

    /// Largest exponent-vector entry in absolute value.
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().flatten().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// Divides every exponent by `m`, which must divide them all.
    pub fn divide_exponents(&self, m: i64) -> Self {
        assert!(m > 0);
        Self::from_terms(
            self.group,
            &self.field,
            self.terms.iter().map(|(e, c)| {
                debug_assert!(e.iter().all(|x| x % m == 0));
                (e.iter().map(|x| x / m).collect(), c.clone())
            }),
        )
    }
}

impl Zero for Valuation {
    fn zero() -> Self {
        Valuation::Finite(0)
    }
    fn is_zero(&self) -> bool {
        *self == Valuation::Finite(0)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}
