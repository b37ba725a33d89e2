//! Exact scalar arithmetic over prime fields `F_p` and cyclotomic fields
//! `Q(zeta_N)`.
//!
//! Both backends expose the same element type. Prime residues live in
//! `[0, p)`; cyclotomic elements are rational coefficient vectors of length
//! `phi(N)`, reduced modulo the N-th cyclotomic polynomial. Equality of
//! canonical forms is the equality used everywhere downstream.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements from different fields")]
    MixedFields,
    #[error("no root of unity of order {0} in this field")]
    NoSuchRoot(u64),
    #[error("invalid element encoding: {0}")]
    BadEncoding(String),
}

/// Which field a descriptor denotes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Prime { modulus: u64 },
    Cyclotomic { conductor: u64 },
}

#[derive(Debug)]
struct FieldInner {
    kind: FieldKind,
    /// degree of the extension: 1 for prime fields, phi(N) for cyclotomic.
    degree: usize,
    /// Low coefficients of the monic cyclotomic polynomial Phi_N:
    /// Phi_N = x^degree + sum phi_tail[i] x^i. Empty for prime fields.
    phi_tail: Vec<BigInt>,
}

/// A field descriptor. Cheap to clone; equality compares kind only.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Prime { modulus } => write!(f, "F{}", modulus),
            FieldKind::Cyclotomic { conductor } => write!(f, "Q(zeta_{})", conductor),
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind == other.0.kind
    }
}
impl Eq for Field {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integer polynomial helpers for computing Phi_N. Coefficients are
/// constant-first.
mod zpoly {
    use num::{BigInt, Zero};

    pub fn trim(v: &mut Vec<BigInt>) {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
    }

    /// Exact division; panics on a nonzero remainder (never happens for
    /// cyclotomic factorizations).
    pub fn div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
        let mut rem: Vec<BigInt> = num.to_vec();
        trim(&mut rem);
        let dd = den.len() - 1;
        assert!(!den[dd].is_zero());
        if rem.len() - 1 < dd {
            assert!(rem.iter().all(|c| c.is_zero()));
            return vec![BigInt::zero()];
        }
        let qd = rem.len() - 1 - dd;
        let mut quot = vec![BigInt::zero(); qd + 1];
        for k in (0..=qd).rev() {
            let c = &rem[k + dd] / &den[dd];
            for (i, dc) in den.iter().enumerate() {
                let t = &c * dc;
                rem[k + i] -= t;
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
        quot
    }
}

/// Phi_N as a monic integer polynomial, constant coefficient first.
fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    // x^n - 1 divided by the product of Phi_d for proper divisors d.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut result = num;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d);
            result = zpoly::div_exact(&result, &phi_d);
        }
    }
    result
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldInner {
            kind: FieldKind::Prime { modulus: p },
            degree: 1,
            phi_tail: Vec::new(),
        })))
    }

    pub fn cyclotomic(n: u64) -> Field {
        assert!(n >= 1, "conductor must be positive");
        let phi = cyclotomic_poly(n);
        let degree = phi.len() - 1;
        debug_assert_eq!(degree as u64, euler_phi(n));
        let phi_tail = phi[..degree].to_vec();
        Field(Arc::new(FieldInner {
            kind: FieldKind::Cyclotomic { conductor: n },
            degree,
            phi_tail,
        }))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn characteristic(&self) -> u64 {
        match self.0.kind {
            FieldKind::Prime { modulus } => modulus,
            FieldKind::Cyclotomic { .. } => 0,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        match self.0.kind {
            FieldKind::Prime { modulus } => {
                let r = v.rem_euclid(modulus as i64) as u64;
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Prime(r),
                }
            }
            FieldKind::Cyclotomic { .. } => {
                let mut coeffs = vec![BigRational::zero(); self.0.degree];
                coeffs[0] = BigRational::from(BigInt::from(v));
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Cyclo(coeffs),
                }
            }
        }
    }

    /// Prime-field element from a residue.
    pub fn from_residue(&self, r: u64) -> FieldElement {
        match self.0.kind {
            FieldKind::Prime { modulus } => FieldElement {
                field: self.clone(),
                repr: Repr::Prime(r % modulus),
            },
            _ => panic!("from_residue on a non-prime field"),
        }
    }

    /// The canonical generator zeta of a cyclotomic field (equals 1 when
    /// the conductor is 1).
    pub fn zeta(&self) -> FieldElement {
        match self.0.kind {
            FieldKind::Cyclotomic { .. } => {
                if self.0.degree == 1 {
                    // conductor 1 or 2: zeta is 1 or -1
                    let FieldKind::Cyclotomic { conductor } = self.0.kind else {
                        unreachable!()
                    };
                    return self.from_int(if conductor == 2 { -1 } else { 1 });
                }
                let mut coeffs = vec![BigRational::zero(); self.0.degree];
                coeffs[1] = BigRational::one();
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Cyclo(coeffs),
                }
            }
            _ => panic!("zeta on a prime field"),
        }
    }

    /// Deterministic primitive N-th root of unity: the smallest qualifying
    /// residue in prime fields, zeta^(conductor/N) in cyclotomic fields.
    pub fn root_of_unity(&self, n: u64) -> Result<FieldElement, FieldError> {
        assert!(n >= 1);
        match self.0.kind {
            FieldKind::Prime { modulus } => {
                if (modulus - 1) % n != 0 {
                    return Err(FieldError::NoSuchRoot(n));
                }
                let primes = prime_factors(n);
                for r in 1..modulus {
                    if pow_mod(r, n, modulus) != 1 {
                        continue;
                    }
                    if primes.iter().all(|&q| pow_mod(r, n / q, modulus) != 1) {
                        return Ok(self.from_residue(r));
                    }
                }
                Err(FieldError::NoSuchRoot(n))
            }
            FieldKind::Cyclotomic { conductor } => {
                if conductor % n != 0 {
                    return Err(FieldError::NoSuchRoot(n));
                }
                Ok(self.zeta().pow(conductor / n))
            }
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Prime(u64),
    Cyclo(Vec<BigRational>),
}

/// An exact scalar. Always in canonical form; `==` decides field equality.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordering is only meaningful within one field; used for deterministic
/// sorting of geometric output.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.field
            .kind()
            .cmp(other.field.kind())
            .then_with(|| self.repr.cmp(&other.repr))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Prime(r) => write!(f, "{}", r),
            Repr::Cyclo(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(r) => *r == 0,
            Repr::Cyclo(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    fn assert_same(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "mixed fields: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => {
                let p = self.field.characteristic();
                self.field.from_residue((a + b) % p)
            }
            (Repr::Cyclo(a), Repr::Cyclo(b)) => FieldElement {
                field: self.field.clone(),
                repr: Repr::Cyclo(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match &self.repr {
            Repr::Prime(a) => {
                let p = self.field.characteristic();
                self.field.from_residue((p - a) % p)
            }
            Repr::Cyclo(a) => FieldElement {
                field: self.field.clone(),
                repr: Repr::Cyclo(a.iter().map(|x| -x).collect()),
            },
        }
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => {
                let p = self.field.characteristic() as u128;
                self.field
                    .from_residue((*a as u128 * *b as u128 % p) as u64)
            }
            (Repr::Cyclo(a), Repr::Cyclo(b)) => {
                let deg = self.field.degree();
                let mut conv = vec![BigRational::zero(); 2 * deg - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        conv[i + j] += x * y;
                    }
                }
                reduce_mod_phi(&mut conv, &self.field);
                conv.truncate(deg);
                FieldElement {
                    field: self.field.clone(),
                    repr: Repr::Cyclo(conv),
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match &self.repr {
            Repr::Prime(a) => {
                let p = self.field.characteristic();
                Ok(self.field.from_residue(pow_mod(*a, p - 2, p)))
            }
            Repr::Cyclo(a) => {
                let inv = cyclo_inverse(a, &self.field);
                Ok(FieldElement {
                    field: self.field.clone(),
                    repr: Repr::Cyclo(inv),
                })
            }
        }
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        self.assert_same(rhs);
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Power with a possibly negative exponent; errors on 0^negative.
    pub fn pow_i(&self, exp: i64) -> Result<FieldElement, FieldError> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow((-exp) as u64))
        }
    }

    /// Exact multiplicative order; panics on zero. Desk-scale brute force.
    pub fn multiplicative_order(&self) -> u64 {
        assert!(!self.is_zero());
        let mut acc = self.clone();
        let mut k = 1u64;
        while !acc.is_one() {
            acc = acc.mul(self);
            k += 1;
            assert!(k < 1_000_000, "order search exceeded cap");
        }
        k
    }

    /// Serialized form per the file format: a decimal string for prime
    /// fields, an array of "num/den" strings for cyclotomic fields.
    pub fn to_json(&self) -> serde_json::Value {
        match &self.repr {
            Repr::Prime(r) => serde_json::Value::String(r.to_string()),
            Repr::Cyclo(c) => serde_json::Value::Array(
                c.iter()
                    .map(|x| serde_json::Value::String(format!("{}/{}", x.numer(), x.denom())))
                    .collect(),
            ),
        }
    }

    pub fn from_json(field: &Field, v: &serde_json::Value) -> Result<FieldElement, FieldError> {
        match (field.kind(), v) {
            (FieldKind::Prime { modulus }, serde_json::Value::String(s)) => {
                let r: u64 = s.parse().map_err(|_| FieldError::BadEncoding(s.clone()))?;
                if r >= *modulus {
                    return Err(FieldError::BadEncoding(s.clone()));
                }
                Ok(field.from_residue(r))
            }
            (FieldKind::Cyclotomic { .. }, serde_json::Value::Array(items)) => {
                if items.len() != field.degree() {
                    return Err(FieldError::BadEncoding(format!(
                        "expected {} coefficients, got {}",
                        field.degree(),
                        items.len()
                    )));
                }
                let mut coeffs = Vec::with_capacity(items.len());
                for it in items {
                    let s = it
                        .as_str()
                        .ok_or_else(|| FieldError::BadEncoding(it.to_string()))?;
                    let (num, den) = s
                        .split_once('/')
                        .ok_or_else(|| FieldError::BadEncoding(s.to_string()))?;
                    let num: BigInt = num
                        .parse()
                        .map_err(|_| FieldError::BadEncoding(s.to_string()))?;
                    let den: BigInt = den
                        .parse()
                        .map_err(|_| FieldError::BadEncoding(s.to_string()))?;
                    if den.is_zero() || den.is_negative() {
                        return Err(FieldError::BadEncoding(s.to_string()));
                    }
                    let q = BigRational::new(num, den);
                    coeffs.push(q);
                }
                Ok(FieldElement {
                    field: field.clone(),
                    repr: Repr::Cyclo(coeffs),
                })
            }
            _ => Err(FieldError::BadEncoding(v.to_string())),
        }
    }
}

/// In-place reduction of a coefficient vector modulo Phi_N (monic).
fn reduce_mod_phi(coeffs: &mut Vec<BigRational>, field: &Field) {
    let deg = field.degree();
    let tail = &field.0.phi_tail;
    for i in (deg..coeffs.len()).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut coeffs[i], BigRational::zero());
        for (j, t) in tail.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let delta = &c * BigRational::from(t.clone());
            coeffs[i - deg + j] -= delta;
        }
    }
    coeffs.truncate(deg.max(1));
    while coeffs.len() < deg {
        coeffs.push(BigRational::zero());
    }
}

/// Inverse modulo Phi_N by the extended Euclidean algorithm in Q[x].
fn cyclo_inverse(a: &[BigRational], field: &Field) -> Vec<BigRational> {
    let deg = field.degree();
    let mut phi: Vec<BigRational> = field
        .0
        .phi_tail
        .iter()
        .map(|t| BigRational::from(t.clone()))
        .collect();
    phi.push(BigRational::one());
    if phi.len() == 1 {
        // degree-0 field (the rationals): plain reciprocal
        return vec![BigRational::one() / a[0].clone()];
    }

    fn trim(v: &mut Vec<BigRational>) {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
    }
    fn poly_divmod(
        num: &[BigRational],
        den: &[BigRational],
    ) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = num.to_vec();
        trim(&mut rem);
        let dd = den.len() - 1;
        if rem.len() - 1 < dd || (rem.len() == 1 && rem[0].is_zero()) {
            return (vec![BigRational::zero()], rem);
        }
        let qd = rem.len() - 1 - dd;
        let mut quot = vec![BigRational::zero(); qd + 1];
        for k in (0..=qd).rev() {
            let c = &rem[k + dd] / &den[dd];
            if !c.is_zero() {
                for (i, dc) in den.iter().enumerate() {
                    let t = &c * dc;
                    rem[k + i] -= t;
                }
            }
            quot[k] = c;
        }
        trim(&mut rem);
        (quot, rem)
    }
    fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
    fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    // r0 = phi, r1 = a; s tracks the coefficient of a.
    let mut r0 = phi;
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant (Phi_N is irreducible over Q).
    assert_eq!(r0.len(), 1, "cyclotomic gcd is not constant");
    let scale = BigRational::one() / r0[0].clone();
    let mut inv: Vec<BigRational> = s0.iter().map(|c| c * &scale).collect();
    reduce_mod_phi(&mut inv, field);
    inv.truncate(deg);
    while inv.len() < deg {
        inv.push(BigRational::zero());
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_descriptor_checks_primality() {
        assert!(Field::prime(19).is_ok());
        assert_eq!(Field::prime(4).unwrap_err(), FieldError::NotPrime(4));
        assert!(Field::prime(109).is_ok());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn cyclotomic_degrees() {
        assert_eq!(Field::cyclotomic(9).degree(), 6);
        assert_eq!(Field::cyclotomic(1).degree(), 1);
        assert_eq!(Field::cyclotomic(12).degree(), 4);
    }

    #[test]
    fn phi_9_reduction_rule() {
        // zeta^3 * zeta^3 = zeta^6 = -zeta^3 - 1
        let f = Field::cyclotomic(9);
        let z3 = f.zeta().pow(3);
        let prod = z3.mul(&z3);
        let expected = z3.neg().sub(&f.one());
        assert_eq!(prod, expected);
    }

    #[test]
    fn prime_arith() {
        let f = Field::prime(19).unwrap();
        assert_eq!(f.from_int(4).mul(&f.from_int(5)), f.one());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(19).unwrap();
        for r in 1..19 {
            let x = f.from_residue(r);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        let c = Field::cyclotomic(9);
        let x = c.zeta().pow(4).add(&c.from_int(3));
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert_eq!(c.zero().inv().unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn roots_of_unity() {
        let f19 = Field::prime(19).unwrap();
        assert_eq!(f19.root_of_unity(9).unwrap(), f19.from_residue(4));
        let f13 = Field::prime(13).unwrap();
        assert_eq!(f13.root_of_unity(12).unwrap(), f13.from_residue(2));
        assert_eq!(f19.root_of_unity(5).unwrap_err(), FieldError::NoSuchRoot(5));
        let c9 = Field::cyclotomic(9);
        let w = c9.root_of_unity(3).unwrap();
        assert_eq!(w, c9.zeta().pow(3));
        assert_eq!(w.multiplicative_order(), 3);
    }

    #[test]
    fn root_order_is_exact() {
        for (p, n) in [(19u64, 9u64), (13, 12), (31, 15), (109, 27)] {
            let f = Field::prime(p).unwrap();
            let u = f.root_of_unity(n).unwrap();
            assert!(u.pow(n).is_one());
            for d in 1..n {
                if n % d == 0 {
                    assert!(!u.pow(d).is_one(), "order divides {} in F{}", d, p);
                }
            }
        }
        let c = Field::cyclotomic(9);
        let u = c.root_of_unity(9).unwrap();
        assert!(u.pow(9).is_one());
        assert!(!u.pow(3).is_one());
    }

    #[test]
    fn serialization_roundtrip() {
        let f = Field::prime(19).unwrap();
        let x = f.from_residue(7);
        assert_eq!(FieldElement::from_json(&f, &x.to_json()).unwrap(), x);

        let c = Field::cyclotomic(9);
        let y = c
            .zeta()
            .pow(5)
            .sub(&c.from_int(2))
            .div(&c.from_int(3))
            .unwrap();
        assert_eq!(FieldElement::from_json(&c, &y.to_json()).unwrap(), y);
    }

    #[test]
    fn field_axioms_spot_check() {
        let fields = [Field::prime(19).unwrap(), Field::cyclotomic(9)];
        for f in &fields {
            let xs: Vec<FieldElement> = (0..6)
                .map(|i| match f.kind() {
                    FieldKind::Prime { .. } => f.from_int(3 * i + 2),
                    FieldKind::Cyclotomic { .. } => f.zeta().pow(i as u64).add(&f.from_int(i)),
                })
                .collect();
            for a in &xs {
                for b in &xs {
                    for c in &xs {
                        assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    }
                }
            }
        }
    }
}
