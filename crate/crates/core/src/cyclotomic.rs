//! Exact arithmetic in Q(q) with q a primitive d-th root of unity.
//!
//! Elements are stored as an integer coefficient vector over the power basis
//! `1, q, ..., q^(phi-1)` together with a single positive common denominator.
//! The pair is kept in lowest terms, so equality is componentwise.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shared handle to a field context.
pub type Field = Arc<FieldContext>;

/// The field Q[x]/(Phi_d) together with the derived constants d̄ and phi.
#[derive(Debug)]
pub struct FieldContext {
    d: u32,
    dbar: u32,
    phi: usize,
    /// Coefficients of Phi_d, lowest degree first; monic of degree `phi`.
    modulus: Vec<BigInt>,
    /// `x^(phi + k)` reduced modulo Phi_d for `k = 0 .. phi - 1`.
    high_powers: Vec<Vec<BigInt>>,
}

/// Builds the field context for a primitive d-th root of unity.
///
/// Orders with `q^4 = 1` (d in {1, 2, 4}) are rejected.
pub fn make_field(d: u32) -> Result<Field> {
    if d == 0 || d == 1 || d == 2 || d == 4 {
        return Err(Error::DisallowedOrder(d));
    }
    let modulus = cyclotomic_polynomial(d);
    let phi = modulus.len() - 1;
    let mut high_powers = Vec::with_capacity(phi);
    // x^phi = -(m_0 + m_1 x + ... + m_{phi-1} x^{phi-1})
    let mut cur: Vec<BigInt> = modulus[..phi].iter().map(|c| -c).collect();
    for _ in 0..phi {
        high_powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1].clone();
        let mut next = vec![BigInt::zero(); phi];
        for k in (1..phi).rev() {
            next[k] = cur[k - 1].clone();
        }
        if !top.is_zero() {
            for k in 0..phi {
                next[k] -= &top * &modulus[k];
            }
        }
        cur = next;
    }
    let dbar = if d.is_multiple_of(2) { d / 2 } else { d };
    Ok(Arc::new(FieldContext { d, dbar, phi, modulus, high_powers }))
}

/// The d-th cyclotomic polynomial, by dividing x^d - 1 by Phi_e for every
/// proper divisor e of d.
pub fn cyclotomic_polynomial(d: u32) -> Vec<BigInt> {
    assert!(d > 0);
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = BigInt::from(-1);
    num[d as usize] = BigInt::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            let div = cyclotomic_polynomial(e);
            num = exact_div_monic(&num, &div);
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dd {
            rem[k + j] -= &c * &den[j];
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

impl FieldContext {
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Multiplicative order of q².
    pub fn dbar(&self) -> u32 {
        self.dbar
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// Constructors that need the shared handle.
pub trait FieldExt {
    fn zero(&self) -> Cyc;
    fn one(&self) -> Cyc;
    fn int(&self, n: i64) -> Cyc;
    fn rational(&self, num: i64, den: i64) -> Cyc;
    fn q(&self) -> Cyc;
    fn q_power(&self, k: i64) -> Cyc;
}

impl FieldExt for Field {
    fn zero(&self) -> Cyc {
        Cyc::zero(self)
    }

    fn one(&self) -> Cyc {
        self.int(1)
    }

    fn int(&self, n: i64) -> Cyc {
        let mut num = vec![BigInt::zero(); self.phi];
        num[0] = BigInt::from(n);
        Cyc::from_parts(self.clone(), num, BigInt::one())
    }

    fn rational(&self, num: i64, den: i64) -> Cyc {
        assert!(den != 0, "zero denominator");
        let mut v = vec![BigInt::zero(); self.phi];
        v[0] = BigInt::from(num);
        Cyc::from_parts(self.clone(), v, BigInt::from(den))
    }

    fn q(&self) -> Cyc {
        self.q_power(1)
    }

    /// q^k for any integer k, reduced.
    fn q_power(&self, k: i64) -> Cyc {
        let e = k.rem_euclid(self.d as i64) as usize;
        let mut num = vec![BigInt::zero(); self.phi];
        if e < self.phi {
            num[e] = BigInt::one();
        } else {
            let mut long = vec![BigInt::zero(); e + 1];
            long[e] = BigInt::one();
            num = self.reduce_long(long);
        }
        Cyc::from_parts(self.clone(), num, BigInt::one())
    }
}

impl FieldContext {
    /// Reduce an integer polynomial of arbitrary degree modulo Phi_d.
    fn reduce_long(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        while p.len() > 2 * phi - 1 {
            // peel the top coefficient using the monic modulus
            let top = p.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - phi;
            for j in 0..phi {
                p[shift + j] -= &top * &self.modulus[j];
            }
        }
        let mut out: Vec<BigInt> = p.iter().take(phi).cloned().collect();
        out.resize(phi, BigInt::zero());
        for (k, c) in p.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (o, h) in out.iter_mut().zip(&self.high_powers[k - phi]) {
                *o += c * h;
            }
        }
        out
    }
}

/// An element of Q(q) in canonical reduced form.
#[derive(Clone)]
pub struct Cyc {
    field: Field,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyc {
    pub fn zero(field: &Field) -> Cyc {
        Cyc { field: field.clone(), num: vec![BigInt::zero(); field.phi], den: BigInt::one() }
    }

    fn from_parts(field: Field, num: Vec<BigInt>, den: BigInt) -> Cyc {
        let mut c = Cyc { field, num, den };
        c.normalize();
        c
    }

    /// Builds an element from rational coefficients of `1, q, q^2, ...`.
    /// Any length is accepted; the result is reduced modulo Phi_d.
    pub fn from_rationals(field: &Field, coeffs: &[BigRational]) -> Cyc {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let long: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let num = if long.len() <= field.phi {
            let mut v = long;
            v.resize(field.phi, BigInt::zero());
            v
        } else {
            field.reduce_long(long)
        };
        Cyc::from_parts(field.clone(), num, den)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Rational coefficients of `1, q, ..., q^(phi-1)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    /// Image under `q -> zeta` in F_p, given `powers[k] = zeta^k mod p`;
    /// `None` when p divides the denominator.
    pub fn reduce_mod(&self, p: u64, powers: &[u64]) -> Option<u64> {
        let pb = BigInt::from(p);
        let red = |x: &BigInt| -> u64 { x.mod_floor(&pb).try_into().expect("below p") };
        let den = red(&self.den);
        if den == 0 {
            return None;
        }
        let mut acc: u128 = 0;
        for (c, z) in self.num.iter().zip(powers) {
            acc = (acc + red(c) as u128 * *z as u128) % p as u128;
        }
        Some((acc * crate::modp::inv_mod(den, p) as u128 % p as u128) as u64)
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn same_field(&self, other: &Cyc) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.d == other.field.d {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.field.d, other.field.d))
        }
    }

    pub fn checked_add(&self, other: &Cyc) -> Result<Cyc> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Cyc) -> Result<Cyc> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Cyc) -> Result<Cyc> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Cyc) -> Result<Cyc> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Cyc, negate: bool) -> Cyc {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let (num, den) = if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| if negate { a - b } else { a + b }).collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        Cyc::from_parts(self.field.clone(), num, den)
    }

    fn mul_unchecked(&self, other: &Cyc) -> Cyc {
        if self.is_zero() || other.is_zero() {
            return Cyc::zero(&self.field);
        }
        let phi = self.field.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let num = self.field.reduce_long(prod);
        Cyc::from_parts(self.field.clone(), num, &self.den * &other.den)
    }

    /// Scales by an integer.
    pub fn scale_int(&self, k: i64) -> Cyc {
        let k = BigInt::from(k);
        let num = self.num.iter().map(|c| c * &k).collect();
        Cyc::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over Q[x].
    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = &self.field;
        let to_q =
            |v: &[BigInt]| -> Vec<BigRational> { v.iter().map(|c| BigRational::from_integer(c.clone())).collect() };
        // Invariant: s * self.num ≡ r (mod Phi)
        let mut r0 = trim(to_q(&field.modulus));
        let mut r1 = trim(to_q(&self.num));
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1) {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, trim(rem));
            s0 = std::mem::replace(&mut s1, trim(s2));
            debug_assert!(!r1.is_empty(), "Phi_d is irreducible so the gcd is a unit");
        }
        // s1 * num ≡ r1 (a nonzero constant); inverse of num/den is den * s1 / r1
        let c = r1[0].clone();
        let scale = BigRational::from_integer(self.den.clone()) / c;
        let coeffs: Vec<BigRational> = s1.into_iter().map(|x| x * &scale).collect();
        Ok(Cyc::from_rationals(field, &coeffs))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Cyc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Reduction is performed on construction; this re-runs it and is the identity
    /// on canonical values.
    pub fn reduced(&self) -> Cyc {
        let mut coeffs = self.coeffs();
        coeffs.resize(self.field.phi, BigRational::zero());
        Cyc::from_rationals(&self.field, &coeffs)
    }

    pub fn to_json(&self) -> CycJson {
        CycJson {
            d: self.field.d,
            coeffs: self.coeffs().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect(),
        }
    }

    pub fn from_json(field: &Field, json: &CycJson) -> Result<Cyc> {
        if json.d != field.d {
            return Err(Error::ContextMismatch(json.d, field.d));
        }
        if json.coeffs.len() != field.phi {
            return Err(Error::parse(0, format!("expected {} coefficients, got {}", field.phi, json.coeffs.len())));
        }
        let mut coeffs = Vec::with_capacity(field.phi);
        for (i, s) in json.coeffs.iter().enumerate() {
            coeffs.push(parse_rational(s).ok_or_else(|| Error::parse(i, format!("bad rational {s:?}")))?);
        }
        Ok(Cyc::from_rationals(field, &coeffs))
    }
}

/// JSON encoding `{"d": <int>, "coeffs": ["<num>/<den>", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycJson {
    pub d: u32,
    pub coeffs: Vec<String>,
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead = &b[db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            rem[k + j] -= &c * &b[j];
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (quot, rem)
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        self.field.d == other.field.d && self.den == other.den && self.num == other.num
    }
}

impl Eq for Cyc {}

impl Hash for Cyc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.d.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[d={}]({})", self.field.d, crate::text::print_qexpr(self))
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::print_qexpr(self))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Cyc> for &Cyc {
            type Output = Cyc;
            fn $method(self, rhs: &Cyc) -> Cyc {
                if let Err(e) = self.same_field(rhs) {
                    panic!("{e}");
                }
                $body(self, rhs)
            }
        }
        impl $trait<Cyc> for Cyc {
            type Output = Cyc;
            fn $method(self, rhs: Cyc) -> Cyc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyc> for Cyc {
            type Output = Cyc;
            fn $method(self, rhs: &Cyc) -> Cyc {
                (&self).$method(rhs)
            }
        }
        impl $trait<Cyc> for &Cyc {
            type Output = Cyc;
            fn $method(self, rhs: Cyc) -> Cyc {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Cyc, b: &Cyc| a.add_unchecked(b, false));
binop!(Sub, sub, |a: &Cyc, b: &Cyc| a.add_unchecked(b, true));
binop!(Mul, mul, |a: &Cyc, b: &Cyc| a.mul_unchecked(b));

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { field: self.field.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

/// Admissible orders (d ∉ {1, 2, 4}) up to and including `max`.
pub fn admissible_orders(max: u32) -> Vec<u32> {
    (3..=max).filter(|&d| d != 4).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn field_constants() {
        let f = make_field(6).unwrap();
        assert_eq!(f.dbar(), 3);
        assert_eq!(f.phi(), 2);
        let f3 = make_field(3).unwrap();
        assert_eq!(f3.modulus(), &ints(&[1, 1, 1])[..]);
        assert_eq!(f3.dbar(), 3);
        for bad in [1, 2, 4] {
            assert_eq!(make_field(bad).unwrap_err(), Error::DisallowedOrder(bad));
        }
    }

    #[test]
    fn modulus_divides_x_d_minus_one() {
        for d in admissible_orders(24) {
            let f = make_field(d).unwrap();
            assert!(f.q_power(d as i64).is_one());
            assert!(f.q_power(0).is_one());
            let m = f.modulus();
            assert!(m.last().unwrap().is_one());
            assert_eq!(m.len() - 1, f.phi());
        }
    }

    #[test]
    fn q_squared_has_order_dbar() {
        for d in admissible_orders(24) {
            let f = make_field(d).unwrap();
            let dbar = f.dbar() as i64;
            assert!(f.q_power(2 * dbar).is_one());
            for k in 1..dbar {
                assert!(!f.q_power(2 * k).is_one(), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn d3_square_of_q() {
        let f = make_field(3).unwrap();
        let q = f.q();
        let expect = -f.one() - f.q();
        assert_eq!(&q * &q, expect);
    }

    #[test]
    fn inverse_of_q_is_q_to_d_minus_one() {
        for d in admissible_orders(16) {
            let f = make_field(d).unwrap();
            assert_eq!(f.q().inv().unwrap(), f.q_power(d as i64 - 1));
        }
    }

    #[test]
    fn q_dbar_sign() {
        for d in admissible_orders(24) {
            let f = make_field(d).unwrap();
            let v = f.q_power(f.dbar() as i64);
            if d % 2 == 0 {
                assert_eq!(v, -f.one(), "d={d}");
            } else {
                assert!(v.is_one());
            }
        }
    }

    #[test]
    fn inverse_errors_and_mismatch() {
        let f = make_field(5).unwrap();
        assert_eq!(f.zero().inv().unwrap_err(), Error::DivisionByZero);
        let g = make_field(7).unwrap();
        assert_eq!(f.q().checked_add(&g.q()).unwrap_err(), Error::ContextMismatch(5, 7));
    }

    #[test]
    fn json_roundtrip_and_lowest_terms() {
        let f = make_field(8).unwrap();
        let x = f.rational(2, 4) + f.q_power(3).scale_int(-6);
        let j = x.to_json();
        assert_eq!(j.coeffs, vec!["1/2", "0/1", "0/1", "-6/1"]);
        assert_eq!(Cyc::from_json(&f, &j).unwrap(), x);
    }

    #[test]
    fn additive_inverse() {
        let f = make_field(9).unwrap();
        let x = f.q_power(4) + f.rational(3, 7);
        assert!((&x + &(-&x)).is_zero());
    }
}
