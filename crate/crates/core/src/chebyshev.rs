//! The polynomials `T_n(x) = sum_i (-1)^i (C(n-i, i) + C(n-i-1, i-1)) x^(n-2i)`
//! (so that `T_n(z + 1/z) = z^n + z^-n`) and the product identity tying them to
//! q-Racah sequences.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::{Cyc, FieldExt};
use crate::error::{Error, Result};

/// Integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, x: &Cyc) -> Cyc {
        let field = x.field();
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + field.int(c.try_into().expect("coefficient fits in i64"));
        }
        acc
    }

    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| c.try_into().expect("coefficient fits in i64")).collect()
    }
}

/// Binomial coefficient with the conventions C(-1, -1) = 1 and C(n, -1) = 0 for n >= 0.
fn binom(n: i64, k: i64) -> BigInt {
    if k == -1 {
        return if n == -1 { BigInt::one() } else { BigInt::zero() };
    }
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `T_n` from the closed binomial formula.
pub fn cheb_poly(n: usize) -> IntPolynomial {
    let n_i = n as i64;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for i in 0..=(n_i / 2) {
        let c = binom(n_i - i, i) + binom(n_i - i - 1, i - 1);
        let c = if i % 2 == 1 { -c } else { c };
        coeffs[(n_i - 2 * i) as usize] += c;
    }
    IntPolynomial::new(coeffs)
}

pub fn cheb_eval(n: usize, x: &Cyc) -> Cyc {
    cheb_poly(n).eval(x)
}

/// Coefficient-wise difference `prod_i (x - theta_i) + a^dbar + a^-dbar - T_dbar(x)`,
/// indexed by power of x.
#[derive(Debug, Clone)]
pub struct IndexedResidual {
    pub coeffs: Vec<Cyc>,
}

impl IndexedResidual {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Cyc::is_zero)
    }
}

/// Expands `prod_{i mod dbar} (x - theta_i)` for `theta_i = a q^-2i + a^-1 q^2i`,
/// lowest degree first.
pub fn theta_product(a: &Cyc) -> Result<Vec<Cyc>> {
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let field = a.field();
    let a_inv = a.inv()?;
    let mut poly = vec![field.one()];
    for i in 0..field.dbar() as i64 {
        let theta = a * &field.q_power(-2 * i) + &a_inv * &field.q_power(2 * i);
        // multiply by (x - theta)
        let mut next = vec![field.zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(c * &theta);
        }
        poly = next;
    }
    Ok(poly)
}

pub fn factorization_residual(a: &Cyc) -> Result<IndexedResidual> {
    let field = a.field();
    let dbar = field.dbar() as i64;
    let mut poly = theta_product(a)?;
    poly[0] = &poly[0] + &(a.pow(dbar)? + a.pow(-dbar)?);
    let t = cheb_poly(dbar as usize);
    let coeffs = poly
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let tk = t.coeffs.get(k).cloned().unwrap_or_default();
            c - &field.int(tk.try_into().expect("small"))
        })
        .collect();
    Ok(IndexedResidual { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{admissible_orders, make_field};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(cheb_poly(0).coeffs, ints(&[2]));
        assert_eq!(cheb_poly(1).coeffs, ints(&[0, 1]));
        assert_eq!(cheb_poly(2).coeffs, ints(&[-2, 0, 1]));
        // z^3 + z^-3 = (z + 1/z)^3 - 3 (z + 1/z)
        assert_eq!(cheb_poly(3).coeffs, ints(&[0, -3, 0, 1]));
    }

    #[test]
    fn monic_of_degree_n() {
        for n in 1..30 {
            let t = cheb_poly(n);
            assert_eq!(t.degree(), Some(n));
            assert!(t.is_monic());
        }
    }

    #[test]
    fn recurrence_cross_check() {
        let f = make_field(11).unwrap();
        let x = f.q_power(3) + f.rational(2, 5);
        for n in 1..=10 {
            let lhs = cheb_eval(n + 1, &x);
            let rhs = &x * &cheb_eval(n, &x) - cheb_eval(n - 1, &x);
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn evaluation_at_z_plus_inverse() {
        for d in admissible_orders(12) {
            let f = make_field(d).unwrap();
            for k in 0..d as i64 {
                let x = f.q_power(k) + f.q_power(-k);
                for n in 0..=10usize {
                    let expect = f.q_power(k * n as i64) + f.q_power(-k * n as i64);
                    assert_eq!(cheb_eval(n, &x), expect, "d={d} k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn trivial_evaluations() {
        let f = make_field(9).unwrap();
        let x = f.q_power(5) - f.int(7);
        assert_eq!(cheb_eval(0, &x), f.int(2));
        assert_eq!(cheb_eval(1, &x), x);
    }

    #[test]
    fn residual_vanishes_examples() {
        let f = make_field(3).unwrap();
        assert!(factorization_residual(&f.q()).unwrap().is_zero());
        for d in admissible_orders(12) {
            let f = make_field(d).unwrap();
            assert!(factorization_residual(&f.one()).unwrap().is_zero(), "d={d}");
        }
        assert_eq!(factorization_residual(&f.zero()).unwrap_err(), Error::ZeroParameter);
    }

    #[test]
    fn constant_coefficient_restatement() {
        let f = make_field(10).unwrap();
        let a = f.q_power(3) * f.int(2);
        let p = theta_product(&a).unwrap();
        let dbar = f.dbar() as i64;
        let t0 = cheb_eval(dbar as usize, &f.zero());
        assert_eq!(p[0], t0 - a.pow(dbar).unwrap() - a.pow(-dbar).unwrap());
    }
}
