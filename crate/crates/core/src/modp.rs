//! Reduction of Q(q) modulo a prime `p ≡ 1 (mod d)`, where `q` maps to an
//! element of order exactly `d`. Ranks computed here are lower bounds for the
//! ranks over Q(q), which makes them usable as a one-sided certificate.

use crate::cyclotomic::Field;
use crate::linalg::ExactMatrix;

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone)]
pub struct ModP {
    pub p: u64,
    pub zeta: u64,
    powers: Vec<u64>,
}

impl ModP {
    /// The largest prime below 2^31 that is 1 mod d, with the smallest
    /// generator-derived element of order d.
    pub fn for_field(field: &Field) -> Self {
        let d = field.d() as u64;
        let mut p = (1u64 << 31) - 1;
        p -= (p - 1) % d;
        while !is_prime(p) {
            p -= d;
        }
        let factors = prime_factors(d);
        let zeta = (2..p)
            .map(|g| pow_mod(g, (p - 1) / d, p))
            .find(|&z| factors.iter().all(|&r| pow_mod(z, d / r, p) != 1))
            .expect("an element of order d exists");
        let powers = (0..field.phi() as u64).map(|k| pow_mod(zeta, k, p)).collect();
        ModP { p, zeta, powers }
    }

    /// Entries of `m` reduced mod p, row-major.
    pub fn reduce(&self, m: &ExactMatrix) -> Option<Vec<u64>> {
        m.entries().iter().map(|c| c.reduce_mod(self.p, &self.powers)).collect()
    }

    pub fn mat_mul(&self, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
        let p = self.p as u128;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k] as u128;
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let cell = &mut out[i * n + j];
                    *cell = ((*cell as u128 + x * b[k * n + j] as u128) % p) as u64;
                }
            }
        }
        out
    }
}

/// Row echelon basis over F_p.
#[derive(Debug, Clone)]
pub struct EchelonModP {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonModP {
    pub fn new(p: u64) -> Self {
        EchelonModP { p, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p as u128;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let c = v[*piv] as u128;
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = ((*x as u128 + (p - c) * *y as u128) % p) as u64;
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv_mod(v[piv], self.p) as u128;
        for x in v.iter_mut() {
            *x = (*x as u128 * s % p) as u64;
        }
        self.rows.push((piv, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{make_field, FieldExt};

    #[test]
    fn zeta_has_order_d() {
        for d in [3, 5, 6, 7, 8, 12] {
            let f = make_field(d).unwrap();
            let m = ModP::for_field(&f);
            assert_eq!(m.p % d as u64, 1);
            assert_eq!(pow_mod(m.zeta, d as u64, m.p), 1);
            for k in 1..d as u64 {
                assert_ne!(pow_mod(m.zeta, k, m.p), 1);
            }
        }
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let f = make_field(7).unwrap();
        let m = ModP::for_field(&f);
        let x = f.q_power(3) + f.rational(2, 5);
        let y = f.q_power(-2) - f.int(7);
        let r = |c: &crate::cyclotomic::Cyc| c.reduce_mod(m.p, &m.powers).unwrap();
        assert_eq!(r(&(&x * &y)), (r(&x) as u128 * r(&y) as u128 % m.p as u128) as u64);
        assert_eq!(r(&(&x + &y)), (r(&x) + r(&y)) % m.p);
        assert_eq!(r(&f.q()), m.zeta);
    }
}
