//! Deterministic sample grids and seeded random inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{Cyc, Field, FieldExt};
use crate::ncalgebra::{Monomial, NCPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `±q^j`, `q^j (1 + q)` for `0 <= j < d`, then `2, 3, 1/2`.
pub fn qracah_parameters(field: &Field) -> Vec<Cyc> {
    let d = field.d() as i64;
    let mut out = Vec::new();
    for j in 0..d {
        out.push(field.q_power(j));
    }
    for j in 0..d {
        out.push(-field.q_power(j));
    }
    let one_plus_q = field.one() + field.q();
    for j in 0..d {
        out.push(&field.q_power(j) * &one_plus_q);
    }
    out.extend([field.int(2), field.int(3), field.rational(1, 2)]);
    let mut seen: Vec<Cyc> = Vec::new();
    out.retain(|a| {
        if a.is_zero() || seen.contains(a) {
            false
        } else {
            seen.push(a.clone());
            true
        }
    });
    out
}

/// `count` values `±(r/s) q^j` with small `r, s`.
pub fn scaled_powers(field: &Field, seed: u64, count: usize) -> Vec<Cyc> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let j = rng.gen_range(0..field.d() as i64);
            let num = rng.gen_range(1..=5);
            let den = rng.gen_range(1..=4);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            &field.q_power(j) * &field.rational(sign * num, den)
        })
        .collect()
}

/// A small coefficient: an integer in `[-3, 3]` times a power of q.
pub fn random_coeff(field: &Field, rng: &mut impl Rng) -> Cyc {
    let k = rng.gen_range(-3..=3i64);
    let k = if k == 0 { 1 } else { k };
    &field.q_power(rng.gen_range(0..field.d() as i64)) * &field.int(k)
}

/// A random element with up to `terms` monomials of letter length at most
/// `max_len`, occasionally carrying a central symbol.
pub fn random_ncpoly(field: &Field, rng: &mut impl Rng, max_len: usize, terms: usize) -> NCPoly {
    let mut p = NCPoly::zero(field);
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3u8)).collect();
        let mut central = [0u16; 4];
        if rng.gen_bool(0.2) {
            central[rng.gen_range(0..4)] = 1;
        }
        p.add_term(Monomial::new(letters, central), random_coeff(field, rng));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::make_field;

    #[test]
    fn deterministic() {
        let f = make_field(7).unwrap();
        assert_eq!(scaled_powers(&f, 3, 20), scaled_powers(&f, 3, 20));
        let a = random_ncpoly(&f, &mut rng(1), 5, 4);
        let b = random_ncpoly(&f, &mut rng(1), 5, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn grid_is_nonzero_and_distinct() {
        let f = make_field(6).unwrap();
        let g = qracah_parameters(&f);
        assert!(g.iter().all(|a| !a.is_zero()));
        assert!(g.contains(&f.rational(1, 2)));
    }
}
