//! Noncommutative polynomials in A, B, C with the central symbols Ω, α, β, γ,
//! and reduction onto the basis `A^i B^j C^k Ω^l α^r β^s γ^t` with `ijk = 0`.

mod census;
mod rewrite;
mod text;

pub use census::{
    basis_census, bounded_pbw_count, graded_quotient_dimension, weighted_pbw_count, Census, QuotientCheck,
};
pub use rewrite::{RewriteSystem, Rule, DEFAULT_DEGREE_CAP};
pub use text::{parse_ncpoly, print_ncpoly};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::chebyshev::cheb_poly;
use crate::cyclotomic::{Cyc, Field, FieldExt};
use crate::error::{Error, Result};

/// Generators of the free part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A = 0,
    B = 1,
    C = 2,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::A, Gen::B, Gen::C];

    pub fn letter(self) -> u8 {
        self as u8
    }

    pub fn symbol(self) -> char {
        ['A', 'B', 'C'][self as usize]
    }
}

/// Central symbols, in the order they are stored in a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Central {
    Omega = 0,
    Alpha = 1,
    Beta = 2,
    Gamma = 3,
}

impl Central {
    pub const ALL: [Central; 4] = [Central::Omega, Central::Alpha, Central::Beta, Central::Gamma];

    pub fn symbol(self) -> char {
        ['W', 'a', 'b', 'g'][self as usize]
    }
}

/// Which of the three defining central combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Defining {
    Alpha,
    Beta,
    Gamma,
}

/// A word in A, B, C followed by a monomial in the central symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    letters: Vec<u8>,
    central: [u16; 4],
    inversions: u32,
}

fn count_inversions(letters: &[u8]) -> u32 {
    let mut seen = [0u32; 3];
    let mut inv = 0;
    for &l in letters {
        // letters greater than l seen earlier form inversions
        inv += seen[(l as usize + 1)..].iter().sum::<u32>();
        seen[l as usize] += 1;
    }
    inv
}

impl Monomial {
    pub fn new(letters: Vec<u8>, central: [u16; 4]) -> Self {
        debug_assert!(letters.iter().all(|&l| l < 3));
        let inversions = count_inversions(&letters);
        Monomial { letters, central, inversions }
    }

    pub fn unit() -> Self {
        Monomial::new(Vec::new(), [0; 4])
    }

    pub fn word(letters: &[Gen]) -> Self {
        Monomial::new(letters.iter().map(|g| g.letter()).collect(), [0; 4])
    }

    /// `A^i B^j C^k Ω^l α^r β^s γ^t`.
    pub fn pbw(i: usize, j: usize, k: usize, central: [u16; 4]) -> Self {
        let mut letters = vec![0u8; i];
        letters.extend(std::iter::repeat_n(1u8, j));
        letters.extend(std::iter::repeat_n(2u8, k));
        Monomial::new(letters, central)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn central(&self) -> [u16; 4] {
        self.central
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The empty word with no central factor.
    pub fn is_unit(&self) -> bool {
        self.letters.is_empty() && !self.has_central()
    }

    pub fn has_central(&self) -> bool {
        self.central.iter().any(|&e| e > 0)
    }

    pub fn inversions(&self) -> u32 {
        self.inversions
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        let mut central = self.central;
        for (c, o) in central.iter_mut().zip(other.central) {
            *c += o;
        }
        Monomial::new(letters, central)
    }

    /// Exponents `(i, j, k)` when the word is of the form `A^i B^j C^k`.
    pub fn pbw_exponents(&self) -> Option<(usize, usize, usize)> {
        if self.inversions != 0 {
            return None;
        }
        let mut e = [0usize; 3];
        for &l in &self.letters {
            e[l as usize] += 1;
        }
        Some((e[0], e[1], e[2]))
    }

    /// True for the basis words `A^i B^j C^k` with `ijk = 0`.
    pub fn is_pbw(&self) -> bool {
        matches!(self.pbw_exponents(), Some((i, j, k)) if i * j * k == 0)
    }

    /// Weight used by the graded quotient: letters 1, Ω 3, α β γ 2.
    pub fn weight(&self) -> usize {
        self.letters.len()
            + 3 * self.central[0] as usize
            + 2 * (self.central[1] + self.central[2] + self.central[3]) as usize
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then(self.inversions.cmp(&other.inversions))
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.central.cmp(&other.central))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::print_monomial(self))
    }
}

/// A finite linear combination of monomials with coefficients in Q(q).
#[derive(Clone)]
pub struct NCPoly {
    field: Field,
    terms: BTreeMap<Monomial, Cyc>,
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.d() == other.field.d() && self.terms == other.terms
    }
}

impl Eq for NCPoly {}

impl NCPoly {
    pub fn zero(field: &Field) -> Self {
        NCPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> Self {
        NCPoly::scalar(field.one())
    }

    pub fn scalar(c: Cyc) -> Self {
        let field = c.field().clone();
        NCPoly::term(&field, Monomial::unit(), c)
    }

    pub fn term(field: &Field, m: Monomial, c: Cyc) -> Self {
        let mut p = NCPoly::zero(field);
        p.add_term(m, c);
        p
    }

    pub fn monomial(field: &Field, m: Monomial) -> Self {
        NCPoly::term(field, m, field.one())
    }

    pub fn gen(field: &Field, g: Gen) -> Self {
        NCPoly::monomial(field, Monomial::word(&[g]))
    }

    pub fn central(field: &Field, c: Central) -> Self {
        let mut e = [0u16; 4];
        e[c as usize] = 1;
        NCPoly::monomial(field, Monomial::new(Vec::new(), e))
    }

    /// Product of generators, e.g. `word(&[A, B])` is `AB`.
    pub fn word(field: &Field, letters: &[Gen]) -> Self {
        NCPoly::monomial(field, Monomial::word(letters))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Cyc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Cyc {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest monomial in the termination order.
    pub fn leading(&self) -> Option<(&Monomial, &Cyc)> {
        self.terms.iter().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Monomial, Cyc> {
        self.terms
    }

    fn check_field(&self, other: &NCPoly) -> Result<()> {
        if self.field.d() != other.field.d() {
            Err(Error::ContextMismatch(self.field.d(), other.field.d()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyc) -> NCPoly {
        let mut out = NCPoly::zero(&self.field);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -&*v;
        }
        out
    }

    /// Bilinear concatenation product; central symbols commute and collect on the right.
    pub fn multiply(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_field(other)?;
        let mut out = NCPoly::zero(&self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `self * other - other * self`, not reduced.
    pub fn commutator(&self, other: &NCPoly) -> Result<NCPoly> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    pub fn pow(&self, n: usize) -> NCPoly {
        let mut acc = NCPoly::one(&self.field);
        for _ in 0..n {
            acc = acc.multiply(self).expect("same field");
        }
        acc
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ncpoly(self))
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ncpoly(self))
    }
}

fn q2_minus_q2inv(field: &Field) -> Cyc {
    field.q_power(2) - field.q_power(-2)
}

fn q_plus_qinv(field: &Field) -> Cyc {
    field.q() + field.q_power(-1)
}

/// `(q + q^-1) X + (q + q^-1)(q Y Z - q^-1 Z Y)/(q^2 - q^-2)` for the cyclic
/// triple `(X, Y, Z)` associated with `which`.
pub fn defining_element(field: &Field, which: Defining) -> NCPoly {
    let (x, y, z) = match which {
        Defining::Alpha => (Gen::A, Gen::B, Gen::C),
        Defining::Beta => (Gen::B, Gen::C, Gen::A),
        Defining::Gamma => (Gen::C, Gen::A, Gen::B),
    };
    let s = q_plus_qinv(field);
    let t = &s * &q2_minus_q2inv(field).inv().expect("q^4 != 1");
    let mut p = NCPoly::zero(field);
    p.add_term(Monomial::word(&[x]), s);
    p.add_term(Monomial::word(&[y, z]), &t * &field.q());
    p.add_term(Monomial::word(&[z, y]), -(&t * &field.q_power(-1)));
    p
}

/// The Casimir element `qABC + q^2A^2 + q^-2B^2 + q^2C^2 - qAα - q^-1Bβ - qCγ`.
pub fn casimir(field: &Field) -> NCPoly {
    use Gen::*;
    let mut p = NCPoly::zero(field);
    let q = |k| field.q_power(k);
    p.add_term(Monomial::word(&[A, B, C]), q(1));
    p.add_term(Monomial::word(&[A, A]), q(2));
    p.add_term(Monomial::word(&[B, B]), q(-2));
    p.add_term(Monomial::word(&[C, C]), q(2));
    p.add_term(Monomial::new(vec![0], [0, 1, 0, 0]), -q(1));
    p.add_term(Monomial::new(vec![1], [0, 0, 1, 0]), -q(-1));
    p.add_term(Monomial::new(vec![2], [0, 0, 0, 1]), -q(1));
    p
}

/// The right-hand sides of the formulas expressing α and β through A, B and γ.
pub fn alpha_from_ab_gamma(field: &Field) -> NCPoly {
    eliminated_formula(field, Gen::A, Gen::B)
}

pub fn beta_from_ab_gamma(field: &Field) -> NCPoly {
    eliminated_formula(field, Gen::B, Gen::A)
}

/// `(Y^2 X - (q^2+q^-2) Y X Y + X Y^2 + (q^2-q^-2)^2 X + (q-q^-1)^2 Y γ)
///   / ((q-q^-1)(q^2-q^-2))`.
fn eliminated_formula(field: &Field, x: Gen, y: Gen) -> NCPoly {
    let q = |k| field.q_power(k);
    let qm = q(1) - q(-1);
    let q2m = q2_minus_q2inv(field);
    let den = (&qm * &q2m).inv().expect("q^4 != 1");
    let mut p = NCPoly::zero(field);
    p.add_term(Monomial::word(&[y, y, x]), den.clone());
    p.add_term(Monomial::word(&[y, x, y]), -(&(q(2) + q(-2)) * &den));
    p.add_term(Monomial::word(&[x, y, y]), den.clone());
    p.add_term(Monomial::word(&[x]), &(&q2m * &q2m) * &den);
    p.add_term(Monomial::new(vec![y.letter()], [0, 0, 0, 1]), &(&qm * &qm) * &den);
    p
}

/// `T_n(g)` as a polynomial in the single generator `g`.
pub fn cheb_image(field: &Field, g: Gen, n: usize) -> NCPoly {
    let t = cheb_poly(n);
    let mut p = NCPoly::zero(field);
    for (k, c) in t.coeffs.iter().enumerate() {
        let c: i64 = c.try_into().expect("small coefficient");
        p.add_term(Monomial::new(vec![g.letter(); k], [0; 4]), field.int(c));
    }
    p
}

/// Evaluates a polynomial with field coefficients (lowest degree first) at `x`.
pub fn poly_image(x: &NCPoly, coeffs: &[Cyc]) -> NCPoly {
    let field = x.field().clone();
    let mut acc = NCPoly::zero(&field);
    for c in coeffs.iter().rev() {
        acc = acc.multiply(x).expect("same field");
        acc.add_term(Monomial::unit(), c.clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::make_field;

    #[test]
    fn product_and_unit() {
        let f = make_field(5).unwrap();
        let a = NCPoly::gen(&f, Gen::A);
        let b = NCPoly::gen(&f, Gen::B);
        assert_eq!(a.multiply(&b).unwrap(), NCPoly::word(&f, &[Gen::A, Gen::B]));
        let p = a.add(&b.scale(&f.q())).unwrap();
        assert_eq!(NCPoly::one(&f).multiply(&p).unwrap(), p);
        assert!(a.commutator(&a).unwrap().is_zero());
    }

    #[test]
    fn central_symbol_collects_right() {
        let f = make_field(5).unwrap();
        let g = NCPoly::central(&f, Central::Gamma);
        let a = NCPoly::gen(&f, Gen::A);
        let ga = g.multiply(&a).unwrap();
        let ag = a.multiply(&g).unwrap();
        assert_eq!(ga, ag);
        let (m, _) = ga.leading().unwrap();
        assert_eq!(m.letters(), &[0]);
        assert_eq!(m.central(), [0, 0, 0, 1]);
    }

    #[test]
    fn casimir_abc_coefficient_is_q() {
        let f = make_field(7).unwrap();
        let c = casimir(&f);
        assert_eq!(c.coeff(&Monomial::word(&[Gen::A, Gen::B, Gen::C])), f.q());
    }

    #[test]
    fn gamma_defining_element_shape() {
        let f = make_field(8).unwrap();
        let g = defining_element(&f, Defining::Gamma);
        let s = q_plus_qinv(&f);
        let t = &s * &q2_minus_q2inv(&f).inv().unwrap();
        assert_eq!(g.coeff(&Monomial::word(&[Gen::C])), s);
        assert_eq!(g.coeff(&Monomial::word(&[Gen::A, Gen::B])), &t * &f.q());
        assert_eq!(g.coeff(&Monomial::word(&[Gen::B, Gen::A])), -(&t * &f.q_power(-1)));
    }

    #[test]
    fn alpha_beta_swap_symmetry() {
        // Swapping A and B together with q -> q^-1 exchanges the alpha and beta
        // formulas; over the power basis q^-1 is the Galois image of q, so we
        // compare coefficients of the swapped words directly.
        let f = make_field(9).unwrap();
        let a = alpha_from_ab_gamma(&f);
        let b = beta_from_ab_gamma(&f);
        let swap = |m: &Monomial| {
            Monomial::new(
                m.letters()
                    .iter()
                    .map(|&l| {
                        if l == 0 {
                            1
                        } else if l == 1 {
                            0
                        } else {
                            l
                        }
                    })
                    .collect(),
                m.central(),
            )
        };
        for (m, c) in a.terms() {
            assert_eq!(&b.coeff(&swap(m)), c);
        }
    }

    #[test]
    fn inversion_count() {
        assert_eq!(count_inversions(&[1, 0]), 1);
        assert_eq!(count_inversions(&[2, 1, 0]), 3);
        assert_eq!(count_inversions(&[0, 1, 1, 2]), 0);
    }

    #[test]
    fn cheb_image_small() {
        let f = make_field(5).unwrap();
        assert_eq!(cheb_image(&f, Gen::A, 0), NCPoly::scalar(f.int(2)));
        assert_eq!(cheb_image(&f, Gen::A, 1), NCPoly::gen(&f, Gen::A));
    }
}
