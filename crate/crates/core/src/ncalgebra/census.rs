//! Basis counts, and an independent check of the rewriter by linear algebra
//! in a graded quotient of the free algebra.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::rewrite::{base_relations, RewriteSystem};
use super::{Monomial, NCPoly};
use crate::cyclotomic::{Cyc, Field, FieldExt};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Irreducible words in A, B, C with every letter count below d̄.
    pub bounded: usize,
    /// Irreducible words in A, B, C of length at most N.
    pub normal_words_upto_n: usize,
}

/// Closed count of `(i, j, k)` in `[0, dbar)^3` with `ijk = 0`.
pub fn bounded_pbw_count(dbar: usize) -> usize {
    let mut n = 0;
    for i in 0..dbar {
        for j in 0..dbar {
            for k in 0..dbar {
                if i * j * k == 0 {
                    n += 1;
                }
            }
        }
    }
    n
}

/// Walks irreducible words of `sys` (a prefix-closed set) and counts them.
pub fn basis_census(sys: &RewriteSystem, n: usize) -> Census {
    let dbar = sys.field().dbar() as usize;
    let max_len = n.max(3 * dbar.saturating_sub(1)).min(sys.cap());
    let mut bounded = 0;
    let mut normal = 0;
    let mut stack: Vec<(Vec<u8>, [usize; 3])> = vec![(Vec::new(), [0; 3])];
    while let Some((w, counts)) = stack.pop() {
        if counts.iter().all(|&c| c < dbar) {
            bounded += 1;
        }
        if w.len() <= n {
            normal += 1;
        }
        if w.len() == max_len {
            continue;
        }
        for l in 0..3u8 {
            let mut v = w.clone();
            v.push(l);
            if sys.is_irreducible(&v) {
                let mut c = counts;
                c[l as usize] += 1;
                stack.push((v, c));
            }
        }
    }
    Census { bounded, normal_words_upto_n: normal }
}

/// Central exponent vectors `(l, r, s, t)` with `3l + 2(r + s + t) <= budget`.
fn central_monomials(budget: usize) -> Vec<[u16; 4]> {
    let mut out = Vec::new();
    for l in 0..=budget / 3 {
        let rest = (budget - 3 * l) / 2;
        for r in 0..=rest {
            for s in 0..=rest - r {
                for t in 0..=rest - r - s {
                    out.push([l as u16, r as u16, s as u16, t as u16]);
                }
            }
        }
    }
    out
}

fn words_upto(n: usize) -> Vec<Vec<u8>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..3u8 {
                let mut v: Vec<u8> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn monomials_upto(n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for w in words_upto(n) {
        for e in central_monomials(n - w.len()) {
            out.push(Monomial::new(w.clone(), e));
        }
    }
    out
}

/// PBW monomials `A^i B^j C^k Ω^l α^r β^s γ^t`, `ijk = 0`, of weight at most `n`.
pub fn weighted_pbw_count(n: usize) -> usize {
    monomials_upto(n).iter().filter(|m| m.is_pbw()).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientCheck {
    pub n: usize,
    pub monomials: usize,
    pub relation_rank: usize,
    pub quotient_dim: usize,
    pub pbw_count: usize,
    pub irreducible_count: usize,
}

impl QuotientCheck {
    pub fn agrees(&self) -> bool {
        self.quotient_dim == self.pbw_count && self.pbw_count == self.irreducible_count
    }
}

/// Incremental row echelon basis over Q(q) with sparse rows.
struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, Cyc>>,
}

impl Echelon {
    fn insert(&mut self, mut v: BTreeMap<usize, Cyc>) {
        while let Some((&p, c)) = v.iter().next() {
            let Some(row) = self.rows.get(&p) else {
                let inv = c.inv().expect("nonzero pivot");
                for x in v.values_mut() {
                    *x = &*x * &inv;
                }
                self.rows.insert(p, v);
                return;
            };
            let c = c.clone();
            for (k, r) in row {
                let s = v.get(k).cloned().unwrap_or_else(|| c.field().zero()) - &c * r;
                if s.is_zero() {
                    v.remove(k);
                } else {
                    v.insert(*k, s);
                }
            }
        }
    }
}

/// Dimension of the weight-at-most-`n` part of the free algebra on A, B, C
/// and commuting central symbols, modulo the two-sided ideal of the defining
/// relations truncated at weight `n`. Letters weigh 1, α β γ weigh 2, Ω 3.
pub fn graded_quotient_dimension(field: &Field, sys: &RewriteSystem, n: usize) -> QuotientCheck {
    let monos = monomials_upto(n);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon { rows: BTreeMap::new() };
    for (_, _, rel) in base_relations(field) {
        let w = rel.terms().map(|(m, _)| m.weight()).max().unwrap_or(0);
        if w > n {
            continue;
        }
        let budget = n - w;
        for u in words_upto(budget) {
            for v in words_upto(budget - u.len()) {
                for e in central_monomials(budget - u.len() - v.len()) {
                    let left = NCPoly::monomial(field, Monomial::new(u.clone(), [0; 4]));
                    let right = NCPoly::monomial(field, Monomial::new(v.clone(), e));
                    let g = left.multiply(&rel).and_then(|x| x.multiply(&right)).expect("same field");
                    let row: BTreeMap<usize, Cyc> = g.terms().map(|(m, c)| (index[m], c.clone())).collect();
                    ech.insert(row);
                }
            }
        }
    }
    let rank = ech.rows.len();
    let irreducible_count = monos.iter().filter(|m| sys.is_irreducible(m.letters())).count();
    QuotientCheck {
        n,
        monomials: monos.len(),
        relation_rank: rank,
        quotient_dim: monos.len() - rank,
        pbw_count: weighted_pbw_count(n),
        irreducible_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::make_field;

    #[test]
    fn closed_counts() {
        assert_eq!(bounded_pbw_count(1), 1);
        assert_eq!(bounded_pbw_count(3), 19);
        assert_eq!(bounded_pbw_count(4), 37);
        for dbar in 1..8 {
            assert_eq!(bounded_pbw_count(dbar), 3 * dbar * dbar - 3 * dbar + 1);
        }
    }

    #[test]
    fn census_from_rewriter() {
        let f = make_field(3).unwrap();
        let sys = RewriteSystem::new(&f, 8).unwrap();
        let c = basis_census(&sys, 2);
        assert_eq!(c.bounded, 19);
        // 1 + 3 + 6 words of length <= 2 in sorted order
        assert_eq!(c.normal_words_upto_n, 10);
    }

    #[test]
    fn central_monomial_counts() {
        assert_eq!(central_monomials(0).len(), 1);
        assert_eq!(central_monomials(2).len(), 4);
        assert_eq!(central_monomials(4).len(), 11);
    }

    #[test]
    fn quotient_small_degree() {
        let f = make_field(3).unwrap();
        let sys = RewriteSystem::new(&f, 8).unwrap();
        for n in 0..=3 {
            let r = graded_quotient_dimension(&f, &sys, n);
            assert!(r.agrees(), "{r:?}");
        }
    }
}
