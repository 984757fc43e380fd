use serde::Serialize;
use serde_json::json;

use super::{burnside_irreducible, Decomposition, Representation, SectionFiveOps};
use crate::cyclotomic::{Cyc, FieldExt};
use crate::error::{Error, Result};
use crate::linalg::{in_span, span_rank, ExactMatrix, Vector};
use crate::qracah::{is_type_d, SeqType};
use crate::report::CheckEntry;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Branch {
    /// `E_i` restricted to `V(theta_i)` fails to be injective at `index`.
    NonInjective {
        index: usize,
    },
    AllInjective,
}

#[derive(Debug, Clone)]
pub struct DimensionReport {
    pub branch: Branch,
    pub entries: Vec<CheckEntry>,
}

fn injective_on(m: &ExactMatrix, basis: &[Vector]) -> bool {
    let n = m.rows();
    let imgs: Vec<Vector> = basis.iter().map(|v| m.apply(v)).collect();
    span_rank(m.field(), n, &imgs) == basis.len()
}

fn combine(basis: &[Vector], coeffs: &[Cyc]) -> Vector {
    let n = basis[0].len();
    let field = basis[0][0].field().clone();
    let mut v = vec![field.zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        for (x, y) in v.iter_mut().zip(b) {
            *x = &*x + &(c * y);
        }
    }
    v
}

fn is_eigenvector(m: &ExactMatrix, v: &[Cyc]) -> bool {
    v.iter().any(|x| !x.is_zero()) && in_span(m.field(), v.len(), &[v.to_vec()], &m.apply(v))
}

/// Coordinates of `m v_j` in `basis` when the span is `m`-invariant.
fn restrict(m: &ExactMatrix, basis: &[Vector]) -> Option<ExactMatrix> {
    let field = m.field();
    let n = m.rows();
    let k = basis.len();
    let mut r = ExactMatrix::zeros(field, k, k);
    for (j, v) in basis.iter().enumerate() {
        let w = m.apply(v);
        // solve bm x = w via the nullspace of [bm | -w]
        let mut cols = basis.to_vec();
        cols.push(w.iter().map(|x| -x).collect());
        let aug = ExactMatrix::from_columns(field, n, &cols);
        let sol = aug.nullspace().into_iter().find(|x| !x[k].is_zero())?;
        let scale = sol[k].inv().ok()?;
        for i in 0..k {
            r.set(i, j, &sol[i] * &scale);
        }
    }
    Some(r)
}

/// An eigenvector of `(B - theta_{i+1}) A` inside `V(theta_i)`, following the
/// two cases of the argument; `None` when the eigenvalue is not in Q(q).
fn find_eigenvector(rep: &Representation, dec: &Decomposition, ops: &SectionFiveOps, i: i64) -> Option<Vector> {
    let s = &dec.sequence;
    let m = rep.b.shift(s.theta(i + 1)).dot(&rep.a);
    let basis = dec.basis_v1(i);
    if s.theta(i - 1) != s.theta(i) {
        let imgs: Vec<Vector> = basis.iter().map(|v| ops.e(1, i).apply(v)).collect();
        let em = ExactMatrix::from_columns(rep.field(), rep.n, &imgs);
        let x = em.nullspace().into_iter().next()?;
        return Some(combine(basis, &x));
    }
    let r = restrict(&m, basis)?;
    let mut candidates: Vec<Cyc> = (0..r.rows()).map(|j| r.get(j, j).clone()).collect();
    candidates.push(rep.field().zero());
    for lambda in candidates {
        if let Some(x) = r.shift(&lambda).nullspace().into_iter().next() {
            return Some(combine(basis, &x));
        }
    }
    None
}

fn isqrt(x: usize) -> usize {
    let mut r = (x as f64).sqrt() as usize;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Index ranges of order-two blocks expected to share a dimension.
fn order_two_range(t: SeqType, dbar: usize) -> Vec<i64> {
    match t {
        SeqType::O2 | SeqType::Om2 => (1..=((dbar - 1) / 2) as i64).collect(),
        SeqType::E2 => (1..(dbar / 2) as i64).collect(),
        SeqType::Eq => (1..=(dbar / 2) as i64).collect(),
        _ => Vec::new(),
    }
}

pub fn verify_dimension_theorems(
    rep: &Representation,
    dec: &Decomposition,
    ops: &SectionFiveOps,
) -> Result<DimensionReport> {
    if !burnside_irreducible(rep).0 {
        return Err(Error::NotIrreducible);
    }
    let field = rep.field();
    let s = &dec.sequence;
    let dbar = s.dbar();
    let n = rep.n;
    let two = field.int(2);
    let injective: Vec<bool> = (0..dbar as i64).map(|i| injective_on(ops.e(1, i), dec.basis_v1(i))).collect();
    let mut entries = Vec::new();

    let branch = match injective.iter().position(|&b| !b) {
        Some(i) => Branch::NonInjective { index: i },
        None => Branch::AllInjective,
    };
    entries.push(CheckEntry::new(
        "dimension.injectivity-dichotomy",
        true,
        json!({"injective": injective, "branch": branch}),
    ));

    match branch {
        Branch::NonInjective { index } => {
            let i = index as i64;
            match find_eigenvector(rep, dec, ops, i) {
                None => {
                    entries.push(CheckEntry::skip(
                        "dimension.eigenvector-in-eigenspace",
                        json!({"index": index, "reason": "eigenvalue outside Q(q)"}),
                    ));
                }
                Some(v) => {
                    let m = rep.b.shift(s.theta(i + 1)).dot(&rep.a);
                    let in_v1 = rep.b.shift(s.theta(i)).apply(&v).iter().all(Cyc::is_zero);
                    entries.push(CheckEntry::new(
                        "dimension.eigenvector-in-eigenspace",
                        in_v1 && is_eigenvector(&m, &v),
                        json!({"index": index}),
                    ));
                    let mut krylov: Vec<Vector> = Vec::new();
                    let mut cur = v.clone();
                    let mut bad = Vec::new();
                    for j in 0..dbar as i64 {
                        let w = rep.b.shift(s.theta(i + j)).apply(&cur);
                        if !in_span(field, n, &krylov, &w) {
                            bad.push(j);
                        }
                        krylov.push(cur.clone());
                        cur = rep.a.apply(&cur);
                    }
                    entries.push(CheckEntry::new(
                        "dimension.triangular-krylov-span",
                        bad.is_empty(),
                        json!({"failing_j": bad}),
                    ));
                    let r = span_rank(field, n, &krylov);
                    entries.push(CheckEntry::new(
                        "dimension.krylov-span-fills-module",
                        r == n,
                        json!({"rank": r, "n": n}),
                    ));
                }
            }
        }
        Branch::AllInjective => {
            let d1: Vec<usize> = (0..dbar as i64).map(|i| dec.dim_v1(i)).collect();
            entries.push(CheckEntry::new(
                "dimension.equal-eigenspace-dims",
                d1.iter().all(|&x| x == d1[0]),
                json!({"dims": d1}),
            ));
            if !is_type_d(&s.a) {
                let (a, b) = (dec.dim_v2(1), dec.dim_v1(1));
                entries.push(CheckEntry::new(
                    "dimension.generalized-doubling",
                    a == 2 * b,
                    json!({"dim_v2": a, "dim_v1": b}),
                ));
                let range = order_two_range(s.tag, dbar);
                let dims: Vec<usize> = range.iter().map(|&i| dec.dim_v2(i)).collect();
                entries.push(CheckEntry::new(
                    "dimension.order-two-blocks-equal",
                    dims.windows(2).all(|w| w[0] == w[1]),
                    json!({"indices": range, "dims": dims}),
                ));
            }
            entries.push(CheckEntry::new(
                "dimension.dbar-times-eigenspace",
                n == dbar * dec.dim_v1(1),
                json!({"n": n, "dim_v1": dec.dim_v1(1)}),
            ));
            entries.push(CheckEntry::new("dimension.equals-dbar", n == dbar, json!({"n": n, "dbar": dbar})));
        }
    }

    // injectivity transfer to E^(2), wherever its hypotheses hold
    let mut tested = Vec::new();
    let mut bad = Vec::new();
    for i in 0..dbar as i64 {
        let t = s.theta(i);
        if !injective[i as usize] || t == s.theta(i - 1) || t == &two || t == &-&two {
            continue;
        }
        let mut ok = injective_on(ops.e(2, i), dec.basis_v1(i));
        if t != s.theta(i - 2) {
            ok &= injective_on(ops.e(2, i), dec.basis_v2(i));
        }
        tested.push(i);
        if !ok {
            bad.push(i);
        }
    }
    entries.push(CheckEntry::new(
        "dimension.injectivity-transfer",
        bad.is_empty(),
        json!({"tested": tested, "failing": bad}),
    ));

    entries.push(CheckEntry::new("dimension.at-most-dbar", n <= dbar, json!({"n": n, "dbar": dbar})));
    let bound = isqrt(3 * dbar * dbar - 3 * dbar + 1);
    entries.push(CheckEntry::new("dimension.span-count-bound", n <= bound, json!({"n": n, "bound": bound})));
    Ok(DimensionReport { branch, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_sqrt() {
        assert_eq!(isqrt(19), 4);
        assert_eq!(isqrt(37), 6);
        assert_eq!(isqrt(1), 1);
        assert_eq!(isqrt(0), 0);
    }
}
