use serde_json::json;

use super::{Decomposition, Representation};
use crate::cyclotomic::{Cyc, FieldExt};
use crate::linalg::{all_in_span, ExactMatrix, Vector};
use crate::report::CheckEntry;

/// `K_i^(n)`, `T_i^(n)`, `E_i^(n)` for `n = 1, 2`, indexed `[n - 1][i]`.
#[derive(Debug, Clone)]
pub struct SectionFiveOps {
    pub k: [Vec<ExactMatrix>; 2],
    pub t: [Vec<ExactMatrix>; 2],
    pub e: [Vec<ExactMatrix>; 2],
}

impl SectionFiveOps {
    fn at(v: &[ExactMatrix], i: i64) -> &ExactMatrix {
        &v[i.rem_euclid(v.len() as i64) as usize]
    }

    pub fn k(&self, n: usize, i: i64) -> &ExactMatrix {
        Self::at(&self.k[n - 1], i)
    }

    pub fn t(&self, n: usize, i: i64) -> &ExactMatrix {
        Self::at(&self.t[n - 1], i)
    }

    pub fn e(&self, n: usize, i: i64) -> &ExactMatrix {
        Self::at(&self.e[n - 1], i)
    }
}

/// `(B - theta)^n`.
pub(crate) fn shifted_power(rep: &Representation, theta: &Cyc, n: usize) -> ExactMatrix {
    rep.b.shift(theta).pow(n)
}

pub fn section5_ops(rep: &Representation, dec: &Decomposition) -> SectionFiveOps {
    let s = &dec.sequence;
    let dbar = s.dbar() as i64;
    let mut k = [Vec::new(), Vec::new()];
    let mut t = [Vec::new(), Vec::new()];
    let mut e = [Vec::new(), Vec::new()];
    for n in 1..=2 {
        for i in 0..dbar {
            let prev = shifted_power(rep, s.theta(i - 1), n);
            let here = shifted_power(rep, s.theta(i), n);
            let next = shifted_power(rep, s.theta(i + 1), n);
            let next_a = next.dot(&rep.a);
            k[n - 1].push(prev.dot(&next_a));
            t[n - 1].push(prev.dot(&here).dot(&next_a));
            e[n - 1].push(here.dot(&next_a));
        }
    }
    SectionFiveOps { k, t, e }
}

fn images(m: &ExactMatrix, basis: &[Vector]) -> Vec<Vector> {
    basis.iter().map(|v| m.apply(v)).collect()
}

fn all_zero(vs: &[Vector]) -> bool {
    vs.iter().all(|v| v.iter().all(Cyc::is_zero))
}

/// `Some(lambda)` when `m v = lambda v` for every `v` in `basis`.
fn common_eigenvalue(m: &ExactMatrix, basis: &[Vector]) -> Option<Cyc> {
    let field = m.field();
    let mut lambda: Option<Cyc> = None;
    for v in basis {
        let w = m.apply(v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let l = &w[p] * &v[p].inv().ok()?;
        if w.iter().zip(v).any(|(a, b)| a != &(&l * b)) {
            return None;
        }
        match &lambda {
            Some(x) if x != &l => return None,
            _ => lambda = Some(l),
        }
    }
    Some(lambda.unwrap_or_else(|| field.zero()))
}

/// The subspace that `A V(theta_i)` must lie in, chosen by which neighbours coincide.
fn neighbour_sum(dec: &Decomposition, i: i64) -> (&'static str, Vec<Vector>) {
    let s = &dec.sequence;
    let (p, h, n) = (s.theta(i - 1), s.theta(i), s.theta(i + 1));
    let cat = |parts: &[&[Vector]]| parts.iter().flat_map(|p| p.iter().cloned()).collect::<Vec<_>>();
    if p != h && h != n && p != n {
        ("distinct", cat(&[dec.basis_v1(i - 1), dec.basis_v1(i), dec.basis_v1(i + 1)]))
    } else if h == p {
        ("theta_i = theta_{i-1}", cat(&[dec.basis_v2(i), dec.basis_v1(i + 1)]))
    } else if h == n {
        ("theta_i = theta_{i+1}", cat(&[dec.basis_v2(i), dec.basis_v1(i - 1)]))
    } else {
        ("theta_{i-1} = theta_{i+1}", cat(&[dec.basis_v2(i - 1), dec.basis_v1(i)]))
    }
}

/// Runs every operator statement at every index; one entry per statement
/// listing the failing indices.
pub fn verify_operator_props(rep: &Representation, dec: &Decomposition, ops: &SectionFiveOps) -> Vec<CheckEntry> {
    let field = rep.field();
    let s = &dec.sequence;
    let n = rep.n;
    let dbar = s.dbar() as i64;
    let c2 = field.q_power(2) + field.q_power(-2);
    let two = field.int(2);

    let mut fails: Vec<(&'static str, Vec<i64>)> = vec![
        ("operator.factorizations", vec![]),
        ("operator.k-scalar-on-eigenspace", vec![]),
        ("operator.t-vanishes-on-eigenspace", vec![]),
        ("operator.e-lowers-eigenspace", vec![]),
        ("operator.a-image-in-neighbour-sum", vec![]),
        ("operator.corrected-k-preserves-v2", vec![]),
        ("operator.k2-preserves-v2", vec![]),
        ("operator.t2-vanishes-on-v2", vec![]),
        ("operator.e2-lowers-v2", vec![]),
    ];
    let mut cases = Vec::new();
    for i in 0..dbar {
        let v1 = dec.basis_v1(i);
        let v2 = dec.basis_v2(i);
        let b_i = rep.b.shift(s.theta(i));
        let b_prev = rep.b.shift(s.theta(i - 1));
        let b_i2 = b_i.dot(&b_i);
        let b_prev2 = b_prev.dot(&b_prev);
        let checks = [
            ops.t(1, i) == &b_i.dot(ops.k(1, i))
                && ops.t(1, i) == &b_prev.dot(ops.e(1, i))
                && ops.t(2, i) == &b_i2.dot(ops.k(2, i))
                && ops.t(2, i) == &b_prev2.dot(ops.e(2, i)),
            common_eigenvalue(ops.k(1, i), v1).is_some(),
            all_zero(&images(ops.t(1, i), v1)),
            all_zero(&images(&b_prev.dot(ops.e(1, i)), v1)),
            {
                let (case, sum) = neighbour_sum(dec, i);
                cases.push(case);
                all_in_span(field, n, &sum, &images(&rep.a, v1))
            },
            {
                let corr = rep.b.scale(&c2).shift(&(&two * s.theta(i))).dot(&rep.a).dot(&b_i);
                let m = ops.k(1, i).sub(&corr).expect("square");
                all_zero(&images(&b_i2.dot(&m), v2))
            },
            all_zero(&images(&b_i2.dot(ops.k(2, i)), v2)),
            all_zero(&images(ops.t(2, i), v2)),
            all_zero(&images(&b_prev2.dot(ops.e(2, i)), v2)),
        ];
        for (slot, ok) in fails.iter_mut().zip(checks) {
            if !ok {
                slot.1.push(i);
            }
        }
    }
    fails
        .into_iter()
        .map(|(name, bad)| {
            let detail = if name == "operator.a-image-in-neighbour-sum" {
                json!({"failing_indices": bad, "cases": cases})
            } else {
                json!({"failing_indices": bad})
            };
            CheckEntry::new(name, bad.is_empty(), detail)
        })
        .collect()
}
