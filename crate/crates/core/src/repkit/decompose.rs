use serde_json::{json, Value};

use super::Representation;
use crate::cyclotomic::{Cyc, FieldExt};
use crate::error::{Error, Result};
use crate::linalg::{span_rank, ExactMatrix, Vector};
use crate::qracah::{canonical, classify, generate, is_type_d, normalize_congruence, QRacahSequence, SeqType};
use crate::samples;

#[derive(Debug, Clone)]
pub struct Block {
    pub index: usize,
    pub order: u8,
    pub dim: usize,
    pub basis: Vec<Vector>,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub sequence: QRacahSequence,
    pub blocks: Vec<Block>,
    /// Bases of `V(theta_i)` and `V^(2)(theta_i)` for every index.
    pub v1: Vec<Vec<Vector>>,
    pub v2: Vec<Vec<Vector>>,
    /// Blocks are independent and fill the module.
    pub pattern_ok: bool,
}

impl Decomposition {
    pub fn dim_v1(&self, i: i64) -> usize {
        self.v1[i.rem_euclid(self.v1.len() as i64) as usize].len()
    }

    pub fn dim_v2(&self, i: i64) -> usize {
        self.v2[i.rem_euclid(self.v2.len() as i64) as usize].len()
    }

    pub fn basis_v1(&self, i: i64) -> &[Vector] {
        &self.v1[i.rem_euclid(self.v1.len() as i64) as usize]
    }

    pub fn basis_v2(&self, i: i64) -> &[Vector] {
        &self.v2[i.rem_euclid(self.v2.len() as i64) as usize]
    }

    pub fn summary(&self) -> Value {
        json!({
            "type": self.sequence.tag.label(),
            "blocks": self.blocks.iter().map(|b| json!({"index": b.index, "order": b.order, "dim": b.dim})).collect::<Vec<_>>(),
            "dims_v1": self.v1.iter().map(Vec::len).collect::<Vec<_>>(),
            "dims_v2": self.v2.iter().map(Vec::len).collect::<Vec<_>>(),
            "pattern_ok": self.pattern_ok,
        })
    }
}

fn is_triangular(m: &ExactMatrix) -> bool {
    let n = m.rows();
    let upper = (0..n).all(|i| (0..i).all(|j| m.get(i, j).is_zero()));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m.get(i, j).is_zero()));
    upper || lower
}

/// Parameters to try, in order: `extra`, values read off a triangular B from
/// pairs of eigenvalues taken as consecutive terms, then the sample grid.
pub fn sequence_candidates(rep: &Representation, extra: &[Cyc]) -> Vec<Cyc> {
    let field = rep.field();
    let mut out: Vec<Cyc> = extra.to_vec();
    if is_triangular(&rep.b) {
        let diag: Vec<Cyc> = (0..rep.n).map(|i| rep.b.get(i, i).clone()).collect();
        let q2 = field.q_power(2);
        let den = (field.q_power(-2) - q2.clone()).inv().expect("q^4 != 1");
        // theta_0 = x + 1/x, theta_1 = x q^-2 + q^2/x  =>  x is linear in the pair
        for l in &diag {
            for m in &diag {
                let x = &(m - &(&q2 * l)) * &den;
                let y = l - &x;
                if (&x * &y).is_one() {
                    out.push(x);
                }
            }
        }
    }
    out.extend(samples::qracah_parameters(field));
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

pub fn product_vanishes(b: &ExactMatrix, s: &QRacahSequence) -> bool {
    let mut acc = ExactMatrix::identity(b.field(), b.rows());
    for t in &s.thetas {
        acc = acc.dot(&b.shift(t));
    }
    acc.is_zero()
}

/// The first candidate sequence annihilating B, in canonical form for
/// non-D types.
pub fn detect_sequence(rep: &Representation, extra: &[Cyc]) -> Result<QRacahSequence> {
    for a in sequence_candidates(rep, extra) {
        let s = generate(&a)?;
        if !product_vanishes(&rep.b, &s) {
            continue;
        }
        if is_type_d(&a) {
            return Ok(classify(&s));
        }
        let (_, c) = normalize_congruence(&s)?;
        return Ok(c);
    }
    Err(Error::NoQRacahMatch)
}

/// Blocks `(index, order)` for the type of `s`.
fn pattern(s: &QRacahSequence) -> Vec<(usize, u8)> {
    let dbar = s.dbar();
    match s.tag {
        SeqType::D | SeqType::Unclassified => (0..dbar).map(|i| (i, 1)).collect(),
        SeqType::O2 | SeqType::Om2 => {
            let mut v = vec![(0, 1)];
            v.extend((1..=(dbar - 1) / 2).map(|i| (i, 2)));
            v
        }
        SeqType::E2 => {
            let mut v = vec![(0, 1)];
            v.extend((1..dbar / 2).map(|i| (i, 2)));
            v.push((dbar / 2, 1));
            v
        }
        SeqType::Eq => (1..=dbar / 2).map(|i| (i, 2)).collect(),
    }
}

pub fn decompose(rep: &Representation, s: &QRacahSequence) -> Result<Decomposition> {
    if !product_vanishes(&rep.b, s) {
        return Err(Error::VanishingFails);
    }
    let mut s = s.clone();
    if s.tag == SeqType::Unclassified && !is_type_d(&s.a) {
        s = canonical(s.field(), normalize_congruence(&s)?.1.tag)?;
    }
    let field = rep.field();
    let mut v1 = Vec::new();
    let mut v2 = Vec::new();
    for t in &s.thetas {
        let m = rep.b.shift(t);
        v1.push(m.nullspace());
        v2.push(m.dot(&m).nullspace());
    }
    let blocks: Vec<Block> = pattern(&s)
        .into_iter()
        .map(|(index, order)| {
            let basis = if order == 1 { v1[index].clone() } else { v2[index].clone() };
            Block { index, order, dim: basis.len(), basis }
        })
        .collect();
    let all: Vec<Vector> = blocks.iter().flat_map(|b| b.basis.iter().cloned()).collect();
    let pattern_ok = all.len() == rep.n && span_rank(field, rep.n, &all) == rep.n;
    Ok(Decomposition { sequence: s, blocks, v1, v2, pattern_ok })
}
