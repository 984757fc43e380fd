//! q-Racah sequences `theta_i = a q^-2i + a^-1 q^2i`, read cyclically modulo d̄.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyc, Field, FieldExt};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeqType {
    D,
    O2,
    Om2,
    E2,
    Eq,
    Unclassified,
}

impl SeqType {
    pub fn label(self) -> &'static str {
        match self {
            SeqType::D => "D",
            SeqType::O2 => "O(2)",
            SeqType::Om2 => "O(-2)",
            SeqType::E2 => "E(2)",
            SeqType::Eq => "E(q+q^-1)",
            SeqType::Unclassified => "unclassified",
        }
    }

    /// Canonical types available for the parity of d̄.
    pub fn canonical_for(dbar: u32) -> &'static [SeqType] {
        if dbar % 2 == 1 {
            &[SeqType::O2, SeqType::Om2]
        } else {
            &[SeqType::E2, SeqType::Eq]
        }
    }
}

impl fmt::Display for SeqType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRacahSequence {
    pub a: Cyc,
    pub thetas: Vec<Cyc>,
    pub tag: SeqType,
}

impl QRacahSequence {
    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn dbar(&self) -> usize {
        self.thetas.len()
    }

    /// `theta_i` with `i` taken modulo d̄.
    pub fn theta(&self, i: i64) -> &Cyc {
        &self.thetas[i.rem_euclid(self.thetas.len() as i64) as usize]
    }

    /// The sequence `i -> theta_{i + j}`.
    pub fn shifted(&self, j: i64) -> Vec<Cyc> {
        (0..self.dbar() as i64).map(|i| self.theta(i + j).clone()).collect()
    }
}

pub fn theta(a: &Cyc, i: i64) -> Result<Cyc> {
    let field = a.field();
    Ok(a * &field.q_power(-2 * i) + &a.inv()? * &field.q_power(2 * i))
}

pub fn generate(a: &Cyc) -> Result<QRacahSequence> {
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let dbar = a.field().dbar() as i64;
    let thetas = (0..dbar).map(|i| theta(a, i)).collect::<Result<_>>()?;
    Ok(QRacahSequence { a: a.clone(), thetas, tag: SeqType::Unclassified })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    /// Per index: the sum identity and the product identity.
    pub per_index: Vec<(bool, bool)>,
}

impl RecurrenceReport {
    pub fn all_pass(&self) -> bool {
        self.per_index.iter().all(|&(s, p)| s && p)
    }

    pub fn failures(&self) -> Vec<usize> {
        self.per_index.iter().enumerate().filter(|(_, &(s, p))| !(s && p)).map(|(i, _)| i).collect()
    }
}

/// Checks `theta_{i-1} + theta_{i+1} = (q^2+q^-2) theta_i` and
/// `theta_{i-1} theta_{i+1} = theta_i^2 + (q^2-q^-2)^2` at every index.
pub fn recurrence_check(thetas: &[Cyc]) -> RecurrenceReport {
    let n = thetas.len() as i64;
    let at = |i: i64| &thetas[i.rem_euclid(n) as usize];
    let field = thetas[0].field();
    let s = field.q_power(2) + field.q_power(-2);
    let m = field.q_power(2) - field.q_power(-2);
    let m2 = &m * &m;
    let per_index = (0..n)
        .map(|i| {
            let sum = at(i - 1) + at(i + 1) == &s * at(i);
            let prod = at(i - 1) * at(i + 1) == at(i) * at(i) + m2.clone();
            (sum, prod)
        })
        .collect();
    RecurrenceReport { per_index }
}

/// The four conditions at index `i`: `theta_{i-1} = theta_{i+1}`,
/// `(q^2+q^-2) theta_i = 2 theta_{i-1}`, `(q^2+q^-2) theta_i = 2 theta_{i+1}`,
/// `theta_i = ±2`.
pub fn pinch_conditions(s: &QRacahSequence, i: i64) -> [bool; 4] {
    let field = s.field();
    let c = field.q_power(2) + field.q_power(-2);
    let two = field.int(2);
    let t = s.theta(i);
    [
        s.theta(i - 1) == s.theta(i + 1),
        &c * t == &two * s.theta(i - 1),
        &c * t == &two * s.theta(i + 1),
        t == &two || t == &-&two,
    ]
}

pub fn pinch_equivalence_holds(s: &QRacahSequence) -> bool {
    (0..s.dbar() as i64).all(|i| {
        let c = pinch_conditions(s, i);
        c.iter().all(|&x| x) || c.iter().all(|&x| !x)
    })
}

/// Type D exactly when `a^2` is not an even power of q.
pub fn is_type_d(a: &Cyc) -> bool {
    let field = a.field();
    let a2 = a * a;
    !(0..field.dbar() as i64).any(|i| a2 == field.q_power(2 * i))
}

/// The canonical sequence of a non-D type.
pub fn canonical(field: &Field, t: SeqType) -> Result<QRacahSequence> {
    let odd = field.dbar() % 2 == 1;
    let a = match (t, odd) {
        (SeqType::O2, true) | (SeqType::E2, false) => field.one(),
        (SeqType::Om2, true) => -field.one(),
        (SeqType::Eq, false) => field.q(),
        _ => return Err(Error::Config(format!("type {t} does not exist for d = {}", field.d()))),
    };
    let mut s = generate(&a)?;
    s.tag = t;
    Ok(s)
}

/// Tags by exact match with a canonical sequence; congruent but shifted
/// sequences stay unclassified.
pub fn classify(s: &QRacahSequence) -> QRacahSequence {
    let mut out = s.clone();
    out.tag = if is_type_d(&s.a) {
        SeqType::D
    } else {
        SeqType::canonical_for(s.field().dbar())
            .iter()
            .copied()
            .find(|&t| canonical(s.field(), t).is_ok_and(|c| c.thetas == s.thetas))
            .unwrap_or(SeqType::Unclassified)
    };
    out
}

/// Smallest shift `j` and canonical sequence `theta'` with
/// `theta_i = theta'_{i + j}` for all `i`.
pub fn normalize_congruence(s: &QRacahSequence) -> Result<(usize, QRacahSequence)> {
    if is_type_d(&s.a) {
        return Err(Error::TypeDInput);
    }
    let field = s.field();
    for &t in SeqType::canonical_for(field.dbar()) {
        let c = canonical(field, t)?;
        for j in 0..s.dbar() {
            if c.shifted(j as i64) == s.thetas {
                return Ok((j, c));
            }
        }
    }
    // every non-D sequence is congruent to a canonical one
    Err(Error::NoQRacahMatch)
}

/// Index classes of equal values, ordered by smallest index.
pub fn multiplicity_profile(thetas: &[Cyc]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, t) in thetas.iter().enumerate() {
        match classes.iter_mut().find(|c| &thetas[c[0]] == t) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// Whether `theta_i = theta_j` is predicted for the canonical type `t`.
pub fn predicted_equal(t: SeqType, dbar: usize, i: usize, j: usize) -> bool {
    let n = dbar as i64;
    let (i, j) = (i as i64, j as i64);
    let eq = |x: i64, y: i64| (x - y).rem_euclid(n) == 0;
    match t {
        SeqType::D | SeqType::Unclassified => i == j,
        SeqType::O2 | SeqType::Om2 | SeqType::E2 => eq(i, j) || eq(i, -j),
        SeqType::Eq => eq(i, j) || eq(i, 1 - j),
    }
}

/// Checks the multiplicity pattern of `s` against its type; shifted sequences
/// are checked through their canonical form.
pub fn profile_matches_type(s: &QRacahSequence) -> bool {
    let dbar = s.dbar();
    let (t, shift) = if is_type_d(&s.a) {
        (SeqType::D, 0)
    } else {
        match normalize_congruence(s) {
            Ok((j, c)) => (c.tag, j),
            Err(_) => return false,
        }
    };
    (0..dbar).all(|i| {
        (0..dbar)
            .all(|j| (s.thetas[i] == s.thetas[j]) == predicted_equal(t, dbar, (i + shift) % dbar, (j + shift) % dbar))
    })
}
