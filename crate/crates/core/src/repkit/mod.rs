//! Finite-dimensional modules given by matrices for A and B and the scalar γ.

mod decompose;
mod dimension;
mod operators;

pub use decompose::{decompose, detect_sequence, product_vanishes, sequence_candidates, Block, Decomposition};
pub use dimension::{verify_dimension_theorems, Branch, DimensionReport};
pub use operators::{section5_ops, verify_operator_props, SectionFiveOps};

use serde::{Deserialize, Serialize};

use crate::chebyshev::cheb_poly;
use crate::cyclotomic::{Cyc, Field, FieldExt};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, ExactMatrix};
use crate::modp::{EchelonModP, ModP};
use crate::ncalgebra::{alpha_from_ab_gamma, beta_from_ab_gamma, casimir, defining_element, Defining, NCPoly};
use crate::text::{parse_qexpr, print_qexpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub n: usize,
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    pub gamma: Cyc,
    pub c: ExactMatrix,
    pub alpha: ExactMatrix,
    pub beta: ExactMatrix,
    pub omega: ExactMatrix,
}

/// Central elements whose action is tested for scalarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CentralKind {
    Alpha,
    Beta,
    Gamma,
    Omega,
    ChebA,
    ChebB,
    ChebC,
}

impl CentralKind {
    pub const ALL: [CentralKind; 7] = [
        CentralKind::Alpha,
        CentralKind::Beta,
        CentralKind::Gamma,
        CentralKind::Omega,
        CentralKind::ChebA,
        CentralKind::ChebB,
        CentralKind::ChebC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CentralKind::Alpha => "alpha",
            CentralKind::Beta => "beta",
            CentralKind::Gamma => "gamma",
            CentralKind::Omega => "omega",
            CentralKind::ChebA => "T(A)",
            CentralKind::ChebB => "T(B)",
            CentralKind::ChebC => "T(C)",
        }
    }
}

/// Matrices substituted for the letters and central symbols of an NCPoly.
struct Substitution<'a> {
    letters: [&'a ExactMatrix; 3],
    central: [Option<&'a ExactMatrix>; 4],
    gamma: &'a Cyc,
}

fn eval_with(field: &Field, n: usize, p: &NCPoly, s: &Substitution) -> Result<ExactMatrix> {
    let mut out = ExactMatrix::zeros(field, n, n);
    for (m, c) in p.terms() {
        let mut acc = ExactMatrix::scalar(field, n, c);
        for &l in m.letters() {
            acc = acc.dot(s.letters[l as usize]);
        }
        for (k, &e) in m.central().iter().enumerate() {
            for _ in 0..e {
                acc = if k == 3 {
                    acc.scale(s.gamma)
                } else {
                    let mat = s.central[k].ok_or_else(|| Error::Config("central symbol not yet available".into()))?;
                    acc.dot(mat)
                };
            }
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// Builds C, α, β and Ω from A, B and γ.
pub fn assemble(a: ExactMatrix, b: ExactMatrix, gamma: Cyc) -> Result<Representation> {
    let field = a.field().clone();
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!("A is {}x{}, B is {}x{}", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    for d in [b.field().d(), gamma.field().d()] {
        if d != field.d() {
            return Err(Error::ContextMismatch(field.d(), d));
        }
    }
    let n = a.rows();
    let q = |k| field.q_power(k);
    let ab = a.dot(&b);
    let ba = b.dot(&a);
    let c = ExactMatrix::scalar(&field, n, &(&gamma * &(q(1) + q(-1)).inv()?))
        .sub(&ab.scale(&q(1)).sub(&ba.scale(&q(-1)))?.scale(&(q(2) - q(-2)).inv()?))?;

    let sub = Substitution { letters: [&a, &b, &c], central: [None, None, None, None], gamma: &gamma };
    let alpha = eval_with(&field, n, &alpha_from_ab_gamma(&field), &sub)?;
    let beta = eval_with(&field, n, &beta_from_ab_gamma(&field), &sub)?;
    let sub = Substitution { letters: [&a, &b, &c], central: [None, Some(&alpha), Some(&beta), None], gamma: &gamma };
    let omega = eval_with(&field, n, &casimir(&field), &sub)?;
    Ok(Representation { n, a, b, gamma, c, alpha, beta, omega })
}

impl Representation {
    pub fn field(&self) -> &Field {
        self.a.field()
    }

    /// Image of an NCPoly under the module action.
    pub fn eval(&self, p: &NCPoly) -> Result<ExactMatrix> {
        let sub = Substitution {
            letters: [&self.a, &self.b, &self.c],
            central: [Some(&self.omega), Some(&self.alpha), Some(&self.beta), None],
            gamma: &self.gamma,
        };
        eval_with(self.field(), self.n, p, &sub)
    }

    pub fn central_matrix(&self, which: CentralKind) -> ExactMatrix {
        let dbar = self.field().dbar() as usize;
        let cheb = |m: &ExactMatrix| {
            let t = cheb_poly(dbar);
            let mut acc = ExactMatrix::zeros(self.field(), self.n, self.n);
            for c in t.coeffs.iter().rev() {
                let c: i64 = c.try_into().expect("small coefficient");
                acc = acc.dot(m).add(&ExactMatrix::scalar(self.field(), self.n, &self.field().int(c))).expect("square");
            }
            acc
        };
        match which {
            CentralKind::Alpha => self.alpha.clone(),
            CentralKind::Beta => self.beta.clone(),
            CentralKind::Gamma => ExactMatrix::scalar(self.field(), self.n, &self.gamma),
            CentralKind::Omega => self.omega.clone(),
            CentralKind::ChebA => cheb(&self.a),
            CentralKind::ChebB => cheb(&self.b),
            CentralKind::ChebC => cheb(&self.c),
        }
    }

    /// The block-diagonal sum of two modules with equal γ.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.gamma != other.gamma {
            return Err(Error::ShapeMismatch("direct sum needs a common gamma".into()));
        }
        assemble(self.a.direct_sum(&other.a), self.b.direct_sum(&other.b), self.gamma.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleCheck {
    /// Nonzero entry count of each commutator that should vanish.
    pub commutators: Vec<(String, usize)>,
    pub pass: bool,
}

/// The module test: α and β commute with A and B.
pub fn check_module(rep: &Representation) -> ModuleCheck {
    let pairs = [
        ("[alpha,A]", &rep.alpha, &rep.a),
        ("[alpha,B]", &rep.alpha, &rep.b),
        ("[beta,A]", &rep.beta, &rep.a),
        ("[beta,B]", &rep.beta, &rep.b),
    ];
    let commutators: Vec<(String, usize)> =
        pairs.iter().map(|(name, x, y)| (name.to_string(), x.commutator(y).expect("square").nonzero_count())).collect();
    let pass = commutators.iter().all(|(_, k)| *k == 0);
    ModuleCheck { commutators, pass }
}

/// The γ element recomputed from A, B and C; equals γ·I by construction of C.
pub fn gamma_readback(rep: &Representation) -> Result<ExactMatrix> {
    rep.eval(&defining_element(rep.field(), Defining::Gamma))
}

pub fn scalar_action(rep: &Representation, which: CentralKind) -> Result<Cyc> {
    rep.central_matrix(which).as_scalar().ok_or_else(|| Error::NotScalar(which.name().to_string()))
}

/// Dimension of the unital algebra generated by A and B, by span closure.
///
/// A closure modulo a prime runs first; its rank never exceeds the true one,
/// so reaching `n^2` there settles irreducibility. Otherwise the exact closure
/// decides.
pub fn burnside_irreducible(rep: &Representation) -> (bool, usize) {
    let full = rep.n * rep.n;
    if burnside_rank_modp(rep) == Some(full) {
        return (true, full);
    }
    burnside_exact(rep)
}

/// Rank of the generated algebra over F_p; `None` when an entry does not reduce.
pub fn burnside_rank_modp(rep: &Representation) -> Option<usize> {
    let n = rep.n;
    let m = ModP::for_field(rep.field());
    let gens = [m.reduce(&rep.a)?, m.reduce(&rep.b)?];
    let mut id = vec![0u64; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let mut basis = EchelonModP::new(m.p);
    let mut frontier = Vec::new();
    for x in [id, gens[0].clone(), gens[1].clone()] {
        if basis.insert(&x) {
            frontier.push(x);
        }
    }
    while let Some(x) = frontier.pop() {
        if basis.len() == n * n {
            break;
        }
        for g in &gens {
            let y = m.mat_mul(&x, g, n);
            if basis.insert(&y) {
                frontier.push(y);
            }
        }
    }
    Some(basis.len())
}

pub fn burnside_exact(rep: &Representation) -> (bool, usize) {
    let field = rep.field();
    let n = rep.n;
    let flat = |m: &ExactMatrix| m.entries().to_vec();
    let mut basis = EchelonBasis::new(field);
    let mut frontier = Vec::new();
    for m in [ExactMatrix::identity(field, n), rep.a.clone(), rep.b.clone()] {
        if basis.insert(&flat(&m)) {
            frontier.push(m);
        }
    }
    while let Some(m) = frontier.pop() {
        if basis.len() == n * n {
            break;
        }
        for g in [&rep.a, &rep.b] {
            let p = m.dot(g);
            if basis.insert(&flat(&p)) {
                frontier.push(p);
            }
        }
    }
    (basis.len() == n * n, basis.len())
}

/// JSON form `{"d", "n", "A", "B", "gamma"}` with entries in the scalar grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepBundle {
    pub d: u32,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    pub gamma: String,
}

impl RepBundle {
    pub fn from_rep(rep: &Representation) -> Self {
        let rows = |m: &ExactMatrix| m.to_rows().iter().map(|r| r.iter().map(print_qexpr).collect()).collect();
        RepBundle { d: rep.field().d(), n: rep.n, a: rows(&rep.a), b: rows(&rep.b), gamma: print_qexpr(&rep.gamma) }
    }

    pub fn to_rep(&self, field: &Field) -> Result<Representation> {
        if field.d() != self.d {
            return Err(Error::ContextMismatch(self.d, field.d()));
        }
        let parse = |rows: &Vec<Vec<String>>| -> Result<ExactMatrix> {
            let m = ExactMatrix::from_rows(
                field,
                rows.iter()
                    .map(|r| r.iter().map(|s| parse_qexpr(field, s)).collect::<Result<_>>())
                    .collect::<Result<_>>()?,
            )?;
            if m.rows() != self.n || m.cols() != self.n {
                return Err(Error::ShapeMismatch(format!("expected {0}x{0}", self.n)));
            }
            Ok(m)
        };
        assemble(parse(&self.a)?, parse(&self.b)?, parse_qexpr(field, &self.gamma)?)
    }
}
