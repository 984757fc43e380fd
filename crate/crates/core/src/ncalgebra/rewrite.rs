//! Rewriting onto the PBW basis.
//!
//! The four base rules are obtained by solving the defining relations for
//! their largest word; the remaining ambiguities are resolved by overlap
//! completion up to the degree cap.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{casimir, defining_element, Central, Defining, Gen, Monomial, NCPoly};
use crate::cyclotomic::{Cyc, Field};
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleOrigin {
    /// Solved from a defining relation, with its label.
    Relation(&'static str),
    /// Added while resolving an overlap ambiguity.
    Completion,
}

/// `lhs -> rhs`, every monomial of `rhs` strictly below `lhs`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub lhs: Vec<u8>,
    pub rhs: NCPoly,
    pub origin: RuleOrigin,
}

/// Solves `relation = 0` for the monomial `target`, checking the result by
/// substituting it back.
pub fn solve_for(relation: &NCPoly, target: &Monomial, label: &'static str) -> Result<Rule> {
    let c = relation.coeff(target);
    if c.is_zero() {
        return Err(Error::UnorientableRelation(format!("{label}: target word absent")));
    }
    let c_inv = c.inv()?;
    let mut rest = relation.clone();
    rest.add_term(target.clone(), -&c);
    let rhs = rest.scale(&-c_inv);

    let mut back = NCPoly::monomial(relation.field(), target.clone()).sub(&rhs)?;
    back = back.scale(&c);
    if &back != relation {
        return Err(Error::UnorientableRelation(format!("{label}: re-substitution failed")));
    }
    if let Some((m, _)) = rhs.leading() {
        if m >= target {
            return Err(Error::UnorientableRelation(format!("{label}: {m:?} not below target")));
        }
    }
    if target.has_central() {
        return Err(Error::UnorientableRelation(format!("{label}: central target")));
    }
    Ok(Rule { lhs: target.letters().to_vec(), rhs, origin: RuleOrigin::Relation(label) })
}

/// The defining relations as elements that vanish in the algebra, each with
/// the word it is solved for.
pub fn base_relations(field: &Field) -> Vec<(&'static str, Monomial, NCPoly)> {
    use Gen::*;
    let minus = |p: NCPoly, c: Central| p.sub(&NCPoly::central(field, c)).expect("same field");
    vec![
        ("gamma", Monomial::word(&[B, A]), minus(defining_element(field, Defining::Gamma), Central::Gamma)),
        ("beta", Monomial::word(&[C, A]), minus(defining_element(field, Defining::Beta), Central::Beta)),
        ("alpha", Monomial::word(&[C, B]), minus(defining_element(field, Defining::Alpha), Central::Alpha)),
        ("casimir", Monomial::word(&[A, B, C]), minus(casimir(field), Central::Omega)),
    ]
}

#[derive(Debug)]
pub struct RewriteSystem {
    field: Field,
    rules: Vec<Rule>,
    pair: [[Option<usize>; 3]; 3],
    long: Vec<usize>,
    cap: usize,
}

struct Ambiguity {
    word: Vec<u8>,
    left: NCPoly,
    right: NCPoly,
}

impl RewriteSystem {
    /// Base rules plus every completion rule needed for words of length up to `cap`.
    pub fn new(field: &Field, cap: usize) -> Result<Self> {
        let mut sys =
            RewriteSystem { field: field.clone(), rules: Vec::new(), pair: [[None; 3]; 3], long: Vec::new(), cap };
        for (label, target, rel) in base_relations(field) {
            sys.push(solve_for(&rel, &target, label)?);
        }
        sys.complete()?;
        Ok(sys)
    }

    /// The completed system for `(d, cap)`, built once and shared.
    pub fn shared(field: &Field, cap: usize) -> Result<Arc<RewriteSystem>> {
        static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<RewriteSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (field.d(), cap);
        if let Some(s) = cache.lock().expect("cache lock").get(&key) {
            return Ok(s.clone());
        }
        // built outside the lock so different orders complete concurrently
        let sys = Arc::new(RewriteSystem::new(field, cap)?);
        Ok(cache.lock().expect("cache lock").entry(key).or_insert(sys).clone())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn completion_rule_count(&self) -> usize {
        self.rules.iter().filter(|r| r.origin == RuleOrigin::Completion).count()
    }

    fn push(&mut self, rule: Rule) {
        let idx = self.rules.len();
        if let [x, y] = rule.lhs[..] {
            self.pair[x as usize][y as usize] = Some(idx);
        } else {
            self.long.push(idx);
        }
        self.rules.push(rule);
    }

    /// First rule occurrence in `w`: length-two rules take priority.
    fn find_match(&self, w: &[u8]) -> Option<(usize, usize)> {
        for p in 0..w.len().saturating_sub(1) {
            if let Some(r) = self.pair[w[p] as usize][w[p + 1] as usize] {
                return Some((r, p));
            }
        }
        for &r in &self.long {
            let lhs = &self.rules[r].lhs;
            if lhs.len() <= w.len() {
                if let Some(p) = w.windows(lhs.len()).position(|win| win == &lhs[..]) {
                    return Some((r, p));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &[u8]) -> bool {
        self.find_match(w).is_none()
    }

    /// `prefix * rhs(rule) * suffix`, carrying `central` along.
    fn splice(&self, rule: usize, prefix: &[u8], suffix: &[u8], central: [u16; 4]) -> NCPoly {
        let mut out = NCPoly::zero(&self.field);
        for (m, c) in self.rules[rule].rhs.terms() {
            let mut letters = Vec::with_capacity(prefix.len() + m.len() + suffix.len());
            letters.extend_from_slice(prefix);
            letters.extend_from_slice(m.letters());
            letters.extend_from_slice(suffix);
            let mut e = m.central();
            for (x, y) in e.iter_mut().zip(central) {
                *x += y;
            }
            out.add_term(Monomial::new(letters, e), c.clone());
        }
        out
    }

    /// Reduces `p` to a combination of irreducible monomials.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        let len = p.max_len();
        if len > self.cap {
            return Err(Error::DegreeOverflow { len, cap: self.cap });
        }
        if p.field().d() != self.field.d() {
            return Err(Error::ContextMismatch(p.field().d(), self.field.d()));
        }
        Ok(self.reduce(p.clone()))
    }

    fn reduce(&self, p: NCPoly) -> NCPoly {
        let mut pending: BTreeMap<Monomial, Cyc> = p.into_terms();
        let mut out = NCPoly::zero(&self.field);
        while let Some((m, c)) = pending.pop_last() {
            let Some((r, pos)) = self.find_match(m.letters()) else {
                out.add_term(m, c);
                continue;
            };
            let w = m.letters();
            let lhs_len = self.rules[r].lhs.len();
            let image = self.splice(r, &w[..pos], &w[pos + lhs_len..], m.central());
            for (m2, c2) in image.into_terms() {
                let v = &c * &c2;
                match pending.entry(m2) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(v);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get() + &v;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        out
    }

    /// Ambiguities between rule `i` (left) and rule `j` with `lhs_j` starting at
    /// offset `pos` of the combined word.
    fn ambiguity(&self, i: usize, j: usize, pos: usize) -> Ambiguity {
        let x = &self.rules[i].lhs;
        let y = &self.rules[j].lhs;
        let mut word = x.clone();
        if pos + y.len() > x.len() {
            word.extend_from_slice(&y[x.len() - pos..]);
        }
        let left = self.splice(i, &[], &word[x.len()..], [0; 4]);
        let right = self.splice(j, &word[..pos], &word[pos + y.len()..], [0; 4]);
        Ambiguity { word, left, right }
    }

    /// Offsets at which `rules[j].lhs` overlaps or sits inside `rules[i].lhs`.
    fn overlaps(&self, i: usize, j: usize) -> Vec<usize> {
        let x = &self.rules[i].lhs;
        let y = &self.rules[j].lhs;
        let mut out = Vec::new();
        for pos in 1..x.len() {
            let common = (x.len() - pos).min(y.len());
            if x[pos..pos + common] == y[..common] {
                out.push(pos);
            }
        }
        if i != j && y.len() < x.len() {
            // inclusion at offset 0 is not covered by the loop above
            if x.starts_with(y) {
                out.push(0);
            }
        }
        out
    }

    fn queue_pairs(&self, k: usize, queue: &mut BTreeSet<(usize, usize, usize, usize)>) {
        for r in 0..=k {
            for (i, j) in [(r, k), (k, r)] {
                for pos in self.overlaps(i, j) {
                    let len = (pos + self.rules[j].lhs.len()).max(self.rules[i].lhs.len());
                    if len <= self.cap {
                        queue.insert((len, i, j, pos));
                    }
                }
            }
        }
    }

    fn complete(&mut self) -> Result<()> {
        let mut queue = BTreeSet::new();
        for k in 0..self.rules.len() {
            self.queue_pairs(k, &mut queue);
        }
        while let Some((_, i, j, pos)) = queue.pop_first() {
            let amb = self.ambiguity(i, j, pos);
            let diff = self.reduce(amb.left.sub(&amb.right)?);
            let Some((lead, c)) = diff.leading() else { continue };
            if lead.has_central() {
                return Err(Error::UnorientableRelation(format!(
                    "overlap {:?} leaves {lead:?} with a central factor",
                    amb.word
                )));
            }
            let (lead, c) = (lead.clone(), c.clone());
            let mut rest = diff.clone();
            rest.add_term(lead.clone(), -&c);
            let rhs = rest.scale(&-c.inv()?);
            self.push(Rule { lhs: lead.letters().to_vec(), rhs, origin: RuleOrigin::Completion });
            self.queue_pairs(self.rules.len() - 1, &mut queue);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{make_field, FieldExt};
    use Gen::*;

    #[test]
    fn base_rules_validate() {
        for d in [3, 5, 6, 7, 8, 12] {
            let f = make_field(d).unwrap();
            for (label, target, rel) in base_relations(&f) {
                solve_for(&rel, &target, label).unwrap();
            }
        }
    }

    #[test]
    fn ba_rule_matches_relation() {
        // Hand expansion of the gamma relation, used as an independent oracle:
        // BA = q^2 AB + q(q^2 - q^-2) C - q(q - q^-1) gamma.
        let f = make_field(7).unwrap();
        let sys = RewriteSystem::new(&f, 6).unwrap();
        let nf = sys.normal_form(&NCPoly::word(&f, &[B, A])).unwrap();
        let q = |k| f.q_power(k);
        let mut expect = NCPoly::zero(&f);
        expect.add_term(Monomial::word(&[A, B]), q(2));
        expect.add_term(Monomial::word(&[C]), &q(1) * &(q(2) - q(-2)));
        expect.add_term(Monomial::new(vec![], [0, 0, 0, 1]), -(&q(1) * &(q(1) - q(-1))));
        assert_eq!(nf, expect);
    }

    #[test]
    fn abc_rule_matches_casimir() {
        let f = make_field(5).unwrap();
        let sys = RewriteSystem::new(&f, 6).unwrap();
        let nf = sys.normal_form(&NCPoly::word(&f, &[A, B, C])).unwrap();
        let q = |k| f.q_power(k);
        let mut expect = NCPoly::zero(&f);
        expect.add_term(Monomial::new(vec![], [1, 0, 0, 0]), q(-1));
        expect.add_term(Monomial::word(&[A, A]), -q(1));
        expect.add_term(Monomial::word(&[B, B]), -q(-3));
        expect.add_term(Monomial::word(&[C, C]), -q(1));
        expect.add_term(Monomial::new(vec![0], [0, 1, 0, 0]), f.one());
        expect.add_term(Monomial::new(vec![1], [0, 0, 1, 0]), q(-2));
        expect.add_term(Monomial::new(vec![2], [0, 0, 0, 1]), f.one());
        assert_eq!(nf, expect);
    }

    #[test]
    fn completion_adds_rules_and_irreducibles_are_pbw() {
        let f = make_field(3).unwrap();
        let sys = RewriteSystem::new(&f, 8).unwrap();
        assert!(sys.completion_rule_count() > 0);
        for r in sys.rules() {
            for (m, _) in r.rhs.terms() {
                assert!(m < &Monomial::new(r.lhs.clone(), [0; 4]));
            }
        }
        // every irreducible word up to length 6 is A^i B^j C^k with ijk = 0
        let mut words = vec![vec![]];
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &words {
                for l in 0..3u8 {
                    let mut v: Vec<u8> = w.clone();
                    v.push(l);
                    if sys.is_irreducible(&v) {
                        assert!(Monomial::new(v.clone(), [0; 4]).is_pbw(), "{v:?}");
                        next.push(v);
                    }
                }
            }
            words = next;
        }
    }

    #[test]
    fn overflow_is_reported() {
        let f = make_field(5).unwrap();
        let sys = RewriteSystem::new(&f, 4).unwrap();
        let p = NCPoly::word(&f, &[B, B, B, A, A]);
        assert_eq!(sys.normal_form(&p).unwrap_err(), Error::DegreeOverflow { len: 5, cap: 4 });
    }
}
