//! Finitely presented semirings `ℕ⟨x₁,…,x_k⟩/(relations)` and a bounded
//! semi-decision procedure for their word problem.
//!
//! Two terms are congruent when they are joined by a chain of elementary
//! moves `m·l + q ↔ m·r + q` with `(l, r)` a relation and `m` a monomial.
//! The equivalence closure of these moves is exactly the congruence the
//! relations generate; restricting every intermediate term to a bounded
//! universe turns it into a semi-decision: a chain found inside the bound is
//! a proof, a missing one only says "not within this bound".

mod term;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

pub use term::Term;

use crate::error::{Error, Result};
use crate::kernel::FiniteSemiring;
use crate::poly::Monomial;

/// Generators plus relations; `idempotent` adds `1 + 1 ∼ 1`.
#[derive(Clone, Debug)]
pub struct Presentation {
    gens: Vec<String>,
    rels: Vec<(Term, Term)>,
    idempotent: bool,
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    gens: Vec<String>,
    rels: Vec<(String, String)>,
    #[serde(default)]
    idempotent: bool,
}

impl Presentation {
    pub fn new(gens: &[&str], rels: &[(&str, &str)], idempotent: bool) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        if let Some(g) = gens.iter().find(|g| !seen.insert(**g)) {
            return Err(Error::structural(format!("generator {g:?} listed twice")));
        }
        let rels = rels
            .iter()
            .map(|(l, r)| Ok((Term::parse(l, gens)?, Term::parse(r, gens)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation { gens: gens.iter().map(|g| g.to_string()).collect(), rels, idempotent })
    }

    /// `{"gens": [...], "rels": [["x^2","x"], ...], "idempotent": false}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PresentationDoc = serde_json::from_str(text)?;
        let gens: Vec<&str> = doc.gens.iter().map(String::as_str).collect();
        let rels: Vec<(&str, &str)> = doc.rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
        Self::new(&gens, &rels, doc.idempotent)
    }

    pub fn to_json(&self) -> String {
        let doc = PresentationDoc {
            gens: self.gens.clone(),
            rels: self.rels.iter().map(|(l, r)| (self.format(l), self.format(r))).collect(),
            idempotent: self.idempotent,
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    /// `ℕ[x,y]/(x² ∼ x, y² ∼ y, 1 + x ∼ x + y)`.
    pub fn xy_counterexample() -> Self {
        Self::new(&["x", "y"], &[("x^2", "x"), ("y^2", "y"), ("1+x", "x+y")], false)
            .expect("fixed presentation parses")
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.gens.len()
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotent
    }

    pub fn parse(&self, text: &str) -> Result<Term> {
        let gens: Vec<&str> = self.gens.iter().map(String::as_str).collect();
        Term::parse(text, &gens)
    }

    pub fn format(&self, t: &Term) -> String {
        t.format(&self.gens)
    }

    /// All relations, including `1+1 ∼ 1` when idempotent.
    pub fn relations(&self) -> Vec<(Term, Term)> {
        let mut rels = self.rels.clone();
        if self.idempotent {
            let one = Term::one(self.nvars());
            rels.push((one.add(&one), one));
        }
        rels
    }
}

/// Universe bound: total degree of every monomial and sum of coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bound {
    pub degree: u32,
    pub coeff: u32,
}

impl Bound {
    pub const DEFAULT: Bound = Bound { degree: 6, coeff: 6 };

    pub fn uniform(b: u32) -> Self {
        Bound { degree: b, coeff: b }
    }

    pub fn admits(&self, t: &Term) -> bool {
        t.degree() <= self.degree && t.weight() <= self.coeff
    }
}

impl Default for Bound {
    fn default() -> Self {
        Bound::DEFAULT
    }
}

/// One elementary move `m·l + q → m·r + q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub from: Term,
    pub to: Term,
    /// Index into [`Presentation::relations`].
    pub relation: usize,
    /// Whether the relation was used right-to-left.
    pub reversed: bool,
    pub multiplier: Monomial,
}

/// A replayable proof that two terms are congruent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteChain {
    pub start: Term,
    pub steps: Vec<Step>,
}

impl RewriteChain {
    pub fn end(&self) -> &Term {
        self.steps.last().map_or(&self.start, |s| &s.to)
    }

    /// Re-checks every step against the presentation.
    pub fn verify(&self, p: &Presentation) -> bool {
        let rels = p.relations();
        let mut cur = &self.start;
        for s in &self.steps {
            if &s.from != cur || s.multiplier.len() != p.nvars() {
                return false;
            }
            let Some((l, r)) = rels.get(s.relation) else { return false };
            let (l, r) = if s.reversed { (r, l) } else { (l, r) };
            let applied = s
                .from
                .checked_sub(&l.scale_monomial(&s.multiplier))
                .map(|q| q.add(&r.scale_monomial(&s.multiplier)));
            if applied.as_ref() != Some(&s.to) {
                return false;
            }
            cur = &s.to;
        }
        true
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Yes(RewriteChain),
    /// No chain exists inside the universe of this bound.
    NoAtBound(Bound),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
}

/// Default cap on the number of terms the index may materialize.
pub const DEFAULT_TERM_BUDGET: usize = 1 << 21;

/// Congruence classes of the bounded universe, discovered on demand.
///
/// Each query explores the full connected component of the move graph that
/// contains its terms, so answers never depend on query order.
#[derive(Clone, Debug)]
pub struct CongruenceIndex {
    presentation: Presentation,
    rels: Vec<(Term, Term)>,
    bound: Bound,
    budget: usize,
    terms: Vec<Term>,
    ids: HashMap<Term, usize>,
    component: Vec<usize>,
    /// BFS tree: parent term and the move leading from parent to child.
    parent: Vec<Option<(usize, usize, bool, Monomial)>>,
}

impl CongruenceIndex {
    pub fn build(p: &Presentation, bound: Bound) -> Result<Self> {
        Self::with_budget(p, bound, DEFAULT_TERM_BUDGET)
    }

    pub fn with_budget(p: &Presentation, bound: Bound, budget: usize) -> Result<Self> {
        let rels = p.relations();
        for (l, r) in &rels {
            if !bound.admits(l) || !bound.admits(r) {
                return Err(Error::precondition(format!(
                    "relation {} ~ {} exceeds bound {bound:?}",
                    p.format(l),
                    p.format(r)
                )));
            }
        }
        Ok(CongruenceIndex {
            presentation: p.clone(),
            rels,
            bound,
            budget,
            terms: Vec::new(),
            ids: HashMap::new(),
            component: Vec::new(),
            parent: Vec::new(),
        })
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Number of terms materialized so far.
    pub fn explored(&self) -> usize {
        self.terms.len()
    }

    fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = vec![vec![]];
        for _ in 0..nvars {
            out = out
                .into_iter()
                .flat_map(|m: Monomial| {
                    let used: u32 = m.iter().sum();
                    (0..=degree - used).map(move |e| {
                        let mut n = m.clone();
                        n.push(e);
                        n
                    })
                })
                .collect();
        }
        out
    }

    /// Every elementary move out of `u` that stays inside the universe.
    fn neighbours(&self, u: &Term) -> Vec<(Term, usize, bool, Monomial)> {
        let mut out = Vec::new();
        let n = u.nvars();
        for (ri, (l, r)) in self.rels.iter().enumerate() {
            for (reversed, (from, to)) in [(false, (l, r)), (true, (r, l))] {
                let multipliers: Vec<Monomial> = match from.coeffs().keys().next() {
                    // m·0 is always present: any m that keeps m·to in bounds
                    None => Self::monomials_up_to(n, self.bound.degree.saturating_sub(to.degree())),
                    Some(lead) => u
                        .coeffs()
                        .keys()
                        .filter(|v| v.iter().zip(lead).all(|(a, b)| a >= b))
                        .map(|v| v.iter().zip(lead).map(|(a, b)| a - b).collect())
                        .collect(),
                };
                for m in multipliers {
                    let Some(q) = u.checked_sub(&from.scale_monomial(&m)) else { continue };
                    let v = q.add(&to.scale_monomial(&m));
                    if &v != u && self.bound.admits(&v) {
                        out.push((v, ri, reversed, m));
                    }
                }
            }
        }
        out
    }

    fn explore(&mut self, start: &Term) -> Result<usize> {
        if let Some(&id) = self.ids.get(start) {
            return Ok(id);
        }
        if !self.bound.admits(start) || start.nvars() != self.presentation.nvars() {
            return Err(Error::precondition(format!(
                "term {} lies outside the universe of bound {:?}",
                self.presentation.format(start),
                self.bound
            )));
        }
        let root = self.terms.len();
        let mut queue = VecDeque::from([root]);
        self.push(start.clone(), root, None)?;
        while let Some(id) = queue.pop_front() {
            let u = self.terms[id].clone();
            for (v, ri, reversed, m) in self.neighbours(&u) {
                if !self.ids.contains_key(&v) {
                    let vid = self.push(v, root, Some((id, ri, reversed, m)))?;
                    queue.push_back(vid);
                }
            }
        }
        Ok(root)
    }

    fn push(
        &mut self,
        t: Term,
        component: usize,
        parent: Option<(usize, usize, bool, Monomial)>,
    ) -> Result<usize> {
        if self.terms.len() >= self.budget {
            return Err(Error::resource(format!(
                "congruence index exceeded its budget of {} terms",
                self.budget
            )));
        }
        let id = self.terms.len();
        self.ids.insert(t.clone(), id);
        self.terms.push(t);
        self.component.push(component);
        self.parent.push(parent);
        Ok(id)
    }

    /// Component representative id of `t`.
    fn class_id(&mut self, t: &Term) -> Result<usize> {
        let id = self.explore(t)?;
        Ok(self.component[id])
    }

    /// Path of moves from the component root to `id`.
    fn path_from_root(&self, mut id: usize) -> Vec<Step> {
        let mut steps = Vec::new();
        while let Some((pid, ri, reversed, m)) = self.parent[id].clone() {
            steps.push(Step {
                from: self.terms[pid].clone(),
                to: self.terms[id].clone(),
                relation: ri,
                reversed,
                multiplier: m,
            });
            id = pid;
        }
        steps.reverse();
        steps
    }

    pub fn congruent(&mut self, s: &Term, t: &Term) -> Result<Verdict> {
        let (cs, ct) = (self.class_id(s)?, self.class_id(t)?);
        if cs != ct {
            return Ok(Verdict::NoAtBound(self.bound));
        }
        let (is, it) = (self.ids[s], self.ids[t]);
        // s → root by reversing the root → s path, then root → t
        let mut steps: Vec<Step> = self
            .path_from_root(is)
            .into_iter()
            .rev()
            .map(|st| Step {
                from: st.to,
                to: st.from,
                relation: st.relation,
                reversed: !st.reversed,
                multiplier: st.multiplier,
            })
            .collect();
        steps.extend(self.path_from_root(it));
        // drop a detour through the shared prefix of both root paths
        let mut chain = RewriteChain { start: s.clone(), steps };
        shortcut(&mut chain);
        Ok(Verdict::Yes(chain))
    }

    /// All terms currently known to be congruent to `t`, sorted canonically.
    pub fn class_of(&mut self, t: &Term) -> Result<Vec<Term>> {
        let c = self.class_id(t)?;
        let mut members: Vec<Term> = (0..self.terms.len())
            .filter(|&i| self.component[i] == c)
            .map(|i| self.terms[i].clone())
            .collect();
        members.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(members)
    }

    /// Smallest `k ≤ max_k` with `aᵏ·s ∼ aᵏ·t`, where `a` is a generator.
    ///
    /// Powers that leave the universe are skipped.
    pub fn localized_images_equal(
        &mut self,
        s: &Term,
        t: &Term,
        generator: usize,
        max_k: u32,
    ) -> Result<Option<(u32, RewriteChain)>> {
        if generator >= self.presentation.nvars() {
            return Err(Error::precondition(format!("no generator with index {generator}")));
        }
        let a = Term::generator(self.presentation.nvars(), generator);
        for k in 0..=max_k {
            let ak = a.pow(k);
            let (u, v) = (ak.mul(s), ak.mul(t));
            if !self.bound.admits(&u) || !self.bound.admits(&v) {
                continue;
            }
            if let Verdict::Yes(chain) = self.congruent(&u, &v)? {
                return Ok(Some((k, chain)));
            }
        }
        Ok(None)
    }

    /// Every term of the universe, in canonical order.
    pub fn universe(&self) -> Vec<Term> {
        let n = self.presentation.nvars();
        let monos = Self::monomials_up_to(n, self.bound.degree);
        let mut out = Vec::new();
        let mut coeffs = vec![0u32; monos.len()];
        fn rec(i: usize, left: u32, monos: &[Monomial], coeffs: &mut Vec<u32>, n: usize, out: &mut Vec<Term>) {
            if i == monos.len() {
                let t = Term::from_coeffs(n, monos.iter().cloned().zip(coeffs.iter().copied()))
                    .expect("monomials have the right length");
                out.push(t);
                return;
            }
            for c in 0..=left {
                coeffs[i] = c;
                rec(i + 1, left - c, monos, coeffs, n, out);
            }
            coeffs[i] = 0;
        }
        rec(0, self.bound.coeff, &monos, &mut coeffs, n, &mut out);
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        out
    }

    /// Reconstructs a finite semiring from the classes of the whole universe.
    ///
    /// Each class is represented by its canonically smallest term; sums and
    /// products of representatives must land back in the universe.
    pub fn finite_quotient(&mut self, max_classes: usize) -> Result<(FiniteSemiring, Vec<Term>)> {
        let universe = self.universe();
        if universe.len() > self.budget {
            return Err(Error::resource(format!("universe has {} terms", universe.len())));
        }
        let mut reps: Vec<Term> = Vec::new();
        let mut rep_of_class: HashMap<usize, usize> = HashMap::new();
        for t in &universe {
            let c = self.class_id(t)?;
            if let std::collections::hash_map::Entry::Vacant(e) = rep_of_class.entry(c) {
                e.insert(reps.len());
                reps.push(t.clone());
                if reps.len() > max_classes {
                    return Err(Error::resource(format!("more than {max_classes} classes")));
                }
            }
        }
        let n = reps.len();
        let index = |t: &Term, this: &mut Self| -> Result<usize> {
            if !this.bound.admits(t) {
                return Err(Error::BoundExhausted(format!(
                    "{} leaves the universe",
                    this.presentation.format(t)
                )));
            }
            let c = this.class_id(t)?;
            Ok(rep_of_class[&c])
        };
        let mut add = vec![vec![0; n]; n];
        let mut mul = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                add[i][j] = index(&reps[i].add(&reps[j]), self)?;
                mul[i][j] = index(&reps[i].mul(&reps[j]), self)?;
            }
        }
        let nv = self.presentation.nvars();
        let zero = index(&Term::zero(nv), self)?;
        let one = index(&Term::one(nv), self)?;
        let names = reps.iter().map(|t| self.presentation.format(t)).collect();
        let s = FiniteSemiring::from_tables("presented quotient", n, zero, one, &add, &mul)?
            .with_names(names)?;
        Ok((s, reps))
    }
}

/// Removes loops from a chain (a term visited twice).
fn shortcut(chain: &mut RewriteChain) {
    let mut seen: HashMap<Term, usize> = HashMap::from([(chain.start.clone(), 0)]);
    let mut kept: Vec<Step> = Vec::new();
    for step in std::mem::take(&mut chain.steps) {
        if let Some(&pos) = seen.get(&step.to) {
            for s in kept.drain(pos..) {
                seen.remove(&s.to);
            }
            continue;
        }
        kept.push(step);
        seen.insert(kept.last().unwrap().to.clone(), kept.len());
    }
    chain.steps = kept;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{construct, find_isomorphism, verify_axioms};

    fn x_squared() -> Presentation {
        Presentation::new(&["x"], &[("x^2", "x")], false).unwrap()
    }

    #[test]
    fn cube_collapses_to_x() {
        let p = x_squared();
        let mut idx = CongruenceIndex::build(&p, Bound::uniform(4)).unwrap();
        let v = idx.congruent(&p.parse("x^3").unwrap(), &p.parse("x").unwrap()).unwrap();
        let Verdict::Yes(chain) = v else { panic!("x^3 should reduce to x") };
        assert!(chain.verify(&p));
        assert_eq!(chain.end(), &p.parse("x").unwrap());
    }

    #[test]
    fn empty_relations_are_discrete() {
        let p = Presentation::new(&["x", "y"], &[], false).unwrap();
        let mut idx = CongruenceIndex::build(&p, Bound::uniform(3)).unwrap();
        for t in idx.universe().iter().take(40) {
            assert_eq!(idx.class_of(t).unwrap(), vec![t.clone()]);
        }
        assert!(!idx.congruent(&p.parse("x").unwrap(), &p.parse("y").unwrap()).unwrap().is_yes());
    }

    #[test]
    fn xy_example_at_default_bound() {
        let p = Presentation::xy_counterexample();
        let mut idx = CongruenceIndex::build(&p, Bound::DEFAULT).unwrap();
        let t = |s: &str| p.parse(s).unwrap();
        assert!(!idx.congruent(&t("1+x*y"), &t("x+y")).unwrap().is_yes());
        let Verdict::Yes(c) = idx.congruent(&t("x+x^2*y"), &t("x^2+x*y")).unwrap() else {
            panic!("x(1+xy) ~ x(x+y)")
        };
        assert!(c.verify(&p));
        assert!(idx.congruent(&t("x^2"), &t("x")).unwrap().is_yes());
        assert!(idx.congruent(&t("0"), &t("0")).unwrap().is_yes());
        for g in 0..2 {
            let (k, chain) = idx.localized_images_equal(&t("1+x*y"), &t("x+y"), g, 3).unwrap().unwrap();
            assert_eq!(k, 1);
            assert!(chain.verify(&p));
        }
        assert_eq!(idx.localized_images_equal(&t("x"), &t("x"), 0, 3).unwrap().unwrap().0, 0);
    }

    #[test]
    fn outside_universe_is_a_precondition_error() {
        let p = x_squared();
        let mut idx = CongruenceIndex::build(&p, Bound::uniform(2)).unwrap();
        assert!(matches!(
            idx.congruent(&p.parse("x^3").unwrap(), &p.parse("x").unwrap()),
            Err(Error::Precondition(_))
        ));
        assert!(CongruenceIndex::build(&p, Bound::uniform(1)).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let p = Presentation::new(&["x", "y"], &[("x", "y")], false).unwrap();
        let mut idx = CongruenceIndex::with_budget(&p, Bound::uniform(6), 3).unwrap();
        let r = idx.congruent(&p.parse("x^3*y^3").unwrap(), &p.parse("y^6").unwrap());
        assert!(matches!(r, Err(Error::Resource(_))));
    }

    #[test]
    fn boolean_line_reconstructed() {
        let p = Presentation::new(&["x"], &[("x^2", "x")], true).unwrap();
        let mut idx = CongruenceIndex::build(&p, Bound::DEFAULT).unwrap();
        let (s, reps) = idx.finite_quotient(16).unwrap();
        assert_eq!(s.size(), 4);
        assert!(verify_axioms(&s).is_valid());
        assert!(find_isomorphism(&s, &construct::bool_idempotent_line()).is_some());
        let names: Vec<String> = reps.iter().map(|t| p.format(t)).collect();
        assert_eq!(names, ["0", "1", "x", "1+x"]);
    }

    #[test]
    fn json_round_trip() {
        let p = Presentation::xy_counterexample();
        let q = Presentation::from_json(&p.to_json()).unwrap();
        assert_eq!(q.relations(), p.relations());
        assert!(Presentation::from_json(r#"{"gens":["x","x"],"rels":[]}"#).is_err());
    }
}
