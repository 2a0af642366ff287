use serde::{Deserialize, Serialize};

use super::FiniteSemiring;

/// A map between finite semirings, stored as its element table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn identity(n: usize) -> Self {
        Homomorphism { map: (0..n).collect() }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Homomorphism) -> Homomorphism {
        Homomorphism { map: self.map.iter().map(|&a| then.map[a]).collect() }
    }

    /// Preimage of `0` in the codomain.
    pub fn kernel(&self, codomain: &FiniteSemiring) -> Vec<usize> {
        self.preimage(|b| b == codomain.zero())
    }

    pub fn preimage(&self, pred: impl Fn(usize) -> bool) -> Vec<usize> {
        (0..self.map.len()).filter(|&a| pred(self.map[a])).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|v| seen.insert(*v))
    }

    pub fn is_surjective(&self, codomain_size: usize) -> bool {
        let mut hit = vec![false; codomain_size];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Exhaustive check that `map` preserves `+`, `·`, `0` and `1`.
pub fn is_homomorphism(a: &FiniteSemiring, b: &FiniteSemiring, map: &[usize]) -> bool {
    if map.len() != a.size() || map.iter().any(|&v| v >= b.size()) {
        return false;
    }
    if map[a.zero()] != b.zero() || map[a.one()] != b.one() {
        return false;
    }
    a.elements().all(|x| {
        a.elements().all(|y| {
            map[a.add(x, y)] == b.add(map[x], map[y]) && map[a.mul(x, y)] == b.mul(map[x], map[y])
        })
    })
}

/// All homomorphisms `A → B`, sorted lexicographically by map table.
pub fn enumerate_homs(a: &FiniteSemiring, b: &FiniteSemiring) -> Vec<Homomorphism> {
    let mut search = HomSearch::new(a, b, false, None);
    search.run();
    let mut out: Vec<Homomorphism> =
        search.found.into_iter().map(|map| Homomorphism { map }).collect();
    out.sort();
    out
}

/// Some isomorphism `A → B`, if one exists.
pub fn find_isomorphism(a: &FiniteSemiring, b: &FiniteSemiring) -> Option<Homomorphism> {
    if a.size() != b.size() {
        return None;
    }
    let mut search = HomSearch::new(a, b, true, Some(1));
    search.run();
    search.found.pop().map(|map| Homomorphism { map })
}

/// Backtracking over element images with forward propagation: once two
/// elements have images, the images of their sum and product are forced.
struct HomSearch<'a> {
    a: &'a FiniteSemiring,
    b: &'a FiniteSemiring,
    injective: bool,
    limit: Option<usize>,
    assign: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl<'a> HomSearch<'a> {
    fn new(a: &'a FiniteSemiring, b: &'a FiniteSemiring, injective: bool, limit: Option<usize>) -> Self {
        HomSearch {
            a,
            b,
            injective,
            limit,
            assign: vec![None; a.size()],
            used: vec![false; b.size()],
            trail: Vec::new(),
            found: Vec::new(),
        }
    }

    fn run(&mut self) {
        let (z, o) = (self.a.zero(), self.a.one());
        if self.set(z, self.b.zero()) && self.set(o, self.b.one()) {
            self.branch();
        }
    }

    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn branch(&mut self) {
        if self.done() {
            return;
        }
        let Some(x) = self.assign.iter().position(Option::is_none) else {
            self.found.push(self.assign.iter().map(|v| v.unwrap()).collect());
            return;
        };
        for v in 0..self.b.size() {
            if self.injective && self.used[v] {
                continue;
            }
            let mark = self.trail.len();
            if self.set(x, v) {
                self.branch();
            }
            self.undo(mark);
            if self.done() {
                return;
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            if let Some(v) = self.assign[x].take() {
                self.used[v] = false;
            }
        }
    }

    /// Assigns `x ↦ v` and propagates; `false` on conflict (caller undoes).
    fn set(&mut self, x: usize, v: usize) -> bool {
        let mut queue = vec![(x, v)];
        while let Some((x, v)) = queue.pop() {
            match self.assign[x] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {}
            }
            if self.injective && self.used[v] {
                return false;
            }
            self.assign[x] = Some(v);
            self.used[v] = true;
            self.trail.push(x);
            for y in 0..self.a.size() {
                let Some(w) = self.assign[y] else { continue };
                queue.push((self.a.add(x, y), self.b.add(v, w)));
                queue.push((self.a.mul(x, y), self.b.mul(v, w)));
            }
        }
        true
    }
}
