use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Default cap on the number of closed sets enumerated exhaustively.
pub const DEFAULT_CLOSED_SET_LIMIT: usize = 1 << 20;

/// A topology on `{0, …, n−1}` generated by a family of open sets.
///
/// Every finite space is Alexandrov: each point `p` has a smallest open
/// neighbourhood `U_p`, the intersection of the generating opens through
/// `p`, and a set is open iff it contains `U_p` for each of its points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSpace {
    size: usize,
    subbasis: Vec<Subset>,
    minimal: Vec<Subset>,
}

/// How [`FiniteSpace::irreducible_closed_sets`] obtained its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IrreducibleMethod {
    /// Every closed set was enumerated and tested.
    Exhaustive,
    /// Too many closed sets; used that an irreducible closed set of a
    /// finite space is the finite union of its point closures, hence one of
    /// them.
    PointClosures,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimension {
    pub value: usize,
    /// A longest strict chain of irreducible closed sets, smallest first.
    pub chain: Vec<Subset>,
    pub method: IrreducibleMethod,
}

impl FiniteSpace {
    pub fn new(size: usize, subbasis: Vec<Subset>) -> Result<Self> {
        if size > Subset::CAPACITY {
            return Err(Error::resource(format!("{size} points exceed the subset capacity")));
        }
        let full = Subset::full(size);
        if let Some(bad) = subbasis.iter().find(|u| !u.is_subset(full)) {
            return Err(Error::structural(format!("open {bad:?} has points outside the space")));
        }
        let minimal = (0..size)
            .map(|p| subbasis.iter().filter(|u| u.contains(p)).fold(full, |acc, u| acc.intersection(*u)))
            .collect();
        Ok(FiniteSpace { size, subbasis, minimal })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> Subset {
        Subset::full(self.size)
    }

    pub fn subbasis(&self) -> &[Subset] {
        &self.subbasis
    }

    /// `U_p`.
    pub fn minimal_open(&self, p: usize) -> Subset {
        self.minimal[p]
    }

    pub fn is_open(&self, u: Subset) -> bool {
        u.is_subset(self.points()) && u.iter().all(|p| self.minimal[p].is_subset(u))
    }

    pub fn interior(&self, u: Subset) -> Subset {
        u.iter().filter(|&p| self.minimal[p].is_subset(u)).collect()
    }

    pub fn closure(&self, z: Subset) -> Subset {
        (0..self.size).filter(|&x| !self.minimal[x].is_disjoint(z)).collect()
    }

    pub fn is_closed(&self, z: Subset) -> bool {
        self.closure(z) == z
    }

    pub fn point_closure(&self, p: usize) -> Subset {
        self.closure(Subset::singleton(p))
    }

    /// `q` is a specialization of `p`: `q ∈ cl{p}`.
    pub fn specializes(&self, p: usize, q: usize) -> bool {
        self.minimal[q].contains(p)
    }

    /// Any two nonempty relatively open subsets of `z` meet; the smallest
    /// relatively open set around `p` is `U_p ∩ z`.
    pub fn is_irreducible(&self, z: Subset) -> bool {
        !z.is_empty()
            && z.iter().all(|p| {
                z.iter().all(|q| !self.minimal[p].intersection(self.minimal[q]).is_disjoint(z))
            })
    }

    /// All closed sets, enumerated as unions of point closures.
    pub fn closed_sets(&self, limit: usize) -> Result<Vec<Subset>> {
        let closures: Vec<Subset> = (0..self.size).map(|p| self.point_closure(p)).collect();
        // generic points first, so a point's closure only reaches undecided points
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&p| std::cmp::Reverse(closures[p].len()));
        let mut out = Vec::new();
        let mut stack = vec![(0usize, Subset::empty(), Subset::empty())];
        while let Some((i, z, excluded)) = stack.pop() {
            if i == order.len() {
                out.push(z);
                if out.len() > limit {
                    return Err(Error::resource(format!("more than {limit} closed sets")));
                }
                continue;
            }
            let p = order[i];
            if z.contains(p) {
                stack.push((i + 1, z, excluded));
                continue;
            }
            stack.push((i + 1, z, excluded.with(p)));
            if closures[p].is_disjoint(excluded) {
                stack.push((i + 1, z.union(closures[p]), excluded));
            }
        }
        out.sort_by_key(|s| s.sort_key());
        Ok(out)
    }

    pub fn irreducible_closed_sets(&self, limit: usize) -> (Vec<Subset>, IrreducibleMethod) {
        match self.closed_sets(limit) {
            Ok(all) => (all.into_iter().filter(|&z| self.is_irreducible(z)).collect(), IrreducibleMethod::Exhaustive),
            Err(_) => {
                let mut v: Vec<Subset> = (0..self.size).map(|p| self.point_closure(p)).collect();
                v.sort_by_key(|s| s.sort_key());
                v.dedup();
                debug_assert!(v.iter().all(|&z| self.is_irreducible(z)));
                (v, IrreducibleMethod::PointClosures)
            }
        }
    }

    /// Krull dimension: longest strict chain of irreducible closed sets.
    pub fn dimension(&self, limit: usize) -> Dimension {
        let (irr, method) = self.irreducible_closed_sets(limit);
        let chain = longest_chain(&irr);
        Dimension { value: chain.len().saturating_sub(1), chain, method }
    }

    /// Length of the longest strict specialization chain `p₀ ⇝ p₁ ⇝ …`.
    pub fn longest_specialization_chain(&self) -> usize {
        let closures: Vec<Subset> = (0..self.size).map(|p| self.point_closure(p)).collect();
        let mut distinct = closures.clone();
        distinct.sort_by_key(|s| s.sort_key());
        distinct.dedup();
        longest_chain(&distinct).len().saturating_sub(1)
    }

    /// Preimage of every generating open of `target` under `f` is open.
    pub fn is_continuous(&self, f: &[usize], target: &FiniteSpace) -> bool {
        f.len() == self.size
            && target.subbasis.iter().all(|v| self.is_open((0..self.size).filter(|&p| v.contains(f[p])).collect()))
    }

    /// Image of every open of `self` is open in `target`; checking minimal
    /// opens suffices since images commute with unions.
    pub fn is_open_map(&self, f: &[usize], target: &FiniteSpace) -> bool {
        (0..self.size).all(|p| target.is_open(self.minimal[p].iter().map(|q| f[q]).collect()))
    }

    /// Some finite subfamily of `opens` already covers `target`, and the
    /// family covers it at all. Returns indices of a minimal-by-greed subcover.
    pub fn finite_subcover(&self, opens: &[Subset], target: Subset) -> Option<Vec<usize>> {
        let mut covered = Subset::empty();
        let mut chosen = Vec::new();
        for p in target {
            if covered.contains(p) {
                continue;
            }
            let i = opens.iter().position(|u| u.contains(p))?;
            chosen.push(i);
            covered = covered.union(opens[i]);
        }
        Some(chosen)
    }

    /// Graphviz rendering of the specialization order; edges go from the
    /// more generic to the more special point and only covering pairs are drawn.
    pub fn to_dot(&self, names: &[String]) -> String {
        let mut out = String::from("digraph specialization {\n  rankdir=TB;\n");
        for (p, name) in names.iter().enumerate().take(self.size) {
            out.push_str(&format!("  p{p} [label={:?}];\n", name));
        }
        let strict = |a: usize, b: usize| self.specializes(a, b) && !self.specializes(b, a);
        for p in 0..self.size {
            for q in (0..self.size).filter(|&q| strict(p, q)) {
                if !(0..self.size).any(|r| strict(p, r) && strict(r, q)) {
                    out.push_str(&format!("  p{p} -> p{q};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Longest strictly increasing chain under inclusion.
fn longest_chain(sets: &[Subset]) -> Vec<Subset> {
    let mut sorted: Vec<Subset> = sets.to_vec();
    sorted.sort_by_key(|s| s.sort_key());
    let mut best: Vec<(usize, Option<usize>)> = Vec::with_capacity(sorted.len());
    for i in 0..sorted.len() {
        let prev = (0..i)
            .filter(|&j| sorted[j] != sorted[i] && sorted[j].is_subset(sorted[i]))
            .max_by_key(|&j| (best[j].0, std::cmp::Reverse(j)));
        best.push(match prev {
            Some(j) => (best[j].0 + 1, Some(j)),
            None => (1, None),
        });
    }
    let Some(end) = (0..sorted.len()).max_by_key(|&i| (best[i].0, std::cmp::Reverse(i))) else {
        return vec![];
    };
    let mut chain = vec![sorted[end]];
    let mut cur = end;
    while let Some(j) = best[cur].1 {
        chain.push(sorted[j]);
        cur = j;
    }
    chain.reverse();
    chain
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> Subset {
        xs.iter().copied().collect()
    }

    /// Sierpiński space: {1} open.
    fn sierpinski() -> FiniteSpace {
        FiniteSpace::new(2, vec![set(&[1])]).unwrap()
    }

    #[test]
    fn sierpinski_basics() {
        let s = sierpinski();
        assert_eq!(s.minimal_open(0), set(&[0, 1]));
        assert_eq!(s.minimal_open(1), set(&[1]));
        assert_eq!(s.point_closure(1), set(&[0, 1]));
        assert!(s.specializes(1, 0));
        assert_eq!(s.closed_sets(100).unwrap(), vec![set(&[]), set(&[0]), set(&[0, 1])]);
        let d = s.dimension(100);
        assert_eq!(d.value, 1);
        assert_eq!(d.method, IrreducibleMethod::Exhaustive);
        assert_eq!(s.longest_specialization_chain(), 1);
    }

    #[test]
    fn discrete_and_indiscrete() {
        let d = FiniteSpace::new(3, vec![set(&[0]), set(&[1]), set(&[2])]).unwrap();
        assert_eq!(d.closed_sets(100).unwrap().len(), 8);
        assert_eq!(d.dimension(100).value, 0);
        let i = FiniteSpace::new(3, vec![]).unwrap();
        assert_eq!(i.closed_sets(100).unwrap(), vec![set(&[]), set(&[0, 1, 2])]);
        assert!(i.is_irreducible(set(&[0, 1, 2])));
        assert_eq!(i.dimension(100).value, 0);
    }

    #[test]
    fn closed_sets_match_brute_force() {
        // a non-T0 space with a chain on top
        let s = FiniteSpace::new(4, vec![set(&[0, 1]), set(&[0, 1, 2]), set(&[3])]).unwrap();
        let brute: Vec<Subset> = {
            let mut v: Vec<Subset> = (0u128..16).map(Subset::from_bits).filter(|&z| s.is_closed(z)).collect();
            v.sort_by_key(|z| z.sort_key());
            v
        };
        assert_eq!(s.closed_sets(100).unwrap(), brute);
    }

    #[test]
    fn fallback_agrees_with_exhaustive() {
        let s = FiniteSpace::new(5, vec![set(&[0]), set(&[0, 1]), set(&[0, 2]), set(&[0, 1, 2, 3])]).unwrap();
        let exact = s.dimension(1000);
        let fallback = s.dimension(1);
        assert_eq!(fallback.method, IrreducibleMethod::PointClosures);
        assert_eq!(exact.value, fallback.value);
        assert_eq!(exact.value, s.longest_specialization_chain());
    }

    #[test]
    fn dot_has_covering_edges_only() {
        let s = FiniteSpace::new(3, vec![set(&[0]), set(&[0, 1])]).unwrap();
        let dot = s.to_dot(&["a".into(), "b".into(), "c".into()]);
        assert!(dot.contains("p0 -> p1"));
        assert!(dot.contains("p1 -> p2"));
        assert!(!dot.contains("p0 -> p2"));
    }
}
