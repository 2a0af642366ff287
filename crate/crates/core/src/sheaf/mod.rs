//! Structure sheaves on finite spectra: the monoids `S_U`, the localization
//! presheaf, sections over principal covers (equalizers) and over arbitrary
//! opens (limits over minimal opens), stalks, gluing, global sections and
//! globalization, plus the symbolic and counterexample checks.

mod counterexamples;
mod global;
mod gluing;
mod lemma;
mod nat;

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::kernel::{FiniteSemiring, Homomorphism};
use crate::localize::{localize, LocalizedSemiring};
use crate::spectra::{SpectrumKind, SpectrumSpace};
use crate::subset::Subset;

pub use counterexamples::{ktt_counterexample_verify, sp_injectivity_counterexample};
pub use global::{
    gamma, globalize, hardening_sections_check, is_global, sp_exactness_scan, sp_exactness_scan_presented,
    ExactnessFinding, Gamma, Globalization,
};
pub use gluing::{common_denominator_form, glue};
pub use lemma::{sheaf_lemma_scan, SheafLemmaScan, MAX_SCAN_OPENS};
pub use nat::{glue_nat_pair, nat_stalk, spec_nat_sections, NatOpen, NatSections, NatStalk};

/// Cap on the number of compatible families a section semiring may have.
pub const DEFAULT_SECTION_LIMIT: usize = 1024;

/// `S_U = {b | D(b) ⊇ U}`; with an `Sp` space this is `S̃_U`.
pub fn s_of_open(space: &SpectrumSpace, u: Subset) -> Subset {
    (0..space.basis.len()).filter(|&b| u.is_subset(space.d(b))).collect()
}

/// `S̃_U`, refusing `Spec` spaces.
pub fn s_tilde_of_open(space: &SpectrumSpace, u: Subset) -> Result<Subset> {
    if space.kind != SpectrumKind::Sp {
        return Err(Error::precondition("S̃_U needs the prime-kernel spectrum"));
    }
    Ok(s_of_open(space, u))
}

/// Some `a` with `D(a) = u`.
pub fn principal_generator(space: &SpectrumSpace, u: Subset) -> Option<usize> {
    space.basis.iter().position(|&d| d == u)
}

/// The localization presheaf `U ↦ S_U⁻¹A` with cached values.
pub struct Presheaf<'a> {
    a: &'a FiniteSemiring,
    space: &'a SpectrumSpace,
    cache: RefCell<HashMap<Subset, Rc<LocalizedSemiring>>>,
}

impl<'a> Presheaf<'a> {
    pub fn new(a: &'a FiniteSemiring, space: &'a SpectrumSpace) -> Self {
        Presheaf { a, space, cache: RefCell::new(HashMap::new()) }
    }

    pub fn base(&self) -> &FiniteSemiring {
        self.a
    }

    pub fn space(&self) -> &SpectrumSpace {
        self.space
    }

    fn check_open(&self, u: Subset) -> Result<()> {
        if !u.is_subset(self.space.all()) || !self.space.space.is_open(u) {
            return Err(Error::precondition(format!("{:?} is not an open set", u.to_vec())));
        }
        Ok(())
    }

    /// `S_U⁻¹A`.
    pub fn value(&self, u: Subset) -> Result<Rc<LocalizedSemiring>> {
        self.check_open(u)?;
        if let Some(v) = self.cache.borrow().get(&u) {
            return Ok(Rc::clone(v));
        }
        let v = Rc::new(localize(self.a, s_of_open(self.space, u))?);
        self.cache.borrow_mut().insert(u, Rc::clone(&v));
        Ok(v)
    }

    /// Restriction `S_U⁻¹A → S_V⁻¹A` for `V ⊆ U`.
    pub fn restriction(&self, u: Subset, v: Subset) -> Result<Homomorphism> {
        if !v.is_subset(u) {
            return Err(Error::precondition("restriction needs V ⊆ U"));
        }
        let (lu, lv) = (self.value(u)?, self.value(v)?);
        let map = lu.reps.iter().map(|&(x, s)| lv.fraction(x, s)).collect::<Result<Vec<_>>>()?;
        Ok(Homomorphism { map })
    }
}

/// A finite limit of presheaf values: compatible families `(x_i)` with
/// `x_i ∈ L(components[i])`, under componentwise operations.
#[derive(Clone, Debug)]
pub struct SectionSemiring {
    pub semiring: FiniteSemiring,
    pub components: Vec<Subset>,
    /// Family of each element, one class per component.
    pub families: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// Agreement condition `left(x_i) = right(x_j)`.
struct Constraint {
    i: usize,
    j: usize,
    left: Homomorphism,
    right: Homomorphism,
}

impl SectionSemiring {
    fn limit(
        label: String,
        components: Vec<Subset>,
        values: &[Rc<LocalizedSemiring>],
        constraints: &[Constraint],
        cap: usize,
    ) -> Result<Self> {
        let n = values.len();
        // smallest localization first
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (values[i].semiring.size(), i));
        let mut pos = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let mut checks: Vec<Vec<&Constraint>> = vec![Vec::new(); n];
        for c in constraints {
            checks[pos[c.i].max(pos[c.j])].push(c);
        }
        let mut families = Vec::new();
        let mut current = vec![0usize; n];
        fn rec(
            k: usize,
            order: &[usize],
            values: &[Rc<LocalizedSemiring>],
            checks: &[Vec<&Constraint>],
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            cap: usize,
        ) -> Result<()> {
            if k == order.len() {
                if out.len() == cap {
                    return Err(Error::resource(format!("more than {cap} compatible families")));
                }
                out.push(current.clone());
                return Ok(());
            }
            let i = order[k];
            for x in 0..values[i].semiring.size() {
                current[i] = x;
                if checks[k].iter().all(|c| c.left.apply(current[c.i]) == c.right.apply(current[c.j])) {
                    rec(k + 1, order, values, checks, current, out, cap)?;
                }
            }
            Ok(())
        }
        rec(0, &order, values, &checks, &mut current, &mut families, cap)?;
        families.sort();
        let index: HashMap<Vec<usize>, usize> = families.iter().cloned().enumerate().map(|(k, f)| (f, k)).collect();
        let lookup = |f: Vec<usize>| -> usize { index[&f] };
        let op = |u: usize, v: usize, additive: bool| -> usize {
            let f = (0..n)
                .map(|i| {
                    let s = &values[i].semiring;
                    let (x, y) = (families[u][i], families[v][i]);
                    if additive {
                        s.add(x, y)
                    } else {
                        s.mul(x, y)
                    }
                })
                .collect();
            lookup(f)
        };
        let zero = lookup(values.iter().map(|v| v.semiring.zero()).collect());
        let one = lookup(values.iter().map(|v| v.semiring.one()).collect());
        let semiring = FiniteSemiring::from_fn(&label, families.len(), zero, one, |u, v| op(u, v, true), |u, v| {
            op(u, v, false)
        })?;
        let names = families
            .iter()
            .map(|f| {
                let parts: Vec<String> = f.iter().zip(values).map(|(&x, v)| v.semiring.name(x)).collect();
                format!("({})", parts.join(", "))
            })
            .collect();
        let semiring = semiring.with_names(names)?;
        Ok(SectionSemiring { semiring, components, families, index })
    }

    pub fn size(&self) -> usize {
        self.families.len()
    }

    pub fn index_of(&self, family: &[usize]) -> Option<usize> {
        self.index.get(family).copied()
    }

    /// Canonical map `L(W) → sections`, restricting to every component;
    /// each component must lie inside `w`.
    pub fn canonical_from(&self, presheaf: &Presheaf, w: Subset) -> Result<Homomorphism> {
        let restrictions =
            self.components.iter().map(|&c| presheaf.restriction(w, c)).collect::<Result<Vec<_>>>()?;
        let source = presheaf.value(w)?;
        let map = (0..source.semiring.size())
            .map(|x| {
                let f: Vec<usize> = restrictions.iter().map(|r| r.apply(x)).collect();
                self.index_of(&f).ok_or_else(|| Error::Inconsistent("restricted family is not compatible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Homomorphism { map })
    }

    /// `A → sections`, `x ↦ (x/1)_i`.
    pub fn from_base(&self, presheaf: &Presheaf) -> Result<Homomorphism> {
        let values = self.components.iter().map(|&c| presheaf.value(c)).collect::<Result<Vec<_>>>()?;
        let map = presheaf
            .base()
            .elements()
            .map(|x| {
                let f: Vec<usize> = values.iter().map(|v| v.phi.apply(x)).collect();
                self.index_of(&f).ok_or_else(|| Error::Inconsistent("image of A is not compatible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Homomorphism { map })
    }

    /// Comparison map into `other` over the same open: every component of
    /// `other` must lie inside some component of `self`.
    pub fn compare_to(&self, other: &SectionSemiring, presheaf: &Presheaf) -> Result<Homomorphism> {
        let mut routes = Vec::new();
        for &c in &other.components {
            let i = self
                .components
                .iter()
                .position(|&d| c.is_subset(d))
                .ok_or_else(|| Error::precondition("component not refined by the source sections"))?;
            routes.push((i, presheaf.restriction(self.components[i], c)?));
        }
        let map = self
            .families
            .iter()
            .map(|f| {
                let g: Vec<usize> = routes.iter().map(|(i, r)| r.apply(f[*i])).collect();
                other.index_of(&g).ok_or_else(|| Error::Inconsistent("compared family is not compatible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Homomorphism { map })
    }
}

/// Whether a homomorphism is a bijection onto a codomain of the given size.
pub fn is_bijective(f: &Homomorphism, codomain_size: usize) -> bool {
    f.is_injective() && f.is_surjective(codomain_size)
}

/// Sections over `D(target)` from a principal cover, with the canonical map
/// `S_target⁻¹A → Eq(∏ L(D(aᵢ)) ⇉ ∏ L(D(aᵢaⱼ)))`.
#[derive(Clone, Debug)]
pub struct EqualizerSections {
    pub cover: Vec<usize>,
    pub target: usize,
    pub sections: SectionSemiring,
    pub canonical: Homomorphism,
}

impl EqualizerSections {
    pub fn is_isomorphism(&self) -> bool {
        is_bijective(&self.canonical, self.sections.size())
    }
}

pub fn equalizer_sections(presheaf: &Presheaf, cover: &[usize], target: usize) -> Result<EqualizerSections> {
    let space = presheaf.space();
    let a = presheaf.base();
    if target >= a.size() || cover.iter().any(|&x| x >= a.size()) {
        return Err(Error::precondition("cover element out of range"));
    }
    let union = cover.iter().fold(Subset::empty(), |acc, &x| acc.union(space.d(x)));
    if union != space.d(target) {
        return Err(Error::precondition(format!(
            "the cover {:?} does not cover D({})",
            cover.iter().map(|&x| a.name(x)).collect::<Vec<_>>(),
            a.name(target)
        )));
    }
    let components: Vec<Subset> = cover.iter().map(|&x| space.d(x)).collect();
    let values = components.iter().map(|&c| presheaf.value(c)).collect::<Result<Vec<_>>>()?;
    let mut constraints = Vec::new();
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            // D(aᵢaⱼ) = D(aᵢ) ∩ D(aⱼ)
            let overlap = space.d(a.mul(cover[i], cover[j]));
            constraints.push(Constraint {
                i,
                j,
                left: presheaf.restriction(components[i], overlap)?,
                right: presheaf.restriction(components[j], overlap)?,
            });
        }
    }
    let label = format!("O(D({}))", a.name(target));
    let sections = SectionSemiring::limit(label, components, &values, &constraints, DEFAULT_SECTION_LIMIT)?;
    let canonical = sections.canonical_from(presheaf, space.d(target))?;
    Ok(EqualizerSections { cover: cover.to_vec(), target, sections, canonical })
}

/// Sections over an arbitrary open `u`: families `(x_p)_{p∈U}` with
/// `x_p ∈ L(U_p)` for the minimal open `U_p`, compatible along every
/// generization `q ∈ U_p`.
pub fn alexandrov_sections(presheaf: &Presheaf, u: Subset) -> Result<SectionSemiring> {
    let space = presheaf.space();
    presheaf.check_open(u)?;
    let points: Vec<usize> = u.iter().collect();
    let components: Vec<Subset> = points.iter().map(|&p| space.space.minimal_open(p)).collect();
    let values = components.iter().map(|&c| presheaf.value(c)).collect::<Result<Vec<_>>>()?;
    let mut constraints = Vec::new();
    for i in 0..points.len() {
        for (j, &q) in points.iter().enumerate() {
            if i != j && components[i].contains(q) {
                let left = presheaf.restriction(components[i], components[j])?;
                let right = Homomorphism::identity(values[j].semiring.size());
                constraints.push(Constraint { i, j, left, right });
            }
        }
    }
    let label = format!("O({:?})", u.to_vec());
    SectionSemiring::limit(label, components, &values, &constraints, DEFAULT_SECTION_LIMIT)
}

/// `A_p`: localization at the complement of the point `p`.
pub fn stalk(presheaf: &Presheaf, p: usize) -> Result<LocalizedSemiring> {
    let a = presheaf.base();
    let point = *presheaf
        .space()
        .points
        .get(p)
        .ok_or_else(|| Error::precondition(format!("no point with index {p}")))?;
    localize(a, point.complement(a.size()))
}

/// All open sets of the spectrum, in `(size, bits)` order.
pub fn open_sets(space: &SpectrumSpace) -> Result<Vec<Subset>> {
    let n = space.len();
    let mut opens: Vec<Subset> = space
        .space
        .closed_sets(crate::spectra::DEFAULT_CLOSED_SET_LIMIT)?
        .into_iter()
        .map(|z| z.complement(n))
        .collect();
    opens.sort_by_key(|u| u.sort_key());
    Ok(opens)
}
