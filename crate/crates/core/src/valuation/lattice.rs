use std::collections::{HashMap, VecDeque};

use serde_json::json;

use crate::error::{Error, Result};
use crate::kernel::{is_homomorphism, verify_axioms, FiniteSemiring, Homomorphism};
use crate::localize::{localize, powers, saturate, LocalizedSemiring};
use crate::report::Report;
use crate::sheaf::s_of_open;
use crate::spectra::{sp_via_homs, spec_enumerate};
use crate::subset::Subset;

/// Cap on the number of subsemimodules enumerated by [`build_mra`].
pub const DEFAULT_MODULE_LIMIT: usize = 1024;

/// `M_R(A)`: all `R`-subsemimodules of a finite `A` (each is finitely
/// generated) under module sum and product, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    base: FiniteSemiring,
    scalars: Subset,
    modules: Vec<Subset>,
    index: HashMap<Subset, usize>,
    pub semiring: FiniteSemiring,
}

fn closure(a: &FiniteSemiring, scalars: Subset, gens: impl IntoIterator<Item = usize>) -> Subset {
    let mut m = Subset::singleton(a.zero());
    let mut queue: VecDeque<usize> = gens.into_iter().collect();
    while let Some(x) = queue.pop_front() {
        if m.contains(x) {
            continue;
        }
        let before = m;
        m.insert(x);
        queue.extend(scalars.iter().map(|r| a.mul(r, x)));
        queue.extend(before.iter().map(|y| a.add(x, y)));
        queue.push_back(a.add(x, x));
    }
    m
}

/// `M_R(A)` for `ι: R → A`.
pub fn build_mra(a: &FiniteSemiring, r: &FiniteSemiring, iota: &Homomorphism, limit: usize) -> Result<SubmoduleLattice> {
    if iota.map.len() != r.size() || !is_homomorphism(r, a, &iota.map) {
        return Err(Error::precondition(format!("the map {} → {} is not a homomorphism", r.label(), a.label())));
    }
    let scalars: Subset = iota.map.iter().copied().collect();
    SubmoduleLattice::from_scalars(a, scalars, format!("M_{}({})", r.label(), a.label()), limit)
}

impl SubmoduleLattice {
    fn from_scalars(a: &FiniteSemiring, scalars: Subset, label: String, limit: usize) -> Result<Self> {
        a.check_subset_capacity()?;
        let zero = closure(a, scalars, []);
        let mut modules = vec![zero];
        let mut index = HashMap::from([(zero, 0)]);
        let mut k = 0;
        while k < modules.len() {
            let m = modules[k];
            for x in a.elements().filter(|&x| !m.contains(x)) {
                let n = closure(a, scalars, m.iter().chain([x]));
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(n) {
                    if modules.len() == limit {
                        return Err(Error::resource(format!("{label} has more than {limit} modules")));
                    }
                    e.insert(modules.len());
                    modules.push(n);
                }
            }
            k += 1;
        }
        modules.sort_by_key(|m| m.sort_key());
        let index: HashMap<Subset, usize> = modules.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let idx = |m: Subset| index[&m];
        let sum = |i: usize, j: usize| {
            let (m, n) = (modules[i], modules[j]);
            idx(m.iter().flat_map(|x| n.iter().map(move |y| a.add(x, y))).collect())
        };
        let prod = |i: usize, j: usize| {
            let (m, n) = (modules[i], modules[j]);
            idx(closure(a, scalars, m.iter().flat_map(|x| n.iter().map(move |y| a.mul(x, y)))))
        };
        let one = idx(closure(a, scalars, [a.one()]));
        let semiring = FiniteSemiring::from_fn(&label, modules.len(), idx(zero), one, sum, prod)?;
        let names = modules
            .iter()
            .map(|m| format!("{{{}}}", m.iter().map(|x| a.name(x)).collect::<Vec<_>>().join(",")))
            .collect();
        let semiring = semiring.with_names(names)?;
        let report = verify_axioms(&semiring);
        if !report.is_valid() || !semiring.is_idempotent() {
            return Err(Error::Inconsistent(format!("{label} fails the semiring axioms: {:?}", report.violations)));
        }
        Ok(SubmoduleLattice { base: a.clone(), scalars, modules, index, semiring })
    }

    pub fn base(&self) -> &FiniteSemiring {
        &self.base
    }

    /// `ι(R) ⊆ A`.
    pub fn scalars(&self) -> Subset {
        self.scalars
    }

    pub fn modules(&self) -> &[Subset] {
        &self.modules
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn index_of(&self, m: Subset) -> Option<usize> {
        self.index.get(&m).copied()
    }

    /// Index of `⟨gens⟩_R`.
    pub fn generated(&self, gens: impl IntoIterator<Item = usize>) -> usize {
        self.index[&closure(&self.base, self.scalars, gens)]
    }

    /// `v_R(a) = ⟨a⟩_R`.
    pub fn v_r(&self, a: usize) -> usize {
        self.generated([a])
    }

    /// A generating set of module `i`, chosen greedily in element order.
    pub fn generators(&self, i: usize) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = closure(&self.base, self.scalars, []);
        for x in self.modules[i].iter() {
            if !span.contains(x) {
                gens.push(x);
                span = closure(&self.base, self.scalars, gens.iter().copied());
            }
        }
        gens
    }
}

/// `A[a⁻¹]` with its lattice, scalars carried along `φ_a`.
fn localized_lattice(lattice: &SubmoduleLattice, monoid: Subset, limit: usize) -> Result<(LocalizedSemiring, SubmoduleLattice)> {
    let l = localize(lattice.base(), monoid)?;
    let scalars: Subset = lattice.scalars().iter().map(|r| l.phi.apply(r)).collect();
    let label = format!("M({})", l.semiring.label());
    let m = SubmoduleLattice::from_scalars(&l.semiring, scalars, label, limit)?;
    Ok((l, m))
}

/// `M_R(A[a⁻¹]) ≅ M_R(A)[v_R(a)⁻¹]` via the two maps of the universal
/// properties, checked to be mutually inverse homomorphisms.
pub fn mra_localization_iso_check(lattice: &SubmoduleLattice, a: usize, limit: usize) -> Result<Report> {
    let base = lattice.base();
    let m = &lattice.semiring;
    let (la, left) = localized_lattice(lattice, powers(base, a), limit)?;
    let va = lattice.v_r(a);
    let right = localize(m, powers(m, va))?;
    let exponent = |s: usize, ring: &FiniteSemiring, g: usize| -> Result<usize> {
        (0..=ring.size())
            .find(|&n| ring.pow(g, n) == s)
            .ok_or_else(|| Error::Inconsistent("denominator is not a power".into()))
    };
    // M_R(φ_a) extended to fractions: (M, v(a)ⁿ) ↦ ⟨φ(M)⟩·⟨1/a⟩ⁿ
    let inv = left.generated([la.fraction(base.one(), a)?]);
    let phi_a = left.generated([la.phi.apply(a)]);
    let inverse_ok = left.semiring.mul(phi_a, inv) == left.semiring.one();
    let mut forward = Vec::new();
    for &(mi, s) in &right.reps {
        let n = exponent(s, m, va)?;
        let image = left.generated(lattice.modules()[mi].iter().map(|x| la.phi.apply(x)));
        forward.push(left.semiring.mul(image, left.semiring.pow(inv, n)));
    }
    // v(b/aⁿ) = v_R(b)/v_R(a)ⁿ summed over a module
    let mut valuation = Vec::new();
    for &(b, s) in &la.reps {
        valuation.push(right.fraction(lattice.v_r(b), lattice.v_r(s))?);
    }
    let backward: Vec<usize> = left
        .modules()
        .iter()
        .map(|n| right.semiring.sum(n.iter().map(|y| valuation[y])))
        .collect();
    let homs = is_homomorphism(&right.semiring, &left.semiring, &forward)
        && is_homomorphism(&left.semiring, &right.semiring, &backward);
    let inverse = (0..forward.len()).all(|c| backward[forward[c]] == c)
        && (0..backward.len()).all(|n| forward[backward[n]] == n);
    Ok(Report::new(
        format!("M_R({0}[{1}^-1]) ≅ M_R({0})[v_R({1})^-1]", base.label(), base.name(a)),
        inverse_ok && homs && inverse,
        vec![json!({
            "left_size": left.len(),
            "right_size": right.semiring.size(),
            "forward": forward,
            "backward": backward,
        })],
    ))
}

/// Whether `M_R(A)[v_R(a)⁻¹] → S̃_{v_R(a)}⁻¹ M_R(A)` is an isomorphism.
pub fn mra_presheaf_gap(lattice: &SubmoduleLattice, a: usize) -> Result<bool> {
    let m = &lattice.semiring;
    let va = lattice.v_r(a);
    let sp = sp_via_homs(m)?;
    let small = localize(m, powers(m, va))?;
    let big = localize(m, s_of_open(&sp, sp.d(va)))?;
    let map = small.reps.iter().map(|&(x, s)| big.fraction(x, s)).collect::<Result<Vec<_>>>()?;
    let h = Homomorphism { map };
    Ok(h.is_injective() && h.is_surjective(big.semiring.size()))
}

/// `M_R(A) → Eq(∏ M_R(A[aᵢ⁻¹]) ⇉ ∏ M_R(A[(aᵢaⱼ)⁻¹]))` for a cover
/// `Spec A = ⋃ D(aᵢ)`; the report passes when the map is bijective.
pub fn mra_equalizer_check(lattice: &SubmoduleLattice, cover: &[usize], limit: usize) -> Result<Report> {
    let a = lattice.base();
    let spec = spec_enumerate(a, limit)?;
    let union = cover.iter().fold(Subset::empty(), |acc, &x| acc.union(spec.d(x)));
    if union != spec.all() {
        return Err(Error::precondition("the elements do not cover Spec A"));
    }
    let sat = |x: usize| saturate(a, powers(a, x));
    let locals = cover
        .iter()
        .map(|&x| localized_lattice(lattice, sat(x), limit))
        .collect::<Result<Vec<_>>>()?;
    // (i, j, restriction of modules of i, restriction of modules of j)
    let mut constraints = Vec::new();
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            let (lij, mij) = localized_lattice(lattice, sat(a.mul(cover[i], cover[j])), limit)?;
            let restrict = |k: usize| -> Result<Vec<usize>> {
                let (lk, mk) = &locals[k];
                let rho = lk.reps.iter().map(|&(x, s)| lij.fraction(x, s)).collect::<Result<Vec<_>>>()?;
                Ok(mk.modules().iter().map(|n| mij.generated(n.iter().map(|y| rho[y]))).collect())
            };
            constraints.push((i, j, restrict(i)?, restrict(j)?));
        }
    }
    let mut families: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0; cover.len()];
    fn rec(
        k: usize,
        sizes: &[usize],
        constraints: &[(usize, usize, Vec<usize>, Vec<usize>)],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if k == sizes.len() {
            if out.len() == cap {
                return Err(Error::resource(format!("more than {cap} compatible families")));
            }
            out.push(current.clone());
            return Ok(());
        }
        for x in 0..sizes[k] {
            current[k] = x;
            if constraints.iter().filter(|c| c.1 == k).all(|(i, j, l, r)| l[current[*i]] == r[current[*j]]) {
                rec(k + 1, sizes, constraints, current, out, cap)?;
            }
        }
        Ok(())
    }
    let sizes: Vec<usize> = locals.iter().map(|(_, m)| m.len()).collect();
    rec(0, &sizes, &constraints, &mut current, &mut families, limit.max(DEFAULT_MODULE_LIMIT))?;
    let canonical: Vec<Vec<usize>> = lattice
        .modules()
        .iter()
        .map(|n| locals.iter().map(|(l, m)| m.generated(n.iter().map(|x| l.phi.apply(x)))).collect())
        .collect();
    let mut image = canonical.clone();
    image.sort();
    image.dedup();
    let injective = image.len() == canonical.len();
    let surjective = image.len() == families.len();
    Ok(Report::new(
        format!("M_R({}) → equalizer over the cover is bijective", a.label()),
        injective && surjective,
        vec![json!({
            "cover": cover,
            "families": families.len(),
            "modules": lattice.len(),
            "injective": injective,
            "surjective": surjective,
        })],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{construct, enumerate_homs, find_isomorphism};
    use crate::valuation::{factor_through_universal, is_g_valuation, val_spec_bijection, vstar_homeo_check};

    fn over_b(a: &FiniteSemiring) -> SubmoduleLattice {
        let b = construct::boolean();
        let iota = enumerate_homs(&b, a).into_iter().next().expect("idempotent");
        build_mra(a, &b, &iota, DEFAULT_MODULE_LIMIT).unwrap()
    }

    #[test]
    fn mb_of_b() {
        let b = construct::boolean();
        let l = over_b(&b);
        assert_eq!(l.len(), 2);
        assert!(find_isomorphism(&l.semiring, &b).is_some());
        assert_eq!(l.v_r(0), l.semiring.zero());
        assert_eq!(l.v_r(1), l.semiring.one());
    }

    #[test]
    fn mb_of_the_chain() {
        // 3-chain 0 < ½ < 1: modules {0}, {0,½}, {0,1}, {0,½,1}
        let c = construct::chain(3);
        let l = over_b(&c);
        let expected: Vec<Subset> = [vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2]]
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect();
        let mut got = l.modules().to_vec();
        got.sort_by_key(|m| m.to_vec());
        let mut exp = expected.clone();
        exp.sort_by_key(|m| m.to_vec());
        assert_eq!(got, exp);
        assert_eq!(l.modules()[l.v_r(1)], [0, 1].into_iter().collect());
    }

    #[test]
    fn universal_valuation_axioms() {
        for a in construct::corpus().into_iter().filter(|a| a.is_idempotent()) {
            let l = over_b(&a);
            let v: Vec<usize> = a.elements().map(|x| l.v_r(x)).collect();
            assert!(is_g_valuation(&a, &l.semiring, &v).unwrap(), "{}", a.label());
            for x in a.elements() {
                for y in a.elements() {
                    assert_eq!(v[a.mul(x, y)], l.semiring.mul(v[x], v[y]));
                }
            }
            for i in 0..l.len() {
                for j in 0..l.len() {
                    let le = l.semiring.leq(i, j).unwrap();
                    assert_eq!(le, l.modules()[i].is_subset(l.modules()[j]));
                }
            }
        }
    }

    #[test]
    fn ideals_of_a_ring() {
        // R = A = Z/6: M_A(A) is the lattice of ideals
        let a = construct::zmod(6);
        let l = build_mra(&a, &a, &Homomorphism::identity(6), DEFAULT_MODULE_LIMIT).unwrap();
        assert_eq!(l.len(), 4);
        assert!(vstar_homeo_check(&l, 16).unwrap().passed());
    }

    #[test]
    fn factorization_of_characters() {
        let b = construct::boolean();
        let line = construct::bool_idempotent_line();
        let l = over_b(&line);
        for v in val_spec_bijection(&line).unwrap().valuations {
            let f = factor_through_universal(&l, &b, &v).unwrap();
            assert!(f.is_unique());
        }
        let ident: Vec<usize> = line.elements().map(|x| l.v_r(x)).collect();
        let f = factor_through_universal(&l, &l.semiring, &ident).unwrap();
        assert_eq!(f.f, Homomorphism::identity(l.len()));
    }

    #[test]
    fn homeomorphism_on_small_cases() {
        for a in [construct::boolean(), construct::chain(3), construct::bool_idempotent_line()] {
            let l = over_b(&a);
            assert!(vstar_homeo_check(&l, 16).unwrap().passed(), "{}", a.label());
        }
    }

    #[test]
    fn localization_of_the_lattice() {
        let line = construct::bool_idempotent_line();
        let l = over_b(&line);
        for x in line.elements() {
            let r = mra_localization_iso_check(&l, x, DEFAULT_MODULE_LIMIT).unwrap();
            assert!(r.passed(), "{}", r.to_json());
        }
    }

    #[test]
    fn equalizer_checker_runs() {
        let line = construct::bool_idempotent_line();
        let l = over_b(&line);
        let r = mra_equalizer_check(&l, &[1, 2], 16).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert!(mra_equalizer_check(&l, &[2, 3], 16).is_err());
    }

    #[test]
    fn module_limit() {
        let a = construct::bool_boolean_algebra_poly(2);
        let b = construct::boolean();
        let iota = enumerate_homs(&b, &a).into_iter().next().unwrap();
        assert!(matches!(build_mra(&a, &b, &iota, 4), Err(Error::Resource(_))));
    }

    #[test]
    fn presheaf_gap_on_the_line() {
        // inverting v(1+x) alone is coarser than inverting everything off the kernels
        let a = construct::bool_idempotent_line();
        let l = over_b(&a);
        let x = a.elements().find(|&e| a.name(e) == "x").unwrap();
        let y = a.elements().find(|&e| a.name(e) == "1+x").unwrap();
        assert!(mra_presheaf_gap(&l, x).unwrap());
        assert!(!mra_presheaf_gap(&l, y).unwrap());
    }
}
