use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::kernel::{find_isomorphism, FiniteSemiring, Homomorphism};
use crate::localize::harden;
use crate::presented::{Bound, CongruenceIndex, Presentation};
use crate::report::Report;
use crate::spectra::{hardening_homeo_check, induced_map, sp_enumerate, SpectrumSpace};
use crate::subset::Subset;

use super::{alexandrov_sections, equalizer_sections, is_bijective, open_sets, Presheaf, SectionSemiring};

/// `ΓA = O_{Sp A}(Sp A)` with the natural map `A → ΓA`.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub space: SpectrumSpace,
    pub sections: SectionSemiring,
    pub natural: Homomorphism,
}

pub fn gamma(a: &FiniteSemiring, limit: usize) -> Result<Gamma> {
    let space = sp_enumerate(a, limit)?;
    let p = Presheaf::new(a, &space);
    let mut sections = alexandrov_sections(&p, space.all())?;
    sections.semiring = sections.semiring.with_label(format!("Γ({})", a.label()));
    let natural = sections.from_base(&p)?;
    drop(p);
    Ok(Gamma { space, sections, natural })
}

/// Whether `A → ΓA` is an isomorphism.
pub fn is_global(a: &FiniteSemiring, limit: usize) -> Result<bool> {
    let g = gamma(a, limit)?;
    Ok(is_bijective(&g.natural, g.sections.size()))
}

/// `G(A) = colim Γⁿ A`, reached once a structure map is an isomorphism.
#[derive(Clone, Debug)]
pub struct Globalization {
    pub semiring: FiniteSemiring,
    /// `A → G(A)`.
    pub map: Homomorphism,
    /// Number of applications of `Γ` before the colimit stabilized.
    pub iterations: usize,
}

pub fn globalize(a: &FiniteSemiring, max_iter: usize, limit: usize) -> Result<Globalization> {
    let mut current = a.clone();
    let mut map = Homomorphism::identity(a.size());
    for iterations in 0..=max_iter {
        let g = gamma(&current, limit)?;
        if is_bijective(&g.natural, g.sections.size()) {
            return Ok(Globalization { semiring: current, map, iterations });
        }
        map = map.then(&g.natural);
        current = g.sections.semiring;
    }
    Err(Error::BoundExhausted(format!("Γ did not stabilize within {max_iter} iterations")))
}

/// `Sp(χ): Sp A◇ → Sp A` is a homeomorphism carrying sections of `A◇` over
/// `Sp(χ)⁻¹(U)` to isomorphic sections of `A` over every open `U`.
pub fn hardening_sections_check(a: &FiniteSemiring, limit: usize) -> Result<Report> {
    let homeo = hardening_homeo_check(a, limit)?;
    let h = harden(a);
    let sa = sp_enumerate(a, limit)?;
    let sh = sp_enumerate(&h.semiring, limit)?;
    let induced = induced_map(&h.phi, &sh, &sa)?;
    let (pa, ph) = (Presheaf::new(a, &sa), Presheaf::new(&h.semiring, &sh));
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for u in open_sets(&sa)? {
        let pre: Subset = (0..sh.len()).filter(|&i| u.contains(induced.map[i])).collect();
        let values_match = find_isomorphism(&pa.value(u)?.semiring, &ph.value(pre)?.semiring).is_some();
        let sections_match = find_isomorphism(
            &alexandrov_sections(&pa, u)?.semiring,
            &alexandrov_sections(&ph, pre)?.semiring,
        )
        .is_some();
        if !(values_match && sections_match) {
            mismatches.push(json!({ "open": u.to_vec(), "presheaf": values_match, "sections": sections_match }));
        }
        checked += 1;
    }
    let sections = Report::new(
        format!("sections of {}◇ and {} agree over every open", a.label(), a.label()),
        mismatches.is_empty(),
        vec![json!({ "opens_checked": checked, "mismatches": mismatches })],
    );
    Ok(Report::all(format!("(Sp {0}◇, O) ≅ (Sp {0}, O)", a.label()), vec![homeo, sections]))
}

/// Behaviour of `A◇ → Eq(∏ L(D̃(aᵢ)) ⇉ ∏ L(D̃(aᵢaⱼ)))` on one cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessFinding {
    pub cover: Vec<usize>,
    pub injective: bool,
    pub surjective: bool,
}

/// Scans every cover of `Sp A` by distinct principal opens; a finding with
/// `surjective == false` would be a counterexample to global surjectivity.
pub fn sp_exactness_scan(a: &FiniteSemiring, limit: usize) -> Result<Vec<ExactnessFinding>> {
    let space = sp_enumerate(a, limit)?;
    let p = Presheaf::new(a, &space);
    let mut reps: Vec<usize> = Vec::new();
    for x in a.elements() {
        if !space.d(x).is_empty() && reps.iter().all(|&r| space.d(r) != space.d(x)) {
            reps.push(x);
        }
    }
    if reps.len() > 16 {
        return Err(Error::resource(format!("{} distinct principal opens", reps.len())));
    }
    let mut findings = Vec::new();
    for mask in 1u32..(1 << reps.len()) {
        let cover: Vec<usize> = (0..reps.len()).filter(|&i| mask & (1 << i) != 0).map(|i| reps[i]).collect();
        let union = cover.iter().fold(Subset::empty(), |acc, &x| acc.union(space.d(x)));
        if union != space.all() {
            continue;
        }
        let eq = equalizer_sections(&p, &cover, a.one())?;
        findings.push(ExactnessFinding {
            cover,
            injective: eq.canonical.is_injective(),
            surjective: eq.canonical.is_surjective(eq.sections.size()),
        });
    }
    Ok(findings)
}

/// [`sp_exactness_scan`] on the finite quotient of a presented semiring.
pub fn sp_exactness_scan_presented(
    presentation: &Presentation,
    bound: Bound,
    max_classes: usize,
    limit: usize,
) -> Result<(FiniteSemiring, Vec<ExactnessFinding>)> {
    let mut index = CongruenceIndex::build(presentation, bound)?;
    let (a, _) = index.finite_quotient(max_classes)?;
    let findings = sp_exactness_scan(&a, limit)?;
    Ok((a, findings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::construct;
    use crate::localize::is_hard;

    #[test]
    fn semifields_are_global() {
        for a in [construct::boolean(), construct::zmod(5), construct::zmod(2)] {
            let g = gamma(&a, 16).unwrap();
            assert_eq!(g.space.len(), 1);
            assert!(is_global(&a, 16).unwrap());
            assert_eq!(globalize(&a, 3, 16).unwrap().iterations, 0);
        }
    }

    #[test]
    fn kernel_local_gamma_is_the_hardening() {
        // B[x]/(x²∼x) has the single maximal kernel {0, x}
        let a = construct::bool_idempotent_line();
        let g = gamma(&a, 16).unwrap();
        assert!(find_isomorphism(&g.sections.semiring, &harden(&a).semiring).is_some());
        assert!(!is_global(&a, 16).unwrap());
        let glob = globalize(&a, 4, 16).unwrap();
        assert!(glob.iterations >= 1);
        assert!(is_global(&glob.semiring, 16).unwrap());
    }

    #[test]
    fn global_implies_hard_on_the_corpus() {
        for a in construct::corpus() {
            if is_global(&a, 16).unwrap() {
                assert!(is_hard(&a), "{}", a.label());
            }
        }
    }

    #[test]
    fn hardening_preserves_sections() {
        for a in construct::corpus() {
            assert!(hardening_sections_check(&a, 16).unwrap().passed(), "{}", a.label());
        }
    }

    #[test]
    fn no_bound_zero() {
        let a = construct::bool_idempotent_line();
        assert!(matches!(globalize(&a, 0, 16), Err(Error::BoundExhausted(_))));
    }

    #[test]
    fn presented_line_scan() {
        let p = Presentation::new(&["x"], &[("x^2", "x")], true).unwrap();
        let (a, findings) = sp_exactness_scan_presented(&p, Bound { degree: 2, coeff: 4 }, 16, 16).unwrap();
        assert_eq!(a.size(), 4);
        assert!(findings.iter().all(|f| f.injective && f.surjective));
    }

    #[test]
    fn idempotent_xy_collapse_scan() {
        let a = construct::bool_xy_collapse();
        let findings = sp_exactness_scan(&a, 16).unwrap();
        // no counterexample to exactness here: every cover behaves
        assert_eq!(a.size(), 10);
        assert!(!findings.is_empty());
        assert!(findings.iter().all(|f| f.injective && f.surjective));
    }
}
