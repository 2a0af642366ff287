use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::kernel::{find_isomorphism, FiniteSemiring};
use crate::localize::is_hard;
use crate::report::Report;
use crate::spectra::{enumerate, SpectrumKind};
use crate::subset::Subset;

use super::{alexandrov_sections, equalizer_sections, is_bijective, stalk, Presheaf};

/// Largest number of distinct principal opens [`sheaf_lemma_scan`] will
/// take subsets of.
pub const MAX_SCAN_OPENS: usize = 16;

/// Outcome of checking `S_a⁻¹A → Eq(∏ L(D(aᵢ)) ⇉ ∏ L(D(aᵢaⱼ)))` over every
/// cover of every principal open by principal opens.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SheafLemmaScan {
    pub label: String,
    pub kind: Option<SpectrumKind>,
    pub covers_checked: usize,
    /// `(target, cover)` pairs whose canonical map is not bijective.
    pub non_isomorphic: Vec<(usize, Vec<usize>)>,
    /// `(target, cover)` pairs whose equalizer is not hard.
    pub non_hard: Vec<(usize, Vec<usize>)>,
    /// `A → O(X)` is bijective.
    pub global: bool,
    /// Points whose stalk is not isomorphic to the sections over `U_p`.
    pub stalk_mismatches: Vec<usize>,
}

impl SheafLemmaScan {
    pub fn is_exact(&self) -> bool {
        self.non_isomorphic.is_empty() && self.global && self.stalk_mismatches.is_empty()
    }

    pub fn sections_hard(&self) -> bool {
        self.non_hard.is_empty()
    }
}

/// Covers are taken up to equality of opens: the equalizer only depends on
/// the opens `D(aᵢ)`, and `D(a) = D(b)` gives the same localization.
pub fn sheaf_lemma_scan(a: &FiniteSemiring, kind: SpectrumKind, limit: usize) -> Result<SheafLemmaScan> {
    let space = enumerate(a, kind, limit)?;
    let p = Presheaf::new(a, &space);
    let mut reps: Vec<usize> = Vec::new();
    for x in a.elements() {
        if reps.iter().all(|&r| space.d(r) != space.d(x)) {
            reps.push(x);
        }
    }
    if reps.len() > MAX_SCAN_OPENS {
        return Err(Error::resource(format!("{} distinct principal opens", reps.len())));
    }
    let mut scan = SheafLemmaScan { label: a.label().to_string(), kind: Some(kind), ..Default::default() };
    for &target in &reps {
        let inside: Vec<usize> = reps.iter().copied().filter(|&x| space.d(x).is_subset(space.d(target))).collect();
        for mask in 0u32..1 << inside.len() {
            let cover: Vec<usize> = (0..inside.len()).filter(|i| mask >> i & 1 == 1).map(|i| inside[i]).collect();
            let union = cover.iter().fold(Subset::empty(), |acc, &x| acc.union(space.d(x)));
            if union != space.d(target) {
                continue;
            }
            let eq = equalizer_sections(&p, &cover, target)?;
            scan.covers_checked += 1;
            if !eq.is_isomorphism() {
                scan.non_isomorphic.push((target, cover.clone()));
            }
            if !is_hard(&eq.sections.semiring) {
                scan.non_hard.push((target, cover));
            }
        }
    }
    let sections = alexandrov_sections(&p, space.all())?;
    scan.global = is_bijective(&sections.from_base(&p)?, sections.size());
    for q in 0..space.len() {
        let local = stalk(&p, q)?;
        let over = alexandrov_sections(&p, space.space.minimal_open(q))?;
        if find_isomorphism(&local.semiring, &over.semiring).is_none() {
            scan.stalk_mismatches.push(q);
        }
    }
    Ok(scan)
}

impl SheafLemmaScan {
    pub fn to_report(&self) -> Report {
        Report::new(
            format!("{}: localizations are the equalizers over principal covers", self.label),
            self.is_exact(),
            vec![json!(self)],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::construct;

    #[test]
    fn line_spec_scan_is_exact() {
        let a = construct::bool_idempotent_line();
        let scan = sheaf_lemma_scan(&a, SpectrumKind::Spec, 16).unwrap();
        assert!(scan.covers_checked > 4);
        assert!(scan.is_exact(), "{:?}", scan);
        // D(1) = X and S_1 = {1}: the sections over X are A itself
        assert!(!scan.sections_hard());
    }

    #[test]
    fn line_sp_scan_is_hard_but_not_global() {
        let a = construct::bool_idempotent_line();
        let scan = sheaf_lemma_scan(&a, SpectrumKind::Sp, 16).unwrap();
        assert!(!scan.global);
        assert!(scan.sections_hard());
    }
}
