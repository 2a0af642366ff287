//! Registry of the named end-to-end checks run by `semispec verify` and the
//! acceptance suite. Each id maps to exactly one check.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::ideals::{all_ideals, is_ideal, is_prime, is_subtractive, prime_ideals, radical_equals_prime_intersection};
use crate::kernel::{construct, enumerate_homs};
use crate::localize::{bx_hardening_verify, fraction_witness, is_mult_submonoid, BxSampling};
use crate::report::Report;
use crate::sheaf::{
    hardening_sections_check, ktt_counterexample_verify, sheaf_lemma_scan, sp_injectivity_counterexample,
};
use crate::spectra::{
    cover_check, enumerate, nat_model_verify, poly_sp_verify, NatSpectrumModel, SpectrumKind,
    DEFAULT_CLOSED_SET_LIMIT, MAX_POLY_SP_VARS,
};
use crate::subset::Subset;
use crate::valuation::{
    build_mra, factor_through_universal, g_valuations, mra_localization_iso_check, vstar_homeo_check,
};

/// Bounds shared by every check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// Term bound for congruence closure on presented semirings.
    pub congruence_bound: u32,
    /// Second bound at which the congruence verdict must not change.
    pub raised_congruence_bound: u32,
    /// Largest carrier accepted by the spectrum enumerators.
    pub spectrum_limit: usize,
    /// Largest exponent `k` tried when comparing images in a localization.
    pub witness_bound: u32,
    /// Primes up to this bound enter the `ℕ` model.
    pub nat_bound: u64,
    /// Largest `M_R(A)` built for the valuation checks.
    pub module_limit: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            congruence_bound: 6,
            raised_congruence_bound: 8,
            spectrum_limit: 16,
            witness_bound: 6,
            nat_bound: 200,
            module_limit: 64,
            seed: 0x5eed,
        }
    }
}

/// `(id, description)` for every check, in criterion order.
pub const CHECKS: [(&str, &str); 10] = [
    ("spec-nat", "classification and dimension of Spec N and Sp N"),
    ("poly-sp", "Sp B[x1..xn] consists of the 2^n monomial kernels"),
    ("bx-hardening", "B[x]◇ is the min-max pair semiring"),
    ("sheaf-lemma", "localizations are equalizers; global sections and stalks"),
    ("ktt", "the localization presheaf on Spec K[t^2,t^3] is not a sheaf"),
    ("sp-injectivity", "1+xy and x+y agree locally on a cover of Sp A but differ in A"),
    ("radical", "the radical is the intersection of the primes containing I"),
    ("universal-valuation", "Sp M_B(A) ≅ Spec A and the universal property of v_B"),
    ("hardness", "Sp section semirings are hard; hardening preserves the semiringed space"),
    ("properties", "closed sets, principal opens, covers, preimages, fraction equality"),
];

pub fn run(id: &str, cfg: &VerifyConfig) -> Result<Report> {
    match id {
        "spec-nat" => spec_nat(cfg),
        "poly-sp" => poly_sp_verify(MAX_POLY_SP_VARS, 1000, cfg.seed),
        "bx-hardening" => Ok(bx_hardening_verify(BxSampling { seed: cfg.seed, ..Default::default() })),
        "sheaf-lemma" => sheaf_lemma(cfg),
        "ktt" => Ok(ktt_counterexample_verify()),
        "sp-injectivity" => sp_injectivity(cfg),
        "radical" => radical_theorem(),
        "universal-valuation" => universal_valuation(cfg),
        "hardness" => hardness(cfg),
        "properties" => properties(cfg),
        _ => Err(Error::Parse(format!(
            "unknown check {id:?}; expected one of {}",
            CHECKS.map(|(id, _)| id).join(", ")
        ))),
    }
}

fn spec_nat(cfg: &VerifyConfig) -> Result<Report> {
    let mut parts = vec![nat_model_verify(cfg.nat_bound)?];
    for (kind, expected) in [(SpectrumKind::Spec, 2), (SpectrumKind::Sp, 1)] {
        let model = NatSpectrumModel::new(kind, cfg.nat_bound)?;
        let dim = model.dimension(DEFAULT_CLOSED_SET_LIMIT);
        let chain = model.space().longest_specialization_chain();
        parts.push(Report::new(
            format!("dim {kind:?} N = {expected} on primes up to {}", cfg.nat_bound),
            dim.value == expected && chain == expected,
            vec![json!({ "dimension": dim.value, "method": dim.method, "specialization_chain": chain })],
        ));
    }
    Ok(Report::all("Spec N and Sp N", parts))
}

fn sheaf_lemma(cfg: &VerifyConfig) -> Result<Report> {
    let corpus = construct::corpus();
    let sizes_ok = corpus.len() >= 6 && corpus.iter().all(|a| (2..=8).contains(&a.size()));
    let mut parts = vec![Report::new(
        "corpus has at least 6 semirings of sizes 2 to 8",
        sizes_ok,
        vec![json!(corpus.iter().map(|a| (a.label(), a.size())).collect::<Vec<_>>())],
    )];
    for a in &corpus {
        parts.push(sheaf_lemma_scan(a, SpectrumKind::Spec, cfg.spectrum_limit)?.to_report());
    }
    Ok(Report::all("sheaf lemma on Spec of the corpus", parts))
}

fn sp_injectivity(cfg: &VerifyConfig) -> Result<Report> {
    let parts = [cfg.congruence_bound, cfg.raised_congruence_bound]
        .into_iter()
        .map(|b| sp_injectivity_counterexample(b, cfg.witness_bound))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::all("A → A[1/x] × A[1/y] is not injective at both bounds", parts))
}

fn radical_theorem() -> Result<Report> {
    let mut parts = Vec::new();
    for a in construct::corpus().iter().filter(|a| a.size() <= 8) {
        let ideals = all_ideals(a, 1 << 16)?;
        let primes = prime_ideals(a, 1 << 16)?;
        let failures: Vec<_> = ideals
            .iter()
            .filter(|&&i| !radical_equals_prime_intersection(a, i, &primes))
            .map(|i| json!(i.to_vec()))
            .collect();
        parts.push(Report::new(
            format!("{}: rad(I) = ∩ p ⊇ I for all {} ideals", a.label(), ideals.len()),
            failures.is_empty(),
            failures,
        ));
    }
    Ok(Report::all("radical theorem on the corpus", parts))
}

fn universal_valuation(cfg: &VerifyConfig) -> Result<Report> {
    let b = construct::boolean();
    let mut parts = Vec::new();
    for a in construct::corpus() {
        // a hom 𝔹 → A exists exactly when A is idempotent
        let Some(iota) = enumerate_homs(&b, &a).into_iter().next() else {
            continue;
        };
        let lattice = match build_mra(&a, &b, &iota, cfg.module_limit) {
            Ok(l) => l,
            Err(Error::Resource(_)) => {
                parts.push(Report::new(
                    format!("{}: M_B(A) exceeds {} modules, skipped", a.label(), cfg.module_limit),
                    true,
                    vec![],
                ));
                continue;
            }
            Err(e) => return Err(e),
        };
        let homeo = vstar_homeo_check(&lattice, cfg.spectrum_limit.max(lattice.len()))?;
        let mut non_unique = Vec::new();
        let valuations = g_valuations(&a, &b)?;
        for v in &valuations {
            if !factor_through_universal(&lattice, &b, v)?.is_unique() {
                non_unique.push(json!(v));
            }
        }
        let factor = Report::new(
            format!("{}: all {} valuations factor uniquely through v_B", a.label(), valuations.len()),
            non_unique.is_empty(),
            non_unique,
        );
        let local = a
            .elements()
            .map(|x| mra_localization_iso_check(&lattice, x, cfg.module_limit.max(lattice.len())))
            .collect::<Result<Vec<_>>>()?;
        let local = Report::all(format!("{}: M_B(A[1/a]) ≅ M_B(A)[1/v(a)] for every a", a.label()), local);
        parts.push(Report::all(
            format!("{} with {} modules", a.label(), lattice.len()),
            vec![homeo, factor, local],
        ));
    }
    Ok(Report::all("universal valuation into M_B(A) on the idempotent corpus", parts))
}

fn hardness(cfg: &VerifyConfig) -> Result<Report> {
    let mut parts = Vec::new();
    for a in construct::corpus() {
        let scan = sheaf_lemma_scan(&a, SpectrumKind::Sp, cfg.spectrum_limit)?;
        parts.push(Report::new(
            format!("{}: all {} Sp equalizer semirings are hard", a.label(), scan.covers_checked),
            scan.sections_hard(),
            vec![json!({ "non_hard": scan.non_hard })],
        ));
        parts.push(hardening_sections_check(&a, cfg.spectrum_limit)?);
    }
    Ok(Report::all("hardness of Sp sections and of the hardening", parts))
}

fn subsets_of(n: usize) -> impl Iterator<Item = Subset> {
    (0u128..1 << n).map(Subset::from_bits)
}

fn properties(cfg: &VerifyConfig) -> Result<Report> {
    let corpus = construct::corpus();
    let mut closed = Vec::new();
    let mut principal = Vec::new();
    let mut covers = Vec::new();
    for a in &corpus {
        for kind in [SpectrumKind::Spec, SpectrumKind::Sp] {
            let space = enumerate(a, kind, cfg.spectrum_limit)?;
            let name = format!("{} ({kind:?})", a.label());
            let all = space.all();
            let subsets: Vec<Subset> = subsets_of(a.size()).collect();
            // V(S₁) ∪ V(S₂) = V(S₁·S₂) and V(S₁) ∩ V(S₂) = V(S₁ ∪ S₂)
            let v: Vec<Subset> = subsets.iter().map(|s| space.v(s.iter())).collect();
            let mut bad = 0;
            for &s1 in &subsets {
                for &s2 in &subsets {
                    let prod: Subset = s1.iter().flat_map(|x| s2.iter().map(move |y| a.mul(x, y))).collect();
                    let (v1, v2) = (v[s1.bits() as usize], v[s2.bits() as usize]);
                    if v1.union(v2) != v[prod.bits() as usize] || v1.intersection(v2) != v[s1.union(s2).bits() as usize] {
                        bad += 1;
                    }
                }
            }
            let ends = space.v([a.zero()]) == all && space.v([a.one()]).is_empty();
            closed.push(Report::new(name.clone(), bad == 0 && ends, vec![json!({ "violations": bad })]));

            let mut bad = Vec::new();
            for x in a.elements() {
                for y in a.elements() {
                    let (dx, dy) = (space.d(x), space.d(y));
                    let product = space.d(a.mul(x, y)) == dx.intersection(dy);
                    let sum = if kind == SpectrumKind::Sp && a.is_idempotent() {
                        space.d(a.add(x, y)) == dx.union(dy)
                    } else {
                        space.d(a.add(x, y)).is_subset(dx.union(dy))
                    };
                    if !(product && sum) {
                        bad.push(json!([x, y]));
                    }
                }
            }
            principal.push(Report::new(name.clone(), bad.is_empty(), bad));

            let disagreements: Vec<_> = subsets
                .iter()
                .filter(|s| !cover_check(a, &space, &s.to_vec()).agree())
                .map(|s| json!(s.to_vec()))
                .collect();
            covers.push(Report::new(name, disagreements.is_empty(), disagreements));
        }
    }

    let mut preimages = Vec::new();
    for a in &corpus {
        for b in &corpus {
            let ideals_b = all_ideals(b, 1 << 16)?;
            let mut bad = 0;
            let homs = enumerate_homs(a, b);
            for f in &homs {
                for &i in &ideals_b {
                    let pre: Subset = a.elements().filter(|&x| i.contains(f.apply(x))).collect();
                    let ok = is_ideal(a, pre)
                        && (!is_prime(b, i) || is_prime(a, pre))
                        && (!is_subtractive(b, i) || is_subtractive(a, pre));
                    if !ok {
                        bad += 1;
                    }
                }
            }
            if !homs.is_empty() {
                preimages.push(Report::new(
                    format!("{} -> {}: {} homs", a.label(), b.label(), homs.len()),
                    bad == 0,
                    vec![json!({ "violations": bad })],
                ));
            }
        }
    }

    let mut witness = Vec::new();
    for a in &corpus {
        let mut monoids = 0;
        let mut bad = Vec::new();
        for s in subsets_of(a.size()).filter(|&s| is_mult_submonoid(a, s)) {
            monoids += 1;
            let fracs: Vec<(usize, usize)> = a.elements().flat_map(|x| s.iter().map(move |d| (x, d))).collect();
            let rel: Vec<Vec<bool>> = fracs
                .iter()
                .map(|&f| fracs.iter().map(|&g| fraction_witness(a, s, f, g).is_some()).collect())
                .collect();
            let n = fracs.len();
            let transitive = (0..n).all(|i| {
                (0..n).filter(|&j| rel[i][j]).all(|j| (0..n).all(|k| !rel[j][k] || rel[i][k]))
            });
            let reflexive_symmetric = (0..n).all(|i| rel[i][i] && (0..n).all(|j| rel[i][j] == rel[j][i]));
            if !(transitive && reflexive_symmetric) {
                bad.push(json!(s.to_vec()));
            }
        }
        witness.push(Report::new(
            format!("{}: witness equality is an equivalence for all {monoids} submonoids", a.label()),
            bad.is_empty(),
            bad,
        ));
    }

    Ok(Report::all(
        "property suites on the corpus",
        vec![
            Report::all("V(S1) ∪ V(S2) = V(S1·S2), V(S1) ∩ V(S2) = V(S1 ∪ S2)", closed),
            Report::all("D(ab) = D(a) ∩ D(b); D(a+b) ⊆ D(a) ∪ D(b), with equality on idempotent Sp", principal),
            Report::all("ideal criteria for covers agree with the topology", covers),
            Report::all("preimages of ideals, primes and kernels", preimages),
            Report::all("fraction equality by witnesses is an equivalence relation", witness),
        ],
    ))
}
