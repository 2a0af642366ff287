//! Runs every named check of the registry and cross-checks it against brute
//! force oracles written independently of the library. Prints one line per
//! criterion and exits nonzero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semispec::kernel::{construct, enumerate_homs};
use semispec::localize::{BxFraction, harden};
use semispec::poly::BoolPoly;
use semispec::sheaf::{alexandrov_sections, equalizer_sections, Presheaf};
use semispec::spectra::{enumerate, sp_via_homs, BoolPolySpModel, SpectrumKind};
use semispec::valuation::build_mra;
use semispec::verify::{run, VerifyConfig, CHECKS};
use semispec::FiniteSemiring;

// ---- brute force over tables ----

fn subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

fn is_ideal(a: &FiniteSemiring, s: &[bool]) -> bool {
    let n = a.size();
    s[a.zero()]
        && (0..n).all(|x| !s[x] || (0..n).all(|y| (!s[y] || s[a.add(x, y)]) && s[a.mul(x, y)]))
}

fn is_prime(a: &FiniteSemiring, s: &[bool]) -> bool {
    let n = a.size();
    is_ideal(a, s) && !s[a.one()] && (0..n).all(|x| (0..n).all(|y| !s[a.mul(x, y)] || s[x] || s[y]))
}

fn is_subtractive(a: &FiniteSemiring, s: &[bool]) -> bool {
    let n = a.size();
    (0..n).all(|x| (0..n).all(|y| !(s[y] && s[a.add(x, y)]) || s[x]))
}

fn ideals(a: &FiniteSemiring) -> Vec<Vec<bool>> {
    subsets(a.size()).filter(|s| is_ideal(a, s)).collect()
}

fn primes(a: &FiniteSemiring) -> Vec<Vec<bool>> {
    subsets(a.size()).filter(|s| is_prime(a, s)).collect()
}

/// `x ∈ rad(I)` iff some power of `x` lies in `I`.
fn radical(a: &FiniteSemiring, i: &[bool]) -> Vec<bool> {
    (0..a.size())
        .map(|x| {
            let mut p = x;
            (0..=a.size()).any(|_| {
                let hit = i[p];
                p = a.mul(p, x);
                hit
            })
        })
        .collect()
}

fn is_hard(a: &FiniteSemiring) -> bool {
    let n = a.size();
    let unit = |x: usize| (0..n).any(|b| a.mul(x, b) == a.one());
    let semi = |x: usize| (0..n).any(|b| (0..n).any(|c| a.add(a.one(), a.mul(x, b)) == a.mul(x, c)));
    (0..n).all(|x| !semi(x) || unit(x))
}

/// Number of classes of `A × S` under `(x,s) ∼ (y,t) ⟺ ∃u ∈ S: uxt = uys`.
fn localization_size(a: &FiniteSemiring, s: &[usize]) -> usize {
    let fracs: Vec<(usize, usize)> = (0..a.size()).flat_map(|x| s.iter().map(move |&d| (x, d))).collect();
    let same = |(x, d): (usize, usize), (y, e): (usize, usize)| {
        s.iter().any(|&u| a.mul(u, a.mul(x, e)) == a.mul(u, a.mul(y, d)))
    };
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for &f in &fracs {
        if !reps.iter().any(|&r| same(r, f)) {
            reps.push(f);
        }
    }
    reps.len()
}

// ---- oracles, one per criterion ----

fn oracle_spec_nat() -> Result<(), String> {
    let primes: Vec<u64> = (2..=50u64).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let top = (p - 1) * q + p * q;
            let mut reach = vec![false; top as usize + 1];
            reach[0] = true;
            for n in 1..=top as usize {
                reach[n] = (n >= p as usize && reach[n - p as usize]) || (n >= q as usize && reach[n - q as usize]);
            }
            if let Some(n) = ((p - 1) * q..=top).find(|&n| !reach[n as usize]) {
                return Err(format!("{n} is not in <{p},{q}>"));
            }
        }
    }
    // {0} ⊂ 2ℕ ⊂ ℕ∖{1} is a chain of primes; only {0} ⊂ pℕ survives in Sp
    let in_2n = |n: u64| n.is_multiple_of(2);
    let in_max = |n: u64| n != 1;
    if !(1..200).all(|n| !in_2n(n) || in_max(n)) || in_max(1 + 2) == in_max(1) {
        return Err("chain of primes broken".into());
    }
    Ok(())
}

fn oracle_poly_sp() -> Result<(), String> {
    for n in 1..=4usize {
        let monos = 1usize << n;
        let size = 1usize << monos;
        let model = BoolPolySpModel::build(n).map_err(|e| e.to_string())?;
        let mut distinct = HashSet::new();
        for e in 0..1usize << n {
            // monomial i maps to 1 iff its variables are all set in e
            let live: usize = (0..monos).filter(|&i| i & !e == 0).map(|i| 1 << i).sum();
            let kernel: Vec<bool> = (0..size).map(|m| m & live == 0).collect();
            let h = model.assignments.iter().position(|a| (0..n).all(|j| a[j] == (e >> j & 1 == 1))).unwrap();
            if model.kernels[h] != kernel {
                return Err(format!("n = {n}: kernel of assignment {e:b} differs"));
            }
            distinct.insert(kernel);
        }
        if distinct.len() != 1 << n {
            return Err(format!("n = {n}: {} kernels", distinct.len()));
        }
    }
    Ok(())
}

fn poly_mul(f: u64, g: u64) -> u64 {
    (0..64).filter(|i| f >> i & 1 == 1).fold(0, |acc, i| acc | g << i)
}

fn to_bool_poly(f: u64) -> BoolPoly {
    BoolPoly::univariate((0..64).filter(|i| f >> i & 1 == 1))
}

fn oracle_bx() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let (n1, d1, n2, d2) = (rng.random_range(0..32u64), rng.random_range(0..32u64) | 1, rng.random_range(0..32u64), rng.random_range(0..32u64) | 1);
        let f = BxFraction::new(to_bool_poly(n1), to_bool_poly(d1)).map_err(|e| e.to_string())?;
        let g = BxFraction::new(to_bool_poly(n2), to_bool_poly(d2)).map_err(|e| e.to_string())?;
        let (l, r) = (poly_mul(n1, d2), poly_mul(n2, d1));
        // degree ≤ 4 everywhere, so witnesses of degree ≤ 8 suffice
        let witnessed = (0u64..1 << 8).any(|m| {
            let u = 1 | m << 1;
            poly_mul(l, u) == poly_mul(r, u)
        });
        if witnessed != (f.to_minmax() == g.to_minmax()) {
            return Err(format!("{f} vs {g}: witness {witnessed}"));
        }
    }
    Ok(())
}

fn oracle_sheaf_lemma(limit: usize) -> Result<(), String> {
    for a in construct::corpus() {
        let pr = primes(&a);
        let space = enumerate(&a, SpectrumKind::Spec, limit).map_err(|e| e.to_string())?;
        if space.len() != pr.len() {
            return Err(format!("{}: {} primes, library has {}", a.label(), pr.len(), space.len()));
        }
        let d = |b: usize| -> Vec<bool> { pr.iter().map(|p| !p[b]).collect() };
        let p = Presheaf::new(&a, &space);
        for x in a.elements() {
            let dx = d(x);
            let s: Vec<usize> = a.elements().filter(|&b| d(b).iter().zip(&dx).all(|(&db, &da)| db || !da)).collect();
            let eq = equalizer_sections(&p, &[x], x).map_err(|e| e.to_string())?;
            if eq.sections.size() != localization_size(&a, &s) {
                return Err(format!("{}: sections over D({}) have the wrong size", a.label(), a.name(x)));
            }
        }
        let global = alexandrov_sections(&p, space.all()).map_err(|e| e.to_string())?;
        if global.size() != a.size() {
            return Err(format!("{}: {} global sections", a.label(), global.size()));
        }
    }
    Ok(())
}

fn oracle_ktt() -> Result<(), String> {
    let mul = |f: &[i64], g: &[i64]| {
        let mut out = vec![0; f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    // coefficients from t⁰ upwards
    let (x1, s1, x2, s2) = (vec![0, 0, 1, 1], vec![-1, 0, 1], vec![0, 0, 1, 1, 1], vec![-1, 0, 0, 1]);
    let (lhs, rhs) = (mul(&x1, &s2), mul(&x2, &s1));
    if lhs[..] != rhs[..lhs.len()] || rhs[lhs.len()..].iter().any(|&c| c != 0) {
        return Err("cross identity fails".into());
    }
    if [&x1, &s1, &x2, &s2].iter().any(|f| f[1] != 0) {
        return Err("a polynomial leaves K[t^2,t^3]".into());
    }
    // t²/(t−1) has a pole at 1 and so is no polynomial
    Ok(())
}

fn oracle_sp_injectivity() -> Result<(), String> {
    // multilinear normal form in ℕ[x,y]/(x² ∼ x, y² ∼ y); monomials 1, x, y, xy
    let mul = |f: [u32; 4], g: [u32; 4]| {
        let mut out = [0; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i | j] += f[i] * g[j];
            }
        }
        out
    };
    let (s, t) = ([1, 0, 0, 1], [0, 1, 1, 0]);
    for g in [[0, 1, 0, 0], [0, 0, 1, 0]] {
        if mul(g, s) != mul(g, t) {
            return Err("local images differ".into());
        }
    }
    Ok(())
}

fn oracle_radical() -> Result<(), String> {
    for a in construct::corpus().iter().filter(|a| a.size() <= 8) {
        let pr = primes(a);
        for i in ideals(a) {
            let meet: Vec<bool> = (0..a.size())
                .map(|x| pr.iter().filter(|p| (0..a.size()).all(|y| !i[y] || p[y])).all(|p| p[x]))
                .collect();
            if radical(a, &i) != meet {
                return Err(format!("{}: radical of {:?}", a.label(), i));
            }
        }
    }
    Ok(())
}

fn oracle_universal_valuation(module_limit: usize) -> Result<(), String> {
    let b = construct::boolean();
    for a in construct::corpus() {
        let Some(iota) = enumerate_homs(&b, &a).into_iter().next() else { continue };
        let Ok(lattice) = build_mra(&a, &b, &iota, module_limit) else { continue };
        // 𝔹-submodules of an idempotent A are the subsets with 0 closed under +
        let count = subsets(a.size())
            .filter(|s| s[a.zero()] && (0..a.size()).all(|x| (0..a.size()).all(|y| !(s[x] && s[y]) || s[a.add(x, y)])))
            .count();
        if count != lattice.len() {
            return Err(format!("{}: {count} submodules, library has {}", a.label(), lattice.len()));
        }
        let points = sp_via_homs(&lattice.semiring).map_err(|e| e.to_string())?;
        if points.len() != primes(&a).len() {
            return Err(format!("{}: |Sp M| = {} but |Spec A| differs", a.label(), points.len()));
        }
    }
    Ok(())
}

fn oracle_hardness(limit: usize) -> Result<(), String> {
    for a in construct::corpus() {
        if !is_hard(&harden(&a).semiring) {
            return Err(format!("{}◇ is not hard", a.label()));
        }
        let space = enumerate(&a, SpectrumKind::Sp, limit).map_err(|e| e.to_string())?;
        let kernels = primes(&a).into_iter().filter(|p| is_subtractive(&a, p)).count();
        if kernels != space.len() {
            return Err(format!("{}: {kernels} prime kernels, library has {}", a.label(), space.len()));
        }
        let p = Presheaf::new(&a, &space);
        for x in a.elements() {
            let eq = equalizer_sections(&p, &[x], x).map_err(|e| e.to_string())?;
            if !is_hard(&eq.sections.semiring) {
                return Err(format!("{}: sections over D~({}) are not hard", a.label(), a.name(x)));
            }
        }
    }
    Ok(())
}

fn oracle(id: &str, cfg: &VerifyConfig) -> Result<(), String> {
    match id {
        "spec-nat" => oracle_spec_nat(),
        "poly-sp" => oracle_poly_sp(),
        "bx-hardening" => oracle_bx(),
        "sheaf-lemma" => oracle_sheaf_lemma(cfg.spectrum_limit),
        "ktt" => oracle_ktt(),
        "sp-injectivity" => oracle_sp_injectivity(),
        "radical" => oracle_radical(),
        "universal-valuation" => oracle_universal_valuation(cfg.module_limit),
        "hardness" => oracle_hardness(cfg.spectrum_limit),
        "properties" => Ok(()),
        _ => Err(format!("no oracle for {id}")),
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    for (n, (id, description)) in CHECKS.iter().enumerate() {
        let start = Instant::now();
        let check = run(id, &cfg);
        let cross = oracle(id, &cfg);
        let pass = matches!(&check, Ok(r) if r.passed()) && cross.is_ok();
        let detail = match (&check, &cross) {
            (Err(e), _) => format!("error: {e}"),
            (Ok(r), _) if !r.passed() => format!("report:\n{}", r.to_json()),
            (_, Err(e)) => format!("oracle: {e}"),
            _ => String::new(),
        };
        println!(
            "criterion {:>2} {:<20} {}  {} ({:.1}s)",
            n + 1,
            id,
            if pass { "PASS" } else { "FAIL" },
            description,
            start.elapsed().as_secs_f64()
        );
        if !pass {
            failed += 1;
            println!("{detail}");
        }
    }
    println!("{} of {} criteria passed", CHECKS.len() - failed, CHECKS.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
