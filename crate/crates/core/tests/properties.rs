use proptest::prelude::*;

use semispec::ideals::{ideal_closure, is_ideal, is_prime, is_subtractive, subtractive_closure};
use semispec::kernel::{construct, enumerate_homs, is_homomorphism, MinMax, MinMaxPairs};
use semispec::localize::{fraction_witness, is_hard, is_semi_invertible, localize, monoid_closure};
use semispec::spectra::{sp_enumerate, spec_enumerate};
use semispec::{FiniteSemiring, Semiring, Subset};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn corpus() -> &'static [FiniteSemiring] {
    static CORPUS: std::sync::OnceLock<Vec<FiniteSemiring>> = std::sync::OnceLock::new();
    CORPUS.get_or_init(construct::corpus)
}

fn member() -> impl Strategy<Value = &'static FiniteSemiring> {
    (0..corpus().len()).prop_map(|i| &corpus()[i])
}

fn subset_of(n: usize) -> impl Strategy<Value = Subset> {
    any::<u128>().prop_map(move |b| Subset::from_bits(b).intersection(Subset::full(n)))
}

fn with_subset() -> impl Strategy<Value = (&'static FiniteSemiring, Subset)> {
    member().prop_flat_map(|a| (Just(a), subset_of(a.size())))
}

fn minmax() -> impl Strategy<Value = MinMax> {
    prop_oneof![
        1 => Just(MinMax::Point),
        9 => (0u64..50, -50i64..50).prop_map(|(o, d)| MinMax::pair(o, d)),
    ]
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn minmax_laws(a in minmax(), b in minmax(), c in minmax()) {
        let s = MinMaxPairs;
        prop_assert_eq!(s.add(&a, &b), s.add(&b, &a));
        prop_assert_eq!(s.mul(&a, &b), s.mul(&b, &a));
        prop_assert_eq!(s.add(&s.add(&a, &b), &c), s.add(&a, &s.add(&b, &c)));
        prop_assert_eq!(s.mul(&s.mul(&a, &b), &c), s.mul(&a, &s.mul(&b, &c)));
        prop_assert_eq!(s.mul(&a, &s.add(&b, &c)), s.add(&s.mul(&a, &b), &s.mul(&a, &c)));
        prop_assert_eq!(s.add(&a, &a), a.clone());
        prop_assert_eq!(s.add(&a, &s.zero()), a.clone());
        prop_assert_eq!(s.mul(&a, &s.one()), a.clone());
        prop_assert_eq!(s.mul(&a, &s.zero()), s.zero());
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn subtractive_closure_is_a_closure_operator((a, s) in with_subset(), extra in any::<u128>()) {
        let i = ideal_closure(a, s.iter());
        let j = ideal_closure(a, s.union(Subset::from_bits(extra).intersection(Subset::full(a.size()))).iter());
        let ci = subtractive_closure(a, i);
        prop_assert!(i.is_subset(ci));
        prop_assert_eq!(subtractive_closure(a, ci), ci);
        prop_assert!(ci.is_subset(subtractive_closure(a, j)));
        prop_assert!(is_subtractive(a, ci));
    }

    #[test]
    fn witness_equality_is_an_equivalence((a, gens) in with_subset(), f in any::<[usize; 6]>()) {
        let s = monoid_closure(a, gens.iter());
        let n = a.size();
        let dens = s.to_vec();
        let frac = |k: usize| (f[2 * k] % n, dens[f[2 * k + 1] % dens.len()]);
        let (x, y, z) = (frac(0), frac(1), frac(2));
        prop_assert!(fraction_witness(a, s, x, x).is_some());
        prop_assert_eq!(fraction_witness(a, s, x, y).is_some(), fraction_witness(a, s, y, x).is_some());
        if fraction_witness(a, s, x, y).is_some() && fraction_witness(a, s, y, z).is_some() {
            prop_assert!(fraction_witness(a, s, x, z).is_some());
        }
    }

    #[test]
    fn localization_is_a_semiring_inverting_its_monoid((a, gens) in with_subset()) {
        let s = monoid_closure(a, gens.iter());
        let l = localize(a, s).unwrap();
        prop_assert!(semispec::kernel::verify_axioms(&l.semiring).is_valid());
        prop_assert!(is_homomorphism(a, &l.semiring, &l.phi.map));
        for x in s.iter() {
            prop_assert!(l.semiring.inverse(l.phi.apply(x)).is_some());
        }
    }

    #[test]
    fn semi_invertibles_form_a_saturated_monoid(a in member(), x in any::<usize>(), y in any::<usize>()) {
        let (x, y) = (x % a.size(), y % a.size());
        prop_assert_eq!(
            is_semi_invertible(a, a.mul(x, y)),
            is_semi_invertible(a, x) && is_semi_invertible(a, y)
        );
    }

    #[test]
    fn basic_opens_of_products_are_intersections(a in member(), x in any::<usize>(), y in any::<usize>()) {
        prop_assume!(a.size() <= 16);
        let (x, y) = (x % a.size(), y % a.size());
        for space in [spec_enumerate(a, 16).unwrap(), sp_enumerate(a, 16).unwrap()] {
            prop_assert_eq!(space.d(a.mul(x, y)), space.d(x).intersection(space.d(y)));
            prop_assert!(space.d(a.add(x, y)).is_subset(space.d(x).union(space.d(y))));
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn preimages_and_composites_under_homs(a in member(), b in member(), c in member(), pick in any::<usize>(), s in any::<u128>()) {
        prop_assume!(a.size() <= 16 && b.size() <= 16 && c.size() <= 16);
        let fs = enumerate_homs(a, b);
        let gs = enumerate_homs(b, c);
        prop_assume!(!fs.is_empty());
        let f = &fs[pick % fs.len()];
        for g in &gs {
            prop_assert!(enumerate_homs(a, c).contains(&f.then(g)));
        }
        let i = ideal_closure(b, Subset::from_bits(s).intersection(Subset::full(b.size())).iter());
        let pre = Subset::from_bits(f.preimage(|y| i.contains(y)).iter().fold(0, |m, &x| m | 1u128 << x));
        prop_assert!(is_ideal(a, pre));
        if is_prime(b, i) {
            prop_assert!(is_prime(a, pre));
        }
        if is_subtractive(b, i) {
            prop_assert!(is_subtractive(a, pre));
        }
    }

    #[test]
    fn prime_kernel_localizations_are_hard(a in member(), pick in any::<usize>()) {
        prop_assume!(a.size() <= 16);
        let space = sp_enumerate(a, 16).unwrap();
        prop_assume!(!space.is_empty());
        let p = space.points[pick % space.len()];
        let l = localize(a, p.complement(a.size())).unwrap();
        prop_assert!(is_hard(&l.semiring));
    }
}
