use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use normcov::bounds::{self, DegreeData};
use normcov::covering::{self, GroupKind, SubgroupType};
use normcov::numtheory::{self, Sieve};
use normcov::oracle;
use normcov::partitions::{self, ClusterFamily, Partition, PartitionStream};

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn phi_matches_gcd_count_to_ten_thousand() {
    for n in 1..=10_000 {
        assert_eq!(numtheory::euler_phi(n).unwrap(), oracle::phi_by_gcd(n), "n = {n}");
    }
}

#[test]
fn phi_of_even_is_at_most_half() {
    for d in (2..=10_000).step_by(2) {
        assert!(2 * numtheory::euler_phi(d).unwrap() <= d);
    }
}

#[test]
fn q_set_laws_to_one_hundred_thousand() {
    let sieve = Sieve::new(100_000);
    for n in 3..=100_000u64 {
        let qs = numtheory::q_set(n).unwrap();
        assert!(qs.len() <= sieve.omega(n - 1), "n = {n}");
        if qs.iter().any(|q| q.d == 2) {
            assert_eq!(qs.len(), 1);
            assert_eq!(qs.iter().next().unwrap().q, n - 1);
        }
        for q in &qs {
            assert_eq!(q.degree(), n as u128);
        }
    }
}

#[test]
fn k_partition_counts_match_enumeration() {
    for n in 1..=200u64 {
        for k in 1..=6u64 {
            let mut s = PartitionStream::new(n, Some(k as usize));
            let mut c = 0u128;
            while s.advance().is_some() {
                c += 1;
            }
            assert_eq!(partitions::count_partitions(n, k).unwrap(), c, "p_{k}({n})");
        }
    }
}

#[test]
fn full_enumeration_matches_partition_numbers() {
    for n in 1..=60 {
        let count = PartitionStream::new(n, None).count() as u128;
        assert_eq!(count, partitions::partition_number(n).unwrap());
    }
}

#[test]
fn coprime_counts_match_filtered_enumeration() {
    for n in 1..=200u64 {
        for k in [2u64, 3] {
            assert_eq!(
                partitions::count_coprime(n, k).unwrap(),
                partitions::count_coprime_enumerated(n, k).unwrap(),
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn intransitive_coverage_is_cluster_membership() {
    for n in 3..=30u64 {
        let g = GroupKind::sym(n).unwrap();
        for p in PartitionStream::new(n, None) {
            for x in (1..).take_while(|x| 2 * x < n) {
                let c = covering::covers(&SubgroupType::Intransitive(x), &p, &g).unwrap();
                assert_eq!(c, partitions::has_cluster(&p, x).unwrap());
            }
        }
    }
}

#[test]
fn projective_triples_are_coprime_partitions() {
    let prime_powers: Vec<u64> = (2..=64).filter(|&q| numtheory::prime_power(q).is_some()).collect();
    for q in prime_powers {
        for d1 in 1..12u32 {
            for d2 in 1..=12 - d1 {
                if numtheory::gcd(d1 as u64, d2 as u64) != 1 {
                    assert!(partitions::projective_terms(q, d1, d2).is_err());
                    continue;
                }
                let (terms, total) = partitions::projective_terms(q, d1, d2).unwrap();
                assert_eq!(terms.iter().sum::<u128>(), total);
                assert_eq!(Some(total), numtheory::repunit(q, d1 + d2));
                let g = terms.iter().fold(0u128, |a, &b| num_integer::Integer::gcd(&a, &b));
                assert_eq!(g, 1, "q = {q}, d = ({d1},{d2})");
            }
        }
    }
}

#[test]
fn conjecture_is_integral() {
    for n in 3..=100_000 {
        covering::conjecture_value(n).unwrap();
    }
}

#[test]
fn catalog_members_are_coprime_and_counted_by_cap() {
    for n in 3..=3000u64 {
        let g = GroupKind::sym(n).unwrap();
        let cat = covering::primitive_coprime3_types(&g).unwrap();
        for p in &cat {
            assert_eq!(p.n(), n);
            assert!(p.is_coprime());
        }
        assert!((cat.len() as f64) <= bounds::primitive_cap(n).unwrap());
    }
}

#[test]
fn catalog_respects_alt_parity() {
    for n in 4..=500u64 {
        let sym = covering::primitive_coprime3_types(&GroupKind::sym(n).unwrap()).unwrap();
        let alt = covering::primitive_coprime3_types(&GroupKind::alt(n).unwrap()).unwrap();
        if n % 2 == 0 {
            assert!(alt.is_empty());
        } else {
            assert_eq!(alt, sym);
        }
    }
}

#[test]
fn corollary_forms_are_ordered() {
    let sieve = Sieve::new(100_000);
    for n in 20..=100_000u64 {
        let d = DegreeData::with_sieve(n, &sieve).unwrap();
        let ev = bounds::evaluate(&d, 64).unwrap();
        assert_eq!(ev.simple.certainly_lt(&ev.corollary), Some(true), "n = {n}");
        if n % 2 == 0 {
            assert!(ev.theorem.lower_rational() >= ev.corollary.upper_rational(), "n = {n}");
        }
    }
}

#[test]
fn small_composite_bounds_are_ordered() {
    for n in (4..=50u64).step_by(2) {
        let r = bounds::bound_report(&GroupKind::sym(n).unwrap()).unwrap();
        if let Some(m) = r.maroti_upper_bound {
            assert!((r.theorem_bound as f64) <= m, "n = {n}");
        }
        assert!(1.0 / (2.0 * std::f64::consts::PI.powi(2)) < r.zeta2_approx && r.zeta2_approx < 1.0 / 12.0);
    }
}

fn partition_strategy(max_n: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_n, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn factorization_multiplies_back(n in 2u64..u64::MAX) {
        let f = numtheory::factorize(n).unwrap();
        let mut prod = 1u128;
        let mut last = 0;
        for &(p, a) in f.factors() {
            prop_assert!(p > last && a >= 1 && numtheory::is_prime(p));
            last = p;
            prod *= (p as u128).pow(a);
        }
        prop_assert_eq!(prod, n as u128);
    }

    #[test]
    fn partition_text_round_trips(terms in partition_strategy(50, 12)) {
        let p = Partition::new(terms.clone()).unwrap();
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p);
    }

    #[test]
    fn clusters_are_symmetric_and_match_subsets(terms in partition_strategy(30, 14), x_seed in 0u64..1000) {
        let p = Partition::new(terms.clone()).unwrap();
        let n = p.n();
        prop_assume!(n >= 2);
        let x = 1 + x_seed % (n - 1);
        let has = partitions::has_cluster(&p, x).unwrap();
        prop_assert_eq!(has, partitions::has_cluster(&p, n - x).unwrap());
        prop_assert_eq!(has, oracle::has_subset_sum(p.terms(), x));
    }

    #[test]
    fn covering_matches_block_search_on_small_degrees(terms in partition_strategy(8, 8)) {
        let n: u64 = terms.iter().sum();
        prop_assume!((4..=12).contains(&n));
        for b in (1..=n).filter(|b| n.is_multiple_of(*b)) {
            let systems = oracle::block_systems(n as usize, b as usize);
            prop_assert_eq!(
                covering::preserves_block_system(&terms, b),
                oracle::block_system_search(&terms, &systems)
            );
        }
    }

    #[test]
    fn union_respects_the_quadratic_cap(n in 5u64..=90, picks in prop::collection::btree_set(1u64..45, 1..12)) {
        let top = n.div_ceil(2) - 1;
        let xs: BTreeSet<u64> = picks.into_iter().filter(|&x| x <= top).collect();
        prop_assume!(!xs.is_empty());
        let l = xs.len() as u64;
        let fam = ClusterFamily::new(n, xs.iter().copied()).unwrap();
        let u = partitions::union_cluster_count(&fam);
        let v: Vec<u64> = xs.into_iter().collect();
        prop_assert_eq!(u, oracle::three_cluster_union(n, &v));
        prop_assert!(2 * u <= l * (n - l + 1));
    }

    #[test]
    fn quadratic_root_substitutes_back(n in 4u64..100_000, num in 0u64..1_000_000_000, den in 1u64..1000) {
        let deficit = BigRational::new(BigInt::from(num), BigInt::from(den));
        match bounds::intransitive_quadratic_solve(n, &deficit) {
            Ok(root) => {
                let l = root.ceil() as u64;
                prop_assert!(l <= n + 1);
                let lhs = big(l) * big(n + 1 - l) / big(2);
                prop_assert!(lhs >= deficit);
            }
            Err(normcov::Error::NegativeDiscriminant(_)) => {
                prop_assert!(big(8) * &deficit > big(n + 1) * big(n + 1));
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn doubling_precision_refines(n in 4u64..2_000_000, p in 16u32..300) {
        let g = if n % 2 == 0 { GroupKind::sym(n) } else { GroupKind::alt(n) }.unwrap();
        let a = bounds::bound_report_with_precision(&g, p).unwrap();
        let b = bounds::bound_report_with_precision(&g, 2 * p).unwrap();
        prop_assert!(b.theorem_bound >= a.theorem_bound);
        prop_assert!(b.f_upper <= a.f_upper);
        prop_assert!(b.radicand <= a.radicand);
    }

    #[test]
    fn reports_round_trip_through_json(n in 4u64..200_000) {
        let g = if n % 2 == 0 { GroupKind::sym(n) } else { GroupKind::alt(n) }.unwrap();
        let r = bounds::bound_report(&g).unwrap();
        let back: bounds::BoundReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r);
    }
}
