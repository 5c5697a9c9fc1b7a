use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use towerset::gentower::{is_towerizable, orient, PermutationScope, SearchCaps};
use towerset::hilbert_burch::{determinant_generators, generators_from_matrix};
use towerset::monomial::{
    colon_monomial, ideal_from_support, intersect, minimal_primes, Monomial, MonomialIdeal,
    PrimeSupport,
};
use towerset::resolution::{betti_numbers, is_acm};
use towerset::selftest::{
    random_squarefree_ideal, random_standard_form, random_support, random_tower,
};
use towerset::series::{brute_hilbert_function, h_vector_and_degree, hilbert_numerator};
use towerset::tower::{
    distinct_variable_families, is_tower_set, sigma_hash, tower_scheme_ideal, LeftSegment, PointSet,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn intersection_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_squarefree_ideal(&mut r, 5, 4);
        let b = random_squarefree_ideal(&mut r, 5, 4);
        let c = random_squarefree_ideal(&mut r, 5, 4);
        let ab = intersect(&a, &b).unwrap();
        prop_assert_eq!(&ab, &intersect(&b, &a).unwrap());
        prop_assert_eq!(
            intersect(&ab, &c).unwrap(),
            intersect(&a, &intersect(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(intersect(&a, &a).unwrap(), a);
    }

    #[test]
    fn colon_by_a_variable_drops_members(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = 2 + (seed % 2) as usize;
        let u = random_support(&mut r, 9, c, 8);
        let ideal = ideal_from_support(&u).unwrap();
        for a in 1..=9 {
            let got = colon_monomial(&ideal, &Monomial::var(9, a)).unwrap();
            let colon = u.colon(a);
            let want = if colon.is_empty() { MonomialIdeal::unit(9) } else { ideal_from_support(&colon).unwrap() };
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn minimal_primes_are_minimal_members(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = random_support(&mut r, 7, 2 + (seed % 3) as usize, 8);
        let members: Vec<BTreeSet<usize>> = u.members().iter().map(|m| m.iter().copied().collect()).collect();
        let want: BTreeSet<Vec<usize>> = members
            .iter()
            .filter(|m| !members.iter().any(|o| o != *m && o.is_subset(m)))
            .map(|m| m.iter().copied().collect())
            .collect();
        let got: BTreeSet<Vec<usize>> = minimal_primes(&ideal_from_support(&u).unwrap()).unwrap().into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn hilbert_function_matches_numerator(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 3 + (seed % 4) as usize;
        let i = random_squarefree_ideal(&mut r, n, 5);
        let k = hilbert_numerator(&i);
        let dmax = 6;
        let brute = brute_hilbert_function(&i, dmax);
        for (d, &count) in brute.iter().enumerate() {
            let series: i64 = (0..=d)
                .map(|e| k.coeff(e) * binomial((d - e + n - 1) as u64, (n - 1) as u64) as i64)
                .sum();
            prop_assert_eq!(series, count as i64, "degree {}", d);
        }
    }

    #[test]
    fn betti_euler_characteristic_is_numerator(seed in any::<u64>()) {
        let mut r = rng(seed);
        let i = random_squarefree_ideal(&mut r, 6, 6);
        prop_assert_eq!(betti_numbers(&i).unwrap().euler_polynomial(), hilbert_numerator(&i));
    }

    #[test]
    fn acm_tower_schemes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = 2 + (seed % 2) as usize;
        let t = random_tower(&mut r, c, 5, 8, false);
        let (fam, n) = distinct_variable_families(&t);
        let i = tower_scheme_ideal(&t, &fam).unwrap();
        prop_assert!(is_acm(&i).unwrap());
        let (h, degree) = h_vector_and_degree(&i, c).unwrap();
        prop_assert!(h.is_nonnegative());
        prop_assert_eq!(degree, t.len() as i64);
        for a in 1..=n {
            let colon = colon_monomial(&i, &Monomial::var(n, a)).unwrap();
            if !colon.is_unit() {
                prop_assert!(is_acm(&colon).unwrap());
            }
        }
    }

    #[test]
    fn planar_tower_structure(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tower(&mut r, 2, 6, 12, seed % 2 == 0);
        let rows: Vec<BTreeSet<u32>> = t.projection(0).into_iter().map(|i| t.row(i)).collect();
        for a in &rows {
            for b in &rows {
                prop_assert!(a.is_subset(b) || b.is_subset(a));
            }
        }
        if t.is_starred() {
            for p in t.iter() {
                prop_assert!(!t.contains(&[p[1], p[0]]));
            }
            let (r1, c2) = (t.projection(0), t.projection(1));
            for h in &c2 {
                if c2.iter().all(|&j| t.column(j).is_subset(&t.column(*h))) {
                    prop_assert!(!r1.contains(h));
                }
            }
            for h in &r1 {
                if r1.iter().all(|&i| t.row(i).is_subset(&t.row(*h))) {
                    prop_assert!(!c2.contains(h));
                }
            }
        }
    }

    #[test]
    fn left_segments_hash_to_themselves(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = 2 + (seed % 2) as usize;
        let gens: Vec<Vec<u32>> = (0..1 + seed % 3)
            .map(|_| (0..c).map(|_| rand::Rng::gen_range(&mut r, 1..=4)).collect())
            .collect();
        let l = LeftSegment::generated_by(c, &gens).unwrap();
        prop_assert!(is_tower_set(l.points()));
        let hash = sigma_hash(l.points()).unwrap();
        prop_assert_eq!(hash.points(), l.points());
    }

    #[test]
    fn generators_are_maximal_minors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_standard_form(&mut r, 1 + (seed % 8) as usize);
        prop_assert_eq!(determinant_generators(&m).unwrap(), generators_from_matrix(&m));
        for j in 1..=m.r() {
            for i in m.orbit(j) {
                prop_assert!(m.orbit(i).is_subset(&m.orbit(j)));
            }
        }
    }

    #[test]
    fn towerizable_search_matches_literal_search(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 3 + (seed % 3) as usize;
        let u = random_support(&mut r, n, 2, 5);
        let literal = (0..1u64 << u.len()).any(|mask| {
            let oriented = orient(&u, mask);
            permutations(n as u32).into_iter().any(|perm| {
                let image = oriented.iter().map(|(_, [a, b])| vec![perm[*a as usize - 1], perm[*b as usize - 1]]);
                is_tower_set(&PointSet::new(2, image).unwrap())
            })
        });
        let found = is_towerizable(&u, SearchCaps::default(), PermutationScope::Ambient).unwrap();
        prop_assert_eq!(found.is_some(), literal);
        if let Some(w) = found {
            prop_assert!(is_tower_set(&w.image));
        }
    }
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n);
            out.push(q);
        }
    }
    out
}

#[test]
fn support_json_round_trip() {
    let s = PrimeSupport::new(4, 2, vec![vec![1, 2], vec![3, 4]]).unwrap();
    let json = serde_json::to_string(&s).unwrap();
    assert_eq!(json, r#"{"n":4,"c":2,"primes":[[1,2],[3,4]]}"#);
    assert_eq!(serde_json::from_str::<PrimeSupport>(&json).unwrap(), s);
    assert!(serde_json::from_str::<PrimeSupport>(r#"{"n":2,"c":2,"primes":[[1,3]]}"#).is_err());
}
