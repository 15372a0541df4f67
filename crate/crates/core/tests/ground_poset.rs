mod common;

use common::*;
use pfree::ground::{
    complement_family, is_antichain, is_intersecting, is_k_sperner, longest_chain, SetFamily,
};
use pfree::json::{family_from_json, family_to_json};
use pfree::poset::{
    butterfly_free_dense, embeds, embeds_exhaustive, family_contains_subposet, Poset,
};
use proptest::prelude::*;

fn family(max_n: u8) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u32..1 << n, 0..24)
            .prop_map(move |m| SetFamily::from_masks(n, m).unwrap())
    })
}

fn poset() -> impl Strategy<Value = Poset> {
    (1usize..=5).prop_flat_map(|p| {
        proptest::collection::vec(any::<bool>(), p * p).prop_map(move |bits| {
            let rel: Vec<(usize, usize)> = (0..p)
                .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * p + j])
                .map(|(i, j)| (i + 1, j + 1))
                .collect();
            Poset::new(p, &rel).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn predicates_match_pairwise_scans(f in family(7)) {
        prop_assert_eq!(is_intersecting(&f), pairwise_intersecting(f.masks()));
        prop_assert_eq!(longest_chain(&f), longest_chain_len(f.masks()));
        prop_assert_eq!(is_antichain(&f), longest_chain_len(f.masks()) <= 1);
        for k in 1..4 {
            prop_assert_eq!(is_k_sperner(&f, k), longest_chain_len(f.masks()) <= k);
        }
    }

    #[test]
    fn complement_is_an_involution(f in family(8)) {
        prop_assert_eq!(complement_family(&complement_family(&f)), f.clone());
        prop_assert_eq!(complement_family(&f).len(), f.len());
    }

    #[test]
    fn json_round_trip(f in family(8)) {
        prop_assert_eq!(family_from_json(&family_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn butterfly_searches_agree(f in family(5)) {
        let brute = has_butterfly(f.masks());
        prop_assert_eq!(family_contains_subposet(&f, &Poset::butterfly()), brute);
        prop_assert_eq!(!butterfly_free_dense(&f), brute);
    }

    #[test]
    fn embedding_matches_injections(p in poset(), q in poset()) {
        prop_assert_eq!(embeds(&p, &q), embeds_exhaustive(&p, &q).unwrap());
    }

    #[test]
    fn permuting_preserves_predicates(f in family(6), seed in any::<u64>()) {
        let n = f.n();
        let mut pi: Vec<u8> = (1..=n).collect();
        let mut s = seed;
        for i in (1..pi.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pi.swap(i, (s >> 33) as usize % (i + 1));
        }
        let g = f.permuted(&pi);
        prop_assert_eq!(g.profile(), f.profile());
        prop_assert_eq!(is_intersecting(&g), is_intersecting(&f));
        prop_assert_eq!(longest_chain(&g), longest_chain(&f));
    }
}

#[test]
fn dense_paths_on_large_families() {
    let n = 12u8;
    let star = SetFamily::from_masks(n, (1u32..1 << n).filter(|m| m & 1 == 1)).unwrap();
    assert!(star.len() >= 2048);
    assert!(is_intersecting(&star));
    assert_eq!(longest_chain(&star), n as usize);
    let mut nearly = star.masks().to_vec();
    nearly.push(0b10);
    let nearly = SetFamily::from_masks(n, nearly).unwrap();
    assert!(!is_intersecting(&nearly));
}
