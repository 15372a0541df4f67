mod common;

use common::*;
use pfree::construct::{construct_h0, construct_hx, sigma, sigma_i};
use pfree::dchain::{canonical_double_chain, permuted_pair};
use pfree::ground::{is_intersecting, is_k_sperner};
use pfree::ineq::{bollobas_sum, gkk_sum};
use pfree::perm::permutations;
use pfree::{Rational, SetFamily};
use proptest::prelude::*;

#[test]
fn closed_forms_against_pascal() {
    for n in 1..=20u8 {
        for k in 1..=n as u32 {
            assert_eq!(
                sigma(n, k).unwrap(),
                sigma_oracle(n as usize, k as usize),
                "n={n} k={k}"
            );
            assert_eq!(
                sigma_i(n, k).unwrap(),
                sigma_i_oracle(n as usize, k as usize),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn constructions_keep_their_promises() {
    for n in 2..=12u8 {
        for k in 1..=(n as u32).div_ceil(2) {
            let h = construct_h0(n, k).unwrap();
            assert!(pairwise_intersecting(h.masks()) && longest_chain_len(h.masks()) <= k as usize);
        }
        if n % 2 == 0 {
            for k in 1..=n as u32 / 2 {
                let h = construct_hx(n, k, n as u32).unwrap();
                assert!(is_intersecting(&h) && is_k_sperner(&h, k as usize));
                assert_eq!(h.len() as u128, sigma_i_oracle(n as usize, k as usize));
            }
        }
    }
}

/// Each set of size `r` with `1 <= r <= n-1` sits in `4 r! (n-r)!` of the
/// `n!` permuted pairs.
#[test]
fn pair_membership_counts() {
    for n in 4..=6u8 {
        let pairs: Vec<SetFamily> = permutations(n)
            .map(|pi| permuted_pair(n, &pi).unwrap().union)
            .collect();
        for m in 1u32..(1 << n) - 1 {
            let r = m.count_ones() as usize;
            let hits = pairs.iter().filter(|p| p.contains_mask(m)).count() as u128;
            assert_eq!(hits, 4 * fact(r) * fact(n as usize - r), "n={n} m={m:b}");
        }
        assert_eq!(
            canonical_double_chain(n).unwrap().members().len(),
            2 * n as usize
        );
    }
}

fn lym_oracle(f: &SetFamily, gkk: bool) -> Rational {
    let n = f.n() as usize;
    f.iter()
        .map(|s| {
            let r = s.size() as i64;
            let d = if !gkk {
                choose(n - 1, r - 1)
            } else if 2 * r as usize <= n {
                choose(n, r - 1)
            } else {
                choose(n, r)
            };
            Rational::new(1, d as i128)
        })
        .fold(Rational::from_integer(0), |a, b| a + b)
}

proptest! {
    #[test]
    fn lym_sums_match_oracle(n in 4u8..=10, masks in proptest::collection::vec(1u32..1024, 0..40)) {
        let f = SetFamily::from_masks(n, masks.into_iter().map(|m| m & ((1 << n) - 1)).filter(|&m| m != 0)).unwrap();
        prop_assert_eq!(gkk_sum(&f).unwrap().value, lym_oracle(&f, true));
        let small = f.filter(|s| 2 * s.size() <= n as u32);
        let b = bollobas_sum(&small).unwrap();
        prop_assert_eq!(b.value, lym_oracle(&small, false));
        prop_assert!(b.value >= gkk_sum(&small).unwrap().value);
    }
}
