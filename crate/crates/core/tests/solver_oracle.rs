mod common;

use common::*;
use pfree::solver::{mirsky_decompose, solve, solve_naive, SearchProblem, SolveOptions};
use pfree::{Poset, SetFamily, Subset};
use proptest::prelude::*;

fn problem() -> impl Strategy<Value = (SearchProblem, Vec<u32>)> {
    (3u8..=5).prop_flat_map(|n| {
        let full = (1u32 << n) - 1;
        (
            proptest::collection::btree_set(1u32..=full, 1..=16),
            any::<bool>(),
            prop::option::of(1usize..=3),
            prop::option::of(0usize..3),
            any::<bool>(),
        )
            .prop_map(move |(sets, inter, k, forbid, weighted)| {
                let sets: Vec<u32> = sets.into_iter().collect();
                let mut p = SearchProblem::custom(
                    n,
                    sets.iter().map(|&m| Subset::new(n, m).unwrap()).collect(),
                );
                if inter {
                    p = p.intersecting();
                }
                if let Some(k) = k {
                    p = p.sperner(k);
                }
                if let Some(i) = forbid {
                    p = p.forbid([Poset::butterfly(), Poset::v(), Poset::lambda()][i].clone());
                }
                if weighted {
                    p = p.weighted();
                }
                (p, sets)
            })
    })
}

fn brute(p: &SearchProblem, sets: &[u32]) -> (u128, Vec<Vec<u32>>) {
    let n = p.n();
    let forbidden = p.constraints.forbidden.clone();
    brute_max(
        sets,
        |f| match p.objective {
            pfree::solver::Objective::Cardinality => f.len() as u128,
            pfree::solver::Objective::BinomialWeight => f
                .iter()
                .map(|m| choose(n as usize, m.count_ones() as i64))
                .sum(),
        },
        |f| {
            (!p.constraints.intersecting || pairwise_intersecting(f))
                && p.constraints
                    .sperner_k
                    .is_none_or(|k| longest_chain_len(f) <= k)
                && forbidden.as_ref().is_none_or(|q| {
                    let fam = SetFamily::from_masks(n, f.iter().copied()).unwrap();
                    !pfree::poset::family_contains_subposet(&fam, q)
                })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solver_matches_exhaustive((p, sets) in problem()) {
        let (best, arg) = brute(&p, &sets);
        let r = solve(&p, &SolveOptions::enumerating()).unwrap();
        prop_assert_eq!(r.optimum, best);
        let got: Vec<Vec<u32>> = r.witnesses.iter().map(|w| w.masks().to_vec()).collect();
        prop_assert_eq!(&got, &arg);
        let naive = solve_naive(&p, 10_000).unwrap();
        prop_assert_eq!(naive.optimum, best);
        let one = solve(&p, &SolveOptions { threads: Some(1), ..SolveOptions::enumerating() }).unwrap();
        prop_assert_eq!(one.witnesses, r.witnesses);
    }
}

#[test]
fn power_set_small_cases_match_exhaustive() {
    let universe: Vec<u32> = (1u32..16).collect();
    for k in 1..=3usize {
        let p = SearchProblem::power_set(4).intersecting().sperner(k);
        let (best, _) = brute_max(
            &universe,
            |f| f.len() as u128,
            |f| pairwise_intersecting(f) && longest_chain_len(f) <= k,
        );
        assert_eq!(
            solve(&p, &SolveOptions::default()).unwrap().optimum,
            best,
            "k={k}"
        );
    }
    let (best, _) = brute_max(
        &(1u32..15).collect::<Vec<_>>(),
        |f| f.len() as u128,
        |f| !has_butterfly(f),
    );
    assert_eq!(
        solve(
            &SearchProblem::power_set(4).forbid(Poset::butterfly()),
            &SolveOptions::default()
        )
        .unwrap()
        .optimum,
        best
    );
}

#[test]
fn mirsky_layers_are_antichains() {
    let f = pfree::construct::construct_hx(6, 3, 2).unwrap();
    let layers = mirsky_decompose(&f);
    assert_eq!(layers.len(), longest_chain_len(f.masks()));
    assert_eq!(layers.iter().map(|l| l.len()).sum::<usize>(), f.len());
    assert!(layers.iter().all(|l| longest_chain_len(l.masks()) <= 1));
}
