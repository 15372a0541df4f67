//! Double chains and double chain-complement pairs.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::binom::{binomial, factorial};
use crate::ground::{full_mask, GroundError, SetFamily, Subset};
use crate::perm::permutations;
use crate::poset::{family_contains_subposet, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DchainError {
    #[error("ground size {n} outside {lo}..={hi}")]
    OutOfRange { n: u8, lo: u8, hi: u8 },
    #[error("not a permutation of 1..={0}")]
    BadPermutation(u8),
    #[error("|P| + h(P) - 1 = {need} exceeds the 2n = {have} sets of a double chain")]
    PosetTooLarge { need: usize, have: usize },
    #[error("the bound needs an odd ground size, got {0}")]
    EvenGround(u8),
    #[error("|P| + h(P) = {0} is odd")]
    OddPosetSum(usize),
    #[error("the empty set lies in every pair; the identity needs it absent")]
    EmptyMember,
    #[error(transparent)]
    Ground(#[from] GroundError),
}

/// `A_0 ⊂ ... ⊂ A_n` together with `M_i = A_{i-1} ∪ (A_{i+1} \ A_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleChain {
    n: u8,
    base: Vec<u32>,
    members: SetFamily,
}

impl DoubleChain {
    /// The double chain on the maximal chain adding `order[0], order[1], ...`.
    pub fn from_order(order: &[u8]) -> Result<Self, DchainError> {
        let n = order.len() as u8;
        if !(2..=crate::ground::MAX_N).contains(&n) {
            return Err(DchainError::OutOfRange {
                n,
                lo: 2,
                hi: crate::ground::MAX_N,
            });
        }
        let mut seen = 0u32;
        for &e in order {
            if e == 0 || e > n || seen >> (e - 1) & 1 == 1 {
                return Err(DchainError::BadPermutation(n));
            }
            seen |= 1 << (e - 1);
        }
        let mut base = vec![0u32];
        for &e in order {
            base.push(base.last().unwrap() | 1 << (e - 1));
        }
        let mut masks = base.clone();
        for i in 1..n as usize {
            masks.push(base[i - 1] | (base[i + 1] & !base[i]));
        }
        let members = SetFamily::from_masks(n, masks)?;
        Ok(DoubleChain { n, base, members })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// `A_0, ..., A_n` as masks.
    pub fn base(&self) -> &[u32] {
        &self.base
    }

    /// `M_i` for `1 <= i <= n - 1`.
    pub fn m(&self, i: usize) -> u32 {
        self.base[i - 1] | (self.base[i + 1] & !self.base[i])
    }

    pub fn members(&self) -> &SetFamily {
        &self.members
    }
}

/// The double chain on `A_i = [i]`.
pub fn canonical_double_chain(n: u8) -> Result<DoubleChain, DchainError> {
    DoubleChain::from_order(&(1..=n).collect::<Vec<_>>())
}

/// A double chain with its complement chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DccPair {
    pub chain: DoubleChain,
    pub complement: SetFamily,
    pub union: SetFamily,
}

impl DccPair {
    pub fn new(chain: DoubleChain) -> Self {
        let complement = crate::ground::complement_family(chain.members());
        let union = chain.members().union(&complement).expect("same ground");
        DccPair {
            chain,
            complement,
            union,
        }
    }
}

/// `H_0^π`: the canonical pair with every set mapped through `pi`
/// (`pi[i-1]` is the image of `i`).
pub fn permuted_pair(n: u8, pi: &[u8]) -> Result<DccPair, DchainError> {
    if pi.len() != n as usize {
        return Err(DchainError::BadPermutation(n));
    }
    Ok(DccPair::new(DoubleChain::from_order(pi)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurcsiNagyReport {
    pub n: u8,
    pub subset_size: usize,
    pub subsets_checked: u64,
    pub holds: bool,
    pub counterexample: Option<Vec<Vec<u32>>>,
}

/// Checks that every `(|P| + h(P) - 1)`-subset of the canonical double chain
/// contains `p`.
pub fn check_burcsi_nagy(p: &Poset, n: u8) -> Result<BurcsiNagyReport, DchainError> {
    let d = canonical_double_chain(n)?;
    let need = p.len() + p.height() - 1;
    let members: Vec<u32> = d.members().masks().to_vec();
    if need > members.len() {
        return Err(DchainError::PosetTooLarge {
            need,
            have: members.len(),
        });
    }
    let m = members.len() as u32;
    let picks: Vec<u32> = (0u32..1 << m)
        .filter(|s| s.count_ones() as usize == need)
        .collect();
    let bad = picks.par_iter().find_first(|&&s| {
        let f = SetFamily::from_masks(
            n,
            (0..m)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| members[i as usize]),
        )
        .expect("double chain sets lie in [n]");
        !family_contains_subposet(&f, p)
    });
    Ok(BurcsiNagyReport {
        n,
        subset_size: need,
        subsets_checked: picks.len() as u64,
        holds: bad.is_none(),
        counterexample: bad.map(|&s| {
            (0..m)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| Subset::new(n, members[i as usize]).unwrap().elements())
                .collect()
        }),
    })
}

/// `Σ_{i=1}^{(|P|+h(P))/2 - 1} C(n, ⌊n/2⌋ + i)` for odd `n >= 5`.
pub fn odd_bound(p: &Poset, n: u8) -> Result<u128, DchainError> {
    if n.is_multiple_of(2) {
        return Err(DchainError::EvenGround(n));
    }
    if !(5..=crate::ground::MAX_N).contains(&n) {
        return Err(DchainError::OutOfRange {
            n,
            lo: 5,
            hi: crate::ground::MAX_N,
        });
    }
    let s = p.len() + p.height();
    if s % 2 == 1 {
        return Err(DchainError::OddPosetSum(s));
    }
    let h = n as i64 / 2;
    Ok((1..s as i64 / 2).map(|i| binomial(n as i64, h + i)).sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DccAudit {
    pub n: u8,
    pub family_size: usize,
    /// `Σ_π Σ_F w(F, H_0^π)`.
    pub total_weight: u128,
    /// `4 |F| n!`.
    pub expected: u128,
    pub identity_holds: bool,
    /// `|F ∩ H_0^π|` for each permutation in lexicographic order.
    pub intersections: Vec<usize>,
    /// Most members of `F` among the sets of one weight in a single pair.
    pub max_per_weight_class: usize,
}

/// Weighted double count of `f` against all `n!` permuted pairs.
pub fn dcc_weight_audit(f: &SetFamily) -> Result<DccAudit, DchainError> {
    let n = f.n();
    if !(4..=7).contains(&n) {
        return Err(DchainError::OutOfRange { n, lo: 4, hi: 7 });
    }
    if f.contains_mask(0) {
        return Err(DchainError::EmptyMember);
    }
    let full = full_mask(n);
    let perms: Vec<Vec<u8>> = permutations(n).collect();
    let rows: Vec<(u128, usize, usize)> = perms
        .par_iter()
        .map(|pi| {
            let pair = permuted_pair(n, pi).expect("valid permutation");
            let mut weight = 0u128;
            let mut hits = 0usize;
            let mut per_class = vec![0usize; n as usize / 2 + 1];
            for &m in pair.union.masks() {
                if !f.contains_mask(m) {
                    continue;
                }
                hits += 1;
                let r = m.count_ones() as i64;
                weight += if m == full { 4 } else { binomial(n as i64, r) };
                if m != full && m != 0 {
                    per_class[r.min(n as i64 - r) as usize] += 1;
                }
            }
            (weight, hits, per_class.into_iter().max().unwrap_or(0))
        })
        .collect();
    let total: u128 = rows.iter().map(|r| r.0).sum();
    let expected = 4 * f.len() as u128 * factorial(n as u32);
    Ok(DccAudit {
        n,
        family_size: f.len(),
        total_weight: total,
        expected,
        identity_holds: total == expected,
        intersections: rows.iter().map(|r| r.1).collect(),
        max_per_weight_class: rows.iter().map(|r| r.2).max().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::longest_chain;

    #[test]
    fn canonical_examples() {
        let d = canonical_double_chain(3).unwrap();
        let expected = SetFamily::from_element_lists(
            3,
            [
                vec![],
                vec![1],
                vec![1, 2],
                vec![1, 2, 3],
                vec![2],
                vec![1, 3],
            ],
        )
        .unwrap();
        assert_eq!(d.members(), &expected);
        let d4 = canonical_double_chain(4).unwrap();
        assert_eq!(d4.members().len(), 8);
        assert_eq!(Subset::new(4, d4.m(2)).unwrap().elements(), vec![1, 3]);
        for n in 2..=10 {
            let d = canonical_double_chain(n).unwrap();
            assert_eq!(d.members().len(), 2 * n as usize);
            assert_eq!(longest_chain(d.members()), n as usize + 1);
        }
        assert!(canonical_double_chain(1).is_err());
    }

    #[test]
    fn permuted_examples() {
        let id: Vec<u8> = (1..=5).collect();
        let h0 = DccPair::new(canonical_double_chain(5).unwrap());
        assert_eq!(permuted_pair(5, &id).unwrap(), h0);
        let p = permuted_pair(5, &[3, 1, 5, 2, 4]).unwrap();
        assert_eq!(p.union.len(), h0.union.len());
        assert_eq!(p.union, h0.union.permuted(&[3, 1, 5, 2, 4]));
        assert!(permuted_pair(5, &[1, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn burcsi_nagy_examples() {
        let b = check_burcsi_nagy(&Poset::butterfly(), 4).unwrap();
        assert!(b.holds);
        assert_eq!(b.subsets_checked, 56);
        let v = check_burcsi_nagy(&Poset::v(), 4).unwrap();
        assert!(v.holds);
        assert_eq!(v.subsets_checked, 70);
        let c = check_burcsi_nagy(&Poset::chain(3).unwrap(), 3).unwrap();
        assert!(c.holds);
        assert_eq!(c.subsets_checked, 6);
        assert!(check_burcsi_nagy(&Poset::chain(6).unwrap(), 2).is_err());
    }

    #[test]
    fn odd_bound_examples() {
        assert_eq!(odd_bound(&Poset::butterfly(), 5).unwrap(), 15);
        assert_eq!(odd_bound(&Poset::butterfly(), 7).unwrap(), 56);
        assert_eq!(odd_bound(&Poset::chain(2).unwrap(), 5).unwrap(), 10);
        assert_eq!(
            odd_bound(&Poset::butterfly(), 6),
            Err(DchainError::EvenGround(6))
        );
        assert_eq!(odd_bound(&Poset::v(), 5), Err(DchainError::OddPosetSum(5)));
        assert!(odd_bound(&Poset::butterfly(), 3).is_err());
    }

    #[test]
    fn audit_examples() {
        let full = SetFamily::from_masks(5, [full_mask(5)]).unwrap();
        let a = dcc_weight_audit(&full).unwrap();
        assert_eq!(a.total_weight, 4 * 120);
        assert!(a.identity_holds);
        let l3 = SetFamily::level(5, 3).unwrap();
        let a = dcc_weight_audit(&l3).unwrap();
        assert_eq!(a.total_weight, 4800);
        assert!(a.max_per_weight_class <= 4);
        assert_eq!(a.intersections.len(), 120);
        let with_empty = SetFamily::from_masks(4, [0, 1]).unwrap();
        assert_eq!(dcc_weight_audit(&with_empty), Err(DchainError::EmptyMember));
    }
}
