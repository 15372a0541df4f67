//! Bitmask subsets of `[n]` and normalized set families.
//!
//! Element `i` of `[n]` is bit `i - 1` of the mask. A [`SetFamily`] keeps its
//! members sorted by ascending mask value with no duplicates, so two families
//! compare equal exactly when they hold the same sets.

use std::fmt;

use thiserror::Error;

/// Largest supported ground-set size.
pub const MAX_N: u8 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundError {
    #[error("ground size {0} outside 1..={MAX_N}")]
    BadGroundSize(u8),
    #[error("element {element} outside [1, {n}]")]
    ElementOutOfRange { element: u32, n: u8 },
    #[error("mask {mask:#x} has bits outside [1, {n}]")]
    MaskOutOfRange { mask: u32, n: u8 },
    #[error("ground sizes differ: {0} vs {1}")]
    MismatchedGround(u8, u8),
}

fn check_n(n: u8) -> Result<(), GroundError> {
    if n == 0 || n > MAX_N {
        Err(GroundError::BadGroundSize(n))
    } else {
        Ok(())
    }
}

/// Mask of the full ground set `[n]`.
#[inline]
pub fn full_mask(n: u8) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    mask: u32,
    n: u8,
}

impl Subset {
    pub fn new(n: u8, mask: u32) -> Result<Self, GroundError> {
        check_n(n)?;
        if mask & !full_mask(n) != 0 {
            return Err(GroundError::MaskOutOfRange { mask, n });
        }
        Ok(Subset { mask, n })
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(
        n: u8,
        elements: I,
    ) -> Result<Self, GroundError> {
        check_n(n)?;
        let mut mask = 0u32;
        for e in elements {
            if e == 0 || e > n as u32 {
                return Err(GroundError::ElementOutOfRange { element: e, n });
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset { mask, n })
    }

    pub fn empty(n: u8) -> Self {
        Subset { mask: 0, n }
    }

    pub fn full(n: u8) -> Self {
        Subset {
            mask: full_mask(n),
            n,
        }
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.mask
    }

    #[inline]
    pub fn n(self) -> u8 {
        self.n
    }

    #[inline]
    pub fn size(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn contains(self, element: u32) -> bool {
        element >= 1 && element <= self.n as u32 && self.mask & (1 << (element - 1)) != 0
    }

    /// Elements in ascending order, 1-based.
    pub fn elements(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut m = self.mask;
        while m != 0 {
            out.push(m.trailing_zeros() + 1);
            m &= m - 1;
        }
        out
    }

    pub fn complement(self) -> Self {
        Subset {
            mask: full_mask(self.n) & !self.mask,
            n: self.n,
        }
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.mask & !other.mask == 0
    }

    #[inline]
    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self.mask != other.mask && self.is_subset_of(other)
    }

    #[inline]
    pub fn intersects(self, other: Subset) -> bool {
        self.mask & other.mask != 0
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// A duplicate-free family of subsets of `[n]` in ascending mask order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    n: u8,
    masks: Vec<u32>,
}

impl SetFamily {
    pub fn empty(n: u8) -> Result<Self, GroundError> {
        check_n(n)?;
        Ok(SetFamily {
            n,
            masks: Vec::new(),
        })
    }

    /// Builds a family from raw masks; duplicates are merged.
    pub fn from_masks<I: IntoIterator<Item = u32>>(n: u8, masks: I) -> Result<Self, GroundError> {
        check_n(n)?;
        let full = full_mask(n);
        let mut v: Vec<u32> = Vec::new();
        for m in masks {
            if m & !full != 0 {
                return Err(GroundError::MaskOutOfRange { mask: m, n });
            }
            v.push(m);
        }
        v.sort_unstable();
        v.dedup();
        Ok(SetFamily { n, masks: v })
    }

    pub fn from_subsets<I: IntoIterator<Item = Subset>>(
        n: u8,
        sets: I,
    ) -> Result<Self, GroundError> {
        let mut masks = Vec::new();
        for s in sets {
            if s.n() != n {
                return Err(GroundError::MismatchedGround(s.n(), n));
            }
            masks.push(s.mask());
        }
        Self::from_masks(n, masks)
    }

    /// Family from lists of 1-based elements.
    pub fn from_element_lists<I, J>(n: u8, lists: I) -> Result<Self, GroundError>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = u32>,
    {
        let mut masks = Vec::new();
        for l in lists {
            masks.push(Subset::from_elements(n, l)?.mask());
        }
        Self::from_masks(n, masks)
    }

    /// The `r`-th level: all `r`-subsets of `[n]`.
    pub fn level(n: u8, r: u32) -> Result<Self, GroundError> {
        Self::levels(n, r, r)
    }

    /// Union of the full levels `lo..=hi`.
    pub fn levels(n: u8, lo: u32, hi: u32) -> Result<Self, GroundError> {
        check_n(n)?;
        let masks = (0..=full_mask(n)).filter(|m| {
            let s = m.count_ones();
            s >= lo && s <= hi
        });
        Ok(SetFamily {
            n,
            masks: masks.collect(),
        })
    }

    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    #[inline]
    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        let n = self.n;
        self.masks.iter().map(move |&mask| Subset { mask, n })
    }

    pub fn contains_mask(&self, mask: u32) -> bool {
        self.masks.binary_search(&mask).is_ok()
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.n() == self.n && self.contains_mask(s.mask())
    }

    pub fn insert(&mut self, s: Subset) -> Result<bool, GroundError> {
        if s.n() != self.n {
            return Err(GroundError::MismatchedGround(s.n(), self.n));
        }
        match self.masks.binary_search(&s.mask()) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.masks.insert(pos, s.mask());
                Ok(true)
            }
        }
    }

    pub fn remove(&mut self, s: Subset) -> bool {
        match self.masks.binary_search(&s.mask()) {
            Ok(pos) if s.n() == self.n => {
                self.masks.remove(pos);
                true
            }
            _ => false,
        }
    }

    pub fn filter<F: FnMut(Subset) -> bool>(&self, mut keep: F) -> SetFamily {
        let n = self.n;
        SetFamily {
            n,
            masks: self
                .masks
                .iter()
                .copied()
                .filter(|&mask| keep(Subset { mask, n }))
                .collect(),
        }
    }

    pub fn union(&self, other: &SetFamily) -> Result<SetFamily, GroundError> {
        if other.n != self.n {
            return Err(GroundError::MismatchedGround(other.n, self.n));
        }
        Self::from_masks(self.n, self.masks.iter().chain(other.masks.iter()).copied())
    }

    /// Number of members of each size `0..=n`.
    pub fn profile(&self) -> Vec<usize> {
        let mut p = vec![0; self.n as usize + 1];
        for &m in &self.masks {
            p[m.count_ones() as usize] += 1;
        }
        p
    }

    /// Applies `pi` (a permutation of `1..=n`, `pi[i-1]` is the image of `i`)
    /// to every member.
    pub fn permuted(&self, pi: &[u8]) -> SetFamily {
        let masks = self.masks.iter().map(|&m| permute_mask(m, pi));
        SetFamily::from_masks(self.n, masks).expect("permutation preserves ground set")
    }
}

/// Image of `mask` under `pi` (`pi[i-1]` is the image of element `i`).
pub fn permute_mask(mask: u32, pi: &[u8]) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << (pi[i] - 1);
        m &= m - 1;
    }
    out
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} ", self.n)?;
        f.debug_list().entries(self.iter()).finish()
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// Above this many members the quadratic pair scans switch to transforms over
/// `2^[n]`.
const DENSE_MIN: usize = 2048;

/// Every two members meet and no member is empty.
pub fn is_intersecting(f: &SetFamily) -> bool {
    let m = f.masks();
    if m.first() == Some(&0) {
        return false;
    }
    if m.len() >= DENSE_MIN {
        return intersecting_dense(f);
    }
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if a & b == 0 {
                return false;
            }
        }
    }
    true
}

pub fn is_antichain(f: &SetFamily) -> bool {
    let m = f.masks();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            // masks are distinct, so containment is strict
            if a & b == a || a & b == b {
                return false;
            }
        }
    }
    true
}

/// Length of the longest strict containment chain among the members.
pub fn longest_chain(f: &SetFamily) -> usize {
    if f.len() >= DENSE_MIN {
        return longest_chain_dense(f);
    }
    chain_depths(f).into_iter().max().unwrap_or(0)
}

/// Counts members below every `Z` and checks that no member's complement
/// holds a member.
fn intersecting_dense(f: &SetFamily) -> bool {
    let n = f.n() as usize;
    let mut down = vec![0u32; 1 << n];
    for &m in f.masks() {
        down[m as usize] = 1;
    }
    for bit in 0..n {
        for z in 0..1usize << n {
            if z >> bit & 1 == 1 {
                down[z] += down[z ^ (1 << bit)];
            }
        }
    }
    let full = full_mask(f.n());
    f.masks().iter().all(|&m| down[(full & !m) as usize] == 0)
}

/// `best[Z]` is the longest chain of members inside `Z`.
fn longest_chain_dense(f: &SetFamily) -> usize {
    let n = f.n() as usize;
    let mut member = vec![false; 1 << n];
    for &m in f.masks() {
        member[m as usize] = true;
    }
    let mut best = vec![0u8; 1 << n];
    for z in 0..1usize << n {
        let mut below = 0u8;
        let mut rest = z;
        while rest != 0 {
            let b = rest & rest.wrapping_neg();
            below = below.max(best[z ^ b]);
            rest ^= b;
        }
        best[z] = below + member[z] as u8;
    }
    best[(1usize << n) - 1] as usize
}

/// For each member (in storage order), the length of the longest chain of
/// members having it as maximal element.
pub fn chain_depths(f: &SetFamily) -> Vec<usize> {
    let m = f.masks();
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by_key(|&i| m[i].count_ones());
    let mut depth = vec![1usize; m.len()];
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            if m[j] != m[i] && m[j] & m[i] == m[j] && depth[j] + 1 > depth[i] {
                depth[i] = depth[j] + 1;
            }
        }
    }
    depth
}

/// No chain of `k + 1` members.
pub fn is_k_sperner(f: &SetFamily, k: usize) -> bool {
    longest_chain(f) <= k
}

/// Members strictly between two other members.
pub fn middle_sets(f: &SetFamily) -> SetFamily {
    let m = f.masks();
    f.filter(|s| {
        let x = s.mask();
        let below = m.iter().any(|&a| a != x && a & x == a);
        let above = m.iter().any(|&b| b != x && b & x == x);
        below && above
    })
}

pub fn complement_family(f: &SetFamily) -> SetFamily {
    let full = full_mask(f.n());
    SetFamily::from_masks(f.n(), f.masks().iter().map(|&m| full & !m))
        .expect("complements stay in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u8, lists: &[&[u32]]) -> SetFamily {
        SetFamily::from_element_lists(n, lists.iter().map(|l| l.iter().copied())).unwrap()
    }

    #[test]
    fn subset_bounds() {
        assert!(Subset::new(3, 0b1000).is_err());
        assert!(Subset::from_elements(3, [4]).is_err());
        assert!(Subset::from_elements(3, [0]).is_err());
        assert!(Subset::new(21, 0).is_err());
        let s = Subset::from_elements(5, [1, 3, 4]).unwrap();
        assert_eq!(s.size(), 3);
        assert_eq!(s.elements(), vec![1, 3, 4]);
        assert_eq!(s.complement().elements(), vec![2, 5]);
        assert_eq!(s.to_string(), "{1,3,4}");
    }

    #[test]
    fn normalization_sorts_and_dedups() {
        let f = SetFamily::from_masks(3, [5, 1, 5, 3]).unwrap();
        assert_eq!(f.masks(), &[1, 3, 5]);
        assert!(SetFamily::from_masks(2, [4]).is_err());
    }

    #[test]
    fn intersecting_examples() {
        assert!(is_intersecting(&fam(3, &[&[1, 2], &[2, 3], &[1, 3]])));
        assert!(!is_intersecting(&fam(2, &[&[1], &[2]])));
        // the empty set never belongs to an intersecting family
        assert!(!is_intersecting(&fam(3, &[&[]])));
        assert!(is_intersecting(&fam(3, &[&[2]])));
        assert!(is_intersecting(&SetFamily::empty(3).unwrap()));
    }

    #[test]
    fn antichain_and_sperner_examples() {
        assert!(is_antichain(&SetFamily::level(4, 2).unwrap()));
        assert!(!is_antichain(&fam(2, &[&[1], &[1, 2]])));
        let c3 = fam(3, &[&[1], &[1, 2], &[1, 2, 3]]);
        assert!(!is_k_sperner(&c3, 2));
        assert!(is_k_sperner(&c3, 3));
        assert_eq!(longest_chain(&c3), 3);
        assert!(is_antichain(&fam(3, &[&[1]])));
    }

    #[test]
    fn middle_set_examples() {
        let c3 = fam(3, &[&[1], &[1, 2], &[1, 2, 3]]);
        assert_eq!(middle_sets(&c3), fam(3, &[&[1, 2]]));
        assert!(middle_sets(&SetFamily::level(5, 2).unwrap()).is_empty());
        let d = fam(3, &[&[1], &[1, 2], &[1, 3], &[1, 2, 3]]);
        assert_eq!(middle_sets(&d), fam(3, &[&[1, 2], &[1, 3]]));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_family(&fam(3, &[&[]])), fam(3, &[&[1, 2, 3]]));
        assert_eq!(
            complement_family(&SetFamily::level(5, 2).unwrap()),
            SetFamily::level(5, 3).unwrap()
        );
    }

    #[test]
    fn insert_remove() {
        let mut f = SetFamily::empty(4).unwrap();
        let s = Subset::from_elements(4, [2, 4]).unwrap();
        assert!(f.insert(s).unwrap());
        assert!(!f.insert(s).unwrap());
        assert!(f.contains(s));
        assert!(f.insert(Subset::full(3)).is_err());
        assert!(f.remove(s));
        assert!(f.is_empty());
    }

    #[test]
    fn exhaustive_small_equivalences() {
        // every family of 2^[3] and of 2^[4] restricted to 2^[3]-sized universes
        for n in 1..=3u8 {
            let universe = 1u32 << n;
            for fm in 0u32..(1u32 << universe) {
                let masks = (0..universe).filter(|m| fm >> m & 1 == 1);
                let f = SetFamily::from_masks(n, masks).unwrap();
                assert_eq!(is_antichain(&f), is_k_sperner(&f, 1));
                assert_eq!(middle_sets(&f).is_empty(), is_k_sperner(&f, 2));
                assert!(is_k_sperner(&f, n as usize + 1));
                let c = complement_family(&f);
                assert_eq!(c.len(), f.len());
                assert_eq!(complement_family(&c), f);
            }
        }
    }

    #[test]
    fn dense_paths_agree() {
        let cases = [
            SetFamily::levels(6, 3, 4).unwrap(),
            SetFamily::levels(6, 4, 6).unwrap(),
            fam(4, &[&[1, 2], &[3, 4], &[1, 2, 3]]),
            SetFamily::levels(5, 0, 5).unwrap(),
        ];
        for f in &cases {
            let m = f.masks();
            let pairwise = m.first() != Some(&0)
                && m.iter()
                    .enumerate()
                    .all(|(i, &a)| m[i + 1..].iter().all(|&b| a & b != 0));
            assert_eq!(intersecting_dense(f), pairwise, "{f:?}");
            assert_eq!(
                longest_chain_dense(f),
                chain_depths(f).into_iter().max().unwrap_or(0),
                "{f:?}"
            );
        }
    }
}
