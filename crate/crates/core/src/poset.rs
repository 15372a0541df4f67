//! Finite posets and the (non-induced) subposet test.
//!
//! `P` is a subposet of `Q` when some injection `φ: P → Q` satisfies
//! `x < y ⇒ φ(x) < φ(y)`. Relations may be gained, never lost, so the
//! butterfly embeds into a 4-chain.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ground::{full_mask, SetFamily};

/// Largest supported poset.
pub const MAX_POSET: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset must have 1..={MAX_POSET} elements, got {0}")]
    BadSize(usize),
    #[error("relation {0}<{1} references an element outside 1..={2}")]
    OutOfRange(usize, usize, usize),
    #[error("relations force a cycle through element {0}")]
    Cycle(usize),
    #[error("cannot parse poset `{0}`: {1}")]
    Parse(String, String),
    #[error("exhaustive embedding oracle supports targets of at most {0} elements")]
    OracleTooLarge(usize),
}

/// A strict partial order on elements `0..p`, stored as transitively closed
/// bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    p: usize,
    /// `above[i]` has bit `j` set iff `i < j`.
    above: Vec<u64>,
    /// `below[i]` has bit `j` set iff `j < i`.
    below: Vec<u64>,
}

impl Poset {
    /// Transitive closure of the 1-based relations `(a, b)` meaning `a < b`.
    pub fn new(p: usize, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        if p == 0 || p > MAX_POSET {
            return Err(PosetError::BadSize(p));
        }
        let mut above = vec![0u64; p];
        for &(a, b) in relations {
            if a == 0 || b == 0 || a > p || b > p {
                return Err(PosetError::OutOfRange(a, b, p));
            }
            above[a - 1] |= 1 << (b - 1);
        }
        // Warshall over bit rows
        for k in 0..p {
            for i in 0..p {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        for (i, row) in above.iter().enumerate() {
            if row >> i & 1 == 1 {
                return Err(PosetError::Cycle(i + 1));
            }
        }
        let mut below = vec![0u64; p];
        for i in 0..p {
            for j in 0..p {
                if above[i] >> j & 1 == 1 {
                    below[j] |= 1 << i;
                }
            }
        }
        Ok(Poset { p, above, below })
    }

    /// The chain `P_k`.
    pub fn chain(k: usize) -> Result<Self, PosetError> {
        let rel: Vec<_> = (1..k).map(|i| (i, i + 1)).collect();
        Poset::new(k, &rel)
    }

    /// `V`: `x < y, z`.
    pub fn v() -> Self {
        Poset::new(3, &[(1, 2), (1, 3)]).unwrap()
    }

    /// `Λ`: `x, y < z`.
    pub fn lambda() -> Self {
        Poset::new(3, &[(1, 3), (2, 3)]).unwrap()
    }

    /// The butterfly `B`: `w, x < y, z`.
    pub fn butterfly() -> Self {
        Poset::new(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.p
    }

    pub fn is_empty(&self) -> bool {
        self.p == 0
    }

    /// `i < j` (0-based).
    #[inline]
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i] >> j & 1 == 1
    }

    pub fn above_row(&self, i: usize) -> u64 {
        self.above[i]
    }

    pub fn below_row(&self, i: usize) -> u64 {
        self.below[i]
    }

    pub fn relation_count(&self) -> usize {
        self.above.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Size of the longest chain.
    pub fn height(&self) -> usize {
        // process elements by number of predecessors; a predecessor always has fewer
        let mut order: Vec<usize> = (0..self.p).collect();
        order.sort_by_key(|&i| self.below[i].count_ones());
        let mut depth = vec![1usize; self.p];
        for &i in &order {
            let mut b = self.below[i];
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                depth[i] = depth[i].max(depth[j] + 1);
                b &= b - 1;
            }
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// True when the order is total.
    pub fn is_chain(&self) -> bool {
        self.relation_count() == self.p * (self.p - 1) / 2
    }

    /// True when the poset is isomorphic to the butterfly.
    pub fn is_butterfly(&self) -> bool {
        if self.p != 4 || self.relation_count() != 4 {
            return false;
        }
        let mins: Vec<usize> = (0..4).filter(|&i| self.below[i] == 0).collect();
        let maxs: Vec<usize> = (0..4).filter(|&i| self.above[i] == 0).collect();
        mins.len() == 2
            && maxs.len() == 2
            && mins.iter().all(|&a| maxs.iter().all(|&b| self.less(a, b)))
    }

    /// The covering relations (1-based), for display.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.p {
            for j in 0..self.p {
                if self.less(i, j) && self.above[i] & self.below[j] == 0 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({self})")
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.p)?;
        for (a, b) in self.covers() {
            write!(f, " {a}<{b}")?;
        }
        Ok(())
    }
}

/// Poset DSL: `"4; 1<3 1<4 2<3 2<4"`, or one of `chain:k`, `V`, `Lambda`,
/// `butterfly`.
impl FromStr for Poset {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = |msg: &str| PosetError::Parse(s.to_string(), msg.to_string());
        match t.to_ascii_lowercase().as_str() {
            "v" => return Ok(Poset::v()),
            "lambda" => return Ok(Poset::lambda()),
            "butterfly" => return Ok(Poset::butterfly()),
            _ => {}
        }
        if let Some(k) = t.strip_prefix("chain:") {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| bad("chain length must be a positive integer"))?;
            return Poset::chain(k);
        }
        let (count, rels) = t
            .split_once(';')
            .ok_or_else(|| bad("expected `<count>; <relations>`"))?;
        let p: usize = count
            .trim()
            .parse()
            .map_err(|_| bad("element count must be a positive integer"))?;
        let mut relations = Vec::new();
        for tok in rels.split_whitespace() {
            let (a, b) = tok
                .split_once('<')
                .ok_or_else(|| bad("relations look like `1<3`"))?;
            let a = a
                .parse()
                .map_err(|_| bad("relation endpoints must be integers"))?;
            let b = b
                .parse()
                .map_err(|_| bad("relation endpoints must be integers"))?;
            relations.push((a, b));
        }
        Poset::new(p, &relations)
    }
}

/// A target order for embedding: `m` elements with strict-below / strict-above
/// rows as multiword bitsets.
#[derive(Clone, Debug)]
pub struct Target {
    m: usize,
    words: usize,
    below: Vec<u64>,
    above: Vec<u64>,
    below_count: Vec<u32>,
    above_count: Vec<u32>,
}

impl Target {
    fn with_relation<F: Fn(usize, usize) -> bool>(m: usize, less: F) -> Self {
        let words = m.div_ceil(64).max(1);
        let mut below = vec![0u64; m * words];
        let mut above = vec![0u64; m * words];
        for i in 0..m {
            for j in 0..m {
                if i != j && less(i, j) {
                    above[i * words + j / 64] |= 1 << (j % 64);
                    below[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        let count = |rows: &[u64], i: usize| {
            rows[i * words..(i + 1) * words]
                .iter()
                .map(|w| w.count_ones())
                .sum()
        };
        let below_count = (0..m).map(|i| count(&below, i)).collect();
        let above_count = (0..m).map(|i| count(&above, i)).collect();
        Target {
            m,
            words,
            below,
            above,
            below_count,
            above_count,
        }
    }

    pub fn from_poset(q: &Poset) -> Self {
        Target::with_relation(q.len(), |i, j| q.less(i, j))
    }

    /// Containment order of the family's members (storage order).
    pub fn from_family(f: &SetFamily) -> Self {
        let m = f.masks();
        Target::with_relation(m.len(), |i, j| m[i] != m[j] && m[i] & m[j] == m[i])
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// An order-preserving injection of `p` into this target, optionally
    /// forcing `p_elem ↦ q_elem`. Returns the images of `0..|p|`.
    pub fn find_embedding(&self, p: &Poset, pinned: Option<(usize, usize)>) -> Option<Vec<usize>> {
        let pn = p.len();
        if pn > self.m {
            return None;
        }
        let need_below: Vec<u32> = (0..pn).map(|i| p.below_row(i).count_ones()).collect();
        let need_above: Vec<u32> = (0..pn).map(|i| p.above_row(i).count_ones()).collect();
        // assign high-degree elements first
        let mut order: Vec<usize> = (0..pn).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(need_below[i] + need_above[i]), i));
        if let Some((pe, qe)) = pinned {
            if pe >= pn || qe >= self.m {
                return None;
            }
            if self.below_count[qe] < need_below[pe] || self.above_count[qe] < need_above[pe] {
                return None;
            }
            order.retain(|&i| i != pe);
            order.insert(0, pe);
        }
        // degree-feasible candidates per poset element
        let w = self.words;
        let mut feasible = vec![0u64; pn * w];
        for (pi, chunk) in feasible.chunks_mut(w).enumerate() {
            for q in 0..self.m {
                if self.below_count[q] >= need_below[pi] && self.above_count[q] >= need_above[pi] {
                    chunk[q / 64] |= 1 << (q % 64);
                }
            }
        }
        let mut image = vec![usize::MAX; pn];
        let mut used = vec![0u64; w];
        if self.search(p, &order, 0, pinned, &feasible, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        p: &Poset,
        order: &[usize],
        t: usize,
        pinned: Option<(usize, usize)>,
        feasible: &[u64],
        image: &mut [usize],
        used: &mut [u64],
    ) -> bool {
        if t == order.len() {
            return true;
        }
        let w = self.words;
        let pe = order[t];
        let mut dom: Vec<u64> = feasible[pe * w..(pe + 1) * w].to_vec();
        if t == 0 {
            if let Some((_, qe)) = pinned {
                dom.iter_mut().for_each(|d| *d = 0);
                dom[qe / 64] = 1 << (qe % 64);
            }
        }
        for (d, u) in dom.iter_mut().zip(used.iter()) {
            *d &= !u;
        }
        for &prev in &order[..t] {
            let q = image[prev];
            if p.less(prev, pe) {
                let row = &self.above[q * w..(q + 1) * w];
                dom.iter_mut().zip(row).for_each(|(d, r)| *d &= r);
            } else if p.less(pe, prev) {
                let row = &self.below[q * w..(q + 1) * w];
                dom.iter_mut().zip(row).for_each(|(d, r)| *d &= r);
            }
        }
        for (wi, mut word) in dom.into_iter().enumerate() {
            while word != 0 {
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                let q = wi * 64 + bit;
                image[pe] = q;
                used[wi] |= 1 << bit;
                if self.search(p, order, t + 1, pinned, feasible, image, used) {
                    return true;
                }
                used[wi] &= !(1 << bit);
            }
        }
        image[pe] = usize::MAX;
        false
    }
}

/// `p` is a (non-induced) subposet of `q`.
pub fn embeds(p: &Poset, q: &Poset) -> bool {
    Target::from_poset(q).find_embedding(p, None).is_some()
}

/// Reference check by enumerating every injection; targets up to 12 elements.
pub fn embeds_exhaustive(p: &Poset, q: &Poset) -> Result<bool, PosetError> {
    const LIMIT: usize = 12;
    if q.len() > LIMIT {
        return Err(PosetError::OracleTooLarge(LIMIT));
    }
    fn rec(p: &Poset, q: &Poset, img: &mut Vec<usize>) -> bool {
        if img.len() == p.len() {
            return (0..p.len())
                .all(|i| (0..p.len()).all(|j| !p.less(i, j) || q.less(img[i], img[j])));
        }
        for c in 0..q.len() {
            if !img.contains(&c) {
                img.push(c);
                if rec(p, q, img) {
                    return true;
                }
                img.pop();
            }
        }
        false
    }
    if p.len() > q.len() {
        return Ok(false);
    }
    Ok(rec(p, q, &mut Vec::new()))
}

/// Threshold above which butterfly containment uses the subset-sum test.
const DENSE_BUTTERFLY_MIN: usize = 256;

/// The containment order of `f` contains `p`.
pub fn family_contains_subposet(f: &SetFamily, p: &Poset) -> bool {
    if p.len() > f.len() {
        return false;
    }
    if p.is_butterfly() && f.len() >= DENSE_BUTTERFLY_MIN {
        return !butterfly_free_dense(f);
    }
    Target::from_family(f).find_embedding(p, None).is_some()
}

/// The union of full levels `lo..=hi` of `2^[n]` contains no copy of `p`.
pub fn levels_p_free(
    n: u8,
    lo: u32,
    hi: u32,
    p: &Poset,
) -> Result<bool, crate::ground::GroundError> {
    let f = SetFamily::levels(n, lo, hi)?;
    Ok(!family_contains_subposet(&f, p))
}

/// Butterfly-freeness through subset and superset counts over `2^[n]`.
///
/// A butterfly exists iff some `Z ⊆ [n]` has two members below it and two
/// above it, with `Z` itself allowed to fill one of the four roles when it is
/// a member (then it must be counted once on each side plus one extra).
pub fn butterfly_free_dense(f: &SetFamily) -> bool {
    let n = f.n() as usize;
    let size = 1usize << n;
    let mut member = vec![false; size];
    let mut down = vec![0u32; size];
    for &m in f.masks() {
        member[m as usize] = true;
        down[m as usize] = 1;
    }
    let mut up = down.clone();
    for bit in 0..n {
        let b = 1usize << bit;
        for z in 0..size {
            if z & b != 0 {
                down[z] += down[z ^ b];
            } else {
                up[z] += up[z | b];
            }
        }
    }
    debug_assert_eq!(full_mask(f.n()) as usize, size - 1);
    for z in 0..size {
        let (d, u) = (down[z], up[z]);
        let hit = if member[z] {
            (d >= 2 && u >= 3) || (d >= 3 && u >= 2)
        } else {
            d >= 2 && u >= 2
        };
        if hit {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycles() {
        let c = Poset::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(c.less(0, 2));
        assert_eq!(c.height(), 3);
        assert!(matches!(
            Poset::new(2, &[(1, 2), (2, 1)]),
            Err(PosetError::Cycle(_))
        ));
        assert!(matches!(
            Poset::new(2, &[(1, 1)]),
            Err(PosetError::Cycle(1))
        ));
        assert!(Poset::new(2, &[(1, 3)]).is_err());
        assert!(Poset::new(0, &[]).is_err());
    }

    #[test]
    fn named_heights() {
        for k in 1..=6 {
            assert_eq!(Poset::chain(k).unwrap().height(), k);
        }
        assert_eq!(Poset::butterfly().height(), 2);
        assert_eq!(Poset::v().height(), 2);
        assert_eq!(Poset::lambda().height(), 2);
        assert!(Poset::butterfly().is_butterfly());
        assert!(!Poset::chain(4).unwrap().is_butterfly());
    }

    #[test]
    fn dsl_round_trip() {
        let b: Poset = "4; 1<3 1<4 2<3 2<4".parse().unwrap();
        assert_eq!(b, Poset::butterfly());
        assert_eq!("butterfly".parse::<Poset>().unwrap(), b);
        assert_eq!("Lambda".parse::<Poset>().unwrap(), Poset::lambda());
        assert_eq!("V".parse::<Poset>().unwrap(), Poset::v());
        assert_eq!(
            "chain:3".parse::<Poset>().unwrap(),
            Poset::chain(3).unwrap()
        );
        assert_eq!(b.to_string().parse::<Poset>().unwrap(), b);
        assert!("4 1<3".parse::<Poset>().is_err());
        assert!("2; 1<2 2<1".parse::<Poset>().is_err());
        assert!("chain:x".parse::<Poset>().is_err());
    }

    #[test]
    fn embedding_examples() {
        let b = Poset::butterfly();
        let p2 = Poset::chain(2).unwrap();
        let p4 = Poset::chain(4).unwrap();
        assert!(embeds(&Poset::v(), &b));
        assert!(embeds(&b, &p4));
        assert!(!embeds(&p4, &b));
        assert!(embeds(&p2, &Poset::lambda()));
        assert!(!embeds(&p2, &Poset::new(3, &[]).unwrap()));
        assert!(embeds_exhaustive(&b, &p4).unwrap());
        assert!(embeds_exhaustive(&Poset::v(), &b).unwrap());
        assert!(embeds_exhaustive(&p2, &Poset::new(13, &[]).unwrap()).is_err());
    }

    #[test]
    fn family_examples() {
        let b = Poset::butterfly();
        // two full middle levels are butterfly-free
        let mid = SetFamily::levels(5, 2, 3).unwrap();
        assert!(!family_contains_subposet(&mid, &b));
        assert!(!family_contains_subposet(
            &SetFamily::level(5, 2).unwrap(),
            &Poset::chain(2).unwrap()
        ));
        assert!(levels_p_free(5, 3, 4, &b).unwrap());
        assert!(!levels_p_free(5, 2, 4, &b).unwrap());
        assert!(levels_p_free(4, 2, 2, &Poset::chain(2).unwrap()).unwrap());
    }

    #[test]
    fn pinned_embedding() {
        // 3-chain {1} < {1,2} < {1,2,3}; pinning the bottom of P_2 to the top set fails
        let f = SetFamily::from_masks(3, [0b001, 0b011, 0b111]).unwrap();
        let t = Target::from_family(&f);
        let p2 = Poset::chain(2).unwrap();
        assert!(t.find_embedding(&p2, Some((0, 2))).is_none());
        assert!(t.find_embedding(&p2, Some((1, 2))).is_some());
    }
}
