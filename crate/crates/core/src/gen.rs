//! Seeded random families for sweeps.
//!
//! All generators are greedy over a shuffled candidate list, so the output is
//! maximal within the candidates for the properties each one maintains.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::ground::{full_mask, GroundError, SetFamily};

/// Largest ground size the dense generators accept.
pub const GEN_MAX_N: u8 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("ground size {n} outside 1..={max}")]
    Ground { n: u8, max: u8 },
    #[error("size range {lo}..={hi} invalid for n = {n}")]
    Sizes { n: u8, lo: u32, hi: u32 },
    #[error(transparent)]
    Inner(#[from] GroundError),
}

/// Down- and up-set counts over all of `2^[n]`, updated per insertion.
struct Dense {
    n: u8,
    member: Vec<bool>,
    down: Vec<u16>,
    up: Vec<u16>,
}

impl Dense {
    fn new(n: u8) -> Self {
        let size = 1usize << n;
        Dense {
            n,
            member: vec![false; size],
            down: vec![0; size],
            up: vec![0; size],
        }
    }

    fn full(&self) -> u32 {
        full_mask(self.n)
    }

    fn insert(&mut self, t: u32, delta: i32) {
        let rest = self.full() & !t;
        let mut s = rest;
        loop {
            let z = (t | s) as usize;
            self.down[z] = (self.down[z] as i32 + delta) as u16;
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
        let mut s = t;
        loop {
            self.up[s as usize] = (self.up[s as usize] as i32 + delta) as u16;
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
        self.member[t as usize] = delta > 0;
    }

    fn meets_all(&self, t: u32) -> bool {
        self.down[(self.full() & !t) as usize] == 0
    }

    fn incomparable_to_all(&self, t: u32) -> bool {
        self.down[t as usize] == 0 && self.up[t as usize] == 0
    }

    fn butterfly_at(&self, z: usize) -> bool {
        let (d, u) = (self.down[z], self.up[z]);
        if self.member[z] {
            (d >= 2 && u >= 3) || (d >= 3 && u >= 2)
        } else {
            d >= 2 && u >= 2
        }
    }

    /// Whether the current family contains a butterfly through the sets
    /// comparable to `t`.
    fn butterfly_near(&self, t: u32) -> bool {
        let rest = self.full() & !t;
        let mut s = rest;
        loop {
            if self.butterfly_at((t | s) as usize) {
                return true;
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
        let mut s = t;
        loop {
            if self.butterfly_at(s as usize) {
                return true;
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
        false
    }
}

fn check(n: u8, lo: u32, hi: u32) -> Result<(), GenError> {
    if n == 0 || n > GEN_MAX_N {
        return Err(GenError::Ground { n, max: GEN_MAX_N });
    }
    if lo == 0 || lo > hi || hi > n as u32 {
        return Err(GenError::Sizes { n, lo, hi });
    }
    Ok(())
}

fn shuffled<R: Rng + ?Sized>(n: u8, lo: u32, hi: u32, rng: &mut R) -> Vec<u32> {
    let mut cands: Vec<u32> = (1..=full_mask(n))
        .filter(|m| (lo..=hi).contains(&m.count_ones()))
        .collect();
    cands.shuffle(rng);
    cands
}

/// A maximal intersecting antichain among the sets of size `lo..=hi`.
pub fn random_intersecting_antichain<R: Rng + ?Sized>(
    n: u8,
    lo: u32,
    hi: u32,
    rng: &mut R,
) -> Result<SetFamily, GenError> {
    check(n, lo, hi)?;
    let mut dense = Dense::new(n);
    let mut out = Vec::new();
    for t in shuffled(n, lo, hi, rng) {
        if dense.meets_all(t) && dense.incomparable_to_all(t) {
            dense.insert(t, 1);
            out.push(t);
        }
    }
    Ok(SetFamily::from_masks(n, out)?)
}

/// A maximal intersecting family among the sets of size `lo..=hi`.
pub fn random_intersecting<R: Rng + ?Sized>(
    n: u8,
    lo: u32,
    hi: u32,
    rng: &mut R,
) -> Result<SetFamily, GenError> {
    check(n, lo, hi)?;
    let mut dense = Dense::new(n);
    let mut out = Vec::new();
    for t in shuffled(n, lo, hi, rng) {
        if dense.meets_all(t) {
            dense.insert(t, 1);
            out.push(t);
        }
    }
    Ok(SetFamily::from_masks(n, out)?)
}

/// A maximal intersecting butterfly-free family among the sets of size
/// `lo..=hi`.
pub fn random_intersecting_b_free<R: Rng + ?Sized>(
    n: u8,
    lo: u32,
    hi: u32,
    rng: &mut R,
) -> Result<SetFamily, GenError> {
    check(n, lo, hi)?;
    let mut dense = Dense::new(n);
    let mut out = Vec::new();
    for t in shuffled(n, lo, hi, rng) {
        if !dense.meets_all(t) {
            continue;
        }
        dense.insert(t, 1);
        if dense.butterfly_near(t) {
            dense.insert(t, -1);
        } else {
            out.push(t);
        }
    }
    Ok(SetFamily::from_masks(n, out)?)
}

/// Each nonempty subset of `[n]` independently with probability `p`.
pub fn random_family<R: Rng + ?Sized>(n: u8, p: f64, rng: &mut R) -> Result<SetFamily, GenError> {
    check(n, 1, n as u32)?;
    let masks: Vec<u32> = (1..=full_mask(n)).filter(|_| rng.random_bool(p)).collect();
    Ok(SetFamily::from_masks(n, masks)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{is_antichain, is_intersecting};
    use crate::poset::{family_contains_subposet, Poset};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn antichains_are_maximal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=7u8 {
            let f = random_intersecting_antichain(n, 1, n as u32, &mut rng).unwrap();
            assert!(is_intersecting(&f) && is_antichain(&f));
            for m in 1..=full_mask(n) {
                if f.contains_mask(m) {
                    continue;
                }
                let g = SetFamily::from_masks(n, f.masks().iter().copied().chain([m])).unwrap();
                assert!(!(is_intersecting(&g) && is_antichain(&g)), "n={n} m={m:b}");
            }
        }
    }

    #[test]
    fn b_free_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 4..=7u8 {
            for _ in 0..5 {
                let f = random_intersecting_b_free(n, 2, n as u32 - 2, &mut rng).unwrap();
                assert!(is_intersecting(&f));
                assert!(!family_contains_subposet(&f, &Poset::butterfly()));
                assert!(f.iter().all(|s| (2..=n as u32 - 2).contains(&s.size())));
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_intersecting(6, 1, 6, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = random_intersecting(6, 1, 6, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 32);
        let r = random_family(5, 0.5, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert!(!r.contains_mask(0));
    }

    #[test]
    fn bad_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(random_intersecting(5, 0, 3, &mut rng).is_err());
        assert!(random_intersecting(5, 3, 2, &mut rng).is_err());
        assert!(random_intersecting(17, 1, 3, &mut rng).is_err());
    }
}
