//! Closed-form extremal sizes and the extremal constructions `H0` and `Hx`.

use thiserror::Error;

use crate::binom::binomial;
use crate::ground::{GroundError, SetFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("parameter k = {k} outside {lo}..={hi} for n = {n}")]
    BadK { n: u8, k: u32, lo: u32, hi: u32 },
    #[error("Hx needs an even ground size, got {0}")]
    OddGround(u8),
    #[error("element {x} outside [1, {n}]")]
    BadElement { n: u8, x: u32 },
    #[error(transparent)]
    Ground(#[from] GroundError),
}

fn check_k(n: u8, k: u32, lo: u32, hi: u32) -> Result<(), ConstructError> {
    if k < lo || k > hi {
        Err(ConstructError::BadK { n, k, lo, hi })
    } else {
        Ok(())
    }
}

/// Sum of the `k` largest binomial coefficients `C(n, i)`.
pub fn sigma(n: u8, k: u32) -> Result<u128, ConstructError> {
    check_k(n, k, 1, n as u32 + 1)?;
    let mut row: Vec<u128> = (0..=n as i64).map(|i| binomial(n as i64, i)).collect();
    row.sort_unstable_by(|a, b| b.cmp(a));
    Ok(row.iter().take(k as usize).sum())
}

/// Largest size of an intersecting `k`-Sperner family in `2^[n]`.
///
/// Odd `n`: `Σ_{i=(n+1)/2}^{(n+1)/2+k-1} C(n,i)`. Even `n`:
/// `C(n-1, n/2-1) + Σ_{i=n/2+1}^{n/2+k-1} C(n,i) + C(n-1, n/2+k)`, with
/// binomials past the end of the row read as zero.
pub fn sigma_i(n: u8, k: u32) -> Result<u128, ConstructError> {
    check_k(n, k, 1, n as u32)?;
    let n = n as i64;
    let k = k as i64;
    if n % 2 == 1 {
        let lo = (n + 1) / 2;
        Ok((lo..lo + k).map(|i| binomial(n, i)).sum())
    } else {
        let h = n / 2;
        let mid: u128 = (h + 1..h + k).map(|i| binomial(n, i)).sum();
        Ok(binomial(n - 1, h - 1) + mid + binomial(n - 1, h + k))
    }
}

/// `H0(n, k)`: the full levels `⌊n/2⌋+1 ..= ⌊n/2⌋+k`.
pub fn construct_h0(n: u8, k: u32) -> Result<SetFamily, ConstructError> {
    check_k(n, k, 1, (n as u32).div_ceil(2))?;
    let lo = n as u32 / 2 + 1;
    Ok(SetFamily::levels(n, lo, lo + k - 1)?)
}

/// `Hx(n, k)` for even `n`: the `n/2`-sets containing `x`, the full levels
/// `n/2+1 ..= n/2+k-1`, and the `(n/2+k)`-sets avoiding `x`.
pub fn construct_hx(n: u8, k: u32, x: u32) -> Result<SetFamily, ConstructError> {
    if n % 2 == 1 {
        return Err(ConstructError::OddGround(n));
    }
    check_k(n, k, 1, n as u32 / 2)?;
    if x == 0 || x > n as u32 {
        return Err(ConstructError::BadElement { n, x });
    }
    let h = n as u32 / 2;
    let bit = 1u32 << (x - 1);
    let masks = (0..=crate::ground::full_mask(n)).filter(|&m| {
        let s = m.count_ones();
        (s == h && m & bit != 0) || (s > h && s < h + k) || (s == h + k && m & bit == 0)
    });
    Ok(SetFamily::from_masks(n, masks)?)
}

/// Full levels `⌊n/2⌋+1 ..= ⌊n/2⌋+count`.
pub fn middle_levels(n: u8, count: u32) -> Result<SetFamily, ConstructError> {
    let lo = n as u32 / 2 + 1;
    if count == 0 || lo + count - 1 > n as u32 {
        return Err(ConstructError::BadK {
            n,
            k: count,
            lo: 1,
            hi: n as u32 + 1 - lo,
        });
    }
    Ok(SetFamily::levels(n, lo, lo + count - 1)?)
}
