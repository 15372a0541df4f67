//! Exact binomial and factorial arithmetic in 128 bits.

use num_integer::Integer;

/// `C(n, k)`, zero when `k > n` or `k < 0`.
pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n!` for `n <= 34` (the largest factorial below 2^128).
pub fn factorial(n: u32) -> u128 {
    assert!(n <= 34, "factorial({n}) overflows u128");
    (1..=n as u128).product()
}

/// Least common multiple of `C(n, 0..=n)`.
pub fn row_lcm(n: u32) -> u128 {
    (0..=n as i64).fold(1u128, |acc, k| acc.lcm(&binomial(n as i64, k)))
}

/// One row of Pascal's triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialTable {
    n: u32,
    row: Vec<u128>,
}

impl BinomialTable {
    pub fn new(n: u32) -> Self {
        let row = (0..=n as i64).map(|k| binomial(n as i64, k)).collect();
        BinomialTable { n, row }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn row(&self) -> &[u128] {
        &self.row
    }

    /// `C(n, k)` with the out-of-range convention of [`binomial`].
    pub fn get(&self, k: i64) -> u128 {
        if k < 0 || k > self.n as i64 {
            0
        } else {
            self.row[k as usize]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_row_sums_and_symmetry() {
        for n in 0..=20u32 {
            let t = BinomialTable::new(n);
            assert_eq!(t.row().iter().sum::<u128>(), 1u128 << n);
            for k in 0..=n as i64 {
                assert_eq!(t.get(k), t.get(n as i64 - k));
            }
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(20), 2_432_902_008_176_640_000);
    }

    #[test]
    fn lcm_of_row_divisible_by_every_entry() {
        for n in 1..=20 {
            let l = row_lcm(n);
            for k in 0..=n as i64 {
                assert_eq!(l % binomial(n as i64, k), 0);
            }
        }
        assert_eq!(row_lcm(4), 12);
    }
}
