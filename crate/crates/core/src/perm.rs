//! Lexicographic permutation enumeration.

/// Advances `v` to its lexicographic successor; returns false (leaving `v`
/// sorted ascending) after the last permutation.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All `n!` permutations of `1..=n` in lexicographic order.
pub fn permutations(n: u8) -> Permutations {
    Permutations {
        current: Some((1..=n).collect()),
    }
}

pub struct Permutations {
    current: Option<Vec<u8>>,
}

impl Iterator for Permutations {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.current = Some(succ);
        }
        Some(cur)
    }
}
