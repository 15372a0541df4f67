//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the closed forms or the search code it is used to check.
#![allow(dead_code)]

/// Row `n` of Pascal's triangle by repeated addition.
pub fn pascal(n: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

pub fn choose(n: usize, k: i64) -> u128 {
    if k < 0 || k as usize > n {
        0
    } else {
        pascal(n)[k as usize]
    }
}

pub fn fact(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Sum of the `k` largest entries of row `n`.
pub fn sigma_oracle(n: usize, k: usize) -> u128 {
    let mut row = pascal(n);
    row.sort_unstable();
    row.iter().rev().take(k).sum()
}

pub fn sigma_i_oracle(n: usize, k: usize) -> u128 {
    let row = pascal(n);
    let at = |i: usize| row.get(i).copied().unwrap_or(0);
    if n % 2 == 1 {
        (0..k).map(|j| at((n + 1) / 2 + j)).sum()
    } else {
        let h = n / 2;
        let mid: u128 = (1..k).map(|j| at(h + j)).sum();
        choose(n - 1, h as i64 - 1) + mid + choose(n - 1, (h + k) as i64)
    }
}

/// Circular orders of `1..=n` with 1 first.
pub fn cyclic_orders(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            let e = left.remove(i);
            cur.push(e);
            rec(cur, left, out);
            cur.pop();
            left.insert(i, e);
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![1], &mut (2..=n).collect(), &mut out);
    out
}

/// Whether the set `mask` occupies one arc of `order`.
pub fn is_arc(order: &[usize], mask: u32) -> bool {
    let n = order.len();
    let inside = |i: usize| mask >> (order[i % n] - 1) & 1 == 1;
    let k = mask.count_ones() as usize;
    if k == 0 || k == n {
        return false;
    }
    (0..n).filter(|&i| inside(i) && !inside(i + 1)).count() == 1
}

/// `(α, β)` for `[a] ⊂ [f] ⊂ [b]` by counting circular orders.
pub fn alpha_beta_by_count(a: usize, f: usize, b: usize, n: usize) -> (u128, u128) {
    let (ma, mf, mb) = ((1u32 << a) - 1, (1u32 << f) - 1, (1u32 << b) - 1);
    let mut alpha = 0;
    let mut beta = 0;
    for o in cyclic_orders(n) {
        if !is_arc(&o, mf) {
            continue;
        }
        let (ia, ib) = (is_arc(&o, ma), is_arc(&o, mb));
        if ia && ib {
            alpha += 1;
        }
        if !ia && !ib {
            beta += 1;
        }
    }
    (alpha, beta)
}

pub fn subset_of(a: u32, b: u32) -> bool {
    a & !b == 0
}

pub fn pairwise_intersecting(f: &[u32]) -> bool {
    f.iter().all(|&a| f.iter().all(|&b| a & b != 0))
}

/// Longest strictly nested chain by dynamic programming over sizes.
pub fn longest_chain_len(f: &[u32]) -> usize {
    let mut sorted = f.to_vec();
    sorted.sort_by_key(|m| m.count_ones());
    let mut best = vec![1usize; sorted.len()];
    for i in 0..sorted.len() {
        for j in 0..i {
            if sorted[j] != sorted[i] && subset_of(sorted[j], sorted[i]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Whether four distinct members form a butterfly, by trying all 4-tuples.
pub fn has_butterfly(f: &[u32]) -> bool {
    let lt = |a: u32, b: u32| a != b && subset_of(a, b);
    let m = f.len();
    for w in 0..m {
        for x in w + 1..m {
            for y in 0..m {
                if y == w || y == x || !lt(f[w], f[y]) || !lt(f[x], f[y]) {
                    continue;
                }
                for z in y + 1..m {
                    if z != w && z != x && lt(f[w], f[z]) && lt(f[x], f[z]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Every subfamily of `universe` (at most 24 sets), as mask lists.
pub fn all_subfamilies(universe: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    assert!(universe.len() <= 24);
    (0u32..1 << universe.len()).map(move |s| {
        (0..universe.len())
            .filter(|i| s >> i & 1 == 1)
            .map(|i| universe[i])
            .collect()
    })
}

/// The largest score over subfamilies satisfying `ok`, and all maximizers.
pub fn brute_max<S, P>(universe: &[u32], score: S, ok: P) -> (u128, Vec<Vec<u32>>)
where
    S: Fn(&[u32]) -> u128,
    P: Fn(&[u32]) -> bool,
{
    let mut best = 0u128;
    let mut arg = Vec::new();
    for f in all_subfamilies(universe) {
        if !ok(&f) {
            continue;
        }
        let s = score(&f);
        if s > best {
            best = s;
            arg.clear();
        }
        if s == best {
            let mut g = f.clone();
            g.sort_unstable();
            arg.push(g);
        }
    }
    arg.sort();
    (best, arg)
}
