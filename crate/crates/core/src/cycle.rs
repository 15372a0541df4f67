//! The cycle method: cyclic permutations, their intervals, the four-way
//! classification of a family's intervals, and the counts built on them.
//!
//! A cyclic permutation is stored with element 1 in the first position, so
//! there are `(n-1)!` of them and reflections are distinct. Intervals are
//! positional: `Interval { start, length }` is the arc of `length`
//! consecutive positions beginning at `start`, and its set depends on the
//! permutation. Lengths run over `1..n`, so `∅` and `[n]` are never
//! intervals.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::binom::{binomial, factorial};
use crate::construct::{sigma_i, ConstructError};
use crate::ground::{GroundError, SetFamily, Subset};
use crate::perm::permutations;
use crate::solver::{solve, SearchProblem, SolveError, SolveOptions};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("not a permutation of 1..=n: {0:?}")]
    BadPermutation(Vec<u8>),
    #[error("sizes ({a}, {f}, {b}) violate 1 <= a < f < b <= n - 1 for n = {n}")]
    BadSizes { a: u32, f: u32, b: u32, n: u32 },
    #[error("n = {n} outside the supported range {lo}..={hi}")]
    OutOfRange { n: u32, lo: u32, hi: u32 },
    #[error("middle set {0} is never an isolated interval")]
    NeverIsolated(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Ground(#[from] GroundError),
}

fn check_range(n: u32, lo: u32, hi: u32) -> Result<(), CycleError> {
    if n < lo || n > hi {
        Err(CycleError::OutOfRange { n, lo, hi })
    } else {
        Ok(())
    }
}

/// An arrangement of `1..=n` on a circle, rotated so that 1 comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicPermutation {
    order: Vec<u8>,
}

impl CyclicPermutation {
    pub fn new(order: Vec<u8>) -> Result<Self, CycleError> {
        let n = order.len();
        let mut seen = vec![false; n + 1];
        for &e in &order {
            if e == 0 || e as usize > n || seen[e as usize] {
                return Err(CycleError::BadPermutation(order));
            }
            seen[e as usize] = true;
        }
        if n == 0 || n > crate::ground::MAX_N as usize {
            return Err(CycleError::BadPermutation(order));
        }
        let at = order.iter().position(|&e| e == 1).unwrap();
        let mut order = order;
        order.rotate_left(at);
        Ok(CyclicPermutation { order })
    }

    /// `1, 2, ..., n` in order.
    pub fn canonical(n: u8) -> Self {
        CyclicPermutation {
            order: (1..=n).collect(),
        }
    }

    /// All `(n-1)!` cyclic permutations, lexicographic in the order after 1.
    pub fn all(n: u8) -> impl Iterator<Item = CyclicPermutation> {
        permutations(n.saturating_sub(1)).map(|rest| {
            let mut order = Vec::with_capacity(rest.len() + 1);
            order.push(1);
            order.extend(rest.into_iter().map(|e| e + 1));
            CyclicPermutation { order }
        })
    }

    pub fn n(&self) -> u8 {
        self.order.len() as u8
    }

    pub fn order(&self) -> &[u8] {
        &self.order
    }

    /// Elements at positions `start, ..., start + len - 1` (1-based, cyclic).
    pub fn interval_mask(&self, start: u8, len: u8) -> u32 {
        let n = self.order.len();
        (0..len as usize).fold(0u32, |m, t| {
            m | 1 << (self.order[(start as usize - 1 + t) % n] - 1)
        })
    }

    /// Every interval of length `1..n`, ordered by start then length.
    pub fn all_intervals(&self) -> Vec<Interval> {
        let n = self.n();
        (1..=n)
            .flat_map(|start| (1..n).map(move |length| Interval { start, length }))
            .collect()
    }
}

/// The arc of `length` positions starting at position `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Interval {
    pub start: u8,
    pub length: u8,
}

impl Interval {
    pub fn mask(self, sigma: &CyclicPermutation) -> u32 {
        sigma.interval_mask(self.start, self.length)
    }

    pub fn subset(self, sigma: &CyclicPermutation) -> Subset {
        Subset::new(sigma.n(), self.mask(sigma)).expect("interval lies in [n]")
    }
}

/// Members of `f` that are intervals along `sigma`.
pub fn intervals_on(sigma: &CyclicPermutation, f: &SetFamily) -> Vec<Interval> {
    sigma
        .all_intervals()
        .into_iter()
        .filter(|iv| f.contains_mask(iv.mask(sigma)))
        .collect()
}

/// Chains `C_i = {A_i^1, ..., A_i^n}` for `i = 1..=n`.
pub fn canonical_chains(n: u8) -> Vec<Vec<Interval>> {
    (1..=n)
        .map(|start| (1..=n).map(|length| Interval { start, length }).collect())
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntervalClassification {
    pub middle: Vec<Interval>,
    pub isolated: Vec<Interval>,
    pub top: Vec<Interval>,
    pub bottom: Vec<Interval>,
}

/// Binomial weights `m_σ, i_σ, t_σ, b_σ` of the four classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassWeights {
    pub middle: u128,
    pub isolated: u128,
    pub top: u128,
    pub bottom: u128,
}

impl IntervalClassification {
    pub fn len(&self) -> usize {
        self.middle.len() + self.isolated.len() + self.top.len() + self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weights(&self, n: u8) -> ClassWeights {
        let w = |v: &[Interval]| {
            v.iter()
                .map(|iv| binomial(n as i64, iv.length as i64))
                .sum()
        };
        ClassWeights {
            middle: w(&self.middle),
            isolated: w(&self.isolated),
            top: w(&self.top),
            bottom: w(&self.bottom),
        }
    }
}

/// Splits the intervals of `f` on `sigma` into middle, isolated, top and
/// bottom ones.
pub fn classify(sigma: &CyclicPermutation, f: &SetFamily) -> IntervalClassification {
    let ivs = intervals_on(sigma, f);
    let masks: Vec<u32> = ivs.iter().map(|iv| iv.mask(sigma)).collect();
    let mut out = IntervalClassification::default();
    for (iv, &m) in ivs.iter().zip(&masks) {
        let below = masks.iter().any(|&o| o != m && o & m == o);
        let above = masks.iter().any(|&o| o != m && o & m == m);
        match (below, above) {
            (true, true) => out.middle.push(*iv),
            (false, false) => out.isolated.push(*iv),
            (true, false) => out.top.push(*iv),
            (false, true) => out.bottom.push(*iv),
        }
    }
    out
}

/// `Σ C(n, |F|)` over the members of `f` that are intervals on `sigma`.
pub fn binomial_weight(sigma: &CyclicPermutation, f: &SetFamily) -> u128 {
    let n = sigma.n() as i64;
    intervals_on(sigma, f)
        .iter()
        .map(|iv| binomial(n, iv.length as i64))
        .sum()
}

/// `Σ_σ binomial_weight(σ, f)` over all cyclic permutations.
pub fn total_cycle_weight(f: &SetFamily) -> u128 {
    let all: Vec<_> = CyclicPermutation::all(f.n()).collect();
    all.par_iter().map(|s| binomial_weight(s, f)).sum()
}

/// `(α, β)` for nested sets of sizes `a < f < b` in `[n]`: the number of
/// cyclic permutations on which all three are intervals, and the number on
/// which the middle one is an interval but neither of the others is.
pub fn alpha_beta(a: u32, f: u32, b: u32, n: u32) -> Result<(u128, u128), CycleError> {
    if !(1 <= a && a < f && f < b && b < n) || n > crate::ground::MAX_N as u32 {
        return Err(CycleError::BadSizes { a, f, b, n });
    }
    let fa = |k: u32| factorial(k) as i128;
    let alpha = fa(a) * fa(f - a + 1) * fa(b - f + 1) * fa(n - b);
    let beta =
        fa(f) * fa(n - f) - fa(a) * fa(f - a + 1) * fa(n - f) - fa(f) * fa(b - f + 1) * fa(n - b)
            + alpha;
    assert!(beta >= 0, "inclusion-exclusion went negative");
    Ok((alpha as u128, beta as u128))
}

/// The guaranteed lower bound `f(n-f)/4 - n/2 + 1` on `β/α`.
pub fn ratio_lower_bound(f: u32, n: u32) -> Rational {
    Rational::new((f * (n - f)) as i128, 4) - Rational::new(n as i128, 2) + 1
}

/// `4 / (n - 5)`, the cap on `c` for `n >= 6`.
pub fn c_upper_bound(n: u32) -> Result<Rational, CycleError> {
    if n <= 5 {
        return Err(CycleError::OutOfRange {
            n,
            lo: 6,
            hi: u32::MAX,
        });
    }
    Ok(Rational::new(4, n as i128 - 5))
}

/// `max α_F / β_F` over the middle sets of `f` and the pairs `A ⊂ F ⊂ B`
/// witnessing them; `None` when `f` has no middle set.
pub fn c_of_family(f: &SetFamily) -> Result<Option<Rational>, CycleError> {
    let n = f.n() as u32;
    let m = f.masks();
    let mut best: Option<Rational> = None;
    for &x in m {
        for &a in m.iter().filter(|&&a| a != x && a & x == a) {
            for &b in m.iter().filter(|&&b| b != x && b & x == x) {
                let (al, be) = alpha_beta(a.count_ones(), x.count_ones(), b.count_ones(), n)?;
                if be == 0 {
                    return Err(CycleError::NeverIsolated(
                        Subset::new(f.n(), x)?.to_string(),
                    ));
                }
                let r = Rational::new(al as i128, be as i128);
                best = Some(best.map_or(r, |c| c.max(r)));
            }
        }
    }
    Ok(best)
}

/// `R = n Σ_I(n, 2)`.
pub fn r_value(n: u8) -> Result<u128, CycleError> {
    Ok(n as u128 * sigma_i(n, 2)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PremiseAudit {
    pub n: u8,
    pub r: u128,
    #[serde(serialize_with = "crate::ineq::ser_ratio")]
    pub c: Rational,
    pub permutations: usize,
    pub violations: usize,
    pub first_violation: Option<Vec<u8>>,
    /// Largest `t_σ + b_σ + (1 + c) i_σ` seen.
    #[serde(serialize_with = "crate::ineq::ser_ratio")]
    pub max_lhs: Rational,
    pub family_size: usize,
    /// `|F| <= R / n`.
    pub size_within_bound: bool,
}

impl PremiseAudit {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks `t_σ + b_σ + (1 + c) i_σ <= R` on every cyclic permutation. `c`
/// defaults to [`c_of_family`], or zero without middle sets.
pub fn premise_audit(f: &SetFamily, c: Option<Rational>) -> Result<PremiseAudit, CycleError> {
    let n = f.n();
    check_range(n as u32, 2, 9)?;
    let r = r_value(n)?;
    let c = match c {
        Some(c) => c,
        None => c_of_family(f)?.unwrap_or_else(|| Rational::from_integer(0)),
    };
    let all: Vec<_> = CyclicPermutation::all(n).collect();
    let lhs: Vec<Rational> = all
        .par_iter()
        .map(|s| {
            let w = classify(s, f).weights(n);
            Rational::from_integer((w.top + w.bottom) as i128)
                + (c + 1) * Rational::from_integer(w.isolated as i128)
        })
        .collect();
    let bound = Rational::from_integer(r as i128);
    let bad: Vec<usize> = (0..lhs.len()).filter(|&i| lhs[i] > bound).collect();
    Ok(PremiseAudit {
        n,
        r,
        c,
        permutations: all.len(),
        violations: bad.len(),
        first_violation: bad.first().map(|&i| all[i].order().to_vec()),
        max_lhs: lhs
            .iter()
            .copied()
            .max()
            .unwrap_or_else(|| Rational::from_integer(0)),
        family_size: f.len(),
        size_within_bound: (f.len() as u128) * (n as u128) <= r,
    })
}

/// Whether `g` is an antichain of `n - 1` intervals made of a nonempty run
/// `A_i^j, ..., A_{i+s}^j` followed by a nonempty run
/// `A_{i+s+1}^{j+1}, ..., A_{i-2}^{j+1}`.
pub fn is_pair_contiguous(sigma: &CyclicPermutation, g: &[Interval]) -> bool {
    let n = sigma.n() as usize;
    if n < 3 || g.len() != n - 1 {
        return false;
    }
    let masks: Vec<u32> = g.iter().map(|iv| iv.mask(sigma)).collect();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            if i != j && a & b == a {
                return false;
            }
        }
    }
    let lo = g.iter().map(|iv| iv.length).min().unwrap();
    if g.iter().any(|iv| iv.length != lo && iv.length != lo + 1)
        || g.iter().all(|iv| iv.length == lo)
    {
        return false;
    }
    // one interval per start except the position just before the low run
    let mut at = vec![0u8; n + 1];
    for iv in g {
        if at[iv.start as usize] != 0 {
            return false;
        }
        at[iv.start as usize] = iv.length;
    }
    let gap = (1..=n).find(|&p| at[p] == 0).unwrap();
    let seq: Vec<u8> = (1..n).map(|t| at[(gap - 1 + t) % n + 1]).collect();
    let switch = seq.iter().position(|&l| l != lo).unwrap_or(seq.len());
    switch > 0 && seq[switch..].iter().all(|&l| l == lo + 1)
}

/// Optimal weighted interval families on the canonical permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalOptimum {
    pub weight: u128,
    pub witnesses: Vec<SetFamily>,
    pub truncated: bool,
    pub nodes_explored: u64,
}

/// Maximum of `Σ C(n, |G|)` over `k`-Sperner (optionally intersecting)
/// families of intervals along the canonical permutation, with all optimal
/// families up to the default witness cap.
pub fn max_weight_interval_family(
    n: u8,
    k: usize,
    intersecting: bool,
) -> Result<IntervalOptimum, CycleError> {
    check_range(n as u32, 2, 9)?;
    let mut p = SearchProblem::intervals(CyclicPermutation::canonical(n))
        .sperner(k)
        .weighted();
    if intersecting {
        p = p.intersecting();
    }
    let r = solve(&p, &SolveOptions::enumerating())?;
    Ok(IntervalOptimum {
        weight: r.optimum,
        witnesses: r.witnesses,
        truncated: r.truncated,
        nodes_explored: r.nodes_explored,
    })
}

/// The members of `f` lying on `sigma` as a family.
pub fn restrict_to_intervals(sigma: &CyclicPermutation, f: &SetFamily) -> SetFamily {
    SetFamily::from_masks(
        f.n(),
        intervals_on(sigma, f).iter().map(|iv| iv.mask(sigma)),
    )
    .expect("subfamily of f")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<Vec<Interval>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n: u8,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Exact checks of the interval-antichain facts on the canonical
/// permutation of `[n]`:
///
/// * the largest antichain of intervals has `n` members, attained only by
///   the full levels;
/// * intersecting antichains of intervals of length at most `n/2` have at
///   most `⌊n/2⌋` members;
/// * every antichain of `n - 1` intervals with two or more lengths is
///   pair-contiguous;
/// * a 2-Sperner interval family with `I` isolated members has at most
///   `2n - I` members, and at most `2n - I - 1` when `1 <= I <= n - 1`.
pub fn check_interval_antichain_lemmas(n: u8) -> Result<LemmaReport, CycleError> {
    check_range(n as u32, 3, 8)?;
    let sigma = CyclicPermutation::canonical(n);
    let mut checks = Vec::new();

    let r = solve(
        &SearchProblem::intervals(sigma.clone()).sperner(1),
        &SolveOptions::enumerating(),
    )?;
    let levels: Vec<SetFamily> = (1..n)
        .map(|len| SetFamily::from_masks(n, (1..=n).map(|s| sigma.interval_mask(s, len))))
        .collect::<Result<_, _>>()?;
    let mut sorted_levels = levels.clone();
    sorted_levels.sort();
    let extra = r.witnesses.iter().find(|w| !sorted_levels.contains(w));
    checks.push(LemmaCheck {
        name: "antichain-max".into(),
        passed: r.optimum == n as u128 && r.witnesses == sorted_levels && !r.truncated,
        detail: format!(
            "maximum {} over {} optimal families; expected {} with the {} full levels",
            r.optimum,
            r.witnesses.len(),
            n,
            n - 1
        ),
        counterexample: extra.map(|w| family_intervals(&sigma, w)),
    });

    let small: Vec<Subset> = sigma
        .all_intervals()
        .into_iter()
        .filter(|iv| 2 * iv.length as usize <= n as usize)
        .map(|iv| iv.subset(&sigma))
        .collect();
    let r = solve(
        &SearchProblem::custom(n, small).intersecting().sperner(1),
        &SolveOptions::default(),
    )?;
    let cap = n as u128 / 2;
    checks.push(LemmaCheck {
        name: "intersecting-short".into(),
        passed: r.optimum <= cap,
        detail: format!("maximum {} against cap {}", r.optimum, cap),
        counterexample: (r.optimum > cap).then(|| family_intervals(&sigma, &r.witnesses[0])),
    });

    let (count, bad) = two_size_antichains(&sigma);
    checks.push(LemmaCheck {
        name: "pair-contiguous".into(),
        passed: bad.is_none(),
        detail: format!(
            "{count} antichains of {} intervals with two or more lengths checked",
            n - 1
        ),
        counterexample: bad,
    });

    let iso = isolated_search(&sigma);
    let nn = 2 * n as usize;
    checks.push(LemmaCheck {
        name: "isolated-2n-minus-i".into(),
        passed: iso.max_all.0 <= nn,
        detail: format!("max |G| + I = {} (bound {nn})", iso.max_all.0),
        counterexample: (iso.max_all.0 > nn).then(|| iso.max_all.1.clone()),
    });
    let (best, ex) = &iso.max_partial;
    checks.push(LemmaCheck {
        name: "isolated-2n-minus-i-minus-1".into(),
        passed: *best < nn,
        detail: format!(
            "max |G| + I with 1 <= I <= n-1 is {best} (bound {})",
            nn - 1
        ),
        counterexample: (*best >= nn).then(|| ex.clone()),
    });

    Ok(LemmaReport { n, checks })
}

fn family_intervals(sigma: &CyclicPermutation, f: &SetFamily) -> Vec<Interval> {
    intervals_on(sigma, f)
}

/// Index `(start - 1) * (n - 1) + length - 1` of every proper interval and
/// strict containment rows.
struct IntervalTable {
    ivs: Vec<Interval>,
    sub: Vec<u64>,
    sup: Vec<u64>,
}

impl IntervalTable {
    fn new(sigma: &CyclicPermutation) -> Self {
        let ivs = sigma.all_intervals();
        let masks: Vec<u32> = ivs.iter().map(|iv| iv.mask(sigma)).collect();
        let m = ivs.len();
        let mut sub = vec![0u64; m];
        let mut sup = vec![0u64; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && masks[j] & masks[i] == masks[j] {
                    sub[i] |= 1 << j;
                    sup[j] |= 1 << i;
                }
            }
        }
        IntervalTable { ivs, sub, sup }
    }

    fn list(&self, set: u64) -> Vec<Interval> {
        (0..self.ivs.len())
            .filter(|&i| set >> i & 1 == 1)
            .map(|i| self.ivs[i])
            .collect()
    }
}

fn two_size_antichains(sigma: &CyclicPermutation) -> (u64, Option<Vec<Interval>>) {
    let t = IntervalTable::new(sigma);
    let want = sigma.n() as u32 - 1;
    let all: u64 = if t.ivs.len() == 64 {
        u64::MAX
    } else {
        (1u64 << t.ivs.len()) - 1
    };
    let mut count = 0u64;
    let mut bad = None;
    fn go(
        t: &IntervalTable,
        sigma: &CyclicPermutation,
        want: u32,
        chosen: u64,
        cand: u64,
        count: &mut u64,
        bad: &mut Option<Vec<Interval>>,
    ) {
        if bad.is_some() {
            return;
        }
        if chosen.count_ones() == want {
            let g = t.list(chosen);
            if g.iter().any(|iv| iv.length != g[0].length) {
                *count += 1;
                if !is_pair_contiguous(sigma, &g) {
                    *bad = Some(g);
                }
            }
            return;
        }
        if chosen.count_ones() + cand.count_ones() < want || cand == 0 {
            return;
        }
        let i = cand.trailing_zeros() as usize;
        let bit = 1u64 << i;
        go(
            t,
            sigma,
            want,
            chosen | bit,
            cand & !bit & !t.sub[i] & !t.sup[i],
            count,
            bad,
        );
        go(t, sigma, want, chosen, cand & !bit, count, bad);
    }
    go(&t, sigma, want, 0, all, &mut count, &mut bad);
    (count, bad)
}

struct IsolatedMax {
    max_all: (usize, Vec<Interval>),
    max_partial: (usize, Vec<Interval>),
}

/// Maximizes `|G| + I` over 2-Sperner interval families chain by chain, once
/// over all families and once over those with `1 <= I <= n - 1`.
fn isolated_search(sigma: &CyclicPermutation) -> IsolatedMax {
    let t = IntervalTable::new(sigma);
    let n = sigma.n() as usize;
    // options per canonical chain: nothing, one interval, or two nested ones
    let mut options: Vec<Vec<u64>> = Vec::new();
    for c in 0..n {
        let idx: Vec<usize> = (0..n - 1).map(|l| c * (n - 1) + l).collect();
        let mut opts = Vec::new();
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                opts.push(1u64 << idx[a] | 1u64 << idx[b]);
            }
        }
        opts.extend(idx.iter().map(|&i| 1u64 << i));
        opts.push(0);
        options.push(opts);
    }
    let run = |partial: bool| {
        let mut best = (0usize, 0u64);
        search_chains(&t, &options, 0, 0, partial, &mut best);
        (best.0, t.list(best.1))
    };
    IsolatedMax {
        max_all: run(false),
        max_partial: run(true),
    }
}

fn isolated_in(t: &IntervalTable, chosen: u64, within: u64) -> usize {
    (0..t.ivs.len())
        .filter(|&i| within >> i & 1 == 1 && (t.sub[i] | t.sup[i]) & chosen == 0)
        .count()
}

fn has_three_chain(t: &IntervalTable, chosen: u64) -> bool {
    (0..t.ivs.len()).any(|i| {
        chosen >> i & 1 == 1 && {
            let below = t.sub[i] & chosen;
            (0..t.ivs.len()).any(|j| below >> j & 1 == 1 && t.sub[j] & chosen != 0)
        }
    })
}

fn search_chains(
    t: &IntervalTable,
    options: &[Vec<u64>],
    c: usize,
    chosen: u64,
    partial: bool,
    best: &mut (usize, u64),
) {
    let n = options.len();
    if c == n {
        let iso = isolated_in(t, chosen, chosen);
        if partial && !(1..n).contains(&iso) {
            return;
        }
        let v = chosen.count_ones() as usize + iso;
        if v > best.0 {
            *best = (v, chosen);
        }
        return;
    }
    let ub = chosen.count_ones() as usize + isolated_in(t, chosen, chosen) + 2 * (n - c);
    if ub <= best.0 {
        return;
    }
    for &o in &options[c] {
        let next = chosen | o;
        if o != 0 && has_three_chain(t, next) {
            continue;
        }
        search_chains(t, options, c + 1, next, partial, best);
    }
}
