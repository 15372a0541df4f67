//! Exact maximization over families drawn from a finite universe of subsets.
//!
//! [`solve`] is a depth-first branch and bound over at most 128 universe
//! slots held in `u128` bitsets. Complement pairs share adjacent slots so the
//! intersecting class caps reduce to a popcount. The upper bound is the
//! smaller of a fractional knapsack over levels (LYM or Greene–Katona–Kleitman
//! costs on the power set, unit costs on intervals) and, when a chain
//! partition of the universe is known, a per-chain top-`k` sum.
//!
//! [`solve_naive`] is the reference: plain include/exclude enumeration that
//! only calls the predicates of [`crate::ground`] and [`crate::poset`].

use rayon::prelude::*;
use thiserror::Error;

use crate::binom::{binomial, row_lcm};
use crate::cycle::CyclicPermutation;
use crate::ground::{
    chain_depths, full_mask, is_intersecting, is_k_sperner, GroundError, SetFamily, Subset,
};
use crate::poset::{family_contains_subposet, Poset};

/// Largest universe handled by [`solve`].
pub const MAX_SLOTS: usize = 128;
/// Largest universe handled by [`solve_naive`].
pub const NAIVE_MAX: usize = 32;
pub const DEFAULT_WITNESS_CAP: usize = 10_000;

const KMAX: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("universe of {size} sets exceeds the limit of {max}")]
    UniverseTooLarge { size: usize, max: usize },
    #[error("sperner parameter must be at least 1")]
    BadSperner,
    #[error("universe sets disagree on the ground size")]
    MixedGround,
    #[error("symmetry reduction cannot be combined with witness enumeration")]
    SymmetryWithEnumeration,
    #[error("search stopped at the node budget before proving optimality")]
    Incomplete,
    #[error("witness failed re-verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Ground(#[from] GroundError),
}

/// The candidate sets a family may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Universe {
    /// Nonempty subsets of `[n]`. With `include_full: None`, `[n]` is dropped
    /// exactly when a poset is forbidden.
    PowerSet {
        n: u8,
        include_full: Option<bool>,
    },
    /// Intervals of lengths `1..n` along a cyclic permutation.
    Intervals(CyclicPermutation),
    Custom {
        n: u8,
        sets: Vec<Subset>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    pub intersecting: bool,
    pub sperner_k: Option<usize>,
    pub forbidden: Option<Poset>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Objective {
    #[default]
    Cardinality,
    /// `Σ C(n, |F|)` over the members.
    BinomialWeight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchProblem {
    pub universe: Universe,
    pub constraints: Constraints,
    pub objective: Objective,
}

impl SearchProblem {
    pub fn new(universe: Universe) -> Self {
        SearchProblem {
            universe,
            constraints: Constraints::default(),
            objective: Objective::Cardinality,
        }
    }

    pub fn power_set(n: u8) -> Self {
        Self::new(Universe::PowerSet {
            n,
            include_full: None,
        })
    }

    pub fn intervals(sigma: CyclicPermutation) -> Self {
        Self::new(Universe::Intervals(sigma))
    }

    pub fn custom(n: u8, sets: Vec<Subset>) -> Self {
        Self::new(Universe::Custom { n, sets })
    }

    pub fn intersecting(mut self) -> Self {
        self.constraints.intersecting = true;
        self
    }

    pub fn sperner(mut self, k: usize) -> Self {
        self.constraints.sperner_k = Some(k);
        self
    }

    pub fn forbid(mut self, p: Poset) -> Self {
        self.constraints.forbidden = Some(p);
        self
    }

    pub fn weighted(mut self) -> Self {
        self.objective = Objective::BinomialWeight;
        self
    }

    pub fn n(&self) -> u8 {
        match &self.universe {
            Universe::PowerSet { n, .. } | Universe::Custom { n, .. } => *n,
            Universe::Intervals(s) => s.n(),
        }
    }

    /// The universe in ascending mask order, with `∅` removed for
    /// intersecting problems.
    pub fn universe_sets(&self) -> Result<Vec<Subset>, SolveError> {
        let n = self.n();
        let mut sets: Vec<Subset> = match &self.universe {
            Universe::PowerSet { n, include_full } => {
                let keep_full = include_full.unwrap_or(self.constraints.forbidden.is_none());
                let full = full_mask(*n);
                let mut v = Vec::new();
                for m in 1..=full {
                    if m != full || keep_full {
                        v.push(Subset::new(*n, m)?);
                    }
                }
                v
            }
            Universe::Intervals(sigma) => sigma
                .all_intervals()
                .iter()
                .map(|iv| iv.subset(sigma))
                .collect(),
            Universe::Custom { sets, .. } => {
                if sets.iter().any(|s| s.n() != n) {
                    return Err(SolveError::MixedGround);
                }
                sets.clone()
            }
        };
        sets.sort_unstable();
        sets.dedup();
        if self.constraints.intersecting {
            sets.retain(|s| s.size() > 0);
        }
        Ok(sets)
    }

    /// Longest chain a feasible family may contain, if bounded.
    pub fn chain_cap(&self) -> Option<usize> {
        let from_poset = self.constraints.forbidden.as_ref().map(|p| p.len() - 1);
        match (self.constraints.sperner_k, from_poset) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn weight_of(&self, s: Subset) -> u128 {
        match self.objective {
            Objective::Cardinality => 1,
            Objective::BinomialWeight => binomial(s.n() as i64, s.size() as i64),
        }
    }

    pub fn value_of(&self, f: &SetFamily) -> u128 {
        f.iter().map(|s| self.weight_of(s)).sum()
    }

    /// Checks every constraint with the ground and poset predicates.
    pub fn is_feasible(&self, f: &SetFamily) -> bool {
        let c = &self.constraints;
        (!c.intersecting || is_intersecting(f))
            && c.sperner_k.is_none_or(|k| is_k_sperner(f, k))
            && c.forbidden
                .as_ref()
                .is_none_or(|p| !family_contains_subposet(f, p))
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Collect every optimal family instead of one.
    pub enumerate: bool,
    pub witness_cap: usize,
    /// Node limit; hitting it clears `proof_of_optimality`.
    pub node_budget: Option<u64>,
    pub threads: Option<usize>,
    /// Only search families with a member containing element 1.
    pub symmetry: bool,
    /// Depth of the deterministic split into parallel subtrees.
    pub split_depth: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            enumerate: false,
            witness_cap: DEFAULT_WITNESS_CAP,
            node_budget: None,
            threads: None,
            symmetry: false,
            split_depth: 8,
        }
    }
}

impl SolveOptions {
    pub fn enumerating() -> Self {
        SolveOptions {
            enumerate: true,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub optimum: u128,
    /// Optimal families in ascending order; one unless enumerating.
    pub witnesses: Vec<SetFamily>,
    pub truncated: bool,
    pub nodes_explored: u64,
    pub proof_of_optimality: bool,
    pub universe_size: usize,
}

#[derive(Clone)]
struct Class {
    /// Levels of the class, cheapest first.
    levels: Vec<usize>,
    /// Even slot of every complement pair in the class.
    pair_slots: u128,
    slots: u128,
}

struct Compiled {
    n: u8,
    mask: Vec<u32>,
    weight: Vec<u128>,
    cost: Vec<u128>,
    compat: Vec<u128>,
    sub: Vec<u128>,
    sup: Vec<u128>,
    /// Chain cap tracked incrementally (only when above one; a cap of one is
    /// folded into `compat`).
    track_k: Option<usize>,
    chain_cap: Option<usize>,
    poset: Option<PosetPlan>,
    level_slots: Vec<u128>,
    level_value: Vec<u128>,
    level_cost: Vec<u128>,
    ratio_order: Vec<usize>,
    budget: Option<u128>,
    classes: Vec<Class>,
    chains: Vec<Vec<usize>>,
    chain_masks: Vec<u128>,
    contains_one: u128,
    root_cand: u128,
    symmetry: bool,
}

struct PosetPlan {
    p: Poset,
    need_below: Vec<u32>,
    need_above: Vec<u32>,
    /// Assignment order starting from each pinned element.
    orders: Vec<Vec<usize>>,
}

#[derive(Clone, Copy)]
struct Node {
    chosen: u128,
    cand: u128,
    value: u128,
    cost: u128,
    down: [u128; KMAX],
    up: [u128; KMAX],
}

#[inline]
fn bits(mut x: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

const EVEN: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;

impl Compiled {
    fn new(problem: &SearchProblem, sets: &[Subset], symmetry: bool) -> Result<Self, SolveError> {
        let n = problem.n();
        let full = full_mask(n);
        // complement pairs, heaviest first, larger member first
        let index: std::collections::HashMap<u32, usize> = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.mask(), i))
            .collect();
        let mut seen = vec![false; sets.len()];
        let mut pairs: Vec<(usize, Option<usize>)> = Vec::new();
        for (i, s) in sets.iter().enumerate() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            let partner = index.get(&(full & !s.mask())).copied().filter(|&j| j != i);
            if let Some(j) = partner {
                seen[j] = true;
            }
            let (a, b) = match partner {
                Some(j) if sets[j].size() > s.size() => (j, Some(i)),
                _ => (i, partner),
            };
            pairs.push((a, b));
        }
        let w = |i: usize| binomial(n as i64, sets[i].size() as i64);
        pairs.sort_by(|x, y| {
            w(y.0)
                .cmp(&w(x.0))
                .then(sets[x.0].mask().cmp(&sets[y.0].mask()))
        });
        let slots = pairs.len() * 2;
        if slots > MAX_SLOTS {
            return Err(SolveError::UniverseTooLarge {
                size: sets.len(),
                max: MAX_SLOTS,
            });
        }
        let mut mask = vec![0u32; slots];
        let mut present: u128 = 0;
        for (p, &(a, b)) in pairs.iter().enumerate() {
            mask[2 * p] = sets[a].mask();
            present |= 1 << (2 * p);
            if let Some(b) = b {
                mask[2 * p + 1] = sets[b].mask();
                present |= 1 << (2 * p + 1);
            }
        }
        let live: Vec<usize> = bits(present).collect();
        let size = |i: usize| mask[i].count_ones() as usize;
        let chain_cap = problem.chain_cap();
        let c = &problem.constraints;
        let antichain = chain_cap == Some(1);

        let mut weight = vec![0u128; slots];
        let mut compat = vec![0u128; slots];
        let mut sub = vec![0u128; slots];
        let mut sup = vec![0u128; slots];
        let mut contains_one = 0u128;
        for &i in &live {
            weight[i] = problem.weight_of(Subset::new(n, mask[i])?);
            if mask[i] & 1 == 1 {
                contains_one |= 1 << i;
            }
            for &j in &live {
                if i == j {
                    continue;
                }
                let (a, b) = (mask[i], mask[j]);
                let below = a & b == b;
                let above = a & b == a;
                if below {
                    sub[i] |= 1 << j;
                }
                if above {
                    sup[i] |= 1 << j;
                }
                let clash = (c.intersecting && a & b == 0) || (antichain && (below || above));
                if !clash {
                    compat[i] |= 1 << j;
                }
            }
        }

        let mut level_slots = vec![0u128; n as usize + 1];
        for &i in &live {
            level_slots[size(i)] |= 1 << i;
        }
        let level_value: Vec<u128> = (0..=n as i64)
            .map(|r| match problem.objective {
                Objective::Cardinality => 1,
                Objective::BinomialWeight => binomial(n as i64, r),
            })
            .collect();

        let (level_cost, budget) = match &problem.universe {
            Universe::PowerSet { .. } => {
                let l = row_lcm(n as u32);
                let cost = (0..=n as i64)
                    .map(|r| {
                        let d = if c.intersecting && 2 * r <= n as i64 {
                            binomial(n as i64, r - 1)
                        } else {
                            binomial(n as i64, r)
                        };
                        if d == 0 {
                            0
                        } else {
                            l / d
                        }
                    })
                    .collect();
                (cost, chain_cap.map(|k| k as u128 * l))
            }
            Universe::Intervals(_) => (
                vec![1; n as usize + 1],
                chain_cap.map(|k| k as u128 * n as u128),
            ),
            Universe::Custom { .. } => (vec![1; n as usize + 1], None),
        };
        let mut cost = vec![0u128; slots];
        for &i in &live {
            cost[i] = level_cost[size(i)];
        }
        let mut ratio_order: Vec<usize> =
            (0..=n as usize).filter(|&r| level_slots[r] != 0).collect();
        let zero_cost = ratio_order.iter().any(|&r| level_cost[r] == 0);
        let budget = if zero_cost { None } else { budget };
        ratio_order.sort_by(|&a, &b| {
            // value/cost descending
            (level_value[b] * level_cost[a])
                .cmp(&(level_value[a] * level_cost[b]))
                .then(a.cmp(&b))
        });

        let mut classes = Vec::new();
        if c.intersecting {
            for r in 0..=n as usize / 2 {
                let mut levels = vec![r];
                if n as usize - r != r {
                    levels.push(n as usize - r);
                }
                levels.sort_by_key(|&lv| (level_cost[lv], lv));
                let slots_mask = levels.iter().fold(0u128, |acc, &lv| acc | level_slots[lv]);
                let pair_slots = (slots_mask | slots_mask >> 1) & EVEN;
                if slots_mask != 0 {
                    classes.push(Class {
                        levels,
                        pair_slots,
                        slots: slots_mask,
                    });
                }
            }
        }

        let chains: Vec<Vec<usize>> = if chain_cap.is_some() {
            match &problem.universe {
                Universe::PowerSet { .. } => Vec::new(),
                Universe::Intervals(sigma) => {
                    let slot_of: std::collections::HashMap<u32, usize> =
                        live.iter().map(|&i| (mask[i], i)).collect();
                    (1..=n)
                        .map(|start| {
                            (1..n)
                                .filter_map(|len| {
                                    slot_of.get(&sigma.interval_mask(start, len)).copied()
                                })
                                .collect()
                        })
                        .collect()
                }
                Universe::Custom { .. } => greedy_chain_cover(&live, &mask),
            }
        } else {
            Vec::new()
        };
        let chains: Vec<Vec<usize>> = chains
            .into_iter()
            .map(|mut ch| {
                ch.sort_by(|&a, &b| weight[b].cmp(&weight[a]).then(a.cmp(&b)));
                ch
            })
            .collect();
        let chain_masks = chains
            .iter()
            .map(|ch| ch.iter().fold(0u128, |acc, &i| acc | 1 << i))
            .collect();

        let poset = c.forbidden.as_ref().filter(|p| !p.is_chain()).map(|p| {
            let pn = p.len();
            let need_below: Vec<u32> = (0..pn).map(|i| p.below_row(i).count_ones()).collect();
            let need_above: Vec<u32> = (0..pn).map(|i| p.above_row(i).count_ones()).collect();
            let orders = (0..pn)
                .map(|e0| {
                    let mut order = vec![e0];
                    while order.len() < pn {
                        let next = (0..pn)
                            .filter(|e| !order.contains(e))
                            .max_by_key(|&e| {
                                let linked = order
                                    .iter()
                                    .filter(|&&o| p.less(o, e) || p.less(e, o))
                                    .count();
                                (linked, need_below[e] + need_above[e], std::cmp::Reverse(e))
                            })
                            .unwrap();
                        order.push(next);
                    }
                    order
                })
                .collect();
            PosetPlan {
                p: p.clone(),
                need_below,
                need_above,
                orders,
            }
        });

        let track_k = chain_cap.filter(|&k| k > 1 && k < KMAX - 1);
        let root_cand = if chain_cap == Some(0) { 0 } else { present };
        Ok(Compiled {
            n,
            mask,
            weight,
            cost,
            compat,
            sub,
            sup,
            track_k,
            chain_cap,
            poset,
            level_slots,
            level_value,
            level_cost,
            ratio_order,
            budget,
            classes,
            chains,
            chain_masks,
            contains_one,
            root_cand,
            symmetry,
        })
    }

    fn root(&self) -> Node {
        Node {
            chosen: 0,
            cand: self.root_cand,
            value: 0,
            cost: 0,
            down: [0; KMAX],
            up: [0; KMAX],
        }
    }

    fn family(&self, chosen: u128) -> SetFamily {
        SetFamily::from_masks(self.n, bits(chosen).map(|i| self.mask[i]))
            .expect("slot masks lie in [n]")
    }

    fn bound(&self, node: &Node) -> u128 {
        let knap = self.knapsack_bound(node);
        let chain = self.chain_bound(node);
        node.value + chain.map_or(knap, |c| c.min(knap))
    }

    fn knapsack_bound(&self, node: &Node) -> u128 {
        let levels = self.n as usize + 1;
        let mut cap = [0u128; 21];
        for r in 0..levels {
            cap[r] = (node.cand & self.level_slots[r]).count_ones() as u128;
        }
        if !self.classes.is_empty() {
            let x = node.cand | node.chosen;
            let alive_pairs = (x | x >> 1) & EVEN;
            for class in &self.classes {
                let alive = (alive_pairs & class.pair_slots).count_ones() as u128;
                let used = (node.chosen & class.slots).count_ones() as u128;
                let mut room = alive.saturating_sub(used);
                for &lv in &class.levels {
                    let avail = cap[lv];
                    cap[lv] = avail.min(room);
                    room = room.saturating_sub(avail);
                }
            }
        }
        let mut total = 0u128;
        match self.budget {
            None => {
                for &r in &self.ratio_order {
                    total += cap[r] * self.level_value[r];
                }
            }
            Some(b) => {
                let mut rem = b.saturating_sub(node.cost);
                for &r in &self.ratio_order {
                    let (v, c) = (self.level_value[r], self.level_cost[r]);
                    if cap[r] == 0 {
                        continue;
                    }
                    if c * cap[r] <= rem {
                        total += v * cap[r];
                        rem -= c * cap[r];
                    } else {
                        total += v * rem / c;
                        break;
                    }
                }
            }
        }
        total
    }

    fn chain_bound(&self, node: &Node) -> Option<u128> {
        let k = self.chain_cap? as u32;
        if self.chains.is_empty() {
            return None;
        }
        let mut total = 0u128;
        for (ch, &m) in self.chains.iter().zip(&self.chain_masks) {
            let mut room = k.saturating_sub((node.chosen & m).count_ones());
            if room == 0 || node.cand & m == 0 {
                continue;
            }
            for &i in ch {
                if node.cand >> i & 1 == 1 {
                    total += self.weight[i];
                    room -= 1;
                    if room == 0 {
                        break;
                    }
                }
            }
        }
        Some(total)
    }

    fn include(&self, node: &Node, i: usize) -> Node {
        let bit = 1u128 << i;
        let mut child = *node;
        child.chosen |= bit;
        child.cand &= self.compat[i] & !bit;
        child.value += self.weight[i];
        child.cost += self.cost[i];
        if let Some(k) = self.track_k {
            self.depths(&mut child, k);
            let mut keep = 0u128;
            for t in bits(child.cand) {
                let d = (1..=k)
                    .rev()
                    .find(|&j| self.sub[t] & child.down[j] != 0)
                    .unwrap_or(0);
                let u = (1..=k)
                    .rev()
                    .find(|&j| self.sup[t] & child.up[j] != 0)
                    .unwrap_or(0);
                if d + u < k {
                    keep |= 1 << t;
                }
            }
            child.cand = keep;
        }
        if let Some(plan) = &self.poset {
            if (child.chosen.count_ones() as usize) + 1 >= plan.p.len() {
                let mut keep = 0u128;
                for t in bits(child.cand) {
                    if !self.creates_poset(plan, child.chosen, t) {
                        keep |= 1 << t;
                    }
                }
                child.cand = keep;
            }
        }
        child
    }

    /// Longest chains of chosen sets ending (`down`) and starting (`up`) at
    /// each chosen set, bucketed by length.
    fn depths(&self, node: &mut Node, k: usize) {
        node.down = [0; KMAX];
        node.up = [0; KMAX];
        let levels = self.n as usize + 1;
        for r in 0..levels {
            for s in bits(node.chosen & self.level_slots[r]) {
                let d = (1..=k)
                    .rev()
                    .find(|&j| self.sub[s] & node.down[j] != 0)
                    .unwrap_or(0)
                    + 1;
                node.down[d.min(KMAX - 1)] |= 1 << s;
            }
        }
        for r in (0..levels).rev() {
            for s in bits(node.chosen & self.level_slots[r]) {
                let u = (1..=k)
                    .rev()
                    .find(|&j| self.sup[s] & node.up[j] != 0)
                    .unwrap_or(0)
                    + 1;
                node.up[u.min(KMAX - 1)] |= 1 << s;
            }
        }
    }

    /// Whether `pool ∪ {t}` contains the poset through `t`.
    fn creates_poset(&self, plan: &PosetPlan, pool: u128, t: usize) -> bool {
        let all = pool | 1 << t;
        let below_t = (self.sub[t] & pool).count_ones();
        let above_t = (self.sup[t] & pool).count_ones();
        let mut img = [usize::MAX; 64];
        for (e0, order) in plan.orders.iter().enumerate() {
            if plan.need_below[e0] > below_t || plan.need_above[e0] > above_t {
                continue;
            }
            img[e0] = t;
            if self.extend(plan, order, 1, all, 1 << t, &mut img) {
                return true;
            }
            img[e0] = usize::MAX;
        }
        false
    }

    fn extend(
        &self,
        plan: &PosetPlan,
        order: &[usize],
        step: usize,
        all: u128,
        used: u128,
        img: &mut [usize; 64],
    ) -> bool {
        if step == order.len() {
            return true;
        }
        let e = order[step];
        let mut dom = all & !used;
        for &prev in &order[..step] {
            let q = img[prev];
            if plan.p.less(prev, e) {
                dom &= self.sup[q];
            } else if plan.p.less(e, prev) {
                dom &= self.sub[q];
            }
        }
        for q in bits(dom) {
            if (self.sub[q] & all).count_ones() < plan.need_below[e]
                || (self.sup[q] & all).count_ones() < plan.need_above[e]
            {
                continue;
            }
            img[e] = q;
            if self.extend(plan, order, step + 1, all, used | 1 << q, img) {
                return true;
            }
        }
        img[e] = usize::MAX;
        false
    }

    fn greedy(&self) -> Node {
        let mut node = self.root();
        if self.symmetry {
            if let Some(i) = bits(node.cand & self.contains_one).next() {
                node = self.include(&node, i);
            }
        }
        while node.cand != 0 {
            let i = node.cand.trailing_zeros() as usize;
            node = self.include(&node, i);
        }
        node
    }
}

/// Chains covering `live`, built by attaching each set (in size order) to a
/// chain whose top it strictly contains.
fn greedy_chain_cover(live: &[usize], mask: &[u32]) -> Vec<Vec<usize>> {
    let mut order = live.to_vec();
    order.sort_by_key(|&i| (mask[i].count_ones(), mask[i]));
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for i in order {
        let m = mask[i];
        let slot = chains.iter_mut().find(|ch| {
            let top = mask[*ch.last().unwrap()];
            top != m && top & m == top
        });
        match slot {
            Some(ch) => ch.push(i),
            None => chains.push(vec![i]),
        }
    }
    chains
}

struct Ctx<'a> {
    c: &'a Compiled,
    enumerate: bool,
    cap: usize,
    best: u128,
    witnesses: Vec<u128>,
    improved: bool,
    truncated: bool,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Ctx<'_> {
    fn dfs(&mut self, node: Node) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if self.c.symmetry && (node.chosen | node.cand) & self.c.contains_one == 0 {
            return;
        }
        if node.cand == 0 {
            self.record(node);
            return;
        }
        let ub = self.c.bound(&node);
        if ub < self.best || (!self.enumerate && ub == self.best) {
            return;
        }
        let i = node.cand.trailing_zeros() as usize;
        let inc = self.c.include(&node, i);
        self.dfs(inc);
        let mut exc = node;
        exc.cand &= !(1u128 << i);
        self.dfs(exc);
    }

    fn record(&mut self, node: Node) {
        if node.value > self.best {
            self.best = node.value;
            self.improved = true;
            self.witnesses.clear();
            self.witnesses.push(node.chosen);
            self.truncated = false;
        } else if node.value == self.best && self.enumerate {
            if self.witnesses.len() < self.cap {
                self.witnesses.push(node.chosen);
                self.improved = true;
            } else {
                self.truncated = true;
            }
        }
    }
}

/// Splits the tree into subtrees at `depth` decisions, pruning against `best`.
fn frontier(
    c: &Compiled,
    node: Node,
    depth: usize,
    best: u128,
    enumerate: bool,
    out: &mut Vec<Node>,
    nodes: &mut u64,
) {
    *nodes += 1;
    let ub = c.bound(&node);
    if node.cand != 0 && (ub < best || (!enumerate && ub == best)) {
        return;
    }
    if c.symmetry && (node.chosen | node.cand) & c.contains_one == 0 {
        return;
    }
    if depth == 0 || node.cand == 0 {
        out.push(node);
        return;
    }
    let i = node.cand.trailing_zeros() as usize;
    frontier(
        c,
        c.include(&node, i),
        depth - 1,
        best,
        enumerate,
        out,
        nodes,
    );
    let mut exc = node;
    exc.cand &= !(1u128 << i);
    frontier(c, exc, depth - 1, best, enumerate, out, nodes);
}

/// Exact optimum by branch and bound.
pub fn solve(problem: &SearchProblem, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    if problem.constraints.sperner_k == Some(0) {
        return Err(SolveError::BadSperner);
    }
    if opts.symmetry && opts.enumerate {
        return Err(SolveError::SymmetryWithEnumeration);
    }
    let sets = problem.universe_sets()?;
    let c = Compiled::new(problem, &sets, opts.symmetry)?;
    let run = || search(&c, opts);
    let (best, chosen, truncated, nodes, complete) = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    let mut witnesses: Vec<SetFamily> = chosen.into_iter().map(|m| c.family(m)).collect();
    witnesses.sort();
    witnesses.dedup();
    for w in &witnesses {
        if !problem.is_feasible(w) {
            return Err(SolveError::Verification(format!(
                "{w:?} violates a constraint"
            )));
        }
        if problem.value_of(w) != best {
            return Err(SolveError::Verification(format!(
                "{w:?} does not attain {best}"
            )));
        }
    }
    Ok(SolveResult {
        optimum: best,
        witnesses,
        truncated,
        nodes_explored: nodes,
        proof_of_optimality: complete,
        universe_size: sets.len(),
    })
}

fn search(c: &Compiled, opts: &SolveOptions) -> (u128, Vec<u128>, bool, u64, bool) {
    let seed = c.greedy();
    let g = seed.value;
    let mut roots = Vec::new();
    let mut nodes = 0u64;
    frontier(
        c,
        c.root(),
        opts.split_depth,
        g,
        opts.enumerate,
        &mut roots,
        &mut nodes,
    );
    let per_budget = opts
        .node_budget
        .map_or(u64::MAX, |b| (b / roots.len().max(1) as u64).max(1));
    let cap = opts.witness_cap.max(1);
    let parts: Vec<(u128, Vec<u128>, bool, bool, u64, bool)> = roots
        .into_par_iter()
        .map(|root| {
            let mut ctx = Ctx {
                c,
                enumerate: opts.enumerate,
                cap,
                best: g,
                witnesses: Vec::new(),
                improved: false,
                truncated: false,
                nodes: 0,
                budget: per_budget,
                aborted: false,
            };
            ctx.dfs(root);
            (
                ctx.best,
                ctx.witnesses,
                ctx.improved,
                ctx.truncated,
                ctx.nodes,
                ctx.aborted,
            )
        })
        .collect();
    let best = parts.iter().map(|p| p.0).max().unwrap_or(g).max(g);
    let mut witnesses = Vec::new();
    let mut truncated = false;
    let mut complete = true;
    for (b, w, improved, t, n, aborted) in parts {
        nodes += n;
        complete &= !aborted;
        if b == best && improved {
            truncated |= t;
            witnesses.extend(w);
        }
    }
    if witnesses.is_empty() {
        witnesses.push(seed.chosen);
    }
    if opts.enumerate && witnesses.len() > cap {
        witnesses.truncate(cap);
        truncated = true;
    }
    if !opts.enumerate {
        witnesses.truncate(1);
    }
    (best, witnesses, truncated, nodes, complete)
}

/// Every optimal family, or an error when the budget cut the search short.
pub fn enumerate_extremal(
    problem: &SearchProblem,
    opts: &SolveOptions,
) -> Result<(Vec<SetFamily>, bool), SolveError> {
    let opts = SolveOptions {
        enumerate: true,
        symmetry: false,
        ..opts.clone()
    };
    let r = solve(problem, &opts)?;
    if !r.proof_of_optimality {
        return Err(SolveError::Incomplete);
    }
    Ok((r.witnesses, r.truncated))
}

/// Exhaustive reference search using only the family predicates.
pub fn solve_naive(problem: &SearchProblem, witness_cap: usize) -> Result<SolveResult, SolveError> {
    if problem.constraints.sperner_k == Some(0) {
        return Err(SolveError::BadSperner);
    }
    let sets = problem.universe_sets()?;
    if sets.len() > NAIVE_MAX {
        return Err(SolveError::UniverseTooLarge {
            size: sets.len(),
            max: NAIVE_MAX,
        });
    }
    let n = problem.n();
    let weights: Vec<u128> = sets.iter().map(|&s| problem.weight_of(s)).collect();
    let mut suffix = vec![0u128; sets.len() + 1];
    for i in (0..sets.len()).rev() {
        suffix[i] = suffix[i + 1] + weights[i];
    }
    struct State<'a> {
        problem: &'a SearchProblem,
        sets: &'a [Subset],
        weights: &'a [u128],
        suffix: &'a [u128],
        n: u8,
        chosen: Vec<Subset>,
        best: u128,
        witnesses: Vec<SetFamily>,
        cap: usize,
        truncated: bool,
        nodes: u64,
    }
    impl State<'_> {
        fn ok_with(&self, s: Subset) -> bool {
            let c = &self.problem.constraints;
            if c.intersecting && (s.size() == 0 || self.chosen.iter().any(|t| !t.intersects(s))) {
                return false;
            }
            if c.sperner_k.is_none() && c.forbidden.is_none() {
                return true;
            }
            let mut f =
                SetFamily::from_subsets(self.n, self.chosen.iter().copied()).expect("same ground");
            f.insert(s).expect("same ground");
            c.sperner_k.is_none_or(|k| is_k_sperner(&f, k))
                && c.forbidden
                    .as_ref()
                    .is_none_or(|p| !family_contains_subposet(&f, p))
        }

        fn go(&mut self, i: usize, value: u128) {
            self.nodes += 1;
            if value + self.suffix[i] < self.best {
                return;
            }
            if i == self.sets.len() {
                let f = SetFamily::from_subsets(self.n, self.chosen.iter().copied())
                    .expect("same ground");
                if value > self.best {
                    self.best = value;
                    self.witnesses.clear();
                    self.truncated = false;
                }
                if self.witnesses.len() < self.cap {
                    self.witnesses.push(f);
                } else {
                    self.truncated = true;
                }
                return;
            }
            let s = self.sets[i];
            if self.ok_with(s) {
                self.chosen.push(s);
                self.go(i + 1, value + self.weights[i]);
                self.chosen.pop();
            }
            self.go(i + 1, value);
        }
    }
    let mut st = State {
        problem,
        sets: &sets,
        weights: &weights,
        suffix: &suffix,
        n,
        chosen: Vec::new(),
        best: 0,
        witnesses: Vec::new(),
        cap: witness_cap.max(1),
        truncated: false,
        nodes: 0,
    };
    st.go(0, 0);
    let mut witnesses = st.witnesses;
    witnesses.sort();
    Ok(SolveResult {
        optimum: st.best,
        witnesses,
        truncated: st.truncated,
        nodes_explored: st.nodes,
        proof_of_optimality: true,
        universe_size: sets.len(),
    })
}

/// Splits `f` into antichains `G_1, ..., G_h`: a member goes to `G_i` when the
/// longest chain of members ending at it has `i` sets.
pub fn mirsky_decompose(f: &SetFamily) -> Vec<SetFamily> {
    let depth = chain_depths(f);
    let h = depth.iter().copied().max().unwrap_or(0);
    (1..=h)
        .map(|i| {
            let masks = f
                .masks()
                .iter()
                .zip(&depth)
                .filter(|(_, &d)| d == i)
                .map(|(&m, _)| m);
            SetFamily::from_masks(f.n(), masks).expect("members of f")
        })
        .collect()
}
