//! Browser bindings. Every export returns a JSON string; errors come back
//! as `{"error": "..."}`.

use pfree::construct::{construct_h0, construct_hx, middle_levels};
use pfree::cycle::{classify, CyclicPermutation, Interval};
use pfree::ground::{is_intersecting, longest_chain};
use pfree::json::FamilyJson;
use pfree::poset::butterfly_free_dense;
use pfree::solver::{solve, SearchProblem, SolveOptions};
use pfree::{Poset, SetFamily};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest ground size the page accepts for searches.
const SOLVE_MAX_N: u8 = 5;
const VIEW_MAX_N: u8 = 12;

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error(e.to_string())),
        Err(e) => error(e),
    }
}

fn error(msg: String) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

fn build(kind: &str, n: u8, k: u32, x: u32) -> Result<SetFamily, String> {
    match kind {
        "H0" | "h0" => construct_h0(n, k).map_err(|e| e.to_string()),
        "Hx" | "hx" => construct_hx(n, k, x).map_err(|e| e.to_string()),
        "middle" => middle_levels(n, k).map_err(|e| e.to_string()),
        other => Err(format!("unknown family {other:?}")),
    }
}

#[derive(Serialize)]
struct Built {
    family: FamilyJson,
    size: usize,
    profile: Vec<usize>,
    intersecting: bool,
    longest_chain: usize,
    butterfly_free: bool,
}

/// One of `H0`, `Hx` or `middle` with its basic properties.
#[wasm_bindgen]
pub fn construct_family(kind: &str, n: u8, k: u32, x: u32) -> String {
    to_json(build(kind, n, k, x).map(|f| Built {
        family: FamilyJson::from(&f),
        size: f.len(),
        profile: f.profile(),
        intersecting: is_intersecting(&f),
        longest_chain: longest_chain(&f),
        butterfly_free: butterfly_free_dense(&f),
    }))
}

#[derive(Serialize)]
struct Arc {
    start: u8,
    length: u8,
    elements: Vec<u32>,
    class: &'static str,
}

#[derive(Serialize)]
struct CycleView {
    order: Vec<u8>,
    permutations: u64,
    arcs: Vec<Arc>,
}

/// The intervals of a constructed family along the `index`-th cyclic
/// permutation, each tagged middle / isolated / top / bottom.
#[wasm_bindgen]
pub fn cycle_view(kind: &str, n: u8, k: u32, x: u32, index: u32) -> String {
    let view = || -> Result<CycleView, String> {
        if !(3..=VIEW_MAX_N).contains(&n) {
            return Err(format!("n must lie in 3..={VIEW_MAX_N}"));
        }
        let f = build(kind, n, k, x)?;
        let total: u64 = (1..n as u64).product();
        let sigma = CyclicPermutation::all(n)
            .nth(index as usize % total as usize)
            .expect("index reduced mod (n-1)!");
        let c = classify(&sigma, &f);
        let tag = |v: &[Interval], class: &'static str| -> Vec<Arc> {
            v.iter()
                .map(|iv| Arc {
                    start: iv.start,
                    length: iv.length,
                    elements: iv.subset(&sigma).elements(),
                    class,
                })
                .collect()
        };
        let mut arcs = tag(&c.middle, "middle");
        arcs.extend(tag(&c.isolated, "isolated"));
        arcs.extend(tag(&c.top, "top"));
        arcs.extend(tag(&c.bottom, "bottom"));
        arcs.sort_by_key(|a| (a.length, a.start));
        Ok(CycleView {
            order: sigma.order().to_vec(),
            permutations: total,
            arcs,
        })
    };
    to_json(view())
}

#[derive(Serialize)]
struct Solved {
    optimum: String,
    proof_of_optimality: bool,
    nodes_explored: u64,
    witness: Option<FamilyJson>,
}

/// Largest family in `2^[n]` for `n <= 5`. `forbid` is poset DSL or
/// `none`; `sperner` of 0 means no chain cap.
#[wasm_bindgen]
pub fn solve_small(n: u8, forbid: &str, intersecting: bool, sperner: u32) -> String {
    let run = || -> Result<Solved, String> {
        if !(1..=SOLVE_MAX_N).contains(&n) {
            return Err(format!("n must lie in 1..={SOLVE_MAX_N}"));
        }
        let mut p = SearchProblem::power_set(n);
        if !forbid.trim().eq_ignore_ascii_case("none") && !forbid.trim().is_empty() {
            p = p.forbid(forbid.parse::<Poset>().map_err(|e| e.to_string())?);
        }
        if intersecting {
            p = p.intersecting();
        }
        if sperner > 0 {
            p = p.sperner(sperner as usize);
        }
        let r = solve(&p, &SolveOptions::default()).map_err(|e| e.to_string())?;
        Ok(Solved {
            optimum: r.optimum.to_string(),
            proof_of_optimality: r.proof_of_optimality,
            nodes_explored: r.nodes_explored,
            witness: r.witnesses.first().map(FamilyJson::from),
        })
    };
    to_json(run())
}
