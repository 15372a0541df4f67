use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, ValueEnum};
use pfree::construct::{construct_h0, construct_hx, middle_levels};
use pfree::cycle::{
    check_interval_antichain_lemmas, max_weight_interval_family, premise_audit, CyclicPermutation,
};
use pfree::dchain::{check_burcsi_nagy, dcc_weight_audit, odd_bound};
use pfree::gen::{random_family, random_intersecting_antichain, random_intersecting_b_free};
use pfree::ineq::{bollobas2_sum, bollobas_sum, gkk2_sum, gkk_sum, ratio_string, LymReport};
use pfree::json::{family_from_json, FamilyJson};
use pfree::solver::{solve, SearchProblem, SolveOptions, Universe};
use pfree::{Poset, Rational, SetFamily};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Cli, Report, Verb};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    #[value(name = "H0", alias = "h0")]
    H0,
    #[value(name = "Hx", alias = "hx")]
    Hx,
    /// `k` full levels starting just above `n/2`.
    Middle,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long)]
    pub n: u8,
    #[arg(long)]
    pub k: u32,
    /// Distinguished element for Hx.
    #[arg(long, default_value_t = 1)]
    pub x: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UniverseKind {
    All,
    Intervals,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: u8,
    /// Poset DSL (`butterfly`, `V`, `Lambda`, `chain:k`, `4; 1<3 2<3`) or `none`.
    #[arg(long, default_value = "none")]
    pub forbid: String,
    #[arg(long)]
    pub intersecting: bool,
    #[arg(long)]
    pub sperner: Option<usize>,
    #[arg(long, value_enum, default_value_t = UniverseKind::All)]
    pub universe: UniverseKind,
    /// Return every optimal family up to the witness cap.
    #[arg(long)]
    pub enumerate: bool,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Keep `[n]` in the universe even when a poset is forbidden.
    #[arg(long)]
    pub include_full: bool,
    /// Maximize `Σ C(n, |F|)` instead of the member count.
    #[arg(long)]
    pub weighted: bool,
    /// Only search families with a member containing 1.
    #[arg(long)]
    pub symmetry: bool,
    #[arg(long, default_value_t = pfree::solver::DEFAULT_WITNESS_CAP)]
    pub witness_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CycleCheck {
    Lemmas,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["check", "maxweight", "audit"])))]
pub struct CycleArgs {
    #[arg(long, value_enum)]
    pub check: Option<CycleCheck>,
    /// Largest weighted k-Sperner interval family.
    #[arg(long)]
    pub maxweight: bool,
    /// Per-permutation premise audit of a family file.
    #[arg(long, value_name = "FILE")]
    pub audit: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u8>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub intersecting: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["burcsi_nagy", "odd_bound", "audit"])))]
pub struct DchainArgs {
    /// Every (|P| + h(P) - 1)-subset of the double chain contains P.
    #[arg(long)]
    pub burcsi_nagy: bool,
    #[arg(long)]
    pub odd_bound: bool,
    /// Weighted double count against all permuted pairs.
    #[arg(long)]
    pub audit: bool,
    #[arg(long)]
    pub poset: Option<String>,
    #[arg(long)]
    pub n: Option<u8>,
    /// Family file for `--audit`.
    #[arg(long, value_name = "FILE")]
    pub family: Option<PathBuf>,
    /// Number of seeded random families for `--audit`.
    #[arg(long, value_name = "COUNT")]
    pub random: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IneqKind {
    Gkk,
    Bollobas,
    Gkk2,
    Bollobas2,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["family", "sweep"])))]
pub struct IneqArgs {
    #[arg(long, value_enum)]
    pub kind: IneqKind,
    #[arg(long, value_name = "FILE")]
    pub family: Option<PathBuf>,
    /// Number of seeded random families satisfying the hypotheses of `kind`.
    #[arg(long, value_name = "COUNT", requires = "n")]
    pub sweep: Option<usize>,
    #[arg(long)]
    pub n: Option<u8>,
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.verb {
        Verb::Construct(a) => construct(a),
        Verb::Solve(a) => solve_verb(a, cli.threads),
        Verb::Cycle(a) => cycle(a),
        Verb::Dchain(a) => dchain(a, cli.seed),
        Verb::Ineq(a) => ineq(a, cli.seed),
    }
}

fn family_json(f: &SetFamily) -> Value {
    serde_json::to_value(FamilyJson::from(f)).expect("family serializes")
}

fn family_lines(f: &SetFamily) -> String {
    f.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn read_family(path: &Path) -> Result<SetFamily> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    family_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.with_context(|| format!("--{flag} is required here"))
}

fn construct(a: &ConstructArgs) -> Result<Report> {
    let f = match a.family {
        FamilyKind::H0 => construct_h0(a.n, a.k)?,
        FamilyKind::Hx => construct_hx(a.n, a.k, a.x)?,
        FamilyKind::Middle => middle_levels(a.n, a.k)?,
    };
    let table = format!(
        "{} sets, profile {:?}\n{}\n",
        f.len(),
        f.profile(),
        family_lines(&f)
    );
    Ok(Report {
        json: family_json(&f),
        table,
        holds: true,
    })
}

fn parse_poset(s: &str) -> Result<Option<Poset>> {
    if s.trim().eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    Ok(Some(s.parse::<Poset>()?))
}

fn solve_verb(a: &SolveArgs, threads: Option<usize>) -> Result<Report> {
    let universe = match a.universe {
        UniverseKind::All => Universe::PowerSet {
            n: a.n,
            include_full: a.include_full.then_some(true),
        },
        UniverseKind::Intervals => Universe::Intervals(CyclicPermutation::canonical(a.n)),
    };
    let mut p = SearchProblem::new(universe);
    if let Some(q) = parse_poset(&a.forbid)? {
        p = p.forbid(q);
    }
    if a.intersecting {
        p = p.intersecting();
    }
    if let Some(k) = a.sperner {
        p = p.sperner(k);
    }
    if a.weighted {
        p = p.weighted();
    }
    let opts = SolveOptions {
        enumerate: a.enumerate,
        witness_cap: a.witness_cap,
        node_budget: a.budget,
        threads,
        symmetry: a.symmetry,
        ..SolveOptions::default()
    };
    let r = solve(&p, &opts)?;
    let json = json!({
        "n": a.n,
        "optimum": r.optimum.to_string(),
        "proof_of_optimality": r.proof_of_optimality,
        "nodes_explored": r.nodes_explored,
        "universe_size": r.universe_size,
        "truncated": r.truncated,
        "witnesses": r.witnesses.iter().map(family_json).collect::<Vec<_>>(),
    });
    let mut table = format!(
        "optimum {}{}\nnodes {}  universe {}  witnesses {}{}\n",
        r.optimum,
        if r.proof_of_optimality {
            " (proved)"
        } else {
            " (lower bound)"
        },
        r.nodes_explored,
        r.universe_size,
        r.witnesses.len(),
        if r.truncated { " (truncated)" } else { "" }
    );
    for w in &r.witnesses {
        let _ = writeln!(table, "  {}", family_lines(w));
    }
    Ok(Report {
        json,
        table,
        holds: true,
    })
}

fn cycle(a: &CycleArgs) -> Result<Report> {
    if a.check.is_some() {
        let rep = check_interval_antichain_lemmas(need(a.n, "n")?)?;
        let mut table = String::new();
        for c in &rep.checks {
            let _ = writeln!(
                table,
                "{:<28} {}  {}",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.detail
            );
        }
        return Ok(Report {
            json: json!({ "passed": rep.passed(), "report": rep }),
            table,
            holds: rep.passed(),
        });
    }
    if a.maxweight {
        let n = need(a.n, "n")?;
        let r = max_weight_interval_family(n, a.k, a.intersecting)?;
        let json = json!({
            "n": n,
            "k": a.k,
            "intersecting": a.intersecting,
            "weight": r.weight.to_string(),
            "truncated": r.truncated,
            "nodes_explored": r.nodes_explored,
            "witnesses": r.witnesses.iter().map(family_json).collect::<Vec<_>>(),
        });
        let mut table = format!(
            "weight {} over {} optimal families\n",
            r.weight,
            r.witnesses.len()
        );
        for w in &r.witnesses {
            let _ = writeln!(table, "  {}", family_lines(w));
        }
        return Ok(Report {
            json,
            table,
            holds: true,
        });
    }
    let path = a.audit.as_ref().expect("clap enforces one mode");
    let f = read_family(path)?;
    let rep = premise_audit(&f, None)?;
    let table = format!(
        "n {}  R {}  c {}  permutations {}  violations {}  max lhs {}  |F| <= R/n: {}\n",
        rep.n,
        rep.r,
        ratio_string(&rep.c),
        rep.permutations,
        rep.violations,
        ratio_string(&rep.max_lhs),
        rep.size_within_bound
    );
    let holds = rep.holds();
    Ok(Report {
        json: serde_json::to_value(&rep)?,
        table,
        holds,
    })
}

fn dchain(a: &DchainArgs, seed: u64) -> Result<Report> {
    if a.burcsi_nagy || a.odd_bound {
        let p: Poset = need(a.poset.as_deref(), "poset")?.parse()?;
        let n = need(a.n, "n")?;
        if a.burcsi_nagy {
            let r = check_burcsi_nagy(&p, n)?;
            let table = format!(
                "{} subsets of size {} checked: {}\n",
                r.subsets_checked,
                r.subset_size,
                if r.holds {
                    "all contain P"
                } else {
                    "counterexample found"
                }
            );
            let holds = r.holds;
            return Ok(Report {
                json: serde_json::to_value(&r)?,
                table,
                holds,
            });
        }
        let b = odd_bound(&p, n)?;
        let json = json!({ "n": n, "poset": p.to_string(), "bound": b.to_string() });
        return Ok(Report {
            json,
            table: format!("bound {b}\n"),
            holds: true,
        });
    }
    let families: Vec<SetFamily> = match (&a.family, a.random) {
        (Some(path), None) => vec![read_family(path)?],
        (None, Some(count)) => {
            let n = need(a.n, "n")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| random_family(n, 0.5, &mut rng))
                .collect::<Result<_, _>>()?
        }
        _ => bail!("--audit needs exactly one of --family or --random"),
    };
    let mut rows = Vec::new();
    let mut table = String::new();
    let mut holds = true;
    for f in &families {
        let r = dcc_weight_audit(f)?;
        holds &= r.identity_holds;
        let _ = writeln!(
            table,
            "|F| {:<4} total {:<10} expected {:<10} {}  class max {}",
            r.family_size,
            r.total_weight,
            r.expected,
            if r.identity_holds { "ok" } else { "MISMATCH" },
            r.max_per_weight_class
        );
        rows.push(json!({
            "family_size": r.family_size,
            "total_weight": r.total_weight.to_string(),
            "expected": r.expected.to_string(),
            "identity_holds": r.identity_holds,
            "max_per_weight_class": r.max_per_weight_class,
        }));
    }
    Ok(Report {
        json: json!({ "identity_holds": holds, "audits": rows }),
        table,
        holds,
    })
}

fn evaluate(kind: IneqKind, f: &SetFamily) -> Result<LymReport> {
    Ok(match kind {
        IneqKind::Gkk => gkk_sum(f)?,
        IneqKind::Bollobas => bollobas_sum(f)?,
        IneqKind::Gkk2 => gkk2_sum(f)?,
        IneqKind::Bollobas2 => bollobas2_sum(f)?,
    })
}

fn ineq(a: &IneqArgs, seed: u64) -> Result<Report> {
    if let Some(path) = &a.family {
        let f = read_family(path)?;
        let r = evaluate(a.kind, &f)?;
        let table = format!(
            "{} = {} against {}: {}\n",
            format!("{:?}", a.kind).to_lowercase(),
            ratio_string(&r.value),
            ratio_string(&r.bound),
            if r.satisfied { "satisfied" } else { "VIOLATED" }
        );
        let holds = r.satisfied;
        return Ok(Report {
            json: serde_json::to_value(&r)?,
            table,
            holds,
        });
    }
    let count = a.sweep.expect("clap enforces one input");
    let n = need(a.n, "n")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = Rational::from_integer(0);
    let mut violations = 0usize;
    let mut first: Option<Value> = None;
    let mut bound = Rational::from_integer(0);
    let half = n as u32 / 2;
    for _ in 0..count {
        let f = match a.kind {
            IneqKind::Gkk => random_intersecting_antichain(n, 1, n as u32, &mut rng)?,
            IneqKind::Bollobas => random_intersecting_antichain(n, 1, half, &mut rng)?,
            IneqKind::Gkk2 => {
                random_intersecting_b_free(n, 2, (n as u32).saturating_sub(2), &mut rng)?
            }
            IneqKind::Bollobas2 => random_intersecting_b_free(n, 2, half, &mut rng)?,
        };
        let r = evaluate(a.kind, &f)?;
        bound = r.bound;
        worst = worst.max(r.value);
        if !r.satisfied {
            violations += 1;
            first.get_or_insert_with(|| family_json(&f));
        }
    }
    let json = json!({
        "kind": format!("{:?}", a.kind).to_lowercase(),
        "n": n,
        "seed": seed,
        "families": count,
        "bound": ratio_string(&bound),
        "largest": ratio_string(&worst),
        "violations": violations,
        "first_violation": first,
    });
    let table = format!(
        "{count} families, largest {} against {}, {violations} violations\n",
        ratio_string(&worst),
        ratio_string(&bound)
    );
    Ok(Report {
        json,
        table,
        holds: violations == 0,
    })
}
