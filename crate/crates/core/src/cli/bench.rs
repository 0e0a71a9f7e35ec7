use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use crate::graph::{gen_random_regular, TypeAssignment};
use crate::orient::{derive_params, lll_orient};
use crate::pi::solve_pi_with_delta;
use crate::splitting::{balanced_split, exact_split, RoundMode};
use crate::subroutines::{CostLedger, Unit};

use super::{CliError, CliResult};

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Split,
    Exact,
    Pi,
    Orient,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub delta: usize,
    pub seed: u64,
    pub task: Suite,
    pub wall_ms: f64,
    pub bo: u64,
    pub so: u64,
    pub resamples: u64,
    /// Number of plan steps (`pi` only).
    pub plan_len: Option<usize>,
}

/// One Δ-regular graph per (size, Δ, seed); `n` is bumped by one when `n Δ` is odd.
/// `pi` targets `y = ⌊Δ/3⌋`; `orient` uses ρ1 = ρ2 = 0.3 and slack 2.
pub fn run_bench(suite: Suite, sizes: &[usize], deltas: &[usize], seeds: &[u64]) -> CliResult<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n0 in sizes {
        for &delta in deltas {
            let n = if (n0 * delta) % 2 == 1 { n0 + 1 } else { n0 };
            for &seed in seeds {
                let types = if suite == Suite::Split { TypeAssignment::Coin } else { TypeAssignment::AllC };
                let g = gen_random_regular(n, delta, seed, types)?;
                let start = Instant::now();
                let (ledger, resamples, plan_len): (CostLedger, u64, Option<usize>) = match suite {
                    Suite::Split => (balanced_split(&g).1, 0, None),
                    Suite::Exact => (exact_split(&g, RoundMode::Down)?.1, 0, None),
                    Suite::Pi => {
                        let (_, l, plan) = solve_pi_with_delta(&g, delta, delta / 3)?;
                        (l, 0, Some(plan.len()))
                    }
                    Suite::Orient => {
                        let p = derive_params(0.3, 0.3, 2.0, seed, 10_000_000)?;
                        (CostLedger::new(), lll_orient(&g, &p)?.resamples, None)
                    }
                };
                let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                rows.push(BenchRow {
                    n,
                    delta,
                    seed,
                    task: suite,
                    wall_ms,
                    bo: ledger.total(|u| matches!(u, Unit::BO(_))),
                    so: ledger.total(|u| *u == Unit::SO),
                    resamples,
                    plan_len,
                });
            }
        }
    }
    if rows.iter().any(|r| r.wall_ms.is_nan()) {
        return Err(CliError("clock failure".into()));
    }
    Ok(rows)
}

pub fn table(rows: &[BenchRow]) -> String {
    let mut s = format!(
        "{:>8} {:>6} {:>6} {:>8} {:>10} {:>5} {:>5} {:>10} {:>5}\n",
        "n", "delta", "seed", "task", "wall_ms", "#BO", "#SO", "#resample", "plan"
    );
    for r in rows {
        let task = match r.task {
            Suite::Split => "split",
            Suite::Exact => "exact",
            Suite::Pi => "pi",
            Suite::Orient => "orient",
        };
        let plan = r.plan_len.map_or("-".to_string(), |p| p.to_string());
        s += &format!(
            "{:>8} {:>6} {:>6} {:>8} {:>10.2} {:>5} {:>5} {:>10} {:>5}\n",
            r.n, r.delta, r.seed, task, r.wall_ms, r.bo, r.so, r.resamples, plan
        );
    }
    s
}
