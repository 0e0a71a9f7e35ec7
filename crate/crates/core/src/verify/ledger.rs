use std::collections::BTreeSet;

use serde::Serialize;

use crate::subroutines::{CostLedger, LedgerEntry, Unit};

use super::{violation, Subject, Verdict, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pipeline {
    BalancedSplit,
    ExactSplit,
    SolvePi,
}

fn log2_ceil(x: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < x {
        k += 1;
    }
    k
}

/// Entries whose phase starts with `prefix/`, with the prefix removed; keeps positions.
fn under<'a>(entries: &[(usize, &'a LedgerEntry)], prefix: &str) -> Vec<(usize, &'a LedgerEntry, String)> {
    let p = format!("{prefix}/");
    entries
        .iter()
        .filter_map(|&(i, e)| e.phase.strip_prefix(&p).map(|rest| (i, e, rest.to_string())))
        .collect()
}

fn first_component(phase: &str) -> &str {
    phase.split('/').next().unwrap_or("")
}

/// Balanced-split shape: `level0..level{k-1}` one BO each with overhead `2^i`,
/// `level{k}`, `level{k+1}` one SO each, then a `lemma31` block of RS32 and SO
/// entries with overhead `2^(k+2)`; all overheads scaled by `factor`.
/// With `delta = None` the degree is read off the first BO parameter and must not exceed `bound`.
fn balanced_shape(
    entries: &[(usize, &LedgerEntry)],
    delta: Option<usize>,
    bound: usize,
    factor: u64,
    ctx: &str,
    out: &mut Vec<Violation>,
) {
    let mut bad = |i: Option<usize>, observed: String, allowed: String| {
        let subject = i.map_or(Subject::Ledger, Subject::Entry);
        out.push(violation(subject, format!("{ctx}{observed}"), allowed));
    };
    let bo: Vec<_> = entries.iter().filter(|(_, e)| matches!(e.unit, Unit::BO(_))).collect();
    let k = bo.len();
    let delta = match delta {
        Some(d) => d,
        None => match bo.first() {
            Some((_, e)) => {
                let Unit::BO(p) = e.unit else { unreachable!() };
                let d = (p / 4.0).powi(2).round() as usize;
                if d > bound {
                    bad(Some(bo[0].0), format!("inferred degree {d}"), format!("<= {bound}"));
                }
                d
            }
            None => bound.min(1),
        },
    };
    if k != log2_ceil(delta) {
        bad(None, format!("{k} BO entries"), format!("exactly ceil(log2 {delta}) = {}", log2_ceil(delta)));
    }
    for (i, (pos, e)) in bo.iter().enumerate() {
        let Unit::BO(p) = e.unit else { unreachable!() };
        let expected_p = 4.0 * (delta as f64).sqrt() / 2f64.powf(i as f64 / 2.0);
        if first_component(&e.phase) != format!("level{i}") {
            bad(Some(*pos), format!("BO #{i} in phase {}", e.phase), format!("phase level{i}"));
        }
        if e.overhead != factor << i || e.count != 1 {
            bad(Some(*pos), format!("count {} overhead {}", e.count, e.overhead), format!("count 1 overhead {}", factor << i));
        }
        if (p - expected_p).abs() > 1e-6 * expected_p.max(1.0) {
            bad(Some(*pos), format!("BO({p})"), format!("BO({expected_p}) = 1/eps_{i}"));
        }
    }
    for extra in [k, k + 1] {
        let level: Vec<_> = under(entries, &format!("level{extra}"));
        let so: Vec<_> = level.iter().filter(|(_, e, _)| e.unit == Unit::SO).collect();
        if so.len() != 1 || level.len() != 1 || so[0].1.overhead != factor << extra {
            bad(None, format!("level{extra}: {} entries, {} SO", level.len(), so.len()), format!("one SO with overhead {}", factor << extra));
        }
    }
    let lemma: Vec<_> = under(entries, "lemma31");
    if !lemma.iter().any(|(_, e, _)| e.unit == Unit::SO) {
        bad(None, "lemma31 block without SO".into(), ">= 1 SO".into());
    }
    for (pos, e, _) in &lemma {
        if !matches!(e.unit, Unit::SO | Unit::RS32) || e.overhead != factor << (k + 2) {
            bad(Some(*pos), format!("{:?} overhead {}", e.unit, e.overhead), format!("SO or RS32 with overhead {}", factor << (k + 2)));
        }
    }
    let known: BTreeSet<String> = (0..k + 2).map(|i| format!("level{i}")).chain(["lemma31".to_string()]).collect();
    for (pos, e) in entries {
        if !known.contains(first_component(&e.phase)) {
            bad(Some(*pos), format!("phase {}", e.phase), "level{i} or lemma31".into());
        }
    }
}

/// Exact-split shape: one MM under `matching`, then a balanced-split ledger under
/// `residual` at twice the overhead.
fn exact_shape(entries: &[(usize, &LedgerEntry)], delta: usize, factor: u64, ctx: &str, out: &mut Vec<Violation>) {
    let matching = under(entries, "matching");
    if matching.len() != 1 || matching[0].1.unit != Unit::MM || matching[0].1.overhead != factor {
        out.push(violation(Subject::Ledger, format!("{ctx}matching block of {} entries", matching.len()), "one MM entry"));
    }
    let residual: Vec<(usize, LedgerEntry)> = under(entries, "residual")
        .into_iter()
        .map(|(i, e, rest)| (i, LedgerEntry { phase: rest, ..e.clone() }))
        .collect();
    let refs: Vec<(usize, &LedgerEntry)> = residual.iter().map(|(i, e)| (*i, e)).collect();
    balanced_shape(&refs, None, delta, 2 * factor, &format!("{ctx}residual: "), out);
    if matching.len() + residual.len() != entries.len() {
        out.push(violation(Subject::Ledger, format!("{ctx}entries outside matching/residual"), "none"));
    }
}

/// Checks that a ledger has the cost structure of the named pipeline on a graph of maximum degree `delta`.
pub fn check_ledger(ledger: &CostLedger, delta: usize, pipeline: Pipeline) -> Verdict {
    let all: Vec<(usize, &LedgerEntry)> = ledger.entries().iter().enumerate().collect();
    let mut out = Vec::new();
    match pipeline {
        Pipeline::BalancedSplit => balanced_shape(&all, Some(delta), delta, 1, "", &mut out),
        Pipeline::ExactSplit => exact_shape(&all, delta, 1, "", &mut out),
        Pipeline::SolvePi => {
            let steps: BTreeSet<&str> = all.iter().map(|(_, e)| first_component(&e.phase)).collect();
            let limit = log2_ceil(delta) + 2;
            if steps.len() > limit {
                out.push(violation(Subject::Ledger, format!("{} exact_split phases", steps.len()), format!("<= {limit}")));
            }
            for step in steps {
                let inner: Vec<(usize, LedgerEntry)> = under(&all, &format!("{step}/exact_split"))
                    .into_iter()
                    .map(|(i, e, rest)| (i, LedgerEntry { phase: rest, ..e.clone() }))
                    .collect();
                let refs: Vec<(usize, &LedgerEntry)> = inner.iter().map(|(i, e)| (*i, e)).collect();
                let total = all.iter().filter(|(_, e)| first_component(&e.phase) == step).count();
                if refs.len() != total {
                    out.push(violation(Subject::Ledger, format!("{step}: entries outside exact_split"), "only exact_split"));
                }
                exact_shape(&refs, delta, 1, &format!("{step}: "), &mut out);
            }
        }
    }
    Verdict::from_violations(out)
}
