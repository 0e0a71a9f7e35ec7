//! Validity checkers and exhaustive oracles.
//!
//! Nothing here calls into the solvers; degrees, targets and thresholds are
//! recomputed from the raw labels so that a solver bug cannot hide behind a
//! shared helper.

mod brute;
mod ledger;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Color, EdgeId, EdgeType, Labeling, NodeId, Orientation, TypedMultiGraph};

pub use brute::{
    brute_force_count, brute_force_labeling, brute_force_orientation, LowerBoundThresholds, Predicate,
    BRUTE_FORCE_LIMIT,
};
pub use ledger::{check_ledger, Pipeline};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("edge {0} has type O; the property is defined for C edges only")]
    TypeError(EdgeId),
    #[error("out of range: {0}")]
    Range(String),
    #[error("{0} free binary choices exceed the brute-force limit")]
    TooLarge(usize),
    #[error("size mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Node(NodeId),
    Edge(EdgeId),
    /// All nodes of one degree.
    Degree(usize),
    /// A ledger entry by position.
    Entry(usize),
    Ledger,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub subject: Subject,
    pub observed: String,
    pub allowed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Verdict {
            pass: violations.is_empty(),
            violations,
        }
    }

    pub fn merge(mut self, other: Verdict) -> Verdict {
        self.violations.extend(other.violations);
        Verdict::from_violations(self.violations)
    }

    /// Violations as JSON lines.
    pub fn to_jsonl(&self) -> String {
        self.violations
            .iter()
            .map(|v| serde_json::to_string(v).expect("violations serialize") + "\n")
            .collect()
    }
}

fn violation(subject: Subject, observed: impl ToString, allowed: impl ToString) -> Violation {
    Violation {
        subject,
        observed: observed.to_string(),
        allowed: allowed.to_string(),
    }
}

fn same_len(g: &TypedMultiGraph, len: usize, what: &str) -> Result<(), VerifyError> {
    if len == g.edge_count() {
        Ok(())
    } else {
        Err(VerifyError::Shape(format!("{what} has {len} entries but the graph has {} edges", g.edge_count())))
    }
}

fn degrees(g: &TypedMultiGraph) -> Vec<usize> {
    let mut d = vec![0; g.node_count()];
    for e in g.edges() {
        d[e.ends[0]] += 1;
        d[e.ends[1]] += 1;
    }
    d
}

/// Red half-edges per node, counted straight from the labels; unset halves count as neither.
fn red_count(g: &TypedMultiGraph, lab: &Labeling) -> Vec<usize> {
    let mut red = vec![0; g.node_count()];
    for (e, halves) in lab.raw().iter().enumerate() {
        for side in 0..2 {
            if halves[side] == Some(Color::R) {
                red[g.edge(e).ends[side]] += 1;
            }
        }
    }
    red
}

fn unset_halves(lab: &Labeling) -> Vec<Violation> {
    lab.raw()
        .iter()
        .enumerate()
        .filter(|(_, h)| h[0].is_none() || h[1].is_none())
        .map(|(e, _)| violation(Subject::Edge(e), "unset half-edge", "R or B on both halves"))
        .collect()
}

fn show(h: [Option<Color>; 2]) -> String {
    let c = |x: Option<Color>| match x {
        Some(Color::R) => "R",
        Some(Color::B) => "B",
        None => "-",
    };
    format!("{}{}", c(h[0]), c(h[1]))
}

pub fn check_types(g: &TypedMultiGraph, lab: &Labeling) -> Result<Verdict, VerifyError> {
    same_len(g, lab.len(), "labeling")?;
    let mut out = unset_halves(lab);
    for (e, h) in lab.raw().iter().enumerate() {
        if let [Some(a), Some(b)] = *h {
            let ok = match g.kind(e) {
                EdgeType::C => a == b,
                EdgeType::O => a != b,
            };
            if !ok {
                let allowed = match g.kind(e) {
                    EdgeType::C => "RR or BB",
                    EdgeType::O => "RB or BR",
                };
                out.push(violation(Subject::Edge(e), show(*h), allowed));
            }
        }
    }
    Ok(Verdict::from_violations(out))
}

pub(crate) fn eq1_node_ok(d: usize, red: usize) -> bool {
    // d/2 - 1 <= red <= d/2 + 1, and the same for blue = d - red
    (2 * red as i64 - d as i64).abs() <= 2
}

/// Red and blue degree within one of half the degree.
pub fn check_eq1(g: &TypedMultiGraph, lab: &Labeling) -> Result<Verdict, VerifyError> {
    same_len(g, lab.len(), "labeling")?;
    let deg = degrees(g);
    let red = red_count(g, lab);
    let mut out = unset_halves(lab);
    for v in 0..g.node_count() {
        if !eq1_node_ok(deg[v], red[v]) {
            out.push(violation(
                Subject::Node(v),
                format!("d={} red={} blue={}", deg[v], red[v], deg[v] - red[v]),
                format!("[{}, {}]", deg[v] as f64 / 2.0 - 1.0, deg[v] as f64 / 2.0 + 1.0),
            ));
        }
    }
    Ok(Verdict::from_violations(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    Down,
    Up,
}

pub(crate) fn eq2_node_ok(d: usize, red: usize, mode: Rounding) -> bool {
    let counted = match mode {
        Rounding::Down => red,
        Rounding::Up => d - red,
    };
    counted == d / 2 || counted == d / 2 + 1
}

fn whole_edge_violations(lab: &Labeling) -> Vec<Violation> {
    lab.raw()
        .iter()
        .enumerate()
        .filter(|(_, h)| h[0].is_some() && h[1].is_some() && h[0] != h[1])
        .map(|(e, h)| violation(Subject::Edge(e), show(*h), "RR or BB"))
        .collect()
}

fn require_all_c(g: &TypedMultiGraph) -> Result<(), VerifyError> {
    match g.edges().iter().position(|e| e.kind == EdgeType::O) {
        Some(e) => Err(VerifyError::TypeError(e)),
        None => Ok(()),
    }
}

/// Exact split: red (`Down`) or blue (`Up`) degree is `floor(d/2)` or `floor(d/2) + 1`.
pub fn check_eq2(g: &TypedMultiGraph, lab: &Labeling, mode: Rounding) -> Result<Verdict, VerifyError> {
    require_all_c(g)?;
    same_len(g, lab.len(), "labeling")?;
    let deg = degrees(g);
    let red = red_count(g, lab);
    let mut out = unset_halves(lab);
    out.extend(whole_edge_violations(lab));
    for v in 0..g.node_count() {
        if !eq2_node_ok(deg[v], red[v], mode) {
            let which = if mode == Rounding::Down { "red" } else { "blue" };
            out.push(violation(
                Subject::Node(v),
                format!("d={} red={}", deg[v], red[v]),
                format!("{which} in {{{}, {}}}", deg[v] / 2, deg[v] / 2 + 1),
            ));
        }
    }
    Ok(Verdict::from_violations(out))
}

pub(crate) fn lemma31_node_ok(d: usize, red: usize) -> bool {
    d < 3 || (red >= 1 && red < d)
}

/// Every node of degree at least 3 sees both colors.
pub fn check_lemma31(g: &TypedMultiGraph, lab: &Labeling) -> Result<Verdict, VerifyError> {
    same_len(g, lab.len(), "labeling")?;
    let deg = degrees(g);
    let red = red_count(g, lab);
    let mut out = unset_halves(lab);
    for v in 0..g.node_count() {
        if !lemma31_node_ok(deg[v], red[v]) {
            out.push(violation(
                Subject::Node(v),
                format!("d={} red={}", deg[v], red[v]),
                "red >= 1 and blue >= 1",
            ));
        }
    }
    Ok(Verdict::from_violations(out))
}

/// Centres `x` admissible for degree `d < delta`: integers with `|x - d(y + 1/2)/delta| < 1 - d/(2 delta)`,
/// evaluated in units of `1/(2 delta)`.
pub(crate) fn pi_centres(delta: usize, y: usize, d: usize) -> Vec<usize> {
    let (two_delta, target) = (2 * delta as i64, (d * (2 * y + 1)) as i64);
    (0..=d)
        .filter(|&x| (two_delta * x as i64 - target).abs() < two_delta - d as i64)
        .collect()
}

fn pi_range(g: &TypedMultiGraph, delta: usize, y: usize) -> Result<(), VerifyError> {
    if delta < 2 || y >= delta {
        return Err(VerifyError::Range(format!("need delta >= 2 and 0 <= y <= delta - 1; got delta = {delta}, y = {y}")));
    }
    if let Some(v) = degrees(g).iter().position(|&d| d > delta) {
        return Err(VerifyError::Range(format!("node {v} has degree {} > delta = {delta}", g.degree(v))));
    }
    Ok(())
}

/// `Π(y)` check plus, per occurring degree `d < delta`, the centres `x_d` that survive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiCheck {
    pub verdict: Verdict,
    pub surviving: BTreeMap<usize, Vec<usize>>,
}

pub fn check_pi(g: &TypedMultiGraph, delta: usize, y: usize, lab: &Labeling) -> Result<PiCheck, VerifyError> {
    pi_range(g, delta, y)?;
    same_len(g, lab.len(), "labeling")?;
    let deg = degrees(g);
    let red = red_count(g, lab);
    let mut out = unset_halves(lab);
    out.extend(whole_edge_violations(lab));

    let mut by_degree: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
    for v in 0..g.node_count() {
        by_degree.entry(deg[v]).or_default().push(v);
    }
    let mut surviving = BTreeMap::new();
    for (&d, nodes) in &by_degree {
        if d == 0 {
            continue;
        }
        if d == delta {
            for &v in nodes {
                if red[v] != y && red[v] != y + 1 {
                    out.push(violation(Subject::Node(v), format!("d={d} red={}", red[v]), format!("{{{y}, {}}}", y + 1)));
                }
            }
            continue;
        }
        let centres = pi_centres(delta, y, d);
        let alive: Vec<usize> = centres
            .iter()
            .copied()
            .filter(|&x| nodes.iter().all(|&v| red[v] + 1 >= x && red[v] <= x + 1))
            .collect();
        if alive.is_empty() {
            let lo = nodes.iter().map(|&v| red[v]).min().unwrap_or(0);
            let hi = nodes.iter().map(|&v| red[v]).max().unwrap_or(0);
            out.push(violation(
                Subject::Degree(d),
                format!("red degrees span [{lo}, {hi}] over {} nodes", nodes.len()),
                format!("within x-1..=x+1 for some x in {centres:?}"),
            ));
        }
        surviving.insert(d, alive);
    }
    Ok(PiCheck {
        verdict: Verdict::from_violations(out),
        surviving,
    })
}

fn out_count(g: &TypedMultiGraph, o: &Orientation) -> Vec<usize> {
    let mut out = vec![0; g.node_count()];
    for (e, dir) in o.dirs().iter().enumerate() {
        out[g.edge(e).ends[dir.tail_side() as usize]] += 1;
    }
    out
}

/// Every node of degree at least 3 has an outgoing edge.
pub fn check_sinkless(g: &TypedMultiGraph, o: &Orientation) -> Result<Verdict, VerifyError> {
    same_len(g, o.len(), "orientation")?;
    let deg = degrees(g);
    let out = out_count(g, o);
    let violations = (0..g.node_count())
        .filter(|&v| deg[v] >= 3 && out[v] == 0)
        .map(|v| violation(Subject::Node(v), format!("d={} out=0", deg[v]), "out >= 1"))
        .collect();
    Ok(Verdict::from_violations(violations))
}

/// Outdegree and indegree differ by at most one at every node.
pub fn check_balanced_orientation(g: &TypedMultiGraph, o: &Orientation) -> Result<Verdict, VerifyError> {
    same_len(g, o.len(), "orientation")?;
    let deg = degrees(g);
    let out = out_count(g, o);
    let violations = (0..g.node_count())
        .filter(|&v| (2 * out[v] as i64 - deg[v] as i64).abs() > 1)
        .map(|v| violation(Subject::Node(v), format!("out={} in={}", out[v], deg[v] - out[v]), "|out - in| <= 1"))
        .collect();
    Ok(Verdict::from_violations(violations))
}

/// Thresholds `rho * d(v) + slack * sqrt(Δ ln Δ)` for the unbalanced-orientation disjunction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnbalancedThresholds {
    pub rho1: f64,
    pub rho2: f64,
    pub slack: f64,
}

/// Every node has outdegree at most its first threshold or indegree at most its second.
pub fn check_unbalanced(g: &TypedMultiGraph, o: &Orientation, t: UnbalancedThresholds) -> Result<Verdict, VerifyError> {
    same_len(g, o.len(), "orientation")?;
    let deg = degrees(g);
    let delta = deg.iter().copied().max().unwrap_or(0) as f64;
    let extra = if delta > 1.0 { t.slack * (delta * delta.ln()).sqrt() } else { 0.0 };
    let out = out_count(g, o);
    let mut violations = Vec::new();
    for v in 0..g.node_count() {
        let d = deg[v] as f64;
        let (t_out, t_in) = (t.rho1 * d + extra, t.rho2 * d + extra);
        let (o_v, i_v) = (out[v] as f64, (deg[v] - out[v]) as f64);
        if o_v > t_out && i_v > t_in {
            violations.push(violation(
                Subject::Node(v),
                format!("out={} in={}", out[v], deg[v] - out[v]),
                format!("out <= {t_out:.4} or in <= {t_in:.4}"),
            ));
        }
    }
    Ok(Verdict::from_violations(violations))
}
