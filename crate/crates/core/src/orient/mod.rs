//! Unbalanced orientations: every node ends with outdegree at most about
//! `rho1 * d(v)` or indegree at most about `rho2 * d(v)`.
//!
//! Each node draws a bit `X`, each edge bits `Y` and `Z`; the orientation of an
//! edge depends only on its own bits and its endpoints' `X`. Violations are
//! repaired by Moser-Tardos resampling.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Direction, NodeId, Orientation, TypedMultiGraph};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrientError {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("resampling budget exhausted after {0} resamples")]
    BudgetExhausted(u64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrientParams {
    pub rho1: f64,
    pub rho2: f64,
    /// Constant in front of `sqrt(Δ ln Δ)`.
    pub slack: f64,
    /// `Pr[X_v = 1]`.
    pub eta: f64,
    /// `Pr[Y_e = 1]`.
    pub nu: f64,
    pub max_resample: u64,
    pub seed: u64,
}

impl OrientParams {
    /// Additive slack `C * sqrt(Δ ln Δ)`; zero when `Δ <= 1`.
    pub fn slack_term(&self, delta: usize) -> f64 {
        if delta <= 1 {
            0.0
        } else {
            let d = delta as f64;
            self.slack * (d * d.ln()).sqrt()
        }
    }

    /// `(out threshold, in threshold)` for a node of degree `d`.
    pub fn thresholds(&self, d: usize, delta: usize) -> (f64, f64) {
        let s = self.slack_term(delta);
        (self.rho1 * d as f64 + s, self.rho2 * d as f64 + s)
    }
}

pub fn derive_params(rho1: f64, rho2: f64, slack: f64, seed: u64, max_resample: u64) -> Result<OrientParams, OrientError> {
    let unit = |r: f64| (0.0..=0.5).contains(&r);
    if !unit(rho1) || !unit(rho2) {
        return Err(OrientError::Domain(format!("rho1 = {rho1}, rho2 = {rho2}; both must lie in [0, 1/2]")));
    }
    if rho1 + rho2 < 0.5 {
        return Err(OrientError::Domain(format!("rho1 + rho2 = {} < 1/2", rho1 + rho2)));
    }
    if !(slack >= 0.0 && slack.is_finite()) {
        return Err(OrientError::Domain(format!("slack = {slack}; must be a finite non-negative number")));
    }
    let denom = 1.0 - rho1 - rho2;
    // rho1 = rho2 = 1/2 leaves 0/0; any eta works there since nu = 1/2 makes the rule symmetric
    let eta = if denom <= 0.0 { 0.5 } else { ((0.5 - rho2) / denom).clamp(0.0, 1.0) };
    Ok(OrientParams {
        rho1,
        rho2,
        slack,
        eta,
        nu: rho1 + rho2 - 0.5,
        max_resample,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleState {
    pub x: Vec<bool>,
    pub y: Vec<bool>,
    pub z: Vec<bool>,
}

impl SampleState {
    pub fn draw(g: &TypedMultiGraph, params: &OrientParams, rng: &mut impl Rng) -> Self {
        let x = (0..g.node_count()).map(|_| rng.gen_bool(params.eta)).collect();
        let mut y = Vec::with_capacity(g.edge_count());
        let mut z = Vec::with_capacity(g.edge_count());
        for _ in 0..g.edge_count() {
            y.push(rng.gen_bool(params.nu));
            z.push(rng.gen_bool(0.5));
        }
        SampleState { x, y, z }
    }

    /// Neighbors (with multiplicity) whose `X` is 0, resp. 1.
    pub fn d0_d1(&self, g: &TypedMultiGraph, v: NodeId) -> (usize, usize) {
        let ones = g.incident(v).iter().filter(|h| self.x[g.node_of(h.twin())]).count();
        (g.degree(v) - ones, ones)
    }

    /// Redraws the scope of `v`'s event: `X_v`, `X_u` for every neighbor `u`, and
    /// `Y_e`, `Z_e` for every edge at `v`.
    pub fn resample_scope(&mut self, g: &TypedMultiGraph, v: NodeId, params: &OrientParams, rng: &mut impl Rng) {
        self.x[v] = rng.gen_bool(params.eta);
        for u in scope_neighbors(g, v) {
            self.x[u] = rng.gen_bool(params.eta);
        }
        for h in g.incident(v) {
            self.y[h.edge] = rng.gen_bool(params.nu);
            self.z[h.edge] = rng.gen_bool(0.5);
        }
    }
}

fn scope_neighbors(g: &TypedMultiGraph, v: NodeId) -> Vec<NodeId> {
    let mut ns: Vec<NodeId> = g.neighbors(v).collect();
    ns.sort_unstable();
    ns.dedup();
    ns
}

/// Direction of edge `e` under the sampling rule, with `u < v` its endpoints.
fn edge_direction(g: &TypedMultiGraph, e: usize, s: &SampleState) -> Direction {
    let [a, b] = g.edge(e).ends;
    let (u, v) = if a < b { (a, b) } else { (b, a) };
    let u_to_v = match (s.x[u], s.x[v]) {
        (xu, xv) if xu == xv => s.z[e],
        (false, true) => !s.y[e],
        _ => s.y[e],
    };
    let tail = if u_to_v { u } else { v };
    if tail == a {
        Direction::Forward
    } else {
        Direction::Backward
    }
}

pub fn orient_from_sample(g: &TypedMultiGraph, state: &SampleState) -> Orientation {
    Orientation::new((0..g.edge_count()).map(|e| edge_direction(g, e, state)).collect())
}

fn violates(out: usize, d: usize, delta: usize, params: &OrientParams) -> bool {
    let (t_out, t_in) = params.thresholds(d, delta);
    out as f64 > t_out && (d - out) as f64 > t_in
}

/// Both the outdegree and the indegree of `v` exceed their thresholds.
pub fn bad_event(g: &TypedMultiGraph, v: NodeId, orientation: &Orientation, params: &OrientParams) -> bool {
    let out = g.incident(v).iter().filter(|h| orientation.is_out(**h)).count();
    violates(out, g.degree(v), g.max_degree(), params)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NodeStats {
    pub out: usize,
    pub inn: usize,
    pub x: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LllOutcome {
    pub orientation: Orientation,
    pub resamples: u64,
    pub violations_initial: usize,
    pub stats: Vec<NodeStats>,
}

/// Samples all variables, then resamples the lowest-id violated node's scope
/// until no node is violated or the budget runs out.
pub fn lll_orient(g: &TypedMultiGraph, params: &OrientParams) -> Result<LllOutcome, OrientError> {
    let n = g.node_count();
    let delta = g.max_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut state = SampleState::draw(g, params, &mut rng);
    let mut orientation = orient_from_sample(g, &state);
    let mut out = orientation.out_degrees(g);

    let bad = |v: NodeId, out: &[usize]| violates(out[v], g.degree(v), delta, params);
    let mut violated: BTreeSet<NodeId> = (0..n).filter(|&v| bad(v, &out)).collect();
    let violations_initial = violated.len();
    let mut resamples = 0u64;

    while let Some(&v) = violated.iter().next() {
        if resamples >= params.max_resample {
            return Err(OrientError::BudgetExhausted(resamples));
        }
        resamples += 1;
        state.resample_scope(g, v, params, &mut rng);

        // edges whose inputs changed: those at v or at a neighbor of v
        let mut centre = scope_neighbors(g, v);
        centre.push(v);
        let mut touched = BTreeSet::new();
        for &w in &centre {
            for h in g.incident(w) {
                let e = h.edge;
                let dir = edge_direction(g, e, &state);
                if dir != orientation.dir(e) {
                    out[orientation.tail(g, e)] -= 1;
                    orientation.set(e, dir);
                    out[orientation.tail(g, e)] += 1;
                }
                touched.extend(g.edge(e).ends);
            }
        }
        for w in touched {
            if bad(w, &out) {
                violated.insert(w);
            } else {
                violated.remove(&w);
            }
        }
    }

    let stats = (0..n)
        .map(|v| NodeStats {
            out: out[v],
            inn: g.degree(v) - out[v],
            x: state.x[v],
        })
        .collect();
    Ok(LllOutcome {
        orientation,
        resamples,
        violations_initial,
        stats,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassMean {
    pub mean: f64,
    pub std_err: f64,
    /// Pooled `rho * d(v)` over the same observations.
    pub expected: f64,
    pub observations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeanStats {
    /// Indegree of nodes with `X = 0`; `None` when no such node was ever drawn.
    pub in_x0: Option<ClassMean>,
    /// Outdegree of nodes with `X = 1`.
    pub out_x1: Option<ClassMean>,
    pub trials: usize,
}

/// Pooled ratio estimate over trials with a delta-method standard error.
fn class_mean(per_trial: &[(f64, f64, f64)], rho: f64) -> Option<ClassMean> {
    let t = per_trial.len() as f64;
    let (sum, count, deg): (f64, f64, f64) = per_trial
        .iter()
        .fold((0.0, 0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1, acc.2 + p.2));
    if count == 0.0 {
        return None;
    }
    let r = sum / count;
    let n_bar = count / t;
    let var = if per_trial.len() > 1 {
        per_trial.iter().map(|&(s, c, _)| (s - r * c).powi(2)).sum::<f64>() / (t - 1.0)
    } else {
        0.0
    };
    Some(ClassMean {
        mean: r,
        std_err: (var / t).sqrt() / n_bar,
        expected: rho * deg / count,
        observations: count as u64,
    })
}

/// Fresh samples without resampling; trial `t` uses stream `t` of the seeded generator.
pub fn empirical_means(g: &TypedMultiGraph, params: &OrientParams, trials: usize) -> MeanStats {
    assert!(trials >= 1, "need at least one trial");
    let mut in0 = Vec::with_capacity(trials);
    let mut out1 = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(t as u64);
        let state = SampleState::draw(g, params, &mut rng);
        let out = orient_from_sample(g, &state).out_degrees(g);
        let (mut a, mut b) = ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0));
        for v in 0..g.node_count() {
            let d = g.degree(v) as f64;
            if state.x[v] {
                b = (b.0 + out[v] as f64, b.1 + 1.0, b.2 + d);
            } else {
                a = (a.0 + d - out[v] as f64, a.1 + 1.0, a.2 + d);
            }
        }
        in0.push(a);
        out1.push(b);
    }
    MeanStats {
        in_x0: class_mean(&in0, params.rho2),
        out_x1: class_mean(&out1, params.rho1),
        trials,
    }
}
