//! Arbitrary red/blue splittings `Π(y)`: degree-Δ nodes get `y` or `y+1` red
//! edges, lower degrees a proportional share.
//!
//! Labelings here are whole-edge colorings; edge types are ignored and every
//! edge is handed to the exact splitter as a C edge.

mod plan;
mod targets;

use thiserror::Error;

use crate::graph::{Color, EdgeType, Labeling, TypedMultiGraph};
use crate::splitting::{exact_split, RoundMode};
use crate::subroutines::CostLedger;

pub use plan::{pi_plan, PiPlan, PlanStep, StepKind};
pub use targets::{pi_normalize, pi_targets, pi_targets_all, DegreeTarget, PiTargets};

use targets::check_range;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PiError {
    #[error("out of range: {0}")]
    Range(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Zero,
    FloorHalf,
    CeilHalfMinus1,
}

/// Whole-edge colors, or `None` if some edge is unset or split.
fn edge_colors(lab: &Labeling) -> Option<Vec<Color>> {
    lab.raw()
        .iter()
        .map(|[a, b]| match (a, b) {
            (Some(a), Some(b)) if a == b => Some(*a),
            _ => None,
        })
        .collect()
}

/// Does `lab` solve `Π(y)` (with `y` in `0..=delta-1`, not normalized)?
pub fn satisfies(g: &TypedMultiGraph, delta: usize, y: usize, lab: &Labeling) -> bool {
    if check_range(delta, y).is_err() || g.max_degree() > delta || lab.len() != g.edge_count() {
        return false;
    }
    if edge_colors(lab).is_none() {
        return false;
    }
    let red = lab.red_degrees(g);
    let mut by_degree: Vec<(usize, usize)> = vec![(usize::MAX, 0); delta + 1];
    for v in 0..g.node_count() {
        let (lo, hi) = &mut by_degree[g.degree(v)];
        *lo = (*lo).min(red[v]);
        *hi = (*hi).max(red[v]);
    }
    (1..=delta).all(|d| {
        let (lo, hi) = by_degree[d];
        if lo == usize::MAX {
            return true;
        }
        let t = pi_targets(delta, y, d).expect("range checked");
        if d == delta {
            return t.admits(lo) && t.admits(hi);
        }
        t.allowed_x.iter().any(|&x| lo + 1 >= x && hi <= x + 1)
    })
}

fn require(g: &TypedMultiGraph, delta: usize, y: usize, lab: &Labeling) -> Result<(), PiError> {
    if satisfies(g, delta, y, lab) {
        Ok(())
    } else {
        Err(PiError::InvalidInput(format!("labeling does not solve Π({y}) for Δ = {delta}")))
    }
}

fn check_delta(g: &TypedMultiGraph, delta: usize) -> Result<(), PiError> {
    if delta < 2 || g.max_degree() > delta {
        return Err(PiError::Range(format!(
            "delta = {delta} with max degree {}; need 2 <= max degree <= delta",
            g.max_degree()
        )));
    }
    Ok(())
}

/// Swaps every color; a `Π(y)` solution becomes a `Π(Δ-1-y)` solution.
pub fn pi_swap(lab: &Labeling) -> Labeling {
    lab.swapped()
}

/// Solves one of the three base problems. Returns the solved target (normalized).
pub fn pi_base(g: &TypedMultiGraph, delta: usize, which: Base) -> Result<(Labeling, CostLedger, usize), PiError> {
    check_delta(g, delta)?;
    let mut ledger = CostLedger::new();
    Ok(match which {
        Base::Zero => (Labeling::from_edge_colors(&vec![Color::B; g.edge_count()]), ledger, 0),
        Base::FloorHalf | Base::CeilHalfMinus1 => {
            let (lab, sub) = exact_split(&g.with_all_types(EdgeType::C), RoundMode::Down)
                .expect("all edges retyped to C");
            ledger.absorb("exact_split", sub, 1);
            if which == Base::FloorHalf {
                (lab, ledger, pi_normalize((delta / 2) as i64, delta))
            } else {
                (lab.swapped(), ledger, pi_normalize(delta.div_ceil(2) as i64 - 1, delta))
            }
        }
    })
}

/// Keeps red exactly the red edges that the exact splitter colors red again.
fn halve_red(g: &TypedMultiGraph, lab: &Labeling, mode: RoundMode, ledger: &mut CostLedger) -> Labeling {
    let colors = edge_colors(lab).expect("whole-edge labeling");
    let (sub, back) = g.edge_subgraph(|id, _| colors[id] == Color::R);
    let (sub_lab, sub_ledger) = exact_split(&sub.with_all_types(EdgeType::C), mode).expect("all edges retyped to C");
    ledger.absorb("exact_split", sub_ledger, 1);
    let mut out = vec![Color::B; g.edge_count()];
    for (i, pair) in sub_lab.pairs().into_iter().enumerate() {
        out[back[i]] = pair[0];
    }
    Labeling::from_edge_colors(&out)
}

fn halving_step(g: &TypedMultiGraph, lab: &Labeling, swap: bool, mode: RoundMode) -> (Labeling, CostLedger) {
    let mut ledger = CostLedger::new();
    let start = if swap { lab.swapped() } else { lab.clone() };
    let out = halve_red(g, &start, mode, &mut ledger);
    (if swap { out.swapped() } else { out }, ledger)
}

/// From a `Π(2y)` solution to a `Π(y)` solution, for `y` in `0..=delta-2`.
/// Large `y` go through the color-swapped problem.
pub fn pi_halve_from_2y(
    g: &TypedMultiGraph,
    delta: usize,
    lab: &Labeling,
    y: usize,
) -> Result<(Labeling, CostLedger), PiError> {
    check_delta(g, delta)?;
    if y > delta - 2 {
        return Err(PiError::Range(format!("y = {y} outside 0..={}", delta - 2)));
    }
    let source = pi_normalize(2 * y as i64, delta);
    require(g, delta, source, lab)?;
    let out = halving_step(g, lab, 2 * y + 2 > delta, RoundMode::Down);
    debug_assert!(satisfies(g, delta, y, &out.0));
    Ok(out)
}

/// From a `Π(2y+1)` solution (small `y`, `2y + 3 <= Δ`) or a `Π(2y-1)`
/// solution (large `y`, `2y >= Δ`) to a `Π(y)` solution.
pub fn pi_halve_from_odd(
    g: &TypedMultiGraph,
    delta: usize,
    lab: &Labeling,
    y: usize,
) -> Result<(Labeling, CostLedger), PiError> {
    check_delta(g, delta)?;
    if y > delta - 2 {
        return Err(PiError::Range(format!("y = {y} outside 0..={}", delta - 2)));
    }
    let (source, swap) = if 2 * y + 3 <= delta {
        (2 * y + 1, false)
    } else if 2 * y >= delta {
        (pi_normalize(2 * y as i64 - 1, delta), true)
    } else {
        // y = Δ/2 - 1: neither source shape exists, and Π(y) is a base problem anyway
        return Err(PiError::Range(format!("no odd source for y = {y} with Δ = {delta}")));
    };
    require(g, delta, source, lab)?;
    let out = halving_step(g, lab, swap, RoundMode::Up);
    debug_assert!(satisfies(g, delta, y, &out.0));
    Ok(out)
}

/// Solves `Π(y)` with `Δ` the maximum degree of `g`.
pub fn solve_pi(g: &TypedMultiGraph, y: usize) -> Result<(Labeling, CostLedger, PiPlan), PiError> {
    solve_pi_with_delta(g, g.max_degree(), y)
}

/// Solves `Π(y)` for an explicit degree bound `delta >= max degree`.
pub fn solve_pi_with_delta(
    g: &TypedMultiGraph,
    delta: usize,
    y: usize,
) -> Result<(Labeling, CostLedger, PiPlan), PiError> {
    check_delta(g, delta)?;
    let plan = pi_plan(delta, y)?;
    let mut ledger = CostLedger::new();
    let mut lab = Labeling::unset(0);
    for (i, step) in plan.steps.iter().enumerate() {
        let (next, sub) = match step.kind {
            StepKind::BaseZero | StepKind::BaseFloorHalf | StepKind::BaseCeilHalfMinus1 => {
                let which = match step.kind {
                    StepKind::BaseZero => Base::Zero,
                    StepKind::BaseFloorHalf => Base::FloorHalf,
                    _ => Base::CeilHalfMinus1,
                };
                let (l, s, solved) = pi_base(g, delta, which)?;
                debug_assert_eq!(solved, step.y);
                (l, s)
            }
            StepKind::From2y => pi_halve_from_2y(g, delta, &lab, step.y)?,
            StepKind::From2yPlus1 | StepKind::From2yMinus1 => pi_halve_from_odd(g, delta, &lab, step.y)?,
            StepKind::Swap => (pi_swap(&lab), CostLedger::new()),
        };
        ledger.absorb(&format!("step{i}"), sub, 1);
        lab = next;
    }
    debug_assert!(satisfies(g, delta, y, &lab));
    Ok((lab, ledger, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_random_bounded, gen_random_regular, gen_structured, Structured, TypeAssignment};
    use proptest::prelude::*;

    fn k4() -> TypedMultiGraph {
        gen_structured(Structured::Complete(4), EdgeType::C).unwrap()
    }

    fn reds(lab: &Labeling) -> usize {
        lab.pairs().iter().filter(|p| p[0] == Color::R).count()
    }

    #[test]
    fn zero_is_all_blue() {
        let g = gen_random_regular(30, 5, 1, TypeAssignment::AllC).unwrap();
        let (lab, ledger, plan) = solve_pi(&g, 0).unwrap();
        assert_eq!(reds(&lab), 0);
        assert!(ledger.is_empty());
        assert_eq!(plan.len(), 1);
        assert!(satisfies(&g, 5, 0, &lab));
    }

    #[test]
    fn k4_examples() {
        let g = k4();
        let (lab, _, _) = solve_pi(&g, 1).unwrap();
        assert!(lab.red_degrees(&g).iter().all(|r| [1, 2].contains(r)));
        // red perfect matching solves Π(1) and its swap solves Π(3-1-1)
        let m = Labeling::from_edge_colors(&[Color::R, Color::B, Color::B, Color::B, Color::B, Color::R]);
        assert!(m.red_degrees(&g).iter().all(|&r| r == 1));
        assert!(satisfies(&g, 3, 1, &m) && satisfies(&g, 3, 1, &pi_swap(&m)));
        let all_red = Labeling::from_edge_colors(&[Color::R; 6]);
        assert!(!satisfies(&g, 3, 1, &all_red));
        assert!(satisfies(&g, 3, 2, &all_red));
        let (cm, _, _) = pi_base(&g, 3, Base::CeilHalfMinus1).unwrap();
        assert!(satisfies(&g, 3, 1, &cm));
    }

    #[test]
    fn swap_twice_is_identity() {
        let g = gen_random_regular(20, 4, 3, TypeAssignment::AllC).unwrap();
        let (lab, _, _) = solve_pi(&g, 1).unwrap();
        assert_eq!(pi_swap(&pi_swap(&lab)), lab);
    }

    #[test]
    fn c4_floor_half() {
        let g = gen_structured(Structured::Cycle(4), EdgeType::C).unwrap();
        let (lab, _, y) = pi_base(&g, 2, Base::FloorHalf).unwrap();
        assert_eq!(y, 0);
        assert!(lab.red_degrees(&g).iter().all(|r| [1, 2].contains(r)));
    }

    #[test]
    fn halving_examples() {
        let g = gen_random_regular(40, 5, 7, TypeAssignment::AllC).unwrap();
        let (p2, _, _) = solve_pi(&g, 2).unwrap();
        let (p1, _) = pi_halve_from_2y(&g, 5, &p2, 1).unwrap();
        assert!(p1.red_degrees(&g).iter().all(|r| [1, 2].contains(r)));
        let (p3, _, _) = solve_pi(&g, 3).unwrap();
        let (q1, _) = pi_halve_from_odd(&g, 5, &p3, 1).unwrap();
        assert!(satisfies(&g, 5, 1, &q1));

        let h = gen_random_regular(40, 6, 8, TypeAssignment::AllC).unwrap();
        let (p2, _, _) = solve_pi(&h, 2).unwrap();
        let (q4, _) = pi_halve_from_odd(&h, 6, &p2, 4).unwrap();
        assert!(satisfies(&h, 6, 4, &q4));

        let f = gen_random_regular(40, 4, 9, TypeAssignment::AllC).unwrap();
        let (p1, _, _) = solve_pi(&f, 1).unwrap();
        let (q0, _) = pi_halve_from_odd(&f, 4, &p1, 0).unwrap();
        assert!(q0.red_degrees(&f).iter().all(|r| [0, 1].contains(r)));

        let blue = Labeling::from_edge_colors(&vec![Color::B; g.edge_count()]);
        let (same, _) = pi_halve_from_2y(&g, 5, &blue, 0).unwrap();
        assert_eq!(reds(&same), 0);
    }

    #[test]
    fn precondition_enforced() {
        let g = gen_random_regular(20, 5, 2, TypeAssignment::AllC).unwrap();
        let blue = Labeling::from_edge_colors(&vec![Color::B; g.edge_count()]);
        assert!(matches!(pi_halve_from_2y(&g, 5, &blue, 1), Err(PiError::InvalidInput(_))));
        assert!(matches!(solve_pi(&g, 5), Err(PiError::Range(_))));
        assert!(matches!(solve_pi(&TypedMultiGraph::empty(3), 0), Err(PiError::Range(_))));
    }

    #[test]
    fn top_value_is_all_red() {
        let g = gen_random_regular(20, 4, 2, TypeAssignment::AllC).unwrap();
        let (lab, _, plan) = solve_pi(&g, 3).unwrap();
        assert_eq!(reds(&lab), g.edge_count());
        assert_eq!(plan.steps.last().unwrap().kind, StepKind::Swap);
    }

    #[test]
    fn random_six_regular() {
        let g = gen_random_regular(50, 6, 4, TypeAssignment::AllC).unwrap();
        let (lab, ledger, plan) = solve_pi(&g, 4).unwrap();
        assert!(satisfies(&g, 6, 4, &lab));
        assert!(plan.len() <= 5);
        assert!(!ledger.is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn solves_every_target(n in 3usize..60, delta in 2usize..10, keep in 0.5f64..1.0, seed in any::<u64>(), y_seed in any::<usize>()) {
            let g = gen_random_bounded(n, delta, keep, seed, TypeAssignment::Coin).unwrap();
            prop_assume!(g.max_degree() >= 2);
            let d = g.max_degree();
            let y = y_seed % d;
            let (lab, _, _) = solve_pi(&g, y).unwrap();
            prop_assert!(satisfies(&g, d, y, &lab));
        }

        #[test]
        fn swap_maps_targets(n in 3usize..50, delta in 2usize..9, seed in any::<u64>(), y_seed in any::<usize>()) {
            let g = gen_random_bounded(n, delta, 0.8, seed, TypeAssignment::AllC).unwrap();
            prop_assume!(g.max_degree() >= 2);
            let d = g.max_degree();
            let y = y_seed % d;
            let (lab, _, _) = solve_pi(&g, y).unwrap();
            prop_assert!(satisfies(&g, d, d - 1 - y, &pi_swap(&lab)));
        }

        // each step of the chain, fed a checked input, yields a checked output
        #[test]
        fn chain_steps_hold(n in 4usize..50, delta in 3usize..12, seed in any::<u64>(), y_seed in any::<usize>()) {
            let g = gen_random_bounded(n, delta, 0.9, seed, TypeAssignment::AllC).unwrap();
            prop_assume!(g.max_degree() >= 3);
            let d = g.max_degree();
            let plan = pi_plan(d, y_seed % (d - 1)).unwrap();
            let mut lab = Labeling::unset(0);
            for step in &plan.steps {
                lab = match step.kind {
                    StepKind::From2y => pi_halve_from_2y(&g, d, &lab, step.y).unwrap().0,
                    StepKind::From2yPlus1 | StepKind::From2yMinus1 => pi_halve_from_odd(&g, d, &lab, step.y).unwrap().0,
                    StepKind::BaseZero => pi_base(&g, d, Base::Zero).unwrap().0,
                    StepKind::BaseFloorHalf => pi_base(&g, d, Base::FloorHalf).unwrap().0,
                    StepKind::BaseCeilHalfMinus1 => pi_base(&g, d, Base::CeilHalfMinus1).unwrap().0,
                    StepKind::Swap => pi_swap(&lab),
                };
                prop_assert!(satisfies(&g, d, step.y, &lab), "step {:?}", step);
            }
        }
    }
}
