use serde::Serialize;

use super::targets::{check_range, pi_normalize};
use super::PiError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    BaseZero,
    BaseFloorHalf,
    BaseCeilHalfMinus1,
    From2y,
    From2yPlus1,
    From2yMinus1,
    /// Color swap turning `Π(0)` into the all-red end `Π(Δ-1)`.
    Swap,
}

impl StepKind {
    pub fn is_base(self) -> bool {
        matches!(self, StepKind::BaseZero | StepKind::BaseFloorHalf | StepKind::BaseCeilHalfMinus1)
    }

    pub fn name(self) -> &'static str {
        match self {
            StepKind::BaseZero => "base_zero",
            StepKind::BaseFloorHalf => "base_floor_half",
            StepKind::BaseCeilHalfMinus1 => "base_ceil_half_minus1",
            StepKind::From2y => "from_2y",
            StepKind::From2yPlus1 => "from_2y_plus_1",
            StepKind::From2yMinus1 => "from_2y_minus_1",
            StepKind::Swap => "swap",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlanStep {
    /// Target reached after this step, normalized (except a final `Swap`, which reaches `Δ-1`).
    pub y: usize,
    /// Un-normalized value the interval doubling produced.
    pub raw: i64,
    pub kind: StepKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiPlan {
    pub delta: usize,
    pub y: usize,
    pub steps: Vec<PlanStep>,
}

impl PiPlan {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Base problem solved without recursion, if `r` (normalized) is one.
/// Zero wins over floor-half, which wins over its swapped twin. Within an
/// interval the lowest raw base member is taken.
pub(crate) fn base_kind(r: usize, delta: usize) -> Option<StepKind> {
    if r == 0 {
        Some(StepKind::BaseZero)
    } else if r == delta / 2 {
        Some(StepKind::BaseFloorHalf)
    } else if r == delta.div_ceil(2) - 1 {
        Some(StepKind::BaseCeilHalfMinus1)
    } else {
        None
    }
}

fn is_low(r: usize, delta: usize) -> bool {
    2 * r + 3 <= delta
}

fn is_high(r: usize, delta: usize) -> bool {
    2 * r > delta
}

pub fn pi_plan(delta: usize, y: usize) -> Result<PiPlan, PiError> {
    check_range(delta, y)?;
    if y == delta - 1 {
        let mut plan = pi_plan(delta, 0)?;
        plan.y = y;
        plan.steps.push(PlanStep {
            y,
            raw: y as i64,
            kind: StepKind::Swap,
        });
        return Ok(plan);
    }

    // intervals[j] holds raw values; highs[j] is the residue case used to double it
    let mut intervals: Vec<(i64, i64)> = vec![(y as i64, y as i64)];
    let mut highs: Vec<bool> = Vec::new();
    let (hit, hit_kind) = loop {
        let (a, b) = *intervals.last().expect("non-empty");
        let hit = (a..=b)
            .find_map(|v| base_kind(pi_normalize(v, delta), delta).map(|k| (v, k)));
        if let Some(h) = hit {
            break h;
        }
        let high = is_high(pi_normalize(a, delta), delta);
        assert!(
            (a..=b).all(|v| {
                let r = pi_normalize(v, delta);
                if high { is_high(r, delta) } else { is_low(r, delta) }
            }),
            "interval [{a}, {b}] mixes residue cases without a base member"
        );
        highs.push(high);
        intervals.push(if high { (2 * a - 1, 2 * b) } else { (2 * a, 2 * b + 1) });
    };

    let mut steps = vec![PlanStep {
        y: pi_normalize(hit, delta),
        raw: hit,
        kind: hit_kind,
    }];
    let mut child = hit;
    for &high in highs.iter().rev() {
        let parent = if high { (child + 1).div_euclid(2) } else { child.div_euclid(2) };
        let kind = match (child.rem_euclid(2) == 0, high) {
            (true, _) => StepKind::From2y,
            (false, false) => StepKind::From2yPlus1,
            (false, true) => StepKind::From2yMinus1,
        };
        steps.push(PlanStep {
            y: pi_normalize(parent, delta),
            raw: parent,
            kind,
        });
        child = parent;
    }
    debug_assert_eq!(child, y as i64);
    Ok(PiPlan { delta, y, steps })
}
