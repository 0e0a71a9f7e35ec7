use serde::Serialize;

use super::PiError;

/// Allowed red degrees for nodes of one degree `d` under `Π(y)`.
///
/// All thresholds are evaluated exactly in units of `1/(2Δ)`: with
/// `X = d(2y+1)` we have `x̃ = X/(2Δ)`, `τ = d/(2Δ)` and `β = (X mod 2Δ)/(2Δ)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeTarget {
    pub d: usize,
    pub tau: f64,
    pub x_tilde: f64,
    pub alpha: usize,
    pub beta: f64,
    /// Admissible centres `x_d`; empty for `d = Δ`, which uses the `{y, y+1}` rule.
    pub allowed_x: Vec<usize>,
    /// Sorted admissible red degrees.
    pub allowed_red: Vec<usize>,
}

impl DegreeTarget {
    pub fn admits(&self, red: usize) -> bool {
        self.allowed_red.binary_search(&red).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiTargets {
    pub delta: usize,
    pub y: usize,
    /// Entry `d - 1` describes degree `d`, for `d` in `1..=delta`.
    pub degrees: Vec<DegreeTarget>,
}

impl PiTargets {
    pub fn for_degree(&self, d: usize) -> Option<&DegreeTarget> {
        d.checked_sub(1).and_then(|i| self.degrees.get(i))
    }
}

pub(crate) fn check_range(delta: usize, y: usize) -> Result<(), PiError> {
    if delta < 2 {
        return Err(PiError::Range(format!("delta = {delta}; need delta >= 2")));
    }
    if y > delta - 1 {
        return Err(PiError::Range(format!("y = {y} outside 0..={}", delta - 1)));
    }
    Ok(())
}

pub fn pi_targets(delta: usize, y: usize, d: usize) -> Result<DegreeTarget, PiError> {
    check_range(delta, y)?;
    if d == 0 || d > delta {
        return Err(PiError::Range(format!("degree {d} outside 1..={delta}")));
    }
    let two_delta = 2 * delta;
    let x = d * (2 * y + 1);
    let alpha = x / two_delta;
    let b = x % two_delta;
    let allowed_x = if d == delta {
        Vec::new()
    } else if b <= d {
        vec![alpha]
    } else if b >= two_delta - d {
        vec![alpha + 1]
    } else {
        vec![alpha, alpha + 1]
    };
    let mut allowed_red: Vec<usize> = if d == delta {
        vec![y, y + 1]
    } else {
        allowed_x
            .iter()
            .flat_map(|&c| [c.wrapping_sub(1), c, c + 1])
            .filter(|&r| r <= d)
            .collect()
    };
    allowed_red.sort_unstable();
    allowed_red.dedup();
    Ok(DegreeTarget {
        d,
        tau: d as f64 / two_delta as f64,
        x_tilde: x as f64 / two_delta as f64,
        alpha,
        beta: b as f64 / two_delta as f64,
        allowed_x,
        allowed_red,
    })
}

pub fn pi_targets_all(delta: usize, y: usize) -> Result<PiTargets, PiError> {
    let degrees = (1..=delta).map(|d| pi_targets(delta, y, d)).collect::<Result<_, _>>()?;
    Ok(PiTargets { delta, y, degrees })
}

/// Representative of `y` modulo `delta - 1` in `0..=delta-2`.
pub fn pi_normalize(y: i64, delta: usize) -> usize {
    assert!(delta >= 2, "pi_normalize needs delta >= 2");
    y.rem_euclid(delta as i64 - 1) as usize
}
