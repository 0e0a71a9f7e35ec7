use crate::graph::{Color, Direction, EdgeType, Labeling, Orientation, TypedMultiGraph};

use super::{degrees, eq1_node_ok, eq2_node_ok, lemma31_node_ok, pi_centres, require_all_c, Rounding, VerifyError};

/// Largest number of free binary choices an exhaustive search accepts.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Properties a brute-force search can look for. All of them depend only on
/// the per-node red degrees of a type-consistent labeling.
pub enum Predicate {
    Eq1,
    Eq2Down,
    Eq2Up,
    Lemma31,
    Pi { delta: usize, y: usize },
    Custom(Box<dyn Fn(&TypedMultiGraph, &[usize]) -> bool>),
}

impl std::fmt::Debug for Predicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Predicate::Eq1 => write!(f, "Eq1"),
            Predicate::Eq2Down => write!(f, "Eq2Down"),
            Predicate::Eq2Up => write!(f, "Eq2Up"),
            Predicate::Lemma31 => write!(f, "Lemma31"),
            Predicate::Pi { delta, y } => write!(f, "Pi {{ delta: {delta}, y: {y} }}"),
            Predicate::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// Pre-digested predicate: per-node tests plus, for `Π(y)`, per-degree centre lists.
struct Compiled<'a> {
    pred: &'a Predicate,
    deg: Vec<usize>,
    centres: Vec<Vec<usize>>,
}

impl<'a> Compiled<'a> {
    fn new(g: &TypedMultiGraph, pred: &'a Predicate) -> Result<Self, VerifyError> {
        let deg = degrees(g);
        let mut centres = Vec::new();
        match pred {
            Predicate::Eq2Down | Predicate::Eq2Up => require_all_c(g)?,
            Predicate::Pi { delta, y } => {
                require_all_c(g)?;
                if *delta < 2 || *y >= *delta || deg.iter().any(|d| d > delta) {
                    return Err(VerifyError::Range(format!("Π({y}) with delta = {delta}")));
                }
                centres = (0..*delta).map(|d| pi_centres(*delta, *y, d)).collect();
            }
            _ => {}
        }
        Ok(Compiled { pred, deg, centres })
    }

    fn holds(&self, g: &TypedMultiGraph, red: &[usize]) -> bool {
        let nodes = 0..red.len();
        match self.pred {
            Predicate::Eq1 => nodes.into_iter().all(|v| eq1_node_ok(self.deg[v], red[v])),
            Predicate::Eq2Down => nodes.into_iter().all(|v| eq2_node_ok(self.deg[v], red[v], Rounding::Down)),
            Predicate::Eq2Up => nodes.into_iter().all(|v| eq2_node_ok(self.deg[v], red[v], Rounding::Up)),
            Predicate::Lemma31 => nodes.into_iter().all(|v| lemma31_node_ok(self.deg[v], red[v])),
            Predicate::Pi { delta, y } => {
                let mut lo = vec![usize::MAX; *delta];
                let mut hi = vec![0; *delta];
                for v in nodes {
                    let d = self.deg[v];
                    if d == *delta {
                        if red[v] != *y && red[v] != y + 1 {
                            return false;
                        }
                    } else {
                        lo[d] = lo[d].min(red[v]);
                        hi[d] = hi[d].max(red[v]);
                    }
                }
                (1..*delta).all(|d| lo[d] == usize::MAX || self.centres[d].iter().any(|&x| lo[d] + 1 >= x && hi[d] <= x + 1))
            }
            Predicate::Custom(f) => f(g, red),
        }
    }
}

/// Walks all `2^m` type-consistent labelings in Gray-code order, calling `visit`
/// with the current choice bits and red degrees; stops early when it returns true.
fn enumerate(g: &TypedMultiGraph, mut visit: impl FnMut(u64, &[usize]) -> bool) -> Result<(), VerifyError> {
    let m = g.edge_count();
    if m > BRUTE_FORCE_LIMIT {
        return Err(VerifyError::TooLarge(m));
    }
    // choice 0: C edges blue on both halves, O edges red at endpoint 0
    let mut red = vec![0usize; g.node_count()];
    for e in g.edges() {
        if e.kind == EdgeType::O {
            red[e.ends[0]] += 1;
        }
    }
    let mut bits = 0u64;
    if visit(bits, &red) {
        return Ok(());
    }
    for step in 1u64..(1u64 << m) {
        let e = step.trailing_zeros() as usize;
        let on = bits >> e & 1 == 0;
        bits ^= 1 << e;
        let [a, b] = g.edge(e).ends;
        match (g.kind(e), on) {
            (EdgeType::C, true) => {
                red[a] += 1;
                red[b] += 1;
            }
            (EdgeType::C, false) => {
                red[a] -= 1;
                red[b] -= 1;
            }
            (EdgeType::O, true) => {
                red[a] -= 1;
                red[b] += 1;
            }
            (EdgeType::O, false) => {
                red[a] += 1;
                red[b] -= 1;
            }
        }
        if visit(bits, &red) {
            break;
        }
    }
    Ok(())
}

fn labeling_of(g: &TypedMultiGraph, bits: u64) -> Labeling {
    let pairs = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let on = bits >> e & 1 == 1;
            match (edge.kind, on) {
                (EdgeType::C, false) => [Color::B, Color::B],
                (EdgeType::C, true) => [Color::R, Color::R],
                (EdgeType::O, false) => [Color::R, Color::B],
                (EdgeType::O, true) => [Color::B, Color::R],
            }
        })
        .collect();
    Labeling::from_pairs(pairs)
}

/// A type-consistent labeling satisfying `pred`, or `None` if there is none.
pub fn brute_force_labeling(g: &TypedMultiGraph, pred: &Predicate) -> Result<Option<Labeling>, VerifyError> {
    let compiled = Compiled::new(g, pred)?;
    let mut found = None;
    enumerate(g, |bits, red| {
        if compiled.holds(g, red) {
            found = Some(bits);
            true
        } else {
            false
        }
    })?;
    Ok(found.map(|b| labeling_of(g, b)))
}

/// Number of type-consistent labelings satisfying `pred`.
pub fn brute_force_count(g: &TypedMultiGraph, pred: &Predicate) -> Result<u64, VerifyError> {
    let compiled = Compiled::new(g, pred)?;
    let mut count = 0;
    enumerate(g, |_, red| {
        count += compiled.holds(g, red) as u64;
        false
    })?;
    Ok(count)
}

/// Per-node disjunction `out <= rho1 * Δ - slack` or `in <= rho2 * Δ - slack`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerBoundThresholds {
    pub rho1: f64,
    pub rho2: f64,
    /// Absolute amount subtracted from both sides.
    pub slack: f64,
}

/// Exhaustive search over all `2^m` orientations.
pub fn brute_force_orientation(g: &TypedMultiGraph, t: LowerBoundThresholds) -> Result<Option<Orientation>, VerifyError> {
    let m = g.edge_count();
    if m > BRUTE_FORCE_LIMIT {
        return Err(VerifyError::TooLarge(m));
    }
    let deg = degrees(g);
    let delta = deg.iter().copied().max().unwrap_or(0) as f64;
    let (t_out, t_in) = (t.rho1 * delta - t.slack, t.rho2 * delta - t.slack);
    let ok = |v: usize, out: usize| out as f64 <= t_out || (deg[v] - out) as f64 <= t_in;

    let mut out = vec![0usize; g.node_count()];
    for e in g.edges() {
        out[e.ends[0]] += 1;
    }
    let mut bits = 0u64;
    let all_ok = |out: &[usize]| (0..out.len()).all(|v| ok(v, out[v]));
    let mut hit = all_ok(&out).then_some(0u64);
    let mut step = 1u64;
    while hit.is_none() && step < 1u64 << m {
        let e = step.trailing_zeros() as usize;
        bits ^= 1 << e;
        let [a, b] = g.edge(e).ends;
        if bits >> e & 1 == 1 {
            out[a] -= 1;
            out[b] += 1;
        } else {
            out[a] += 1;
            out[b] -= 1;
        }
        if all_ok(&out) {
            hit = Some(bits);
        }
        step += 1;
    }
    Ok(hit.map(|bits| {
        Orientation::new(
            (0..m)
                .map(|e| if bits >> e & 1 == 1 { Direction::Backward } else { Direction::Forward })
                .collect(),
        )
    }))
}
