use serde::{Deserialize, Serialize};

/// Kind of black-box invocation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Unit {
    /// Sinkless orientation.
    SO,
    /// Balanced orientation with its accuracy parameter (`1/eps`, or the max degree).
    BO(f64),
    /// Maximal matching.
    MM,
    /// (3,2)-ruling set.
    RS32,
    #[serde(rename = "LLL_RESAMPLE")]
    LllResample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub phase: String,
    pub unit: Unit,
    pub count: u64,
    /// Rounds of the host graph needed to simulate one round of the graph the
    /// primitive actually ran on.
    pub overhead: u64,
}

/// Append-only log of primitive invocations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CostLedger {
    entries: Vec<LedgerEntry>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, phase: &str, unit: Unit, count: u64, overhead: u64) {
        assert!(count > 0 && overhead > 0, "ledger counts and overheads are positive");
        self.entries.push(LedgerEntry {
            phase: phase.to_string(),
            unit,
            count,
            overhead,
        });
    }

    /// Appends a sub-pipeline's entries, prefixing their phase with `prefix` and
    /// multiplying their overhead by `factor`.
    pub fn absorb(&mut self, prefix: &str, sub: CostLedger, factor: u64) {
        assert!(factor > 0);
        for mut e in sub.entries {
            e.phase = if e.phase.is_empty() {
                prefix.to_string()
            } else {
                format!("{prefix}/{}", e.phase)
            };
            e.overhead *= factor;
            self.entries.push(e);
        }
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total invocations of units matching `pred`.
    pub fn total(&self, pred: impl Fn(&Unit) -> bool) -> u64 {
        self.entries.iter().filter(|e| pred(&e.unit)).map(|e| e.count).sum()
    }

    /// One JSON object per line: `{"phase", "unit", "count", "overhead"}`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("ledger entries serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let entries = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CostLedger { entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absorb_prefixes_and_scales() {
        let mut sub = CostLedger::new();
        sub.record("balanced_orientation", Unit::BO(4.0), 1, 1);
        sub.record("", Unit::SO, 2, 3);
        let mut top = CostLedger::new();
        top.record("matching", Unit::MM, 1, 1);
        top.absorb("level2", sub, 4);
        let phases: Vec<_> = top.entries().iter().map(|e| e.phase.as_str()).collect();
        assert_eq!(phases, ["matching", "level2/balanced_orientation", "level2"]);
        assert_eq!(top.entries()[1].overhead, 4);
        assert_eq!(top.entries()[2].overhead, 12);
        assert_eq!(top.total(|u| *u == Unit::SO), 2);
    }

    #[test]
    fn jsonl_round_trip() {
        let mut l = CostLedger::new();
        l.record("a", Unit::BO(5.5), 1, 2);
        l.record("b", Unit::LllResample, 17, 1);
        l.record("c", Unit::RS32, 1, 1);
        let text = l.to_jsonl();
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("\"LLL_RESAMPLE\""));
        assert_eq!(CostLedger::from_jsonl(&text).unwrap(), l);
    }

    #[test]
    #[should_panic]
    fn zero_count_rejected() {
        CostLedger::new().record("x", Unit::SO, 0, 1);
    }
}
