use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::subroutines::{CostLedger, Unit};
use crate::verify::Verdict;

pub fn digest_hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(64);
    for b in Sha256::digest(bytes).iter() {
        let _ = write!(s, "{b:02x}");
    }
    s
}

/// Totals per primitive; `rounds` weighs each entry by its overhead.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LedgerSummary {
    pub entries: usize,
    pub so: u64,
    pub bo: u64,
    pub mm: u64,
    pub rs32: u64,
    pub lll_resample: u64,
    pub weighted: u64,
}

impl LedgerSummary {
    pub fn of(l: &CostLedger) -> Self {
        let mut s = LedgerSummary {
            entries: l.len(),
            ..Default::default()
        };
        for e in l.entries() {
            let slot = match e.unit {
                Unit::SO => &mut s.so,
                Unit::BO(_) => &mut s.bo,
                Unit::MM => &mut s.mm,
                Unit::RS32 => &mut s.rs32,
                Unit::LllResample => &mut s.lll_resample,
            };
            *slot += e.count;
            s.weighted += e.count * e.overhead;
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictSummary {
    pub pass: bool,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_sha256: String,
    pub output_sha256: String,
    pub seed: u64,
    pub wall_ms: f64,
    pub ledger: LedgerSummary,
    /// `None` with `--no-verify`.
    pub verdict: Option<VerdictSummary>,
    pub extra: serde_json::Value,
}

impl RunReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        command: String,
        input: &[u8],
        output: &[u8],
        seed: u64,
        wall: Duration,
        ledger: &CostLedger,
        verdict: Option<&Verdict>,
        extra: serde_json::Value,
    ) -> Self {
        RunReport {
            command,
            input_sha256: digest_hex(input),
            output_sha256: digest_hex(output),
            seed,
            wall_ms: wall.as_secs_f64() * 1e3,
            ledger: LedgerSummary::of(ledger),
            verdict: verdict.map(|v| VerdictSummary {
                pass: v.pass,
                violations: v.violations.len(),
            }),
            extra,
        }
    }
}
