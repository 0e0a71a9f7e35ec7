//! Centralized stand-ins for the distributed black boxes (sinkless orientation,
//! balanced orientation, maximal matching, ruling sets).
//!
//! Each call appends one entry to a [`CostLedger`] so pipelines keep a record of
//! which primitive they would have invoked, how often, and under what simulation
//! overhead.

mod ledger;
mod orientation;
mod symmetry;

pub use ledger::{CostLedger, LedgerEntry, Unit};
pub use orientation::{
    balanced_orientation, eps_balanced_orientation, outdeg2_orientation, sinkless_orientation,
};
pub use symmetry::{maximal_matching, ruling_set_32};

pub(crate) use orientation::find_cycle;
