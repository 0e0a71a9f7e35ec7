//! Red/blue splittings of typed multigraphs.

mod exact;
mod halving;
mod lemma31;

pub use exact::{eps_split, exact_split, RoundMode, SplitError};
pub use halving::{
    balanced_split, balanced_split_traced, ceil_log2, halve_step, halve_step_outdeg2, halve_with,
    HalvingSchedule, SplitTrace,
};
pub use lemma31::{lemma31_split, lemma31_with_clusters, Cluster, ClusterDecomposition};
