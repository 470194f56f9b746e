//! Exhaustive search engines and counting-formula verifiers reproducing the
//! desk-scale classifications exactly.

mod counting;
mod hyperovals;
mod mineven;
mod theorem;

pub use counting::{
    count_conics, count_conics_by_5_point_dedup, count_conics_by_form_enumeration,
    count_hypercylinders_by_construction, count_min_weight_codewords, delta,
};
pub use hyperovals::enumerate_hyperovals;
pub use mineven::{enumerate_min_even_sets, verify_bound_attainment, BoundReport, MinEvenReport};
pub use theorem::{verify_q2_closure, verify_small_weight_theorem, TheoremReport};

use crate::codes::CodeError;
use crate::projgeom::PointSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("classification out of budget: {0}")]
    ClassificationOutOfBudget(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Output of an exhaustive search: exact count, visited node count, and an
/// optional certificate list (sorted, so reports are deterministic for
/// fixed parameters independent of the worker count).
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub kind: &'static str,
    pub params: Vec<(&'static str, u64)>,
    pub count: u64,
    pub nodes: u64,
    pub certificates: Option<Vec<PointSet>>,
}

impl ClassificationReport {
    pub fn sorted_certificates(mut certs: Vec<PointSet>) -> Vec<PointSet> {
        certs.sort_by_cached_key(|s| s.to_indices());
        certs
    }
}
