//! Shared inputs for the criterion benchmarks in `benches/`.

use cigon_core::hilbert::CompleteIntersectionSpec;
use cigon_core::neffeas::InductionTarget;

/// A threefold of type (24, 30) and a twist large enough to exercise pruning.
pub fn hilbert_case() -> (CompleteIntersectionSpec, i64) {
    (CompleteIntersectionSpec::new(3, vec![24, 30]).expect("valid spec"), 40)
}

pub fn codim2_replay() -> InductionTarget {
    InductionTarget::Codim2 { n: 2, a: 24, b: 30 }
}

pub fn surface_replay() -> InductionTarget {
    InductionTarget::Surface {
        e: 3,
        degrees: vec![24 * 11, 24 * 13, 600],
    }
}
