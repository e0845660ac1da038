//! Sheaves on the circle ℝ/ℤ in canonical form: pushforwards of bounded
//! intervals along `e: ℝ → ℝ/ℤ` and Jordan-block local systems.

mod ops;
mod types;

pub use ops::{
    assemble_circle, assemble_circle_layout, assemble_circle_on, cohomology_circle,
    decompose_circle, default_points, dual_circle, end_algebra, from_circle_summand,
    local_system_on, pullback_window, split_wrapped, ss_circle, tensor_circle,
    verdier_dual_circle, wrapped_covectors, CircleError,
};
pub use types::{
    CirclePiece, CircleSheaf, JordanBlock, LocalSummand, WrappedInterval, WrappedSummand,
};
