//! Sheaves on ℝ in canonical form: graded barcodes of intervals, with the
//! interval-level rules for duality, tensor products, Hom and cohomology.

mod covector;
mod decompose;
mod interval;
mod sheaf;

pub use covector::{merge_covectors, Covector, Sign};
pub use decompose::{bar_basis_at, bar_interval, decompose_line, decompose_line_bars, Bar};
pub use interval::{Interval, IntervalError};
pub use sheaf::{
    assemble_line, assemble_line_layout, assemble_line_on, autodual_structure, cohomology_line,
    dual_line, hom_dim_line, interval_cohomology_degree, interval_owns, ss_line, sum_with_layout,
    tensor_line, verdier_dual_line, GradedDims, LineError, LineSheaf, LineSummand, SumLayout,
};
pub(crate) use sheaf::interval_covectors;

#[cfg(test)]
mod tests;
