//! Microlocal data of canonical forms: microlocal ranks and shifts,
//! μ-scalars of endomorphisms, linked and conjugate covectors, the
//! invariants `H^i_{α,r}` and the Mayer-Vietoris twist.

mod endo;
mod rank;
mod twist;

pub use endo::{
    conjugate_point, f_linked_exact, f_linked_exact_circle, f_linked_interval_criterion,
    h_invariant, mu_scalar, Assembled, EndoElement,
};
pub use rank::{microlocal_rank, owners, shift_at, shift_difference, MicroRank, Owner, SheafRef};
pub use twist::{cech_class, m_gamma, mv_twist, AutSpec, CoverSpec, PathStep};

use crate::circlesheaf::CircleError;
use crate::linesheaf::{Covector, LineError};
use crate::quiverrep::RepError;

#[derive(Debug, thiserror::Error)]
pub enum MicroError {
    #[error("not simple at {covector}: microlocal rank {rank}")]
    NotSimple { covector: Covector, rank: usize },
    #[error("covector {0} does not lie over the window")]
    OutsideWindow(Covector),
    #[error("automorphism scalars must be nonzero")]
    NonInvertibleAut,
    #[error("sheaf is not concentrated in one degree")]
    MixedDegrees,
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Line(#[from] LineError),
    #[error(transparent)]
    Circle(#[from] CircleError),
}

#[cfg(test)]
mod tests;
