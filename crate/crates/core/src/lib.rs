//! Exact computations with constructible sheaves on the real line and the
//! circle, presented as zigzag quiver representations over ℚ.

pub mod circlesheaf;
pub mod exactalg;
pub mod linesheaf;
pub mod microlocal;
pub mod quiverrep;
