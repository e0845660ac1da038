//! Zigzag and cyclic zigzag quiver representations, the concrete model of
//! constructible sheaves on ℝ and on the circle ℝ/ℤ.
//!
//! Both models store, for marked points `x_0 < … < x_{n-1}`, the stalk at
//! every marked point, the generic stalk on every open arc between them, and
//! two restriction matrices per marked point (into the arc on its left and
//! the arc on its right). Arrows are listed as `[left_0, right_0, left_1, …]`.

mod circle;
mod json;
mod line;
mod ops;

pub use circle::{CircleQuiverRep, Lift, WindowMode};
pub use json::{RepJson, RepKind, Spaces};
pub use line::LineQuiverRep;
pub use ops::{
    cokernel, common_refinement, direct_sum, hom_space_basis, hom_space_dim, image, is_isomorphism,
    kernel, tensor,
};

use crate::exactalg::{Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("duplicate marked point {0}")]
    DuplicatePoint(Rational),
    #[error("marked points must be strictly increasing")]
    PointsNotSorted,
    #[error("marked point {0} outside [0, 1)")]
    PointOutOfRange(Rational),
    #[error("endpoint {0} is not a marked point")]
    EndpointNotMarked(Rational),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("interval is not bounded")]
    Unbounded,
}

/// An arrow `src → tgt` of the underlying quiver with its matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub map: Matrix,
}

/// Topology-free view of a representation: vertex dimensions and arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverData {
    pub dims: Vec<usize>,
    pub arrows: Vec<Arrow>,
}

/// Common interface of the line and circle models.
pub trait QuiverRep: Clone + PartialEq + std::fmt::Debug {
    fn points(&self) -> &[Rational];

    /// Vertex dimensions and arrows in a fixed vertex order.
    fn quiver(&self) -> QuiverData;

    /// Same marked points, new vertex spaces and arrow matrices. The arrow
    /// order of `data` must match `quiver()`.
    fn with_quiver(&self, data: QuiverData) -> Self;

    /// Isomorphic representation on a finer set of marked points.
    fn refine(&self, extra: &[Rational]) -> Result<Self, RepError>;

    fn vertex_count(&self) -> usize {
        self.quiver().dims.len()
    }

    fn total_dim(&self) -> usize {
        self.quiver().dims.iter().sum()
    }

    fn zero_like(&self) -> Self {
        let q = self.quiver();
        let arrows = q
            .arrows
            .iter()
            .map(|a| Arrow {
                src: a.src,
                tgt: a.tgt,
                map: Matrix::zeros(0, 0),
            })
            .collect();
        self.with_quiver(QuiverData {
            dims: vec![0; q.dims.len()],
            arrows,
        })
    }
}

/// A morphism of representations on the same marked points, one matrix per
/// vertex. Construction checks every commuting square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism<R: QuiverRep> {
    source: R,
    target: R,
    maps: Vec<Matrix>,
}

impl<R: QuiverRep> RepMorphism<R> {
    pub fn new(source: R, target: R, maps: Vec<Matrix>) -> Result<Self, RepError> {
        if source.points() != target.points() {
            return Err(RepError::ShapeMismatch(
                "source and target have different marked points".into(),
            ));
        }
        let qs = source.quiver();
        let qt = target.quiver();
        if maps.len() != qs.dims.len() {
            return Err(RepError::ShapeMismatch(format!(
                "{} vertex maps for {} vertices",
                maps.len(),
                qs.dims.len()
            )));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.shape() != (qt.dims[v], qs.dims[v]) {
                return Err(RepError::ShapeMismatch(format!(
                    "vertex {v}: map is {:?}, expected {:?}",
                    m.shape(),
                    (qt.dims[v], qs.dims[v])
                )));
            }
        }
        for (k, (a, b)) in qs.arrows.iter().zip(&qt.arrows).enumerate() {
            let lhs = maps[a.tgt].mul(&a.map);
            let rhs = b.map.mul(&maps[a.src]);
            if lhs != rhs {
                return Err(RepError::InvalidMorphism(format!(
                    "square at arrow {k} does not commute"
                )));
            }
        }
        Ok(RepMorphism {
            source,
            target,
            maps,
        })
    }

    pub fn identity(rep: &R) -> Self {
        let maps = rep.quiver().dims.iter().map(|&d| Matrix::identity(d)).collect();
        RepMorphism {
            source: rep.clone(),
            target: rep.clone(),
            maps,
        }
    }

    pub fn zero(source: &R, target: &R) -> Result<Self, RepError> {
        let ds = source.quiver().dims;
        let dt = target.quiver().dims;
        if ds.len() != dt.len() {
            return Err(RepError::ShapeMismatch("vertex counts differ".into()));
        }
        let maps = ds.iter().zip(&dt).map(|(&s, &t)| Matrix::zeros(t, s)).collect();
        RepMorphism::new(source.clone(), target.clone(), maps)
    }

    pub fn source(&self) -> &R {
        &self.source
    }

    pub fn target(&self) -> &R {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn compose(&self, after: &RepMorphism<R>) -> Result<RepMorphism<R>, RepError> {
        if after.source != self.target {
            return Err(RepError::ShapeMismatch("composition of unrelated morphisms".into()));
        }
        let maps = self
            .maps
            .iter()
            .zip(&after.maps)
            .map(|(f, g)| g.mul(f))
            .collect();
        Ok(RepMorphism {
            source: self.source.clone(),
            target: after.target.clone(),
            maps,
        })
    }

    pub fn scale(&self, s: &Rational) -> RepMorphism<R> {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn add(&self, other: &RepMorphism<R>) -> Result<RepMorphism<R>, RepError> {
        if self.source != other.source || self.target != other.target {
            return Err(RepError::ShapeMismatch("sum of unrelated morphisms".into()));
        }
        Ok(RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect(),
        })
    }
}

/// Strictly increasing check shared by both models.
pub(crate) fn check_sorted(points: &[Rational]) -> Result<(), RepError> {
    for w in points.windows(2) {
        if w[0] == w[1] {
            return Err(RepError::DuplicatePoint(w[0].clone()));
        }
        if w[0] > w[1] {
            return Err(RepError::PointsNotSorted);
        }
    }
    Ok(())
}
