use super::{check_sorted, Arrow, QuiverData, QuiverRep, RepError};
use crate::exactalg::{Matrix, Rational};
use crate::linesheaf::Interval;

/// A constructible sheaf on ℝ as a representation of the zigzag quiver
/// `V″_0 ← V′_0 → V″_1 ← V′_1 → … → V″_n`.
///
/// Vertex `2j` is the arc `(x_{j-1}, x_j)` (with `x_{-1} = −∞`, `x_n = +∞`),
/// vertex `2j+1` is the marked point `x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineQuiverRep {
    points: Vec<Rational>,
    stalks: Vec<usize>,
    arcs: Vec<usize>,
    arrows: Vec<Matrix>,
}

impl LineQuiverRep {
    pub fn new(
        points: Vec<Rational>,
        stalks: Vec<usize>,
        arcs: Vec<usize>,
        arrows: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        check_sorted(&points)?;
        let n = points.len();
        if stalks.len() != n || arcs.len() != n + 1 || arrows.len() != 2 * n {
            return Err(RepError::ShapeMismatch(format!(
                "{n} points need {n} stalks, {} arcs and {} arrows",
                n + 1,
                2 * n
            )));
        }
        for i in 0..n {
            let want_l = (arcs[i], stalks[i]);
            let want_r = (arcs[i + 1], stalks[i]);
            if arrows[2 * i].shape() != want_l || arrows[2 * i + 1].shape() != want_r {
                return Err(RepError::ShapeMismatch(format!(
                    "arrows at point {} have shapes {:?}, {:?}; expected {want_l:?}, {want_r:?}",
                    points[i],
                    arrows[2 * i].shape(),
                    arrows[2 * i + 1].shape()
                )));
            }
        }
        Ok(LineQuiverRep {
            points,
            stalks,
            arcs,
            arrows,
        })
    }

    /// The constant sheaf of rank `dim`, with no marked points.
    pub fn constant(dim: usize) -> Self {
        LineQuiverRep {
            points: vec![],
            stalks: vec![],
            arcs: vec![dim],
            arrows: vec![],
        }
    }

    pub fn zero(points: Vec<Rational>) -> Result<Self, RepError> {
        let n = points.len();
        LineQuiverRep::new(
            points,
            vec![0; n],
            vec![0; n + 1],
            vec![Matrix::zeros(0, 0); 2 * n],
        )
    }

    pub fn stalks(&self) -> &[usize] {
        &self.stalks
    }

    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    pub fn arrows(&self) -> &[Matrix] {
        &self.arrows
    }

    pub fn left(&self, i: usize) -> &Matrix {
        &self.arrows[2 * i]
    }

    pub fn right(&self, i: usize) -> &Matrix {
        &self.arrows[2 * i + 1]
    }

    /// Vertex dimensions in zigzag order.
    pub fn dims(&self) -> Vec<usize> {
        let mut d = Vec::with_capacity(2 * self.points.len() + 1);
        for i in 0..self.points.len() {
            d.push(self.arcs[i]);
            d.push(self.stalks[i]);
        }
        d.push(self.arcs[self.points.len()]);
        d
    }

    /// Stalk dimension at an arbitrary rational point.
    pub fn stalk_dim_at(&self, x: &Rational) -> usize {
        match self.points.binary_search(x) {
            Ok(i) => self.stalks[i],
            Err(j) => self.arcs[j],
        }
    }

    /// A rational point inside arc `j`.
    pub fn arc_sample(&self, j: usize) -> Rational {
        arc_sample(&self.points, j)
    }

    /// The interval covered by the vertex range `[s, e]` of the zigzag.
    pub fn vertex_range_interval(&self, s: usize, e: usize) -> Interval {
        let p = &self.points;
        let (lo, lo_closed) = if s % 2 == 0 {
            let j = s / 2;
            (if j == 0 { None } else { Some(p[j - 1].clone()) }, false)
        } else {
            (Some(p[s / 2].clone()), true)
        };
        let (hi, hi_closed) = if e % 2 == 0 {
            let j = e / 2;
            (p.get(j).cloned(), false)
        } else {
            (Some(p[e / 2].clone()), true)
        };
        Interval::new(lo, lo_closed, hi, hi_closed).expect("vertex range is a nonempty interval")
    }

    /// Vertex range `[s, e]` on which `k_I` is nonzero, if `I` is a union of
    /// cells of this stratification.
    pub fn interval_vertex_range(&self, iv: &Interval) -> Result<(usize, usize), RepError> {
        for e in iv.finite_endpoints() {
            if self.points.binary_search(&e).is_err() {
                return Err(RepError::EndpointNotMarked(e));
            }
        }
        let inside: Vec<usize> = (0..2 * self.points.len() + 1)
            .filter(|&v| iv.contains(&self.vertex_sample(v)))
            .collect();
        Ok((inside[0], *inside.last().unwrap()))
    }

    fn vertex_sample(&self, v: usize) -> Rational {
        if v % 2 == 1 {
            self.points[v / 2].clone()
        } else {
            self.arc_sample(v / 2)
        }
    }

    /// The indecomposable `k_I` on these marked points.
    pub fn from_interval(iv: &Interval, points: &[Rational]) -> Result<Self, RepError> {
        let skeleton = LineQuiverRep::zero(points.to_vec())?;
        let (s, e) = skeleton.interval_vertex_range(iv)?;
        let n = points.len();
        let on = |v: usize| usize::from(s <= v && v <= e);
        let stalks: Vec<usize> = (0..n).map(|i| on(2 * i + 1)).collect();
        let arcs: Vec<usize> = (0..=n).map(|j| on(2 * j)).collect();
        let mut arrows = Vec::with_capacity(2 * n);
        for i in 0..n {
            arrows.push(unit_or_zero(arcs[i], stalks[i]));
            arrows.push(unit_or_zero(arcs[i + 1], stalks[i]));
        }
        LineQuiverRep::new(points.to_vec(), stalks, arcs, arrows)
    }

    /// Tits form `Σ d_v² − Σ_{arrows} d_s d_t` of the dimension vector.
    pub fn tits_form(dims: &[usize]) -> i64 {
        let sq: i64 = dims.iter().map(|&d| (d * d) as i64).sum();
        let arr: i64 = dims.windows(2).map(|w| (w[0] * w[1]) as i64).sum();
        sq - arr
    }
}

fn unit_or_zero(rows: usize, cols: usize) -> Matrix {
    if rows == 1 && cols == 1 {
        Matrix::identity(1)
    } else {
        Matrix::zeros(rows, cols)
    }
}

pub(crate) fn arc_sample(points: &[Rational], j: usize) -> Rational {
    let one = Rational::one();
    match (j.checked_sub(1).map(|i| &points[i]), points.get(j)) {
        (None, None) => Rational::zero(),
        (Some(a), None) => a + &one,
        (None, Some(b)) => b - &one,
        (Some(a), Some(b)) => (a + b) / Rational::from(2),
    }
}

impl QuiverRep for LineQuiverRep {
    fn points(&self) -> &[Rational] {
        &self.points
    }

    fn quiver(&self) -> QuiverData {
        let n = self.points.len();
        let mut arrows = Vec::with_capacity(2 * n);
        for i in 0..n {
            arrows.push(Arrow {
                src: 2 * i + 1,
                tgt: 2 * i,
                map: self.arrows[2 * i].clone(),
            });
            arrows.push(Arrow {
                src: 2 * i + 1,
                tgt: 2 * i + 2,
                map: self.arrows[2 * i + 1].clone(),
            });
        }
        QuiverData {
            dims: self.dims(),
            arrows,
        }
    }

    fn with_quiver(&self, data: QuiverData) -> Self {
        let n = self.points.len();
        assert_eq!(data.dims.len(), 2 * n + 1);
        let stalks = (0..n).map(|i| data.dims[2 * i + 1]).collect();
        let arcs = (0..=n).map(|j| data.dims[2 * j]).collect();
        let arrows = data.arrows.into_iter().map(|a| a.map).collect();
        LineQuiverRep::new(self.points.clone(), stalks, arcs, arrows)
            .expect("quiver data matches the point set")
    }

    fn refine(&self, extra: &[Rational]) -> Result<Self, RepError> {
        let mut extra = extra.to_vec();
        extra.sort();
        check_sorted(&extra)?;
        for y in &extra {
            if self.points.binary_search(y).is_ok() {
                return Err(RepError::DuplicatePoint(y.clone()));
            }
        }
        let mut points = self.points.clone();
        points.extend(extra.iter().cloned());
        points.sort();
        let n = points.len();
        // old arc index containing a point strictly after old point index j-1
        let old_arc_at = |y: &Rational| match self.points.binary_search(y) {
            Ok(_) => None,
            Err(j) => Some(j),
        };
        let mut stalks = Vec::with_capacity(n);
        let mut arcs = vec![self.arcs[0]];
        let mut arrows = Vec::with_capacity(2 * n);
        for (k, y) in points.iter().enumerate() {
            let after = arc_sample(&points, k + 1);
            let arc_after = old_arc_at(&after).expect("sample is not a marked point");
            arcs.push(self.arcs[arc_after]);
            match self.points.binary_search(y) {
                Ok(i) => {
                    stalks.push(self.stalks[i]);
                    arrows.push(self.arrows[2 * i].clone());
                    arrows.push(self.arrows[2 * i + 1].clone());
                }
                Err(j) => {
                    let d = self.arcs[j];
                    stalks.push(d);
                    arrows.push(Matrix::identity(d));
                    arrows.push(Matrix::identity(d));
                }
            }
        }
        LineQuiverRep::new(points, stalks, arcs, arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    #[test]
    fn closed_interval_rep() {
        let r = LineQuiverRep::from_interval(&iv("[0,1]"), &[q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(r.dims(), vec![0, 1, 1, 1, 0]);
        assert_eq!(r.right(0), &Matrix::identity(1));
        assert_eq!(r.left(1), &Matrix::identity(1));
    }

    #[test]
    fn skyscraper_rep() {
        let r = LineQuiverRep::from_interval(&iv("{0}"), &[q(0, 1)]).unwrap();
        assert_eq!(r.dims(), vec![0, 1, 0]);
    }

    #[test]
    fn endpoint_must_be_marked() {
        assert_eq!(
            LineQuiverRep::from_interval(&iv("[0,1]"), &[q(0, 1)]),
            Err(RepError::EndpointNotMarked(q(1, 1)))
        );
    }

    #[test]
    fn refine_constant() {
        let r = LineQuiverRep::constant(2).refine(&[q(0, 1)]).unwrap();
        assert_eq!(r.dims(), vec![2, 2, 2]);
        assert!(r.left(0).is_identity() && r.right(0).is_identity());
    }

    #[test]
    fn refine_half_open() {
        let pts = [q(0, 1), q(1, 1)];
        let r = LineQuiverRep::from_interval(&iv("[0,1)"), &pts).unwrap();
        let s = r.refine(&[q(1, 2)]).unwrap();
        assert_eq!(s.dims(), vec![0, 1, 1, 1, 1, 0, 0]);
        assert_eq!(
            s,
            LineQuiverRep::from_interval(&iv("[0,1)"), &[q(0, 1), q(1, 2), q(1, 1)]).unwrap()
        );
        assert!(r.refine(&[q(0, 1)]).is_err());
    }

    #[test]
    fn vertex_ranges() {
        let r = LineQuiverRep::zero(vec![q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(r.vertex_range_interval(0, 4), Interval::real_line());
        assert_eq!(r.vertex_range_interval(1, 2), iv("[0,1)"));
        assert_eq!(r.vertex_range_interval(2, 3), iv("(0,1]"));
        assert_eq!(r.vertex_range_interval(3, 4), iv("[1,+inf)"));
        assert_eq!(r.vertex_range_interval(1, 1), iv("{0}"));
        assert_eq!(r.interval_vertex_range(&iv("(0,+inf)")).unwrap(), (2, 4));
    }

    #[test]
    fn tits_form_values() {
        assert_eq!(LineQuiverRep::tits_form(&[0, 1, 1, 1, 0]), 1);
        assert_eq!(LineQuiverRep::tits_form(&[1, 1, 0, 1, 1]), 2);
        assert_eq!(LineQuiverRep::tits_form(&[0, 0, 0, 0, 0]), 0);
    }
}
