use super::{check_sorted, Arrow, LineQuiverRep, QuiverData, QuiverRep, RepError};
use crate::exactalg::{Matrix, Rational};
use crate::linesheaf::Interval;

/// A constructible sheaf on the circle ℝ/ℤ as a representation of the cyclic
/// zigzag quiver.
///
/// Vertex `2j` is the marked point `x_j`, vertex `2j+1` the arc from `x_j` to
/// the next marked point (the last arc wraps around to `x_0 + 1`). Point `j`
/// has a left arrow into arc `j−1 (mod m)` and a right arrow into arc `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleQuiverRep {
    points: Vec<Rational>,
    stalks: Vec<usize>,
    arcs: Vec<usize>,
    arrows: Vec<Matrix>,
}

/// How a window of ℝ sees the pulled-back sheaf outside itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowMode {
    /// The restriction to the open window, identified with ℝ.
    Restrict,
    /// Extension by zero of the restriction; window ends become marked
    /// points with zero stalk.
    ExtendByZero,
}

/// A lift `x_j + turn` of a marked point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lift {
    pub point: usize,
    pub turn: i64,
}

impl CircleQuiverRep {
    pub fn new(
        points: Vec<Rational>,
        stalks: Vec<usize>,
        arcs: Vec<usize>,
        arrows: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        check_sorted(&points)?;
        let m = points.len();
        if m == 0 {
            return Err(RepError::ShapeMismatch("a circle rep needs a marked point".into()));
        }
        for p in &points {
            if p.is_negative() || p >= &Rational::one() {
                return Err(RepError::PointOutOfRange(p.clone()));
            }
        }
        if stalks.len() != m || arcs.len() != m || arrows.len() != 2 * m {
            return Err(RepError::ShapeMismatch(format!(
                "{m} points need {m} stalks, {m} arcs and {} arrows",
                2 * m
            )));
        }
        for j in 0..m {
            let want_l = (arcs[(j + m - 1) % m], stalks[j]);
            let want_r = (arcs[j], stalks[j]);
            if arrows[2 * j].shape() != want_l || arrows[2 * j + 1].shape() != want_r {
                return Err(RepError::ShapeMismatch(format!(
                    "arrows at point {} have shapes {:?}, {:?}; expected {want_l:?}, {want_r:?}",
                    points[j],
                    arrows[2 * j].shape(),
                    arrows[2 * j + 1].shape()
                )));
            }
        }
        Ok(CircleQuiverRep {
            points,
            stalks,
            arcs,
            arrows,
        })
    }

    /// The local system with monodromy `a`, on the single marked point 0.
    pub fn local_system(a: &Matrix) -> Result<Self, RepError> {
        let inv = a
            .inverse()
            .ok_or_else(|| RepError::ShapeMismatch("monodromy must be invertible".into()))?;
        let d = a.rows();
        CircleQuiverRep::new(
            vec![Rational::zero()],
            vec![d],
            vec![d],
            vec![inv, Matrix::identity(d)],
        )
    }

    pub fn zero(points: Vec<Rational>) -> Result<Self, RepError> {
        let m = points.len();
        CircleQuiverRep::new(points, vec![0; m], vec![0; m], vec![Matrix::zeros(0, 0); 2 * m])
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

    /// Restriction from point `j` into the arc on its left.
    pub fn left(&self, j: usize) -> &Matrix {
        &self.arrows[2 * j]
    }

    /// Restriction from point `j` into the arc on its right.
    pub fn right(&self, j: usize) -> &Matrix {
        &self.arrows[2 * j + 1]
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut d = Vec::with_capacity(2 * self.points.len());
        for j in 0..self.points.len() {
            d.push(self.stalks[j]);
            d.push(self.arcs[j]);
        }
        d
    }

    pub fn max_dim(&self) -> usize {
        self.dims().into_iter().max().unwrap_or(0)
    }

    /// Stalk dimension at a point of the circle given by any lift.
    pub fn stalk_dim_at(&self, x: &Rational) -> usize {
        let t = x.fract_pos();
        match self.points.binary_search(&t) {
            Ok(j) => self.stalks[j],
            Err(0) => self.arcs[self.points.len() - 1],
            Err(j) => self.arcs[j - 1],
        }
    }

    /// A rational point inside arc `j`, in `(x_j, x_{j+1})` (lifted past 1 for
    /// the last arc).
    pub fn arc_sample(&self, j: usize) -> Rational {
        let m = self.points.len();
        let a = &self.points[j];
        let b = if j + 1 < m {
            self.points[j + 1].clone()
        } else {
            &self.points[0] + &Rational::one()
        };
        (a + &b) / Rational::from(2)
    }

    /// True when every restriction map is an isomorphism.
    pub fn is_locally_constant(&self) -> bool {
        self.arrows.iter().all(Matrix::is_invertible)
    }

    /// Index of a marked point around which the sheaf is not locally constant.
    pub fn jump_point(&self) -> Option<usize> {
        (0..self.points.len())
            .find(|&j| !(self.left(j).is_invertible() && self.right(j).is_invertible()))
    }

    /// Monodromy on the stalk at `x_0`, following the positive orientation:
    /// `q_0⁻¹ p_{m−1} q_{m−1}⁻¹ ⋯ q_1⁻¹ p_0` with `p` the right and `q` the
    /// left arrows. `None` unless locally constant.
    pub fn monodromy(&self) -> Option<Matrix> {
        if !self.is_locally_constant() {
            return None;
        }
        let m = self.points.len();
        let mut acc = self.right(0).clone();
        for j in 1..m {
            acc = self.right(j).mul(&self.left(j).inverse()?).mul(&acc);
        }
        Some(self.left(0).inverse()?.mul(&acc))
    }

    /// `e_*(k_I)` for a bounded interval `I ⊂ ℝ` whose endpoints lie over
    /// marked points. Stalk bases are indexed by the lifts in `I`, in
    /// increasing order.
    pub fn from_lift(iv: &Interval, points: &[Rational]) -> Result<Self, RepError> {
        if !iv.is_bounded() {
            return Err(RepError::Unbounded);
        }
        let skel = CircleQuiverRep::zero(points.to_vec())?;
        for e in iv.finite_endpoints() {
            if points.binary_search(&e.fract_pos()).is_err() {
                return Err(RepError::EndpointNotMarked(e));
            }
        }
        let m = points.len();
        let pt_turns: Vec<Vec<i64>> = (0..m).map(|j| skel.turns_in(&points[j], iv)).collect();
        let arc_turns: Vec<Vec<i64>> = (0..m).map(|j| skel.turns_in(&skel.arc_sample(j), iv)).collect();
        let incidence = |rows: &[i64], cols: &[i64], shift: i64| {
            let mut mat = Matrix::zeros(rows.len(), cols.len());
            for (c, t) in cols.iter().enumerate() {
                if let Some(r) = rows.iter().position(|&u| u == t + shift) {
                    mat[(r, c)] = Rational::one();
                }
            }
            mat
        };
        let mut arrows = Vec::with_capacity(2 * m);
        for j in 0..m {
            // the arc left of lift (j, t) is arc (j−1, t), or (m−1, t−1) when j = 0
            let (left_arc, shift) = if j == 0 { (m - 1, -1) } else { (j - 1, 0) };
            arrows.push(incidence(&arc_turns[left_arc], &pt_turns[j], shift));
            arrows.push(incidence(&arc_turns[j], &pt_turns[j], 0));
        }
        CircleQuiverRep::new(
            points.to_vec(),
            pt_turns.iter().map(Vec::len).collect(),
            arc_turns.iter().map(Vec::len).collect(),
            arrows,
        )
    }

    fn turns_in(&self, x: &Rational, iv: &Interval) -> Vec<i64> {
        let lo = iv.lo().expect("bounded").floor();
        let hi = iv.hi().expect("bounded").ceil();
        let lo: i64 = i64::try_from(lo).expect("small interval") - 1;
        let hi: i64 = i64::try_from(hi).expect("small interval") + 1;
        (lo..=hi)
            .filter(|&t| iv.contains(&(x + &Rational::from(t))))
            .collect()
    }

    /// Lifts of marked points strictly inside `(lo, hi)`, in increasing order.
    pub fn window_lifts(&self, lo: &Rational, hi: &Rational) -> Vec<Lift> {
        let t0 = i64::try_from(lo.floor()).expect("small window") - 1;
        let t1 = i64::try_from(hi.ceil()).expect("small window") + 1;
        let mut out = Vec::new();
        for turn in t0..=t1 {
            for (point, p) in self.points.iter().enumerate() {
                let x = p + &Rational::from(turn);
                if lo < &x && &x < hi {
                    out.push(Lift { point, turn });
                }
            }
        }
        out
    }

    pub fn lift_value(&self, l: Lift) -> Rational {
        &self.points[l.point] + &Rational::from(l.turn)
    }

    /// Arc index on the left of marked point `j`.
    pub fn arc_before(&self, j: usize) -> usize {
        (j + self.points.len() - 1) % self.points.len()
    }

    /// Pullback along ℝ → S¹ to the open window `(lo, hi)`, presented on ℝ.
    ///
    /// In `Restrict` mode the marked points are the lifts inside the window.
    /// In `ExtendByZero` mode `lo` and `hi` are added as marked points with
    /// zero stalks and the outer arcs vanish.
    pub fn pull_back_window(&self, lo: &Rational, hi: &Rational, mode: WindowMode) -> LineQuiverRep {
        assert!(lo < hi, "empty window");
        let lifts = self.window_lifts(lo, hi);
        let first_arc = match lifts.first() {
            Some(l) => self.arc_before(l.point),
            None => {
                // the window sits inside one arc
                let mid = (lo + hi) / Rational::from(2);
                let t = mid.fract_pos();
                match self.points.binary_search(&t) {
                    Err(0) => self.points.len() - 1,
                    Err(j) => j - 1,
                    Ok(_) => unreachable!("window without lifts contains no marked point"),
                }
            }
        };
        let mut points = Vec::new();
        let mut stalks = Vec::new();
        let mut arcs = Vec::new();
        let mut arrows = Vec::new();
        let ebz = mode == WindowMode::ExtendByZero;
        if ebz {
            points.push(lo.clone());
            stalks.push(0);
            arcs.push(0);
            arrows.push(Matrix::zeros(0, 0));
            arrows.push(Matrix::zeros(self.arcs[first_arc], 0));
        }
        arcs.push(self.arcs[first_arc]);
        let mut last_arc = first_arc;
        for l in &lifts {
            points.push(self.lift_value(*l));
            stalks.push(self.stalks[l.point]);
            arcs.push(self.arcs[l.point]);
            arrows.push(self.left(l.point).clone());
            arrows.push(self.right(l.point).clone());
            last_arc = l.point;
        }
        if ebz {
            points.push(hi.clone());
            stalks.push(0);
            arcs.push(0);
            arrows.push(Matrix::zeros(self.arcs[last_arc], 0));
            arrows.push(Matrix::zeros(0, 0));
        }
        LineQuiverRep::new(points, stalks, arcs, arrows).expect("window data is consistent")
    }
}

impl QuiverRep for CircleQuiverRep {
    fn points(&self) -> &[Rational] {
        &self.points
    }

    fn quiver(&self) -> QuiverData {
        let m = self.points.len();
        let mut arrows = Vec::with_capacity(2 * m);
        for j in 0..m {
            arrows.push(Arrow {
                src: 2 * j,
                tgt: 2 * self.arc_before(j) + 1,
                map: self.arrows[2 * j].clone(),
            });
            arrows.push(Arrow {
                src: 2 * j,
                tgt: 2 * j + 1,
                map: self.arrows[2 * j + 1].clone(),
            });
        }
        QuiverData {
            dims: self.dims(),
            arrows,
        }
    }

    fn with_quiver(&self, data: QuiverData) -> Self {
        let m = self.points.len();
        assert_eq!(data.dims.len(), 2 * m);
        let stalks = (0..m).map(|j| data.dims[2 * j]).collect();
        let arcs = (0..m).map(|j| data.dims[2 * j + 1]).collect();
        let arrows = data.arrows.into_iter().map(|a| a.map).collect();
        CircleQuiverRep::new(self.points.clone(), stalks, arcs, arrows)
            .expect("quiver data matches the point set")
    }

    fn refine(&self, extra: &[Rational]) -> Result<Self, RepError> {
        let mut extra = extra.to_vec();
        extra.sort();
        check_sorted(&extra)?;
        for y in &extra {
            if y.is_negative() || y >= &Rational::one() {
                return Err(RepError::PointOutOfRange(y.clone()));
            }
            if self.points.binary_search(y).is_ok() {
                return Err(RepError::DuplicatePoint(y.clone()));
            }
        }
        let mut points = self.points.clone();
        points.extend(extra.iter().cloned());
        points.sort();
        let m_old = self.points.len();
        // old arc containing a non-marked point y of [0, 1)
        let old_arc = |y: &Rational| match self.points.binary_search(y) {
            Err(0) => m_old - 1,
            Err(j) => j - 1,
            Ok(_) => unreachable!(),
        };
        let mut stalks = Vec::new();
        let mut arcs = Vec::new();
        let mut arrows = Vec::new();
        for y in &points {
            match self.points.binary_search(y) {
                Ok(i) => {
                    stalks.push(self.stalks[i]);
                    arcs.push(self.arcs[i]);
                    arrows.push(self.arrows[2 * i].clone());
                    arrows.push(self.arrows[2 * i + 1].clone());
                }
                Err(_) => {
                    let d = self.arcs[old_arc(y)];
                    stalks.push(d);
                    arcs.push(d);
                    arrows.push(Matrix::identity(d));
                    arrows.push(Matrix::identity(d));
                }
            }
        }
        CircleQuiverRep::new(points, stalks, arcs, arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{jordan_block, q};

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    #[test]
    fn wrapped_stalk_counts_lifts() {
        let r = CircleQuiverRep::from_lift(&iv("[0,3/2)"), &[q(0, 1), q(1, 2)]).unwrap();
        assert_eq!(r.stalk_dim_at(&q(0, 1)), 2);
        assert_eq!(r.stalk_dim_at(&q(1, 2)), 1);
        assert_eq!(r.stalk_dim_at(&q(1, 4)), 2);
        assert_eq!(r.stalk_dim_at(&q(3, 4)), 1);
    }

    #[test]
    fn local_system_monodromy() {
        let a = jordan_block(&q(2, 1), 2);
        let r = CircleQuiverRep::local_system(&a).unwrap();
        assert_eq!(r.monodromy().unwrap(), a);
        let s = r.refine(&[q(1, 3), q(2, 3)]).unwrap();
        assert_eq!(s.monodromy().unwrap(), a);
    }

    #[test]
    fn refine_before_first_point() {
        let r = CircleQuiverRep::from_lift(&iv("(1/4,3/4)"), &[q(1, 4), q(3, 4)]).unwrap();
        let s = r.refine(&[q(0, 1), q(1, 2)]).unwrap();
        assert_eq!(
            s,
            CircleQuiverRep::from_lift(&iv("(1/4,3/4)"), &[q(0, 1), q(1, 4), q(1, 2), q(3, 4)])
                .unwrap()
        );
    }

    #[test]
    fn window_pullback_of_wrapped_interval() {
        let r = CircleQuiverRep::from_lift(&iv("[0,1/4]"), &[q(0, 1), q(1, 4)]).unwrap();
        let w = r.pull_back_window(&q(-1, 2), &q(3, 2), WindowMode::Restrict);
        assert_eq!(w.points(), &[q(0, 1), q(1, 4), q(1, 1), q(5, 4)]);
        assert_eq!(w.dims(), vec![0, 1, 1, 1, 0, 1, 1, 1, 0]);
        let z = r.pull_back_window(&q(-1, 2), &q(3, 2), WindowMode::ExtendByZero);
        assert_eq!(z.points().len(), 6);
        assert_eq!(z.dims()[0..3], [0, 0, 0]);
    }
}
