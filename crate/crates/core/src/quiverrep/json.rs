use serde::{Deserialize, Serialize};

use super::{CircleQuiverRep, LineQuiverRep, QuiverRep, RepError};
use crate::exactalg::{Matrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Line,
    Circle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spaces {
    pub stalks: Vec<usize>,
    pub arcs: Vec<usize>,
}

/// File form of a quiver representation. Arrows are listed as
/// `[left_0, right_0, left_1, …]`, each as a list of rows; the column count
/// is the stalk dimension at the arrow's point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub kind: RepKind,
    pub points: Vec<Rational>,
    pub spaces: Spaces,
    pub arrows: Vec<Vec<Vec<Rational>>>,
}

fn rows_of(m: &Matrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

impl RepJson {
    pub fn from_line(r: &LineQuiverRep) -> Self {
        RepJson {
            kind: RepKind::Line,
            points: r.points().to_vec(),
            spaces: Spaces {
                stalks: r.stalks().to_vec(),
                arcs: r.arcs().to_vec(),
            },
            arrows: r.arrows().iter().map(rows_of).collect(),
        }
    }

    pub fn from_circle(r: &CircleQuiverRep) -> Self {
        RepJson {
            kind: RepKind::Circle,
            points: r.points().to_vec(),
            spaces: Spaces {
                stalks: r.stalks().to_vec(),
                arcs: r.arcs().to_vec(),
            },
            arrows: r.arrows().iter().map(rows_of).collect(),
        }
    }

    fn matrices(&self) -> Result<Vec<Matrix>, RepError> {
        if self.arrows.len() != 2 * self.spaces.stalks.len() {
            return Err(RepError::ShapeMismatch(format!(
                "{} arrows for {} points",
                self.arrows.len(),
                self.spaces.stalks.len()
            )));
        }
        self.arrows
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                let cols = self.spaces.stalks[k / 2];
                if let Some(i) = rows.iter().position(|r| r.len() != cols) {
                    return Err(RepError::ShapeMismatch(format!(
                        "arrow {k}, row {i}: expected {cols} entries"
                    )));
                }
                Ok(Matrix::from_rows(rows.clone(), cols))
            })
            .collect()
    }

    pub fn to_line(&self) -> Result<LineQuiverRep, RepError> {
        if self.kind != RepKind::Line {
            return Err(RepError::ShapeMismatch("expected a line representation".into()));
        }
        LineQuiverRep::new(
            self.points.clone(),
            self.spaces.stalks.clone(),
            self.spaces.arcs.clone(),
            self.matrices()?,
        )
    }

    pub fn to_circle(&self) -> Result<CircleQuiverRep, RepError> {
        if self.kind != RepKind::Circle {
            return Err(RepError::ShapeMismatch("expected a circle representation".into()));
        }
        CircleQuiverRep::new(
            self.points.clone(),
            self.spaces.stalks.clone(),
            self.spaces.arcs.clone(),
            self.matrices()?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::linesheaf::Interval;

    #[test]
    fn line_round_trip() {
        let iv: Interval = "[0,1)".parse().unwrap();
        let r = LineQuiverRep::from_interval(&iv, &[q(0, 1), q(1, 2), q(1, 1)]).unwrap();
        let j = RepJson::from_line(&r);
        let txt = serde_json::to_string(&j).unwrap();
        let back: RepJson = serde_json::from_str(&txt).unwrap();
        assert_eq!(back.to_line().unwrap(), r);
        assert!(back.to_circle().is_err());
    }

    #[test]
    fn circle_round_trip() {
        let a = Matrix::from_i64_rows(&[&[2, 1], &[0, 2]]);
        let r = CircleQuiverRep::local_system(&a).unwrap();
        let txt = serde_json::to_string(&RepJson::from_circle(&r)).unwrap();
        let back: RepJson = serde_json::from_str(&txt).unwrap();
        assert_eq!(back.to_circle().unwrap(), r);
    }

    #[test]
    fn ragged_rows_rejected() {
        let txt = r#"{"kind":"line","points":["0"],"spaces":{"stalks":[1],"arcs":[1,1]},
            "arrows":[[["1","0"]],[["1"]]]}"#;
        let j: RepJson = serde_json::from_str(txt).unwrap();
        assert!(j.to_line().is_err());
    }

    #[test]
    fn matrix_serde_checks_shape() {
        assert!(serde_json::from_str::<Matrix>(r#"{"rows":1,"cols":2,"data":["1"]}"#).is_err());
        let m = Matrix::from_i64_rows(&[&[1, 2]]);
        let back: Matrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
