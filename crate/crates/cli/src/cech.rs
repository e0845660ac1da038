//! Cellular cochain oracle. A constructible sheaf is recorded as a stalk per
//! cell (marked points and the open arcs between them) and a generization map
//! from every point into each adjacent arc; cohomology is that of the
//! two-term complex `⊕_cells F(σ) → ⊕_{(v, e)} F(e)`, `s ↦ s_e − ρ_{ve} s_v`.
//!
//! Nothing here consults the closed-form cohomology tables of `shv-core`.

use shv_core::exactalg::{Matrix, Rational};
use shv_core::quiverrep::{CircleQuiverRep, LineQuiverRep, QuiverRep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CechError {
    #[error("inconsistent model: {0}")]
    InconsistentModel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Vertex,
    Edge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub kind: CellKind,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generization {
    pub vertex: usize,
    pub edge: usize,
    pub map: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularSheafModel {
    cells: Vec<Cell>,
    maps: Vec<Generization>,
}

impl CellularSheafModel {
    pub fn new(cells: Vec<Cell>, maps: Vec<Generization>) -> Result<Self, CechError> {
        for (k, g) in maps.iter().enumerate() {
            let (v, e) = match (cells.get(g.vertex), cells.get(g.edge)) {
                (Some(v), Some(e)) => (v, e),
                _ => return Err(CechError::InconsistentModel(format!("map {k} names a missing cell"))),
            };
            if v.kind != CellKind::Vertex || e.kind != CellKind::Edge {
                return Err(CechError::InconsistentModel(format!(
                    "map {k} must go from a vertex to an edge"
                )));
            }
            if g.map.shape() != (e.dim, v.dim) {
                return Err(CechError::InconsistentModel(format!(
                    "map {k} has shape {:?}, cells need {:?}",
                    g.map.shape(),
                    (e.dim, v.dim)
                )));
            }
        }
        Ok(CellularSheafModel { cells, maps })
    }

    /// `vertex_parity` is the parity of the quiver vertices that are points.
    fn from_quiver<R: QuiverRep>(rep: &R, vertex_parity: usize) -> Result<Self, CechError> {
        let q = rep.quiver();
        let cells = q
            .dims
            .iter()
            .enumerate()
            .map(|(v, &dim)| Cell {
                kind: if v % 2 == vertex_parity { CellKind::Vertex } else { CellKind::Edge },
                dim,
            })
            .collect();
        let maps = q
            .arrows
            .into_iter()
            .map(|a| Generization {
                vertex: a.src,
                edge: a.tgt,
                map: a.map,
            })
            .collect();
        Self::new(cells, maps)
    }

    /// Line model: ℝ cut at the marked points, outer edges unbounded.
    pub fn from_line(rep: &LineQuiverRep) -> Result<Self, CechError> {
        Self::from_quiver(rep, 1)
    }

    /// Circle model: the marked points and the arcs after them.
    pub fn from_circle(rep: &CircleQuiverRep) -> Result<Self, CechError> {
        Self::from_quiver(rep, 0)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn maps(&self) -> &[Generization] {
        &self.maps
    }

    fn offsets0(&self) -> Vec<usize> {
        let mut acc = 0;
        self.cells
            .iter()
            .map(|c| {
                let o = acc;
                acc += c.dim;
                o
            })
            .collect()
    }

    /// The coboundary `C^0 → C^1`.
    pub fn coboundary(&self) -> Matrix {
        let off0 = self.offsets0();
        let n0: usize = self.cells.iter().map(|c| c.dim).sum();
        let n1: usize = self.maps.iter().map(|g| self.cells[g.edge].dim).sum();
        let mut d = Matrix::zeros(n1, n0);
        let mut row = 0;
        for g in &self.maps {
            let de = self.cells[g.edge].dim;
            d.set_block(row, off0[g.edge], &Matrix::identity(de));
            d.set_block(row, off0[g.vertex], &g.map.scale(&Rational::from(-1)));
            row += de;
        }
        d
    }
}

/// `(dim H^0, dim H^1)`.
pub fn cech_cohomology(model: &CellularSheafModel) -> (usize, usize) {
    let d = model.coboundary();
    let r = d.rank();
    (d.cols() - r, d.rows() - r)
}

fn unipotent_two(points: &[Rational]) -> CircleQuiverRep {
    let m = points.len();
    let mut arrows = vec![Matrix::identity(2); 2 * m];
    arrows[0] = Matrix::from_i64_rows(&[&[1, -1], &[0, 1]]);
    CircleQuiverRep::new(points.to_vec(), vec![2; m], vec![2; m], arrows)
        .expect("unipotent local system on the given points")
}

/// The connecting map `c: H^0(F) → H^1(F)` of `0 → F → F ⊗ L_2 → F → 0`,
/// in the basis `ker d` of `H^0` and the cokernel coordinates of `H^1`.
pub fn cech_c_map(rep: &CircleQuiverRep) -> Result<Matrix, CechError> {
    let l2 = unipotent_two(rep.points());
    let e = shv_core::quiverrep::tensor(rep, &l2)
        .map_err(|err| CechError::InconsistentModel(err.to_string()))?;
    let mf = CellularSheafModel::from_circle(rep)?;
    let me = CellularSheafModel::from_circle(&e)?;
    let df = mf.coboundary();
    let de = me.coboundary();
    let z = df.kernel_basis();
    // cochains of F ⊗ L_2 interleave the two tensor factors: index 2i + l
    let n0 = df.cols();
    let mut lift = Matrix::zeros(2 * n0, n0);
    for i in 0..n0 {
        lift.set_block(2 * i + 1, i, &Matrix::scalar(1, &Rational::one()));
    }
    let image = de.mul(&lift).mul(&z);
    let n1 = df.rows();
    let mut back = Matrix::zeros(n1, 2 * n1);
    for i in 0..n1 {
        back.set_block(i, 2 * i, &Matrix::scalar(1, &Rational::one()));
    }
    let cocycles = back.mul(&image);
    let q = df.cokernel_projection();
    Ok(q.mul(&cocycles))
}

/// Rank of the connecting map on `H^0`.
pub fn c_map_rank(rep: &CircleQuiverRep) -> Result<usize, CechError> {
    Ok(cech_c_map(rep)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use shv_core::circlesheaf::{assemble_circle, CircleSheaf, JordanBlock, WrappedInterval};
    use shv_core::exactalg::q;
    use shv_core::linesheaf::{assemble_line, Interval, LineSheaf};

    fn circle_model(s: &CircleSheaf) -> CircleQuiverRep {
        assemble_circle(s).unwrap()
    }

    fn local(a: Rational, r: usize) -> CircleSheaf {
        CircleSheaf::local_system(JordanBlock::new(a, r))
    }

    fn wrapped(s: &str) -> CircleSheaf {
        let iv: Interval = s.parse().unwrap();
        CircleSheaf::wrapped_interval(WrappedInterval::from_lift(&iv).unwrap())
    }

    #[test]
    fn cohomology_examples() {
        let m = CellularSheafModel::from_circle(&circle_model(&CircleSheaf::constant())).unwrap();
        assert_eq!(cech_cohomology(&m), (1, 1));
        let m = CellularSheafModel::from_circle(&circle_model(&local(q(2, 1), 1))).unwrap();
        assert_eq!(cech_cohomology(&m), (0, 0));
        let s = LineSheaf::single("(0,1)".parse().unwrap());
        let m = CellularSheafModel::from_line(&assemble_line(&s).unwrap()).unwrap();
        assert_eq!(cech_cohomology(&m), (0, 1));
    }

    #[test]
    fn c_map_examples() {
        assert_eq!(c_map_rank(&circle_model(&CircleSheaf::constant())).unwrap(), 1);
        assert_eq!(c_map_rank(&circle_model(&local(q(1, 1), 2))).unwrap(), 0);
        assert_eq!(c_map_rank(&circle_model(&wrapped("[0,1/2)"))).unwrap(), 0);
        assert_eq!(c_map_rank(&circle_model(&wrapped("[0,3/2]"))).unwrap(), 0);
    }

    #[test]
    fn bad_model_rejected() {
        let cells = vec![
            Cell { kind: CellKind::Vertex, dim: 1 },
            Cell { kind: CellKind::Edge, dim: 2 },
        ];
        let maps = vec![Generization { vertex: 0, edge: 1, map: Matrix::identity(1) }];
        assert!(CellularSheafModel::new(cells, maps).is_err());
    }
}
