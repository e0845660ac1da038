use crate::exactalg::{Matrix, Rational};
use crate::quiverrep::LineQuiverRep;

use super::{Interval, LineSheaf, LineSummand};

/// One interval summand of a zigzag representation together with its basis
/// vectors: `vectors[k]` lives in the space of vertex `start + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bar {
    pub start: usize,
    pub end: usize,
    pub vectors: Vec<Vec<Rational>>,
}

impl Bar {
    pub fn vector_at(&self, v: usize) -> Option<&[Rational]> {
        if v < self.start || v > self.end {
            None
        } else {
            Some(&self.vectors[v - self.start])
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Birth {
    Initial,
    Forward,
    Backward,
}

struct Working {
    start: usize,
    birth: Birth,
    end: Option<usize>,
    vectors: Vec<Vec<Rational>>,
}

/// Bars of `V` whose vectors, at every vertex, form a basis compatible with
/// all arrows: the representation is the direct sum of the bar modules.
///
/// The sweep runs left to right. Only basis changes that are automorphisms of
/// the already-processed prefix are used: a bar may absorb multiples of any
/// bar earlier in the order "backward-born by decreasing start, then the
/// others by increasing start".
pub fn decompose_line_bars(rep: &LineQuiverRep) -> Vec<Bar> {
    let dims = rep.dims();
    let last = dims.len() - 1;
    let mut bars: Vec<Working> = (0..dims[0])
        .map(|i| Working {
            start: 0,
            birth: Birth::Initial,
            end: None,
            vectors: vec![unit(dims[0], i)],
        })
        .collect();
    for k in 0..last {
        let mut alive: Vec<usize> = (0..bars.len()).filter(|&b| bars[b].end.is_none()).collect();
        alive.sort_by_key(|&b| order_key(&bars[b]));
        if k % 2 == 1 {
            forward_step(&mut bars, &alive, rep.right(k / 2), k, dims[k + 1]);
        } else {
            backward_step(&mut bars, &alive, rep.left(k / 2), k);
        }
    }
    bars.into_iter()
        .map(|w| Bar {
            start: w.start,
            end: w.end.unwrap_or(last),
            vectors: w.vectors,
        })
        .collect()
}

fn order_key(w: &Working) -> (u8, i64) {
    match w.birth {
        Birth::Backward => (0, -(w.start as i64)),
        _ => (1, w.start as i64),
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// `bars[a] -= c · bars[b]` on the overlap of their supports up to vertex `k`.
fn absorb(bars: &mut [Working], a: usize, b: usize, c: &Rational, k: usize) {
    let from = bars[a].start.max(bars[b].start);
    for v in from..=k {
        let vb = bars[b].vectors[v - bars[b].start].clone();
        let sa = bars[a].start;
        for (x, y) in bars[a].vectors[v - sa].iter_mut().zip(&vb) {
            if !y.is_zero() {
                *x -= &(c * y);
            }
        }
    }
}

fn first_nonzero(v: &[Rational]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn forward_step(bars: &mut Vec<Working>, alive: &[usize], f: &Matrix, k: usize, next_dim: usize) {
    let mut pivots: Vec<(usize, Vec<Rational>, usize)> = Vec::new();
    for &a in alive {
        let mut w = f.mul_vec(bars[a].vectors.last().unwrap());
        for (b, wb, piv) in &pivots {
            if w[*piv].is_zero() {
                continue;
            }
            let c = &w[*piv] / &wb[*piv];
            for (x, y) in w.iter_mut().zip(wb) {
                if !y.is_zero() {
                    *x -= &(&c * y);
                }
            }
            absorb(bars, a, *b, &c, k);
        }
        match first_nonzero(&w) {
            None => bars[a].end = Some(k),
            Some(piv) => {
                bars[a].vectors.push(w.clone());
                pivots.push((a, w, piv));
            }
        }
    }
    let used: Vec<usize> = pivots.iter().map(|p| p.2).collect();
    for i in (0..next_dim).filter(|i| !used.contains(i)) {
        bars.push(Working {
            start: k + 1,
            birth: Birth::Forward,
            end: None,
            vectors: vec![unit(next_dim, i)],
        });
    }
}

fn backward_step(bars: &mut Vec<Working>, alive: &[usize], g: &Matrix, k: usize) {
    let proj = g.cokernel_projection();
    let section = g.image_section();
    let mut pivots: Vec<(usize, Vec<Rational>, usize)> = Vec::new();
    for &a in alive {
        let mut y = proj.mul_vec(bars[a].vectors.last().unwrap());
        for (b, yb, piv) in &pivots {
            if y[*piv].is_zero() {
                continue;
            }
            let c = &y[*piv] / &yb[*piv];
            for (x, z) in y.iter_mut().zip(yb) {
                if !z.is_zero() {
                    *x -= &(&c * z);
                }
            }
            absorb(bars, a, *b, &c, k);
        }
        match first_nonzero(&y) {
            Some(piv) => {
                bars[a].end = Some(k);
                pivots.push((a, y, piv));
            }
            None => {
                let u = section.mul_vec(bars[a].vectors.last().unwrap());
                debug_assert_eq!(&g.mul_vec(&u), bars[a].vectors.last().unwrap());
                bars[a].vectors.push(u);
            }
        }
    }
    let kern = g.kernel_basis();
    for c in 0..kern.cols() {
        bars.push(Working {
            start: k + 1,
            birth: Birth::Backward,
            end: None,
            vectors: vec![kern.column(c)],
        });
    }
}

/// Barcode of a line representation, in degree 0.
pub fn decompose_line(rep: &LineQuiverRep) -> LineSheaf {
    LineSheaf::new(decompose_line_bars(rep).iter().map(|b| LineSummand {
        interval: bar_interval(rep, b),
        degree: 0,
        mult: 1,
    }))
}

pub fn bar_interval(rep: &LineQuiverRep, bar: &Bar) -> Interval {
    rep.vertex_range_interval(bar.start, bar.end)
}

/// Change-of-basis matrix at vertex `v`: columns are the bar vectors
/// present at `v`, in the order of `bars`.
pub fn bar_basis_at(bars: &[Bar], v: usize, dim: usize) -> (Matrix, Vec<usize>) {
    let mut cols = Vec::new();
    let mut owners = Vec::new();
    for (i, b) in bars.iter().enumerate() {
        if let Some(x) = b.vector_at(v) {
            cols.push(x.to_vec());
            owners.push(i);
        }
    }
    (Matrix::from_columns(dim, &cols), owners)
}
