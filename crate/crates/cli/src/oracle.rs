//! Brute-force and matrix-level references used by the verification suites.

use rand::Rng;
use shv_core::circlesheaf::{CircleSheaf, JordanBlock, LocalSummand, WrappedInterval, WrappedSummand};
use shv_core::exactalg::{jordan_block, q, Matrix, Poly, Rational};
use shv_core::linesheaf::{Interval, LineSheaf, LineSummand};
use shv_core::quiverrep::{
    hom_space_basis, image, kernel, CircleQuiverRep, LineQuiverRep, QuiverData, QuiverRep,
    RepMorphism,
};

/// Every interval whose finite ends are among `points`: `(2n+1)(2n+2)/2`
/// of them for `n` points.
pub fn all_intervals(points: &[Rational]) -> Vec<Interval> {
    let mut los: Vec<(Option<Rational>, bool)> = vec![(None, false)];
    let mut his: Vec<(Option<Rational>, bool)> = Vec::new();
    for p in points {
        for c in [true, false] {
            los.push((Some(p.clone()), c));
            his.push((Some(p.clone()), c));
        }
    }
    his.push((None, false));
    let mut out = Vec::new();
    for (lo, lc) in &los {
        for (hi, hc) in &his {
            if let Ok(iv) = Interval::new(lo.clone(), *lc, hi.clone(), *hc) {
                out.push(iv);
            }
        }
    }
    out
}

fn power(m: &RepMorphism<LineQuiverRep>, n: usize) -> RepMorphism<LineQuiverRep> {
    let mut acc = RepMorphism::identity(m.source());
    for _ in 0..n {
        acc = acc.compose(m).expect("endomorphisms compose");
    }
    acc
}

/// Splits `rep` along a generalized eigenspace of `u`, if `u` has a rational
/// eigenvalue and is not of the form `λ + nilpotent`.
fn eigen_split(
    rep: &LineQuiverRep,
    u: &RepMorphism<LineQuiverRep>,
) -> Option<(LineQuiverRep, LineQuiverRep)> {
    let n = rep.quiver().dims.iter().copied().max().unwrap_or(0);
    for m in u.maps() {
        if m.rows() == 0 {
            continue;
        }
        for lambda in Poly::characteristic(m).rational_roots() {
            let shifted = u
                .add(&RepMorphism::identity(rep).scale(&-lambda.clone()))
                .expect("same shapes");
            let f = power(&shifted, n);
            let (k, _) = kernel(&f).expect("kernel of an endomorphism");
            let (c, _) = image(&f).expect("image of an endomorphism");
            if k.total_dim() > 0 && c.total_dim() > 0 {
                return Some((k, c));
            }
        }
    }
    None
}

/// Coefficient vectors of increasing support over `{1, −1, 2}`.
fn combinations(d: usize, max_support: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn rec(d: usize, start: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.iter().any(|&c| c != 0) {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..d {
            for c in [1, -1, 2] {
                cur[i] = c;
                rec(d, i + 1, left - 1, cur, out);
                cur[i] = 0;
            }
        }
    }
    rec(d, 0, max_support, &mut vec![0; d], &mut out);
    out.sort_by_key(|v| v.iter().filter(|&&c| c != 0).count());
    out
}

/// Splits `rep` into indecomposables by searching its endomorphism algebra
/// for elements with two distinct eigenvalues. A piece is accepted as
/// indecomposable only when its endomorphism algebra is one-dimensional.
pub fn split_summands(rep: &LineQuiverRep) -> Result<LineSheaf, String> {
    let mut out = LineSheaf::empty();
    let mut todo = vec![rep.clone()];
    while let Some(x) = todo.pop() {
        if x.total_dim() == 0 {
            continue;
        }
        let basis = hom_space_basis(&x, &x).map_err(|e| e.to_string())?;
        if basis.len() == 1 {
            out.push(LineSummand {
                interval: support_interval(&x)?,
                degree: 0,
                mult: 1,
            });
            continue;
        }
        let mut split = None;
        for coeffs in combinations(basis.len(), 3) {
            let mut u = RepMorphism::zero(&x, &x).map_err(|e| e.to_string())?;
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    u = u.add(&b.scale(&Rational::from(*c))).map_err(|e| e.to_string())?;
                }
            }
            if let Some(pair) = eigen_split(&x, &u) {
                split = Some(pair);
                break;
            }
        }
        match split {
            Some((a, b)) => {
                todo.push(a);
                todo.push(b);
            }
            None => {
                return Err(format!(
                    "no splitting found for a piece with {}-dimensional End",
                    basis.len()
                ))
            }
        }
    }
    Ok(out)
}

/// The interval of an indecomposable with 0/1 dimension vector supported on
/// a contiguous run of vertices.
fn support_interval(x: &LineQuiverRep) -> Result<Interval, String> {
    let dims = x.dims();
    let support: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] > 0).collect();
    let (s, e) = (support[0], *support.last().unwrap());
    if dims.iter().any(|&d| d > 1) || e - s + 1 != support.len() {
        return Err(format!("piece with dimension vector {dims:?} is not an interval"));
    }
    Ok(x.vertex_range_interval(s, e))
}

/// Random invertible matrix as a product of unit triangular factors and a
/// diagonal of small nonzero entries.
pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    let mut l = Vec::with_capacity(n * n);
    let mut u = Vec::with_capacity(n * n);
    let mut d = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = match i.cmp(&j) {
                std::cmp::Ordering::Greater => (rng.gen_range(-2i64..=2), 0),
                std::cmp::Ordering::Less => (0, rng.gen_range(-2i64..=2)),
                std::cmp::Ordering::Equal => (1, 1),
            };
            l.push(Rational::from(x));
            u.push(Rational::from(y));
            let s = if rng.gen_bool(0.5) { -1 } else { 1 };
            d.push(if i == j { Rational::from(s * rng.gen_range(1i64..=3)) } else { Rational::zero() });
        }
    }
    let l = Matrix::new(n, n, l);
    let u = Matrix::new(n, n, u);
    l.mul(&Matrix::new(n, n, d)).mul(&u)
}

/// The same representation written in a random basis at every vertex.
pub fn random_base_change<T: QuiverRep, R: Rng>(rep: &T, rng: &mut R) -> T {
    let qd = rep.quiver();
    let ps: Vec<Matrix> = qd.dims.iter().map(|&d| random_invertible(d, rng)).collect();
    let arrows = qd
        .arrows
        .into_iter()
        .map(|mut a| {
            let pinv = ps[a.src].inverse().expect("invertible");
            a.map = ps[a.tgt].mul(&a.map).mul(&pinv);
            a
        })
        .collect();
    rep.with_quiver(QuiverData { dims: qd.dims, arrows })
}

/// `n` distinct sorted points from the grid `{0, 1/2, …, 5}`.
pub fn random_points<R: Rng>(n: usize, rng: &mut R) -> Vec<Rational> {
    let mut pool: Vec<i64> = (0..=10).collect();
    let mut out = Vec::new();
    for _ in 0..n {
        let i = rng.gen_range(0..pool.len());
        out.push(q(pool.swap_remove(i), 2));
    }
    out.sort();
    out
}

pub fn random_interval<R: Rng>(points: &[Rational], rng: &mut R) -> Interval {
    let all = all_intervals(points);
    all[rng.gen_range(0..all.len())].clone()
}

/// A random degree-0 barcode on at most `max_points` points, with
/// multiplicities at most `max_mult` and every stalk of dimension at most
/// `max_dim`.
pub fn random_barcode<R: Rng>(max_points: usize, max_mult: usize, max_dim: usize, rng: &mut R) -> LineSheaf {
    let n = rng.gen_range(1..=max_points);
    let points = random_points(n, rng);
    let target = rng.gen_range(1..=4);
    let mut s = LineSheaf::empty();
    for _ in 0..target * 3 {
        if s.summands().len() >= target {
            break;
        }
        let x = LineSummand {
            interval: random_interval(&points, rng),
            degree: 0,
            mult: rng.gen_range(1..=max_mult),
        };
        let t = s.direct_sum(&LineSheaf::new([x]));
        let fits = t
            .endpoints()
            .iter()
            .chain(&points)
            .all(|p| t.stalk_dim_at(p) <= max_dim)
            && sample_arcs(&points).iter().all(|p| t.stalk_dim_at(p) <= max_dim);
        if fits {
            s = t;
        }
    }
    s
}

fn sample_arcs(points: &[Rational]) -> Vec<Rational> {
    let mut out = vec![&points[0] - &Rational::one()];
    for w in points.windows(2) {
        out.push((&w[0] + &w[1]) / Rational::from(2));
    }
    out.push(points.last().unwrap() + &Rational::one());
    out
}

pub const ALPHA_GRID: [(i64, i64); 5] = [(1, 1), (2, 1), (1, 2), (-1, 1), (3, 1)];

pub fn alpha_grid() -> Vec<Rational> {
    ALPHA_GRID.iter().map(|&(n, d)| q(n, d)).collect()
}

/// A random canonical circle sheaf with a few local and wrapped summands.
pub fn random_circle_sheaf<R: Rng>(degrees: &[i64], rng: &mut R) -> CircleSheaf {
    let grid = alpha_grid();
    let mut s = CircleSheaf::empty();
    for _ in 0..rng.gen_range(1..=2) {
        s.push_local(LocalSummand {
            block: JordanBlock::new(grid[rng.gen_range(0..grid.len())].clone(), rng.gen_range(1..=3)),
            degree: degrees[rng.gen_range(0..degrees.len())],
            mult: rng.gen_range(1..=2),
        });
    }
    for _ in 0..rng.gen_range(0..=1) {
        s.push_wrapped(WrappedSummand {
            interval: random_wrapped(rng),
            degree: degrees[rng.gen_range(0..degrees.len())],
            mult: 1,
        });
    }
    s
}

pub fn random_wrapped<R: Rng>(rng: &mut R) -> WrappedInterval {
    let lo = q(rng.gen_range(0..4), 4);
    let (lc, hc) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
    let len = q(rng.gen_range(if lc && hc { 0 } else { 1 }..=6), 4);
    WrappedInterval::new(lo, len, lc, hc).expect("valid wrapped interval")
}

/// The local system `L_{α,r}` on the given points, built from its Jordan
/// block directly.
pub fn jordan_local_system(alpha: &Rational, r: usize, points: &[Rational]) -> CircleQuiverRep {
    let m = points.len();
    let mut arrows = vec![Matrix::identity(r); 2 * m];
    arrows[0] = jordan_block(alpha, r).inverse().expect("nonzero alpha");
    CircleQuiverRep::new(points.to_vec(), vec![r; m], vec![r; m], arrows).expect("local system")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use shv_core::linesheaf::assemble_line;

    #[test]
    fn interval_count() {
        for n in 1..4 {
            let pts: Vec<Rational> = (0..n as i64).map(Rational::from).collect();
            assert_eq!(all_intervals(&pts).len(), (2 * n + 1) * (2 * n + 2) / 2);
        }
    }

    #[test]
    fn splitting_recovers_barcode() {
        let s = LineSheaf::from_intervals(
            ["[0,1)", "[0,1)", "(0,2]", "{1}", "R"].map(|x| x.parse::<Interval>().unwrap()),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = random_base_change(&assemble_line(&s).unwrap(), &mut rng);
        assert_eq!(split_summands(&rep).unwrap(), s);
    }

    #[test]
    fn base_change_is_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 0..5 {
            assert!(random_invertible(n, &mut rng).is_invertible());
        }
    }
}
