#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shv_core::circlesheaf::{CircleSheaf, JordanBlock, LocalSummand, WrappedInterval, WrappedSummand};
use shv_core::exactalg::{q, Matrix, Rational};
use shv_core::linesheaf::{Interval, LineSheaf, LineSummand};
use shv_core::quiverrep::{QuiverData, QuiverRep};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::new(rows, cols, v.into_iter().map(Rational::from).collect()))
}

pub fn invertible<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = Rational::from(rng.gen_range(-2i64..=2));
            u[(j, i)] = Rational::from(rng.gen_range(-2i64..=2));
        }
        u[(i, i)] = Rational::from(if rng.gen_bool(0.5) { -1i64 } else { 1 } * rng.gen_range(1i64..=3));
    }
    l.mul(&u)
}

pub fn base_change<T: QuiverRep, R: Rng>(rep: &T, rng: &mut R) -> T {
    let qd = rep.quiver();
    let ps: Vec<Matrix> = qd.dims.iter().map(|&d| invertible(d, rng)).collect();
    let arrows = qd
        .arrows
        .into_iter()
        .map(|mut a| {
            a.map = ps[a.tgt].mul(&a.map).mul(&ps[a.src].inverse().unwrap());
            a
        })
        .collect();
    rep.with_quiver(QuiverData { dims: qd.dims, arrows })
}

fn end(x: Option<i64>) -> Option<Rational> {
    x.map(|n| q(n, 2))
}

/// Intervals with endpoints on the half-integer grid `{0, …, 3}`, rays included.
pub fn interval() -> impl Strategy<Value = Interval> {
    (
        proptest::option::weighted(0.85, 0i64..=6),
        any::<bool>(),
        proptest::option::weighted(0.85, 0i64..=6),
        any::<bool>(),
    )
        .prop_filter_map("nonempty interval", |(a, lc, b, hc)| {
            Interval::new(end(a), lc && a.is_some(), end(b), hc && b.is_some()).ok()
        })
}

pub fn line_sheaf(degrees: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = LineSheaf> {
    proptest::collection::vec((interval(), degrees, 1usize..=2), 1..=4).prop_map(|v| {
        LineSheaf::new(v.into_iter().map(|(interval, degree, mult)| LineSummand {
            interval,
            degree,
            mult,
        }))
    })
}

pub fn degree0_line_sheaf() -> impl Strategy<Value = LineSheaf> {
    line_sheaf(0..=0)
}

pub fn alpha() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(q(1, 1)), Just(q(2, 1)), Just(q(1, 2)), Just(q(-1, 1)), Just(q(3, 1)), Just(q(-2, 3))]
}

pub fn wrapped() -> impl Strategy<Value = WrappedInterval> {
    (0i64..4, 0i64..=6, any::<bool>(), any::<bool>())
        .prop_filter_map("valid wrapped interval", |(lo, len, lc, hc)| {
            WrappedInterval::new(q(lo, 4), q(len, 4), lc, hc)
        })
}

pub fn circle_sheaf(degrees: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = CircleSheaf> {
    (
        proptest::collection::vec((alpha(), 1usize..=3, degrees.clone(), 1usize..=2), 0..=2),
        proptest::collection::vec((wrapped(), degrees, 1usize..=2), 0..=2),
    )
        .prop_filter_map("nonempty", |(loc, wr)| {
            let mut s = CircleSheaf::empty();
            for (a, r, degree, mult) in loc {
                s.push_local(LocalSummand {
                    block: JordanBlock::new(a, r),
                    degree,
                    mult,
                });
            }
            for (interval, degree, mult) in wr {
                s.push_wrapped(WrappedSummand { interval, degree, mult });
            }
            (!s.is_empty()).then_some(s)
        })
}
