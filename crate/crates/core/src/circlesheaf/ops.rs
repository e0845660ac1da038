use crate::exactalg::{jordan_block, jordan_blocks, AlgError, Matrix, Rational};
use crate::linesheaf::{
    bar_basis_at, bar_interval, decompose_line_bars, dual_line, interval_cohomology_degree,
    interval_covectors, merge_covectors, sum_with_layout, Covector, GradedDims, Interval,
    LineSheaf, LineSummand, SumLayout,
};
use crate::quiverrep::{
    kernel, CircleQuiverRep, Lift, QuiverRep, RepError, RepMorphism, WindowMode,
};

use super::{CirclePiece, CircleSheaf, JordanBlock, LocalSummand, WrappedInterval, WrappedSummand};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircleError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("operation needs a sheaf concentrated in a single degree")]
    MixedDegrees,
}

/// Canonical decomposition of a circle representation.
///
/// While the representation is not locally constant, pull it back to a
/// window around a lift of a jump point, wide enough that some interval
/// summand of the window has its closure inside, and split off the
/// pushforward of that interval through the adjoint inclusion and
/// projection. The locally constant remainder is classified by the Jordan
/// type of its monodromy.
pub fn decompose_circle(rep: &CircleQuiverRep) -> Result<CircleSheaf, CircleError> {
    let mut out = CircleSheaf::empty();
    let mut cur = rep.clone();
    while cur.total_dim() > 0 {
        let Some(j) = cur.jump_point() else {
            let m = cur.monodromy().expect("locally constant");
            for e in jordan_blocks(&m)?.blocks() {
                out.push_local(LocalSummand {
                    block: JordanBlock::new(e.alpha.clone(), e.size),
                    degree: 0,
                    mult: e.mult,
                });
            }
            break;
        };
        let (iv, _, proj) = split_wrapped(&cur, j)?;
        out.push_wrapped(WrappedSummand {
            interval: WrappedInterval::from_lift(&iv).expect("bounded"),
            degree: 0,
            mult: 1,
        });
        cur = kernel(&proj)?.0;
    }
    Ok(out)
}

/// A bounded interval `I` with `e_*(k_I)` a summand of `rep`, together with
/// the inclusion and projection realising the splitting.
pub fn split_wrapped(
    rep: &CircleQuiverRep,
    jump: usize,
) -> Result<
    (
        Interval,
        RepMorphism<CircleQuiverRep>,
        RepMorphism<CircleQuiverRep>,
    ),
    CircleError,
> {
    let x0 = rep.points()[jump].clone();
    let cap = rep.max_dim() + 2;
    let mut radius = 1;
    let (lifts, window, bars, bar_idx) = loop {
        let r = Rational::from(radius);
        let (lo, hi) = (&x0 - &r, &x0 + &r);
        let lifts = rep.window_lifts(&lo, &hi);
        let window = rep.pull_back_window(&lo, &hi, WindowMode::ExtendByZero);
        let bars = decompose_line_bars(&window);
        let npts = window.points().len();
        let x0_vertex = lifts
            .iter()
            .position(|l| l.point == jump && l.turn == 0)
            .map(|i| 2 * (i + 1) + 1)
            .expect("x0 lies in its window");
        let inside = |b: &&crate::linesheaf::Bar| b.start >= 3 && b.end + 3 <= 2 * npts;
        let touches_x0 = |b: &&crate::linesheaf::Bar| {
            b.start == x0_vertex || b.start == x0_vertex + 1 || b.end == x0_vertex || b.end + 1 == x0_vertex
        };
        let found = bars
            .iter()
            .position(|b| inside(&b) && touches_x0(&b))
            .or_else(|| bars.iter().position(|b| inside(&b)));
        match found {
            Some(i) => break (lifts, window, bars, i),
            None => {
                assert!(radius < cap, "a window summand with closure inside the window");
                radius = (2 * radius).min(cap);
            }
        }
    };
    let bar = &bars[bar_idx];
    let iv = bar_interval(&window, bar);
    let target = CircleQuiverRep::from_lift(&iv, rep.points())?;

    // window vertex of the lift (j, t) of the point j, and of the arc after it
    let lift_vertex = |l: Lift| -> usize {
        let i = lifts.iter().position(|m| *m == l).expect("lift inside window");
        2 * (i + 1) + 1
    };
    let turns_in = |x: &Rational| -> Vec<i64> {
        let t0 = i64::try_from(iv.lo().unwrap().floor()).unwrap() - 1;
        let t1 = i64::try_from(iv.hi().unwrap().ceil()).unwrap() + 1;
        (t0..=t1)
            .filter(|&t| iv.contains(&(x + &Rational::from(t))))
            .collect()
    };
    let m = rep.points().len();
    let dims = rep.dims();
    let mut inc_maps = Vec::with_capacity(2 * m);
    let mut proj_maps = Vec::with_capacity(2 * m);
    for v in 0..2 * m {
        let j = v / 2;
        let sample = if v % 2 == 0 {
            rep.points()[j].clone()
        } else {
            rep.arc_sample(j)
        };
        let turns = turns_in(&sample);
        let wverts: Vec<usize> = turns
            .iter()
            .map(|&t| lift_vertex(Lift { point: j, turn: t }) + v % 2)
            .collect();
        let cols: Vec<Vec<Rational>> = wverts
            .iter()
            .map(|&w| bar.vector_at(w).expect("lift inside the bar").to_vec())
            .collect();
        inc_maps.push(Matrix::from_columns(dims[v], &cols));
        let mut p = Matrix::zeros(turns.len(), dims[v]);
        for (row, &w) in wverts.iter().enumerate() {
            let (basis, owners) = bar_basis_at(&bars, w, dims[v]);
            let inv = basis.inverse().expect("bar vectors form a basis");
            let k = owners.iter().position(|&o| o == bar_idx).unwrap();
            for c in 0..dims[v] {
                p[(row, c)] = inv[(k, c)].clone();
            }
        }
        proj_maps.push(p);
    }
    let inc = RepMorphism::new(target.clone(), rep.clone(), inc_maps)?;
    let proj = RepMorphism::new(rep.clone(), target, proj_maps)?;
    debug_assert!(crate::quiverrep::is_isomorphism(&inc.compose(&proj)?));
    Ok((iv, inc, proj))
}

/// Representation of `e_*(k_I)` on the given marked points.
pub fn from_circle_summand(
    w: &WrappedInterval,
    points: &[Rational],
) -> Result<CircleQuiverRep, RepError> {
    CircleQuiverRep::from_lift(&w.lift(), points)
}

/// The local system `L_{α,r}` on the given marked points: every arrow is the
/// identity except the left arrow at the first point, which is `A_{α,r}⁻¹`.
pub fn local_system_on(b: &JordanBlock, points: &[Rational]) -> Result<CircleQuiverRep, RepError> {
    let a = jordan_block(&b.alpha, b.r);
    let m = points.len();
    let mut arrows = vec![Matrix::identity(b.r); 2 * m];
    arrows[0] = a.inverse().expect("alpha is nonzero");
    CircleQuiverRep::new(points.to_vec(), vec![b.r; m], vec![b.r; m], arrows)
}

/// Marked points on which `s` can be assembled.
pub fn default_points(s: &CircleSheaf) -> Vec<Rational> {
    let p = s.endpoints();
    if p.is_empty() {
        vec![Rational::zero()]
    } else {
        p
    }
}

pub fn assemble_circle(s: &CircleSheaf) -> Result<CircleQuiverRep, CircleError> {
    assemble_circle_on(s, &default_points(s))
}

pub fn assemble_circle_on(s: &CircleSheaf, points: &[Rational]) -> Result<CircleQuiverRep, CircleError> {
    Ok(assemble_circle_layout(s, points)?.0)
}

/// Assembled representation with the position of each copy (in the order of
/// [`CircleSheaf::copies`]).
pub fn assemble_circle_layout(
    s: &CircleSheaf,
    points: &[Rational],
) -> Result<(CircleQuiverRep, SumLayout), CircleError> {
    s.single_degree().ok_or(CircleError::MixedDegrees)?;
    let parts = s
        .copies()
        .iter()
        .map(|(p, _)| match p {
            CirclePiece::Wrapped(w) => from_circle_summand(w, points),
            CirclePiece::Local(b) => local_system_on(b, points),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let template = CircleQuiverRep::zero(points.to_vec())?;
    Ok(sum_with_layout(&template, &parts))
}

/// Extension by zero to ℝ of the restriction of `e⁻¹(s)` to the open window.
pub fn pullback_window(s: &CircleSheaf, lo: &Rational, hi: &Rational) -> LineSheaf {
    assert!(lo < hi, "empty window");
    let window = Interval::open(lo.clone(), hi.clone());
    let mut out = LineSheaf::empty();
    for w in s.wrapped() {
        for t in translates_meeting(&w.interval.lift(), &window) {
            if let Some(k) = w.interval.lift().translate(&Rational::from(t)).intersect(&window) {
                out.push(LineSummand {
                    interval: k,
                    degree: w.degree,
                    mult: w.mult,
                });
            }
        }
    }
    for l in s.local() {
        out.push(LineSummand {
            interval: window.clone(),
            degree: l.degree,
            mult: l.mult * l.block.r,
        });
    }
    out
}

/// Integers `n` for which `I + n` may meet the bounded interval `j`.
fn translates_meeting(i: &Interval, j: &Interval) -> std::ops::RangeInclusive<i64> {
    let span = |x: &Rational| i64::try_from(x.floor()).unwrap();
    let lo = span(&(j.lo().unwrap() - i.hi().unwrap())) - 1;
    let hi = span(&(j.hi().unwrap() - i.lo().unwrap())) + 1;
    lo..=hi
}

/// Tensor product of canonical forms: `L_{α,p} ⊗ L_{β,q}` (p ≤ q) is
/// `⊕_{i=1..p} L_{αβ, q−p+2i−1}`, `e_*(k_I) ⊗ L_{α,r} = e_*(k_I)^r`, and
/// `e_*(k_I) ⊗ e_*(k_J) = ⊕_n e_*(k_{I ∩ (J+n)})`.
pub fn tensor_circle(a: &CircleSheaf, b: &CircleSheaf) -> CircleSheaf {
    let mut out = CircleSheaf::empty();
    for x in a.local() {
        for y in b.local() {
            let (p, q) = (x.block.r.min(y.block.r), x.block.r.max(y.block.r));
            let alpha = &x.block.alpha * &y.block.alpha;
            for i in 1..=p {
                out.push_local(LocalSummand {
                    block: JordanBlock::new(alpha.clone(), q - p + 2 * i - 1),
                    degree: x.degree + y.degree,
                    mult: x.mult * y.mult,
                });
            }
        }
    }
    let mixed = |w: &WrappedSummand, l: &LocalSummand| WrappedSummand {
        interval: w.interval.clone(),
        degree: w.degree + l.degree,
        mult: w.mult * l.mult * l.block.r,
    };
    for w in a.wrapped() {
        for l in b.local() {
            out.push_wrapped(mixed(w, l));
        }
    }
    for l in a.local() {
        for w in b.wrapped() {
            out.push_wrapped(mixed(w, l));
        }
    }
    for x in a.wrapped() {
        for y in b.wrapped() {
            let i = x.interval.lift();
            let j = y.interval.lift();
            for n in translates_meeting(&j, &i) {
                if let Some(k) = i.intersect(&j.translate(&Rational::from(n))) {
                    out.push_wrapped(WrappedSummand {
                        interval: WrappedInterval::from_lift(&k).unwrap(),
                        degree: x.degree + y.degree,
                        mult: x.mult * y.mult,
                    });
                }
            }
        }
    }
    out
}

/// `D′`: wrapped parts dualise through their lifts, `L_{α,r} ↦ L_{1/α,r}`.
pub fn dual_circle(s: &CircleSheaf) -> CircleSheaf {
    let mut out = CircleSheaf::empty();
    for w in s.wrapped() {
        let lifted = LineSheaf::new([LineSummand {
            interval: w.interval.lift(),
            degree: w.degree,
            mult: w.mult,
        }]);
        for d in dual_line(&lifted).summands() {
            out.push_wrapped(WrappedSummand {
                interval: WrappedInterval::from_lift(&d.interval).unwrap(),
                degree: d.degree,
                mult: d.mult,
            });
        }
    }
    for l in s.local() {
        out.push_local(LocalSummand {
            block: JordanBlock::new(l.block.alpha.recip(), l.block.r),
            degree: -l.degree,
            mult: l.mult,
        });
    }
    out
}

/// Verdier dual `D = D′[1]`.
pub fn verdier_dual_circle(s: &CircleSheaf) -> CircleSheaf {
    dual_circle(s).shift_degrees(-1)
}

/// `H^*(S¹; L_{α,r})` is `k` in degrees 0 and 1 when `α = 1`, zero otherwise;
/// `H^*(S¹; e_*k_I) = H^*(ℝ; k_I)`.
pub fn cohomology_circle(s: &CircleSheaf) -> GradedDims {
    let mut out = GradedDims::new();
    for w in s.wrapped() {
        if let Some(d) = interval_cohomology_degree(&w.interval.lift()) {
            *out.entry(w.degree + d).or_default() += w.mult;
        }
    }
    for l in s.local() {
        if l.block.alpha.is_one() {
            *out.entry(l.degree).or_default() += l.mult;
            *out.entry(l.degree + 1).or_default() += l.mult;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

/// `(dim A_I, dim ker ε_I)` for `A_I = End(e_*(k_I))`.
pub fn end_algebra(w: &WrappedInterval) -> (usize, usize) {
    if !w.is_half_closed() {
        return (1, 0);
    }
    let a = if w.lo_closed() {
        w.lift_lo().clone()
    } else {
        w.lift_hi()
    };
    let e = w.lift_count(&a);
    (e, e - 1)
}

/// Microsupport of the wrapped part, with bases in `[0, 1)`.
pub fn ss_circle(s: &CircleSheaf) -> Vec<Covector> {
    let mut out = Vec::new();
    for w in s.wrapped() {
        for mut c in interval_covectors(&w.interval.lift(), w.degree, w.mult) {
            c.base = c.base.fract_pos();
            out.push(c);
        }
    }
    merge_covectors(out)
}

/// Covectors of a single wrapped interval, bases in `[0, 1)`.
pub fn wrapped_covectors(w: &WrappedInterval) -> Vec<Covector> {
    interval_covectors(&w.lift(), 0, 1)
        .into_iter()
        .map(|mut c| {
            c.base = c.base.fract_pos();
            c
        })
        .collect()
}
