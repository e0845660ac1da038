use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactalg::{Matrix, Rational};
use crate::quiverrep::{LineQuiverRep, QuiverRep, RepError};

use super::covector::merge_covectors;
use super::{Covector, Interval, Sign};

/// `mult` copies of `k_I` placed in cohomological degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineSummand {
    pub interval: Interval,
    pub degree: i64,
    pub mult: usize,
}

/// A complex of sheaves on ℝ in split form: a graded multiset of intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LineSheaf {
    summands: Vec<LineSummand>,
}

/// Cohomology dimensions by degree; absent degrees are zero.
pub type GradedDims = BTreeMap<i64, usize>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LineError {
    #[error("operation needs a sheaf concentrated in a single degree")]
    MixedDegrees,
    #[error(transparent)]
    Rep(#[from] RepError),
}

impl LineSheaf {
    pub fn new(summands: impl IntoIterator<Item = LineSummand>) -> Self {
        let mut s = LineSheaf::default();
        for x in summands {
            s.push(x);
        }
        s
    }

    pub fn empty() -> Self {
        LineSheaf::default()
    }

    /// `k_I` in degree 0.
    pub fn single(interval: Interval) -> Self {
        Self::from_intervals([interval])
    }

    /// Degree-0 sheaf with one copy of each listed interval.
    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> Self {
        LineSheaf::new(intervals.into_iter().map(|interval| LineSummand {
            interval,
            degree: 0,
            mult: 1,
        }))
    }

    pub fn push(&mut self, x: LineSummand) {
        if x.mult == 0 {
            return;
        }
        let key = |s: &LineSummand| (s.degree, s.interval.clone());
        match self.summands.binary_search_by(|s| key(s).cmp(&key(&x))) {
            Ok(i) => self.summands[i].mult += x.mult,
            Err(i) => self.summands.insert(i, x),
        }
    }

    pub fn summands(&self) -> &[LineSummand] {
        &self.summands
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// One entry per copy, in canonical order.
    pub fn copies(&self) -> impl Iterator<Item = &LineSummand> {
        self.summands
            .iter()
            .flat_map(|s| std::iter::repeat(s).take(s.mult))
    }

    pub fn copy_count(&self) -> usize {
        self.summands.iter().map(|s| s.mult).sum()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.summands.iter().map(|s| s.degree).collect();
        d.dedup();
        d
    }

    /// The single degree of a nonempty sheaf, 0 for the empty one.
    pub fn single_degree(&self) -> Result<i64, LineError> {
        match self.degrees().as_slice() {
            [] => Ok(0),
            [d] => Ok(*d),
            _ => Err(LineError::MixedDegrees),
        }
    }

    /// The degree-`d` part, moved to degree 0.
    pub fn degree_part(&self, d: i64) -> LineSheaf {
        LineSheaf::new(
            self.summands
                .iter()
                .filter(|s| s.degree == d)
                .map(|s| LineSummand {
                    degree: 0,
                    ..s.clone()
                }),
        )
    }

    /// Every summand moved from degree `n` to `n + by`.
    pub fn shift_degrees(&self, by: i64) -> LineSheaf {
        LineSheaf::new(self.summands.iter().map(|s| LineSummand {
            degree: s.degree + by,
            ..s.clone()
        }))
    }

    pub fn direct_sum(&self, other: &LineSheaf) -> LineSheaf {
        LineSheaf::new(self.summands.iter().chain(&other.summands).cloned())
    }

    pub fn is_compactly_supported(&self) -> bool {
        self.summands.iter().all(|s| s.interval.is_bounded())
    }

    /// Total stalk dimension at `x`, summed over all degrees.
    pub fn stalk_dim_at(&self, x: &Rational) -> usize {
        self.summands
            .iter()
            .filter(|s| s.interval.contains(x))
            .map(|s| s.mult)
            .sum()
    }

    /// Sorted finite endpoints of all summands.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .summands
            .iter()
            .flat_map(|s| s.interval.finite_endpoints())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Restriction to an open window, with the window's ends read as ±∞.
    pub fn restrict_to_window(&self, window: &Interval) -> LineSheaf {
        assert!(
            !window.lo_closed() && !window.hi_closed(),
            "window must be open"
        );
        LineSheaf::new(self.summands.iter().filter_map(|s| {
            let k = s.interval.intersect(window)?;
            let lo = k.lo().filter(|a| Some(*a) != window.lo()).cloned();
            let hi = k.hi().filter(|b| Some(*b) != window.hi()).cloned();
            let iv = Interval::new(lo, k.lo_closed(), hi, k.hi_closed()).ok()?;
            Some(LineSummand {
                interval: iv,
                degree: s.degree,
                mult: s.mult,
            })
        }))
    }
}

/// Layout of a direct sum of interval representations: `offsets[c][v]` is the
/// first coordinate of copy `c` at vertex `v`, `present[c][v]` whether the
/// copy is nonzero there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumLayout {
    pub offsets: Vec<Vec<usize>>,
    pub sizes: Vec<Vec<usize>>,
}

impl SumLayout {
    pub fn block(&self, m: &Matrix, c_row: usize, c_col: usize, v: usize) -> Matrix {
        m.block(
            self.offsets[c_row][v],
            self.offsets[c_col][v],
            self.sizes[c_row][v],
            self.sizes[c_col][v],
        )
    }
}

/// Direct sum of several representations on one point set, with its layout.
pub fn sum_with_layout<R: QuiverRep>(template: &R, parts: &[R]) -> (R, SumLayout) {
    let q0 = template.quiver();
    let nv = q0.dims.len();
    let qs: Vec<_> = parts.iter().map(QuiverRep::quiver).collect();
    let mut offsets = vec![vec![0; nv]; parts.len()];
    let mut sizes = vec![vec![0; nv]; parts.len()];
    let mut dims = vec![0; nv];
    for (c, q) in qs.iter().enumerate() {
        for v in 0..nv {
            offsets[c][v] = dims[v];
            sizes[c][v] = q.dims[v];
            dims[v] += q.dims[v];
        }
    }
    let arrows = q0
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| crate::quiverrep::Arrow {
            src: a.src,
            tgt: a.tgt,
            map: Matrix::block_diag(&qs.iter().map(|q| q.arrows[k].map.clone()).collect::<Vec<_>>()),
        })
        .collect();
    let rep = template.with_quiver(crate::quiverrep::QuiverData { dims, arrows });
    (rep, SumLayout { offsets, sizes })
}

/// Representation of a degree-0 (or single-degree) sheaf on its own endpoints.
pub fn assemble_line(s: &LineSheaf) -> Result<LineQuiverRep, LineError> {
    assemble_line_on(s, &s.endpoints())
}

/// Representation on a given set of marked points containing all endpoints.
pub fn assemble_line_on(s: &LineSheaf, points: &[Rational]) -> Result<LineQuiverRep, LineError> {
    Ok(assemble_line_layout(s, points)?.0)
}

/// Assembled representation together with the position of every copy.
pub fn assemble_line_layout(
    s: &LineSheaf,
    points: &[Rational],
) -> Result<(LineQuiverRep, SumLayout), LineError> {
    s.single_degree()?;
    let parts = s
        .copies()
        .map(|x| LineQuiverRep::from_interval(&x.interval, points))
        .collect::<Result<Vec<_>, _>>()?;
    let template = LineQuiverRep::zero(points.to_vec())?;
    Ok(sum_with_layout(&template, &parts))
}

/// Microsupport away from the zero section: a finite left end gives `+` when
/// closed and `−` when open, a finite right end `−` when closed and `+` when
/// open.
pub fn ss_line(s: &LineSheaf) -> Vec<Covector> {
    let mut out = Vec::new();
    for x in s.summands() {
        out.extend(interval_covectors(&x.interval, x.degree, x.mult));
    }
    merge_covectors(out)
}

pub(crate) fn interval_covectors(iv: &Interval, degree: i64, mult: usize) -> Vec<Covector> {
    let mut out = Vec::new();
    let mk = |base: &Rational, sign| Covector {
        base: base.clone(),
        sign,
        degree,
        mult,
    };
    if let Some(a) = iv.lo() {
        out.push(mk(a, if iv.lo_closed() { Sign::Plus } else { Sign::Minus }));
    }
    if let Some(b) = iv.hi() {
        out.push(mk(b, if iv.hi_closed() { Sign::Minus } else { Sign::Plus }));
    }
    out
}

/// Does the summand `k_I` contain `p` in its microsupport?
pub fn interval_owns(iv: &Interval, p: &Covector) -> bool {
    interval_covectors(iv, 0, 1).iter().any(|c| c.same_point(p))
}

/// `D′ = RHom(·, k_ℝ)`: finite-end flags flip and `n ↦ −n`; a point
/// `k_{x}` in degree `n` goes to `k_{x}` in degree `1 − n`.
pub fn dual_line(s: &LineSheaf) -> LineSheaf {
    LineSheaf::new(s.summands().iter().map(|x| {
        if x.interval.is_point() {
            LineSummand {
                interval: x.interval.clone(),
                degree: 1 - x.degree,
                mult: x.mult,
            }
        } else {
            LineSummand {
                interval: x.interval.flip_ends(),
                degree: -x.degree,
                mult: x.mult,
            }
        }
    }))
}

/// Verdier dual `D = D′[1]`.
pub fn verdier_dual_line(s: &LineSheaf) -> LineSheaf {
    dual_line(s).shift_degrees(-1)
}

/// Stalkwise tensor product: `k_I ⊗ k_J = k_{I∩J}`, degrees add.
pub fn tensor_line(a: &LineSheaf, b: &LineSheaf) -> LineSheaf {
    let mut out = LineSheaf::empty();
    for x in a.summands() {
        for y in b.summands() {
            if let Some(k) = x.interval.intersect(&y.interval) {
                out.push(LineSummand {
                    interval: k,
                    degree: x.degree + y.degree,
                    mult: x.mult * y.mult,
                });
            }
        }
    }
    out
}

/// RΓ(ℝ; k_I) is `k` in degree 0 when no finite end is open, `k[−1]` when
/// both finite ends are open, and zero otherwise.
pub fn interval_cohomology_degree(iv: &Interval) -> Option<i64> {
    match iv.open_finite_ends() {
        0 => Some(0),
        2 => Some(1),
        _ => None,
    }
}

pub fn cohomology_line(s: &LineSheaf) -> GradedDims {
    let mut out = GradedDims::new();
    for x in s.summands() {
        if let Some(d) = interval_cohomology_degree(&x.interval) {
            *out.entry(x.degree + d).or_default() += x.mult;
        }
    }
    out
}

/// dim Hom(a, b) for sheaves in one common degree, by the interval criterion.
pub fn hom_dim_line(a: &LineSheaf, b: &LineSheaf) -> Result<usize, LineError> {
    let da = a.single_degree()?;
    let db = b.single_degree()?;
    if !a.is_empty() && !b.is_empty() && da != db {
        return Err(LineError::MixedDegrees);
    }
    let mut n = 0;
    for x in a.summands() {
        for y in b.summands() {
            if Interval::hom_nonzero(&x.interval, &y.interval) {
                n += x.mult * y.mult;
            }
        }
    }
    Ok(n)
}

/// For a compactly supported sheaf with `D(s) ≅ s` and `RΓ(ℝ; s) ≅ k`, the
/// point `x_0` of the decomposition `k_{x_0} ⊕ (half-closed intervals)`.
pub fn autodual_structure(s: &LineSheaf) -> Option<Rational> {
    if !s.is_compactly_supported() || s.is_empty() {
        return None;
    }
    if verdier_dual_line(s) != *s {
        return None;
    }
    let coh = cohomology_line(s);
    if coh.values().filter(|&&d| d > 0).count() != 1 || coh.get(&0) != Some(&1) {
        return None;
    }
    let mut point = None;
    for x in s.summands() {
        if x.interval.is_point() {
            if point.is_some() || x.mult != 1 || x.degree != 0 {
                return None;
            }
            point = x.interval.lo().cloned();
        } else if !x.interval.is_half_closed() {
            return None;
        }
    }
    point
}

#[derive(Serialize, Deserialize)]
struct SummandJson {
    lo: String,
    lo_closed: bool,
    hi: String,
    hi_closed: bool,
    #[serde(default)]
    deg: i64,
    #[serde(default = "one")]
    mult: usize,
}

fn one() -> usize {
    1
}

#[derive(Serialize, Deserialize)]
struct LineSheafJson {
    summands: Vec<SummandJson>,
}

fn parse_end(s: &str, inf: &str) -> Result<Option<Rational>, String> {
    let t = s.trim();
    if t == inf || (inf == "+inf" && t == "inf") {
        Ok(None)
    } else {
        t.parse().map(Some).map_err(|e| format!("{e}"))
    }
}

impl Serialize for LineSheaf {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let j = LineSheafJson {
            summands: self
                .summands
                .iter()
                .map(|x| SummandJson {
                    lo: x.interval.lo().map_or("-inf".into(), Rational::to_string),
                    lo_closed: x.interval.lo_closed(),
                    hi: x.interval.hi().map_or("+inf".into(), Rational::to_string),
                    hi_closed: x.interval.hi_closed(),
                    deg: x.degree,
                    mult: x.mult,
                })
                .collect(),
        };
        j.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LineSheaf {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = LineSheafJson::deserialize(de)?;
        let mut out = LineSheaf::empty();
        for (i, x) in j.summands.into_iter().enumerate() {
            let lo = parse_end(&x.lo, "-inf").map_err(|e| D::Error::custom(format!("summands[{i}].lo: {e}")))?;
            let hi = parse_end(&x.hi, "+inf").map_err(|e| D::Error::custom(format!("summands[{i}].hi: {e}")))?;
            if (lo.is_none() && x.lo_closed) || (hi.is_none() && x.hi_closed) {
                return Err(D::Error::custom(format!("summands[{i}]: infinite ends are open")));
            }
            let iv = Interval::new(lo, x.lo_closed, hi, x.hi_closed)
                .map_err(|e| D::Error::custom(format!("summands[{i}]: {e}")))?;
            out.push(LineSummand {
                interval: iv,
                degree: x.deg,
                mult: x.mult,
            });
        }
        Ok(out)
    }
}
