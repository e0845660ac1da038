use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::Rational;
use crate::linesheaf::Interval;

/// `e_*(k_I)` for a bounded interval `I`, stored by its canonical lift with
/// left endpoint in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WrappedInterval {
    lift_lo: Rational,
    length: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl WrappedInterval {
    pub fn new(lo: Rational, length: Rational, lo_closed: bool, hi_closed: bool) -> Option<Self> {
        if length.is_negative() || (length.is_zero() && !(lo_closed && hi_closed)) {
            return None;
        }
        Some(WrappedInterval {
            lift_lo: lo.fract_pos(),
            length,
            lo_closed,
            hi_closed,
        })
    }

    /// Canonical representative of the pushforward of `k_I`, `I` bounded.
    pub fn from_lift(iv: &Interval) -> Option<Self> {
        Self::new(
            iv.lo()?.clone(),
            iv.length()?,
            iv.lo_closed(),
            iv.hi_closed(),
        )
    }

    pub fn point(x: Rational) -> Self {
        Self::new(x, Rational::zero(), true, true).unwrap()
    }

    pub fn lift_lo(&self) -> &Rational {
        &self.lift_lo
    }

    pub fn length(&self) -> &Rational {
        &self.length
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn lift_hi(&self) -> Rational {
        &self.lift_lo + &self.length
    }

    /// The canonical lift as an interval of ℝ.
    pub fn lift(&self) -> Interval {
        Interval::bounded(
            self.lift_lo.clone(),
            self.lo_closed,
            self.lift_hi(),
            self.hi_closed,
        )
    }

    pub fn is_point(&self) -> bool {
        self.length.is_zero()
    }

    pub fn is_half_closed(&self) -> bool {
        self.lo_closed != self.hi_closed
    }

    /// `|I ∩ (x + ℤ)|`, the stalk dimension of `e_*(k_I)` at `e(x)`.
    pub fn lift_count(&self, x: &Rational) -> usize {
        let iv = self.lift();
        let base = x.fract_pos();
        let t0 = i64::try_from(self.lift_lo.floor()).unwrap() - 1;
        let t1 = i64::try_from(self.lift_hi().ceil()).unwrap() + 1;
        (t0..=t1)
            .filter(|&t| iv.contains(&(&base + &Rational::from(t))))
            .count()
    }

    /// Endpoints projected to `[0, 1)`.
    pub fn circle_endpoints(&self) -> Vec<Rational> {
        let mut v = vec![self.lift_lo.clone(), self.lift_hi().fract_pos()];
        v.sort();
        v.dedup();
        v
    }

    fn key(&self) -> (&Rational, &Rational, bool, bool) {
        (&self.lift_lo, &self.length, !self.lo_closed, self.hi_closed)
    }
}

impl PartialOrd for WrappedInterval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WrappedInterval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for WrappedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_*k_{}", self.lift())
    }
}

impl fmt::Debug for WrappedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The indecomposable local system `L_{α,r}` with monodromy `αI_r + N_r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JordanBlock {
    pub alpha: Rational,
    pub r: usize,
}

impl JordanBlock {
    pub fn new(alpha: Rational, r: usize) -> Self {
        assert!(!alpha.is_zero() && r > 0, "L_(alpha,r) needs alpha ≠ 0, r ≥ 1");
        JordanBlock { alpha, r }
    }

    pub fn trivial() -> Self {
        JordanBlock::new(Rational::one(), 1)
    }
}

impl fmt::Display for JordanBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_({},{})", self.alpha, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WrappedSummand {
    pub interval: WrappedInterval,
    pub degree: i64,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalSummand {
    pub block: JordanBlock,
    pub degree: i64,
    pub mult: usize,
}

/// A complex of sheaves on the circle in split canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CircleSheaf {
    wrapped: Vec<WrappedSummand>,
    local: Vec<LocalSummand>,
}

/// One indecomposable piece of a circle sheaf, ignoring degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CirclePiece {
    Wrapped(WrappedInterval),
    Local(JordanBlock),
}

impl CircleSheaf {
    pub fn new(
        wrapped: impl IntoIterator<Item = WrappedSummand>,
        local: impl IntoIterator<Item = LocalSummand>,
    ) -> Self {
        let mut s = CircleSheaf::default();
        for w in wrapped {
            s.push_wrapped(w);
        }
        for l in local {
            s.push_local(l);
        }
        s
    }

    pub fn empty() -> Self {
        CircleSheaf::default()
    }

    pub fn local_system(block: JordanBlock) -> Self {
        CircleSheaf::new(
            [],
            [LocalSummand {
                block,
                degree: 0,
                mult: 1,
            }],
        )
    }

    pub fn constant() -> Self {
        Self::local_system(JordanBlock::trivial())
    }

    pub fn wrapped_interval(w: WrappedInterval) -> Self {
        CircleSheaf::new(
            [WrappedSummand {
                interval: w,
                degree: 0,
                mult: 1,
            }],
            [],
        )
    }

    pub fn push_wrapped(&mut self, x: WrappedSummand) {
        if x.mult == 0 {
            return;
        }
        let key = |s: &WrappedSummand| (s.degree, s.interval.clone());
        match self.wrapped.binary_search_by(|s| key(s).cmp(&key(&x))) {
            Ok(i) => self.wrapped[i].mult += x.mult,
            Err(i) => self.wrapped.insert(i, x),
        }
    }

    pub fn push_local(&mut self, x: LocalSummand) {
        if x.mult == 0 {
            return;
        }
        let key = |s: &LocalSummand| (s.degree, s.block.clone());
        match self.local.binary_search_by(|s| key(s).cmp(&key(&x))) {
            Ok(i) => self.local[i].mult += x.mult,
            Err(i) => self.local.insert(i, x),
        }
    }

    pub fn wrapped(&self) -> &[WrappedSummand] {
        &self.wrapped
    }

    pub fn local(&self) -> &[LocalSummand] {
        &self.local
    }

    pub fn is_empty(&self) -> bool {
        self.wrapped.is_empty() && self.local.is_empty()
    }

    pub fn direct_sum(&self, other: &CircleSheaf) -> CircleSheaf {
        CircleSheaf::new(
            self.wrapped.iter().chain(&other.wrapped).cloned(),
            self.local.iter().chain(&other.local).cloned(),
        )
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self
            .wrapped
            .iter()
            .map(|s| s.degree)
            .chain(self.local.iter().map(|s| s.degree))
            .collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn single_degree(&self) -> Option<i64> {
        match self.degrees().as_slice() {
            [] => Some(0),
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn degree_part(&self, d: i64) -> CircleSheaf {
        CircleSheaf::new(
            self.wrapped
                .iter()
                .filter(|s| s.degree == d)
                .map(|s| WrappedSummand { degree: 0, ..s.clone() }),
            self.local
                .iter()
                .filter(|s| s.degree == d)
                .map(|s| LocalSummand { degree: 0, ..s.clone() }),
        )
    }

    pub fn shift_degrees(&self, by: i64) -> CircleSheaf {
        CircleSheaf::new(
            self.wrapped.iter().map(|s| WrappedSummand {
                degree: s.degree + by,
                ..s.clone()
            }),
            self.local.iter().map(|s| LocalSummand {
                degree: s.degree + by,
                ..s.clone()
            }),
        )
    }

    /// One entry per copy: wrapped pieces first, then local ones, both in
    /// canonical order.
    pub fn copies(&self) -> Vec<(CirclePiece, i64)> {
        let mut out = Vec::new();
        for s in &self.wrapped {
            for _ in 0..s.mult {
                out.push((CirclePiece::Wrapped(s.interval.clone()), s.degree));
            }
        }
        for s in &self.local {
            for _ in 0..s.mult {
                out.push((CirclePiece::Local(s.block.clone()), s.degree));
            }
        }
        out
    }

    /// Total stalk dimension at `e(x)`, summed over degrees.
    pub fn stalk_dim_at(&self, x: &Rational) -> usize {
        let w: usize = self
            .wrapped
            .iter()
            .map(|s| s.mult * s.interval.lift_count(x))
            .sum();
        let l: usize = self.local.iter().map(|s| s.mult * s.block.r).sum();
        w + l
    }

    /// Sorted endpoints in `[0, 1)` of all wrapped summands.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .wrapped
            .iter()
            .flat_map(|s| s.interval.circle_endpoints())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

#[derive(Serialize, Deserialize)]
struct WrappedJson {
    lo: Rational,
    len: Rational,
    lo_closed: bool,
    hi_closed: bool,
    #[serde(default)]
    deg: i64,
    #[serde(default = "one")]
    mult: usize,
}

#[derive(Serialize, Deserialize)]
struct LocalJson {
    alpha: Rational,
    r: usize,
    #[serde(default)]
    deg: i64,
    #[serde(default = "one")]
    mult: usize,
}

fn one() -> usize {
    1
}

#[derive(Serialize, Deserialize)]
struct CircleSheafJson {
    #[serde(default)]
    wrapped: Vec<WrappedJson>,
    #[serde(default)]
    local: Vec<LocalJson>,
}

impl Serialize for CircleSheaf {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        CircleSheafJson {
            wrapped: self
                .wrapped
                .iter()
                .map(|s| WrappedJson {
                    lo: s.interval.lift_lo.clone(),
                    len: s.interval.length.clone(),
                    lo_closed: s.interval.lo_closed,
                    hi_closed: s.interval.hi_closed,
                    deg: s.degree,
                    mult: s.mult,
                })
                .collect(),
            local: self
                .local
                .iter()
                .map(|s| LocalJson {
                    alpha: s.block.alpha.clone(),
                    r: s.block.r,
                    deg: s.degree,
                    mult: s.mult,
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CircleSheaf {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = CircleSheafJson::deserialize(de)?;
        let mut out = CircleSheaf::empty();
        for (i, w) in j.wrapped.into_iter().enumerate() {
            let iv = WrappedInterval::new(w.lo, w.len, w.lo_closed, w.hi_closed)
                .ok_or_else(|| D::Error::custom(format!("wrapped[{i}]: empty interval")))?;
            out.push_wrapped(WrappedSummand {
                interval: iv,
                degree: w.deg,
                mult: w.mult,
            });
        }
        for (i, l) in j.local.into_iter().enumerate() {
            if l.alpha.is_zero() || l.r == 0 {
                return Err(D::Error::custom(format!(
                    "local[{i}]: need alpha ≠ 0 and r ≥ 1"
                )));
            }
            out.push_local(LocalSummand {
                block: JordanBlock::new(l.alpha, l.r),
                degree: l.deg,
                mult: l.mult,
            });
        }
        Ok(out)
    }
}
