use std::collections::BTreeMap;

use crate::circlesheaf::{CirclePiece, CircleSheaf};
use crate::exactalg::{q, Rational};
use crate::linesheaf::{Covector, GradedDims, Interval, LineSheaf, Sign};

use super::MicroError;

#[derive(Debug, Clone, Copy)]
pub enum SheafRef<'a> {
    Line(&'a LineSheaf),
    Circle(&'a CircleSheaf),
}

impl<'a> From<&'a LineSheaf> for SheafRef<'a> {
    fn from(s: &'a LineSheaf) -> Self {
        SheafRef::Line(s)
    }
}

impl<'a> From<&'a CircleSheaf> for SheafRef<'a> {
    fn from(s: &'a CircleSheaf) -> Self {
        SheafRef::Circle(s)
    }
}

/// One endpoint of one copy of a canonical summand, seen as a covector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Owner {
    /// Index in the copy order used for assembly.
    pub copy: usize,
    pub degree: i64,
    pub covector: Covector,
    /// Whether the endpoint producing the covector is closed.
    pub closed: bool,
}

fn ends(iv: &Interval) -> Vec<(Rational, Sign, bool)> {
    let mut out = Vec::new();
    if let Some(a) = iv.lo() {
        let s = if iv.lo_closed() { Sign::Plus } else { Sign::Minus };
        out.push((a.clone(), s, iv.lo_closed()));
    }
    if let Some(b) = iv.hi() {
        let s = if iv.hi_closed() { Sign::Minus } else { Sign::Plus };
        out.push((b.clone(), s, iv.hi_closed()));
    }
    out
}

/// Every (copy, endpoint) pair of the sheaf, in copy order. Circle bases
/// are reduced to `[0, 1)`.
pub(crate) fn all_ends<'a>(f: impl Into<SheafRef<'a>>) -> Vec<Owner> {
    let mut out = Vec::new();
    let mut push = |copy: usize, degree: i64, iv: &Interval, wrap: bool| {
        for (base, sign, closed) in ends(iv) {
            let base = if wrap { base.fract_pos() } else { base };
            out.push(Owner {
                copy,
                degree,
                covector: Covector::new(base, sign, degree),
                closed,
            });
        }
    };
    match f.into() {
        SheafRef::Line(s) => {
            for (c, x) in s.copies().enumerate() {
                push(c, x.degree, &x.interval, false);
            }
        }
        SheafRef::Circle(s) => {
            for (c, (piece, deg)) in s.copies().iter().enumerate() {
                if let CirclePiece::Wrapped(w) = piece {
                    push(c, *deg, &w.lift(), true);
                }
            }
        }
    }
    out
}

/// The endpoints realizing `p`, one entry per copy and end.
pub fn owners<'a>(f: impl Into<SheafRef<'a>>, p: &Covector) -> Vec<Owner> {
    let f = f.into();
    let mut p = p.clone();
    if let SheafRef::Circle(_) = f {
        p.base = p.base.fract_pos();
    }
    all_ends(f)
        .into_iter()
        .filter(|o| o.covector.same_point(&p))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MicroRank {
    pub total: usize,
    /// Degree of the owning summands, with the number of copies in each.
    pub degrees: GradedDims,
}

impl MicroRank {
    pub fn is_simple(&self) -> bool {
        self.total == 1
    }

    pub fn is_pure(&self) -> bool {
        self.degrees.len() == 1
    }
}

pub fn microlocal_rank<'a>(f: impl Into<SheafRef<'a>>, p: &Covector) -> MicroRank {
    let mut degrees = BTreeMap::new();
    let os = owners(f, p);
    for o in &os {
        *degrees.entry(o.degree).or_insert(0) += 1;
    }
    MicroRank {
        total: os.len(),
        degrees,
    }
}

/// The unique owner of `p`, or `NotSimple`.
pub(crate) fn simple_owner<'a>(f: impl Into<SheafRef<'a>>, p: &Covector) -> Result<Owner, MicroError> {
    let mut os = owners(f, p);
    if os.len() != 1 {
        return Err(MicroError::NotSimple {
            covector: p.clone(),
            rank: os.len(),
        });
    }
    Ok(os.pop().unwrap())
}

/// Shift at a simple covector: `+1/2` at a closed end, `−1/2` at an open
/// end, minus the degree of the owning summand. Only differences of shifts
/// carry meaning.
pub fn shift_at<'a>(f: impl Into<SheafRef<'a>>, p: &Covector) -> Result<Rational, MicroError> {
    let o = simple_owner(f, p)?;
    let half = if o.closed { q(1, 2) } else { q(-1, 2) };
    Ok(half - Rational::from(o.degree))
}

pub fn shift_difference<'a>(
    f: impl Into<SheafRef<'a>>,
    p: &Covector,
    q: &Covector,
) -> Result<Rational, MicroError> {
    let f = f.into();
    Ok(shift_at(f, p)? - shift_at(f, q)?)
}
