use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::exactalg::Rational;

/// A nonempty interval of ℝ with explicit endpoint openness. `None` encodes
/// an infinite end, which is always open.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Option<Rational>,
    hi: Option<Rational>,
    lo_closed: bool,
    hi_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("empty interval")]
    Empty,
    #[error("cannot parse interval {0:?}")]
    Parse(String),
}

impl Interval {
    pub fn new(
        lo: Option<Rational>,
        lo_closed: bool,
        hi: Option<Rational>,
        hi_closed: bool,
    ) -> Result<Self, IntervalError> {
        let lo_closed = lo_closed && lo.is_some();
        let hi_closed = hi_closed && hi.is_some();
        if let (Some(a), Some(b)) = (&lo, &hi) {
            match a.cmp(b) {
                Ordering::Greater => return Err(IntervalError::Empty),
                Ordering::Equal if !(lo_closed && hi_closed) => return Err(IntervalError::Empty),
                _ => {}
            }
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn bounded(a: Rational, lo_closed: bool, b: Rational, hi_closed: bool) -> Self {
        Interval::new(Some(a), lo_closed, Some(b), hi_closed).expect("nonempty interval")
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        Self::bounded(a, true, b, true)
    }

    pub fn open(a: Rational, b: Rational) -> Self {
        Self::bounded(a, false, b, false)
    }

    pub fn point(x: Rational) -> Self {
        Self::bounded(x.clone(), true, x, true)
    }

    pub fn real_line() -> Self {
        Interval {
            lo: None,
            hi: None,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn lo(&self) -> Option<&Rational> {
        self.lo.as_ref()
    }

    pub fn hi(&self) -> Option<&Rational> {
        self.hi.as_ref()
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(a), Some(b)) if a == b)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    pub fn is_real_line(&self) -> bool {
        self.lo.is_none() && self.hi.is_none()
    }

    /// Number of finite ends that are open.
    pub fn open_finite_ends(&self) -> usize {
        usize::from(self.lo.is_some() && !self.lo_closed)
            + usize::from(self.hi.is_some() && !self.hi_closed)
    }

    /// Bounded with exactly one closed end.
    pub fn is_half_closed(&self) -> bool {
        self.is_bounded() && self.lo_closed != self.hi_closed
    }

    pub fn length(&self) -> Option<Rational> {
        Some(self.hi.as_ref()? - self.lo.as_ref()?)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let left = match &self.lo {
            None => true,
            Some(a) => a < x || (self.lo_closed && a == x),
        };
        let right = match &self.hi {
            None => true,
            Some(b) => x < b || (self.hi_closed && b == x),
        };
        left && right
    }

    pub fn finite_endpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.lo.iter().chain(self.hi.iter()).cloned().collect();
        v.dedup();
        v
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match (&self.lo, &other.lo) {
            (None, None) => (None, false),
            (Some(a), None) => (Some(a.clone()), self.lo_closed),
            (None, Some(b)) => (Some(b.clone()), other.lo_closed),
            (Some(a), Some(b)) => match a.cmp(b) {
                Ordering::Greater => (Some(a.clone()), self.lo_closed),
                Ordering::Less => (Some(b.clone()), other.lo_closed),
                Ordering::Equal => (Some(a.clone()), self.lo_closed && other.lo_closed),
            },
        };
        let (hi, hi_closed) = match (&self.hi, &other.hi) {
            (None, None) => (None, false),
            (Some(a), None) => (Some(a.clone()), self.hi_closed),
            (None, Some(b)) => (Some(b.clone()), other.hi_closed),
            (Some(a), Some(b)) => match a.cmp(b) {
                Ordering::Less => (Some(a.clone()), self.hi_closed),
                Ordering::Greater => (Some(b.clone()), other.hi_closed),
                Ordering::Equal => (Some(a.clone()), self.hi_closed && other.hi_closed),
            },
        };
        Interval::new(lo, lo_closed, hi, hi_closed).ok()
    }

    pub fn translate(&self, t: &Rational) -> Interval {
        Interval {
            lo: self.lo.as_ref().map(|a| a + t),
            hi: self.hi.as_ref().map(|b| b + t),
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }

    /// Both finite-end openness flags flipped. Undefined for points.
    pub fn flip_ends(&self) -> Interval {
        assert!(!self.is_point(), "cannot flip the ends of a point");
        Interval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            lo_closed: self.lo.is_some() && !self.lo_closed,
            hi_closed: self.hi.is_some() && !self.hi_closed,
        }
    }

    pub fn closure(&self) -> Interval {
        Interval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            lo_closed: self.lo.is_some(),
            hi_closed: self.hi.is_some(),
        }
    }

    /// `self ∩ J` read as a subset of `self`: each end is closed or is an
    /// open/infinite end of `self`.
    pub fn is_closed_in(&self, sub: &Interval) -> bool {
        let lo_ok = sub.lo_closed || sub.lo.is_none() || (sub.lo == self.lo && !self.lo_closed);
        let hi_ok = sub.hi_closed || sub.hi.is_none() || (sub.hi == self.hi && !self.hi_closed);
        lo_ok && hi_ok
    }

    /// Each end of `sub` is open/infinite or is a closed end of `self`.
    pub fn is_open_in(&self, sub: &Interval) -> bool {
        let lo_ok = !sub.lo_closed || (sub.lo == self.lo && self.lo_closed);
        let hi_ok = !sub.hi_closed || (sub.hi == self.hi && self.hi_closed);
        lo_ok && hi_ok
    }

    /// Hom(k_I, k_J) ≠ 0: I∩J is nonempty, closed in I and open in J.
    pub fn hom_nonzero(i: &Interval, j: &Interval) -> bool {
        match i.intersect(j) {
            None => false,
            Some(k) => i.is_closed_in(&k) && j.is_open_in(&k),
        }
    }

    fn sort_key(&self) -> (Bound<'_>, Bound<'_>, bool, bool) {
        (
            Bound(self.lo.as_ref(), false),
            Bound(self.hi.as_ref(), true),
            !self.lo_closed,
            self.hi_closed,
        )
    }
}

struct Bound<'a>(Option<&'a Rational>, bool);

impl PartialEq for Bound<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Bound<'_> {}
impl PartialOrd for Bound<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Bound<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        // None at the lower end is −∞, at the upper end +∞
        match (self.0, other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => {
                if self.1 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Some(_), None) => {
                if other.1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Some(a), Some(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo.as_ref().unwrap());
        }
        let lo = self.lo.as_ref().map_or("-inf".to_string(), Rational::to_string);
        let hi = self.hi.as_ref().map_or("+inf".to_string(), Rational::to_string);
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            lo,
            hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[a,b)`, `(-inf,0]`, `{x}` and `R`.
impl FromStr for Interval {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || IntervalError::Parse(s.to_string());
        if t == "R" {
            return Ok(Interval::real_line());
        }
        if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            return Ok(Interval::point(inner.parse().map_err(|_| err())?));
        }
        let mut chars = t.chars();
        let open_c = chars.next().ok_or_else(err)?;
        let close_c = t.chars().last().ok_or_else(err)?;
        let lo_closed = match open_c {
            '[' => true,
            '(' => false,
            _ => return Err(err()),
        };
        let hi_closed = match close_c {
            ']' => true,
            ')' => false,
            _ => return Err(err()),
        };
        let body = &t[1..t.len() - 1];
        let (a, b) = body.split_once(',').ok_or_else(err)?;
        let end = |x: &str, inf: &str| -> Result<Option<Rational>, IntervalError> {
            let x = x.trim();
            if x == inf || (inf == "+inf" && x == "inf") {
                Ok(None)
            } else {
                x.parse().map(Some).map_err(|_| err())
            }
        };
        let lo = end(a, "-inf")?;
        let hi = end(b, "+inf")?;
        if (lo.is_none() && lo_closed) || (hi.is_none() && hi_closed) {
            return Err(err());
        }
        Interval::new(lo, lo_closed, hi, hi_closed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["[0,1)", "(-inf,0]", "{3/2}", "(-inf,+inf)", "(0,1/2]"] {
            assert_eq!(iv(s).to_string(), s);
        }
        assert!("[1,0]".parse::<Interval>().is_err());
        assert!("[0,0)".parse::<Interval>().is_err());
        assert!("[-inf,0)".parse::<Interval>().is_err());
    }

    #[test]
    fn intersections() {
        assert_eq!(iv("[0,2]").intersect(&iv("[1,3]")), Some(iv("[1,2]")));
        assert_eq!(iv("[0,1)").intersect(&iv("(0,1]")), Some(iv("(0,1)")));
        assert_eq!(iv("[0,1)").intersect(&iv("[1,2]")), None);
        assert_eq!(iv("[0,1]").intersect(&iv("[1,2]")), Some(iv("{1}")));
        assert_eq!(iv("[0,1]").intersect(&Interval::real_line()), Some(iv("[0,1]")));
    }

    #[test]
    fn hom_criterion() {
        assert!(Interval::hom_nonzero(&iv("[0,1)"), &iv("[0,1)")));
        assert!(!Interval::hom_nonzero(&iv("[0,1]"), &iv("(0,1)")));
        assert!(Interval::hom_nonzero(&iv("(0,1)"), &iv("[0,1]")));
        assert!(!Interval::hom_nonzero(&iv("[0,2]"), &iv("[1,3]")));
        assert!(!Interval::hom_nonzero(&iv("[1,3]"), &iv("[0,2]")));
        assert!(Interval::hom_nonzero(&iv("(1,3)"), &iv("[0,2]")));
        assert!(!Interval::hom_nonzero(&iv("[0,1)"), &iv("[2,3)")));
    }

    #[test]
    fn ordering_puts_unbounded_first() {
        let mut v = vec![iv("[0,1]"), iv("(-inf,0)"), iv("(0,1)"), Interval::real_line()];
        v.sort();
        assert_eq!(v[0], iv("(-inf,0)"));
        assert_eq!(v[1], Interval::real_line());
        assert_eq!(v[2], iv("[0,1]"));
        assert_eq!(v[3], iv("(0,1)"));
    }
}
