use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::Rational;

/// Direction of a nonzero covector over a point of a one-dimensional base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A point of the microsupport away from the zero section, with the degree
/// of the summand it comes from and its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Covector {
    pub base: Rational,
    pub sign: Sign,
    #[serde(rename = "deg", default)]
    pub degree: i64,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

impl Covector {
    pub fn new(base: Rational, sign: Sign, degree: i64) -> Self {
        Covector {
            base,
            sign,
            degree,
            mult: 1,
        }
    }

    /// Same position in the cotangent bundle, ignoring degree and multiplicity.
    pub fn same_point(&self, other: &Covector) -> bool {
        self.base == other.base && self.sign == other.sign
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) deg {}", self.base, self.sign, self.degree)?;
        if self.mult != 1 {
            write!(f, " x{}", self.mult)?;
        }
        Ok(())
    }
}

/// Sort and merge covectors that agree in base, sign and degree.
pub fn merge_covectors(mut v: Vec<Covector>) -> Vec<Covector> {
    v.sort_by(|a, b| (&a.base, a.sign, a.degree).cmp(&(&b.base, b.sign, b.degree)));
    let mut out: Vec<Covector> = Vec::with_capacity(v.len());
    for c in v {
        match out.last_mut() {
            Some(l) if l.base == c.base && l.sign == c.sign && l.degree == c.degree => {
                l.mult += c.mult
            }
            _ => out.push(c),
        }
    }
    out
}
