use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Rational};

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Quotient by `x - r`, assuming `r` is a root.
    pub fn deflate(&self, r: &Rational) -> Poly {
        let n = self.coeffs.len();
        if n <= 1 {
            return Poly::new(vec![]);
        }
        let mut out = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (1..n).rev() {
            carry = &carry * r + &self.coeffs[i];
            out[i - 1] = carry.clone();
        }
        Poly::new(out)
    }

    /// Characteristic polynomial det(xI − m), by Faddeev–LeVerrier.
    pub fn characteristic(m: &Matrix) -> Poly {
        assert!(m.is_square());
        let n = m.rows();
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut mk = Matrix::zeros(n, n);
        for k in 1..=n {
            mk = m.mul(&mk).add(&Matrix::scalar(n, &c[n - k + 1]));
            let t = m.mul(&mk).trace();
            c[n - k] = -(t / Rational::from(k));
        }
        Poly::new(c)
    }

    /// The distinct rational roots, found by the rational root theorem.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_constant() {
            return vec![];
        }
        let ints = self.square_free().integer_coefficients();
        let mut roots = Vec::new();
        // strip the zero root first so the constant term is nonzero
        let lead_zero = ints.iter().take_while(|c| c.is_zero()).count();
        if lead_zero > 0 {
            roots.push(Rational::zero());
        }
        let ints = &ints[lead_zero..];
        if ints.len() <= 1 {
            return roots;
        }
        let a0 = ints[0].abs();
        let an = ints[ints.len() - 1].abs();
        let ps = divisors(&a0);
        let qs = divisors(&an);
        for p in &ps {
            for qd in &qs {
                if !p.gcd(qd).is_one() {
                    continue;
                }
                for s in [1i64, -1] {
                    let cand = Rational::from_bigints(p * BigInt::from(s), qd.clone());
                    if self.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i))
                .collect(),
        )
    }

    /// Quotient and remainder of Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.coeffs.is_empty(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dn = d.coeffs.len();
        if r.len() < dn {
            return (Poly::new(vec![]), self.clone());
        }
        let lead = d.coeffs[dn - 1].clone();
        let mut quot = vec![Rational::zero(); r.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let c = &r[k + dn - 1] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &(&c * dc);
                }
            }
            quot[k] = c;
        }
        r.truncate(dn - 1);
        (Poly::new(quot), Poly::new(r))
    }

    /// Monic greatest common divisor; `gcd(0, 0)` is 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.coeffs.is_empty() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.coeffs.last().cloned() {
            Some(l) => Poly::new(a.coeffs.iter().map(|c| c / &l).collect()),
            None => a,
        }
    }

    /// The product of the distinct irreducible factors, up to a scalar.
    pub fn square_free(&self) -> Poly {
        if self.is_constant() {
            return self.clone();
        }
        self.div_rem(&self.gcd(&self.derivative())).0
    }

    fn integer_coefficients(&self) -> Vec<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coeffs
            .iter()
            .map(|c| (c * Rational::from(l.clone())).numer().clone())
            .collect()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut rest = n.abs();
    let mut p = BigInt::from(2);
    let add_prime = |p: &BigInt, e: u32, out: &mut Vec<BigInt>| {
        let base = out.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|d| d * &pk));
        }
    };
    while &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            add_prime(&p, e, &mut out);
        }
        p += 1;
    }
    if !rest.is_one() && !rest.is_zero() {
        add_prime(&rest, 1, &mut out);
    }
    out.sort();
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
