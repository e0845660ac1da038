use serde::{Deserialize, Serialize};

use super::{jordan_block, AlgError, Matrix, Poly, Rational};

/// One kind of Jordan block together with how often it occurs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JordanEntry {
    pub alpha: Rational,
    pub size: usize,
    pub mult: usize,
}

/// Multiset of Jordan blocks, kept sorted by `(alpha, size)` with merged
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct JordanType {
    blocks: Vec<JordanEntry>,
}

impl JordanType {
    pub fn new(entries: impl IntoIterator<Item = JordanEntry>) -> Self {
        let mut t = JordanType::default();
        for e in entries {
            t.add(e.alpha, e.size, e.mult);
        }
        t
    }

    pub fn add(&mut self, alpha: Rational, size: usize, mult: usize) {
        if mult == 0 || size == 0 {
            return;
        }
        match self
            .blocks
            .binary_search_by(|e| (&e.alpha, e.size).cmp(&(&alpha, size)))
        {
            Ok(i) => self.blocks[i].mult += mult,
            Err(i) => self.blocks.insert(i, JordanEntry { alpha, size, mult }),
        }
    }

    pub fn blocks(&self) -> &[JordanEntry] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|e| e.size * e.mult).sum()
    }

    pub fn multiplicity(&self, alpha: &Rational, size: usize) -> usize {
        self.blocks
            .iter()
            .find(|e| &e.alpha == alpha && e.size == size)
            .map_or(0, |e| e.mult)
    }

    /// rank((J − αI)^k) for the block-diagonal Jordan matrix J of this type.
    pub fn expected_rank(&self, alpha: &Rational, k: usize) -> usize {
        self.blocks
            .iter()
            .map(|e| {
                if &e.alpha == alpha {
                    e.size.saturating_sub(k) * e.mult
                } else {
                    e.size * e.mult
                }
            })
            .sum()
    }

    /// The block-diagonal matrix in Jordan normal form.
    pub fn to_matrix(&self) -> Matrix {
        let mut blocks = Vec::new();
        for e in &self.blocks {
            for _ in 0..e.mult {
                blocks.push(jordan_block(&e.alpha, e.size));
            }
        }
        Matrix::block_diag(&blocks)
    }
}

/// Jordan type of an invertible matrix whose eigenvalues are all rational.
pub fn jordan_blocks(m: &Matrix) -> Result<JordanType, AlgError> {
    if !m.is_square() {
        return Err(AlgError::NotSquare(m.rows(), m.cols()));
    }
    if !m.is_invertible() {
        return Err(AlgError::NotInvertible);
    }
    let n = m.rows();
    let chi = Poly::characteristic(m);
    let roots = chi.rational_roots();
    let mut rest = chi;
    let mut alg_mult = Vec::new();
    for r in &roots {
        let mut k = 0;
        while !rest.is_constant() && rest.eval(r).is_zero() {
            rest = rest.deflate(r);
            k += 1;
        }
        alg_mult.push(k);
    }
    if !rest.is_constant() {
        return Err(AlgError::SpectrumNotRational { factor: rest });
    }
    let mut out = JordanType::default();
    for (alpha, &mult) in roots.iter().zip(&alg_mult) {
        let shifted = m.sub(&Matrix::scalar(n, alpha));
        // ranks[k] = rank((m − αI)^k), k = 0..=mult+1
        let mut ranks = vec![n];
        let mut pw = Matrix::identity(n);
        for _ in 0..=mult {
            pw = pw.mul(&shifted);
            ranks.push(pw.rank());
        }
        for k in 1..=mult {
            let at_least_k = ranks[k - 1] - ranks[k];
            let at_least_k1 = ranks[k] - ranks[k + 1];
            out.add(alpha.clone(), k, at_least_k - at_least_k1);
        }
    }
    debug_assert_eq!(out.dimension(), n);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn entry(a: Rational, size: usize, mult: usize) -> JordanEntry {
        JordanEntry { alpha: a, size, mult }
    }

    #[test]
    fn scalar_matrix() {
        let t = jordan_blocks(&Matrix::scalar(1, &q(5, 3))).unwrap();
        assert_eq!(t.blocks(), &[entry(q(5, 3), 1, 1)]);
    }

    #[test]
    fn unipotent_block() {
        let t = jordan_blocks(&Matrix::from_i64_rows(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(t.blocks(), &[entry(q(1, 1), 2, 1)]);
    }

    #[test]
    fn kronecker_of_unipotents() {
        let b = jordan_block(&q(1, 1), 2);
        let t = jordan_blocks(&b.kron(&b)).unwrap();
        assert_eq!(t.blocks(), &[entry(q(1, 1), 1, 1), entry(q(1, 1), 3, 1)]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            jordan_blocks(&Matrix::zeros(2, 3)),
            Err(AlgError::NotSquare(2, 3))
        );
        assert_eq!(
            jordan_blocks(&Matrix::from_i64_rows(&[&[1, 0], &[0, 0]])),
            Err(AlgError::NotInvertible)
        );
        let rot = Matrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        match jordan_blocks(&rot) {
            Err(AlgError::SpectrumNotRational { factor }) => {
                assert_eq!(factor.to_string(), "x^2 + 1")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mixed_spectrum_round_trip() {
        let t = JordanType::new([
            entry(q(2, 1), 2, 1),
            entry(q(-1, 2), 1, 2),
            entry(q(2, 1), 1, 1),
        ]);
        let got = jordan_blocks(&t.to_matrix()).unwrap();
        assert_eq!(got, t);
        assert_eq!(got.dimension(), 5);
    }
}
