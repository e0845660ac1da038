mod common;

use proptest::prelude::*;
use shv_core::exactalg::{jordan_block, jordan_blocks, q, JordanType, Matrix, Poly, Rational};

use common::{invertible, rng, small_matrix};

fn shape() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| small_matrix(r, c))
}

fn jordan_type() -> impl Strategy<Value = JordanType> {
    proptest::collection::vec((common::alpha(), 1usize..=3, 1usize..=2), 1..=3).prop_filter_map("small", |v| {
        let mut t = JordanType::default();
        for (a, size, mult) in v {
            t.add(a, size, mult);
        }
        (t.dimension() <= 8).then_some(t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in shape()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn cokernel_projection_kills_the_image(m in shape()) {
        let p = m.cokernel_projection();
        prop_assert!(p.mul(&m).is_zero());
        prop_assert_eq!(p.rank(), m.rows() - m.rank());
    }

    #[test]
    fn inverse_when_invertible(m in (1usize..=4).prop_flat_map(|n| small_matrix(n, n))) {
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(!m.determinant().is_zero());
            }
            None => prop_assert!(m.determinant().is_zero()),
        }
    }

    #[test]
    fn jordan_type_is_a_conjugation_invariant(t in jordan_type(), seed in any::<u64>()) {
        let j = t.to_matrix();
        let p = invertible(j.rows(), &mut rng(seed));
        let m = p.mul(&j).mul(&p.inverse().unwrap());
        let found = jordan_blocks(&m).unwrap();
        prop_assert_eq!(&found, &t);
        for e in t.blocks() {
            for k in 0..=3 {
                let shifted = m.sub(&Matrix::scalar(m.rows(), &e.alpha)).pow(k as u32);
                prop_assert_eq!(shifted.rank(), t.expected_rank(&e.alpha, k));
            }
        }
    }

    #[test]
    fn characteristic_polynomial_vanishes_at_eigenvalues(t in jordan_type()) {
        let chi = Poly::characteristic(&t.to_matrix());
        prop_assert_eq!(chi.degree(), t.dimension());
        let mut roots: Vec<Rational> = t.blocks().iter().map(|e| e.alpha.clone()).collect();
        roots.sort();
        roots.dedup();
        prop_assert_eq!(chi.rational_roots(), roots);
    }
}

#[test]
fn kronecker_of_unipotent_blocks() {
    // J_2(1) ⊗ J_3(1) splits as J_2(1) ⊕ J_4(1)
    let m = jordan_block(&q(1, 1), 2).kron(&jordan_block(&q(1, 1), 3));
    let t = jordan_blocks(&m).unwrap();
    assert_eq!(t.multiplicity(&q(1, 1), 2), 1);
    assert_eq!(t.multiplicity(&q(1, 1), 4), 1);
    assert_eq!(t.dimension(), 6);
}
