mod common;

use proptest::prelude::*;
use shv_core::circlesheaf::{
    assemble_circle, cohomology_circle, decompose_circle, dual_circle, tensor_circle, CircleSheaf,
    JordanBlock,
};
use shv_core::exactalg::{jordan_block, jordan_blocks};


use common::{alpha, base_change, circle_sheaf, rng};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decompose_inverts_assemble_in_any_basis(s in circle_sheaf(0..=0), seed in any::<u64>()) {
        let rep = assemble_circle(&s).unwrap();
        prop_assume!(rep.dims().iter().all(|&d| d <= 10));
        let moved = base_change(&rep, &mut rng(seed));
        prop_assert_eq!(decompose_circle(&moved).unwrap(), s);
    }

    #[test]
    fn local_systems_have_zero_euler_characteristic(a in alpha(), r in 1usize..=5) {
        let c = cohomology_circle(&CircleSheaf::local_system(JordanBlock::new(a.clone(), r)));
        let h0 = c.get(&0).copied().unwrap_or(0);
        let h1 = c.get(&1).copied().unwrap_or(0);
        prop_assert_eq!(h0, h1);
        prop_assert_eq!(h0, usize::from(a.is_one()));
    }

    #[test]
    fn duality_is_an_involution(s in circle_sheaf(-1..=1)) {
        prop_assert_eq!(dual_circle(&dual_circle(&s)), s);
    }

    #[test]
    fn tensor_is_commutative(a in circle_sheaf(-1..=1), b in circle_sheaf(-1..=1)) {
        prop_assert_eq!(tensor_circle(&a, &b), tensor_circle(&b, &a));
    }

    #[test]
    fn dual_local_system_has_inverse_transpose_monodromy(a in alpha(), r in 1usize..=4) {
        let d = dual_circle(&CircleSheaf::local_system(JordanBlock::new(a.clone(), r)));
        let m = jordan_block(&a, r).transpose().inverse().unwrap();
        let t = jordan_blocks(&m).unwrap();
        prop_assert_eq!(d.local().len(), 1);
        let l = &d.local()[0];
        prop_assert_eq!(t.multiplicity(&l.block.alpha, l.block.r), 1);
        prop_assert_eq!(t.dimension(), r);
    }
}
