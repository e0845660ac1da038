use super::*;
use crate::circlesheaf::{pullback_window, CircleSheaf, JordanBlock, WrappedInterval};
use crate::exactalg::{q, Rational};
use crate::linesheaf::{Covector, GradedDims, Interval, LineSheaf, Sign};

fn line(ivs: &[&str]) -> LineSheaf {
    LineSheaf::from_intervals(ivs.iter().map(|s| s.parse::<Interval>().unwrap()))
}

fn wrapped(s: &str) -> CircleSheaf {
    let iv: Interval = s.parse().unwrap();
    CircleSheaf::wrapped_interval(WrappedInterval::from_lift(&iv).unwrap())
}

fn local(a: Rational, r: usize) -> CircleSheaf {
    CircleSheaf::local_system(JordanBlock::new(a, r))
}

fn cv(base: Rational, plus: bool) -> Covector {
    Covector::new(base, if plus { Sign::Plus } else { Sign::Minus }, 0)
}

#[test]
fn microlocal_rank_examples() {
    let r = microlocal_rank(&line(&["(0,1)"]), &cv(q(0, 1), false));
    assert_eq!((r.total, r.degrees), (1, GradedDims::from([(0, 1)])));
    let r = microlocal_rank(&line(&["(0,1)", "(0,2)"]), &cv(q(0, 1), false));
    assert_eq!(r.total, 2);
    assert!(!r.is_simple() && r.is_pure());
    let w = wrapped("[0,1/2)");
    let r = microlocal_rank(&w.direct_sum(&w), &cv(q(0, 1), true));
    assert_eq!((r.total, r.degrees), (2, GradedDims::from([(0, 2)])));
    let mixed = line(&["(0,1)"]).direct_sum(&line(&["(0,2)"]).shift_degrees(1));
    assert!(!microlocal_rank(&mixed, &cv(q(0, 1), false)).is_pure());
}

#[test]
fn integer_length_ends_meet() {
    let r = microlocal_rank(&wrapped("[0,1)"), &cv(q(0, 1), true));
    assert_eq!(r.total, 2);
    assert_eq!(microlocal_rank(&wrapped("[0,1]"), &cv(q(0, 1), true)).total, 1);
}

#[test]
fn shift_difference_examples() {
    let s = line(&["[0,1]"]);
    assert_eq!(shift_difference(&s, &cv(q(0, 1), true), &cv(q(1, 1), false)).unwrap(), q(0, 1));
    let s = line(&["[0,1)"]);
    let d = shift_difference(&s, &cv(q(0, 1), true), &cv(q(1, 1), true)).unwrap();
    assert_eq!(d.abs(), q(1, 1));
    assert_eq!(shift_difference(&s, &cv(q(1, 1), true), &cv(q(1, 1), true)).unwrap(), q(0, 1));
    let two = line(&["(0,1)", "(0,2)"]);
    assert!(matches!(
        shift_difference(&two, &cv(q(0, 1), false), &cv(q(1, 1), true)),
        Err(MicroError::NotSimple { rank: 2, .. })
    ));
}

#[test]
fn shift_tracks_degree() {
    let s = line(&["(0,1)"]).direct_sum(&line(&["(2,3)"]).shift_degrees(1));
    let d = shift_difference(&s, &cv(q(0, 1), false), &cv(q(2, 1), false)).unwrap();
    assert_eq!(d, q(1, 1));
}

#[test]
fn mu_scalar_of_scalar_endomorphism() {
    let s = line(&["[0,1)", "(1/2,2]", "{3}"]);
    let asm = Assembled::line(&s).unwrap();
    let u = asm.scalar(&q(7, 3)).unwrap();
    for p in crate::linesheaf::ss_line(&s) {
        assert_eq!(mu_scalar(&u, &p).unwrap(), q(7, 3));
    }
}

#[test]
fn mu_scalar_block_diagonal() {
    let s = line(&["(0,1)", "(2,3)"]);
    let asm = Assembled::line(&s).unwrap();
    let u = asm.diagonal(&[q(2, 1), q(5, 1)]).unwrap();
    assert_eq!(mu_scalar(&u, &cv(q(0, 1), false)).unwrap(), q(2, 1));
    assert_eq!(mu_scalar(&u, &cv(q(2, 1), false)).unwrap(), q(5, 1));
}

#[test]
fn mu_scalar_on_half_closed_wrapped() {
    let s = wrapped("[0,3/2)");
    let asm = Assembled::circle(&s).unwrap();
    let basis = asm.end_basis().unwrap();
    assert_eq!(basis.len(), 2);
    // the nilpotent direction: a basis element whose square vanishes
    let n = basis
        .iter()
        .find(|b| b.morphism().compose(b.morphism()).unwrap().maps().iter().all(|m| m.is_zero()))
        .expect("End has a nilpotent element")
        .morphism()
        .clone();
    let eps = q(-4, 5);
    let id = asm.scalar(&eps).unwrap().morphism().clone();
    let u = asm.endo(id.add(&n).unwrap()).unwrap();
    assert_eq!(mu_scalar(&u, &cv(q(0, 1), true)).unwrap(), eps);
    assert_eq!(mu_scalar(&u, &cv(q(1, 2), true)).unwrap(), eps);
}

#[test]
fn diagonal_scalar_is_multiplicative() {
    let s = wrapped("[0,5/2)");
    let asm = Assembled::circle(&s).unwrap();
    let basis = asm.end_basis().unwrap();
    assert_eq!(basis.len(), 3);
    for a in &basis {
        for b in &basis {
            let ab = asm.endo(b.morphism().compose(a.morphism()).unwrap()).unwrap();
            assert_eq!(ab.diagonal_scalar(0), a.diagonal_scalar(0) * b.diagonal_scalar(0));
        }
    }
}

#[test]
fn blocks_follow_hom_dimensions() {
    let s = line(&["(0,2)", "[1,3]"]);
    let asm = Assembled::line(&s).unwrap();
    for u in asm.end_basis().unwrap() {
        let b = u.blocks().unwrap();
        let copies: Vec<_> = s.copies().collect();
        for (i, row) in b.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let want = crate::linesheaf::hom_dim_line(
                    &LineSheaf::single(copies[j].interval.clone()),
                    &LineSheaf::single(copies[i].interval.clone()),
                )
                .unwrap();
                assert_eq!(cell.len(), want);
            }
        }
    }
}

#[test]
fn linked_examples() {
    let w = Interval::real_line();
    let f = line(&["(0,1)", "R"]);
    let (p, qq) = (cv(q(0, 1), false), cv(q(1, 1), true));
    assert!(f_linked_exact(&f, &p, &qq, &w).unwrap());
    assert!(f_linked_interval_criterion(&f, &p, &qq, &w).unwrap());
    let f = line(&["[0,1)", "[2,3)"]);
    let (p, qq) = (cv(q(1, 1), true), cv(q(2, 1), true));
    assert!(!f_linked_exact(&f, &p, &qq, &w).unwrap());
    assert!(!f_linked_interval_criterion(&f, &p, &qq, &w).unwrap());
    assert!(f_linked_exact(&f, &p, &p, &w).unwrap());
    assert!(f_linked_interval_criterion(&f, &p, &p, &w).unwrap());
}

#[test]
fn linked_needs_window_around_closure() {
    let f = line(&["[0,1)"]);
    let (p, qq) = (cv(q(0, 1), true), cv(q(1, 1), true));
    let small = Interval::open(q(-1, 1), q(1, 1));
    assert!(matches!(f_linked_exact(&f, &p, &qq, &small), Err(MicroError::OutsideWindow(_))));
    let big = Interval::open(q(-1, 1), q(2, 1));
    assert!(f_linked_interval_criterion(&f, &p, &qq, &big).unwrap());
    assert!(f_linked_exact(&f, &p, &qq, &big).unwrap());
}

#[test]
fn linked_on_circle() {
    let f = wrapped("[0,1/2)").direct_sum(&wrapped("(1/4,3/4)"));
    assert!(f_linked_exact_circle(&f, &cv(q(0, 1), true), &cv(q(1, 2), true)).unwrap());
    assert!(!f_linked_exact_circle(&f, &cv(q(0, 1), true), &cv(q(1, 4), false)).unwrap());
}

#[test]
fn conjugate_examples() {
    let f = wrapped("[0,1/2)").direct_sum(&CircleSheaf::constant());
    assert_eq!(conjugate_point(&f, &cv(q(0, 1), true)).unwrap(), Some(cv(q(1, 2), true)));
    assert_eq!(conjugate_point(&local(q(2, 1), 2), &cv(q(0, 1), true)).unwrap(), None);
    let sky = wrapped("{1/3}");
    assert_eq!(conjugate_point(&sky, &cv(q(1, 3), true)).unwrap(), Some(cv(q(1, 3), false)));
    assert_eq!(conjugate_point(&wrapped("[0,3/2]"), &cv(q(3, 2), false)).unwrap(), Some(cv(q(0, 1), true)));
}

#[test]
fn h_invariant_examples() {
    assert_eq!(h_invariant(&local(q(2, 1), 1), &q(2, 1), 1, 0), 1);
    for a in [q(1, 1), q(2, 1), q(-1, 1)] {
        for r in 1..4 {
            for i in -1..2 {
                assert_eq!(h_invariant(&wrapped("[0,1/2)"), &a, r, i), 0);
            }
        }
    }
    let l13 = local(q(1, 1), 3);
    assert_eq!(h_invariant(&l13, &q(1, 1), 3, 0), 1);
    assert_eq!(h_invariant(&l13, &q(1, 1), 1, 0), 0);
    assert_eq!(h_invariant(&l13.shift_degrees(2), &q(1, 1), 3, 2), 1);
}

fn cover() -> CoverSpec {
    CoverSpec::new((q(0, 1), q(3, 4)), (q(1, 2), q(5, 4))).unwrap()
}

#[test]
fn cover_components() {
    let c = cover();
    assert_eq!(c.components(), &[(q(1, 2), q(3, 4)), (q(0, 1), q(1, 4))]);
    assert!(CoverSpec::new((q(0, 1), q(1, 2)), (q(1, 2), q(1, 1))).is_err());
    assert!(CoverSpec::new((q(0, 1), q(1, 1)), (q(-1, 2), q(1, 2))).is_ok());
}

#[test]
fn twist_of_constant_sheaf() {
    let c = cover();
    for lam in [q(2, 1), q(3, 1), q(1, 2), q(-1, 1)] {
        let a = AutSpec::per_component(&[lam.clone(), q(1, 1)]).unwrap();
        assert_eq!(mv_twist(&CircleSheaf::constant(), &c, &a).unwrap(), local(lam, 1));
    }
    let id = AutSpec::identity(2);
    assert_eq!(mv_twist(&CircleSheaf::constant(), &c, &id).unwrap(), CircleSheaf::constant());
}

#[test]
fn twist_matches_monodromy_word() {
    let c = cover();
    let path = [
        PathStep { component: 0, summand: 0, sign: Sign::Plus },
        PathStep { component: 1, summand: 0, sign: Sign::Minus },
    ];
    for (a, b) in [(q(2, 1), q(3, 1)), (q(-1, 2), q(5, 1))] {
        let alpha = AutSpec::per_component(&[a.clone(), b.clone()]).unwrap();
        let m = m_gamma(&c, &alpha, &path).unwrap();
        assert_eq!(m, &a / &b);
        assert_eq!(cech_class(&c, &alpha, &path).unwrap(), &b / &a);
        assert_eq!(mv_twist(&CircleSheaf::constant(), &c, &alpha).unwrap(), local(m, 1));
    }
}

#[test]
fn twist_of_local_system() {
    let a = AutSpec::per_component(&[q(3, 1), q(1, 1)]).unwrap();
    assert_eq!(mv_twist(&local(q(2, 1), 1), &cover(), &a).unwrap(), local(q(6, 1), 1));
    let t = mv_twist(&local(q(2, 1), 2), &cover(), &a).unwrap();
    assert_eq!(t, local(q(6, 1), 2));
}

#[test]
fn twist_keeps_restrictions() {
    let c = cover();
    let f = wrapped("[1/8,3/2)").direct_sum(&CircleSheaf::constant());
    let a = AutSpec::new(vec![vec![q(2, 1), q(7, 1)], vec![q(-3, 1), q(5, 1), q(11, 1)]]).unwrap();
    let t = mv_twist(&f, &c, &a).unwrap();
    for (lo, hi) in [c.u().clone(), c.v().clone()] {
        assert_eq!(pullback_window(&t, &lo, &hi), pullback_window(&f, &lo, &hi));
    }
}

#[test]
fn twist_rejects_bad_input() {
    assert!(matches!(
        AutSpec::per_component(&[q(0, 1), q(1, 1)]),
        Err(MicroError::NonInvertibleAut)
    ));
    let mixed = CircleSheaf::constant().direct_sum(&local(q(2, 1), 1).shift_degrees(1));
    assert!(matches!(
        mv_twist(&mixed, &cover(), &AutSpec::identity(2)),
        Err(MicroError::MixedDegrees)
    ));
}

#[test]
fn m_gamma_examples() {
    let c = cover();
    let one = [PathStep { component: 0, summand: 0, sign: Sign::Plus }];
    for a in [q(2, 1), q(-1, 1), q(1, 2)] {
        assert_eq!(m_gamma(&c, &AutSpec::alpha_a(&a, 2).unwrap(), &one).unwrap(), a);
    }
    assert_eq!(m_gamma(&c, &AutSpec::identity(2), &one).unwrap(), q(1, 1));
}

#[test]
fn specs_round_trip_json() {
    let c = cover();
    let txt = serde_json::to_string(&c).unwrap();
    assert_eq!(serde_json::from_str::<CoverSpec>(&txt).unwrap(), c);
    let a = AutSpec::per_component(&[q(2, 1), q(1, 1)]).unwrap();
    let txt = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<AutSpec>(&txt).unwrap(), a);
    assert!(serde_json::from_str::<AutSpec>(r#"{"scalars":[["0"]]}"#).is_err());
}
