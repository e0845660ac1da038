use super::*;
use crate::exactalg::{q, Matrix};
use crate::quiverrep::{direct_sum, hom_space_dim, LineQuiverRep, QuiverRep};

fn iv(s: &str) -> Interval {
    s.parse().unwrap()
}

fn sheaf(ivs: &[&str]) -> LineSheaf {
    LineSheaf::from_intervals(ivs.iter().map(|s| iv(s)))
}

fn graded(entries: &[(&str, i64)]) -> LineSheaf {
    LineSheaf::new(entries.iter().map(|(s, d)| LineSummand {
        interval: iv(s),
        degree: *d,
        mult: 1,
    }))
}

#[test]
fn decompose_constant() {
    let r = LineQuiverRep::constant(1).refine(&[q(0, 1), q(1, 1)]).unwrap();
    assert_eq!(decompose_line(&r), sheaf(&["R"]));
}

#[test]
fn decompose_sum_of_two() {
    let s = sheaf(&["[0,1)", "(0,1)"]);
    let a = assemble_line(&s).unwrap();
    assert_eq!(decompose_line(&a), s);
}

#[test]
fn decompose_non_split_presentation() {
    // stalk k² at 0 mapping onto both sides by different projections:
    // k_[0,+inf) ⊕ k_(-inf,0] after a base change
    let rep = LineQuiverRep::new(
        vec![q(0, 1)],
        vec![2],
        vec![1, 1],
        vec![
            Matrix::from_i64_rows(&[&[1, 1]]),
            Matrix::from_i64_rows(&[&[1, 2]]),
        ],
    )
    .unwrap();
    assert_eq!(decompose_line(&rep), sheaf(&["(-inf,0]", "[0,+inf)"]));
}

#[test]
fn decompose_gluing() {
    // k_R written with a nonidentity gluing scalar
    let rep = LineQuiverRep::new(
        vec![q(0, 1)],
        vec![1],
        vec![1, 1],
        vec![Matrix::from_i64_rows(&[&[3]]), Matrix::from_i64_rows(&[&[-2]])],
    )
    .unwrap();
    assert_eq!(decompose_line(&rep), sheaf(&["R"]));
}

#[test]
fn assemble_examples() {
    let r = assemble_line(&sheaf(&["[0,1]"])).unwrap();
    assert_eq!(r.dims(), vec![0, 1, 1, 1, 0]);
    assert_eq!(assemble_line(&LineSheaf::empty()).unwrap(), LineQuiverRep::constant(0));
    let m = LineSheaf::new([LineSummand {
        interval: iv("[0,1]"),
        degree: 0,
        mult: 3,
    }]);
    assert_eq!(assemble_line(&m).unwrap().dims(), vec![0, 3, 3, 3, 0]);
    assert_eq!(
        assemble_line(&graded(&[("[0,1]", 0), ("[0,1]", 1)])),
        Err(LineError::MixedDegrees)
    );
}

#[test]
fn microsupport_signs() {
    let ss = ss_line(&sheaf(&["[0,+inf)"]));
    assert_eq!(ss, vec![Covector::new(q(0, 1), Sign::Plus, 0)]);
    let ss = ss_line(&sheaf(&["(0,1)"]));
    assert_eq!(
        ss,
        vec![
            Covector::new(q(0, 1), Sign::Minus, 0),
            Covector::new(q(1, 1), Sign::Plus, 0)
        ]
    );
    assert!(ss_line(&sheaf(&["R"])).is_empty());
}

#[test]
fn duality_examples() {
    assert_eq!(dual_line(&sheaf(&["[0,1]"])), sheaf(&["(0,1)"]));
    assert_eq!(dual_line(&sheaf(&["[0,1)"])), sheaf(&["(0,1]"]));
    let s = graded(&[("[0,1)", 2), ("{3}", 0), ("(-inf,1]", -1)]);
    assert_eq!(dual_line(&dual_line(&s)), s);
    assert_eq!(dual_line(&sheaf(&["{0}"])), graded(&[("{0}", 1)]));
    assert_eq!(verdier_dual_line(&sheaf(&["{0}"])), sheaf(&["{0}"]));
}

#[test]
fn tensor_examples() {
    assert_eq!(tensor_line(&sheaf(&["[0,2]"]), &sheaf(&["[1,3]"])), sheaf(&["[1,2]"]));
    let s = graded(&[("[0,1)", 2), ("{3}", 0)]);
    assert_eq!(tensor_line(&s, &sheaf(&["R"])), s);
    assert_eq!(tensor_line(&sheaf(&["[0,1)"]), &sheaf(&["(0,1]"])), sheaf(&["(0,1)"]));
    assert!(tensor_line(&sheaf(&["[0,1)"]), &sheaf(&["[1,2]"])).is_empty());
}

#[test]
fn cohomology_table() {
    let g = |s: &str| cohomology_line(&sheaf(&[s]));
    assert_eq!(g("[0,1]"), GradedDims::from([(0, 1)]));
    assert_eq!(g("(0,1)"), GradedDims::from([(1, 1)]));
    assert!(g("[0,1)").is_empty());
    assert_eq!(g("R"), GradedDims::from([(0, 1)]));
    assert_eq!(g("[0,+inf)"), GradedDims::from([(0, 1)]));
    assert!(g("(0,+inf)").is_empty());
    assert_eq!(
        cohomology_line(&graded(&[("(0,1)", 2)])),
        GradedDims::from([(3, 1)])
    );
}

#[test]
fn hom_examples_match_quiver() {
    for (a, b, want) in [
        ("[0,1)", "[0,1)", 1),
        ("(0,1)", "[0,1]", 1),
        ("[0,1]", "(0,1)", 0),
    ] {
        let (sa, sb) = (sheaf(&[a]), sheaf(&[b]));
        assert_eq!(hom_dim_line(&sa, &sb).unwrap(), want);
        let ra = assemble_line(&sa).unwrap();
        let rb = assemble_line(&sb).unwrap();
        assert_eq!(hom_space_dim(&ra, &rb).unwrap(), want);
    }
}

#[test]
fn autodual_examples() {
    assert_eq!(autodual_structure(&sheaf(&["{0}"])), Some(q(0, 1)));
    let s = graded(&[("{0}", 0), ("[1,2)", 0), ("(1,2]", -1)]);
    assert_eq!(autodual_structure(&s), Some(q(0, 1)));
    assert_eq!(autodual_structure(&sheaf(&["[0,1]"])), None);
    assert_eq!(autodual_structure(&sheaf(&["{0}", "[1,2)", "(1,2]"])), None);
}

#[test]
fn window_restriction() {
    let s = sheaf(&["[0,2]", "(1,3)", "{5}"]);
    let r = s.restrict_to_window(&iv("(1,4)"));
    assert_eq!(r, sheaf(&["(-inf,2]", "(-inf,3)"]));
}

#[test]
fn json_round_trip() {
    let s = graded(&[("[0,1)", 2), ("{3}", 0), ("(-inf,1/2]", -1), ("R", 0)]);
    let txt = serde_json::to_string(&s).unwrap();
    let back: LineSheaf = serde_json::from_str(&txt).unwrap();
    assert_eq!(back, s);
}

#[test]
fn direct_sum_of_reps_decomposes() {
    let a = assemble_line(&sheaf(&["[0,1]"])).unwrap();
    let b = assemble_line(&sheaf(&["(1/2,2)"])).unwrap();
    let s = direct_sum(&a, &b).unwrap();
    assert_eq!(decompose_line(&s), sheaf(&["[0,1]", "(1/2,2)"]));
}
