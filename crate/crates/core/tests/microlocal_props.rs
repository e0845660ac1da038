mod common;

use proptest::prelude::*;
use rand::Rng;
use shv_core::exactalg::{q, Matrix, Rational};
use shv_core::linesheaf::{Covector, Interval, LineSheaf, Sign};
use shv_core::microlocal::{microlocal_rank, shift_difference};
use shv_core::quiverrep::{cokernel, direct_sum, hom_space_basis, kernel, LineQuiverRep, RepMorphism};

use common::{base_change, rng};

const ARC: usize = 0;
const POINT: usize = 1;

/// `F_0^{m_0} ⊕ F_1^{m_1} ⊕ F_2^{m_2}` with `F_0 = k_[0,∞)`, `F_1 = k_ℝ` and
/// `F_2 = k_(−∞,0)`; these are the sheaves with microsupport in `{0} × ℝ⁺`.
fn three_types(m: [usize; 3]) -> LineQuiverRep {
    let pts = [q(0, 1)];
    let ivs = [
        Interval::new(Some(q(0, 1)), true, None, false).unwrap(),
        Interval::real_line(),
        Interval::new(None, false, Some(q(0, 1)), false).unwrap(),
    ];
    let mut rep = LineQuiverRep::zero(pts.to_vec()).unwrap();
    for (iv, &k) in ivs.iter().zip(&m) {
        for _ in 0..k {
            rep = direct_sum(&rep, &LineQuiverRep::from_interval(iv, &pts).unwrap()).unwrap();
        }
    }
    rep
}

/// Entries of `u_0 K` and `P u_arc`, where `K` spans the kernel and `P`
/// projects onto the cokernel of the restriction from the stalk at 0 to the
/// arc on its left. The microlocal action of `u` at `(0; +)` is the action
/// on that kernel and cokernel.
fn mu_parts(rep: &LineQuiverRep, u: &[Matrix]) -> (Matrix, Matrix) {
    let rho = rep.left(0);
    let k = rho.kernel_basis();
    let p = rho.cokernel_projection();
    (u[POINT].mul(&k), p.mul(&u[ARC]))
}

fn mu_target(rep: &LineQuiverRep, alpha: &Rational) -> Vec<Rational> {
    let rho = rep.left(0);
    let mut v = rho.kernel_basis().scale(alpha).entries().to_vec();
    v.extend(rho.cokernel_projection().scale(alpha).entries().iter().cloned());
    v
}

fn mu_entries(rep: &LineQuiverRep, u: &[Matrix]) -> Vec<Rational> {
    let (a, b) = mu_parts(rep, u);
    let mut v = a.entries().to_vec();
    v.extend(b.entries().iter().cloned());
    v
}

/// The matrices by which `u` acts on the kernel and on the cokernel of the
/// restriction at 0, together forming its action on the microlocal stalk.
fn mu_action(rep: &LineQuiverRep, u: &[Matrix]) -> [Matrix; 2] {
    let rho = rep.left(0);
    let k = rho.kernel_basis();
    let p = rho.cokernel_projection();
    let on_kernel = k.solve(&u[POINT].mul(&k)).expect("u preserves the kernel");
    let on_cokernel = match p.right_inverse() {
        Some(s) => p.mul(&u[ARC]).mul(&s),
        None => Matrix::zeros(0, 0),
    };
    [on_kernel, on_cokernel]
}

/// Whether `m − alpha` is nilpotent.
fn unipotent_up_to(m: &Matrix, alpha: &Rational) -> bool {
    let n = m.rows();
    n == 0 || m.sub(&Matrix::scalar(n, alpha)).pow(n as u32).is_zero()
}

fn flatten(ms: &[Matrix]) -> Vec<Rational> {
    ms.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

fn combine(basis: &[RepMorphism<LineQuiverRep>], coords: &[Rational], zero: RepMorphism<LineQuiverRep>) -> RepMorphism<LineQuiverRep> {
    basis
        .iter()
        .zip(coords)
        .fold(zero, |acc, (b, x)| acc.add(&b.scale(x)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mu_scalars_pass_to_kernel_and_cokernel(
        m in [0usize..=2, 0usize..=2, 0usize..=2],
        n in [0usize..=2, 0usize..=2, 0usize..=2],
        alpha in common::alpha(),
        seed in any::<u64>(),
    ) {
        let mut r = rng(seed);
        let g = base_change(&three_types(m), &mut r);
        let h = base_change(&three_types(n), &mut r);
        let hom = hom_space_basis(&g, &h).unwrap();
        let mut c = RepMorphism::zero(&g, &h).unwrap();
        for f in &hom {
            c = c.add(&f.scale(&Rational::from(r.gen_range(-2i64..=2)))).unwrap();
        }
        let eg = hom_space_basis(&g, &g).unwrap();
        let eh = hom_space_basis(&h, &h).unwrap();

        // columns of the affine system in the coordinates of a ∈ End(G), a' ∈ End(G')
        let n_comm = flatten(c.maps()).len();
        let n_mu_g = mu_target(&g, &alpha).len();
        let n_mu_h = mu_target(&h, &alpha).len();
        let rows = n_comm + n_mu_g + n_mu_h;
        let mut cols = Vec::new();
        for e in &eg {
            let mut col = flatten(e.compose(&c).unwrap().maps());
            col.extend(mu_entries(&g, e.maps()));
            col.extend(vec![Rational::zero(); n_mu_h]);
            cols.push(col);
        }
        for e in &eh {
            let mut col: Vec<Rational> = flatten(c.compose(e).unwrap().maps()).into_iter().map(|x| -x).collect();
            col.extend(vec![Rational::zero(); n_mu_g]);
            col.extend(mu_entries(&h, e.maps()));
            cols.push(col);
        }
        let mut rhs = vec![Rational::zero(); n_comm];
        rhs.extend(mu_target(&g, &alpha));
        rhs.extend(mu_target(&h, &alpha));
        let system = Matrix::from_columns(rows, &cols);
        let mut z = system.solve_vec(&rhs).expect("alpha times the identity is a solution");
        let free = system.kernel_basis();
        for j in 0..free.cols() {
            let t = Rational::from(r.gen_range(-2i64..=2));
            for (zi, ki) in z.iter_mut().zip(free.column(j)) {
                *zi += &(&t * &ki);
            }
        }
        let a = combine(&eg, &z[..eg.len()], RepMorphism::zero(&g, &g).unwrap());
        let a2 = combine(&eh, &z[eg.len()..], RepMorphism::zero(&h, &h).unwrap());
        prop_assert_eq!(a.compose(&c).unwrap(), c.compose(&a2).unwrap());

        let (k, inc) = kernel(&c).unwrap();
        let b: Vec<Matrix> = inc
            .maps()
            .iter()
            .zip(a.maps())
            .map(|(i, av)| i.solve(&av.mul(i)).expect("a preserves the kernel"))
            .collect();
        for x in mu_action(&k, &b) {
            prop_assert!(unipotent_up_to(&x, &alpha), "kernel action {:?}", x);
        }

        let (co, proj) = cokernel(&c).unwrap();
        let b2: Vec<Matrix> = proj
            .maps()
            .iter()
            .zip(a2.maps())
            .map(|(p, av)| p.mul(av).mul(&p.right_inverse().expect("projection is onto")))
            .collect();
        for x in mu_action(&co, &b2) {
            prop_assert!(unipotent_up_to(&x, &alpha), "cokernel action {:?}", x);
        }
    }
}

/// `G = k_ℝ ⊕ k_(−∞,0)`, `G' = k_[0,∞)`, `c` the restriction on the first
/// summand. An endomorphism of `G` may send `k_(−∞,0)` into `k_ℝ`, and the
/// kernel `k_(−∞,0)²` then carries a nontrivial unipotent action, so only the
/// eigenvalue of the induced action is forced, not the action itself.
#[test]
fn kernel_action_can_be_unipotent() {
    let g = three_types([0, 1, 1]);
    let h = three_types([1, 0, 0]);
    let restriction = hom_space_basis(&g, &h).unwrap();
    assert_eq!(restriction.len(), 1);
    let c = &restriction[0];
    let ends = hom_space_basis(&g, &g).unwrap();
    let off_diagonal = ends
        .iter()
        .find(|e| mu_action(&g, e.maps())[1].is_zero() && !e.maps()[ARC].is_zero())
        .expect("an endomorphism through k_(-inf,0) -> k_R");
    let a = RepMorphism::identity(&g).add(off_diagonal).unwrap();
    let a2 = RepMorphism::identity(&h);
    assert_eq!(a.compose(c).unwrap(), c.compose(&a2).unwrap());
    let (k, inc) = kernel(c).unwrap();
    let b: Vec<Matrix> = inc
        .maps()
        .iter()
        .zip(a.maps())
        .map(|(i, av)| i.solve(&av.mul(i)).unwrap())
        .collect();
    let [_, on_cokernel] = mu_action(&k, &b);
    assert_eq!(on_cokernel.rows(), 2);
    assert!(unipotent_up_to(&on_cokernel, &Rational::one()));
    assert!(!on_cokernel.is_identity());
}

#[test]
fn three_types_have_positive_microsupport_only() {
    let pos = Covector::new(q(0, 1), Sign::Plus, 0);
    let neg = Covector::new(q(0, 1), Sign::Minus, 0);
    let s = LineSheaf::from_intervals([
        Interval::new(Some(q(0, 1)), true, None, false).unwrap(),
        Interval::real_line(),
        Interval::new(None, false, Some(q(0, 1)), false).unwrap(),
    ]);
    assert_eq!(microlocal_rank(&s, &pos).total, 2);
    assert_eq!(microlocal_rank(&s, &neg).total, 0);
}

#[test]
fn half_closed_interval_shifts_differ_by_one() {
    let s = LineSheaf::single("[0,1)".parse().unwrap());
    let d = shift_difference(&s, &Covector::new(q(0, 1), Sign::Plus, 0), &Covector::new(q(1, 1), Sign::Plus, 0)).unwrap();
    assert_eq!(d.abs(), q(1, 1));
    let c = LineSheaf::single("[0,1]".parse().unwrap());
    let d = shift_difference(&c, &Covector::new(q(0, 1), Sign::Plus, 0), &Covector::new(q(1, 1), Sign::Minus, 0)).unwrap();
    assert_eq!(d, q(0, 1));
}

