use serde::{Deserialize, Serialize};

use crate::circlesheaf::{assemble_circle_on, decompose_circle, default_points, CircleSheaf};
use crate::exactalg::{Matrix, Rational};
use crate::linesheaf::{bar_basis_at, bar_interval, decompose_line_bars, Sign};
use crate::quiverrep::{
    cokernel, direct_sum, CircleQuiverRep, QuiverRep, RepMorphism, WindowMode,
};

use super::MicroError;

/// Two open arcs `U = e((u.0, u.1))` and `V = e((v.0, v.1))` covering the
/// circle, each of length at most 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoverRaw", into = "CoverRaw")]
pub struct CoverSpec {
    u: (Rational, Rational),
    v: (Rational, Rational),
    components: Vec<(Rational, Rational)>,
}

#[derive(Serialize, Deserialize)]
struct CoverRaw {
    u: (Rational, Rational),
    v: (Rational, Rational),
}

impl TryFrom<CoverRaw> for CoverSpec {
    type Error = MicroError;
    fn try_from(r: CoverRaw) -> Result<Self, MicroError> {
        CoverSpec::new(r.u, r.v)
    }
}

impl From<CoverSpec> for CoverRaw {
    fn from(c: CoverSpec) -> Self {
        CoverRaw { u: c.u, v: c.v }
    }
}

fn shift(x: &Rational, n: i64) -> Rational {
    x + &Rational::from(n)
}

impl CoverSpec {
    pub fn new(u: (Rational, Rational), v: (Rational, Rational)) -> Result<Self, MicroError> {
        for (name, (lo, hi)) in [("U", &u), ("V", &v)] {
            let len = hi - lo;
            if len <= Rational::zero() || len > Rational::one() {
                return Err(MicroError::InvalidCover(format!(
                    "{name} = ({lo}, {hi}) must have length in (0, 1]"
                )));
            }
        }
        // the closed complement [u.1, u.0 + 1] must sit inside a lift of V
        let gap_hi = shift(&u.0, 1);
        let covers = (-3..=3).any(|n| shift(&v.0, n) < u.1 && gap_hi < shift(&v.1, n));
        if !covers {
            return Err(MicroError::InvalidCover("U and V do not cover the circle".into()));
        }
        let mut components = Vec::new();
        for n in -3..=3 {
            let lo = std::cmp::max(u.0.clone(), shift(&v.0, n));
            let hi = std::cmp::min(u.1.clone(), shift(&v.1, n));
            if lo < hi {
                components.push((lo, hi));
            }
        }
        components.sort();
        components.reverse();
        Ok(CoverSpec { u, v, components })
    }

    pub fn u(&self) -> &(Rational, Rational) {
        &self.u
    }

    pub fn v(&self) -> &(Rational, Rational) {
        &self.v
    }

    /// Components of `U ∩ V` as lifts inside the lift of `U`, starting from
    /// the right end of `U`.
    pub fn components(&self) -> &[(Rational, Rational)] {
        &self.components
    }

    fn in_arc(arc: &(Rational, Rational), x: &Rational) -> bool {
        (-2..=2).any(|n| {
            let y = shift(x, n);
            arc.0 < y && y < arc.1
        })
    }

    pub fn in_u(&self, x: &Rational) -> bool {
        Self::in_arc(&self.u, x)
    }

    pub fn in_v(&self, x: &Rational) -> bool {
        Self::in_arc(&self.v, x)
    }

    /// Index of the component of `U ∩ V` containing `x`.
    pub fn component_of(&self, x: &Rational) -> Option<usize> {
        self.components.iter().position(|c| Self::in_arc(c, x))
    }

    fn boundary(&self) -> Vec<Rational> {
        [&self.u.0, &self.u.1, &self.v.0, &self.v.1]
            .iter()
            .map(|x| x.fract_pos())
            .collect()
    }
}

/// A summand-diagonal automorphism over each component of `U ∩ V`. A list
/// with a single entry applies to every summand of that component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AutRaw", into = "AutRaw")]
pub struct AutSpec {
    scalars: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct AutRaw {
    scalars: Vec<Vec<Rational>>,
}

impl TryFrom<AutRaw> for AutSpec {
    type Error = MicroError;
    fn try_from(r: AutRaw) -> Result<Self, MicroError> {
        AutSpec::new(r.scalars)
    }
}

impl From<AutSpec> for AutRaw {
    fn from(a: AutSpec) -> Self {
        AutRaw { scalars: a.scalars }
    }
}

impl AutSpec {
    pub fn new(scalars: Vec<Vec<Rational>>) -> Result<Self, MicroError> {
        if scalars.iter().flatten().any(Rational::is_zero) || scalars.iter().any(Vec::is_empty) {
            return Err(MicroError::NonInvertibleAut);
        }
        Ok(AutSpec { scalars })
    }

    /// One scalar per component, applied to every summand.
    pub fn per_component(scalars: &[Rational]) -> Result<Self, MicroError> {
        Self::new(scalars.iter().map(|s| vec![s.clone()]).collect())
    }

    pub fn identity(components: usize) -> Self {
        AutSpec {
            scalars: vec![vec![Rational::one()]; components],
        }
    }

    /// `a` on the first component, the identity elsewhere.
    pub fn alpha_a(a: &Rational, components: usize) -> Result<Self, MicroError> {
        let mut s = vec![Rational::one(); components.max(1)];
        s[0] = a.clone();
        Self::per_component(&s)
    }

    pub fn component_count(&self) -> usize {
        self.scalars.len()
    }

    pub fn scalar(&self, component: usize, summand: usize) -> Option<&Rational> {
        let s = self.scalars.get(component)?;
        if s.len() == 1 {
            s.first()
        } else {
            s.get(summand)
        }
    }
}

/// The automorphism of `rep` over one component, as matrices indexed by the
/// circle vertices it covers.
fn component_aut(
    rep: &CircleQuiverRep,
    comp: &(Rational, Rational),
    alpha: &AutSpec,
    k: usize,
) -> Result<Vec<(usize, Matrix)>, MicroError> {
    let line = rep.pull_back_window(&comp.0, &comp.1, WindowMode::Restrict);
    let bars = decompose_line_bars(&line);
    let mut order: Vec<usize> = (0..bars.len()).collect();
    order.sort_by_key(|&i| bar_interval(&line, &bars[i]));
    let mut scal = vec![Rational::one(); bars.len()];
    for (pos, &i) in order.iter().enumerate() {
        scal[i] = alpha
            .scalar(k, pos)
            .ok_or_else(|| {
                MicroError::Shape(format!(
                    "component {k} has {} summands, automorphism lists {}",
                    bars.len(),
                    alpha.scalars[k].len()
                ))
            })?
            .clone();
    }
    let index_of = |x: &Rational| {
        let t = x.fract_pos();
        rep.points().iter().position(|p| *p == t).expect("lift of a marked point")
    };
    let lifts: Vec<usize> = line.points().iter().map(index_of).collect();
    let first_arc = match lifts.first() {
        Some(&j) => rep.arc_before(j),
        None => index_of(&comp.0),
    };
    let mut out = Vec::new();
    let dims = line.dims();
    for (w, &dim) in dims.iter().enumerate() {
        let circle_v = if w % 2 == 1 {
            2 * lifts[w / 2]
        } else if w == 0 {
            2 * first_arc + 1
        } else {
            2 * lifts[w / 2 - 1] + 1
        };
        let (b, owners) = bar_basis_at(&bars, w, dim);
        let d = Matrix::block_diag(
            &owners
                .iter()
                .map(|&i| Matrix::scalar(1, &scal[i]))
                .collect::<Vec<_>>(),
        );
        let binv = b.inverse().expect("bars form a basis");
        out.push((circle_v, b.mul(&d).mul(&binv)));
    }
    Ok(out)
}

/// The representation agreeing with `rep` on the kept vertices and zero
/// elsewhere.
fn zero_outside(rep: &CircleQuiverRep, keep: &[bool]) -> CircleQuiverRep {
    let q = rep.quiver();
    let dims: Vec<usize> = q
        .dims
        .iter()
        .zip(keep)
        .map(|(&d, &k)| if k { d } else { 0 })
        .collect();
    let arrows = q
        .arrows
        .into_iter()
        .map(|mut a| {
            if !(keep[a.src] && keep[a.tgt]) {
                a.map = Matrix::zeros(dims[a.tgt], dims[a.src]);
            }
            a
        })
        .collect();
    rep.with_quiver(crate::quiverrep::QuiverData { dims, arrows })
}

/// `F^α_{U,V}`: the cokernel of `F_{U∩V} → F_U ⊕ F_V`, `s ↦ (s, α s)`, where
/// `F_W` is the extension by zero of `F|_W`.
pub fn mv_twist(f: &CircleSheaf, cover: &CoverSpec, alpha: &AutSpec) -> Result<CircleSheaf, MicroError> {
    let d = f.single_degree().ok_or(MicroError::MixedDegrees)?;
    if alpha.component_count() != cover.components().len() {
        return Err(MicroError::Shape(format!(
            "{} components, automorphism given on {}",
            cover.components().len(),
            alpha.component_count()
        )));
    }
    let g = f.shift_degrees(-d);
    let mut points = default_points(&g);
    points.extend(cover.boundary());
    points.sort();
    points.dedup();
    let rep = assemble_circle_on(&g, &points)?;
    let m = points.len();
    let samples: Vec<Rational> = (0..2 * m)
        .map(|v| if v % 2 == 0 { points[v / 2].clone() } else { rep.arc_sample(v / 2) })
        .collect();
    let in_u: Vec<bool> = samples.iter().map(|x| cover.in_u(x)).collect();
    let in_v: Vec<bool> = samples.iter().map(|x| cover.in_v(x)).collect();
    let in_w: Vec<bool> = in_u.iter().zip(&in_v).map(|(a, b)| *a && *b).collect();
    let mut twist: Vec<Option<Matrix>> = vec![None; 2 * m];
    for (k, comp) in cover.components().iter().enumerate() {
        for (v, a) in component_aut(&rep, comp, alpha, k)? {
            twist[v] = Some(a);
        }
    }
    let fw = zero_outside(&rep, &in_w);
    let fu = zero_outside(&rep, &in_u);
    let fv = zero_outside(&rep, &in_v);
    let target = direct_sum(&fu, &fv)?;
    let dims = rep.dims();
    let maps = (0..2 * m)
        .map(|v| {
            let du = if in_u[v] { dims[v] } else { 0 };
            let dv = if in_v[v] { dims[v] } else { 0 };
            if !in_w[v] {
                return Matrix::zeros(du + dv, 0);
            }
            let a = twist[v].clone().unwrap_or_else(|| Matrix::identity(dims[v]));
            Matrix::identity(dims[v]).vstack(&a)
        })
        .collect();
    let inj = RepMorphism::new(fw, target, maps)?;
    let (coker, _) = cokernel(&inj)?;
    Ok(decompose_circle(&coker)?.shift_degrees(d))
}

/// One crossing of a component of `U ∩ V` along a given summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStep {
    pub component: usize,
    #[serde(default)]
    pub summand: usize,
    pub sign: Sign,
}

/// Monodromy along a closed path: the product of the crossed scalars, each
/// inverted on a negative crossing.
pub fn m_gamma(cover: &CoverSpec, alpha: &AutSpec, path: &[PathStep]) -> Result<Rational, MicroError> {
    if alpha.component_count() != cover.components().len() {
        return Err(MicroError::Shape(format!(
            "{} components, automorphism given on {}",
            cover.components().len(),
            alpha.component_count()
        )));
    }
    let mut acc = Rational::one();
    for s in path {
        let a = alpha.scalar(s.component, s.summand).ok_or_else(|| {
            MicroError::Shape(format!("no scalar for component {} summand {}", s.component, s.summand))
        })?;
        match s.sign {
            Sign::Plus => acc *= a,
            Sign::Minus => acc = acc / a,
        }
    }
    Ok(acc)
}

/// Čech class of the twisted object in `H¹ ≅ k^×`: the inverse of `m_γ`.
pub fn cech_class(cover: &CoverSpec, alpha: &AutSpec, path: &[PathStep]) -> Result<Rational, MicroError> {
    Ok(m_gamma(cover, alpha, path)?.recip())
}
