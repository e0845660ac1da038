use crate::circlesheaf::{
    assemble_circle_layout, default_points, from_circle_summand, local_system_on,
    tensor_circle, CirclePiece, CircleSheaf, JordanBlock,
};
use crate::exactalg::{Matrix, Rational};
use crate::linesheaf::{assemble_line_layout, Covector, Interval, LineSheaf, SumLayout};
use crate::quiverrep::{
    hom_space_basis, CircleQuiverRep, LineQuiverRep, QuiverRep, RepMorphism,
};

use super::rank::{all_ends, simple_owner, Owner};
use super::MicroError;

/// A single-degree sheaf assembled as a direct sum of its canonical summands,
/// one copy at a time.
#[derive(Debug, Clone)]
pub struct Assembled<R: QuiverRep> {
    rep: R,
    parts: Vec<R>,
    layout: SumLayout,
    ends: Vec<Owner>,
}

impl Assembled<LineQuiverRep> {
    pub fn line(s: &LineSheaf) -> Result<Self, MicroError> {
        Self::line_on(s, &s.endpoints())
    }

    pub fn line_on(s: &LineSheaf, points: &[Rational]) -> Result<Self, MicroError> {
        let (rep, layout) = assemble_line_layout(s, points)?;
        let parts = s
            .copies()
            .map(|x| LineQuiverRep::from_interval(&x.interval, points))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Assembled {
            rep,
            parts,
            layout,
            ends: all_ends(s),
        })
    }
}

impl Assembled<CircleQuiverRep> {
    pub fn circle(s: &CircleSheaf) -> Result<Self, MicroError> {
        Self::circle_on(s, &default_points(s))
    }

    pub fn circle_on(s: &CircleSheaf, points: &[Rational]) -> Result<Self, MicroError> {
        let (rep, layout) = assemble_circle_layout(s, points)?;
        let parts = s
            .copies()
            .iter()
            .map(|(p, _)| match p {
                CirclePiece::Wrapped(w) => from_circle_summand(w, points),
                CirclePiece::Local(b) => local_system_on(b, points),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Assembled {
            rep,
            parts,
            layout,
            ends: all_ends(s),
        })
    }
}

impl<R: QuiverRep + PartialEq> Assembled<R> {
    pub fn rep(&self) -> &R {
        &self.rep
    }

    pub fn parts(&self) -> &[R] {
        &self.parts
    }

    pub fn layout(&self) -> &SumLayout {
        &self.layout
    }

    pub fn copy_count(&self) -> usize {
        self.parts.len()
    }

    /// The copy owning `p`, if exactly one endpoint of one copy realizes it.
    fn owner(&self, p: &Covector) -> Result<Option<usize>, MicroError> {
        let os: Vec<&Owner> = self.ends.iter().filter(|o| o.covector.same_point(p)).collect();
        match os.len() {
            0 => Ok(None),
            1 => Ok(Some(os[0].copy)),
            n => Err(MicroError::NotSimple {
                covector: p.clone(),
                rank: n,
            }),
        }
    }

    pub fn endo(&self, u: RepMorphism<R>) -> Result<EndoElement<'_, R>, MicroError> {
        if u.source() != &self.rep || u.target() != &self.rep {
            return Err(MicroError::Shape(
                "endomorphism of a different representation".into(),
            ));
        }
        Ok(EndoElement { asm: self, u })
    }

    /// The endomorphism acting by `scalars[c]` on copy `c`.
    pub fn diagonal(&self, scalars: &[Rational]) -> Result<EndoElement<'_, R>, MicroError> {
        if scalars.len() != self.parts.len() {
            return Err(MicroError::Shape(format!(
                "{} scalars for {} summands",
                scalars.len(),
                self.parts.len()
            )));
        }
        let nv = self.rep.vertex_count();
        let maps = (0..nv)
            .map(|v| {
                let blocks: Vec<Matrix> = scalars
                    .iter()
                    .enumerate()
                    .map(|(c, s)| Matrix::scalar(self.layout.sizes[c][v], s))
                    .collect();
                Matrix::block_diag(&blocks)
            })
            .collect();
        self.endo(RepMorphism::new(self.rep.clone(), self.rep.clone(), maps)?)
    }

    pub fn scalar(&self, s: &Rational) -> Result<EndoElement<'_, R>, MicroError> {
        self.diagonal(&vec![s.clone(); self.parts.len()])
    }

    /// A basis of the endomorphism algebra of the representation.
    pub fn end_basis(&self) -> Result<Vec<EndoElement<'_, R>>, MicroError> {
        hom_space_basis(&self.rep, &self.rep)?
            .into_iter()
            .map(|u| self.endo(u))
            .collect()
    }
}

/// An endomorphism of an assembled sheaf.
#[derive(Debug, Clone)]
pub struct EndoElement<'a, R: QuiverRep> {
    asm: &'a Assembled<R>,
    u: RepMorphism<R>,
}

impl<R: QuiverRep + PartialEq> EndoElement<'_, R> {
    pub fn morphism(&self) -> &RepMorphism<R> {
        &self.u
    }

    /// The component from copy `t` to copy `s`.
    pub fn component(&self, s: usize, t: usize) -> Result<RepMorphism<R>, MicroError> {
        let l = &self.asm.layout;
        let maps = self
            .u
            .maps()
            .iter()
            .enumerate()
            .map(|(v, m)| l.block(m, s, t, v))
            .collect();
        Ok(RepMorphism::new(
            self.asm.parts[t].clone(),
            self.asm.parts[s].clone(),
            maps,
        )?)
    }

    /// Entry `(s, t)` holds the coordinates of the component from copy `t` to
    /// copy `s` in the basis returned by `hom_space_basis`.
    pub fn blocks(&self) -> Result<Vec<Vec<Vec<Rational>>>, MicroError> {
        let n = self.asm.parts.len();
        let mut out = vec![vec![Vec::new(); n]; n];
        for (s, row) in out.iter_mut().enumerate() {
            for (t, cell) in row.iter_mut().enumerate() {
                let comp = self.component(s, t)?;
                let basis = hom_space_basis(&self.asm.parts[t], &self.asm.parts[s])?;
                *cell = coordinates(&comp, &basis)?;
            }
        }
        Ok(out)
    }

    /// Semisimple part of the diagonal block on copy `c`: the trace of the
    /// block at a vertex where the copy lives, divided by its size.
    pub fn diagonal_scalar(&self, c: usize) -> Rational {
        let l = &self.asm.layout;
        let v = (0..self.u.maps().len())
            .find(|&v| l.sizes[c][v] > 0)
            .expect("canonical summands are nonzero");
        let b = l.block(&self.u.maps()[v], c, c, v);
        b.trace() / Rational::from(b.rows())
    }
}

fn flatten<R: QuiverRep>(f: &RepMorphism<R>) -> Vec<Rational> {
    f.maps()
        .iter()
        .flat_map(|m| m.entries().to_vec())
        .collect()
}

fn coordinates<R: QuiverRep>(
    f: &RepMorphism<R>,
    basis: &[RepMorphism<R>],
) -> Result<Vec<Rational>, MicroError> {
    let target = flatten(f);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let cols: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
    let a = Matrix::from_columns(target.len(), &cols);
    a.solve_vec(&target)
        .ok_or_else(|| MicroError::Shape("component outside the hom space".into()))
}

/// `u^μ_p`: the scalar of `u` on the unique summand owning `p`.
pub fn mu_scalar<R: QuiverRep + PartialEq>(
    u: &EndoElement<'_, R>,
    p: &Covector,
) -> Result<Rational, MicroError> {
    match u.asm.owner(p)? {
        Some(c) => Ok(u.diagonal_scalar(c)),
        None => Err(MicroError::NotSimple {
            covector: p.clone(),
            rank: 0,
        }),
    }
}

/// Do all endomorphisms of the pieces have equal μ-scalars at `p` and `q`?
/// Each degree is handled on its own: morphisms between different degrees
/// have zero diagonal blocks.
fn linked_over<R: QuiverRep + PartialEq>(
    pieces: &[Assembled<R>],
    p: &Covector,
    q: &Covector,
) -> Result<bool, MicroError> {
    for asm in pieces {
        let op = asm.owner(p)?;
        let oq = asm.owner(q)?;
        if op.is_none() && oq.is_none() {
            continue;
        }
        for u in asm.end_basis()? {
            let mp = op.map(|c| u.diagonal_scalar(c)).unwrap_or_default();
            let mq = oq.map(|c| u.diagonal_scalar(c)).unwrap_or_default();
            if mp != mq {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_window(w: &Interval, p: &Covector) -> Result<(), MicroError> {
    assert!(!w.lo_closed() && !w.hi_closed(), "window must be open");
    if w.contains(&p.base) {
        Ok(())
    } else {
        Err(MicroError::OutsideWindow(p.clone()))
    }
}

/// Are `p` and `q` linked over the open window `w`, i.e. does every
/// endomorphism of `f|_w` have the same μ-scalar at both?
pub fn f_linked_exact(
    f: &LineSheaf,
    p: &Covector,
    q: &Covector,
    w: &Interval,
) -> Result<bool, MicroError> {
    check_window(w, p)?;
    check_window(w, q)?;
    let g = f.restrict_to_window(w);
    simple_owner(&g, p)?;
    simple_owner(&g, q)?;
    if p.same_point(q) {
        return Ok(true);
    }
    let pieces = g
        .degrees()
        .into_iter()
        .map(|d| Assembled::line(&g.degree_part(d)))
        .collect::<Result<Vec<_>, _>>()?;
    linked_over(&pieces, p, q)
}

/// Linked points for endomorphisms of the whole circle sheaf.
pub fn f_linked_exact_circle(
    f: &CircleSheaf,
    p: &Covector,
    q: &Covector,
) -> Result<bool, MicroError> {
    let (p, q) = (reduce(p), reduce(q));
    simple_owner(f, &p)?;
    simple_owner(f, &q)?;
    if p.same_point(&q) {
        return Ok(true);
    }
    let pieces = f
        .degrees()
        .into_iter()
        .map(|d| Assembled::circle(&f.degree_part(d)))
        .collect::<Result<Vec<_>, _>>()?;
    linked_over(&pieces, &p, &q)
}

fn reduce(p: &Covector) -> Covector {
    Covector {
        base: p.base.fract_pos(),
        ..p.clone()
    }
}

fn contains_interval(w: &Interval, k: &Interval) -> bool {
    w.intersect(k).as_ref() == Some(k)
}

/// Sufficient condition for linked points: one summand `k_I[d]` owns both
/// and `w` contains the closure of `I`.
pub fn f_linked_interval_criterion(
    f: &LineSheaf,
    p: &Covector,
    q: &Covector,
    w: &Interval,
) -> Result<bool, MicroError> {
    let op = simple_owner(f, p)?;
    let oq = simple_owner(f, q)?;
    if p.same_point(q) {
        return Ok(true);
    }
    if op.copy != oq.copy {
        return Ok(false);
    }
    let iv = &f.copies().nth(op.copy).expect("owner is a copy").interval;
    Ok(contains_interval(w, &iv.closure()))
}

/// The covector at the other end of the wrapped summand owning `p`.
pub fn conjugate_point(f: &CircleSheaf, p: &Covector) -> Result<Option<Covector>, MicroError> {
    let p = reduce(p);
    let ends = all_ends(f);
    let os: Vec<&Owner> = ends.iter().filter(|o| o.covector.same_point(&p)).collect();
    match os.len() {
        0 => Ok(None),
        1 => {
            let o = os[0];
            Ok(ends
                .iter()
                .find(|e| e.copy == o.copy && !e.covector.same_point(&p))
                .map(|e| e.covector.clone()))
        }
        n => Err(MicroError::NotSimple {
            covector: p.clone(),
            rank: n,
        }),
    }
}

/// `dim H^i_{α,r}(f)`: the number of trivial rank-one local systems in degree
/// `i` of `f ⊗ L_{1/α,r}`, each contributing an isomorphism `c` on `H^i`.
pub fn h_invariant(f: &CircleSheaf, alpha: &Rational, r: usize, i: i64) -> usize {
    assert!(!alpha.is_zero() && r > 0, "need alpha != 0 and r > 0");
    let t = tensor_circle(f, &CircleSheaf::local_system(JordanBlock::new(alpha.recip(), r)));
    t.local()
        .iter()
        .filter(|l| l.degree == i && l.block == JordanBlock::trivial())
        .map(|l| l.mult)
        .sum()
}
