use super::{Arrow, QuiverData, QuiverRep, RepError, RepMorphism};
use crate::exactalg::{Matrix, Rational};

/// Refine both representations to the union of their marked points.
pub fn common_refinement<R: QuiverRep>(a: &R, b: &R) -> Result<(R, R), RepError> {
    if a.points() == b.points() {
        return Ok((a.clone(), b.clone()));
    }
    let missing = |from: &R, into: &R| -> Vec<Rational> {
        from.points()
            .iter()
            .filter(|p| into.points().binary_search(p).is_err())
            .cloned()
            .collect()
    };
    let ra = a.refine(&missing(b, a))?;
    let rb = b.refine(&missing(a, b))?;
    Ok((ra, rb))
}

fn same_shape(a: &QuiverData, b: &QuiverData) -> Result<(), RepError> {
    if a.dims.len() != b.dims.len() || a.arrows.len() != b.arrows.len() {
        return Err(RepError::ShapeMismatch("quivers differ".into()));
    }
    Ok(())
}

/// Basis of Hom(a, b), both on the same marked points.
pub fn hom_space_basis<R: QuiverRep>(a: &R, b: &R) -> Result<Vec<RepMorphism<R>>, RepError> {
    if a.points() != b.points() {
        return Err(RepError::ShapeMismatch(
            "hom basis needs a common set of marked points".into(),
        ));
    }
    let qa = a.quiver();
    let qb = b.quiver();
    same_shape(&qa, &qb)?;
    let nv = qa.dims.len();
    // X_v is dims_b[v] × dims_a[v], stored row-major from offset[v]
    let mut offset = Vec::with_capacity(nv + 1);
    let mut total = 0;
    for v in 0..nv {
        offset.push(total);
        total += qa.dims[v] * qb.dims[v];
    }
    let var = |v: usize, i: usize, k: usize| offset[v] + i * qa.dims[v] + k;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (arr_a, arr_b) in qa.arrows.iter().zip(&qb.arrows) {
        let (s, t) = (arr_a.src, arr_a.tgt);
        // X_t · A − B · X_s = 0, entry (i, j) with i < dims_b[t], j < dims_a[s]
        for i in 0..qb.dims[t] {
            for j in 0..qa.dims[s] {
                let mut row = vec![Rational::zero(); total];
                for k in 0..qa.dims[t] {
                    let c = &arr_a.map[(k, j)];
                    if !c.is_zero() {
                        row[var(t, i, k)] += c;
                    }
                }
                for k in 0..qb.dims[s] {
                    let c = &arr_b.map[(i, k)];
                    if !c.is_zero() {
                        row[var(s, k, j)] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(rows, total);
    let kern = system.kernel_basis();
    let mut out = Vec::with_capacity(kern.cols());
    for c in 0..kern.cols() {
        let maps = (0..nv)
            .map(|v| {
                let mut m = Matrix::zeros(qb.dims[v], qa.dims[v]);
                for i in 0..qb.dims[v] {
                    for k in 0..qa.dims[v] {
                        m[(i, k)] = kern[(var(v, i, k), c)].clone();
                    }
                }
                m
            })
            .collect();
        out.push(RepMorphism::new(a.clone(), b.clone(), maps)?);
    }
    Ok(out)
}

/// dim Hom(a, b), refining to common marked points first.
pub fn hom_space_dim<R: QuiverRep>(a: &R, b: &R) -> Result<usize, RepError> {
    let (ra, rb) = common_refinement(a, b)?;
    Ok(hom_space_basis(&ra, &rb)?.len())
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel<R: QuiverRep>(f: &RepMorphism<R>) -> Result<(R, RepMorphism<R>), RepError> {
    let q = f.source().quiver();
    let ks: Vec<Matrix> = f.maps().iter().map(Matrix::kernel_basis).collect();
    let arrows = q
        .arrows
        .iter()
        .map(|a| {
            let img = a.map.mul(&ks[a.src]);
            let m = ks[a.tgt]
                .solve(&img)
                .expect("arrow maps kernel into kernel");
            Arrow {
                src: a.src,
                tgt: a.tgt,
                map: m,
            }
        })
        .collect();
    let dims = ks.iter().map(Matrix::cols).collect();
    let rep = f.source().with_quiver(QuiverData { dims, arrows });
    let inc = RepMorphism::new(rep.clone(), f.source().clone(), ks)?;
    Ok((rep, inc))
}

/// Image of `f` with its inclusion into the target.
pub fn image<R: QuiverRep>(f: &RepMorphism<R>) -> Result<(R, RepMorphism<R>), RepError> {
    let q = f.target().quiver();
    let ims: Vec<Matrix> = f.maps().iter().map(Matrix::column_space).collect();
    let arrows = q
        .arrows
        .iter()
        .map(|a| {
            let img = a.map.mul(&ims[a.src]);
            let m = ims[a.tgt].solve(&img).expect("arrow maps image into image");
            Arrow {
                src: a.src,
                tgt: a.tgt,
                map: m,
            }
        })
        .collect();
    let dims = ims.iter().map(Matrix::cols).collect();
    let rep = f.target().with_quiver(QuiverData { dims, arrows });
    let inc = RepMorphism::new(rep.clone(), f.target().clone(), ims)?;
    Ok((rep, inc))
}

/// Cokernel of `f` with the projection from the target.
pub fn cokernel<R: QuiverRep>(f: &RepMorphism<R>) -> Result<(R, RepMorphism<R>), RepError> {
    let q = f.target().quiver();
    let ps: Vec<Matrix> = f.maps().iter().map(Matrix::cokernel_projection).collect();
    let sections: Vec<Matrix> = ps
        .iter()
        .map(|p| p.right_inverse().expect("projection has full row rank"))
        .collect();
    let arrows = q
        .arrows
        .iter()
        .map(|a| Arrow {
            src: a.src,
            tgt: a.tgt,
            map: ps[a.tgt].mul(&a.map).mul(&sections[a.src]),
        })
        .collect();
    let dims = ps.iter().map(Matrix::rows).collect();
    let rep = f.target().with_quiver(QuiverData { dims, arrows });
    let proj = RepMorphism::new(f.target().clone(), rep.clone(), ps)?;
    Ok((rep, proj))
}

pub fn is_isomorphism<R: QuiverRep>(f: &RepMorphism<R>) -> bool {
    f.maps().iter().all(Matrix::is_invertible)
}

fn combine<R: QuiverRep>(
    a: &R,
    b: &R,
    dim: impl Fn(usize, usize) -> usize,
    arrow: impl Fn(&Matrix, &Matrix) -> Matrix,
) -> Result<R, RepError> {
    let (ra, rb) = common_refinement(a, b)?;
    let qa = ra.quiver();
    let qb = rb.quiver();
    same_shape(&qa, &qb)?;
    let dims = qa.dims.iter().zip(&qb.dims).map(|(&x, &y)| dim(x, y)).collect();
    let arrows = qa
        .arrows
        .iter()
        .zip(&qb.arrows)
        .map(|(x, y)| Arrow {
            src: x.src,
            tgt: x.tgt,
            map: arrow(&x.map, &y.map),
        })
        .collect();
    Ok(ra.with_quiver(QuiverData { dims, arrows }))
}

/// Vertexwise direct sum on the common refinement.
pub fn direct_sum<R: QuiverRep>(a: &R, b: &R) -> Result<R, RepError> {
    combine(a, b, |x, y| x + y, |x, y| Matrix::block_diag(&[x.clone(), y.clone()]))
}

/// Vertexwise tensor product (Kronecker products of arrows).
pub fn tensor<R: QuiverRep>(a: &R, b: &R) -> Result<R, RepError> {
    combine(a, b, |x, y| x * y, |x, y| x.kron(y))
}
