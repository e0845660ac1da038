//! Verification suites. Every suite enumerates or samples a parameter
//! grid, checks each case against an independent reference and reports the
//! failing parameter tuples.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use shv_core::circlesheaf::{
    assemble_circle, assemble_circle_on, cohomology_circle, decompose_circle, dual_circle,
    end_algebra, from_circle_summand, pullback_window, ss_circle, tensor_circle, CircleSheaf,
    JordanBlock, WrappedInterval,
};
use shv_core::exactalg::{jordan_block, jordan_blocks, q, JordanType, Rational};
use shv_core::linesheaf::{
    assemble_line, autodual_structure, decompose_line, dual_line, hom_dim_line, ss_line, Covector,
    Interval, LineSheaf, LineSummand, Sign,
};
use shv_core::microlocal::{
    f_linked_exact, f_linked_interval_criterion, h_invariant, m_gamma, microlocal_rank, mv_twist,
    AutSpec, CoverSpec, PathStep,
};
use shv_core::quiverrep::{
    cokernel, hom_space_basis, hom_space_dim, tensor, LineQuiverRep, QuiverRep, RepMorphism,
};

use crate::cech::{c_map_rank, cech_cohomology, CellularSheafModel};
use crate::oracle::{
    alpha_grid, all_intervals, jordan_local_system, random_barcode, random_base_change,
    random_circle_sheaf, random_points, split_summands,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    RoundtripLine,
    Gabriel,
    HomTable,
    CohomLocal,
    TensorJordan,
    LocCstComp,
    MorphElem0,
    Twist,
    Duality,
    Linked,
    SsSigns,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::RoundtripLine,
        Suite::Gabriel,
        Suite::HomTable,
        Suite::CohomLocal,
        Suite::TensorJordan,
        Suite::LocCstComp,
        Suite::MorphElem0,
        Suite::Twist,
        Suite::Duality,
        Suite::Linked,
        Suite::SsSigns,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RoundtripLine => "roundtrip-line",
            Suite::Gabriel => "gabriel",
            Suite::HomTable => "hom-table",
            Suite::CohomLocal => "cohom-local",
            Suite::TensorJordan => "tensor-jordan",
            Suite::LocCstComp => "loc-cst-comp",
            Suite::MorphElem0 => "morph-elem0",
            Suite::Twist => "twist",
            Suite::Duality => "duality",
            Suite::Linked => "linked",
            Suite::SsSigns => "ss-signs",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Overrides the main size parameter of the suite.
    pub grid_size: Option<usize>,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            grid_size: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub grid: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub wall_ms: u128,
    pub reproduce: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{status} {}: {} cases, {} failed, {} ms ({})",
            self.suite,
            self.cases,
            self.failures.len(),
            self.wall_ms,
            self.grid
        )?;
        for x in self.failures.iter().take(20) {
            writeln!(f, "  case {}: {}", x.case, x.detail)?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "  … {} more", self.failures.len() - 20)?;
        }
        if !self.passed() {
            writeln!(f, "  reproduce: {}", self.reproduce)?;
        }
        Ok(())
    }
}

type Outcome = (String, usize, Vec<Failure>);

fn fail(case: impl fmt::Display, detail: impl fmt::Display) -> Failure {
    Failure {
        case: case.to_string(),
        detail: detail.to_string(),
    }
}

/// Runs `check` on every item, in parallel, keeping failures in item order.
fn evaluate<T: Sync>(items: &[T], check: impl Fn(&T) -> Result<(), Failure> + Sync) -> (usize, Vec<Failure>) {
    let failures = items
        .par_iter()
        .filter_map(|x| check(x).err())
        .collect::<Vec<_>>();
    (items.len(), failures)
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> VerificationReport {
    let start = Instant::now();
    let (grid, cases, failures) = match suite {
        Suite::RoundtripLine => roundtrip_line(opts),
        Suite::Gabriel => gabriel(opts),
        Suite::HomTable => hom_table(opts),
        Suite::CohomLocal => cohom_local(opts),
        Suite::TensorJordan => tensor_jordan(opts),
        Suite::LocCstComp => loc_cst_comp(opts),
        Suite::MorphElem0 => morph_elem0(opts),
        Suite::Twist => twist(opts),
        Suite::Duality => duality(opts),
        Suite::Linked => linked(opts),
        Suite::SsSigns => ss_signs(opts),
    };
    let mut reproduce = format!("shv verify-lemmas --suite {suite} --seed {}", opts.seed);
    if let Some(n) = opts.grid_size {
        reproduce.push_str(&format!(" --grid-size {n}"));
    }
    VerificationReport {
        suite: suite.name().to_string(),
        grid,
        cases,
        failures,
        wall_ms: start.elapsed().as_millis(),
        reproduce,
    }
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).unwrap_or_else(|e| format!("<unserializable: {e}>"))
}

fn samples(rep: &LineQuiverRep) -> Vec<Rational> {
    let pts = rep.points();
    let mut out: Vec<Rational> = pts.to_vec();
    out.extend((0..=pts.len()).map(|j| rep.arc_sample(j)));
    out
}

fn roundtrip_line(opts: &SuiteOptions) -> Outcome {
    let n = opts.grid_size.unwrap_or(200);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let random: Vec<(usize, LineSheaf, u64)> =
        (0..n).map(|i| (i, random_barcode(6, 3, 5, &mut rng), rng.gen())).collect();
    let (c1, mut failures) = evaluate(&random, |(i, s, seed)| {
        let rep = assemble_line(s).map_err(|e| fail(i, e))?;
        let mut r = ChaCha8Rng::seed_from_u64(*seed);
        let moved = random_base_change(&rep, &mut r);
        let back = decompose_line(&moved);
        if &back != s {
            return Err(fail(format!("random #{i} {}", json(s)), format!("decomposed to {}", json(&back))));
        }
        for x in samples(&moved) {
            if moved.stalk_dim_at(&x) != s.stalk_dim_at(&x) {
                return Err(fail(format!("random #{i} {}", json(s)), format!("stalk mismatch at {x}")));
            }
        }
        Ok(())
    });
    let small = small_reps(3);
    let (c2, f2) = evaluate(&small, |rep| {
        let want = split_summands(rep).map_err(|e| fail(json(&quiver_json(rep)), e))?;
        let got = decompose_line(rep);
        if got != want {
            return Err(fail(
                json(&quiver_json(rep)),
                format!("sweep {} vs splitting {}", json(&got), json(&want)),
            ));
        }
        Ok(())
    });
    failures.extend(f2);
    (
        format!("{n} random barcodes (≤ 6 points, mult ≤ 3, dims ≤ 5) + {c2} reps of total dim ≤ 3"),
        c1 + c2,
        failures,
    )
}

fn quiver_json(rep: &LineQuiverRep) -> shv_core::quiverrep::RepJson {
    shv_core::quiverrep::RepJson::from_line(rep)
}

/// Every line representation on 1 to 3 points of total dimension at most
/// `max_total` with arrow entries in `{0, 1, 2}`.
pub fn small_reps(max_total: usize) -> Vec<LineQuiverRep> {
    let mut out = Vec::new();
    for npts in 1..=3usize {
        let points: Vec<Rational> = (0..npts as i64).map(Rational::from).collect();
        let nv = 2 * npts + 1;
        let mut dims = vec![0usize; nv];
        loop {
            let total: usize = dims.iter().sum();
            if total >= 1 && total <= max_total {
                let stalks: Vec<usize> = (0..npts).map(|i| dims[2 * i + 1]).collect();
                let arcs: Vec<usize> = (0..=npts).map(|j| dims[2 * j]).collect();
                let shapes: Vec<(usize, usize)> = (0..npts)
                    .flat_map(|i| [(arcs[i], stalks[i]), (arcs[i + 1], stalks[i])])
                    .collect();
                let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
                for code in 0..3usize.pow(entries as u32) {
                    let mut c = code;
                    let arrows = shapes
                        .iter()
                        .map(|&(r, k)| {
                            let data = (0..r * k)
                                .map(|_| {
                                    let d = c % 3;
                                    c /= 3;
                                    Rational::from(d as i64)
                                })
                                .collect();
                            shv_core::exactalg::Matrix::new(r, k, data)
                        })
                        .collect();
                    out.push(
                        LineQuiverRep::new(points.clone(), stalks.clone(), arcs.clone(), arrows)
                            .expect("shapes match"),
                    );
                }
            }
            // next dimension vector
            let mut k = 0;
            loop {
                if k == nv {
                    break;
                }
                dims[k] += 1;
                if dims.iter().sum::<usize>() <= max_total {
                    break;
                }
                dims[k] = 0;
                k += 1;
            }
            if k == nv {
                break;
            }
        }
    }
    out
}

fn gabriel(opts: &SuiteOptions) -> Outcome {
    let n = opts.grid_size.unwrap_or(2);
    let points: Vec<Rational> = (0..n as i64).map(Rational::from).collect();
    let want = (2 * n + 1) * (2 * n + 2) / 2;
    let ivs = all_intervals(&points);
    let mut failures = Vec::new();
    let reps: Vec<LineQuiverRep> = ivs
        .iter()
        .map(|iv| LineQuiverRep::from_interval(iv, &points).expect("endpoints are marked"))
        .collect();
    if reps.len() != want {
        failures.push(fail("count", format!("{} intervals, expected {want}", reps.len())));
    }
    let (_, f) = evaluate(&reps, |r| match hom_space_dim(r, r) {
        Ok(1) => Ok(()),
        Ok(d) => Err(fail(json(&quiver_json(r)), format!("End has dimension {d}"))),
        Err(e) => Err(fail(json(&quiver_json(r)), e)),
    });
    failures.extend(f);
    let dimvecs: BTreeSet<Vec<usize>> = reps.iter().map(|r| r.dims()).collect();
    if dimvecs.len() != reps.len() {
        failures.push(fail("distinctness", "two intervals share a dimension vector"));
    }
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            let iso = hom_space_basis(a, b)
                .map(|bs| bs.iter().any(shv_core::quiverrep::is_isomorphism))
                .unwrap_or(false);
            if iso {
                failures.push(fail(json(&quiver_json(a)), "isomorphic to another interval"));
            }
        }
    }
    // positive roots of the Tits form, searched among entries 0..=2
    let nv = 2 * n + 1;
    let mut roots = BTreeSet::new();
    for code in 1..3usize.pow(nv as u32) {
        let mut c = code;
        let d: Vec<usize> = (0..nv)
            .map(|_| {
                let x = c % 3;
                c /= 3;
                x
            })
            .collect();
        if LineQuiverRep::tits_form(&d) == 1 {
            roots.insert(d);
        }
    }
    if roots != dimvecs || roots.len() != want {
        failures.push(fail(
            "tits form",
            format!("{} roots, {} interval dimension vectors", roots.len(), dimvecs.len()),
        ));
    }
    (
        format!("n = {n} marked points, {want} expected indecomposables"),
        reps.len() + 2,
        failures,
    )
}

fn hom_table(opts: &SuiteOptions) -> Outcome {
    let n = opts.grid_size.unwrap_or(4);
    let points: Vec<Rational> = (0..n as i64).map(Rational::from).collect();
    let ivs = all_intervals(&points);
    let reps: Vec<LineQuiverRep> = ivs
        .iter()
        .map(|iv| LineQuiverRep::from_interval(iv, &points).expect("endpoints are marked"))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..ivs.len())
        .flat_map(|i| (0..ivs.len()).map(move |j| (i, j)))
        .collect();
    let (cases, failures) = evaluate(&pairs, |&(i, j)| {
        let closed = hom_dim_line(&LineSheaf::single(ivs[i].clone()), &LineSheaf::single(ivs[j].clone()))
            .map_err(|e| fail(format!("{} → {}", ivs[i], ivs[j]), e))?;
        let quiver = hom_space_dim(&reps[i], &reps[j]).map_err(|e| fail(format!("{} → {}", ivs[i], ivs[j]), e))?;
        if closed != quiver {
            return Err(fail(
                format!("Hom({}, {})", ivs[i], ivs[j]),
                format!("interval rule {closed}, quiver {quiver}"),
            ));
        }
        Ok(())
    });
    (
        format!("{} intervals on a {n}-point grid, all ordered pairs", ivs.len()),
        cases,
        failures,
    )
}

fn cohom_local(opts: &SuiteOptions) -> Outcome {
    let rmax = opts.grid_size.unwrap_or(4);
    let alphas = [q(1, 1), q(2, 1), q(1, 3), q(-1, 1)];
    let point_sets = [vec![q(0, 1)], vec![q(0, 1), q(1, 3), q(2, 3)]];
    let mut items = Vec::new();
    for a in &alphas {
        for r in 1..=rmax {
            for pts in &point_sets {
                items.push((a.clone(), r, pts.clone()));
            }
        }
    }
    let (cases, failures) = evaluate(&items, |(a, r, pts)| {
        let closed = cohomology_circle(&CircleSheaf::local_system(JordanBlock::new(a.clone(), *r)));
        let model = CellularSheafModel::from_circle(&jordan_local_system(a, *r, pts))
            .map_err(|e| fail(format!("L_{{{a},{r}}}"), e))?;
        let (h0, h1) = cech_cohomology(&model);
        let c = (
            closed.get(&0).copied().unwrap_or(0),
            closed.get(&1).copied().unwrap_or(0),
        );
        if c != (h0, h1) || closed.keys().any(|k| *k != 0 && *k != 1) {
            return Err(fail(
                format!("L_{{{a},{r}}} on {} points", pts.len()),
                format!("closed form {closed:?}, cellular ({h0}, {h1})"),
            ));
        }
        Ok(())
    });
    (format!("alpha in {{1, 2, 1/3, -1}}, r ≤ {rmax}"), cases, failures)
}

fn local_jordan_type(s: &CircleSheaf) -> JordanType {
    let mut t = JordanType::default();
    for l in s.local() {
        t.add(l.block.alpha.clone(), l.block.r, l.mult);
    }
    t
}

fn tensor_jordan(opts: &SuiteOptions) -> Outcome {
    let n = opts.grid_size.unwrap_or(4);
    let grid = alpha_grid();
    let mut items = Vec::new();
    for a in &grid {
        for b in &grid {
            for p in 1..=n {
                for r in 1..=n {
                    items.push((a.clone(), p, b.clone(), r));
                }
            }
        }
    }
    let (cases, failures) = evaluate(&items, |(a, p, b, r)| {
        let case = format!("L_{{{a},{p}}} ⊗ L_{{{b},{r}}}");
        let t = tensor_circle(
            &CircleSheaf::local_system(JordanBlock::new(a.clone(), *p)),
            &CircleSheaf::local_system(JordanBlock::new(b.clone(), *r)),
        );
        let oracle = jordan_blocks(&jordan_block(a, *p).kron(&jordan_block(b, *r))).map_err(|e| fail(&case, e))?;
        if !t.wrapped().is_empty() || local_jordan_type(&t) != oracle {
            return Err(fail(case, format!("closed form {t:?}, Kronecker {oracle:?}")));
        }
        Ok(())
    });
    (
        format!("p, q ≤ {n}, alpha, beta in {{1, 2, 1/2, -1, 3}}"),
        cases,
        failures,
    )
}

/// Expected `H^i_{α,r}`: the multiplicity of `L_{α,r}` in degree `i`.
fn jordan_multiplicity(s: &CircleSheaf, a: &Rational, r: usize, i: i64) -> usize {
    s.local()
        .iter()
        .filter(|l| l.degree == i && l.block.alpha == *a && l.block.r == r)
        .map(|l| l.mult)
        .sum()
}

/// Rank of `c` on `H^i(F ⊗ L_{1/α,r})`, computed on the tensor of quiver
/// representations.
pub fn c_map_oracle(s: &CircleSheaf, a: &Rational, r: usize, i: i64) -> Result<usize, String> {
    let part = s.degree_part(i);
    if part.is_empty() {
        return Ok(0);
    }
    let rep = assemble_circle(&part).map_err(|e| e.to_string())?;
    let l = jordan_local_system(&a.recip(), r, rep.points());
    let t = tensor(&rep, &l).map_err(|e| e.to_string())?;
    c_map_rank(&t).map_err(|e| e.to_string())
}

fn loc_cst_comp(opts: &SuiteOptions) -> Outcome {
    let n = opts.grid_size.unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sheaves: Vec<(usize, CircleSheaf)> =
        (0..n).map(|k| (k, random_circle_sheaf(&[0, 1], &mut rng))).collect();
    let mut alphas = alpha_grid();
    alphas.push(q(5, 1));
    let (cases, failures) = evaluate(&sheaves, |(k, s)| {
        let case = format!("#{k} {}", json(s));
        for a in &alphas {
            for r in 1..=4 {
                for i in -1..=2 {
                    let h = h_invariant(s, a, r, i);
                    let want = jordan_multiplicity(s, a, r, i);
                    if h != want {
                        return Err(fail(&case, format!("h({a},{r},{i}) = {h}, multiplicity {want}")));
                    }
                    if s.degrees().contains(&i) {
                        let c = c_map_oracle(s, a, r, i).map_err(|e| fail(&case, e))?;
                        if c != h {
                            return Err(fail(&case, format!("h({a},{r},{i}) = {h}, c-map rank {c}")));
                        }
                    }
                }
            }
        }
        Ok(())
    });
    (
        format!("{n} random canonical circle sheaves, alpha in grid ∪ {{5}}, r ≤ 4, i in -1..=2"),
        cases,
        failures,
    )
}

/// Every multiset of Jordan blocks with eigenvalues in `alphas` and total
/// rank at most `max_rank`.
fn local_systems(alphas: &[Rational], max_rank: usize) -> Vec<CircleSheaf> {
    let blocks: Vec<JordanBlock> = alphas
        .iter()
        .flat_map(|a| (1..=max_rank).map(move |r| JordanBlock::new(a.clone(), r)))
        .collect();
    let mut out = Vec::new();
    fn rec(blocks: &[JordanBlock], start: usize, left: usize, cur: &mut Vec<JordanBlock>, out: &mut Vec<CircleSheaf>) {
        if !cur.is_empty() {
            out.push(
                cur.iter()
                    .fold(CircleSheaf::empty(), |acc, b| acc.direct_sum(&CircleSheaf::local_system(b.clone()))),
            );
        }
        for i in start..blocks.len() {
            if blocks[i].r <= left {
                cur.push(blocks[i].clone());
                rec(blocks, i, left - blocks[i].r, cur, out);
                cur.pop();
            }
        }
    }
    rec(&blocks, 0, max_rank, &mut Vec::new(), &mut out);
    out
}

fn h0(s: &CircleSheaf) -> usize {
    cohomology_circle(s).get(&0).copied().unwrap_or(0)
}

fn morph_elem0(opts: &SuiteOptions) -> Outcome {
    let max_rank = opts.grid_size.unwrap_or(4);
    let alphas = [q(1, 1), q(2, 1), q(1, 3), q(-1, 1)];
    let systems = local_systems(&alphas, max_rank);
    let mut arcs = Vec::new();
    for a in 0..4 {
        for len in 1..=4 {
            arcs.push(WrappedInterval::new(q(a, 4), q(len, 4), false, false).expect("open arc"));
        }
    }
    let items: Vec<(usize, usize)> = (0..systems.len())
        .flat_map(|i| (0..arcs.len()).map(move |j| (i, j)))
        .collect();
    let increases = std::sync::atomic::AtomicUsize::new(0);
    let (cases, failures) = evaluate(&items, |&(i, j)| {
        let l = &systems[i];
        let w = &arcs[j];
        let case = format!("L = {}, I = {}", json(l), w);
        let mut points = vec![w.lift_lo().clone(), w.lift_hi().fract_pos()];
        points.sort();
        points.dedup();
        let rl = assemble_circle_on(l, &points).map_err(|e| fail(&case, e))?;
        let ri = from_circle_summand(w, &points).map_err(|e| fail(&case, e))?;
        let basis = hom_space_basis(&ri, &rl).map_err(|e| fail(&case, e))?;
        let mut us: Vec<RepMorphism<_>> = basis.clone();
        if basis.len() > 1 {
            let sum = basis[1..].iter().try_fold(basis[0].clone(), |acc, b| acc.add(b));
            us.push(sum.map_err(|e| fail(&case, e))?);
        }
        let hl = h0(l);
        for (k, u) in us.iter().enumerate() {
            let (c, _) = cokernel(u).map_err(|e| fail(&case, e))?;
            let f = decompose_circle(&c).map_err(|e| fail(&case, e))?;
            if h0(&f) <= hl {
                continue;
            }
            increases.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            let mut cand: BTreeSet<Rational> = alphas.iter().cloned().collect();
            cand.extend(l.local().iter().chain(f.local()).map(|x| x.block.alpha.clone()));
            let drop = cand.iter().any(|a| {
                (1..=max_rank + 1).any(|r| {
                    !(a.is_one() && r == 1) && h_invariant(&f, a, r, 0) < h_invariant(l, a, r, 0)
                })
            });
            if !drop {
                return Err(fail(&case, format!("u #{k}: H^0 grows to {} with no invariant drop", h0(&f))));
            }
        }
        Ok(())
    });
    (
        format!(
            "{} local systems of rank ≤ {max_rank} × {} open arcs, {} cokernels with larger H^0",
            systems.len(),
            arcs.len(),
            increases.into_inner()
        ),
        cases,
        failures,
    )
}

fn twist(_opts: &SuiteOptions) -> Outcome {
    let cover = CoverSpec::new((q(0, 1), q(3, 4)), (q(1, 2), q(5, 4))).expect("valid cover");
    let lambdas = [q(2, 1), q(3, 1), q(1, 2), q(-1, 1)];
    let k = CircleSheaf::constant();
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut seen = BTreeMap::new();
    for lam in &lambdas {
        cases += 1;
        let a = AutSpec::alpha_a(lam, cover.components().len()).expect("nonzero");
        match mv_twist(&k, &cover, &a) {
            Ok(t) => {
                let want = CircleSheaf::local_system(JordanBlock::new(lam.clone(), 1));
                if t != want {
                    failures.push(fail(format!("lambda = {lam}"), format!("twist is {}", json(&t))));
                }
                for (lo, hi) in [cover.u(), cover.v()] {
                    if pullback_window(&t, lo, hi) != pullback_window(&k, lo, hi) {
                        failures.push(fail(
                            format!("lambda = {lam}"),
                            format!("restriction to ({lo}, {hi}) differs"),
                        ));
                    }
                }
                if let Some(prev) = seen.insert(json(&t), lam.clone()) {
                    failures.push(fail(format!("lambda = {lam}"), format!("same twist as lambda = {prev}")));
                }
            }
            Err(e) => failures.push(fail(format!("lambda = {lam}"), e)),
        }
        let path = [PathStep {
            component: 0,
            summand: 0,
            sign: Sign::Plus,
        }];
        match m_gamma(&cover, &a, &path) {
            Ok(m) if m == *lam => {}
            other => failures.push(fail(format!("m_gamma, lambda = {lam}"), format!("{other:?}"))),
        }
    }
    (
        "k_{S^1} twisted by lambda in {2, 3, 1/2, -1} on U = (0, 3/4), V = (1/2, 5/4)".into(),
        cases,
        failures,
    )
}

fn random_line_sheaf<R: Rng>(rng: &mut R) -> LineSheaf {
    let pts = random_points(rng.gen_range(1..=4), rng);
    let ivs = all_intervals(&pts);
    LineSheaf::new((0..rng.gen_range(1..=4)).map(|_| LineSummand {
        interval: ivs[rng.gen_range(0..ivs.len())].clone(),
        degree: rng.gen_range(-2..=2),
        mult: rng.gen_range(1..=2),
    }))
}

/// One point in degree 0 plus half-closed bounded intervals, closed under
/// `k_{[a,b)}` in degree `n` ↔ `k_{(a,b]}` in degree `−n−1`.
fn autodual_pattern(s: &LineSheaf) -> bool {
    let mut points = 0;
    let mut rest = BTreeMap::new();
    for x in s.summands() {
        let iv = &x.interval;
        if iv.is_point() {
            if x.degree != 0 {
                return false;
            }
            points += x.mult;
        } else if iv.is_bounded() && iv.lo_closed() != iv.hi_closed() {
            *rest.entry((iv.clone(), x.degree)).or_insert(0) += x.mult;
        } else {
            return false;
        }
    }
    points == 1
        && rest.iter().all(|((iv, d), m)| {
            let partner = Interval::new(iv.lo().cloned(), !iv.lo_closed(), iv.hi().cloned(), !iv.hi_closed())
                .expect("bounded interval");
            rest.get(&(partner, -d - 1)) == Some(m)
        })
}

fn duality(opts: &SuiteOptions) -> Outcome {
    let n = opts.grid_size.unwrap_or(200);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let lines: Vec<LineSheaf> = (0..n).map(|_| random_line_sheaf(&mut rng)).collect();
    let circles: Vec<CircleSheaf> = (0..n).map(|_| random_circle_sheaf(&[-1, 0, 2], &mut rng)).collect();
    let mut failures = Vec::new();
    let (c1, f) = evaluate(&lines, |s| {
        if dual_line(&dual_line(s)) != *s {
            return Err(fail(json(s), "D' is not involutive"));
        }
        Ok(())
    });
    failures.extend(f);
    let (c2, f) = evaluate(&circles, |s| {
        if dual_circle(&dual_circle(s)) != *s {
            return Err(fail(json(s), "D' is not involutive"));
        }
        Ok(())
    });
    failures.extend(f);
    let mut c3 = 0;
    for a in alpha_grid() {
        for r in 1..=4 {
            c3 += 1;
            let d = dual_circle(&CircleSheaf::local_system(JordanBlock::new(a.clone(), r)));
            let want = CircleSheaf::local_system(JordanBlock::new(a.recip(), r));
            // the dual local system has monodromy (A^T)^{-1}
            let oracle = jordan_blocks(&jordan_block(&a, r).transpose().inverse().expect("invertible"));
            if d != want || oracle.ok() != Some(local_jordan_type(&want)) {
                failures.push(fail(format!("L_{{{a},{r}}}"), format!("D' gives {}", json(&d))));
            }
        }
    }
    let grid = [q(0, 1), q(1, 1), q(2, 1)];
    let mut atoms: Vec<LineSummand> = Vec::new();
    for iv in all_intervals(&grid) {
        if iv.is_bounded() || iv.lo() == Some(&q(0, 1)) || iv.hi() == Some(&q(0, 1)) {
            for d in [-1, 0] {
                atoms.push(LineSummand {
                    interval: iv.clone(),
                    degree: d,
                    mult: 1,
                });
            }
        }
    }
    let mut combos = Vec::new();
    for i in 0..atoms.len() {
        combos.push(LineSheaf::new([atoms[i].clone()]));
        for j in i..atoms.len() {
            combos.push(LineSheaf::new([atoms[i].clone(), atoms[j].clone()]));
            for k in j..atoms.len() {
                combos.push(LineSheaf::new([atoms[i].clone(), atoms[j].clone(), atoms[k].clone()]));
            }
        }
    }
    let accepted = std::sync::atomic::AtomicUsize::new(0);
    let (c4, f) = evaluate(&combos, |s| {
        let got = autodual_structure(s).is_some();
        if got {
            accepted.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        if got != autodual_pattern(s) {
            return Err(fail(json(s), format!("autodual predicate says {got}")));
        }
        Ok(())
    });
    failures.extend(f);
    (
        format!(
            "{n} line + {n} circle sheaves, {c3} local systems, {c4} sheaves of ≤ 3 summands ({} autodual)",
            accepted.into_inner()
        ),
        c1 + c2 + c3 + c4,
        failures,
    )
}

fn linked(opts: &SuiteOptions) -> Outcome {
    let n = opts.grid_size.unwrap_or(5);
    let grid: Vec<Rational> = (0..n as i64).map(Rational::from).collect();
    let ivs = all_intervals(&grid);
    let mut sheaves = Vec::new();
    for i in 0..ivs.len() {
        sheaves.push(LineSheaf::from_intervals([ivs[i].clone()]));
        for j in i..ivs.len() {
            sheaves.push(LineSheaf::from_intervals([ivs[i].clone(), ivs[j].clone()]));
            for k in j..ivs.len() {
                sheaves.push(LineSheaf::from_intervals([ivs[i].clone(), ivs[j].clone(), ivs[k].clone()]));
            }
        }
    }
    let windows = [
        Interval::real_line(),
        Interval::open(q(1, 2), Rational::from(n as i64) - q(3, 2)),
    ];
    let implied = std::sync::atomic::AtomicUsize::new(0);
    let (c1, mut failures) = evaluate(&sheaves, |s| {
        let simple: Vec<Covector> = ss_line(s)
            .into_iter()
            .filter(|p| microlocal_rank(s, p).is_simple())
            .collect();
        for w in &windows {
            let inside: Vec<&Covector> = simple.iter().filter(|p| w.contains(&p.base)).collect();
            for (a, p) in inside.iter().enumerate() {
                for qq in &inside[a + 1..] {
                    let crit = f_linked_interval_criterion(s, p, qq, w).map_err(|e| fail(json(s), e))?;
                    if crit {
                        implied.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let exact = f_linked_exact(s, p, qq, w).map_err(|e| fail(json(s), e))?;
                        if !exact {
                            return Err(fail(
                                format!("{} over {w}", json(s)),
                                format!("criterion holds for {p}, {qq} but End separates them"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    });
    let mut wrapped = Vec::new();
    for lo in 0..4 {
        for len in 0..=12 {
            for (lc, hc) in [(true, true), (true, false), (false, true), (false, false)] {
                if let Some(w) = WrappedInterval::new(q(lo, 4), q(len, 4), lc, hc) {
                    wrapped.push(w);
                }
            }
        }
    }
    let (c2, f) = evaluate(&wrapped, |w| {
        let rep = assemble_circle(&CircleSheaf::wrapped_interval(w.clone())).map_err(|e| fail(w, e))?;
        let dim = hom_space_dim(&rep, &rep).map_err(|e| fail(w, e))?;
        let (a, kernel) = end_algebra(w);
        // |E(a)|: lifts of the closed end of a half-closed interval
        let want = if w.is_half_closed() {
            let a0 = if w.lo_closed() { w.lift_lo().clone() } else { w.lift_hi() };
            let e = (-4..=4)
                .filter(|t| w.lift().contains(&(&a0 + &Rational::from(*t))))
                .count();
            (e, e - 1)
        } else {
            (1, 0)
        };
        if (a, kernel) != want || dim != a {
            return Err(fail(w, format!("end_algebra {:?}, expected {:?}, quiver End {dim}", (a, kernel), want)));
        }
        Ok(())
    });
    failures.extend(f);
    (
        format!(
            "{} sheaves of ≤ 3 summands on a {n}-point grid, 2 windows, {} criterion pairs; {} wrapped intervals",
            sheaves.len(),
            implied.into_inner(),
            wrapped.len()
        ),
        c1 + c2,
        failures,
    )
}

fn cov(base: Rational, sign: Sign) -> Covector {
    Covector::new(base, sign, 0)
}

fn ss_signs(_opts: &SuiteOptions) -> Outcome {
    use Sign::{Minus, Plus};
    let z = || q(0, 1);
    let one = || q(1, 1);
    let line_table: Vec<(&str, Vec<Covector>)> = vec![
        ("(0,1)", vec![cov(z(), Minus), cov(one(), Plus)]),
        ("[0,1]", vec![cov(z(), Plus), cov(one(), Minus)]),
        ("[0,1)", vec![cov(z(), Plus), cov(one(), Plus)]),
        ("(0,1]", vec![cov(z(), Minus), cov(one(), Minus)]),
        ("[0,+inf)", vec![cov(z(), Plus)]),
        ("(0,+inf)", vec![cov(z(), Minus)]),
        ("(-inf,0]", vec![cov(z(), Minus)]),
        ("(-inf,0)", vec![cov(z(), Plus)]),
        ("{0}", vec![cov(z(), Plus), cov(z(), Minus)]),
        ("R", vec![]),
    ];
    let circle_table: Vec<(&str, Vec<Covector>)> = vec![
        ("[0,1/2)", vec![cov(z(), Plus), cov(q(1, 2), Plus)]),
        ("(1/4,3/4]", vec![cov(q(1, 4), Minus), cov(q(3, 4), Minus)]),
        ("(1/2,3/2)", vec![cov(q(1, 2), Minus), cov(q(1, 2), Plus)]),
        ("[1/2,3/2]", vec![cov(q(1, 2), Plus), cov(q(1, 2), Minus)]),
        ("{1/3}", vec![cov(q(1, 3), Plus), cov(q(1, 3), Minus)]),
        ("[3/4,9/4)", vec![cov(q(1, 4), Plus), cov(q(3, 4), Plus)]),
    ];
    let mut failures = Vec::new();
    let sorted = |mut v: Vec<Covector>| {
        v.sort();
        v
    };
    for (s, want) in &line_table {
        let iv: Interval = s.parse().expect("table literal");
        let got = ss_line(&LineSheaf::single(iv));
        if got != sorted(want.clone()) {
            failures.push(fail(format!("k_{s}"), format!("{got:?}")));
        }
    }
    for (s, want) in &circle_table {
        let iv: Interval = s.parse().expect("table literal");
        let w = WrappedInterval::from_lift(&iv).expect("bounded");
        let got = ss_circle(&CircleSheaf::wrapped_interval(w));
        if got != sorted(want.clone()) {
            failures.push(fail(format!("e_*k_{s}"), format!("{got:?}")));
        }
    }
    let loc = ss_circle(&CircleSheaf::local_system(JordanBlock::new(q(2, 1), 2)));
    if !loc.is_empty() {
        failures.push(fail("L_{2,2}", format!("{loc:?}")));
    }
    (
        "golden microsupport table".into(),
        line_table.len() + circle_table.len() + 1,
        failures,
    )
}
