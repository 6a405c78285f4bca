//! The splitting-type engine and its filtration certificate.

use super::report::*;
use super::smith::smith_exponents;
use super::wedge::{spectral_divisor, wedge_divisor, wedge_valuation};
use crate::bundles::{local_matrix, LocalMatrix, SectionSystem};
use crate::elliptic::{BaseChange, Divisor, Place};
use crate::error::{Error, Result};
use crate::galois::{Fe, Field, Matrix};

fn bug(msg: impl Into<String>) -> Error {
    Error::InternalInconsistency(msg.into())
}

fn rank_of(field: &Field, len: usize, vecs: &[Vec<Fe>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_cols(field, len, vecs).rank()
}

/// Kernel of `[M0 | S0]`, projected to the section coordinates.
fn quotient_kernel(c0: &Matrix, s: usize) -> Vec<Vec<Fe>> {
    c0.nullspace().into_iter().map(|v| v[s..].to_vec()).collect()
}

type SeriesCol = Vec<Vec<Fe>>;

fn column(lm: &LocalMatrix, j: usize) -> SeriesCol {
    (0..lm.rows).map(|i| lm.entries[i][j].clone()).collect()
}

fn combine(f: &Field, lm: &LocalMatrix, s: usize, b: &[Fe]) -> SeriesCol {
    let mut out = vec![vec![f.zero(); lm.n]; lm.rows];
    for (i, c) in b.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        for (a, row) in out.iter_mut().enumerate() {
            for (o, e) in row.iter_mut().zip(&lm.entries[a][s + i]) {
                *o = f.add(o, &f.mul(c, e));
            }
        }
    }
    out
}

fn col_val(f: &Field, c: &SeriesCol) -> Option<usize> {
    c.iter().filter_map(|s| s.iter().position(|x| !f.is_zero(x))).min()
}

/// Fiber at `z = 0` of the saturation of the span of `cols`, by repeatedly
/// cancelling dependent leading vectors.
fn saturation_fiber(f: &Field, rows: usize, n: usize, mut cols: Vec<SeriesCol>) -> Result<Vec<Vec<Fe>>> {
    loop {
        let mut vals = Vec::with_capacity(cols.len());
        for c in &cols {
            vals.push(col_val(f, c).ok_or(Error::PrecisionExhausted)?);
        }
        let leads: Vec<Vec<Fe>> = cols.iter().zip(&vals).map(|(c, &v)| c.iter().map(|s| s[v].clone()).collect()).collect();
        if leads.is_empty() {
            return Ok(leads);
        }
        let rel = Matrix::from_cols(f, rows, &leads).nullspace();
        let Some(lambda) = rel.first() else {
            return Ok(leads);
        };
        let star = (0..cols.len()).filter(|&j| !f.is_zero(&lambda[j])).max_by_key(|&j| vals[j]).unwrap();
        let vmax = vals[star];
        let mut new = vec![vec![f.zero(); n]; rows];
        for (j, c) in cols.iter().enumerate() {
            if f.is_zero(&lambda[j]) {
                continue;
            }
            let sh = vmax - vals[j];
            for (a, row) in new.iter_mut().enumerate() {
                for k in 0..n - sh {
                    row[k + sh] = f.add(&row[k + sh], &f.mul(&lambda[j], &c[a][k]));
                }
            }
        }
        cols[star] = new;
    }
}

/// Kernel dimension, kernel basis and limit directions at a rational place.
pub fn kernel_dimension(ss: &SectionSystem, t: &Place) -> Result<KernelData> {
    let lm = local_matrix(ss, t, 2)?;
    Ok(kernel_data(ss, t, &lm))
}

fn kernel_data(ss: &SectionSystem, t: &Place, lm: &LocalMatrix) -> KernelData {
    let f = ss.field();
    let s = ss.s();
    let m = lm.rows;
    let c0 = lm.coefficient(0);
    let c1 = lm.coefficient(1);
    let full = c0.nullspace();
    let m0: Vec<Vec<Fe>> = (0..s).map(|j| c0.col(j)).collect();
    let mut span = m0.clone();
    let mut limit = Vec::new();
    for v in &full {
        let hat = c1.mul_vec(v);
        span.push(hat.clone());
        if rank_of(f, m, &span) == span.len() {
            limit.push(hat);
        } else {
            span.pop();
        }
    }
    let kernel_basis: Vec<Vec<Fe>> = full.iter().map(|v| v[s..].to_vec()).collect();
    KernelData { place: t.clone(), d: kernel_basis.len(), kernel_basis, limit_directions: limit }
}

/// Extends `vecs` (independent, length `r`) greedily by standard vectors.
fn extend_basis(f: &Field, r: usize, mut vecs: Vec<Vec<Fe>>) -> Vec<Vec<Fe>> {
    for i in 0..r {
        if vecs.len() == r {
            break;
        }
        let mut e = vec![f.zero(); r];
        e[i] = f.one();
        vecs.push(e);
        if rank_of(f, r, &vecs) < vecs.len() {
            vecs.pop();
        }
    }
    vecs
}

fn conjugate(ranks: &[usize]) -> Vec<usize> {
    let top = ranks.iter().copied().max().unwrap_or(0);
    (1..=top).map(|j| ranks.iter().filter(|&&r| r >= j).count()).collect()
}

/// Everything computed at one point of the spectral support.
fn analyze_place(ss: &SectionSystem, t: &Place, mult: i64, audit: &mut SlopeAudit) -> Result<PlaceAnalysis> {
    let f = ss.field().clone();
    let s = ss.s();
    let r = ss.count();
    let n = mult as usize + 2;
    let lm = local_matrix(ss, t, n)?;
    let m = lm.rows;
    let label = t.fmt(ss.curve());

    let exps = smith_exponents(&lm);
    if exps.iter().take(s).any(|&e| e != 0) {
        return Err(bug(format!("modulus block degenerates at {label}")));
    }
    let exponents: Vec<usize> = exps[s..].to_vec();
    if exponents.iter().any(|&e| e >= n) || exponents.iter().sum::<usize>() as i64 != mult {
        return Err(bug(format!("elementary exponents {exponents:?} at {label} do not sum to {mult}")));
    }
    let ranks: Vec<usize> = exponents.iter().copied().filter(|&e| e > 0).collect();

    let kernel = kernel_data(ss, t, &lm);
    if kernel.d != ranks.len() {
        return Err(bug(format!("kernel dimension {} at {label} but {} factors", kernel.d, ranks.len())));
    }
    if kernel.limit_directions.len() != kernel.d {
        return Err(bug(format!("limit directions at {label} span less than the kernel")));
    }

    // certificate: K_{j+1} = { a : S0 a lies in the fiber of the saturation of K_j }
    let c0 = lm.coefficient(0);
    let s0: Vec<Vec<Fe>> = (s..s + r).map(|j| c0.col(j)).collect();
    let m0: Vec<Vec<Fe>> = (0..s).map(|j| c0.col(j)).collect();
    let mut levels: Vec<Vec<Vec<Fe>>> = vec![quotient_kernel(&c0, s)];
    let fiber_of = |basis: &[Vec<Fe>]| -> Result<Vec<Vec<Fe>>> {
        let mut cols: Vec<SeriesCol> = (0..s).map(|j| column(&lm, j)).collect();
        cols.extend(basis.iter().map(|b| combine(&f, &lm, s, b)));
        saturation_fiber(&f, m, n, cols)
    };
    let mut fiber = fiber_of(levels.last().unwrap())?;
    loop {
        let mut cols = fiber.clone();
        cols.extend(s0.iter().cloned());
        let next: Vec<Vec<Fe>> = Matrix::from_cols(&f, m, &cols).nullspace().into_iter().map(|v| v[fiber.len()..].to_vec()).collect();
        if next.len() == levels.last().unwrap().len() {
            break;
        }
        // keep the previous level as a prefix of the new basis
        let mut ext = levels.last().unwrap().clone();
        for v in next {
            ext.push(v);
            if rank_of(&f, r, &ext) < ext.len() {
                ext.pop();
            }
        }
        fiber = fiber_of(&ext)?;
        levels.push(ext);
        if levels.len() > r + 1 {
            return Err(bug(format!("filtration at {label} does not stabilize")));
        }
    }
    let dims: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    if dims[0] == 0 {
        return Err(bug(format!("no section vanishes at {label}, a point of the spectral support")));
    }
    let jumps: Vec<usize> = dims.iter().enumerate().map(|(j, &d)| d - if j == 0 { 0 } else { dims[j - 1] }).collect();
    if jumps != conjugate(&ranks) {
        return Err(bug(format!("filtration jumps {jumps:?} at {label} disagree with factor ranks {ranks:?}")));
    }
    if *dims.last().unwrap() as i64 != mult {
        return Err(bug(format!("top filtration level at {label} has dimension {} not {mult}", dims.last().unwrap())));
    }
    let d_t = kernel.d;
    for (j, level) in levels.iter().enumerate() {
        let mut cols = m0.clone();
        cols.extend(level.iter().map(|b| c0.mul_vec(&[vec![f.zero(); s], b.clone()].concat())));
        if rank_of(&f, m, &cols) - s != dims[j] - d_t {
            return Err(bug(format!("evaluation of filtration level {} at {label} is degenerate", j + 1)));
        }
    }
    let mut cols: Vec<Vec<Fe>> = (0..s + r).map(|j| c0.col(j)).collect();
    cols.extend(fiber.iter().cloned());
    if rank_of(&f, m, &cols) != r + s {
        return Err(bug(format!("image and top filtration fiber at {label} do not span the fiber")));
    }

    // adapted ordering and wedge profile through exact valuations
    let order = extend_basis(&f, r, levels.last().unwrap().clone());
    let adapted = ss.with_sections(order.iter().map(|c| ss.combination(c)).collect());
    let mut delta = Vec::with_capacity(r);
    for j in 1..=r {
        delta.push(wedge_valuation(&adapted, &(0..j).collect::<Vec<_>>(), t)?);
    }
    for (j, &dj) in dims.iter().enumerate() {
        if delta[dj - 1] != dj as i64 {
            return Err(bug(format!("wedge of filtration level {} at {label} vanishes to order {} not {dj}", j + 1, delta[dj - 1])));
        }
    }
    if delta.last().copied().unwrap_or(0) != mult {
        return Err(bug(format!("top wedge order at {label} is not {mult}")));
    }

    // slope bound on the level frames, each of which spans a slope-one subbundle
    for (j, &dj) in dims.iter().enumerate() {
        let frame: Vec<usize> = (0..dj).collect();
        let deg = wedge_divisor(&adapted, &frame)?.degree();
        if deg != dj as i64 {
            return Err(bug(format!("filtration level {} at {label} has degree {deg}, not {dj}", j + 1)));
        }
        let upper = dims.get(j + 1).copied().unwrap_or(dj);
        let base = delta[dj - 1];
        for k in dj..upper {
            let mut with = frame.clone();
            with.push(k);
            let inc = wedge_valuation(&adapted, &with, t)? - base;
            audit.checks += 1;
            if inc > 1 {
                audit.violations += 1;
            }
        }
    }

    let point = t.to_point(ss.curve()).ok_or(Error::BaseChangeRequired(t.degree() as u32))?;
    Ok(PlaceAnalysis {
        place: t.clone(),
        point,
        multiplicity: mult,
        ranks,
        filtration: dims,
        profile: WedgeProfile { place: t.clone(), delta, exponents },
        kernel,
    })
}

/// Base change splitting every place of `d`.
pub(crate) fn splitting_base_change(ss: &SectionSystem, d: &Divisor) -> (BaseChange, SectionSystem) {
    let bc = BaseChange::new(ss.curve(), d.splitting_degree());
    let ssl = if bc.is_identity() { ss.clone() } else { ss.base_change(&bc) };
    (bc, ssl)
}

fn not_semistable(ss: &SectionSystem, reason: NotSemistableReason) -> StabilityReport {
    StabilityReport {
        rank: ss.declared_rank(),
        section_count: ss.count(),
        mark: ss.mc().mark().clone(),
        verdict: Verdict::NotSemistable(reason),
    }
}

pub(crate) fn top_wedge(ss: &SectionSystem) -> Result<std::result::Result<Divisor, NotSemistableReason>> {
    match spectral_divisor(ss) {
        Ok(d) => Ok(Ok(d)),
        Err(Error::SectionCountMismatch { expected, found }) => {
            Ok(Err(NotSemistableReason::SectionCountMismatch { expected, found }))
        }
        Err(Error::TopWedgeVanishes) => Ok(Err(NotSemistableReason::TopWedgeVanishes)),
        Err(e) => Err(e),
    }
}

/// Semistability verdict, spectral divisor and splitting type.
pub fn splitting_type(ss: &SectionSystem) -> Result<StabilityReport> {
    let r = ss.declared_rank();
    let sigma = match top_wedge(ss)? {
        Ok(d) => d,
        Err(reason) => return Ok(not_semistable(ss, reason)),
    };
    if sigma.degree() != r as i64 || !(sigma.is_zero() || sigma.is_effective()) {
        return Err(bug(format!("spectral divisor {} has degree {} for rank {r}", sigma.fmt(ss.curve()), sigma.degree())));
    }
    let mut audit = SlopeAudit::default();
    // each section spans a line subbundle of degree at most one
    for i in 0..ss.count() {
        let z = wedge_divisor(ss, &[i])?;
        audit.checks += 1;
        if z.degree() > 1 {
            audit.violations += 1;
        }
    }
    let (bc, ssl) = splitting_base_change(ss, &sigma);
    let sigma_l = bc.divisor(&sigma);
    let mut places = Vec::new();
    for (t, mult) in sigma_l.terms() {
        places.push(analyze_place(&ssl, t, mult, &mut audit)?);
    }
    if audit.violations > 0 {
        return Err(bug(format!("{} slope-bound violations in a semistable analysis", audit.violations)));
    }
    let mut factors: Vec<SplitFactor> = places
        .iter()
        .flat_map(|p| p.ranks.iter().map(|&rank| SplitFactor { point: p.point.clone(), rank }))
        .collect();
    factors.sort();
    let splitting = SplittingType { curve: ssl.curve().clone(), mark: ssl.mc().mark().clone(), factors };
    if splitting.divisor() != sigma_l {
        return Err(bug("splitting type does not reproduce the spectral divisor"));
    }
    let fully_split = splitting.is_fully_split();
    Ok(StabilityReport {
        rank: r,
        section_count: ss.count(),
        mark: ss.mc().mark().clone(),
        verdict: Verdict::Semistable(Box::new(SemistableRecord {
            spectral_divisor: sigma,
            split_curve: ssl.curve().clone(),
            fully_split,
            splitting,
            places,
            audit,
        })),
    })
}
