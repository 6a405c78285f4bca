//! Global sections of the twisted bundle `V' = V (x) O(T)`.

use rand::Rng;

use super::presentation::{DirectSumPresentation, KernelPresentation, MonadPresentation};
use crate::elliptic::{BaseChange, Curve, Divisor, MarkedCurve, Place};
use crate::error::{Error, Result};
use crate::funcspace::{linear_combination, rr_basis, valuation, CurveFunction, LocalChart, RRBasis};
use crate::galois::{Fe, Field, Matrix};

/// A basis of sections of `V'` as vectors in `O(D_1 + T) + ... + O(D_m + T)`.
///
/// In the monad case `modulus` holds the image of `O(T)^s`; the sections
/// then stand for their classes in the quotient.
#[derive(Clone, Debug)]
pub struct SectionSystem {
    mc: MarkedCurve,
    ambient: Vec<Divisor>,
    twist: Divisor,
    sections: Vec<Vec<CurveFunction>>,
    modulus: Vec<Vec<CurveFunction>>,
    declared_rank: usize,
}

impl SectionSystem {
    /// Checks that every component lies in `L(D_a + T)` and that the
    /// modulus vectors and sections together are independent.
    pub fn new(
        mc: MarkedCurve,
        ambient: Vec<Divisor>,
        twist: Divisor,
        sections: Vec<Vec<CurveFunction>>,
        modulus: Vec<Vec<CurveFunction>>,
        declared_rank: usize,
    ) -> Result<SectionSystem> {
        let ss = SectionSystem { mc, ambient, twist, sections, modulus, declared_rank };
        ss.validate()?;
        Ok(ss)
    }

    pub(crate) fn from_parts(
        mc: MarkedCurve,
        ambient: Vec<Divisor>,
        twist: Divisor,
        sections: Vec<Vec<CurveFunction>>,
        modulus: Vec<Vec<CurveFunction>>,
        declared_rank: usize,
    ) -> SectionSystem {
        SectionSystem { mc, ambient, twist, sections, modulus, declared_rank }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.ambient.len();
        let bases: Vec<RRBasis> = self
            .ambient
            .iter()
            .map(|d| rr_basis(self.curve(), &d.add(&self.twist)))
            .collect::<Result<_>>()?;
        let mut vecs = Vec::new();
        for v in self.modulus.iter().chain(&self.sections) {
            if v.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: v.len() });
            }
            vecs.push(coordinates(&bases, v).ok_or_else(|| {
                Error::InvalidPresentation("a section component has poles outside D_a + T".into())
            })?);
        }
        let len: usize = bases.iter().map(|b| b.dim()).sum();
        if !crate::galois::independent(self.field(), len, &vecs) {
            return Err(Error::InvalidPresentation("sections are linearly dependent".into()));
        }
        Ok(())
    }

    pub fn mc(&self) -> &MarkedCurve {
        &self.mc
    }

    pub fn curve(&self) -> &Curve {
        self.mc.curve()
    }

    pub fn field(&self) -> &Field {
        self.mc.curve().field()
    }

    pub fn ambient(&self) -> &[Divisor] {
        &self.ambient
    }

    pub fn twist(&self) -> &Divisor {
        &self.twist
    }

    pub fn sections(&self) -> &[Vec<CurveFunction>] {
        &self.sections
    }

    pub fn modulus(&self) -> &[Vec<CurveFunction>] {
        &self.modulus
    }

    pub fn declared_rank(&self) -> usize {
        self.declared_rank
    }

    pub fn count(&self) -> usize {
        self.sections.len()
    }

    pub fn s(&self) -> usize {
        self.modulus.len()
    }

    /// `sum_i c_i s_i` componentwise.
    pub fn combination(&self, coeffs: &[Fe]) -> Vec<CurveFunction> {
        (0..self.ambient.len())
            .map(|a| {
                let comps: Vec<CurveFunction> = self.sections.iter().map(|s| s[a].clone()).collect();
                linear_combination(self.curve(), coeffs, &comps)
            })
            .collect()
    }

    /// New sections `s'_j = sum_i g[i][j] s_i` for an invertible `g`.
    pub fn change_basis(&self, g: &Matrix) -> Result<SectionSystem> {
        let n = self.count();
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.rows() });
        }
        if g.inverse().is_none() {
            return Err(Error::InvalidPresentation("basis change is singular".into()));
        }
        let sections = (0..n).map(|j| self.combination(&g.col(j))).collect();
        Ok(SectionSystem { sections, ..self.clone() })
    }

    /// The same system with the given sections in place of the old ones.
    pub fn with_sections(&self, sections: Vec<Vec<CurveFunction>>) -> SectionSystem {
        SectionSystem { sections, ..self.clone() }
    }

    /// The system viewed as a kernel system: modulus vectors become
    /// ordinary sections placed first.
    pub fn forget_modulus(&self) -> SectionSystem {
        let mut sections = self.modulus.clone();
        sections.extend(self.sections.iter().cloned());
        SectionSystem {
            sections,
            modulus: Vec::new(),
            declared_rank: self.declared_rank + self.s(),
            ..self.clone()
        }
    }

    pub fn base_change(&self, bc: &BaseChange) -> SectionSystem {
        let mc = MarkedCurve::new(bc.target().clone(), bc.point(self.mc.mark())).expect("mark stays on the curve");
        let map = |vs: &Vec<Vec<CurveFunction>>| -> Vec<Vec<CurveFunction>> {
            vs.iter().map(|v| v.iter().map(|f| f.base_change(bc)).collect()).collect()
        };
        SectionSystem {
            mc,
            ambient: self.ambient.iter().map(|d| bc.divisor(d)).collect(),
            twist: bc.divisor(&self.twist),
            sections: map(&self.sections),
            modulus: map(&self.modulus),
            declared_rank: self.declared_rank,
        }
    }

    /// Pole allowance of row `a` at `t`: `mult_t(D_a + T)` for sections,
    /// `mult_t(D_a)` for modulus columns.
    pub(crate) fn weight(&self, a: usize, t: &Place, modulus: bool) -> i64 {
        let d = self.ambient[a].mult(t);
        if modulus {
            d
        } else {
            d + self.twist.mult(t)
        }
    }
}

fn coordinates(bases: &[RRBasis], v: &[CurveFunction]) -> Option<Vec<Fe>> {
    let mut out = Vec::new();
    for (b, f) in bases.iter().zip(v) {
        out.extend(b.coordinates(f)?);
    }
    Some(out)
}

fn embed(curve: &Curve, m: usize, a: usize, f: CurveFunction) -> Vec<CurveFunction> {
    let mut v = vec![CurveFunction::zero(curve); m];
    v[a] = f;
    v
}

fn check_twist(twist: &Divisor) -> Result<()> {
    if twist.degree() < 1 {
        return Err(Error::InvalidPresentation(format!("twist of degree {} must have positive degree", twist.degree())));
    }
    Ok(())
}

pub fn sections_direct_sum(p: &DirectSumPresentation, twist: &Divisor) -> Result<SectionSystem> {
    check_twist(twist)?;
    let curve = p.mc.curve();
    let m = p.summands.len();
    let mut sections = Vec::new();
    for (a, d) in p.summands.iter().enumerate() {
        for f in rr_basis(curve, &d.add(twist))?.basis() {
            sections.push(embed(curve, m, a, f.clone()));
        }
    }
    Ok(SectionSystem::from_parts(p.mc.clone(), p.summands.clone(), twist.clone(), sections, Vec::new(), m))
}

/// Bases of `L(D_a + T)` and the matrix of `g_*` from their concatenation
/// to `L(D_0 + T)`.
struct KernelSpace {
    bases: Vec<RRBasis>,
    kernel: Vec<Vec<Fe>>,
}

fn kernel_vectors(p: &KernelPresentation, twist: &Divisor) -> Result<KernelSpace> {
    let curve = p.mc.curve();
    let field = curve.field();
    let bases: Vec<RRBasis> = p.ambient.iter().map(|d| rr_basis(curve, &d.add(twist))).collect::<Result<_>>()?;
    let target = rr_basis(curve, &p.target.add(twist))?;
    let mut cols = Vec::new();
    for (a, b) in bases.iter().enumerate() {
        for f in b.basis() {
            let img = p.g[a].mul(f);
            cols.push(target.coordinates(&img).ok_or_else(|| {
                Error::InternalInconsistency("g_a * L(D_a + T) is not inside L(D_0 + T)".into())
            })?);
        }
    }
    let n = cols.len();
    let kernel = if n == 0 { Vec::new() } else { Matrix::from_cols(field, target.dim(), &cols).nullspace() };
    Ok(KernelSpace { bases, kernel })
}

fn vector_to_sections(curve: &Curve, bases: &[RRBasis], v: &[Fe]) -> Vec<CurveFunction> {
    let mut out = Vec::with_capacity(bases.len());
    let mut off = 0;
    for b in bases {
        out.push(linear_combination(curve, &v[off..off + b.dim()], b.basis()));
        off += b.dim();
    }
    out
}

fn check_in_kernel(p: &KernelPresentation, v: &[CurveFunction]) -> Result<()> {
    let mut acc = CurveFunction::zero(p.mc.curve());
    for (g, f) in p.g.iter().zip(v) {
        acc = acc.add(&g.mul(f));
    }
    if acc.is_zero() {
        Ok(())
    } else {
        Err(Error::InternalInconsistency("a kernel section is not killed by g".into()))
    }
}

pub fn sections_kernel(p: &KernelPresentation, twist: &Divisor) -> Result<SectionSystem> {
    check_twist(twist)?;
    let curve = p.mc.curve();
    let kd = kernel_vectors(p, twist)?;
    let mut sections = Vec::with_capacity(kd.kernel.len());
    for v in &kd.kernel {
        let s = vector_to_sections(curve, &kd.bases, v);
        check_in_kernel(p, &s)?;
        sections.push(s);
    }
    Ok(SectionSystem::from_parts(p.mc.clone(), p.ambient.clone(), twist.clone(), sections, Vec::new(), p.rank()))
}

fn monad_modulus(p: &MonadPresentation, twist: &Divisor, bases: &[RRBasis]) -> Result<(Vec<Vec<CurveFunction>>, Vec<Vec<Fe>>)> {
    let curve = p.mc().curve();
    let w = rr_basis(curve, twist)?;
    let mut fns = Vec::new();
    let mut vecs = Vec::new();
    for j in 0..p.s() {
        for wk in w.basis() {
            let v: Vec<CurveFunction> = p.f.iter().map(|row| row[j].mul(wk)).collect();
            vecs.push(coordinates(bases, &v).ok_or_else(|| {
                Error::InternalInconsistency("f_*(w) is not a section of the twisted ambient bundle".into())
            })?);
            fns.push(v);
        }
    }
    Ok((fns, vecs))
}

fn monad_system(
    p: &MonadPresentation,
    twist: &Divisor,
    mut pick: impl FnMut(&Field, &[Vec<Fe>], &[Vec<Fe>]) -> Vec<Vec<Fe>>,
) -> Result<SectionSystem> {
    check_twist(twist)?;
    let curve = p.mc().curve();
    let kd = kernel_vectors(&p.kernel, twist)?;
    let (modulus, mvecs) = monad_modulus(p, twist, &kd.bases)?;
    let chosen = pick(curve.field(), &mvecs, &kd.kernel);
    let mut sections = Vec::with_capacity(chosen.len());
    for v in &chosen {
        let s = vector_to_sections(curve, &kd.bases, v);
        check_in_kernel(&p.kernel, &s)?;
        sections.push(s);
    }
    Ok(SectionSystem::from_parts(
        p.mc().clone(),
        p.kernel.ambient.clone(),
        twist.clone(),
        sections,
        modulus,
        p.rank(),
    ))
}

/// Modulus block `f_*(L(T)^s)` and a complement in `H^0(ker g')` chosen
/// greedily from the echelon kernel basis.
pub fn sections_monad(p: &MonadPresentation, twist: &Divisor) -> Result<SectionSystem> {
    monad_system(p, twist, |field, mvecs, kernel| {
        let len = kernel.first().map_or(0, |v| v.len());
        let mut span: Vec<Vec<Fe>> = mvecs.to_vec();
        let mut chosen = Vec::new();
        for v in kernel {
            span.push(v.clone());
            if crate::galois::independent(field, len, &span) {
                chosen.push(v.clone());
            } else {
                span.pop();
            }
        }
        chosen
    })
}

/// As [`sections_monad`], with a complement built from random combinations
/// of the kernel basis.
pub fn sections_monad_random<R: Rng + ?Sized>(p: &MonadPresentation, twist: &Divisor, rng: &mut R) -> Result<SectionSystem> {
    monad_system(p, twist, |field, mvecs, kernel| {
        let len = kernel.first().map_or(0, |v| v.len());
        let want = kernel.len().saturating_sub(mvecs.len());
        let mut span: Vec<Vec<Fe>> = mvecs.to_vec();
        let mut chosen = Vec::new();
        let mut tries = 0;
        while chosen.len() < want && tries < 1000 {
            tries += 1;
            let mut v = vec![field.zero(); len];
            for k in kernel {
                let c = field.random(rng);
                for (vi, ki) in v.iter_mut().zip(k) {
                    *vi = field.add(vi, &field.mul(&c, ki));
                }
            }
            span.push(v.clone());
            if crate::galois::independent(field, len, &span) {
                chosen.push(v);
            } else {
                span.pop();
            }
        }
        chosen
    })
}

/// Trivialized values at `t`: `m x s` for the modulus block and `m x n`
/// for the sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub modulus: Matrix,
    pub sections: Matrix,
}

/// Truncated power-series matrix over `K[[z]]/(z^n)`; `entries[i][j][k]`
/// is the coefficient of `z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMatrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub n: usize,
    pub entries: Vec<Vec<Vec<Fe>>>,
}

impl LocalMatrix {
    /// The coefficient matrix of `z^k`.
    pub fn coefficient(&self, k: usize) -> Matrix {
        let rows = (0..self.rows).map(|i| (0..self.cols).map(|j| self.entries[i][j][k].clone()).collect()).collect();
        if self.rows == 0 {
            return Matrix::zeros(&self.field, 0, self.cols);
        }
        Matrix::from_rows(&self.field, rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> LocalMatrix {
        LocalMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: idx.len(),
            n: self.n,
            entries: self.entries.iter().map(|r| idx.iter().map(|&j| r[j].clone()).collect()).collect(),
        }
    }
}

fn local_entry(chart: &mut LocalChart, g: &CurveFunction, weight: i64, n: usize) -> Result<Vec<Fe>> {
    let field = g.curve().field().clone();
    let mut out = vec![field.zero(); n];
    if g.is_zero() {
        return Ok(out);
    }
    let v = valuation(g, chart.place())?;
    if v + weight < 0 {
        return Err(Error::InternalInconsistency(format!(
            "component has a pole of order {} beyond its allowance {weight}",
            -v
        )));
    }
    if v + weight >= n as i64 {
        return Ok(out);
    }
    let top = n as i64 - 1 - weight;
    let s = chart.expand_known(g, v, top - v)?;
    for (k, o) in out.iter_mut().enumerate() {
        *o = s.coeff(&field, k as i64 - weight).expect("within precision");
    }
    Ok(out)
}

/// Trivialized expansions of `[modulus | sections]` at a rational place,
/// modulo `z^n`. Modulus columns come first and use the frame of the
/// untwisted ambient bundle.
pub fn local_matrix(ss: &SectionSystem, t: &Place, n: usize) -> Result<LocalMatrix> {
    if !t.is_rational() {
        return Err(Error::BaseChangeRequired(t.degree() as u32));
    }
    let m = ss.ambient.len();
    let mut chart = LocalChart::new(ss.curve(), t, n as i64 + 8)?;
    let cols: Vec<(&Vec<CurveFunction>, bool)> =
        ss.modulus.iter().map(|v| (v, true)).chain(ss.sections.iter().map(|v| (v, false))).collect();
    let mut entries = vec![Vec::with_capacity(cols.len()); m];
    for (v, is_mod) in &cols {
        for a in 0..m {
            let w = ss.weight(a, t, *is_mod);
            entries[a].push(local_entry(&mut chart, &v[a], w, n)?);
        }
    }
    Ok(LocalMatrix { field: ss.field().clone(), rows: m, cols: cols.len(), n, entries })
}

pub fn evaluate(ss: &SectionSystem, t: &Place) -> Result<Evaluation> {
    let lm = local_matrix(ss, t, 1)?;
    let all = lm.coefficient(0);
    let s = ss.s();
    let modulus = all.select_cols(&(0..s).collect::<Vec<_>>());
    let sections = all.select_cols(&(s..lm.cols).collect::<Vec<_>>());
    Ok(Evaluation { modulus, sections })
}
