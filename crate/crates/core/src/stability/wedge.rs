//! Wedges of sections: zero divisors and vanishing orders through the
//! maximal minors of the section matrix.

use crate::bundles::{subsets, SectionSystem};
use crate::elliptic::{Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::funcspace::{principal_divisor, valuation, CurveFunction};

/// Determinant of a square matrix of functions, by elimination over the
/// function field.
pub fn function_det(curve: &Curve, mat: &[Vec<CurveFunction>]) -> CurveFunction {
    let n = mat.len();
    let mut m: Vec<Vec<CurveFunction>> = mat.to_vec();
    let mut det = CurveFunction::one(curve);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return CurveFunction::zero(curve);
        };
        if p != c {
            m.swap(p, c);
            det = det.neg();
        }
        let piv = m[c][c].clone();
        det = det.mul(&piv);
        let inv = piv.inv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].mul(&inv);
            for j in c..n {
                let v = m[i][j].sub(&factor.mul(&m[c][j]));
                m[i][j] = v;
            }
        }
    }
    det
}

/// The nonzero maximal minors of `[modulus | chosen sections]`, each with
/// its row set.
pub(crate) struct Minors {
    rows: Vec<(Vec<usize>, CurveFunction)>,
    s: usize,
}

impl Minors {
    pub(crate) fn new(ss: &SectionSystem, cols: &[usize]) -> Result<Minors> {
        let m = ss.ambient().len();
        let columns: Vec<&Vec<CurveFunction>> =
            ss.modulus().iter().chain(cols.iter().map(|&i| &ss.sections()[i])).collect();
        let k = columns.len();
        if k > m {
            return Err(Error::IdenticallyZeroWedge);
        }
        let mut rows = Vec::new();
        for rs in subsets(m, k) {
            let mat: Vec<Vec<CurveFunction>> =
                rs.iter().map(|&a| columns.iter().map(|c| c[a].clone()).collect()).collect();
            let det = function_det(ss.curve(), &mat);
            if !det.is_zero() {
                rows.push((rs, det));
            }
        }
        if rows.is_empty() {
            return Err(Error::IdenticallyZeroWedge);
        }
        Ok(Minors { rows, s: ss.s() })
    }

    pub(crate) fn divisor(&self, ss: &SectionSystem) -> Result<Divisor> {
        let mut out: Option<Divisor> = None;
        for (rs, det) in &self.rows {
            let mut e = principal_divisor(det)?;
            for &a in rs {
                e = e.add(&ss.ambient()[a]).add(ss.twist());
            }
            out = Some(match out {
                None => e,
                Some(o) => o.min(&e),
            });
        }
        Ok(out.expect("nonempty").sub(&ss.twist().scale(self.s as i64)))
    }

    pub(crate) fn valuation(&self, ss: &SectionSystem, t: &Place) -> Result<i64> {
        let mut best = i64::MAX;
        for (rs, det) in &self.rows {
            let w: i64 = rs.iter().map(|&a| ss.weight(a, t, false)).sum();
            best = best.min(valuation(det, t)? + w);
        }
        Ok(best - self.s as i64 * ss.twist().mult(t))
    }
}

/// Zero divisor of the wedge of the chosen sections (with the modulus
/// block in front, and its contribution `s T` removed).
pub fn wedge_divisor(ss: &SectionSystem, cols: &[usize]) -> Result<Divisor> {
    Minors::new(ss, cols)?.divisor(ss)
}

/// Order of vanishing at `t` of the wedge of the chosen sections.
pub fn wedge_valuation(ss: &SectionSystem, cols: &[usize], t: &Place) -> Result<i64> {
    Minors::new(ss, cols)?.valuation(ss, t)
}

/// Order at `t` with which `section` meets the subbundle spanned by `frame`.
pub fn incidence_order(ss: &SectionSystem, section: usize, frame: &[usize], t: &Place) -> Result<i64> {
    let mut with: Vec<usize> = frame.to_vec();
    with.push(section);
    Ok(wedge_valuation(ss, &with, t)? - wedge_valuation(ss, frame, t)?)
}

/// Zero divisor of the top wedge of the section basis.
pub fn spectral_divisor(ss: &SectionSystem) -> Result<Divisor> {
    if ss.count() != ss.declared_rank() {
        return Err(Error::SectionCountMismatch { expected: ss.declared_rank(), found: ss.count() });
    }
    let all: Vec<usize> = (0..ss.count()).collect();
    match wedge_divisor(ss, &all) {
        Err(Error::IdenticallyZeroWedge) => Err(Error::TopWedgeVanishes),
        r => r,
    }
}
