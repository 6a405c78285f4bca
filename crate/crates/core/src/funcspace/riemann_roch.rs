//! Riemann-Roch spaces `L(D) = { f : (f) + D >= 0 }`.
//!
//! With `h = prod m^{c_m}` clearing the finite poles allowed by `D`, every
//! `f` in `L(D)` is `g / h` for `g = A(x) + B(x) y` in the coordinate ring.
//! The pole order of `g` at infinity is bounded, so `g` ranges over a
//! finite span of `x^i` and `x^i y`; the zero conditions at finite places
//! are linear in the coefficients.

use std::collections::BTreeMap;

use super::function::CurveFunction;
use super::valuation::hensel_sqrt;
use crate::elliptic::{places_over, Curve, Divisor, Place};
use crate::error::Result;
use crate::galois::{Fe, Matrix, Poly};

/// Monomial `x^i` (`false`) or `x^i y` (`true`), listed by pole order at infinity.
fn monomials(max_pole: i64) -> Vec<(usize, bool)> {
    (0..=max_pole.max(-1))
        .filter(|&o| o != 1)
        .map(|o| if o % 2 == 0 { ((o / 2) as usize, false) } else { (((o - 3) / 2) as usize, true) })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RRBasis {
    divisor: Divisor,
    basis: Vec<CurveFunction>,
    h: Poly,
    monos: Vec<(usize, bool)>,
    vecs: Vec<Vec<Fe>>,
    leads: Vec<usize>,
}

impl RRBasis {
    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn basis(&self) -> &[CurveFunction] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis, or `None` if `f` is not in `L(D)`.
    pub fn coordinates(&self, f: &CurveFunction) -> Option<Vec<Fe>> {
        let field = f.curve().field().clone();
        if f.is_zero() {
            return Some(vec![field.zero(); self.dim()]);
        }
        let g = f.mul(&CurveFunction::from_poly(f.curve(), self.h.clone()));
        if !g.is_integral() {
            return None;
        }
        let (a, b) = (g.a().num(), g.b().num());
        let mut v = vec![field.zero(); self.monos.len()];
        let mut used = 0;
        for (k, &(i, with_y)) in self.monos.iter().enumerate() {
            let c = if with_y { b.coeff(i) } else { a.coeff(i) };
            if !field.is_zero(&c) {
                used += 1;
            }
            v[k] = c;
        }
        let total = a.coeffs().iter().chain(b.coeffs()).filter(|c| !field.is_zero(c)).count();
        if used != total {
            return None;
        }
        let mut coords = vec![field.zero(); self.dim()];
        for j in (0..self.dim()).rev() {
            let c = v[self.leads[j]].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (k, bv) in self.vecs[j].iter().enumerate() {
                v[k] = field.sub(&v[k], &field.mul(&c, bv));
            }
            coords[j] = c;
        }
        if v.iter().all(|c| field.is_zero(c)) {
            Some(coords)
        } else {
            None
        }
    }
}

fn ceil_div(n: i64, e: i64) -> i64 {
    (n + e - 1).div_euclid(e)
}

fn coeff_vec(p: &Poly, len: usize) -> Vec<Fe> {
    (0..len).map(|i| p.coeff(i)).collect()
}

/// A basis of `L(D)`, reduced so that each element has a distinct leading
/// monomial (by pole order at infinity, after clearing finite poles) with
/// coefficient 1, in increasing order of that pole order.
pub fn rr_basis(curve: &Curve, d: &Divisor) -> Result<RRBasis> {
    let field = curve.field().clone();
    let mut groups: BTreeMap<Poly, i64> = BTreeMap::new();
    for (place, n) in d.terms() {
        if let Some(m) = place.x_poly() {
            let c = ceil_div(n, place.ramification() as i64).max(0);
            let e = groups.entry(m.clone()).or_insert(0);
            *e = (*e).max(c);
        }
    }
    let mut h = Poly::one(&field);
    for (m, &c) in &groups {
        h = h.mul(&m.pow(c as u32));
    }
    let max_pole = 2 * h.deg_i() + d.mult(&Place::Infinity);
    let monos = monomials(max_pole);
    let max_i = monos.iter().map(|m| m.0).max().unwrap_or(0);

    // rows of the constraint matrix, one block per place with a zero condition
    let mut blocks: Vec<Vec<Vec<Fe>>> = Vec::new();
    for (m, &c) in &groups {
        for place in places_over(curve, m) {
            let k = place.ramification() as i64 * c - d.mult(&place);
            if k <= 0 {
                continue;
            }
            let (moda, modb, yk) = match &place {
                Place::Ramified { .. } => (m.pow(ceil_div(k, 2) as u32), m.pow(ceil_div(k - 1, 2) as u32), None),
                Place::Inert { .. } => (m.pow(k as u32), m.pow(k as u32), None),
                Place::Split { y, .. } => {
                    let mk = m.pow(k as u32);
                    (mk.clone(), mk, Some(hensel_sqrt(curve, m, y, k as u32)))
                }
                Place::Infinity => unreachable!(),
            };
            let la = moda.degree().unwrap();
            let lb = modb.degree().unwrap();
            let mut cols = Vec::with_capacity(monos.len());
            let mut xa = Poly::one(&field).rem(&moda);
            let mut pows_a = vec![];
            for _ in 0..=max_i {
                pows_a.push(xa.clone());
                xa = xa.mul(&Poly::x(&field)).rem(&moda);
            }
            let mut pows_b = vec![];
            let mut xb = match &yk {
                Some(y) => y.clone(),
                None => Poly::one(&field).rem(&modb),
            };
            for _ in 0..=max_i {
                pows_b.push(xb.clone());
                xb = xb.mul(&Poly::x(&field)).rem(&modb);
            }
            for &(i, with_y) in &monos {
                let col = match (&yk, with_y) {
                    (Some(_), false) => coeff_vec(&pows_a[i], la),
                    (Some(_), true) => coeff_vec(&pows_b[i], lb),
                    (None, false) => {
                        let mut v = coeff_vec(&pows_a[i], la);
                        v.extend(vec![field.zero(); lb]);
                        v
                    }
                    (None, true) => {
                        let mut v = vec![field.zero(); la];
                        v.extend(coeff_vec(&pows_b[i], lb));
                        v
                    }
                };
                cols.push(col);
            }
            blocks.push(cols);
        }
    }
    let nrows: usize = blocks.iter().map(|b| b.first().map_or(0, |c| c.len())).sum();
    let mut mat = Matrix::zeros(&field, nrows, monos.len());
    let mut r0 = 0;
    for block in &blocks {
        let len = block.first().map_or(0, |c| c.len());
        for (j, col) in block.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                mat.set(r0 + i, j, v.clone());
            }
        }
        r0 += len;
    }
    let vecs = if monos.is_empty() { Vec::new() } else { mat.nullspace() };
    let mut basis = Vec::with_capacity(vecs.len());
    let mut leads = Vec::with_capacity(vecs.len());
    for v in &vecs {
        let mut a = vec![field.zero(); max_i + 1];
        let mut b = vec![field.zero(); max_i + 1];
        for (k, &(i, with_y)) in monos.iter().enumerate() {
            if with_y {
                b[i] = v[k].clone();
            } else {
                a[i] = v[k].clone();
            }
        }
        leads.push(v.iter().rposition(|c| !field.is_zero(c)).unwrap());
        basis.push(CurveFunction::from_common(curve, &Poly::new(&field, a), &Poly::new(&field, b), &h)?);
    }
    Ok(RRBasis { divisor: d.clone(), basis, h, monos, vecs, leads })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::principal_divisor;
    use crate::galois::{find_irreducible, Field};

    fn curve5() -> Curve {
        Curve::from_i64(&Field::prime(5).unwrap(), -1, 0).unwrap()
    }

    #[test]
    fn spaces_at_infinity() {
        let e = curve5();
        let inf = |n| Divisor::from_place(Place::Infinity, n);
        let b2 = rr_basis(&e, &inf(2)).unwrap();
        assert_eq!(b2.basis(), &[CurveFunction::one(&e), CurveFunction::x(&e)]);
        let b3 = rr_basis(&e, &inf(3)).unwrap();
        assert_eq!(b3.basis(), &[CurveFunction::one(&e), CurveFunction::x(&e), CurveFunction::y(&e)]);
        assert_eq!(rr_basis(&e, &Divisor::zero()).unwrap().basis(), &[CurveFunction::one(&e)]);
        let q = Divisor::from_point(&e, &e.point_i64(2, 1).unwrap(), -1);
        assert_eq!(rr_basis(&e, &q).unwrap().dim(), 0);
    }

    fn check_space(e: &Curve, d: &Divisor) {
        let b = rr_basis(e, d).unwrap();
        let deg = d.degree();
        if deg >= 1 {
            assert_eq!(b.dim() as i64, deg, "D = {}", d.fmt(e));
        } else if deg < 0 {
            assert_eq!(b.dim(), 0);
        }
        for (j, f) in b.basis().iter().enumerate() {
            assert!(principal_divisor(f).unwrap().add(d).is_effective() || principal_divisor(f).unwrap().add(d).is_zero());
            let mut want = vec![e.field().zero(); b.dim()];
            want[j] = e.field().one();
            assert_eq!(b.coordinates(f).unwrap(), want);
        }
    }

    #[test]
    fn mixed_divisors() {
        let e = curve5();
        let pl = |x, y| Place::from_point(&e, &e.point_i64(x, y).unwrap());
        let f = e.field();
        let m2 = find_irreducible(f, 2);
        let mut ds = vec![
            Divisor::from_terms([(pl(0, 0), 3), (Place::Infinity, -1)]),
            Divisor::from_terms([(pl(2, 1), 2), (pl(2, 4), -1), (pl(1, 0), 1)]),
            Divisor::from_terms([(pl(3, 2), 4), (Place::Infinity, -2), (pl(0, 0), -1)]),
            Divisor::from_terms([(pl(0, 0), 1), (pl(0, 0), 0), (pl(1, 0), -1)]),
        ];
        for p in places_over(&e, &m2) {
            ds.push(Divisor::from_terms([(p.clone(), 1), (pl(2, 1), 1), (Place::Infinity, -1)]));
            ds.push(Divisor::from_terms([(p, 2), (pl(4, 0), -3)]));
        }
        for d in &ds {
            check_space(&e, d);
        }
        // degree zero: L(D) is one-dimensional iff D is principal
        let d0 = Divisor::from_terms([(pl(0, 0), 2), (Place::Infinity, -2)]);
        assert_eq!(rr_basis(&e, &d0).unwrap().dim(), 1);
        let d1 = Divisor::from_terms([(pl(0, 0), 1), (Place::Infinity, -1)]);
        assert_eq!(rr_basis(&e, &d1).unwrap().dim(), 0);
    }
}
