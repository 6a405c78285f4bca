//! Valuations at places and principal divisors.

use super::function::CurveFunction;
use crate::elliptic::{places_over, Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::galois::{factor, Poly};

fn vm(p: &Poly, m: &Poly) -> i64 {
    if p.is_zero() {
        i64::MAX
    } else {
        p.valuation_at(m).0 as i64
    }
}

/// Order at `P` of `A + B y` for polynomials `A, B` not both zero.
pub(crate) fn valuation_integral(curve: &Curve, a: &Poly, b: &Poly, place: &Place) -> i64 {
    match place {
        Place::Infinity => {
            let va = if a.is_zero() { i64::MAX } else { -2 * a.deg_i() };
            let vb = if b.is_zero() { i64::MAX } else { -2 * b.deg_i() - 3 };
            va.min(vb)
        }
        Place::Ramified { m } => {
            let va = vm(a, m).saturating_mul(2);
            let vb = vm(b, m).saturating_mul(2).saturating_add(1);
            va.min(vb)
        }
        Place::Inert { m } => vm(a, m).min(vm(b, m)),
        Place::Split { m, y } => {
            let k0 = vm(a, m).min(vm(b, m));
            let mk = m.pow(k0 as u32);
            let a1 = a.div_exact(&mk);
            let b1 = b.div_exact(&mk);
            let at_place = a1.add(&b1.mul(y)).rem(m);
            if !at_place.is_zero() {
                return k0;
            }
            let n = a1.mul(&a1).sub(&b1.mul(&b1).mul(&curve.rhs()));
            k0 + vm(&n, m)
        }
    }
}

/// Order of a polynomial in `x` at a place.
pub(crate) fn valuation_poly(h: &Poly, place: &Place) -> i64 {
    match place {
        Place::Infinity => -2 * h.deg_i(),
        Place::Ramified { m } => 2 * vm(h, m),
        Place::Split { m, .. } | Place::Inert { m } => vm(h, m),
    }
}

/// Order of vanishing of `f` at `place` (negative for poles).
pub fn valuation(f: &CurveFunction, place: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let cf = f.common_form();
    Ok(valuation_integral(f.curve(), &cf.a, &cf.b, place) - valuation_poly(&cf.h, place))
}

/// `(f) = sum v_P(f) P`; candidates are the places over the factors of the
/// norm of the numerator and of the denominator, plus infinity.
pub fn principal_divisor(f: &CurveFunction) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let curve = f.curve();
    let cf = f.common_form();
    let norm = cf.a.mul(&cf.a).sub(&cf.b.mul(&cf.b).mul(&curve.rhs()));
    let mut out = Divisor::zero();
    let mut candidates = vec![Place::Infinity];
    for (m, _) in factor(&norm.mul(&cf.h))? {
        candidates.extend(places_over(curve, &m));
    }
    for place in candidates {
        let v = valuation_integral(curve, &cf.a, &cf.b, &place) - valuation_poly(&cf.h, &place);
        out.add_term(place, v);
    }
    debug_assert_eq!(out.degree(), 0);
    Ok(out)
}

/// `Y` with `Y^2 = F (mod m^k)` and `Y = c (mod m)`, by Newton iteration.
pub(crate) fn hensel_sqrt(curve: &Curve, m: &Poly, c: &Poly, k: u32) -> Poly {
    let mk = m.pow(k);
    let rhs = curve.rhs();
    let mut y = c.rem(&mk);
    let mut prec = 1;
    while prec < k {
        prec *= 2;
        let two_y = y.add(&y);
        let inv = two_y.inv_mod(&mk).expect("y is a unit at a split place");
        let err = y.mul(&y).sub(&rhs).rem(&mk);
        y = y.sub(&err.mul_mod(&inv, &mk)).rem(&mk);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::Point;
    use crate::galois::Field;

    fn curve5() -> Curve {
        Curve::from_i64(&Field::prime(5).unwrap(), -1, 0).unwrap()
    }

    #[test]
    fn standard_valuations() {
        let e = curve5();
        let x = CurveFunction::x(&e);
        let y = CurveFunction::y(&e);
        assert_eq!(valuation(&x, &Place::Infinity).unwrap(), -2);
        assert_eq!(valuation(&y, &Place::Infinity).unwrap(), -3);
        let o = Place::from_point(&e, &e.point_i64(0, 0).unwrap());
        assert_eq!(valuation(&x, &o).unwrap(), 2);
        assert_eq!(valuation(&CurveFunction::one(&e), &o).unwrap(), 0);
        assert_eq!(valuation(&CurveFunction::zero(&e), &o), Err(Error::ZeroFunction));
    }

    #[test]
    fn principal_divisor_examples() {
        let e = curve5();
        let pl = |x, y| Place::from_point(&e, &e.point_i64(x, y).unwrap());
        let x = CurveFunction::x(&e);
        let want = Divisor::from_terms([(pl(0, 0), 2), (Place::Infinity, -2)]);
        assert_eq!(principal_divisor(&x).unwrap(), want);
        let y = CurveFunction::y(&e);
        let want = Divisor::from_terms([(pl(0, 0), 1), (pl(1, 0), 1), (pl(4, 0), 1), (Place::Infinity, -3)]);
        assert_eq!(principal_divisor(&y).unwrap(), want);
        let c = CurveFunction::constant(&e, e.field().from_i64(3));
        assert!(principal_divisor(&c).unwrap().is_zero());
    }

    #[test]
    fn tangent_line_vanishes_to_order_two() {
        // the tangent line at q meets E at q twice and at -2q once
        let e = curve5();
        let f = e.field();
        let q = e.point_i64(2, 1).unwrap();
        let Point::Affine(x0, y0) = q.clone() else { unreachable!() };
        let slope = f
            .div(&f.add(&f.scale_u64(&f.mul(&x0, &x0), 3), e.a()), &f.scale_u64(&y0, 2))
            .unwrap();
        // y - y0 - slope (x - x0)
        let line = CurveFunction::from_polys(
            &e,
            Poly::new(f, vec![f.sub(&f.mul(&slope, &x0), &y0), f.neg(&slope)]),
            Poly::one(f),
        );
        let d = principal_divisor(&line).unwrap();
        let r = e.neg(&e.mul(2, &q).unwrap());
        let want = Divisor::from_terms([
            (Place::from_point(&e, &q), 2),
            (Place::from_point(&e, &r), 1),
            (Place::Infinity, -3),
        ]);
        assert_eq!(d, want);
    }
}
