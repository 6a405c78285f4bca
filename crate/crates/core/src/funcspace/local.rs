//! Power-series expansions at rational places.
//!
//! Uniformizers: `z = x - x0` at a point with `y0 != 0`, `z = y` at a point
//! with `y0 = 0`, and `z = x/y` at infinity (so `x = z^-2 + ...`,
//! `y = z^-3 + ...`). Leading coefficients depend on this choice.

use super::function::CurveFunction;
use super::series::{LaurentSeries, EXACT};
use super::valuation::valuation;
use crate::elliptic::{Curve, Place, Point};
use crate::error::{Error, Result};
use crate::galois::{Fe, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniformizer {
    XMinusX0,
    YAtRamified,
    XOverYAtInfinity,
}

impl Uniformizer {
    pub fn tag(&self) -> &'static str {
        match self {
            Uniformizer::XMinusX0 => "x_minus_x0",
            Uniformizer::YAtRamified => "y_at_ramified",
            Uniformizer::XOverYAtInfinity => "x_over_y_at_infinity",
        }
    }
}

/// Expansions of `x` and `y` at a rational place, each with `rel` correct
/// coefficients past the leading one.
#[derive(Clone, Debug)]
pub struct LocalChart {
    curve: Curve,
    place: Place,
    uniformizer: Uniformizer,
    x: LaurentSeries,
    y: LaurentSeries,
    rel: i64,
}

const MAX_REL: i64 = 1 << 12;

impl LocalChart {
    pub fn new(curve: &Curve, place: &Place, rel: i64) -> Result<LocalChart> {
        let f = curve.field();
        let rel = rel.max(2);
        let point = place
            .to_point(curve)
            .ok_or(Error::BaseChangeRequired(place.degree() as u32))?;
        let (uniformizer, x, y) = match point {
            Point::Affine(x0, y0) if !f.is_zero(&y0) => {
                let x = LaurentSeries::new(f, 0, vec![x0.clone(), f.one()], EXACT);
                // F(x0 + z) as an exact polynomial in z
                let shifted = curve.rhs().compose(&Poly::new(f, vec![x0, f.one()]));
                let fz = LaurentSeries::new(f, 0, shifted.coeffs().to_vec(), EXACT);
                let y = fz.sqrt(f, &y0, rel).unwrap();
                (Uniformizer::XMinusX0, x, y)
            }
            Point::Affine(x0, _) => {
                // F(x0 + u) = F'(x0) u + 3 x0 u^2 + u^3 = z^2
                let d = curve.rhs().derivative().eval(&x0);
                let di = f.inv(&d).expect("smooth curve");
                let prec = 2 + rel;
                let z2 = LaurentSeries::monomial(f, &f.one(), 2).truncate(f, prec);
                let c3x0 = LaurentSeries::constant(f, &f.scale_u64(&x0, 3));
                let mut u = LaurentSeries::zero_to(prec);
                for _ in 0..=prec {
                    let u2 = u.mul(f, &u);
                    let rhs = z2.sub(f, &c3x0.mul(f, &u2)).sub(f, &u2.mul(f, &u));
                    let next = rhs.scale(f, &di).truncate(f, prec);
                    if next == u {
                        break;
                    }
                    u = next;
                }
                let x = u.add(f, &LaurentSeries::constant(f, &x0));
                let y = LaurentSeries::monomial(f, &f.one(), 1);
                (Uniformizer::YAtRamified, x, y)
            }
            Point::Infinity => {
                // u = 1/x satisfies u = z^2 (1 + a u^2 + b u^3)
                let prec = 2 + rel;
                let z2 = LaurentSeries::monomial(f, &f.one(), 2);
                let one = LaurentSeries::constant(f, &f.one());
                let ca = LaurentSeries::constant(f, curve.a());
                let cb = LaurentSeries::constant(f, curve.b());
                let mut u = LaurentSeries::zero_to(prec);
                for _ in 0..=prec {
                    let u2 = u.mul(f, &u);
                    let inner = one.add(f, &ca.mul(f, &u2)).add(f, &cb.mul(f, &u2.mul(f, &u)));
                    let next = z2.mul(f, &inner).truncate(f, prec);
                    if next == u {
                        break;
                    }
                    u = next;
                }
                let x = u.inv(f, rel).unwrap();
                let y = x.shift(-1);
                (Uniformizer::XOverYAtInfinity, x, y)
            }
        };
        Ok(LocalChart { curve: curve.clone(), place: place.clone(), uniformizer, x, y, rel })
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn uniformizer(&self) -> Uniformizer {
        self.uniformizer
    }

    pub fn rel(&self) -> i64 {
        self.rel
    }

    fn eval_poly(&self, p: &Poly) -> LaurentSeries {
        let f = self.curve.field();
        let mut acc = LaurentSeries::zero_to(EXACT);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(f, &self.x).add(f, &LaurentSeries::constant(f, c));
        }
        acc
    }

    /// Expansion of `f` to whatever precision this chart supports.
    pub fn expand_raw(&self, g: &CurveFunction) -> LaurentSeries {
        let f = self.curve.field();
        let cf = g.common_form();
        let num = self.eval_poly(&cf.a).add(f, &self.eval_poly(&cf.b).mul(f, &self.y));
        let den = self.eval_poly(&cf.h);
        match den.inv(f, self.rel) {
            Some(d) => num.mul(f, &d),
            None => LaurentSeries::zero_to(num.prec()),
        }
    }

    /// Expansion of `g`, known to have valuation `v`, correct through
    /// `z^(v + n)`; enlarges the chart as needed.
    pub fn expand_known(&mut self, g: &CurveFunction, v: i64, n: i64) -> Result<LaurentSeries> {
        loop {
            let s = self.expand_raw(g);
            if s.prec() > v + n {
                if s.valuation() != Some(v) {
                    return Err(Error::InternalInconsistency(format!(
                        "expansion valuation {:?} disagrees with exact valuation {v}",
                        s.valuation()
                    )));
                }
                return Ok(s.truncate(self.curve.field(), v + n + 1));
            }
            if self.rel >= MAX_REL {
                return Err(Error::PrecisionExhausted);
            }
            *self = LocalChart::new(&self.curve, &self.place, self.rel * 2)?;
        }
    }

    pub fn expand(&mut self, g: &CurveFunction, n: i64) -> Result<LaurentSeries> {
        let v = valuation(g, &self.place)?;
        self.expand_known(g, v, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    pub place: Place,
    pub uniformizer: Uniformizer,
    pub valuation: i64,
    /// `c_v, ..., c_{v+N}`.
    pub coefficients: Vec<Fe>,
    pub precision: usize,
}

/// Coefficients of `f` in powers of the uniformizer at `place`, from the
/// leading valuation `v` through `v + n`.
pub fn expand_local(f: &CurveFunction, place: &Place, n: usize) -> Result<LocalExpansion> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut chart = LocalChart::new(f.curve(), place, n as i64 + 4)?;
    let v = valuation(f, place)?;
    let s = chart.expand_known(f, v, n as i64)?;
    let field = f.curve().field();
    let coefficients = (v..=v + n as i64).map(|k| s.coeff(field, k).unwrap()).collect();
    Ok(LocalExpansion { place: place.clone(), uniformizer: chart.uniformizer(), valuation: v, coefficients, precision: n })
}

impl LocalExpansion {
    /// The truncated expansion as a function: `sum c_k z^k` with `z` the uniformizer.
    pub fn resum(&self, curve: &Curve) -> CurveFunction {
        let f = curve.field();
        let z = match (&self.uniformizer, self.place.to_point(curve)) {
            (Uniformizer::XMinusX0, Some(Point::Affine(x0, _))) => {
                CurveFunction::x(curve).sub(&CurveFunction::constant(curve, x0))
            }
            (Uniformizer::YAtRamified, _) => CurveFunction::y(curve),
            _ => CurveFunction::x(curve).div(&CurveFunction::y(curve)).unwrap(),
        };
        let zi = z.inv().unwrap();
        let mut acc = CurveFunction::zero(curve);
        for (i, c) in self.coefficients.iter().enumerate() {
            let k = self.valuation + i as i64;
            let zk = if k >= 0 { z.pow(k as u32) } else { zi.pow((-k) as u32) };
            if !f.is_zero(c) {
                acc = acc.add(&zk.scale(c));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;

    fn curve5() -> Curve {
        Curve::from_i64(&Field::prime(5).unwrap(), -1, 0).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let e = curve5();
        let f = e.field();
        let x = CurveFunction::x(&e);
        let ex = expand_local(&x, &Place::Infinity, 2).unwrap();
        assert_eq!(ex.valuation, -2);
        assert_eq!(ex.coefficients[0], f.one());
        let q = e.point_i64(2, 1).unwrap();
        let pq = Place::from_point(&e, &q);
        let lin = x.sub(&CurveFunction::constant(&e, f.from_i64(2)));
        let el = expand_local(&lin, &pq, 3).unwrap();
        assert_eq!((el.valuation, el.coefficients[0].clone()), (1, f.one()));
        let o = Place::from_point(&e, &e.point_i64(0, 0).unwrap());
        let eo = expand_local(&x, &o, 4).unwrap();
        assert_eq!(eo.uniformizer, Uniformizer::YAtRamified);
        assert_eq!((eo.valuation, eo.coefficients[0].clone()), (2, f.from_i64(-1)));
    }

    #[test]
    fn resummation_agrees_to_precision() {
        let e = curve5();
        let x = CurveFunction::x(&e);
        let y = CurveFunction::y(&e);
        let g = x.mul(&x).add(&y).div(&x.add(&CurveFunction::one(&e))).unwrap();
        for q in e.points() {
            let place = Place::from_point(&e, &q);
            let n = 5;
            let ex = expand_local(&g, &place, n).unwrap();
            let diff = g.sub(&ex.resum(&e));
            if !diff.is_zero() {
                assert!(valuation(&diff, &place).unwrap() > ex.valuation + n as i64, "at {}", place.fmt(&e));
            }
        }
    }
}
