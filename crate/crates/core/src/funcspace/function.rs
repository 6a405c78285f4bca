//! Elements `a(x) + b(x) y` of the function field `K(E)`.

use std::fmt;

use super::ratfn::RatFn;
use crate::elliptic::{BaseChange, Curve};
use crate::error::{Error, Result};
use crate::galois::{Fe, Poly};

#[derive(Clone, PartialEq, Eq)]
pub struct CurveFunction {
    curve: Curve,
    a: RatFn,
    b: RatFn,
}

impl fmt::Debug for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_ratfn(r: &RatFn) -> String {
    if r.is_poly() {
        r.num().to_string()
    } else {
        format!("({})/({})", r.num(), r.den())
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_ratfn(&self.a)),
            (true, false) => write!(f, "({})*y", fmt_ratfn(&self.b)),
            (false, false) => write!(f, "{} + ({})*y", fmt_ratfn(&self.a), fmt_ratfn(&self.b)),
        }
    }
}

/// `f = (A + B y) / H` with polynomials `A, B` and monic `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonForm {
    pub a: Poly,
    pub b: Poly,
    pub h: Poly,
}

impl CurveFunction {
    pub fn new(curve: &Curve, a: RatFn, b: RatFn) -> CurveFunction {
        CurveFunction { curve: curve.clone(), a, b }
    }

    pub fn from_polys(curve: &Curve, a: Poly, b: Poly) -> CurveFunction {
        CurveFunction::new(curve, RatFn::from_poly(a), RatFn::from_poly(b))
    }

    /// `(a + b y) / h`.
    pub fn from_common(curve: &Curve, a: &Poly, b: &Poly, h: &Poly) -> Result<CurveFunction> {
        Ok(CurveFunction::new(curve, RatFn::new(a.clone(), h.clone())?, RatFn::new(b.clone(), h.clone())?))
    }

    pub fn zero(curve: &Curve) -> CurveFunction {
        let f = curve.field();
        CurveFunction::new(curve, RatFn::zero(f), RatFn::zero(f))
    }

    pub fn one(curve: &Curve) -> CurveFunction {
        CurveFunction::constant(curve, curve.field().one())
    }

    pub fn constant(curve: &Curve, c: Fe) -> CurveFunction {
        let f = curve.field();
        CurveFunction::new(curve, RatFn::constant(f, c), RatFn::zero(f))
    }

    pub fn x(curve: &Curve) -> CurveFunction {
        let f = curve.field();
        CurveFunction::from_polys(curve, Poly::x(f), Poly::zero(f))
    }

    pub fn y(curve: &Curve) -> CurveFunction {
        let f = curve.field();
        CurveFunction::from_polys(curve, Poly::zero(f), Poly::one(f))
    }

    pub fn from_poly(curve: &Curve, p: Poly) -> CurveFunction {
        let f = curve.field().clone();
        CurveFunction::from_polys(curve, p, Poly::zero(&f))
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn a(&self) -> &RatFn {
        &self.a
    }

    pub fn b(&self) -> &RatFn {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.is_poly() && self.a.num().is_constant()
    }

    pub fn add(&self, o: &CurveFunction) -> CurveFunction {
        CurveFunction::new(&self.curve, self.a.add(&o.a), self.b.add(&o.b))
    }

    pub fn sub(&self, o: &CurveFunction) -> CurveFunction {
        CurveFunction::new(&self.curve, self.a.sub(&o.a), self.b.sub(&o.b))
    }

    pub fn neg(&self) -> CurveFunction {
        CurveFunction::new(&self.curve, self.a.neg(), self.b.neg())
    }

    pub fn scale(&self, c: &Fe) -> CurveFunction {
        CurveFunction::new(&self.curve, self.a.scale(c), self.b.scale(c))
    }

    pub fn mul(&self, o: &CurveFunction) -> CurveFunction {
        let rhs = self.curve.rhs();
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul_poly(&rhs));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        CurveFunction::new(&self.curve, a, b)
    }

    /// `N(f) = a^2 - b^2 F`, the norm down to `K(x)`.
    pub fn norm(&self) -> RatFn {
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul_poly(&self.curve.rhs()))
    }

    /// `1/f = (a - b y) / (a^2 - b^2 F)`.
    pub fn inv(&self) -> Result<CurveFunction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm().inv()?;
        Ok(CurveFunction::new(&self.curve, self.a.mul(&n), self.b.neg().mul(&n)))
    }

    pub fn div(&self, o: &CurveFunction) -> Result<CurveFunction> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> CurveFunction {
        let mut acc = CurveFunction::one(&self.curve);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn common_form(&self) -> CommonForm {
        let h = {
            let (da, db) = (self.a.den(), self.b.den());
            da.mul(db).div_exact(&da.gcd(db)).monic()
        };
        let a = self.a.num().mul(&h.div_exact(self.a.den()));
        let b = self.b.num().mul(&h.div_exact(self.b.den()));
        CommonForm { a, b, h }
    }

    /// Whether `f` lies in `K[x] + K[x] y`.
    pub fn is_integral(&self) -> bool {
        self.a.is_poly() && self.b.is_poly()
    }

    pub fn base_change(&self, bc: &BaseChange) -> CurveFunction {
        let emb = bc.embedding();
        let t = bc.target().field();
        CurveFunction::new(
            bc.target(),
            self.a.map_coeffs(t, |c| emb.apply(c)),
            self.b.map_coeffs(t, |c| emb.apply(c)),
        )
    }
}

/// `sum c_i f_i`.
pub fn linear_combination(curve: &Curve, coeffs: &[Fe], fs: &[CurveFunction]) -> CurveFunction {
    let mut acc = CurveFunction::zero(curve);
    for (c, f) in coeffs.iter().zip(fs) {
        if !curve.field().is_zero(c) {
            acc = acc.add(&f.scale(c));
        }
    }
    acc
}
