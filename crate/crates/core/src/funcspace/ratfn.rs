//! Rational functions in `x`: reduced fractions with monic denominator.

use crate::error::{Error, Result};
use crate::galois::{Fe, Field, Poly};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RatFn::zero(&field));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_exact(&g), den.div_exact(&g));
        let lc = den.leading().unwrap().clone();
        if !field.is_one(&lc) {
            let li = field.inv(&lc).unwrap();
            num = num.scale(&li);
            den = den.scale(&li);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let den = Poly::one(p.field());
        RatFn { num: p, den }
    }

    pub fn zero(field: &Field) -> RatFn {
        RatFn { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &Field) -> RatFn {
        RatFn::from_poly(Poly::one(field))
    }

    pub fn constant(field: &Field, c: Fe) -> RatFn {
        RatFn::from_poly(Poly::constant(field, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        RatFn::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).unwrap()
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFn {
        RatFn::new(self.num.mul(p), self.den.clone()).unwrap()
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &Fe) -> RatFn {
        RatFn::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn map_coeffs(&self, target: &Field, phi: impl Fn(&Fe) -> Fe) -> RatFn {
        RatFn::new(self.num.map_coeffs(target, &phi), self.den.map_coeffs(target, &phi)).unwrap()
    }
}
