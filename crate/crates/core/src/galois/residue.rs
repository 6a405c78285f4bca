//! Residue fields `K[x]/(m)` of closed points, with `m` irreducible over `K`.
//!
//! Elements are polynomials of degree `< deg m`; no new [`Field`] is built.

use num_bigint::BigUint;
use num_traits::One;

use super::field::{Fe, Field};
use super::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    modulus: Poly,
    order: BigUint,
}

impl ResidueField {
    /// `m` must be irreducible; it is made monic.
    pub fn new(m: &Poly) -> ResidueField {
        let modulus = m.monic();
        let order = modulus.field().order().pow(modulus.degree().unwrap() as u32);
        ResidueField { modulus, order }
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn base(&self) -> &Field {
        self.modulus.field()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.base())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.base())
    }

    /// The class of `x`.
    pub fn x(&self) -> Poly {
        self.reduce(&Poly::x(self.base()))
    }

    pub fn constant(&self, c: &Fe) -> Poly {
        Poly::constant(self.base(), c.clone())
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.modulus)
    }

    pub fn inv(&self, a: &Poly) -> Option<Poly> {
        a.inv_mod(&self.modulus)
    }

    pub fn pow(&self, a: &Poly, e: &BigUint) -> Poly {
        a.pow_mod(e, &self.modulus)
    }

    pub fn is_square(&self, a: &Poly) -> bool {
        let a = self.reduce(a);
        if a.is_zero() {
            return true;
        }
        let e = (&self.order - BigUint::one()) >> 1;
        self.pow(&a, &e).is_one()
    }

    pub fn sqrt(&self, a: &Poly) -> Option<Poly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Some(a);
        }
        if !self.is_square(&a) {
            return None;
        }
        Some(cipolla(self, &a))
    }

    /// Element number `i` of a fixed enumeration.
    pub fn nth(&self, mut i: u128) -> Poly {
        let f = self.base();
        let q = f.order_u128().unwrap_or(u128::MAX);
        let mut coeffs = Vec::new();
        for _ in 0..self.degree() {
            coeffs.push(f.element_by_index(i % q));
            i /= q;
        }
        Poly::new(f, coeffs)
    }
}

/// The operations Cipolla's square root needs.
pub(crate) trait SqrtCtx {
    type E: Clone;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn one(&self) -> Self::E;
    fn zero(&self) -> Self::E;
    fn is_square(&self, a: &Self::E) -> bool;
    fn nth(&self, i: u128) -> Self::E;
    fn order(&self) -> BigUint;
}

impl SqrtCtx for Field {
    type E = Fe;
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        Field::mul(self, a, b)
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        Field::add(self, a, b)
    }
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        Field::sub(self, a, b)
    }
    fn one(&self) -> Fe {
        Field::one(self)
    }
    fn zero(&self) -> Fe {
        Field::zero(self)
    }
    fn is_square(&self, a: &Fe) -> bool {
        Field::is_square(self, a)
    }
    fn nth(&self, i: u128) -> Fe {
        self.element_by_index(i)
    }
    fn order(&self) -> BigUint {
        Field::order(self).clone()
    }
}

impl SqrtCtx for ResidueField {
    type E = Poly;
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        ResidueField::mul(self, a, b)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn one(&self) -> Poly {
        ResidueField::one(self)
    }
    fn zero(&self) -> Poly {
        ResidueField::zero(self)
    }
    fn is_square(&self, a: &Poly) -> bool {
        ResidueField::is_square(self, a)
    }
    fn nth(&self, i: u128) -> Poly {
        ResidueField::nth(self, i)
    }
    fn order(&self) -> BigUint {
        self.order.clone()
    }
}

/// Cipolla's algorithm for a nonzero square `a`: find `u` with `u^2 - a`
/// a non-square `w^2`, then `(u + w)^((q+1)/2)` lies in the base ring.
pub(crate) fn cipolla<C: SqrtCtx>(ctx: &C, a: &C::E) -> C::E {
    let mut i = 0u128;
    let (u, w2) = loop {
        let u = ctx.nth(i);
        let w2 = ctx.sub(&ctx.mul(&u, &u), a);
        if !ctx.is_square(&w2) {
            break (u, w2);
        }
        i += 1;
    };
    // pairs (c0, c1) represent c0 + c1*w
    let mul = |x: &(C::E, C::E), y: &(C::E, C::E)| {
        let c0 = ctx.add(&ctx.mul(&x.0, &y.0), &ctx.mul(&ctx.mul(&x.1, &y.1), &w2));
        let c1 = ctx.add(&ctx.mul(&x.0, &y.1), &ctx.mul(&x.1, &y.0));
        (c0, c1)
    };
    let e: BigUint = (ctx.order() + BigUint::one()) >> 1;
    let base = (u, ctx.one());
    let mut acc = (ctx.one(), ctx.zero());
    for bit in (0..e.bits()).rev() {
        acc = mul(&acc, &acc);
        if e.bit(bit) {
            acc = mul(&acc, &base);
        }
    }
    acc.0
}
