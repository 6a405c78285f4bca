//! Dense univariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// Polynomial with coefficients low to high; never has trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Canonical order: by degree, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// `x - a`.
    pub fn linear_root(field: &Field, a: &Fe) -> Poly {
        Poly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn monomial(field: &Field, c: Fe, deg: usize) -> Poly {
        let mut v = vec![field.zero(); deg];
        v.push(c);
        Poly::new(field, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(c) => {
                let ci = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&ci)
            }
        }
    }

    pub fn scale(&self, c: &Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.neg(a)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(&self.field, v)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(d.leading().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); self.coeffs.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] = f.sub(&r[i + j], &f.mul(&c, dj));
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    /// Remainder modulo a nonzero polynomial.
    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).expect("nonzero divisor").1
    }

    /// Exact quotient; panics when the divisor is zero.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(c) => {
                let ci = f.inv(c).unwrap();
                (r0.scale(&ci), s0.scale(&ci), t0.scale(&ci))
            }
        }
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).xgcd(m);
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
                .collect(),
        )
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let f = &self.field;
        let mut acc = Poly::zero(f);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(f, c.clone()));
        }
        acc
    }

    /// Multiplicity of `m` as a factor (`m` nonconstant), together with the cofactor.
    pub fn valuation_at(&self, m: &Poly) -> (u32, Poly) {
        let mut v = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return (u32::MAX, cur);
        }
        loop {
            let (q, r) = cur.divrem(m).unwrap();
            if !r.is_zero() {
                return (v, cur);
            }
            v += 1;
            cur = q;
        }
    }

    /// Maps coefficients through `phi` into another field.
    pub fn map_coeffs(&self, target: &Field, phi: impl Fn(&Fe) -> Fe) -> Poly {
        Poly::new(target, self.coeffs.iter().map(phi).collect())
    }

    pub fn to_string_var(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = f.fmt_elem(c);
            let term = if i == 0 {
                cs
            } else if f.is_one(c) {
                mono
            } else {
                format!("{cs}*{mono}")
            };
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let f = Field::prime(7).unwrap();
        let a = Poly::from_i64s(&f, &[1, 0, 1]); // x^2 + 1
        let b = Poly::from_i64s(&f, &[-1, 1]); // x - 1
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(r, Poly::from_i64s(&f, &[2]));
        let c = a.mul(&b);
        assert_eq!(c.gcd(&b), b);
        let (g, s, t) = a.xgcd(&b);
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn canonical_order() {
        let f = Field::prime(5).unwrap();
        let mut v = vec![
            Poly::from_i64s(&f, &[0, 0, 1]),
            Poly::from_i64s(&f, &[3, 1]),
            Poly::from_i64s(&f, &[2, 1]),
            Poly::from_i64s(&f, &[4, 0, 1]),
        ];
        v.sort();
        assert_eq!(format!("{:?}", v), "[x + 2, x + 3, x^2, x^2 + 4]");
    }
}
