//! Finite fields `F_p` and `F_{p^k} = F_p[t]/(M(t))`.
//!
//! A [`Field`] is a cheap handle (reference counted) describing the field;
//! elements are plain [`Fe`] values whose arithmetic goes through the handle.
//! Every field is stored in absolute form over its prime subfield, so
//! extensions of extensions are again a single `Field`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use smallvec::SmallVec;

use super::prime::{is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// A field element: coefficients `c_0 .. c_{k-1}` of a polynomial in the
/// generator `t`, each reduced modulo `p`. For prime fields `k = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fe(pub(crate) SmallVec<[u64; 2]>);

impl Fe {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

/// Canonical order: compare as the integer `sum c_i p^i`, i.e. from the
/// highest coefficient down.
impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct FieldInner {
    p: u64,
    degree: usize,
    /// Monic modulus `M(t)`, low to high, length `degree + 1`.
    modulus: Vec<u64>,
    order: BigUint,
}

#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.degree == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{} = F_{}[t]/({})", self.inner.p, self.inner.degree, self.inner.p, self.modulus_string())
        }
    }
}

impl Field {
    fn from_parts(p: u64, modulus: Vec<u64>) -> Field {
        let degree = modulus.len() - 1;
        let order = BigUint::from(p).pow(degree as u32);
        Field { inner: Arc::new(FieldInner { p, degree, modulus, order }) }
    }

    /// The prime field `F_p`; `p` must be a prime larger than 3.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= 3 {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        Ok(Field::from_parts(p, vec![0, 1]))
    }

    /// `F_p[t]/(modulus)` for a monic polynomial over the prime field
    /// `base`. Irreducibility is checked by factoring.
    pub fn extension(base: &Field, modulus: &super::Poly) -> Result<Field> {
        if !base.is_prime_field() {
            return Err(Error::FieldMismatch);
        }
        if modulus.field() != base {
            return Err(Error::FieldMismatch);
        }
        let deg = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 || !super::is_irreducible(modulus) {
            return Err(Error::ReducibleModulus);
        }
        let m = modulus.monic();
        let coeffs = m.coeffs().iter().map(|c| c.0[0]).collect();
        Ok(Field::from_parts(base.inner.p, coeffs))
    }

    /// The canonical `F_{p^k}`, built from the smallest irreducible monic
    /// polynomial of degree `k` (see [`super::find_irreducible`]).
    pub fn with_degree(p: u64, k: usize) -> Result<Field> {
        let base = Field::prime(p)?;
        if k <= 1 {
            return Ok(base);
        }
        let modulus = super::find_irreducible(&base, k);
        Ok(Field::from_parts(p, modulus.coeffs().iter().map(|c| c.0[0]).collect()))
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.inner.order
    }

    /// `|F|` as a machine integer when it fits.
    pub fn order_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.inner.degree {
            acc = acc.checked_mul(self.inner.p as u128)?;
        }
        Some(acc)
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.degree == 1
    }

    pub fn prime_field(&self) -> Field {
        if self.is_prime_field() {
            self.clone()
        } else {
            Field::from_parts(self.inner.p, vec![0, 1])
        }
    }

    /// Coefficients of the defining polynomial, low to high.
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.inner.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join(" + ")
    }

    pub fn zero(&self) -> Fe {
        Fe(SmallVec::from_elem(0, self.inner.degree))
    }

    pub fn one(&self) -> Fe {
        let mut v = self.zero();
        v.0[0] = 1;
        v
    }

    /// The generator `t` (equal to 0 in a prime field, where `t` is the root of `M(t) = t`).
    pub fn generator(&self) -> Fe {
        if self.inner.degree == 1 {
            return self.zero();
        }
        let mut v = self.zero();
        v.0[1] = 1;
        v
    }

    pub fn from_i64(&self, n: i64) -> Fe {
        let p = self.inner.p as i128;
        let r = ((n as i128 % p) + p) % p;
        let mut v = self.zero();
        v.0[0] = r as u64;
        v
    }

    pub fn from_u64(&self, n: u64) -> Fe {
        let mut v = self.zero();
        v.0[0] = n % self.inner.p;
        v
    }

    /// Element with the given coefficients in `t` (extra coefficients are
    /// reduced through the modulus).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Fe {
        let t = self.generator();
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, &t), &self.from_i64(c));
        }
        if self.is_prime_field() && !coeffs.is_empty() {
            // t = 0 in a prime field; only the constant term survives above
            return self.from_i64(coeffs[0]);
        }
        acc
    }

    pub fn is_zero(&self, a: &Fe) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &Fe) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    /// Whether the element lies in the prime subfield.
    pub fn is_prime_subfield_element(&self, a: &Fe) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.inner.p;
        Fe(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| {
            let s = x as u128 + y as u128;
            (s % p as u128) as u64
        }).collect())
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.inner.p;
        Fe(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| if x >= y { x - y } else { p - (y - x) }).collect())
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let p = self.inner.p;
        Fe(a.0.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.inner.p;
        let k = self.inner.degree;
        if k == 1 {
            return Fe(smallvec::smallvec![mul_mod(a.0[0], b.0[0], p)]);
        }
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] += x as u128 * y as u128;
                if prod[i + j] >= 1u128 << 126 {
                    prod[i + j] %= p as u128;
                }
            }
        }
        let mut red: Vec<u64> = prod.iter().map(|&c| (c % p as u128) as u64).collect();
        let m = &self.inner.modulus;
        for i in (k..2 * k - 1).rev() {
            let c = red[i];
            if c == 0 {
                continue;
            }
            red[i] = 0;
            let negc = p - c;
            for j in 0..k {
                if m[j] != 0 {
                    red[i - k + j] = ((red[i - k + j] as u128 + negc as u128 * m[j] as u128) % p as u128) as u64;
                }
            }
        }
        red.truncate(k);
        Fe(SmallVec::from_vec(red))
    }

    pub fn scale_u64(&self, a: &Fe, c: u64) -> Fe {
        let p = self.inner.p;
        Fe(a.0.iter().map(|&x| mul_mod(x, c % p, p)).collect())
    }

    pub fn inv(&self, a: &Fe) -> Option<Fe> {
        if self.is_zero(a) {
            return None;
        }
        let p = self.inner.p;
        if self.inner.degree == 1 {
            return Some(Fe(smallvec::smallvec![pow_mod(a.0[0], p - 2, p)]));
        }
        let inv = raw::inverse_mod(&a.0, &self.inner.modulus, p);
        let mut v = self.zero();
        for (i, c) in inv.into_iter().enumerate() {
            v.0[i] = c;
        }
        Some(v)
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Result<Fe> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &bi))
    }

    pub fn pow_u64(&self, a: &Fe, mut e: u64) -> Fe {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: &Fe, e: &BigUint) -> Fe {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Inverse of the Frobenius `a -> a^p`.
    pub fn pth_root(&self, a: &Fe) -> Fe {
        let p = BigUint::from(self.inner.p);
        let e = p.pow(self.inner.degree as u32 - 1);
        self.pow(a, &e)
    }

    /// Whether `a` is a square (zero counts as a square).
    pub fn is_square(&self, a: &Fe) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = (self.order() - BigUint::one()) >> 1;
        self.is_one(&self.pow(a, &e))
    }

    /// A square root, if one exists; the smaller of the two roots in the
    /// canonical order.
    pub fn sqrt(&self, a: &Fe) -> Option<Fe> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        let r = super::residue::cipolla(self, a);
        let other = self.neg(&r);
        Some(if other < r { other } else { r })
    }

    /// Index of an element in the canonical enumeration (`sum c_i p^i`).
    pub fn element_index(&self, a: &Fe) -> u128 {
        let mut idx: u128 = 0;
        for &c in a.0.iter().rev() {
            idx = idx.saturating_mul(self.inner.p as u128).saturating_add(c as u128);
        }
        idx
    }

    pub fn element_by_index(&self, mut idx: u128) -> Fe {
        let p = self.inner.p as u128;
        let mut v = self.zero();
        for i in 0..self.inner.degree {
            v.0[i] = (idx % p) as u64;
            idx /= p;
        }
        v
    }

    /// All elements in canonical order; only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let n = self.order_u128().expect("field too large to enumerate");
        (0..n).map(move |i| self.element_by_index(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let p = self.inner.p;
        Fe((0..self.inner.degree).map(|_| rng.gen_range(0..p)).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Formats an element: an integer in `[0, p)` for prime fields,
    /// otherwise a polynomial in `t`.
    pub fn fmt_elem(&self, a: &Fe) -> String {
        if self.inner.degree == 1 {
            return a.0[0].to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            format!("({})", terms.join("+"))
        }
    }

    /// Raw element from a full coefficient vector; `None` if the length is wrong.
    pub fn elem_from_raw(&self, coeffs: &[u64]) -> Option<Fe> {
        if coeffs.len() != self.inner.degree {
            return None;
        }
        Some(Fe(coeffs.iter().map(|&c| c % self.inner.p).collect()))
    }
}

/// Arithmetic on raw coefficient vectors over `F_p`, used only for
/// inverses in extension fields.
mod raw {
    use super::{mul_mod, pow_mod};

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn sub_scaled(a: &mut Vec<u64>, b: &[u64], c: u64, shift: usize, p: u64) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            let t = mul_mod(bi, c, p);
            let x = a[i + shift];
            a[i + shift] = if x >= t { x - t } else { p - (t - x) };
        }
        trim(a);
    }

    fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        let mut out = out;
        trim(&mut out);
        out
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = a.to_vec();
        sub_scaled(&mut out, b, 1, 0, p);
        out
    }

    /// Inverse of `a` modulo the irreducible `m`.
    pub(super) fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        // invariant: s_i * a == r_i (mod m)
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let mut r = r0.clone();
            let lead_inv = pow_mod(*r1.last().unwrap(), p - 2, p);
            while r.len() >= r1.len() && !r.is_empty() {
                let shift = r.len() - r1.len();
                let c = mul_mod(*r.last().unwrap(), lead_inv, p);
                q[shift] = c;
                sub_scaled(&mut r, &r1, c, shift, p);
            }
            trim(&mut q);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant
        let c = pow_mod(r0[0], p - 2, p);
        s0.iter().map(|&x| mul_mod(x, c, p)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_three_mod_five() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.inv(&f.from_i64(3)), Some(f.from_i64(2)));
        assert_eq!(f.mul(&f.from_i64(4), &f.from_i64(4)), f.one());
        let a = f.from_i64(3);
        assert_eq!(f.add(&a, &f.zero()), a);
    }

    #[test]
    fn rejects_small_and_composite_characteristics() {
        assert_eq!(Field::prime(3).err(), Some(Error::UnsupportedCharacteristic(3)));
        assert_eq!(Field::prime(2).err(), Some(Error::UnsupportedCharacteristic(2)));
        assert_eq!(Field::prime(9).err(), Some(Error::NotPrime(9)));
    }

    #[test]
    fn division_by_zero() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.div(&f.one(), &f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn extension_inverses_exhaustive_f25() {
        let f = Field::with_degree(5, 2).unwrap();
        assert_eq!(f.modulus_coeffs(), &[2, 0, 1]);
        for a in f.elements().skip(1) {
            let ai = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &ai)));
        }
        // t^2 = -2
        let t = f.generator();
        assert_eq!(f.mul(&t, &t), f.from_i64(-2));
    }

    #[test]
    fn sqrt_roundtrip() {
        for f in [Field::prime(13).unwrap(), Field::with_degree(7, 3).unwrap()] {
            let mut squares = 0;
            for a in f.elements() {
                if let Some(r) = f.sqrt(&a) {
                    assert_eq!(f.mul(&r, &r), a);
                    squares += 1;
                }
            }
            let q = f.order_u128().unwrap();
            assert_eq!(squares as u128, (q + 1) / 2);
        }
    }

    #[test]
    fn large_prime_arithmetic() {
        let p = (1u64 << 61) - 1;
        let f = Field::prime(p).unwrap();
        let a = f.from_u64(p - 2);
        let ai = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &ai)));
    }
}
