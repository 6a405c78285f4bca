//! Truncated Laurent series `sum_{k >= val} c_k z^k + O(z^prec)`.

use crate::galois::{Fe, Field};

/// Absolute precision of an exactly known series.
pub const EXACT: i64 = i64::MAX / 4;

/// Coefficients are stored from `val` on; coefficients past the stored
/// ones and below `prec` are zero. A nonempty series has a nonzero
/// leading coefficient, so `val` is its true valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    val: i64,
    coeffs: Vec<Fe>,
    prec: i64,
}

impl LaurentSeries {
    fn normalized(field: &Field, mut val: i64, mut coeffs: Vec<Fe>, prec: i64) -> LaurentSeries {
        coeffs.truncate((prec.saturating_sub(val)).max(0) as usize);
        let Some(k) = coeffs.iter().position(|c| !field.is_zero(c)) else {
            return LaurentSeries::zero_to(prec);
        };
        coeffs.drain(..k);
        val += k as i64;
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        LaurentSeries { val, coeffs, prec }
    }

    pub fn new(field: &Field, val: i64, coeffs: Vec<Fe>, prec: i64) -> LaurentSeries {
        LaurentSeries::normalized(field, val, coeffs, prec)
    }

    pub fn zero_to(prec: i64) -> LaurentSeries {
        LaurentSeries { val: prec, coeffs: Vec::new(), prec }
    }

    pub fn constant(field: &Field, c: &Fe) -> LaurentSeries {
        LaurentSeries::normalized(field, 0, vec![c.clone()], EXACT)
    }

    /// The monomial `c z^k`, exact.
    pub fn monomial(field: &Field, c: &Fe, k: i64) -> LaurentSeries {
        LaurentSeries::normalized(field, k, vec![c.clone()], EXACT)
    }

    /// Valuation if some coefficient is known to be nonzero.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^k`; `None` past the precision.
    pub fn coeff(&self, field: &Field, k: i64) -> Option<Fe> {
        if k >= self.prec {
            return None;
        }
        if k < self.val {
            return Some(field.zero());
        }
        Some(self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(|| field.zero()))
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.coeffs.first()
    }

    /// Drops information at and past `z^prec`.
    pub fn truncate(&self, field: &Field, prec: i64) -> LaurentSeries {
        LaurentSeries::normalized(field, self.val, self.coeffs.clone(), prec.min(self.prec))
    }

    pub fn add(&self, field: &Field, o: &LaurentSeries) -> LaurentSeries {
        let prec = self.prec.min(o.prec);
        let stored = |s: &LaurentSeries| (!s.coeffs.is_empty()).then(|| (s.val, s.val + s.coeffs.len() as i64));
        let (start, end) = match (stored(self), stored(o)) {
            (None, None) => return LaurentSeries::zero_to(prec),
            (Some(r), None) | (None, Some(r)) => r,
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        let end = end.min(prec);
        if end <= start {
            return LaurentSeries::zero_to(prec);
        }
        let v = (start..end)
            .map(|k| field.add(&self.coeff(field, k).unwrap(), &o.coeff(field, k).unwrap()))
            .collect();
        LaurentSeries::normalized(field, start, v, prec)
    }

    pub fn neg(&self, field: &Field) -> LaurentSeries {
        LaurentSeries { val: self.val, coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(), prec: self.prec }
    }

    pub fn sub(&self, field: &Field, o: &LaurentSeries) -> LaurentSeries {
        self.add(field, &o.neg(field))
    }

    pub fn scale(&self, field: &Field, c: &Fe) -> LaurentSeries {
        if field.is_zero(c) {
            return LaurentSeries::zero_to(if self.prec >= EXACT { EXACT } else { self.prec });
        }
        LaurentSeries { val: self.val, coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect(), prec: self.prec }
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        let sat = |p: i64| if p >= EXACT { EXACT } else { p + k };
        LaurentSeries { val: if self.coeffs.is_empty() { sat(self.val) } else { self.val + k }, coeffs: self.coeffs.clone(), prec: sat(self.prec) }
    }

    pub fn mul(&self, field: &Field, o: &LaurentSeries) -> LaurentSeries {
        let cap = |x: i64| x.min(EXACT);
        let prec = cap(self.prec.saturating_add(o.val)).min(cap(o.prec.saturating_add(self.val)));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return LaurentSeries::zero_to(prec);
        }
        let val = self.val + o.val;
        let len = ((self.coeffs.len() + o.coeffs.len() - 1) as i64).min(prec - val).max(0) as usize;
        let mut out = vec![field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || field.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        LaurentSeries::normalized(field, val, out, prec)
    }

    /// `1/self` with at most `max_rel` correct coefficients; `None` if no
    /// coefficient is known to be nonzero.
    pub fn inv(&self, field: &Field, max_rel: i64) -> Option<LaurentSeries> {
        let a0 = self.coeffs.first()?;
        let rel = (self.prec - self.val).min(max_rel).max(1);
        let a0i = field.inv(a0).unwrap();
        let n = rel as usize;
        let mut b = vec![field.zero(); n];
        b[0] = a0i.clone();
        for k in 1..n {
            let mut s = field.zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                s = field.add(&s, &field.mul(&self.coeffs[i], &b[k - i]));
            }
            b[k] = field.neg(&field.mul(&s, &a0i));
        }
        Some(LaurentSeries::normalized(field, -self.val, b, -self.val + rel))
    }

    pub fn div(&self, field: &Field, o: &LaurentSeries, max_rel: i64) -> Option<LaurentSeries> {
        Some(self.mul(field, &o.inv(field, max_rel)?))
    }

    /// Square root of a series with even valuation and square leading
    /// coefficient, normalized so that its leading coefficient is `root0`.
    pub fn sqrt(&self, field: &Field, root0: &Fe, max_rel: i64) -> Option<LaurentSeries> {
        let v = self.valuation()?;
        if v % 2 != 0 {
            return None;
        }
        let rel = (self.prec - self.val).min(max_rel).max(1) as usize;
        let two_r0_inv = field.inv(&field.add(root0, root0))?;
        let mut r = vec![field.zero(); rel];
        r[0] = root0.clone();
        // (sum r_i z^i)^2 = sum a_k z^k
        for k in 1..rel {
            let mut s = self.coeffs.get(k).cloned().unwrap_or_else(|| field.zero());
            for i in 1..k {
                s = field.sub(&s, &field.mul(&r[i], &r[k - i]));
            }
            r[k] = field.mul(&s, &two_r0_inv);
        }
        Some(LaurentSeries::normalized(field, v / 2, r, v / 2 + rel as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_minus_z() {
        let f = Field::prime(7).unwrap();
        let s = LaurentSeries::new(&f, 0, vec![f.one(), f.from_i64(-1)], EXACT);
        let inv = s.inv(&f, 6).unwrap();
        assert_eq!(inv.prec(), 6);
        for k in 0..6 {
            assert_eq!(inv.coeff(&f, k).unwrap(), f.one());
        }
        let prod = s.mul(&f, &inv);
        assert_eq!(prod.valuation(), Some(0));
        assert_eq!(prod.prec(), 6);
        for k in 1..6 {
            assert!(f.is_zero(&prod.coeff(&f, k).unwrap()));
        }
    }

    #[test]
    fn cancellation_reduces_information() {
        let f = Field::prime(5).unwrap();
        let a = LaurentSeries::new(&f, -2, vec![f.one(), f.one(), f.one()], 1);
        let b = LaurentSeries::new(&f, -2, vec![f.one(), f.one()], 1);
        let d = a.sub(&f, &b);
        assert_eq!(d.valuation(), Some(0));
        assert_eq!(d.prec(), 1);
        let z = a.sub(&f, &a);
        assert!(z.is_known_zero());
    }

    #[test]
    fn square_root() {
        let f = Field::prime(11).unwrap();
        // (1 + z)^2 = 1 + 2z + z^2
        let s = LaurentSeries::new(&f, 0, vec![f.one(), f.from_i64(2), f.one()], EXACT);
        let r = s.sqrt(&f, &f.one(), 5).unwrap();
        assert_eq!(r, LaurentSeries::new(&f, 0, vec![f.one(), f.one()], 5));
    }
}
