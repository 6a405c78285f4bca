//! Short Weierstrass curves `y^2 = x^3 + a x + b` and chord-tangent arithmetic.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::galois::{Fe, Field, Poly};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(Fe, Fe),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Curve {
    field: Field,
    a: Fe,
    b: Fe,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 = x^3 + {}*x + {} over {}",
            self.field.fmt_elem(&self.a),
            self.field.fmt_elem(&self.b),
            self.field
        )
    }
}

impl Curve {
    pub fn new(field: &Field, a: Fe, b: Fe) -> Result<Curve> {
        let f = field;
        let a3 = f.mul(&f.mul(&a, &a), &a);
        let disc = f.add(&f.scale_u64(&a3, 4), &f.scale_u64(&f.mul(&b, &b), 27));
        if f.is_zero(&disc) {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { field: field.clone(), a, b })
    }

    pub fn from_i64(field: &Field, a: i64, b: i64) -> Result<Curve> {
        Curve::new(field, field.from_i64(a), field.from_i64(b))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> &Fe {
        &self.a
    }

    pub fn b(&self) -> &Fe {
        &self.b
    }

    /// `F(x) = x^3 + a x + b`.
    pub fn rhs(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, vec![self.b.clone(), self.a.clone(), f.zero(), f.one()])
    }

    pub fn rhs_at(&self, x: &Fe) -> Fe {
        let f = &self.field;
        let x2 = f.mul(x, x);
        f.add(&f.mul(&f.add(&x2, &self.a), x), &self.b)
    }

    pub fn contains(&self, q: &Point) -> bool {
        match q {
            Point::Infinity => true,
            Point::Affine(x, y) => self.field.mul(y, y) == self.rhs_at(x),
        }
    }

    pub fn point(&self, x: Fe, y: Fe) -> Result<Point> {
        let q = Point::Affine(x, y);
        if self.contains(&q) {
            Ok(q)
        } else {
            Err(Error::PointOffCurve)
        }
    }

    pub fn point_i64(&self, x: i64, y: i64) -> Result<Point> {
        self.point(self.field.from_i64(x), self.field.from_i64(y))
    }

    fn check(&self, q: &Point) -> Result<()> {
        if self.contains(q) {
            Ok(())
        } else {
            Err(Error::PointOffCurve)
        }
    }

    pub fn neg(&self, q: &Point) -> Point {
        match q {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), self.field.neg(y)),
        }
    }

    /// Chord-tangent addition with identity at infinity.
    pub fn add(&self, q1: &Point, q2: &Point) -> Result<Point> {
        self.check(q1)?;
        self.check(q2)?;
        Ok(self.add_unchecked(q1, q2))
    }

    pub(crate) fn add_unchecked(&self, q1: &Point, q2: &Point) -> Point {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (q1, q2) {
            (Point::Infinity, q) | (q, Point::Infinity) => return q.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.is_zero(&f.add(y1, y2)) {
                return Point::Infinity;
            }
            // tangent slope (3x^2 + a) / 2y
            let num = f.add(&f.scale_u64(&f.mul(x1, x1), 3), &self.a);
            f.div(&num, &f.scale_u64(y1, 2)).unwrap()
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).unwrap()
        };
        let x3 = f.sub(&f.sub(&f.mul(&lambda, &lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        Point::Affine(x3, y3)
    }

    pub fn sub(&self, q1: &Point, q2: &Point) -> Result<Point> {
        self.add(q1, &self.neg(q2))
    }

    /// `n * q` for any integer `n`.
    pub fn mul(&self, n: i64, q: &Point) -> Result<Point> {
        self.check(q)?;
        let mut base = if n < 0 { self.neg(q) } else { q.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// All rational points, infinity first, then by `(x, y)`.
    pub fn points(&self) -> Vec<Point> {
        let f = &self.field;
        let mut out = vec![Point::Infinity];
        for x in f.elements() {
            if let Some(y) = f.sqrt(&self.rhs_at(&x)) {
                out.push(Point::Affine(x.clone(), y.clone()));
                if !f.is_zero(&y) {
                    out.push(Point::Affine(x, f.neg(&y)));
                }
            }
        }
        out.sort();
        out
    }

    /// A random affine point.
    pub fn random_affine<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let f = &self.field;
        loop {
            let x = f.random(rng);
            if let Some(y) = f.sqrt(&self.rhs_at(&x)) {
                let y = if rng.gen_bool(0.5) { f.neg(&y) } else { y };
                return Point::Affine(x, y);
            }
        }
    }

    pub fn fmt_point(&self, q: &Point) -> String {
        match q {
            Point::Infinity => "inf".to_string(),
            Point::Affine(x, y) => format!("({},{})", self.field.fmt_elem(x), self.field.fmt_elem(y)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve5() -> Curve {
        Curve::from_i64(&Field::prime(5).unwrap(), -1, 0).unwrap()
    }

    #[test]
    fn small_additions() {
        let e = curve5();
        let o = e.point_i64(0, 0).unwrap();
        assert_eq!(e.add(&o, &o).unwrap(), Point::Infinity);
        let q = e.point_i64(2, 1).unwrap();
        let qb = e.point_i64(2, 4).unwrap();
        assert_eq!(e.add(&q, &qb).unwrap(), Point::Infinity);
        assert_eq!(e.add(&q, &Point::Infinity).unwrap(), q);
        assert_ne!(e.mul(2, &q).unwrap(), Point::Infinity);
        assert_eq!(e.add(&q, &Point::Affine(e.field().one(), e.field().one())), Err(Error::PointOffCurve));
    }

    #[test]
    fn singular_curve_rejected() {
        let f = Field::prime(7).unwrap();
        assert_eq!(Curve::from_i64(&f, 0, 0).err(), Some(Error::SingularCurve));
    }

    #[test]
    fn group_axioms_exhaustive() {
        for (p, a, b) in [(5, -1, 0), (7, -1, 0), (7, 1, 3), (5, 2, 1)] {
            let e = Curve::from_i64(&Field::prime(p).unwrap(), a, b).unwrap();
            let pts = e.points();
            for q in &pts {
                assert_eq!(e.add(q, &Point::Infinity).unwrap(), *q);
                assert_eq!(e.add(q, &e.neg(q)).unwrap(), Point::Infinity);
                for r in &pts {
                    let qr = e.add(q, r).unwrap();
                    assert!(e.contains(&qr));
                    assert_eq!(qr, e.add(r, q).unwrap());
                    for s in &pts {
                        let lhs = e.add(&qr, s).unwrap();
                        let rhs = e.add(q, &e.add(r, s).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn point_count_matches_brute_force() {
        let e = curve5();
        let f = e.field();
        let mut n = 1;
        for x in f.elements() {
            for y in f.elements() {
                if e.contains(&Point::Affine(x.clone(), y)) {
                    n += 1;
                }
            }
        }
        assert_eq!(e.points().len(), n);
        assert_eq!(n, 8);
    }
}
