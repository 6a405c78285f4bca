//! The group `(E, +)` with zero at a marked point, and divisor classes.

use super::curve::{Curve, Point};
use super::divisor::Divisor;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedCurve {
    curve: Curve,
    mark: Point,
}

impl MarkedCurve {
    pub fn new(curve: Curve, mark: Point) -> Result<MarkedCurve> {
        if !curve.contains(&mark) {
            return Err(Error::PointOffCurve);
        }
        Ok(MarkedCurve { curve, mark })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn mark(&self) -> &Point {
        &self.mark
    }

    /// The divisor `1*(p)`.
    pub fn mark_divisor(&self) -> Divisor {
        Divisor::from_point(&self.curve, &self.mark, 1)
    }

    /// `q1 + q2 - p` in chord-tangent arithmetic, so that
    /// `(q1) + (q2) ~ (q1 (+) q2) + (p)`.
    pub fn marked_sum(&self, q1: &Point, q2: &Point) -> Result<Point> {
        let s = self.curve.add(q1, q2)?;
        self.curve.sub(&s, &self.mark)
    }

    /// `n` copies of `q` in the marked group: `n q - (n - 1) p`.
    pub fn marked_mul(&self, n: i64, q: &Point) -> Result<Point> {
        let e = &self.curve;
        let nq = e.mul(n, q)?;
        e.sub(&nq, &e.mul(n - 1, &self.mark)?)
    }

    pub fn is_r_torsion(&self, q: &Point, r: u64) -> Result<bool> {
        Ok(self.marked_mul(r as i64, q)? == self.mark)
    }

    /// Chord-tangent sum of `sum n_i q_i` over a divisor with rational support.
    fn point_sum(&self, d: &Divisor) -> Result<Point> {
        if !d.all_rational() {
            return Err(Error::BaseChangeRequired(d.splitting_degree() as u32));
        }
        let e = &self.curve;
        let mut acc = Point::Infinity;
        for (place, n) in d.terms() {
            let q = place.to_point(e).expect("rational place");
            acc = e.add_unchecked(&acc, &e.mul(n, &q)?);
        }
        Ok(acc)
    }

    /// The point `q` with `D ~ (q) - (p)`.
    pub fn divisor_class_point(&self, d: &Divisor) -> Result<Point> {
        if d.degree() != 0 {
            return Err(Error::NonZeroDegree(d.degree()));
        }
        let s = self.point_sum(d)?;
        self.curve.add(&s, &self.mark)
    }

    pub fn linearly_equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        let diff = d1.sub(d2);
        if diff.degree() != 0 {
            return Ok(false);
        }
        Ok(self.point_sum(&diff)?.is_infinity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;

    fn setup(mark: Option<(i64, i64)>) -> MarkedCurve {
        let e = Curve::from_i64(&Field::prime(5).unwrap(), -1, 0).unwrap();
        let p = match mark {
            None => Point::Infinity,
            Some((x, y)) => e.point_i64(x, y).unwrap(),
        };
        MarkedCurve::new(e, p).unwrap()
    }

    #[test]
    fn marked_sum_examples() {
        let mc = setup(Some((0, 0)));
        let o = mc.curve().point_i64(0, 0).unwrap();
        assert_eq!(mc.marked_sum(&o, &o).unwrap(), o);
        let q = mc.curve().point_i64(2, 1).unwrap();
        assert_eq!(mc.marked_sum(mc.mark(), &q).unwrap(), q);
        let inf = setup(None);
        assert_eq!(inf.marked_sum(&q, &q).unwrap(), inf.curve().add(&q, &q).unwrap());
    }

    #[test]
    fn torsion_examples() {
        let mc = setup(None);
        let e = mc.curve();
        assert!(mc.is_r_torsion(&e.point_i64(0, 0).unwrap(), 2).unwrap());
        assert!(!mc.is_r_torsion(&e.point_i64(2, 1).unwrap(), 2).unwrap());
        for r in 1..5 {
            assert!(mc.is_r_torsion(mc.mark(), r).unwrap());
        }
    }

    #[test]
    fn class_points() {
        let mc = setup(Some((2, 1)));
        let e = mc.curve().clone();
        let pts = e.points();
        let p = mc.mark_divisor();
        assert_eq!(mc.divisor_class_point(&Divisor::zero()).unwrap(), *mc.mark());
        for q1 in &pts {
            let d1 = Divisor::from_point(&e, q1, 1);
            assert_eq!(mc.divisor_class_point(&d1.sub(&p)).unwrap(), *q1);
            for q2 in &pts {
                let d2 = Divisor::from_point(&e, q2, 1);
                let s = mc.marked_sum(q1, q2).unwrap();
                let d = d1.add(&d2).sub(&p.scale(2));
                assert_eq!(mc.divisor_class_point(&d).unwrap(), s);
                let ds = Divisor::from_point(&e, &s, 1);
                assert!(mc.linearly_equivalent(&d1.add(&d2), &ds.add(&p)).unwrap());
                assert_eq!(mc.linearly_equivalent(&d1, &d2).unwrap(), q1 == q2);
            }
        }
        assert_eq!(mc.divisor_class_point(&p), Err(Error::NonZeroDegree(1)));
    }
}
