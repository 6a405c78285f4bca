//! Closed points of the curve over its base field.

use std::cmp::Ordering;

use super::curve::{Curve, Point};
use crate::galois::{Fe, Poly, ResidueField};

/// A place of `K(E)`.
///
/// Finite places lie over a monic irreducible `m(x)`. If `m | F` the place
/// is ramified over the `x`-line (`y = 0` there). Otherwise `y` has the two
/// candidate values `+-sqrt(F)` in `K[x]/(m)`: if `F` is a square there are
/// two places, each recording its `y`-value `c(x)` with `deg c < deg m`;
/// if not, `m` stays prime and there is one inert place of degree `2 deg m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Infinity,
    Split { m: Poly, y: Poly },
    Ramified { m: Poly },
    Inert { m: Poly },
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Split { m, .. } | Place::Ramified { m } => m.degree().unwrap(),
            Place::Inert { m } => 2 * m.degree().unwrap(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// The polynomial in `x` under a finite place.
    pub fn x_poly(&self) -> Option<&Poly> {
        match self {
            Place::Infinity => None,
            Place::Split { m, .. } | Place::Ramified { m } | Place::Inert { m } => Some(m),
        }
    }

    /// Ramification index over the `x`-line.
    pub fn ramification(&self) -> u32 {
        match self {
            Place::Infinity | Place::Ramified { .. } => 2,
            _ => 1,
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Place::Infinity => 0,
            Place::Ramified { .. } => 1,
            Place::Split { .. } => 2,
            Place::Inert { .. } => 3,
        }
    }

    pub fn from_point(curve: &Curve, q: &Point) -> Place {
        match q {
            Point::Infinity => Place::Infinity,
            Point::Affine(x0, y0) => {
                let f = curve.field();
                let m = Poly::linear_root(f, x0);
                if f.is_zero(y0) {
                    Place::Ramified { m }
                } else {
                    Place::Split { m, y: Poly::constant(f, y0.clone()) }
                }
            }
        }
    }

    /// The rational point of a degree-one place.
    pub fn to_point(&self, curve: &Curve) -> Option<Point> {
        let f = curve.field();
        match self {
            Place::Infinity => Some(Point::Infinity),
            Place::Split { m, y } if m.degree() == Some(1) => {
                Some(Point::Affine(f.neg(&m.coeff(0)), y.coeff(0)))
            }
            Place::Ramified { m } if m.degree() == Some(1) => Some(Point::Affine(f.neg(&m.coeff(0)), f.zero())),
            _ => None,
        }
    }

    pub fn fmt(&self, curve: &Curve) -> String {
        if let Some(q) = self.to_point(curve) {
            return curve.fmt_point(&q);
        }
        match self {
            Place::Split { m, y } => format!("[{}; y={}]", m, y),
            Place::Ramified { m } => format!("[{}; y=0]", m),
            Place::Inert { m } => format!("[{}; inert]", m),
            Place::Infinity => unreachable!(),
        }
    }
}

/// Infinity first, then by degree, minimal polynomial, kind and `y`-component.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |p: &Place| (p.kind_rank() == 0, p.degree());
        key(other)
            .0
            .cmp(&key(self).0)
            .then_with(|| key(self).1.cmp(&key(other).1))
            .then_with(|| self.x_poly().cmp(&other.x_poly()))
            .then_with(|| self.kind_rank().cmp(&other.kind_rank()))
            .then_with(|| match (self, other) {
                (Place::Split { y: a, .. }, Place::Split { y: b, .. }) => a.cmp(b),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The places lying over the monic irreducible `m(x)`, in canonical order.
pub fn places_over(curve: &Curve, m: &Poly) -> Vec<Place> {
    let m = m.monic();
    let rhs = curve.rhs();
    if m.divides(&rhs) {
        return vec![Place::Ramified { m }];
    }
    let res = ResidueField::new(&m);
    match res.sqrt(&rhs) {
        Some(c) => {
            let c2 = res.reduce(&c.neg());
            let mut v = vec![Place::Split { m: m.clone(), y: c }, Place::Split { m, y: c2 }];
            v.sort();
            v
        }
        None => vec![Place::Inert { m }],
    }
}

/// Residue of `x` at a rational finite place.
pub fn rational_x(place: &Place) -> Option<Fe> {
    match place {
        Place::Split { m, .. } | Place::Ramified { m } if m.degree() == Some(1) => {
            Some(m.field().neg(&m.coeff(0)))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;

    #[test]
    fn places_over_linear_factors() {
        let f = Field::prime(5).unwrap();
        let e = Curve::from_i64(&f, -1, 0).unwrap();
        let x = Poly::x(&f);
        assert_eq!(places_over(&e, &x), vec![Place::Ramified { m: x.clone() }]);
        let m2 = Poly::from_i64s(&f, &[-2, 1]);
        let ps = places_over(&e, &m2);
        assert_eq!(ps.len(), 2);
        let pts: Vec<Point> = ps.iter().map(|p| p.to_point(&e).unwrap()).collect();
        assert_eq!(pts, vec![e.point_i64(2, 1).unwrap(), e.point_i64(2, 4).unwrap()]);
    }

    #[test]
    fn degree_counts_match_point_counts_over_extension() {
        // places of degree 1 and 2 over F_5 account for E(F_25)
        let f = Field::prime(5).unwrap();
        let e = Curve::from_i64(&f, -1, 0).unwrap();
        let mut n1 = 1;
        let mut n2 = 0;
        for deg in 1..=2 {
            for m in crate::galois::factor(&Poly::x(&f).pow(25).sub(&Poly::x(&f))).unwrap() {
                if m.0.degree() != Some(deg) {
                    continue;
                }
                for pl in places_over(&e, &m.0) {
                    match pl.degree() {
                        1 => n1 += 1,
                        2 => n2 += 1,
                        _ => {}
                    }
                }
            }
        }
        let f25 = Field::with_degree(5, 2).unwrap();
        let e25 = Curve::from_i64(&f25, -1, 0).unwrap();
        assert_eq!(n1, e.points().len());
        assert_eq!(n1 + 2 * n2, e25.points().len());
    }

    #[test]
    fn canonical_order_puts_infinity_first() {
        let f = Field::prime(5).unwrap();
        let e = Curve::from_i64(&f, -1, 0).unwrap();
        let mut v: Vec<Place> = e.points().iter().map(|q| Place::from_point(&e, q)).collect();
        v.reverse();
        v.sort();
        assert_eq!(v[0], Place::Infinity);
        assert_eq!(v[1].fmt(&e), "(0,0)");
    }
}
