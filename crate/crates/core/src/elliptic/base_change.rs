//! Extension of scalars from `K` to the degree-`k` extension of `K`.

use super::curve::{Curve, Point};
use super::divisor::Divisor;
use super::place::{places_over, Place};
use crate::galois::{factor, Embedding, Field, Poly};

/// A fixed embedding `K -> L` together with the curve over `L`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    source: Curve,
    target: Curve,
    emb: Embedding,
}

impl BaseChange {
    pub fn new(curve: &Curve, k: usize) -> BaseChange {
        let kf = curve.field();
        let lf = if k <= 1 {
            kf.clone()
        } else {
            Field::with_degree(kf.characteristic(), kf.degree() * k).expect("valid characteristic")
        };
        let emb = Embedding::new(kf, &lf).expect("degree divides");
        let target = Curve::new(&lf, emb.apply(curve.a()), emb.apply(curve.b())).expect("nonsingular");
        BaseChange { source: curve.clone(), target, emb }
    }

    pub fn source(&self) -> &Curve {
        &self.source
    }

    pub fn target(&self) -> &Curve {
        &self.target
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn is_identity(&self) -> bool {
        self.source.field() == self.target.field()
    }

    pub fn point(&self, q: &Point) -> Point {
        match q {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(self.emb.apply(x), self.emb.apply(y)),
        }
    }

    pub fn poly(&self, f: &Poly) -> Poly {
        self.emb.apply_poly(f)
    }

    /// The places of `E_L` over a place of `E_K`.
    pub fn place(&self, place: &Place) -> Vec<Place> {
        if self.is_identity() {
            return vec![place.clone()];
        }
        let m = match place {
            Place::Infinity => return vec![Place::Infinity],
            Place::Split { m, .. } | Place::Ramified { m } | Place::Inert { m } => self.poly(m),
        };
        let mut out = Vec::new();
        for (mp, _) in factor(&m).expect("nonzero") {
            match place {
                Place::Split { y, .. } => {
                    let y = self.poly(y).rem(&mp);
                    out.push(Place::Split { m: mp, y });
                }
                Place::Ramified { .. } => out.push(Place::Ramified { m: mp }),
                _ => out.extend(places_over(&self.target, &mp)),
            }
        }
        out.sort();
        out
    }

    pub fn divisor(&self, d: &Divisor) -> Divisor {
        let mut out = Divisor::zero();
        for (p, n) in d.terms() {
            for q in self.place(p) {
                out.add_term(q, n);
            }
        }
        out
    }
}
