//! Divisors: finite integer combinations of places.

use std::collections::BTreeMap;

use super::curve::{Curve, Point};
use super::place::Place;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Divisor {
    terms: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn from_place(place: Place, n: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_term(place, n);
        d
    }

    pub fn from_point(curve: &Curve, q: &Point, n: i64) -> Divisor {
        Divisor::from_place(Place::from_point(curve, q), n)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    pub fn add_term(&mut self, place: Place, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.terms.entry(place.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&place);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mult(&self, place: &Place) -> i64 {
        self.terms.get(place).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.terms.iter().map(|(p, &n)| (p, n))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.terms.keys()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, &n)| n * p.degree() as i64).sum()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in other.terms() {
            d.add_term(p.clone(), n);
        }
        d
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms().map(|(p, n)| (p.clone(), n * k)))
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&n| n > 0)
    }

    /// Whether `self >= other` coefficientwise.
    pub fn dominates(&self, other: &Divisor) -> bool {
        self.sub(other).is_effective()
    }

    /// Coefficientwise minimum.
    pub fn min(&self, other: &Divisor) -> Divisor {
        let mut places: Vec<&Place> = self.support().chain(other.support()).collect();
        places.sort();
        places.dedup();
        Divisor::from_terms(places.into_iter().map(|p| (p.clone(), self.mult(p).min(other.mult(p)))))
    }

    /// Positive and negative parts.
    pub fn split_signs(&self) -> (Divisor, Divisor) {
        let pos = Divisor::from_terms(self.terms().filter(|(_, n)| *n > 0).map(|(p, n)| (p.clone(), n)));
        let neg = Divisor::from_terms(self.terms().filter(|(_, n)| *n < 0).map(|(p, n)| (p.clone(), -n)));
        (pos, neg)
    }

    pub fn all_rational(&self) -> bool {
        self.support().all(|p| p.is_rational())
    }

    /// lcm of the degrees of the places in the support.
    pub fn splitting_degree(&self) -> usize {
        self.support().map(|p| p.degree()).fold(1, lcm)
    }

    pub fn fmt(&self, curve: &Curve) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, n)) in self.terms().enumerate() {
            let sign = if n < 0 { "-" } else { "+" };
            if i == 0 {
                if n < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&format!("{}*{}", n.abs(), p.fmt(curve)));
        }
        out
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
