//! Factorization over finite fields: squarefree decomposition,
//! distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::poly::Poly;
use super::Fe;
use crate::error::{Error, Result};

const SEED: u64 = 0x5eed_f00d;

/// Monic irreducible factors with multiplicities, sorted canonically.
/// The product of the factors is `f` divided by its leading coefficient.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for (g, mult) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree `g_i` with `f = prod g_i^{m_i}`.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field().clone();
    let p = field.characteristic() as u32;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// For `f` a polynomial in `x^p`, the polynomial `g` with `g^p = f`.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c))
        .collect();
    Poly::new(field, coeffs)
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree; returns `(product, degree)` pairs.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let q = field.order().clone();
    let x = Poly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let e = (field.order().pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a = Poly::new(&field, (0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(f);
        let split = if !g.is_one() {
            g
        } else {
            a.pow_mod(&e, f).sub(&Poly::one(&field)).gcd(f)
        };
        let k = split.degree().unwrap_or(0);
        if k > 0 && k < n {
            let other = f.div_exact(&split);
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let field = f.field().clone();
    let q = field.order().clone();
    let f = f.monic();
    let x = Poly::x(&field);
    // frob[i] = x^{q^i} mod f
    let mut frob = vec![x.rem(&f)];
    for i in 0..n {
        let next = frob[i].pow_mod(&q, &f);
        frob.push(next);
    }
    if frob[n] != x.rem(&f) {
        return false;
    }
    prime_divisors(n)
        .into_iter()
        .all(|r| frob[n / r].sub(&x).gcd(&f).is_one())
}

/// The smallest monic irreducible polynomial of degree `k` in the
/// canonical order (degree, then coefficients from the top down).
pub fn find_irreducible(field: &Field, k: usize) -> Poly {
    assert!(k >= 1, "degree must be positive");
    if k == 1 {
        return Poly::x(field);
    }
    let q = field.order_u128().expect("field too large");
    let mut n: u128 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut m = n;
        for _ in 0..k {
            coeffs.push(field.element_by_index(m % q));
            m /= q;
        }
        coeffs.push(field.one());
        let cand = Poly::new(field, coeffs);
        if is_irreducible(&cand) {
            return cand;
        }
        n += 1;
    }
}

/// Distinct roots in the field, in canonical order.
pub fn roots(f: &Poly) -> Vec<Fe> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let field = f.field().clone();
    let x = Poly::x(&field);
    let m = f.monic();
    let lin = x.pow_mod(field.order(), &m).sub(&x).gcd(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out: Vec<Fe> = equal_degree(&lin, 1, &mut rng)
        .into_iter()
        .map(|l| field.neg(&l.coeffs()[0]))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_roots(f: &Poly) -> Vec<Fe> {
        f.field().elements().filter(|a| f.field().is_zero(&f.eval(a))).collect()
    }

    #[test]
    fn x2_plus_1_over_f5() {
        let f5 = Field::prime(5).unwrap();
        let f = Poly::from_i64s(&f5, &[1, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(
            fac,
            vec![(Poly::from_i64s(&f5, &[2, 1]), 1), (Poly::from_i64s(&f5, &[3, 1]), 1)]
        );
        assert_eq!(brute_roots(&f), vec![f5.from_i64(2), f5.from_i64(3)]);
    }

    #[test]
    fn trivial_factorizations() {
        let f5 = Field::prime(5).unwrap();
        let x = Poly::x(&f5);
        assert_eq!(factor(&x).unwrap(), vec![(x.clone(), 1)]);
        let f7 = Field::prime(7).unwrap();
        let x7 = Poly::x(&f7);
        assert_eq!(factor(&x7.mul(&x7)).unwrap(), vec![(x7, 2)]);
        assert_eq!(factor(&Poly::zero(&f7)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn canonical_irreducibles() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(find_irreducible(&f5, 1), Poly::x(&f5));
        let m = find_irreducible(&f5, 2);
        assert_eq!(m, Poly::from_i64s(&f5, &[2, 0, 1]));
        assert!(brute_roots(&m).is_empty());
        // every earlier monic quadratic has a root
        for c in 0..2 {
            assert!(!brute_roots(&Poly::from_i64s(&f5, &[c, 0, 1])).is_empty());
        }
        let f7 = Field::prime(7).unwrap();
        let m7 = find_irreducible(&f7, 2);
        assert_eq!(m7, Poly::from_i64s(&f7, &[1, 0, 1]));
        assert!(brute_roots(&Poly::from_i64s(&f7, &[0, 0, 1])).len() == 1);
    }

    #[test]
    fn inseparable_input() {
        // (x^5 - 2)^2 = (x - 2)^10 over F_5
        let f5 = Field::prime(5).unwrap();
        let g = Poly::from_i64s(&f5, &[-2, 0, 0, 0, 0, 1]);
        let fac = factor(&g.mul(&g)).unwrap();
        assert_eq!(fac, vec![(Poly::from_i64s(&f5, &[-2, 1]), 10)]);
    }

    #[test]
    fn roots_over_extension() {
        let f25 = Field::with_degree(5, 2).unwrap();
        // x^2 + 2 splits over F_25
        let f = Poly::from_i64s(&f25, &[2, 0, 1]);
        let r = roots(&f);
        assert_eq!(r, brute_roots(&f));
        assert_eq!(r.len(), 2);
    }
}
