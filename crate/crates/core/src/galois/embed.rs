//! Embeddings between finite fields of the same characteristic.

use super::factor::roots;
use super::field::{Fe, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// The embedding `src -> dst` sending the generator of `src` to the
/// smallest root of its modulus in `dst`. Composing canonical embeddings
/// need not be canonical, so callers always embed from the base field they
/// started with.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Field,
    dst: Field,
    gen_image: Fe,
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Embedding> {
        if src.characteristic() != dst.characteristic() || dst.degree() % src.degree() != 0 {
            return Err(Error::FieldMismatch);
        }
        if src.is_prime_field() {
            return Ok(Embedding { src: src.clone(), dst: dst.clone(), gen_image: dst.zero() });
        }
        if src == dst {
            return Ok(Embedding { src: src.clone(), dst: dst.clone(), gen_image: dst.generator() });
        }
        let m: Vec<Fe> = src.modulus_coeffs().iter().map(|&c| dst.from_u64(c)).collect();
        let m = Poly::new(dst, m);
        let r = roots(&m);
        let gen_image = r.into_iter().next().ok_or(Error::FieldMismatch)?;
        Ok(Embedding { src: src.clone(), dst: dst.clone(), gen_image })
    }

    pub fn src(&self) -> &Field {
        &self.src
    }

    pub fn dst(&self) -> &Field {
        &self.dst
    }

    pub fn apply(&self, a: &Fe) -> Fe {
        let d = &self.dst;
        if self.src.is_prime_field() {
            return d.from_u64(a.coeffs()[0]);
        }
        let mut acc = d.zero();
        for &c in a.coeffs().iter().rev() {
            acc = d.add(&d.mul(&acc, &self.gen_image), &d.from_u64(c));
        }
        acc
    }

    pub fn apply_poly(&self, f: &Poly) -> Poly {
        f.map_coeffs(&self.dst, |c| self.apply(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f25_into_f625_is_a_homomorphism() {
        let k = Field::with_degree(5, 2).unwrap();
        let l = Field::with_degree(5, 4).unwrap();
        let e = Embedding::new(&k, &l).unwrap();
        for a in k.elements() {
            for b in k.elements().step_by(3) {
                assert_eq!(e.apply(&k.mul(&a, &b)), l.mul(&e.apply(&a), &e.apply(&b)));
                assert_eq!(e.apply(&k.add(&a, &b)), l.add(&e.apply(&a), &e.apply(&b)));
            }
        }
        assert!(Embedding::new(&k, &Field::with_degree(5, 3).unwrap()).is_err());
    }
}
