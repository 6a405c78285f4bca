//! Exact arithmetic in finite fields, polynomials, factorization and
//! dense linear algebra.

mod embed;
mod factor;
mod field;
mod linalg;
mod poly;
mod prime;
mod residue;

pub use embed::Embedding;
pub use factor::{factor, find_irreducible, is_irreducible, roots, squarefree};
pub use field::{Fe, Field};
pub use linalg::{independent, Matrix};
pub use poly::Poly;
pub use prime::is_prime;
pub use residue::ResidueField;

use crate::error::{Error, Result};

/// A field element bundled with its field, for callers that want checked
/// mixed-field arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub field: Field,
    pub value: Fe,
}

impl FieldElement {
    pub fn new(field: &Field, value: Fe) -> FieldElement {
        FieldElement { field: field.clone(), value }
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.field.fmt_elem(&self.value))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let value = match op {
        ArithOp::Add => f.add(&a.value, &b.value),
        ArithOp::Sub => f.sub(&a.value, &b.value),
        ArithOp::Mul => f.mul(&a.value, &b.value),
        ArithOp::Div => f.div(&a.value, &b.value)?,
    };
    Ok(FieldElement { field: f.clone(), value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_arith() {
        let f5 = Field::prime(5).unwrap();
        let f7 = Field::prime(7).unwrap();
        let a = FieldElement::new(&f5, f5.from_i64(3));
        let one = FieldElement::new(&f5, f5.one());
        assert_eq!(field_arith(&one, &a, ArithOp::Div).unwrap().value, f5.from_i64(2));
        let b = FieldElement::new(&f7, f7.one());
        assert_eq!(field_arith(&a, &b, ArithOp::Add), Err(Error::FieldMismatch));
        let z = FieldElement::new(&f5, f5.zero());
        assert_eq!(field_arith(&a, &z, ArithOp::Div), Err(Error::DivisionByZero));
    }
}
