//! Spectral divisors through a twist by several points.

use super::wedge::wedge_divisor;
use crate::bundles::{evaluate, sections_direct_sum, DirectSumPresentation};
use crate::elliptic::{Divisor, Place};
use crate::error::{Error, Result};
use crate::galois::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralTwist {
    pub spectral_divisor: Divisor,
    pub dim_g: usize,
    /// Every basis section of `G` vanishes on a divisor of degree `h`.
    pub canonical_basis: bool,
}

/// `(s_1 ^ ... ^ s_r) - r (p_2 + ... + p_h)` for a basis of the sections of
/// `V (x) O(D)` vanishing at `p_2, ..., p_h`, where `D = p_1 + ... + p_h`
/// is a sum of distinct rational points and `p_1` is the marked point.
pub fn general_twist_spectral(p: &DirectSumPresentation, d: &Divisor) -> Result<GeneralTwist> {
    let curve = p.mc.curve();
    let mark = Place::from_point(curve, p.mc.mark());
    if d.terms().any(|(t, n)| n != 1 || !t.is_rational()) || d.mult(&mark) != 1 {
        return Err(Error::InvalidPresentation(
            "twist must be a sum of distinct rational points including the marked point".into(),
        ));
    }
    let h = d.degree() as usize;
    let r = p.rank();
    let ss = sections_direct_sum(p, d)?;
    if ss.count() != r * h {
        return Err(Error::DimensionMismatch { expected: r * h, found: ss.count() });
    }
    let f = ss.field().clone();
    let others: Vec<&Place> = d.support().filter(|t| **t != mark).collect();
    let mut conds = Matrix::zeros(&f, 0, ss.count());
    for t in &others {
        conds = conds.vstack(&evaluate(&ss, t)?.sections);
    }
    let g = conds.nullspace();
    if g.len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: g.len() });
    }
    let gs = ss.with_sections(g.iter().map(|c| ss.combination(c)).collect());
    let all: Vec<usize> = (0..r).collect();
    let wedge = wedge_divisor(&gs, &all)?;
    let mut rest = Divisor::zero();
    for t in others {
        rest.add_term(t.clone(), 1);
    }
    let mut canonical = true;
    for i in 0..r {
        if wedge_divisor(&gs, &[i])?.degree() != h as i64 {
            canonical = false;
        }
    }
    Ok(GeneralTwist { spectral_divisor: wedge.sub(&rest.scale(r as i64)), dim_g: g.len(), canonical_basis: canonical })
}
