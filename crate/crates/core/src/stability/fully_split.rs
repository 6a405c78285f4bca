//! The fully-split test: count, top wedge, kernel dimensions and the
//! stacked relation matrix.

use super::analysis::{splitting_base_change, top_wedge};
use super::report::{FullySplitOutcome, SplitCondition};
use crate::bundles::{evaluate, SectionSystem};
use crate::error::{Error, Result};
use crate::galois::Matrix;

pub fn fully_split_test(ss: &SectionSystem) -> Result<FullySplitOutcome> {
    let r = ss.declared_rank();
    let delta = match top_wedge(ss)? {
        Ok(d) => d,
        Err(reason) => return Ok(FullySplitOutcome::NotSemistable(reason)),
    };
    let (bc, ssl) = splitting_base_change(ss, &delta);
    let delta_l = bc.divisor(&delta);
    let f = ssl.field().clone();
    let s = ssl.s();
    let mut relations = Vec::new();
    let mut points = Vec::new();
    let mut total = 0;
    let mut orders_ok = true;
    for (t, mult) in delta_l.terms() {
        let ev = evaluate(&ssl, t)?;
        let p_t: Vec<_> = ev.modulus.hstack(&ev.sections).nullspace().into_iter().map(|v| v[s..].to_vec()).collect();
        let d_t = p_t.len();
        total += d_t;
        if mult != d_t as i64 {
            orders_ok = false;
        }
        relations.extend(p_t);
        let q = t.to_point(ssl.curve()).ok_or(Error::BaseChangeRequired(t.degree() as u32))?;
        points.push((q, d_t));
    }
    if total != r {
        return Ok(FullySplitOutcome::NotFullySplit(SplitCondition::KernelCount));
    }
    if !orders_ok {
        return Ok(FullySplitOutcome::NotFullySplit(SplitCondition::WedgeOrder));
    }
    if r > 0 && f.is_zero(&Matrix::from_rows(&f, relations).det()) {
        return Ok(FullySplitOutcome::NotFullySplit(SplitCondition::Relations));
    }
    Ok(FullySplitOutcome::FullySplit { curve: ssl.curve().clone(), points })
}
