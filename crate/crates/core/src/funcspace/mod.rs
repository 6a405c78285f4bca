//! The function field of the curve: functions, valuations, principal
//! divisors, Riemann-Roch spaces and local expansions.

mod function;
mod local;
mod ratfn;
mod riemann_roch;
mod series;
mod valuation;

pub use function::{linear_combination, CommonForm, CurveFunction};
pub use local::{expand_local, LocalChart, LocalExpansion, Uniformizer};
pub use ratfn::RatFn;
pub use riemann_roch::{rr_basis, RRBasis};
pub use series::{LaurentSeries, EXACT};
pub use valuation::{principal_divisor, valuation};
