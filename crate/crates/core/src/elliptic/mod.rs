//! Elliptic curves, points, places, divisors and the marked group law.

mod base_change;
mod curve;
mod divisor;
mod marked;
mod place;

pub use base_change::BaseChange;
pub use curve::{Curve, Point};
pub use divisor::Divisor;
pub use marked::MarkedCurve;
pub use place::{places_over, rational_x, Place};
