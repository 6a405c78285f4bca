//! Wedge valuations, spectral divisors, the fully-split test and the
//! splitting-type engine.

mod analysis;
mod fully_split;
mod report;
mod smith;
mod twist;
mod wedge;

pub use analysis::{kernel_dimension, splitting_type};
pub use fully_split::fully_split_test;
pub use report::*;
pub use smith::{reframe, smith_exponents};
pub use twist::{general_twist_spectral, GeneralTwist};
pub use wedge::{function_det, incidence_order, spectral_divisor, wedge_divisor, wedge_valuation};
