//! Exact and numeric Euler characteristics of graded Lie algebra cohomology.

pub mod cec;
pub mod characteristic;
pub mod cli;
pub mod error;
pub mod group;
pub mod io;
pub mod limit;
pub mod numeric;
pub mod oracle;
pub mod ring;
pub mod series;
pub mod summation;

pub use error::{Error, Result};
pub use group::{CommutationFactor, FinAbGroup, GroupElement, GroupHom, ParityMap};
pub use ring::{GroupRingElem, Rational};
pub use series::{ClosedFormSeries, NumericSeries, TruncatedSeries};
