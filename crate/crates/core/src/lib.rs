//! Arithmetic progressions in linear recurrence sequences.

pub mod ap_engine;
pub mod catalog;
pub mod error;
pub mod exactnum;
pub mod poly;
pub mod recurrence;
pub mod toolkit;
pub mod trinomial;

pub use error::{Error, Result};
pub use exactnum::{QuadField, QuadraticElement, Rational};
pub use poly::Polynomial;
