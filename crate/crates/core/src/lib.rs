//! Relation curves, pencil condition counts, the quartic cell atlas and
//! discriminant tests for spaces of polynomial knots.

pub mod cells;
pub mod conditions;
pub mod discriminant;
pub mod error;
pub mod par;
pub mod polyring;
pub mod scanner;
pub mod symcurve;

pub use error::{Error, Result};
pub use polyring::Poly;
