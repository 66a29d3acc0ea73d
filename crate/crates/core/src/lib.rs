//! Exact computations with subgroups of GL2(Z/nZ), 2- and 3-torsion of
//! elliptic curves over Q, and cyclicity densities.

pub mod catalog;
pub mod curves;
pub mod density;
pub mod error;
pub mod funcfield;
pub mod groups;
pub mod modring;
pub mod par;
pub mod report;

pub use error::{Error, Result};
pub use par::Exec;
