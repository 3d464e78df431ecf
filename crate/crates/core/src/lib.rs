//! Exact cutting-plane engine for bounded mixed-integer linear programs.

pub mod dd;
pub mod disjunction;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gmi;
pub mod lattice;
pub mod model;
pub mod oracle;
pub mod projection;
pub mod rational;
pub mod simplex;
pub mod solver;

pub use error::{Error, Result};
