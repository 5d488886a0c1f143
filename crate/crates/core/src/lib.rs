//! Exact computations with antipodal sets in compact symmetric spaces.

pub mod bareiss;
pub mod catalog;
pub mod certificate;
pub mod config;
pub mod conjugacy;
pub mod elem2;
pub mod error;
pub mod group;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod pool;
pub mod report;
pub mod scalar;
pub mod search;
pub mod space;

pub use error::{Error, Result};
