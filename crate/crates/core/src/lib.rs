pub mod algebra_file;
pub mod catalog;
pub mod curvature;
mod error;
pub mod golden;
pub mod liealg;
pub mod ratpoly;
pub mod reproduce;
pub mod soliton;

pub use error::{Error, Result};
