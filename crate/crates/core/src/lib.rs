// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod laplace;
pub mod law;
pub mod sim;
pub mod limit;
pub mod special;
pub mod telegraph;

pub use error::{Error, Result};
