//! Balanced truncation with exact-error certification for SISO LTI systems.

pub mod arrowhead;
pub mod balance;
pub mod error;
pub mod gramian;
pub mod gridmodel;
pub mod hinfnorm;
pub mod lti;
pub mod numkernel;

pub use error::{Error, Result};
