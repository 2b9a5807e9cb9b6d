pub mod arith;
pub mod certify;
pub mod data;
pub mod error;
pub mod factor;
pub mod gl2;
pub mod modforms;
pub mod padic;
pub mod resolvent;

pub use error::{Error, Result};
