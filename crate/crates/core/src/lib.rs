pub mod arith;
pub mod bernoulli;
pub mod characters;
pub mod error;
pub mod expansions;
pub mod harness;
pub mod lfunction;
pub mod oracle;
pub mod padic;

pub use error::{Error, Result};
