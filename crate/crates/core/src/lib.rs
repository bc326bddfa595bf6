pub mod abelian;
pub mod error;
pub mod forms;
pub mod group;
pub mod hp;
pub mod intarith;
pub mod polya;
pub mod quadfield;
pub mod ramify;
pub mod sieve;
pub mod survey;
pub mod units;

pub use error::{Error, Result};
