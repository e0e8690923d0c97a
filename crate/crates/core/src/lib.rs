pub mod certificate;
pub mod complements;
pub mod error;
pub mod exact;
pub mod markov;
pub mod spectrum;
pub mod words;

pub use error::{Error, Result};
