pub mod clifford;
pub mod enveloping;
pub mod error;
pub mod exterior;
pub mod hc_map;
pub mod lie_core;
pub mod linalg;
pub mod principal;
pub mod rational;
pub mod symmetric;
pub mod transgression;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;
