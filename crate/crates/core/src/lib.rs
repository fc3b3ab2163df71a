pub mod characters;
pub mod class_algebra;
pub mod error;
pub mod hurwitz;
pub mod multipoly;
pub mod par;
pub mod partitions;
pub mod polynomiality;
pub mod rational;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use par::Execution;
pub use partitions::Partition;
pub use rational::Rational;
