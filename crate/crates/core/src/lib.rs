pub mod ce;
pub mod combination;
pub mod en_dual;
pub mod error;
pub mod framed;
pub mod graph_complex;
pub mod linalg;
pub mod ls_model;
pub mod pd_algebra;
pub mod rational;

pub use combination::Combination;
pub use error::Error;
pub use rational::Rational;
