pub mod algebra;
pub mod cli;
pub mod duality;
pub mod effect;
pub mod error;
pub mod free;
pub mod laws;
pub mod linalg;
pub mod operators;
pub mod sampling;
pub mod wp;
