pub mod dideal;
pub mod diff;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod ringspec;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod svdp;
pub mod text;
pub mod traj;

pub use error::{Error, Result};
