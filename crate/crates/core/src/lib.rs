//! Numerical laboratory for dyadic entropy, projections and the distance,
//! dot-product and sum-product sets of self-similar Ahlfors-David regular
//! fractals.

pub mod cloud;
pub mod dimension;
pub mod error;
pub mod experiment;
pub mod grid_measure;
pub mod ifs;
pub mod maps;
pub mod verify;

pub use cloud::PointCloud;
pub use error::{Error, Result};
pub use grid_measure::{Dim, DyadicCube, GridMeasure, Pushforward, Rescale, RescaleMode};
pub use ifs::{AdRegularModel, IfsSystem};
