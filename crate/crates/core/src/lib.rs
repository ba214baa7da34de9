//! Intersection homology, image homology and kernel cohomology of finite
//! stratified simplicial pseudomanifolds, computed exactly over the rationals.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod homology;
pub mod imcore;
pub mod simplicial;
pub mod stratify;

pub use error::{Error, Result};
