//! Schlesinger transformations of the sixth Painlevé equation.
//!
//! Exact affine action on the exponents (`affine`, `word`, `group`, `audit`),
//! numeric push-forward of solution jets (`birational`), integration
//! (`integrate`), certification (`verify`) and JSON documents (`io`).
//! Each capability has a runnable program under `examples/`.

pub mod affine;
pub mod audit;
pub mod birational;
pub mod catalog;
pub mod cli;
pub mod dual;
pub mod error;
pub mod fd;
pub mod group;
pub mod homography;
pub mod integrate;
pub mod io;
pub mod pvi;
pub mod rational;
pub mod verify;
pub mod word;
