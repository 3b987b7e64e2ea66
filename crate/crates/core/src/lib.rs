//! Hochschild-Mitchell (co)homology of finite k-linear categories.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: exact sparse linear algebra, complexes, connecting maps;
//! - [`category`]: finite k-linear categories and their constructions;
//! - [`module`]: one-sided modules and bimodules, Hom, tensor products;
//! - [`hochschild`]: the nerve, Hochschild-Mitchell complexes, Ext via bar resolutions;
//! - [`gluing`]: one-point extensions, glued categories and their long exact sequences;
//! - [`morita`]: contraction along a partition and its Morita witnesses.

pub mod category;
pub mod gluing;
pub mod hochschild;
pub mod linalg;
pub mod module;
pub mod morita;
