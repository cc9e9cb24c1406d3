//! File format, catalog and command line front end for `vvmf-core`.

pub mod catalog;
pub mod cli;
pub mod repfile;

pub use catalog::{evaluate as evaluate_catalog, CatalogError};
pub use cli::{load, run};
pub use repfile::{Encoding, RepFile, RepFileError};
