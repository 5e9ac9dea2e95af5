//! Runtime side of facetweek: the append-only response store, CSV/JSON
//! export, the HTTP service with its reminder loop, and the command line.
//!
//! The pure model, scheduling and rendering code lives in `facetweek-core`.

pub mod cli;
pub mod config;
pub mod export;
pub mod forensic;
pub mod service;
pub mod store;

pub use facetweek_core as core;
pub use store::{Store, StoreError};
