//! Order theory and graph spectra for countable posets with finitely many
//! descending rays.

pub mod catalog;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod poset;
pub mod property;
pub mod ray;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use poset::FinitePoset;
pub use property::Property;
pub use ray::{RayPoset, RealizedElement};
