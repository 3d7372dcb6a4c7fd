//! Fare systems for public transport networks: pricing walks, cheapest paths and
//! tickets, and bounded checks of the no-stopover and no-elongation properties.

pub mod cli;
pub mod error;
pub mod fares;
pub mod instance;
pub mod network;
pub mod routing;
pub mod verify;

pub use error::{Error, Result};
