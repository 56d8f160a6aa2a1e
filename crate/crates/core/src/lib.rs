pub mod error;
pub mod exact;
pub mod export;
pub mod laguerre;
pub mod observability;
pub mod phase;
pub mod spectral;
pub mod uncertainty;
pub mod verify;

pub use error::{Error, Result};
