pub mod error;
pub mod exact;
pub mod gkz;
pub mod hodge;
pub mod hyper;
pub mod rescale;
pub mod ore;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rat;
