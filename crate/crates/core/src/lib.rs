pub mod caps;
pub mod error;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod qcat;
pub mod qchu;
pub mod qdist;
pub mod quantaloid;

pub use error::{Error, Result};
