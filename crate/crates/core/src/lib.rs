//! Symbol combinatorics for unipotent characters of finite classical groups
//! and the theta-correspondence bookkeeping built on top of it.

pub mod character;
pub mod cuspidal;
pub mod error;
pub mod partition;
pub mod symbol;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{BetaSet, Bipartition, Partition};
pub use symbol::{SeriesFamily, SeriesTag, Sign, Symbol};
