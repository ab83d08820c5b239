//! Exact character table arithmetic, validation and completion.

pub mod checks;
pub mod cli;
pub mod cyclo;
pub mod degrees;
pub mod fixtures;
pub mod io;
pub mod solve;
pub mod table;
