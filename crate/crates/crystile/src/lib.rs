//! File formats, reference data and the command-line front end for
//! [`crystile_core`].

pub mod cli;
pub mod dot;
pub mod golden;
pub mod image;
pub mod json;
pub mod sweep;
pub mod verify;
