//! Command-line front end for `coreconn`.

pub mod app;
pub mod input;
pub mod pairs;
pub mod svg;
