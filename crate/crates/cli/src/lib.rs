//! Command-line front end for the `winf-core` engine: an expression parser,
//! JSON wire formats, a content-hash result cache and the subcommands.

pub mod cache;
pub mod commands;
pub mod json;
pub mod sexpr;
