//! Command implementations and the local HTTP API for `reflector`.

pub mod api;
pub mod commands;
