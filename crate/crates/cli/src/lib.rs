//! Command-line tools and the HTTP game service for `slowcolor`.

pub mod commands;
pub mod service;
pub mod session;
