pub mod claims;
pub mod config;
