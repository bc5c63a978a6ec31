//! IO, file formats, input families, and experiment harness around
//! `thickem-core`. The `thickem` binary in this crate exposes everything as
//! subcommands.

pub mod families;
pub mod formats;
pub mod output;
pub mod study;
