//! Library surface of the CLI crate: the tabular output format and the
//! figure/table reproduction scenarios, shared with the integration tests.

pub mod output;
pub mod scenarios;
