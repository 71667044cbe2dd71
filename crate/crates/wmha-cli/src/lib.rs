//! IO companion for `wmha-core`: the line-oriented groupoid/action/algebra
//! file formats and the JSON report documents emitted by the CLI.

pub mod formats;
pub mod report;
