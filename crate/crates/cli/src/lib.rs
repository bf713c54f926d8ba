//! Command-line front end for `qinstanton-core`: an expression language for
//! O(SU_q(2)), commands for the instanton idempotents, pairings and winding
//! degrees, and a result cache.

pub mod cache;
pub mod commands;
pub mod expr;
pub mod output;
