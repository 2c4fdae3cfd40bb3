//! Translation of logic programs in a subset of the gringo input language
//! into first-order completions, with a brute-force stable-model oracle for
//! checking the result.

pub mod cli;
pub mod completion;
pub mod formula;
pub mod hiding;
pub mod oracle;
pub mod pipeline;
pub mod program;
pub mod simplify;
pub mod translation;
