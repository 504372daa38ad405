//! Independent reference implementations shared by test targets.
#![allow(dead_code)]

pub mod lexical;
pub mod syntactic;
