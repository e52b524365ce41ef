//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

pub mod chi;
pub mod fixtures;
pub mod graph;
pub mod probreview;
