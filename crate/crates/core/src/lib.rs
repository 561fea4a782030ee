//! Automorphism groups of power graphs of finite groups.

pub mod arith;
pub mod audit;
pub mod engine;
pub mod expr;
pub mod graph;
pub mod group;
pub mod men;
pub mod oracle;
