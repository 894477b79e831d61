#![allow(dead_code)]

pub mod cli;
pub mod golden;
pub mod oracles;
pub mod quadrature;
