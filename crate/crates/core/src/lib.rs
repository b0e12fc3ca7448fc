pub mod symbolic;
pub mod boost;
pub mod solver;
pub mod lab;
pub mod cli;
