pub mod arith;
pub mod catalog;
pub mod cli;
pub mod generate;
pub mod kernel;
pub mod model;
pub mod oracle;
pub mod syntax;
pub mod translate;
