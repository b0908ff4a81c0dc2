//! Script language: lexer, parser, evaluator, algebra files and built-in suites.

pub mod algebra_file;
pub mod ast;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod suite;

pub use eval::{run_script, Outcome, Report, Settings, Value};
pub use parser::{parse, parse_expr};
