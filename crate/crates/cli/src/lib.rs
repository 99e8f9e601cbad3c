//! Expression language, REPL and batch front end for the `surreal` crate.
//!
//! Values are written in the canonical `w^(e)*c + ...` notation, with game
//! forms in braces (`{0, 1 | }`), `i` for the imaginary unit and function
//! calls for the truncated operations (`root`, `exp`, `log`, `sin`, `cos`,
//! `e`, `polyroot`, `winding`, `nf`). Lines starting with `:` are commands.

pub mod error;
pub mod eval;
pub mod parse;
pub mod session;
pub mod value;

pub use error::{CliError, EvalError};
pub use eval::{eval, parse_zeta, Config, Format, Output};
pub use parse::{parse, parse_line};
pub use session::{run_batch, run_batch_file, BatchReport, Outcome, Session};
pub use value::Value;
