//! Abstract syntax, parsing and printing for λ-terms and intersection types.

mod parse;
mod term;
mod types;

pub use parse::{parse_term, parse_type, parse_type_unchecked, ParseError};
pub use term::{fresh_var, Term};
pub use types::{Type, NU, OMEGA};
