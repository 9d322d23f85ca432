//! Products of basic moves and their compilation into words over the four
//! generators `T`, `δ_[.b]`, `δ_[.d]`, `δ_[.acacac]`.

mod compile;
mod expr;
mod genword;
mod parse;

pub use compile::{compile_delta_basic, compile_expr, compile_tau_basic, MAX_COMPILE_LEVEL};
pub use expr::{eval_expr, MoveExpr};
pub use genword::{
    eval_word, exponent_sum_t, free_reduce, generator, GenLetter, GenWord, MAX_WORD_LEN,
};
pub use parse::parse_expr;
