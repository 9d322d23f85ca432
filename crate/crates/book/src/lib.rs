//! The guide's code listings, compiled as doctests so the book and the
//! library stay in step.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}
#[doc = include_str!("../../../book/src/cylinders.md")]
pub mod cylinders {}
#[doc = include_str!("../../../book/src/elements.md")]
pub mod elements {}
#[doc = include_str!("../../../book/src/rewriting.md")]
pub mod rewriting {}
#[doc = include_str!("../../../book/src/grigorchuk.md")]
pub mod grigorchuk {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
