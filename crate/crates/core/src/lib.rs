pub mod clopen;
pub mod element;
pub mod error;
pub mod grigorchuk;
pub mod patterns;
pub mod rational;
pub mod rewrite;
pub mod verify;
pub mod words;
