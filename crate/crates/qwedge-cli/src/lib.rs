//! Library surface of the command-line front end: the text grammar
//! (parsers and canonical renderers) that the binary and its integration
//! tests share.

pub mod expr;
