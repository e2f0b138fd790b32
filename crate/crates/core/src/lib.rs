//! Linear network error-correction codes over prime fields.
//!
//! The guide in `book/` walks through each module; its code blocks run as
//! doc-tests of this crate.

pub mod analysis;
pub mod cli;
pub mod codec;
pub mod construct;
pub mod galois;
pub mod generators;
pub mod kernels;
pub mod linalg;
pub mod netgraph;
pub mod patterns;
pub mod randomcode;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/networks.md")]
    mod networks {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/random.md")]
    mod random {}
    #[doc = include_str!("../../../book/src/codec.md")]
    mod codec {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
