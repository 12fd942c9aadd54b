//! The guide's chapters as doctests; `cargo test -p ctsp-book` runs every
//! snippet in `book/src`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/instances.md")]
pub mod instances {}
#[doc = include_str!("../../../book/src/transformation.md")]
pub mod transformation {}
#[doc = include_str!("../../../book/src/local-search.md")]
pub mod local_search {}
#[doc = include_str!("../../../book/src/eax.md")]
pub mod eax {}
#[doc = include_str!("../../../book/src/exact.md")]
pub mod exact {}
#[doc = include_str!("../../../book/src/benchmarking.md")]
pub mod benchmarking {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
