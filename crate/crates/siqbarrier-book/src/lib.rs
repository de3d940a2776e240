//! Test shim for the guide in `book/`: each chapter is attached as module
//! documentation so `cargo test --doc` compiles and runs every code snippet
//! in it. The book cannot drift from the library without failing the build.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/barriers.md")]
pub mod barriers {}

#[doc = include_str!("../../../book/src/shape-invariance.md")]
pub mod shape_invariance {}

#[doc = include_str!("../../../book/src/scattering.md")]
pub mod scattering {}

#[doc = include_str!("../../../book/src/special-functions.md")]
pub mod special_functions {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
