//! Compiled companion to the guide in `book/`.
//!
//! Each chapter of the book is included verbatim as the documentation of an
//! empty module below, which makes every Rust snippet in the book a
//! doc-test of this crate.  `cargo test -p rithermo-book --doc` (run as part
//! of `cargo test --workspace`) therefore fails whenever the book drifts out
//! of sync with the library's API or its numbers.
//!
//! The crate exports nothing; its only job is to be tested.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/getting-started.md")]
pub mod getting_started {}

#[doc = include_str!("../../../book/src/model.md")]
pub mod model {}

#[doc = include_str!("../../../book/src/alternating.md")]
pub mod alternating {}

#[doc = include_str!("../../../book/src/thermodynamics.md")]
pub mod thermodynamics {}

#[doc = include_str!("../../../book/src/simultaneous.md")]
pub mod simultaneous {}

#[doc = include_str!("../../../book/src/engine.md")]
pub mod engine {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
