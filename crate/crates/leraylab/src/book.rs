//! The guide's chapters double as doc-tests: every code block in the book
//! compiles and runs under `cargo test --doc`, so the narrative can never
//! drift from the API.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/weights.md")]
pub mod weights_chapter {}

#[doc = include_str!("../../../book/src/spectral.md")]
pub mod spectral_chapter {}

#[doc = include_str!("../../../book/src/solver2d.md")]
pub mod solver2d_chapter {}

#[doc = include_str!("../../../book/src/axisym.md")]
pub mod axisym_chapter {}

#[doc = include_str!("../../../book/src/gronwall.md")]
pub mod gronwall_chapter {}

#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments_chapter {}

#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats_chapter {}
