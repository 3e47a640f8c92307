//! The guide in `book/`, one module per chapter, so `cargo test` runs every
//! snippet.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}
#[doc = include_str!("../../../book/src/thue-morse.md")]
pub mod thue_morse {}
#[doc = include_str!("../../../book/src/complexity.md")]
pub mod complexity {}
#[doc = include_str!("../../../book/src/structure.md")]
pub mod structure {}
#[doc = include_str!("../../../book/src/continued-fractions.md")]
pub mod continued_fractions {}
#[doc = include_str!("../../../book/src/storage.md")]
pub mod storage {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
