//! Braid and weave word representations, canonical reduction, inverses,
//! winding numbers, JSON interchange, and diagram emission.
//!
//! Words carry their object context so that downstream representation never
//! has to guess strand count or charges, and so that permuting words compose
//! only when their contexts actually line up.

mod json;
mod render;
mod weave;
mod word;

pub use json::BraidJson;
pub use render::{render, RenderFormat};
pub use weave::Weave;
pub use word::{BraidWord, Letter};
