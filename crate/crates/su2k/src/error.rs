//! Crate-wide error type.
//!
//! Domain errors are deliberately specific: the CLI maps them to exit code 2
//! (usage) or 1 (verification failure), and tests assert on variants rather
//! than message strings.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library layer.
#[derive(Debug, Error)]
pub enum Error {
    /// Level outside the supported range.
    #[error("level k={k} is not supported: {reason}")]
    InvalidLevel { k: i64, reason: &'static str },

    /// Charge outside `0 ..= k` (in twice-integer units).
    #[error("charge twice_s={twice} is invalid at level k={k} (need 0 ≤ twice_s ≤ k)")]
    InvalidCharge { twice: i64, k: u32 },

    /// A fusion channel that the fusion rule does not admit.
    #[error("channel twice_s={twice_channel} is not an admissible fusion outcome of twice_s={twice_a} and twice_s={twice_b}")]
    InadmissibleChannel {
        twice_a: u32,
        twice_b: u32,
        twice_channel: u32,
    },

    /// Generator or object index outside the word's context.
    #[error("index {index} out of range: {what}")]
    IndexOutOfRange { index: usize, what: String },

    /// An F-move block with no admissible intermediate on one side.
    #[error("empty F block for charges (a,b,c;d) = ({a},{b},{c};{d}) in twice-integer units")]
    EmptyBlock { a: u32, b: u32, c: u32, d: u32 },

    /// Two operands defined over different bases or object lists.
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    /// Vector/matrix dimension disagreement.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A request the gate-synthesis layer refuses by design (with the reason).
    #[error("refused: {0}")]
    Refused(String),

    /// An internal invariant failed; indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    /// Malformed braid/report/net file.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying serialization failure.
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
