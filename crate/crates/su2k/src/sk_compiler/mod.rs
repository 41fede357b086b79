//! Recursive precision refinement on top of the base gate search.
//!
//! The base searches reach a fixed accuracy at a fixed word length; this
//! module amplifies that accuracy systematically. An [`EpsilonNet`] stores
//! every weave word up to a depth chosen so the words cover SU(2) within a
//! base accuracy ε₀ (validated by Haar sampling). [`refine`] then runs the
//! Solovay-Kitaev recursion: approximate the target from the net, write the
//! residual as a balanced group commutator ([`gc_decompose`]), recursively
//! refine the two commutator factors, and reassemble. Each level multiplies
//! word length by at most 5 while shrinking the error roughly like
//! ε → c·ε^{3/2}, so any accuracy is reachable at polylogarithmic length.
//!
//! Everything is deterministic: net enumeration order, nearest-entry
//! tie-breaking, the sampling stream (seeded from the search config), and
//! the axis conventions of the commutator construction.

mod commutator;
mod net;
mod refine;

pub use commutator::gc_decompose;
pub use net::{build_net, EpsilonNet};
pub use refine::refine;
