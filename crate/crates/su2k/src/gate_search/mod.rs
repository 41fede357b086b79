//! Brute-force and bidirectional search for braid words approximating
//! single-qubit and effective two-qubit targets.
//!
//! Targets are sector unitaries over a fixed total charge; the search
//! enumerates weave words (one mobile strand) or unconstrained braid words
//! on the target's context, scores each candidate against the target in the
//! configured metric, and re-verifies the winner through the simulator
//! before reporting it.

mod bidir;
mod closure;
mod distance;
mod exhaustive;
mod s3hash;
mod space;
mod su2;

use serde::{Deserialize, Serialize};

use crate::anyon_model::{Charge, ObjectList, Theory};
use crate::braid_core::BraidWord;
use crate::error::{Error, Result};
use crate::simulator::{represent, sector_blocks, Grouping, SectorUnitary};

pub use bidir::bidirectional;
pub use closure::{closure_probe, ClosureOutcome};
pub use distance::{
    distance, hermitian_eigen, min_phase_column_distance, min_phase_distance, spectral_norm,
    unitary_eigenphases,
};
pub use exhaustive::exhaustive;
pub use space::{Alphabet, Move, SearchSpace};
pub use su2::{Quat, U2};

pub(crate) use exhaustive::{describe, uniform_move_cost};
pub(crate) use s3hash::{CellTable, PqHasher, MIN_CELL};

/// How candidate actions are scored against the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    /// Spectral distance minimized over a global phase (gates defined up to
    /// phase). The default.
    PhaseQuotient,
    /// Plain spectral distance; the global phase must match too. Needed when
    /// a two-dimensional block sits inside a larger sector whose other
    /// blocks pin the phase.
    Rigid,
}

/// Search strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Depth-layered exhaustive enumeration.
    Exhaustive,
    /// Meet-in-the-middle with geometric hashing on S³.
    Bidirectional,
    /// Recursive commutator refinement over an ε-net of base searches.
    SolovayKitaev,
}

/// Deterministic tie-breaking rule among equal-distance candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TieBreak {
    /// Prefer the lexicographically smallest word (shorter words first,
    /// then letter order).
    Lexicographic,
}

/// Full, serializable description of one search. Echoed into reports so any
/// result can be reproduced bit-for-bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Cost ceiling in physical interchanges (a composite crossing counts
    /// `crossing_cost`).
    pub max_length: u32,
    /// Generator set: single interchanges or full twists.
    pub alphabet: Alphabet,
    /// Weave-only constraint: move one mobile strand, fix the rest. When
    /// `false` the search braids every strand (uniform contexts only).
    pub weave_only: bool,
    /// Index of the mobile strand in the target's context (weaves only).
    pub mobile: usize,
    /// Inclusive window of positions the mobile may visit; `None` = all.
    pub window: Option<(usize, usize)>,
    /// Physical interchanges represented by one crossing (2 when the mobile
    /// stands for a fused pair).
    pub crossing_cost: u32,
    /// Restrict to words whose net mobile winding is zero.
    pub winding_zero: bool,
    /// Require candidates to stay block-diagonal in this grouping label on
    /// the full sector: improvements whose off-block norm exceeds the
    /// current best distance are rejected.
    pub diagonal_in_label: Option<Grouping>,
    /// Scoring metric.
    pub metric: Metric,
    /// Search strategy.
    pub method: Method,
    /// S³ cell size for the bidirectional hash grid.
    pub hash_cell: f64,
    /// Budget on candidates examined (words scored, plus pairs tested
    /// exactly in bidirectional mode).
    pub budget: u64,
    /// Tie-breaking rule.
    pub tie_break: TieBreak,
    /// Seed for any derived sampling (net validation, probes). The searches
    /// themselves are deterministic and do not consume randomness.
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_length: 16,
            alphabet: Alphabet::Twist,
            weave_only: true,
            mobile: 0,
            window: None,
            crossing_cost: 1,
            winding_zero: false,
            diagonal_in_label: None,
            metric: Metric::PhaseQuotient,
            method: Method::Exhaustive,
            hash_cell: 0.05,
            budget: 100_000_000,
            tie_break: TieBreak::Lexicographic,
            seed: 0x5355_324b,
        }
    }
}

impl SearchConfig {
    /// Checks the structural invariants every search relies on.
    pub fn validate(&self) -> Result<()> {
        if self.max_length == 0 {
            return Err(Error::Refused("max_length must be at least 1".into()));
        }
        if !(self.hash_cell > 0.0) {
            return Err(Error::Refused("hash_cell must be positive".into()));
        }
        if self.budget == 0 {
            return Err(Error::Refused("budget must be at least 1".into()));
        }
        if self.crossing_cost == 0 {
            return Err(Error::Refused("crossing_cost must be at least 1".into()));
        }
        Ok(())
    }
}

/// Method-level diagnostics attached to a [`CompiledGate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    /// Strategy that produced the result.
    pub method: Method,
    /// Metric the distance refers to.
    pub metric: Metric,
    /// The budget ran out before the configured space was covered; the
    /// result is best-so-far.
    pub budget_limited: bool,
    /// Words enumerated on the left half (bidirectional) or in total.
    pub left_count: u64,
    /// Words enumerated on the right half (bidirectional only).
    pub right_count: u64,
    /// Candidate pairs tested exactly (bidirectional only).
    pub pairs_tested: u64,
    /// Wall-clock search time.
    pub wall_ms: u64,
    /// Non-fatal degradations (e.g. a hash cell too coarse to winnow).
    pub warning: Option<String>,
}

/// The result of a search: the best word found, with verification metadata.
#[derive(Debug, Clone)]
pub struct CompiledGate {
    /// The winning word, on the target's context.
    pub word: BraidWord,
    /// Human-readable description of the target.
    pub target: String,
    /// Distance between the word's sector action and the target, in
    /// `method.metric`, recomputed through the simulator.
    pub achieved_distance: f64,
    /// Off-block Frobenius norm under the configured grouping (0 when no
    /// grouping constraint was active).
    pub leakage: f64,
    /// Candidates examined before settling on this word.
    pub candidates_examined: u64,
    /// Strategy diagnostics.
    pub method: MethodReport,
}

/// Validated search sector: the target's context, its single total charge,
/// and the target's 2×2 action as a quaternion-plus-phase.
pub(crate) struct SectorTarget {
    pub objects: ObjectList,
    pub total: Charge,
    pub u2: U2,
}

/// Checks that `target` is an endomorphism of a single-total, two-dimensional
/// sector and extracts the search ingredients.
pub(crate) fn sector_target(target: &SectorUnitary) -> Result<SectorTarget> {
    if target.domain_objects() != target.codomain_objects() {
        return Err(Error::BasisMismatch(
            "search target must be an endomorphism: domain and codomain contexts differ".into(),
        ));
    }
    let totals: Vec<Charge> = target.domain().iter().map(|p| p.total()).collect();
    let Some((&first, rest)) = totals.split_first() else {
        return Err(Error::BasisMismatch(
            "search target has an empty basis".into(),
        ));
    };
    if rest.iter().any(|&t| t != first) {
        return Err(Error::BasisMismatch(
            "search target must live in a single total-charge sector".into(),
        ));
    }
    if target.domain() != target.codomain() {
        return Err(Error::BasisMismatch(
            "search target must use one basis for rows and columns".into(),
        ));
    }
    let u2 = U2::from_matrix(target.matrix())?;
    Ok(SectorTarget {
        objects: target.domain_objects().clone(),
        total: first,
        u2,
    })
}

/// Builds the search space a config describes over the target's sector.
pub(crate) fn build_space(
    theory: &Theory,
    sector: &SectorTarget,
    cfg: &SearchConfig,
) -> Result<SearchSpace> {
    if cfg.weave_only {
        SearchSpace::weave(
            theory,
            sector.objects.clone(),
            cfg.mobile,
            sector.total,
            cfg.alphabet,
            cfg.crossing_cost,
            cfg.window,
        )
    } else {
        SearchSpace::braid(
            theory,
            sector.objects.clone(),
            sector.total,
            cfg.alphabet,
            cfg.crossing_cost,
        )
    }
}

/// Scores `u` against `t` in the configured metric.
#[inline]
pub(crate) fn score(metric: Metric, u: U2, t: U2) -> f64 {
    match metric {
        Metric::PhaseQuotient => u.phase_quotient_distance(t),
        Metric::Rigid => u.rigid_distance(t),
    }
}

/// Whether a search-internal distance and its from-scratch recomputation
/// agree up to floating-point noise.
///
/// Both metrics behave like a chordal distance near zero: the value is a
/// square root of (or an angle recovered from) quantities the two code
/// paths compute to ~1e-15 agreement, so the *distance* difference blows
/// up as 1/d while `|a−b|·(a+b) ≈ |a²−b²|` stays at the noise floor. The
/// check therefore compares on the squared scale, which catches any real
/// assembly defect (those show up at the hash-cell scale or larger) and
/// never trips on rounding.
pub(crate) fn distances_agree(a: f64, b: f64) -> bool {
    (a - b).abs() * (a + b) <= 2.0 * crate::tol::REVERIFY
}

/// Re-verifies a winning move sequence through the simulator, enforces the
/// reverification agreement invariant, applies the optional
/// block-diagonality grouping to produce the reported leakage, and
/// assembles the final [`CompiledGate`]. The *reported* distance is always
/// the simulator recomputation, never the search-internal value.
#[allow(clippy::too_many_arguments)]
pub(crate) fn finish(
    theory: &Theory,
    space: &SearchSpace,
    sector: &SectorTarget,
    cfg: &SearchConfig,
    best_moves: &[u8],
    internal_distance: f64,
    target_name: &str,
    candidates: u64,
    report: MethodReport,
) -> Result<CompiledGate> {
    let word = space.word_from_moves(best_moves)?;
    let verified = represent(theory, &word, Some(sector.total))?;
    let achieved = score(cfg.metric, U2::from_matrix(verified.matrix())?, sector.u2);
    if !distances_agree(achieved, internal_distance) {
        return Err(Error::Internal(format!(
            "search distance {internal_distance} disagrees with simulator recomputation \
             {achieved} beyond rounding"
        )));
    }
    let leakage = match cfg.diagonal_in_label {
        None => 0.0,
        Some(grouping) => {
            let full = represent(theory, &word, None)?;
            let (_, off) = sector_blocks(theory, &full, grouping)?;
            off
        }
    };
    Ok(CompiledGate {
        word,
        target: target_name.to_string(),
        achieved_distance: achieved,
        leakage,
        candidates_examined: candidates,
        method: report,
    })
}
