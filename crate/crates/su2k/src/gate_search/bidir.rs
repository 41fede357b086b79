//! Meet-in-the-middle search with geometric hashing.
//!
//! A word `w` of at most `L` interchanges splits as `w = w_L · w_R` with
//! both halves at most ⌈L/2⌉ moves. Enumerating left halves `w_L` and
//! *inverted* right halves `w_R' = w_R⁻¹` — both forward from the home
//! position — turns the approximation `ρ(w) ≈ T` into the matching problem
//! `ρ(w_L) ≈ ρ(w_R')·T`, because `ρ(w) = ρ(w_R')†·ρ(w_L)`. The left side
//! is stored in an S³ cell grid; each right-side word probes the cells
//! around its match point `ρ(w_R')·T`, and colliding pairs are tested
//! exactly.
//!
//! Both metrics hash soundly: the phase-quotient and rigid distances are
//! bi-invariant, so the distance between the composite and the target
//! equals the distance between a stored left point and the probe point —
//! the cell grid's recall guarantee transfers to composite words directly.
//!
//! Halves meet at any mobile position: the meeting position (and, under a
//! winding constraint, the half winding) is packed into the hash key's
//! high bits, so only compatible halves ever collide.
//!
//! Budgeting is deterministic: side depths are planned from exact per-layer
//! node counts (a tiny DP over (position, forbidden-move) states), and the
//! pair-test allowance is divided evenly over right-side partitions, which
//! are searched independently and merged by (distance, lexicographic word)
//! — the same result at any worker count.

use std::time::Instant;

use rayon::prelude::*;

use crate::anyon_model::{Level, Theory};
use crate::error::{Error, Result};
use crate::simulator::SectorUnitary;

use super::exhaustive::{describe, uniform_move_cost, EXACT};
use super::s3hash::{CellTable, PqHasher, RigidHasher, MIN_CELL};
use super::space::SearchSpace;
use super::su2::{Quat, U2};
use super::{
    build_space, finish, score, sector_target, CompiledGate, Method, MethodReport, Metric,
    SearchConfig,
};

/// Fraction of the budget each stored/streamed side may consume; the rest
/// is reserved for exact pair tests.
const SIDE_BUDGET_DIV: u64 = 4;

/// Slack added to the best-so-far threshold when prefiltering candidates in
/// f32; generously covers the ~1e-5 rounding of stored coordinates.
const F32_SLACK: f64 = 1e-4;

/// One stored left-half word: its action (unit quaternion, plus phase for
/// the rigid metric) and the move ids packed into a word.
#[derive(Clone, Copy)]
struct HalfEntry {
    q: [f32; 4],
    gamma: f32,
    packed: u64,
    len: u8,
}

/// Meet-in-the-middle approximation of `target` within `cfg.max_length`
/// physical interchanges.
///
/// Recall is governed by `cfg.hash_cell`: any split pair whose composite
/// lies within one cell pitch of the target is guaranteed to collide and
/// be tested exactly, so the result is optimal among words of splittable
/// length whenever the optimum is better than the pitch. Pairs farther out
/// than the pitch may go untested; the empty word is always seeded as the
/// baseline candidate, so the search never returns worse than identity.
///
/// `candidates_examined` counts enumerated half-words plus exactly tested
/// pairs; the f32 cell-collision winnowing in between is not a candidate
/// evaluation. If the planned sides or the pair allowance hit the budget,
/// the result is flagged `budget_limited`.
pub fn bidirectional(
    target: &SectorUnitary,
    cfg: &SearchConfig,
    level: Level,
) -> Result<CompiledGate> {
    cfg.validate()?;
    let theory = Theory::new(level);
    let sector = sector_target(target)?;
    let space = build_space(&theory, &sector, cfg)?;
    if space.moves_at(space.mobile_home()).is_empty() {
        return Err(Error::Refused(
            "the move alphabet is empty at the mobile's home position".into(),
        ));
    }
    let start = Instant::now();
    let name = describe(&sector);

    // Identity targets: the empty word is exact; skip the halves entirely.
    if score(cfg.metric, U2::IDENTITY, sector.u2) <= EXACT {
        let report = MethodReport {
            method: Method::Bidirectional,
            metric: cfg.metric,
            budget_limited: false,
            left_count: 0,
            right_count: 0,
            pairs_tested: 0,
            wall_ms: start.elapsed().as_millis() as u64,
            warning: None,
        };
        return finish(&theory, &space, &sector, cfg, &[], 0.0, &name, 0, report);
    }

    let mut warning = None;
    if cfg.hash_cell > 0.3 {
        warning = Some(format!(
            "hash cell {} is so coarse that most points share cells; pair testing degrades \
             toward exhaustive",
            cfg.hash_cell
        ));
    }

    let move_cost = uniform_move_cost(&space)?;
    let total_moves = cfg.max_length / move_cost;
    let left_cap = total_moves.div_ceil(2);
    let right_cap = total_moves - left_cap;

    // Plan side depths against the budget using exact layer counts.
    let side_budget = (cfg.budget / SIDE_BUDGET_DIV).max(1);
    let cumulative = cumulative_node_counts(&space, left_cap);
    let depth_within = |cap: u32| -> u32 {
        let mut d = 0;
        for depth in 0..=cap {
            if cumulative[depth as usize] <= side_budget {
                d = depth;
            } else {
                break;
            }
        }
        d
    };
    let left_depth = depth_within(left_cap);
    let right_depth = depth_within(right_cap);
    let mut budget_limited = left_depth < left_cap || right_depth < right_cap;

    // Packed-word capacity.
    let max_moves = (0..space.positions())
        .map(|p| space.moves_at(p).len())
        .max()
        .unwrap_or(0);
    let bits = (usize::BITS - (max_moves.max(2) - 1).leading_zeros()).max(1);
    let pack_cap = 64 / bits;
    if left_depth > pack_cap || right_depth > pack_cap {
        return Err(Error::Refused(format!(
            "side depth {} exceeds the packed-word capacity of {pack_cap} moves",
            left_depth.max(right_depth)
        )));
    }

    let pq_hasher = PqHasher::new(cfg.hash_cell.max(MIN_CELL))?;
    let rigid_hasher = RigidHasher::new(cfg.hash_cell.max(MIN_CELL))?;

    // ---- Left side: enumerate, store, and index every half-word. ----
    let expected = cumulative[left_depth as usize] as usize;
    let mut entries: Vec<HalfEntry> = Vec::with_capacity(expected);
    let mut cells: Vec<(u64, u32)> = Vec::with_capacity(expected * 2);
    space.enumerate(left_depth * move_cost, &mut |moves, u, pos, wind, _cost| {
        let idx = entries.len() as u32;
        entries.push(HalfEntry {
            q: [u.q.w as f32, u.q.x as f32, u.q.y as f32, u.q.z as f32],
            gamma: u.gamma as f32,
            packed: pack(moves, bits),
            len: moves.len() as u8,
        });
        let meta = meta_bits(pos, wind, cfg.winding_zero);
        match cfg.metric {
            Metric::PhaseQuotient => {
                for key in pq_hasher.insert_keys(&u.q) {
                    cells.push((key | meta, idx));
                }
            }
            Metric::Rigid => {
                for key in rigid_hasher.insert_keys(&u) {
                    cells.push((key | meta, idx));
                }
            }
        }
        true
    });
    let left_count = entries.len() as u64;
    let table = CellTable::build(cells);

    // ---- Right side: stream, probe, and test collisions exactly. ----
    let remaining = cfg
        .budget
        .saturating_sub(left_count + cumulative[right_depth as usize]);
    let mut partitions: Vec<Option<u8>> = vec![None];
    for id in 0..space.moves_at(space.mobile_home()).len() as u8 {
        partitions.push(Some(id));
    }
    let pair_share = (remaining / partitions.len() as u64).max(1);

    let scan = |first: Option<u8>| -> Result<Partial> {
        let mut part = Partial::default();
        let mut probes: Vec<u64> = Vec::with_capacity(243);
        let mut ids: Vec<u8> = Vec::with_capacity(pack_cap as usize);
        let mut visit = |moves: &[u8], u: U2, pos: usize, wind: i64, _cost: u32| -> bool {
            part.nodes += 1;
            let u_match = u.mul(sector.u2);
            let meta = meta_bits(pos, wind, cfg.winding_zero);
            match cfg.metric {
                Metric::PhaseQuotient => pq_hasher.probe_keys(&u_match.q, &mut probes),
                Metric::Rigid => rigid_hasher.probe_keys(&u_match, &mut probes),
            }
            let best_d = part.best.as_ref().map_or(f64::INFINITY, |b| b.distance);
            for &probe in &probes {
                for &idx in table.lookup(probe | meta) {
                    let entry = &entries[idx as usize];
                    if u32::from(entry.len) + moves.len() as u32 > total_moves {
                        continue;
                    }
                    let coarse = prefilter(entry, &u_match, cfg.metric);
                    if coarse > best_d + F32_SLACK {
                        continue;
                    }
                    if part.pairs >= pair_share {
                        part.limited = true;
                        return false;
                    }
                    part.pairs += 1;
                    unpack(entry.packed, entry.len, bits, &mut ids);
                    let Ok(u_left) = space.action_of(&ids) else {
                        continue;
                    };
                    let d = score(cfg.metric, u.inverse().mul(u_left), sector.u2);
                    if part.best.as_ref().is_some_and(|b| d > b.distance) {
                        continue;
                    }
                    let combined = stitch(&space, &ids, moves);
                    let better = match &part.best {
                        None => true,
                        Some(b) => d < b.distance || (d == b.distance && combined < b.combined),
                    };
                    if better {
                        part.best = Some(BestPair {
                            distance: d,
                            combined,
                        });
                        if d <= EXACT {
                            return false;
                        }
                    }
                }
            }
            true
        };
        match first {
            None => {
                visit(&[], U2::IDENTITY, space.mobile_home(), 0, 0);
            }
            Some(id) => {
                if (id as usize) < space.moves_at(space.mobile_home()).len()
                    && right_depth >= 1
                {
                    space.enumerate_prefix(&[id], right_depth * move_cost, &mut visit)?;
                }
            }
        }
        Ok(part)
    };

    let partials: Vec<Result<Partial>> = partitions.par_iter().map(|&p| scan(p)).collect();
    // The empty word is always a legal candidate (winding zero, closes at
    // home); seeding it keeps the result meaningful when no pair of halves
    // lands within hash range of the target.
    let mut merged = Partial {
        best: Some(BestPair {
            distance: score(cfg.metric, U2::IDENTITY, sector.u2),
            combined: Vec::new(),
        }),
        ..Partial::default()
    };
    for partial in partials {
        merged.absorb(partial?);
    }
    budget_limited |= merged.limited;

    let best = merged
        .best
        .ok_or_else(|| Error::Internal("bidirectional search tested no pair".into()))?;

    let report = MethodReport {
        method: Method::Bidirectional,
        metric: cfg.metric,
        budget_limited,
        left_count,
        right_count: merged.nodes,
        pairs_tested: merged.pairs,
        wall_ms: start.elapsed().as_millis() as u64,
        warning,
    };
    let candidates = left_count + merged.nodes + merged.pairs;
    finish(
        &theory,
        &space,
        &sector,
        cfg,
        &best.combined,
        best.distance,
        &name,
        candidates,
        report,
    )
}

/// Stitches a matched pair into one move-id word: the left half as walked,
/// then the right half's inverse — each right move replayed as its undo at
/// the position it moved to.
fn stitch(space: &SearchSpace, left: &[u8], right: &[u8]) -> Vec<u8> {
    let mut combined = left.to_vec();
    let mut pos = space.mobile_home();
    let mut trail: Vec<(usize, u8)> = Vec::with_capacity(right.len());
    for &id in right {
        trail.push((pos, id));
        pos = space.moves_at(pos)[id as usize].to_position;
    }
    for &(p, id) in trail.iter().rev() {
        combined.push(space.moves_at(p)[id as usize].undo_id);
    }
    combined
}

/// Best pair found in one partition, already stitched into a move word.
struct BestPair {
    distance: f64,
    combined: Vec<u8>,
}

/// One partition's harvest.
#[derive(Default)]
struct Partial {
    best: Option<BestPair>,
    nodes: u64,
    pairs: u64,
    limited: bool,
}

impl Partial {
    /// Deterministic merge: smaller (distance, word) wins.
    fn absorb(&mut self, other: Partial) {
        self.nodes += other.nodes;
        self.pairs += other.pairs;
        self.limited |= other.limited;
        match (&self.best, other.best) {
            (_, None) => {}
            (None, Some(b)) => self.best = Some(b),
            (Some(a), Some(b)) => {
                if (b.distance, &b.combined) < (a.distance, &a.combined) {
                    self.best = Some(b);
                }
            }
        }
    }
}

/// Exact distance in f32 precision between a stored entry and the probe
/// point; both metrics are bi-invariant so this equals the composite's
/// distance to the target up to rounding.
#[inline]
fn prefilter(entry: &HalfEntry, u_match: &U2, metric: Metric) -> f64 {
    let q = Quat {
        w: entry.q[0] as f64,
        x: entry.q[1] as f64,
        y: entry.q[2] as f64,
        z: entry.q[3] as f64,
    };
    match metric {
        Metric::PhaseQuotient => {
            let d = q.dot(u_match.q).abs().min(1.0);
            (2.0 - 2.0 * d).sqrt()
        }
        Metric::Rigid => {
            let a = U2 {
                q,
                gamma: entry.gamma as f64,
            };
            a.rigid_distance(*u_match)
        }
    }
}

/// Exact node counts per depth via dynamic programming over the states a
/// pruned walk distinguishes: (position, forbidden move id).
fn cumulative_node_counts(space: &SearchSpace, max_depth: u32) -> Vec<u64> {
    let n = space.positions();
    let width = (0..n).map(|p| space.moves_at(p).len()).max().unwrap_or(0) + 1;
    // state index = pos * width + forbidden (width-1 = none).
    let mut counts = vec![0u64; n * width];
    counts[space.mobile_home() * width + (width - 1)] = 1;
    let mut cumulative = vec![1u64; max_depth as usize + 1];
    for depth in 1..=max_depth as usize {
        let mut next = vec![0u64; n * width];
        for (state, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (pos, forbidden) = (state / width, state % width);
            for (id, mv) in space.moves_at(pos).iter().enumerate() {
                if id == forbidden {
                    continue;
                }
                let undo = if (mv.undo_id as usize) < width - 1 {
                    mv.undo_id as usize
                } else {
                    width - 1
                };
                next[mv.to_position * width + undo] =
                    next[mv.to_position * width + undo].saturating_add(c);
            }
        }
        let layer: u64 = next.iter().fold(0u64, |a, &b| a.saturating_add(b));
        cumulative[depth] = cumulative[depth - 1].saturating_add(layer);
        counts = next;
    }
    cumulative
}

/// Position (bits 48..56) and, under a winding constraint, the half-word's
/// winding as an i8 (bits 56..64), packed above the hashers' lattice and
/// phase fields. Halves collide only when they meet at the same position
/// with equal windings, which makes the combined winding zero.
#[inline]
fn meta_bits(pos: usize, wind: i64, winding_zero: bool) -> u64 {
    debug_assert!(pos < 256);
    let w = if winding_zero {
        (wind as i8 as u8) as u64
    } else {
        0
    };
    ((pos as u64) << 48) | (w << 56)
}

#[inline]
fn pack(ids: &[u8], bits: u32) -> u64 {
    let mut word = 0u64;
    for (i, &id) in ids.iter().enumerate() {
        word |= (id as u64) << (bits * i as u32);
    }
    word
}

#[inline]
fn unpack(word: u64, len: u8, bits: u32, out: &mut Vec<u8>) {
    out.clear();
    let mask = (1u64 << bits) - 1;
    for i in 0..len as u32 {
        out.push(((word >> (bits * i)) & mask) as u8);
    }
}
