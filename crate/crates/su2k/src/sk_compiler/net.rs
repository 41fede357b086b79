//! ε-nets: every closing weave word up to a depth, cell-indexed over S³.
//!
//! A net is the base layer of the recursive refinement: a deterministic,
//! queryable catalogue of short words whose sector actions cover SU(2) to a
//! base accuracy ε₀. Construction enumerates complete cost layers until a
//! Haar-sampled covering check passes; queries use the same S³ lattice cell
//! grid as the bidirectional search, with a provable shortcut (any candidate
//! within the cell pitch certifies that the true nearest entry was probed)
//! and a linear-scan fallback so the nearest-entry contract holds
//! unconditionally.

use std::path::Path;
use std::time::Instant;

use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::anyon_model::{Charge, Level, ObjectList, Theory};
use crate::braid_core::Letter;
use crate::error::{Error, Result};
use crate::gate_search::{
    build_space, describe, finish, uniform_move_cost, CellTable, CompiledGate, Method,
    MethodReport, Metric, PqHasher, Quat, SearchConfig, SearchSpace, SectorTarget, U2, MIN_CELL,
};

/// Number of Haar-random samples used to validate the covering radius.
const COVER_SAMPLES: usize = 1000;

/// One stored word: its move-id path from the home position and its exact
/// tabulated sector action.
#[derive(Debug)]
pub(super) struct NetEntry {
    ids: Vec<u8>,
    u: U2,
}

/// A catalogue of weave words covering SU(2) at base accuracy ε₀.
///
/// Invariants, maintained by [`build_net`] and revalidated by [`load`]
/// (`EpsilonNet::load`):
///
/// - every entry is a closing word on the net's context (an endomorphism of
///   the home sector), so entries compose freely;
/// - the sampled covering radius — the largest nearest-entry distance over
///   [`COVER_SAMPLES`] Haar-random SU(2) points drawn from the config seed —
///   is at most ε₀, so a [`lookup`](EpsilonNet::lookup) result's
///   `achieved_distance` is ≤ ε₀ for any target the sampling represents;
/// - `lookup` returns the exact nearest stored entry in the phase-quotient
///   metric (smallest entry index on ties), never an approximation.
#[derive(Debug)]
pub struct EpsilonNet {
    level: Level,
    theory: Theory,
    space: SearchSpace,
    cfg: SearchConfig,
    epsilon0: f64,
    /// Cell pitch of the hash grid: ε₀ clamped into the supported range.
    pitch: f64,
    /// Cost ceiling (in physical interchanges) of the enumerated words.
    depth_cost: u32,
    sampled_radius: f64,
    entries: Vec<NetEntry>,
    hasher: PqHasher,
    table: CellTable,
}

/// Requires the braid image on the context to be dense in SU(2): level
/// k ≥ 3 with k ≠ 4, and for all-charge-1/2 contexts additionally k ≠ 8.
fn ensure_dense(level: Level, context: &ObjectList) -> Result<()> {
    let k = level.k();
    if k < 3 {
        return Err(Error::Refused(format!(
            "the braid image at level k = {k} is finite, not dense in SU(2); \
             ε-net construction needs k ≥ 3 (k ≠ 4; all-charge-1/2 contexts also k ≠ 8)"
        )));
    }
    if k == 4 {
        return Err(Error::Refused(
            "the braid image at level k = 4 is finite, not dense in SU(2); no ε-net exists"
                .into(),
        ));
    }
    if k == 8 && context.charges().iter().all(|c| c.twice() == 1) {
        return Err(Error::Refused(
            "charge-1/2 contexts at level k = 8 braid into a finite image, not a dense one; \
             no ε-net exists — weave composite objects or change the level"
                .into(),
        ));
    }
    Ok(())
}

/// The enumeration can only cover SU(2) if the reachable moves generate a
/// non-abelian group: rotations about one common axis stay on a circle no
/// matter how deep the walk goes. Elementary-alphabet mobiles reach every
/// in-window position, but twist moves park the mobile where it stands — a
/// mobile at a window edge then owns a single twist pair and its image is a
/// circle, so it is refused here before any enumeration runs.
fn ensure_nonabelian_moves(space: &SearchSpace) -> Result<()> {
    let mut reached = vec![false; space.positions()];
    let mut stack = vec![space.mobile_home()];
    reached[space.mobile_home()] = true;
    while let Some(p) = stack.pop() {
        for mv in space.moves_at(p) {
            if !reached[mv.to_position] {
                reached[mv.to_position] = true;
                stack.push(mv.to_position);
            }
        }
    }
    let mut axes: Vec<[f64; 3]> = Vec::new();
    for (p, ok) in reached.iter().enumerate() {
        if *ok {
            for mv in space.moves_at(p) {
                let q = mv.action.q;
                axes.push([q.x, q.y, q.z]);
            }
        }
    }
    let crossed = |a: &[f64; 3], b: &[f64; 3]| -> f64 {
        let cx = a[1] * b[2] - a[2] * b[1];
        let cy = a[2] * b[0] - a[0] * b[2];
        let cz = a[0] * b[1] - a[1] * b[0];
        (cx * cx + cy * cy + cz * cz).sqrt()
    };
    for i in 0..axes.len() {
        for j in (i + 1)..axes.len() {
            if crossed(&axes[i], &axes[j]) > 1e-9 {
                return Ok(());
            }
        }
    }
    Err(Error::Refused(
        "every reachable move rotates about one common axis, so the walk stays on a \
         circle and can never cover SU(2); park the mobile between two distinct \
         neighbors or switch to the elementary alphabet"
            .into(),
    ))
}

fn check_epsilon0(epsilon0: f64) -> Result<()> {
    if !(epsilon0 > 0.0 && epsilon0 <= 1.0) {
        return Err(Error::Refused(format!(
            "base accuracy ε₀ = {epsilon0} is outside the supported range (0, 1]"
        )));
    }
    Ok(())
}

fn check_metric(cfg: &SearchConfig) -> Result<()> {
    if cfg.metric != Metric::PhaseQuotient {
        return Err(Error::Refused(
            "ε-net covering is defined in the phase-quotient metric; \
             rigid-metric nets are not supported"
                .into(),
        ));
    }
    Ok(())
}

/// One standard-normal pair via the Box-Muller transform.
fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // in (0, 1], keeps the log finite
    let u2: f64 = rng.gen::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let angle = std::f64::consts::TAU * u2;
    (r * angle.cos(), r * angle.sin())
}

/// Haar-uniform point of SU(2): four standard normals, normalized.
pub(super) fn haar_quat(rng: &mut ChaCha8Rng) -> Quat {
    loop {
        let (w, x) = gaussian_pair(rng);
        let (y, z) = gaussian_pair(rng);
        let n = (w * w + x * x + y * y + z * z).sqrt();
        if n > 1e-6 {
            return Quat {
                w: w / n,
                x: x / n,
                y: y / n,
                z: z / n,
            };
        }
    }
}

/// The fixed validation sample set for a config seed.
fn cover_samples(seed: u64) -> Vec<Quat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..COVER_SAMPLES).map(|_| haar_quat(&mut rng)).collect()
}

/// Enumerates every closing word of cost ≤ `cost_cap` in lexicographic move
/// order (the empty word first), counting all visited nodes against the
/// budget.
fn enumerate_entries(
    space: &SearchSpace,
    cost_cap: u32,
    cfg: &SearchConfig,
) -> Result<Vec<NetEntry>> {
    let mut entries: Vec<NetEntry> = Vec::new();
    let mut visited = 0u64;
    let mut over_budget = false;
    space.enumerate(cost_cap, &mut |ids, u, pos, wind, _cost| {
        visited += 1;
        if visited > cfg.budget {
            over_budget = true;
            return false;
        }
        if space.closes_at(pos) && (!cfg.winding_zero || wind == 0) {
            entries.push(NetEntry {
                ids: ids.to_vec(),
                u,
            });
        }
        true
    });
    if over_budget {
        return Err(Error::Refused(format!(
            "net enumeration exceeded the budget of {} words before the covering check \
             passed; raise the budget or loosen ε₀",
            cfg.budget
        )));
    }
    if entries.len() > u32::MAX as usize {
        return Err(Error::Refused(
            "net has more entries than the cell index can address".into(),
        ));
    }
    Ok(entries)
}

/// Files every entry under both quaternion signs.
fn index_entries(entries: &[NetEntry], hasher: &PqHasher) -> CellTable {
    let mut keyed = Vec::with_capacity(entries.len() * 2);
    for (i, e) in entries.iter().enumerate() {
        for key in hasher.insert_keys(&e.u.q) {
            keyed.push((key, i as u32));
        }
    }
    CellTable::build(keyed)
}

/// Exact nearest entry to `q` in the phase-quotient metric.
///
/// Probes the 81 cells around `q` first. If the best probed candidate lies
/// within the cell pitch, the grid guarantee (anything within one pitch of
/// `q` was probed) certifies it is the global nearest. Otherwise falls back
/// to a linear scan, so the nearest-entry contract holds even for targets in
/// a sampling hole. Ties go to the smallest entry index; returns
/// `(index, distance, candidates examined)`.
fn nearest_in(
    entries: &[NetEntry],
    table: &CellTable,
    hasher: &PqHasher,
    pitch: f64,
    q: Quat,
) -> (usize, f64, u64) {
    let target = U2 { q, gamma: 0.0 };
    let mut probes = Vec::with_capacity(81);
    hasher.probe_keys(&q, &mut probes);
    let mut best_i = usize::MAX;
    let mut best_d = f64::INFINITY;
    let mut evals = 0u64;
    let consider = |i: usize, d: f64, best_i: &mut usize, best_d: &mut f64| {
        if d < *best_d || (d == *best_d && i < *best_i) {
            *best_i = i;
            *best_d = d;
        }
    };
    for key in probes {
        for &i in table.lookup(key) {
            evals += 1;
            let d = entries[i as usize].u.phase_quotient_distance(target);
            consider(i as usize, d, &mut best_i, &mut best_d);
        }
    }
    if best_d <= pitch {
        return (best_i, best_d, evals);
    }
    for (i, e) in entries.iter().enumerate() {
        evals += 1;
        let d = e.u.phase_quotient_distance(target);
        consider(i, d, &mut best_i, &mut best_d);
    }
    (best_i, best_d, evals)
}

/// Largest nearest-entry distance over the sample set.
fn covering_radius_of(
    entries: &[NetEntry],
    table: &CellTable,
    hasher: &PqHasher,
    pitch: f64,
    samples: &[Quat],
) -> f64 {
    samples
        .iter()
        .map(|&q| nearest_in(entries, table, hasher, pitch, q).1)
        .fold(0.0, f64::max)
}

/// Builds an ε-net over the 2-dimensional sector of `context` with total
/// charge `total`, enumerating one cost layer at a time until the sampled
/// covering radius drops to ε₀.
///
/// The config supplies the word structure (alphabet, mobile index, weave or
/// braid mode, winding constraint), the enumeration ceilings (`max_length`,
/// `budget`), and the sampling seed. Refuses non-dense levels, move sets
/// sharing one rotation axis, rigid-metric configs, ε₀ outside (0, 1], and
/// ceilings too tight to reach coverage.
pub fn build_net(
    level: Level,
    context: &ObjectList,
    total: Charge,
    epsilon0: f64,
    cfg: &SearchConfig,
) -> Result<EpsilonNet> {
    cfg.validate()?;
    check_metric(cfg)?;
    check_epsilon0(epsilon0)?;
    ensure_dense(level, context)?;
    let theory = Theory::new(level);
    let sector = SectorTarget {
        objects: context.clone(),
        total,
        u2: U2::IDENTITY,
    };
    let space = build_space(&theory, &sector, cfg)?;
    ensure_nonabelian_moves(&space)?;
    let move_cost = uniform_move_cost(&space)?;
    let pitch = epsilon0.clamp(MIN_CELL, 2.0);
    let hasher = PqHasher::new(pitch)?;
    let samples = cover_samples(cfg.seed);
    let mut last_radius = f64::INFINITY;
    for depth in 1u32.. {
        let cost_cap = depth.saturating_mul(move_cost);
        if cost_cap > cfg.max_length {
            return Err(Error::Refused(format!(
                "net covering radius is still {last_radius:.6} > ε₀ = {epsilon0} at the \
                 max_length ceiling {}; raise max_length or loosen ε₀",
                cfg.max_length
            )));
        }
        let entries = enumerate_entries(&space, cost_cap, cfg)?;
        let table = index_entries(&entries, &hasher);
        let radius = covering_radius_of(&entries, &table, &hasher, pitch, &samples);
        if radius <= epsilon0 {
            return Ok(EpsilonNet {
                level,
                theory,
                space,
                cfg: cfg.clone(),
                epsilon0,
                pitch,
                depth_cost: cost_cap,
                sampled_radius: radius,
                entries,
                hasher,
                table,
            });
        }
        last_radius = radius;
    }
    unreachable!("the depth loop exits through coverage or a ceiling refusal");
}

impl EpsilonNet {
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn context(&self) -> &ObjectList {
        self.space.context()
    }

    pub fn total(&self) -> Charge {
        self.space.total()
    }

    pub fn config(&self) -> &SearchConfig {
        &self.cfg
    }

    /// The base accuracy the net was built for.
    pub fn epsilon0(&self) -> f64 {
        self.epsilon0
    }

    /// The sampled covering radius (≤ ε₀ by construction).
    pub fn covering_radius(&self) -> f64 {
        self.sampled_radius
    }

    /// Cost ceiling (in physical interchanges) of the stored words.
    pub fn depth_cost(&self) -> u32 {
        self.depth_cost
    }

    /// Number of stored words.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Letter count of the longest stored word.
    pub fn max_entry_letters(&self) -> usize {
        self.entries
            .iter()
            .map(|e| self.space.word_from_moves(&e.ids).map_or(0, |w| w.len()))
            .max()
            .unwrap_or(0)
    }

    /// Identifying key: level, context, total, ε₀, and alphabet. Persisted
    /// nets for different keys never collide under this name.
    pub fn key(&self) -> String {
        let charges: Vec<String> = self
            .context()
            .charges()
            .iter()
            .map(|c| c.twice().to_string())
            .collect();
        format!(
            "k{}-c{}-t{}-e{}-{:?}",
            self.level.k(),
            charges.join("."),
            self.total().twice(),
            self.epsilon0,
            self.cfg.alphabet
        )
        .to_lowercase()
    }

    pub(super) fn theory(&self) -> &Theory {
        &self.theory
    }

    pub(super) fn space(&self) -> &SearchSpace {
        &self.space
    }

    /// Exact nearest entry to `q` (see [`nearest_in`]).
    pub(super) fn nearest(&self, q: Quat) -> (usize, f64, u64) {
        nearest_in(&self.entries, &self.table, &self.hasher, self.pitch, q)
    }

    /// The tabulated action of entry `idx`.
    pub(super) fn entry_action(&self, idx: usize) -> U2 {
        self.entries[idx].u
    }

    /// Entry `idx` expanded to braid letters.
    pub(super) fn entry_letters(&self, idx: usize) -> Result<Vec<Letter>> {
        Ok(self
            .space
            .word_from_moves(&self.entries[idx].ids)?
            .letters()
            .to_vec())
    }

    /// The nearest stored word to `target`, re-verified through the
    /// simulator and reported as a compiled gate. Equivalent to
    /// [`refine`](super::refine) at depth 0.
    pub fn lookup(&self, target: &Array2<Complex64>) -> Result<CompiledGate> {
        let start = Instant::now();
        let t = U2::from_matrix(target)?;
        let (idx, internal, evals) = self.nearest(t.q);
        let sector = SectorTarget {
            objects: self.context().clone(),
            total: self.total(),
            u2: t,
        };
        let name = format!("{}; nearest ε-net entry", describe(&sector));
        let report = MethodReport {
            method: Method::SolovayKitaev,
            metric: Metric::PhaseQuotient,
            budget_limited: false,
            left_count: self.entries.len() as u64,
            right_count: 0,
            pairs_tested: 0,
            wall_ms: start.elapsed().as_millis() as u64,
            warning: None,
        };
        finish(
            &self.theory,
            &self.space,
            &sector,
            &self.cfg,
            &self.entries[idx].ids,
            internal,
            &name,
            evals,
            report,
        )
    }

    /// Persists the net as JSON: conventions string, key fields, config, and
    /// the move-id words. Actions are not stored — they are recomputed, and
    /// the covering revalidated, on load.
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = NetFile {
            conventions: crate::CONVENTIONS.to_string(),
            level_k: self.level.k(),
            context_twice: self
                .context()
                .charges()
                .iter()
                .map(|c| c.twice())
                .collect(),
            total_twice: self.total().twice(),
            epsilon0: self.epsilon0,
            depth_cost: self.depth_cost,
            sampled_radius: self.sampled_radius,
            config: self.cfg.clone(),
            words: self.entries.iter().map(|e| e.ids.clone()).collect(),
        };
        let out = std::fs::File::create(path)?;
        serde_json::to_writer(std::io::BufWriter::new(out), &file)?;
        Ok(())
    }

    /// Loads a persisted net, rebuilding every derived structure and
    /// re-running the full validation: conventions match, density and range
    /// checks, exact recomputation of each word's action, and the covering
    /// re-sampled from the stored seed must reproduce the recorded radius.
    pub fn load(path: &Path) -> Result<EpsilonNet> {
        let text = std::fs::read_to_string(path)?;
        let file: NetFile = serde_json::from_str(&text)?;
        if file.conventions != crate::CONVENTIONS {
            return Err(Error::Parse(format!(
                "net file was produced under conventions '{}' but this library uses '{}'",
                file.conventions,
                crate::CONVENTIONS
            )));
        }
        let level = Level::new(file.level_k)?;
        let charges = file
            .context_twice
            .iter()
            .map(|&t| Charge::from_twice(t, level))
            .collect::<Result<Vec<_>>>()?;
        let context = ObjectList::new(charges)?;
        let total = Charge::from_twice(file.total_twice, level)?;
        file.config.validate()?;
        check_metric(&file.config)?;
        check_epsilon0(file.epsilon0)?;
        ensure_dense(level, &context)?;
        let theory = Theory::new(level);
        let sector = SectorTarget {
            objects: context.clone(),
            total,
            u2: U2::IDENTITY,
        };
        let space = build_space(&theory, &sector, &file.config)?;
        ensure_nonabelian_moves(&space)?;
        let mut entries = Vec::with_capacity(file.words.len());
        for ids in &file.words {
            entries.push(NetEntry {
                u: space.action_of(ids)?,
                ids: ids.clone(),
            });
        }
        if entries.len() > u32::MAX as usize {
            return Err(Error::Parse(
                "net file has more entries than the cell index can address".into(),
            ));
        }
        let pitch = file.epsilon0.clamp(MIN_CELL, 2.0);
        let hasher = PqHasher::new(pitch)?;
        let table = index_entries(&entries, &hasher);
        let samples = cover_samples(file.config.seed);
        let radius = covering_radius_of(&entries, &table, &hasher, pitch, &samples);
        if radius > file.epsilon0 {
            return Err(Error::Parse(format!(
                "net file does not cover SU(2) within its claimed ε₀ = {}: \
                 re-sampled radius {radius}",
                file.epsilon0
            )));
        }
        if (radius - file.sampled_radius).abs() > 1e-9 {
            return Err(Error::Parse(format!(
                "net file's recorded covering radius {} disagrees with the \
                 recomputation {radius}",
                file.sampled_radius
            )));
        }
        Ok(EpsilonNet {
            level,
            theory,
            space,
            cfg: file.config,
            epsilon0: file.epsilon0,
            pitch,
            depth_cost: file.depth_cost,
            sampled_radius: radius,
            entries,
            hasher,
            table,
        })
    }
}

/// On-disk form of a net.
#[derive(Serialize, Deserialize)]
struct NetFile {
    conventions: String,
    level_k: u32,
    context_twice: Vec<u32>,
    total_twice: u32,
    epsilon0: f64,
    depth_cost: u32,
    sampled_radius: f64,
    config: SearchConfig,
    words: Vec<Vec<u8>>,
}
