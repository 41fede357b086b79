//! Locality-sensitive cell hashing for unit quaternions.
//!
//! Points on S³ are keyed by rounding the four ambient coordinates to a
//! lattice of pitch `cell`.  A point is inserted under both signs (`q` and
//! `-q`), so the phase-quotient identification never needs an unstable
//! canonical-sign rule; a query probes the 3⁴ = 81 cells within one lattice
//! step of its own rounded coordinates.  Two quaternions whose (sign-reduced)
//! chordal distance is at most `cell` differ by at most `cell` per ambient
//! axis, hence by at most one lattice step per axis, so the probe set is
//! guaranteed to contain the insertion cell of every such neighbour.
//!
//! The rigid variant appends a wrapped cell index for the global phase, with
//! the sign identification `(q, γ) ~ (-q, γ+π)` applied to both inserted
//! copies.  Pairs at rigid distance ≤ ~0.9·cell land in adjacent phase cells
//! and adjacent lattice cells, so the 3⁴·3 probe set again suffices.

use std::f64::consts::PI;

use super::su2::{Quat, U2};
use crate::error::{Error, Result};

/// Smallest supported cell pitch: coordinates are packed as offset bytes,
/// so the lattice index must fit in `[-127, 127]`.
pub(crate) const MIN_CELL: f64 = 0.01;

fn lattice(x: f64, cell: f64) -> i32 {
    let i = (x / cell).round();
    i.clamp(-127.0, 127.0) as i32
}

fn pack4(c: [i32; 4]) -> u64 {
    let mut key = 0u64;
    for (shift, v) in c.iter().enumerate() {
        key |= (((v + 128) as u64) & 0xff) << (8 * shift);
    }
    key
}

fn coords(q: &Quat, cell: f64) -> [i32; 4] {
    [
        lattice(q.w, cell),
        lattice(q.x, cell),
        lattice(q.y, cell),
        lattice(q.z, cell),
    ]
}

/// Pushes the 81 packed keys within one lattice step of `q`'s cell, each
/// combined with the fixed `tail` bits (phase cell for the rigid variant).
fn probe_lattice(q: &Quat, cell: f64, tail: &[u64], out: &mut Vec<u64>) {
    let c = coords(q, cell);
    for d0 in -1..=1 {
        for d1 in -1..=1 {
            for d2 in -1..=1 {
                for d3 in -1..=1 {
                    let key = pack4([c[0] + d0, c[1] + d1, c[2] + d2, c[3] + d3]);
                    for t in tail {
                        out.push(key | t);
                    }
                }
            }
        }
    }
}

fn check_cell(cell: f64) -> Result<f64> {
    if !(cell >= MIN_CELL && cell <= 2.0) {
        return Err(Error::Refused(format!(
            "hash cell {cell} outside supported range [{MIN_CELL}, 2]"
        )));
    }
    Ok(cell)
}

/// Cell hasher for the phase-quotient metric (points of S³ mod sign).
#[derive(Clone, Copy, Debug)]
pub(crate) struct PqHasher {
    cell: f64,
}

impl PqHasher {
    pub(crate) fn new(cell: f64) -> Result<Self> {
        Ok(PqHasher {
            cell: check_cell(cell)?,
        })
    }

    /// Keys under which a stored point is filed: one per sign.
    pub(crate) fn insert_keys(&self, q: &Quat) -> [u64; 2] {
        [
            pack4(coords(q, self.cell)),
            pack4(coords(&q.neg(), self.cell)),
        ]
    }

    /// All cells that can hold a stored point within one lattice step of `q`.
    ///
    /// The caller matches against either sign implicitly because insertion
    /// filed both signs.
    pub(crate) fn probe_keys(&self, q: &Quat, out: &mut Vec<u64>) {
        out.clear();
        probe_lattice(q, self.cell, &[0], out);
    }
}

/// Cell hasher for the rigid metric (unit quaternion plus global phase).
#[derive(Clone, Copy, Debug)]
pub(crate) struct RigidHasher {
    cell: f64,
    gamma_cells: u64,
}

impl RigidHasher {
    pub(crate) fn new(cell: f64) -> Result<Self> {
        let cell = check_cell(cell)?;
        Ok(RigidHasher {
            cell,
            gamma_cells: (2.0 * PI / cell).ceil() as u64,
        })
    }

    fn gamma_cell(&self, gamma: f64) -> u64 {
        let wrapped = gamma.rem_euclid(2.0 * PI);
        let idx = (wrapped / self.cell).floor() as u64;
        (idx % self.gamma_cells) << 32
    }

    pub(crate) fn insert_keys(&self, u: &U2) -> [u64; 2] {
        [
            pack4(coords(&u.q, self.cell)) | self.gamma_cell(u.gamma),
            pack4(coords(&u.q.neg(), self.cell)) | self.gamma_cell(u.gamma + PI),
        ]
    }

    pub(crate) fn probe_keys(&self, u: &U2, out: &mut Vec<u64>) {
        out.clear();
        let g = (u.gamma.rem_euclid(2.0 * PI) / self.cell).floor() as i64;
        let n = self.gamma_cells as i64;
        let tails = [
            ((g - 1).rem_euclid(n) as u64) << 32,
            ((g).rem_euclid(n) as u64) << 32,
            ((g + 1).rem_euclid(n) as u64) << 32,
        ];
        probe_lattice(&u.q, self.cell, &tails, out);
    }
}

/// Immutable key → payload multimap backed by two parallel sorted arrays.
///
/// Build once from the full entry list, then answer range lookups with two
/// binary searches.  Entries are sorted by `(key, payload)` so the layout, and
/// therefore every downstream iteration order, is deterministic.
#[derive(Debug, Default)]
pub(crate) struct CellTable {
    keys: Vec<u64>,
    payloads: Vec<u32>,
}

impl CellTable {
    pub(crate) fn build(mut entries: Vec<(u64, u32)>) -> Self {
        entries.sort_unstable();
        let mut keys = Vec::with_capacity(entries.len());
        let mut payloads = Vec::with_capacity(entries.len());
        for (k, p) in entries {
            keys.push(k);
            payloads.push(p);
        }
        CellTable { keys, payloads }
    }

    /// Payloads stored under `key`, in ascending payload order.
    pub(crate) fn lookup(&self, key: u64) -> &[u32] {
        let lo = self.keys.partition_point(|&k| k < key);
        let hi = self.keys.partition_point(|&k| k <= key);
        &self.payloads[lo..hi]
    }
}
