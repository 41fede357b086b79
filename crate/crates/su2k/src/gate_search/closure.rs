//! Finite-closure probe for the image of a represented braid group.
//!
//! Starting from the identity, products of the generators are explored
//! breadth-first; elements closer than `tol` are identified, so the probe
//! reports either the size of the saturated set or that the set grew past
//! the cap. A genuinely finite image saturates once every product lands on
//! a known element; a dense image keeps producing new elements until the
//! cap cuts it off. (At coarse tolerances a dense image can also saturate —
//! the caller's `tol` states the resolution at which elements are counted.)
//!
//! Phases count: elements are compared as full unitaries, not up to global
//! phase, so the reported size is the order of the image in U(2) — for
//! two-dimensional sectors via the rigid metric on an S³ cell grid, and in
//! any other dimension via Frobenius distance with trace bucketing.

use std::collections::{HashMap, VecDeque};

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simulator::SectorUnitary;

use super::s3hash::{RigidHasher, MIN_CELL};
use super::su2::U2;

/// What a closure probe found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ClosureOutcome {
    /// Products stopped producing new elements; the image has this many
    /// elements at the probe's resolution.
    Finite { elements: usize },
    /// The element count passed `cap` with products still producing new
    /// elements.
    ExceedsCap { cap: usize },
}

/// Explores the group generated by `generators` until it saturates or
/// exceeds `cap` elements, identifying elements closer than `tol`.
///
/// All generators must act on the same basis (equal dimensions, equal
/// domain and codomain). An empty generator list is the trivial group.
pub fn closure_probe(
    generators: &[SectorUnitary],
    tol: f64,
    cap: usize,
) -> Result<ClosureOutcome> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Refused(format!(
            "closure tolerance must lie strictly between 0 and 1, got {tol}"
        )));
    }
    if cap == 0 {
        return Err(Error::Refused("closure cap must be at least 1".into()));
    }
    let Some(first) = generators.first() else {
        return Ok(ClosureOutcome::Finite { elements: 1 });
    };
    let dim = first.dim();
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.dim(),
            });
        }
        if g.domain() != g.codomain() {
            return Err(Error::BasisMismatch(
                "closure generators must be endomorphisms: domain and codomain bases differ"
                    .into(),
            ));
        }
    }
    if dim == 2 {
        let gens: Vec<U2> = generators
            .iter()
            .map(|g| U2::from_matrix(g.matrix()))
            .collect::<Result<_>>()?;
        closure_2d(&gens, tol, cap)
    } else {
        let gens: Vec<Array2<Complex64>> =
            generators.iter().map(|g| g.matrix().clone()).collect();
        closure_nd(&gens, dim, tol, cap)
    }
}

/// Two-dimensional sectors: elements live on S³ × phase and dedup through
/// the rigid-metric cell grid, whose recall guarantee (anything within one
/// cell pitch collides) covers `tol` because the pitch is at least `tol`.
fn closure_2d(gens: &[U2], tol: f64, cap: usize) -> Result<ClosureOutcome> {
    let hasher = RigidHasher::new(tol.max(MIN_CELL))?;
    let mut elements: Vec<U2> = Vec::new();
    let mut cells: HashMap<u64, Vec<u32>> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut probes: Vec<u64> = Vec::with_capacity(243);

    let admit = |u: U2,
                     elements: &mut Vec<U2>,
                     cells: &mut HashMap<u64, Vec<u32>>,
                     probes: &mut Vec<u64>|
     -> Option<usize> {
        hasher.probe_keys(&u, probes);
        for key in probes.iter() {
            for &idx in cells.get(key).map_or(&[][..], |v| v.as_slice()) {
                if elements[idx as usize].rigid_distance(u) < tol {
                    return None;
                }
            }
        }
        let idx = elements.len();
        elements.push(u);
        for key in hasher.insert_keys(&u) {
            cells.entry(key).or_default().push(idx as u32);
        }
        Some(idx)
    };

    admit(U2::IDENTITY, &mut elements, &mut cells, &mut probes);
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let u = elements[i];
        for g in gens {
            let mut p = g.mul(u);
            p.q = p.q.normalized();
            if let Some(idx) = admit(p, &mut elements, &mut cells, &mut probes) {
                if elements.len() > cap {
                    return Ok(ClosureOutcome::ExceedsCap { cap });
                }
                queue.push_back(idx);
            }
        }
    }
    Ok(ClosureOutcome::Finite {
        elements: elements.len(),
    })
}

/// Any other dimension: matrices dedup by Frobenius distance, bucketed by
/// the complex trace. Since |tr A − tr B| ≤ √dim·‖A−B‖_F, points within
/// `tol` in Frobenius distance land within one trace bucket of width
/// √dim·tol, so probing the 3×3 neighborhood never misses a duplicate.
fn closure_nd(
    gens: &[Array2<Complex64>],
    dim: usize,
    tol: f64,
    cap: usize,
) -> Result<ClosureOutcome> {
    let width = (dim as f64).sqrt() * tol;
    let bucket = |m: &Array2<Complex64>| -> (i64, i64) {
        let tr: Complex64 = m.diag().sum();
        ((tr.re / width).floor() as i64, (tr.im / width).floor() as i64)
    };
    let frobenius = |a: &Array2<Complex64>, b: &Array2<Complex64>| -> f64 {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };

    let mut elements: Vec<Array2<Complex64>> = Vec::new();
    let mut buckets: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let admit = |m: Array2<Complex64>,
                     elements: &mut Vec<Array2<Complex64>>,
                     buckets: &mut HashMap<(i64, i64), Vec<u32>>|
     -> Option<usize> {
        let (br, bi) = bucket(&m);
        for dr in -1..=1 {
            for di in -1..=1 {
                for &idx in buckets
                    .get(&(br + dr, bi + di))
                    .map_or(&[][..], |v| v.as_slice())
                {
                    if frobenius(&elements[idx as usize], &m) < tol {
                        return None;
                    }
                }
            }
        }
        let idx = elements.len();
        buckets.entry((br, bi)).or_default().push(idx as u32);
        elements.push(m);
        Some(idx)
    };

    admit(Array2::eye(dim), &mut elements, &mut buckets);
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let p = g.dot(&elements[i]);
            if let Some(idx) = admit(p, &mut elements, &mut buckets) {
                if elements.len() > cap {
                    return Ok(ClosureOutcome::ExceedsCap { cap });
                }
                queue.push_back(idx);
            }
        }
    }
    Ok(ClosureOutcome::Finite {
        elements: elements.len(),
    })
}
