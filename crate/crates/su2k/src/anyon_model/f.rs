//! F-tensor blocks from q-deformed 6j symbols.
//!
//! The recoupling data is built from the Racah sum over q-factorials of
//! q-integers, with square-root normalization by q-dimensions:
//!
//! `(F^{abc}_d)[e,f] = s(a,b,e)·s(e,c,d)·s(b,c,f)·s(a,f,d) ·
//!    (−1)^{a+b+c+d} · sqrt(⌊2e+1⌋⌊2f+1⌋) · {a b e; c d f}_q`
//!
//! where `s(·)` is the fusion-vertex gauge: `s = −1` exactly for the vertex
//! `(1, 1) → 0` and `+1` otherwise. This gauge choice keeps every block real
//! orthogonal while fixing the sign convention of the charge-1 blocks (e.g.
//! at k=3 it makes `F^{111}_1 = [[1/φ, 1/√φ], [1/√φ, −1/φ]]` with positive
//! off-diagonal entries). Blocks whose four labels coincide remain symmetric;
//! mixed-label blocks are orthogonal but not always positionwise symmetric.
//!
//! All charge arguments below are twice-integers; triangle and quadrilateral
//! sums are therefore even and divide exactly by two into the integer
//! "spin-sum" quantities the q-factorials consume.

use super::{Charge, Theory};
use ndarray::Array2;

/// One recoupling block `F^{abc}_d` with its row and column channel labels.
///
/// Row labels `e` run over `fuse(a,b)` filtered by `d ∈ fuse(e,c)`; column
/// labels `f` run over `fuse(b,c)` filtered by `d ∈ fuse(a,f)`. Both label
/// sets are contiguous ranges in twice-integer steps of two, stored as
/// `(min, count)`.
#[derive(Debug, Clone)]
pub struct FBlock {
    e_min: u32,
    f_min: u32,
    /// Row-major `[e, f]`, dimensions `rows() × cols()`.
    pub mat: Array2<f64>,
}

impl FBlock {
    /// Row labels in ascending order.
    pub fn rows(&self) -> Vec<Charge> {
        (0..self.mat.nrows())
            .map(|i| Charge {
                twice: self.e_min + 2 * i as u32,
            })
            .collect()
    }

    /// Column labels in ascending order.
    pub fn cols(&self) -> Vec<Charge> {
        (0..self.mat.ncols())
            .map(|j| Charge {
                twice: self.f_min + 2 * j as u32,
            })
            .collect()
    }

    /// Row index of channel `e`, if present.
    pub fn row_index(&self, e: Charge) -> Option<usize> {
        index_in(self.e_min, self.mat.nrows(), e)
    }

    /// Column index of channel `f`, if present.
    pub fn col_index(&self, f: Charge) -> Option<usize> {
        index_in(self.f_min, self.mat.ncols(), f)
    }

    /// Entry by channel labels; zero when a label is absent (inadmissible).
    pub fn entry(&self, e: Charge, f: Charge) -> f64 {
        match (self.row_index(e), self.col_index(f)) {
            (Some(i), Some(j)) => self.mat[[i, j]],
            _ => 0.0,
        }
    }

    /// Max-norm defect of `FᵀF − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.mat.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut dot = 0.0;
                for l in 0..self.mat.ncols() {
                    dot += self.mat[[l, i]] * self.mat[[l, j]];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }
}

fn index_in(min: u32, count: usize, label: Charge) -> Option<usize> {
    let t = label.twice();
    if t < min || (t - min) % 2 != 0 {
        return None;
    }
    let idx = ((t - min) / 2) as usize;
    (idx < count).then_some(idx)
}

/// Fusion-vertex gauge sign: `−1` exactly for the `(1,1) → 0` vertex.
fn vertex_sign(x: Charge, y: Charge, z: Charge) -> f64 {
    if x.twice() == 2 && y.twice() == 2 && z.twice() == 0 {
        -1.0
    } else {
        1.0
    }
}

/// Triangle coefficient
/// `Δ(a,b,c) = sqrt(⌊−a+b+c⌋!·⌊a−b+c⌋!·⌊a+b−c⌋!/⌊a+b+c+1⌋!)`
/// for a level-admissible triple (twice-integer arguments).
fn triangle(theory: &Theory, ta: u32, tb: u32, tc: u32) -> f64 {
    let s = (ta + tb + tc) / 2;
    let n1 = s - ta; // (−a+b+c) as a spin sum
    let n2 = s - tb;
    let n3 = s - tc;
    (theory.qfact(n1) * theory.qfact(n2) * theory.qfact(n3) / theory.qfact(s + 1)).sqrt()
}

/// q-deformed 6j symbol `{a b e; c d f}_q` by the Racah sum, in
/// twice-integer arguments. Returns 0 when any of the four triangles
/// `(a,b,e)`, `(a,d,f)`, `(c,b,f)`, `(c,d,e)` is inadmissible at the level.
fn sixj(theory: &Theory, ta: u32, tb: u32, te: u32, tc: u32, td: u32, tf: u32) -> f64 {
    let adm = |x: u32, y: u32, z: u32| {
        theory.admissible(Charge { twice: x }, Charge { twice: y }, Charge { twice: z })
    };
    if !adm(ta, tb, te) || !adm(ta, td, tf) || !adm(tc, tb, tf) || !adm(tc, td, te) {
        return 0.0;
    }
    let prefactor = triangle(theory, ta, tb, te)
        * triangle(theory, ta, td, tf)
        * triangle(theory, tc, tb, tf)
        * triangle(theory, tc, td, te);

    // Triangle and quadrilateral spin sums (all integers).
    let t1 = (ta + tb + te) / 2;
    let t2 = (ta + td + tf) / 2;
    let t3 = (tc + tb + tf) / 2;
    let t4 = (tc + td + te) / 2;
    let q1 = (ta + tb + tc + td) / 2;
    let q2 = (tb + te + td + tf) / 2;
    let q3 = (te + ta + tf + tc) / 2;

    let z_lo = t1.max(t2).max(t3).max(t4);
    // Terms with z ≥ k+1 vanish because ⌊z+1⌋! then contains the factor
    // ⌊k+2⌋ = 0; capping keeps every factorial argument within the table.
    let z_hi = q1.min(q2).min(q3).min(theory.k());
    let mut sum = 0.0;
    let mut z = z_lo;
    while z <= z_hi {
        let sign = if z % 2 == 0 { 1.0 } else { -1.0 };
        let num = theory.qfact(z + 1);
        let den = theory.qfact(z - t1)
            * theory.qfact(z - t2)
            * theory.qfact(z - t3)
            * theory.qfact(z - t4)
            * theory.qfact(q1 - z)
            * theory.qfact(q2 - z)
            * theory.qfact(q3 - z);
        sum += sign * num / den;
        z += 1;
    }
    prefactor * sum
}

/// Computes the full block `F^{abc}_d`, or `None` when either label set is
/// empty (no admissible intermediate on that side).
pub(super) fn compute_block(
    theory: &Theory,
    a: Charge,
    b: Charge,
    c: Charge,
    d: Charge,
) -> Option<FBlock> {
    let rows: Vec<Charge> = theory
        .fuse(a, b)
        .into_iter()
        .filter(|e| theory.admissible(*e, c, d))
        .collect();
    let cols: Vec<Charge> = theory
        .fuse(b, c)
        .into_iter()
        .filter(|f| theory.admissible(a, *f, d))
        .collect();
    if rows.is_empty() || cols.is_empty() {
        return None;
    }
    debug_assert_eq!(
        rows.len(),
        cols.len(),
        "F block must be square: ({},{},{};{})",
        a.twice(),
        b.twice(),
        c.twice(),
        d.twice()
    );
    // (−1)^{a+b+c+d} in spin units; the exponent is an integer because both
    // row and column label sets are non-empty (parity admissibility).
    let global_sign = if ((a.twice() + b.twice() + c.twice() + d.twice()) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    let mut mat = Array2::zeros((rows.len(), cols.len()));
    for (i, e) in rows.iter().enumerate() {
        for (j, f) in cols.iter().enumerate() {
            let gauge = vertex_sign(a, b, *e)
                * vertex_sign(*e, c, d)
                * vertex_sign(b, c, *f)
                * vertex_sign(a, *f, d);
            let norm = (theory.qint(e.twice() + 1) * theory.qint(f.twice() + 1)).sqrt();
            let v = sixj(
                theory,
                a.twice(),
                b.twice(),
                e.twice(),
                c.twice(),
                d.twice(),
                f.twice(),
            );
            mat[[i, j]] = gauge * global_sign * norm * v;
        }
    }
    Some(FBlock {
        e_min: rows[0].twice(),
        f_min: cols[0].twice(),
        mat,
    })
}

/// Dense table of all admissible F blocks at one level, indexed by the four
/// twice-integer labels.
#[derive(Debug)]
pub(super) struct FTable {
    k: usize,
    blocks: Vec<Option<FBlock>>,
}

impl FTable {
    pub(super) fn build(theory: &Theory) -> FTable {
        let k = theory.k() as usize;
        let n = k + 1;
        let mut blocks = vec![None; n * n * n * n];
        for ta in 0..=k as u32 {
            for tb in 0..=k as u32 {
                for tc in 0..=k as u32 {
                    for td in 0..=k as u32 {
                        let (a, b, c, d) = (
                            Charge { twice: ta },
                            Charge { twice: tb },
                            Charge { twice: tc },
                            Charge { twice: td },
                        );
                        let idx = Self::index(k, ta, tb, tc, td);
                        blocks[idx] = compute_block(theory, a, b, c, d);
                    }
                }
            }
        }
        FTable { k, blocks }
    }

    #[inline]
    fn index(k: usize, ta: u32, tb: u32, tc: u32, td: u32) -> usize {
        let n = k + 1;
        ((ta as usize * n + tb as usize) * n + tc as usize) * n + td as usize
    }

    #[inline]
    pub(super) fn get(&self, a: Charge, b: Charge, c: Charge, d: Charge) -> Option<&FBlock> {
        self.blocks[Self::index(self.k, a.twice(), b.twice(), c.twice(), d.twice())].as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon_model::Level;

    fn theory(k: u32) -> Theory {
        Theory::new(Level::new(k).unwrap())
    }

    #[test]
    fn vacuum_blocks_are_identity() {
        let th = theory(5);
        for ta in 0..=5u32 {
            for tb in 0..=5u32 {
                let a = Charge { twice: ta };
                let b = Charge { twice: tb };
                for d in th.fuse(a, b) {
                    // a = 0, b = 0 and c = 0 placements.
                    for (x, y, z, w) in [
                        (Charge::vacuum(), a, b, d),
                        (a, Charge::vacuum(), b, d),
                        (a, b, Charge::vacuum(), d),
                    ] {
                        let block = th.f_matrix(x, y, z, w).unwrap();
                        assert_eq!(block.mat.nrows(), 1);
                        assert_eq!(block.mat.ncols(), 1);
                        assert!(
                            (block.mat[[0, 0]] - 1.0).abs() < 1e-12,
                            "vacuum block ({ta},{tb}) → {}",
                            block.mat[[0, 0]]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frozen_k3_charge_one_block() {
        let th = theory(3);
        let one = th.charge(2).unwrap();
        let block = th.f_matrix(one, one, one, one).unwrap();
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        assert_eq!(block.mat.nrows(), 2);
        let want = [
            [1.0 / phi, 1.0 / phi.sqrt()],
            [1.0 / phi.sqrt(), -1.0 / phi],
        ];
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (block.mat[[i, j]] - want[i][j]).abs() < 1e-12,
                    "entry ({i},{j}) = {} want {}",
                    block.mat[[i, j]],
                    want[i][j]
                );
            }
        }
        // Row/column labels are the two fusion channels of 1 ⊗ 1.
        assert_eq!(block.rows()[0].twice(), 0);
        assert_eq!(block.rows()[1].twice(), 2);
    }

    #[test]
    fn k5_half_charge_block_entries_are_qint_ratios() {
        // For a = b = c = d = ½ the block is fixed by q-integer ratios:
        // entries (±1/d, √⌊3⌋/d; √⌊3⌋/d, 1/d) with d = ⌊2⌋ up to the frozen
        // sign convention. Magnitudes are pinned here; the sign pattern is
        // pinned by orthogonality plus the pentagon (checked elsewhere).
        let th = theory(5);
        let half = th.charge(1).unwrap();
        let block = th.f_matrix(half, half, half, half).unwrap();
        let d = th.qint(2);
        let off = th.qint(3).sqrt() / d;
        assert_eq!(block.mat.nrows(), 2);
        assert!((block.mat[[0, 0]].abs() - 1.0 / d).abs() < 1e-12);
        assert!((block.mat[[0, 1]].abs() - off).abs() < 1e-12);
        assert!((block.mat[[1, 0]].abs() - off).abs() < 1e-12);
        assert!((block.mat[[1, 1]].abs() - 1.0 / d).abs() < 1e-12);
    }

    #[test]
    fn all_blocks_orthogonal_small_levels() {
        for k in [1, 2, 3, 5, 8] {
            let th = theory(k);
            for ta in 0..=k {
                for tb in 0..=k {
                    for tc in 0..=k {
                        for td in 0..=k {
                            let (a, b, c, d) = (
                                Charge { twice: ta },
                                Charge { twice: tb },
                                Charge { twice: tc },
                                Charge { twice: td },
                            );
                            if let Ok(block) = th.f_matrix(a, b, c, d) {
                                assert!(
                                    block.unitarity_defect() < 1e-12,
                                    "k={k} block ({ta},{tb},{tc};{td}) defect {}",
                                    block.unitarity_defect()
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn uniform_label_blocks_are_symmetric() {
        for k in [2, 3, 5, 8] {
            let th = theory(k);
            for t in 0..=k {
                let c = Charge { twice: t };
                if let Ok(block) = th.f_matrix(c, c, c, c) {
                    for i in 0..block.mat.nrows() {
                        for j in 0..block.mat.ncols() {
                            assert!(
                                (block.mat[[i, j]] - block.mat[[j, i]]).abs() < 1e-12,
                                "k={k} t={t} asymmetric at ({i},{j})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_block_is_an_error() {
        let th = theory(3);
        let half = th.charge(1).unwrap();
        let one = th.charge(2).unwrap();
        // d = 1 is not reachable from ½ ⊗ ½ ⊗ ½ ... pick an inadmissible d:
        // total of three halves has odd twice-value, so d = 1 (twice 2) with
        // three charge-½ labels is parity-forbidden.
        assert!(th.f_matrix(half, half, half, one).is_err());
    }

    #[test]
    fn on_demand_blocks_match_eager_table() {
        // Levels above the eager-table bound compute blocks on demand; the
        // two code paths must agree bit-for-bit where levels overlap in
        // charge range.
        let eager = theory(6);
        let lazy_level = theory(6);
        // Same level: compare table lookups against direct computation.
        for ta in 0..=6u32 {
            for tb in 0..=6u32 {
                for tc in 0..=6u32 {
                    for td in 0..=6u32 {
                        let (a, b, c, d) = (
                            Charge { twice: ta },
                            Charge { twice: tb },
                            Charge { twice: tc },
                            Charge { twice: td },
                        );
                        let direct = compute_block(&lazy_level, a, b, c, d);
                        let table = eager.f_matrix(a, b, c, d);
                        match (direct, table) {
                            (None, Err(_)) => {}
                            (Some(x), Ok(y)) => {
                                assert_eq!(x.mat, y.mat);
                            }
                            (x, y) => panic!("mismatch at ({ta},{tb},{tc},{td}): {x:?} vs {y:?}"),
                        }
                    }
                }
            }
        }
    }
}
