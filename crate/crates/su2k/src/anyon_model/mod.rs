//! Exact algebraic data of the su(2)_k theory.
//!
//! Charges, fusion rules, q-integers, fusion-path bases, F- and R-tensors,
//! braid-generator matrices, and the pentagon/hexagon consistency checks.
//!
//! All charge arithmetic is exact: a charge is stored as *twice* its value
//! (`twice_s`), so admissibility conditions are integer interval checks and
//! no half-integer rounding can occur. Floating point enters only in tensor
//! values (q-integers, 6j symbols, exchange phases).

mod consistency;
mod f;
mod generators;
mod paths;
mod r;

pub use consistency::{check_consistency, ConsistencyReport};
pub use f::FBlock;
pub use generators::braid_generator;
pub use paths::{transfer_count, FusionPath};

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest supported level. Tensor-table precomputation grows steeply with
/// k; the cap keeps construction bounded without excluding any test.
pub const MAX_LEVEL: u32 = 64;

/// Levels up to this bound get an eagerly built F-block table at
/// [`Theory::new`] time; larger levels compute blocks on demand (correct but
/// slower for whole-theory sweeps such as [`check_consistency`]).
const EAGER_F_TABLE_MAX: u32 = 20;

/// The level k of the theory. Valid charges are `0 ..= k` in twice-integer
/// units; the deformation parameter `q = exp(i·2π/(k+2))` is always derived,
/// never stored.
///
/// The model layer accepts `k ≥ 1` (k = 1 has only vacuum and the charge-1/2
/// object with `½ ⊗ ½ = {0}` — trivial content, but well-defined); gate
/// compilation layers impose their stricter `k ≥ 3, k ≠ 4` rules themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Level {
    k: u32,
}

impl Level {
    /// Validates `1 ≤ k ≤ 64`.
    pub fn new(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidLevel {
                k: k as i64,
                reason: "k must be at least 1",
            });
        }
        if k > MAX_LEVEL {
            return Err(Error::InvalidLevel {
                k: k as i64,
                reason: "k is capped at 64 (tensor tables grow too fast beyond)",
            });
        }
        Ok(Level { k })
    }

    /// The level k.
    pub fn k(&self) -> u32 {
        self.k
    }
}

/// A topological charge, stored exactly as twice its spin-like value:
/// `twice_s = 0` is the vacuum, `twice_s = 1` is charge 1/2, and so on up to
/// `twice_s = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Charge {
    twice: u32,
}

impl Charge {
    /// Validates `0 ≤ twice_s ≤ k` at the given level.
    pub fn from_twice(twice: u32, level: Level) -> Result<Self> {
        if twice > level.k() {
            return Err(Error::InvalidCharge {
                twice: twice as i64,
                k: level.k(),
            });
        }
        Ok(Charge { twice })
    }

    /// The vacuum charge (twice_s = 0), valid at every level.
    pub fn vacuum() -> Self {
        Charge { twice: 0 }
    }

    /// Twice the charge value.
    pub fn twice(&self) -> u32 {
        self.twice
    }

    /// Whether this is the vacuum charge.
    pub fn is_vacuum(&self) -> bool {
        self.twice == 0
    }
}

impl std::fmt::Display for Charge {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice % 2 == 0 {
            write!(out, "{}", self.twice / 2)
        } else {
            write!(out, "{}/2", self.twice)
        }
    }
}

/// An ordered, non-empty list of objects (anyons or rigid composites), each
/// carrying a definite topological charge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjectList {
    charges: Vec<Charge>,
}

impl ObjectList {
    /// Builds an object list; rejects the empty list.
    pub fn new(charges: Vec<Charge>) -> Result<Self> {
        if charges.is_empty() {
            return Err(Error::BasisMismatch("object list must be non-empty".into()));
        }
        Ok(ObjectList { charges })
    }

    /// `n` copies of the same charge.
    pub fn uniform(charge: Charge, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BasisMismatch("object list must be non-empty".into()));
        }
        Ok(ObjectList {
            charges: vec![charge; n],
        })
    }

    /// The charges in order.
    pub fn charges(&self) -> &[Charge] {
        &self.charges
    }

    /// Number of objects.
    pub fn len(&self) -> usize {
        self.charges.len()
    }

    /// Always false by construction; present for idiomatic completeness.
    pub fn is_empty(&self) -> bool {
        self.charges.is_empty()
    }

    /// The list with the objects at positions `i`, `i+1` exchanged
    /// (0-based `i`).
    pub fn swapped(&self, i: usize) -> Result<Self> {
        if i + 1 >= self.charges.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                what: format!("swap position in a list of {} objects", self.charges.len()),
            });
        }
        let mut charges = self.charges.clone();
        charges.swap(i, i + 1);
        Ok(ObjectList { charges })
    }
}

/// The immutable tensor data of su(2)_k at a fixed level: q-integer and
/// q-factorial tables plus (for small k) a precomputed F-block table.
///
/// A `Theory` is safe for unrestricted concurrent reads once constructed;
/// construction itself is single-threaded.
#[derive(Debug)]
pub struct Theory {
    level: Level,
    /// `qint[m]` for `m` in `0 ..= k+1`.
    qints: Vec<f64>,
    /// `qfact[n] = ∏_{m=1..n} qint[m]` for `n` in `0 ..= k+1`.
    qfacts: Vec<f64>,
    /// Eager F-block table for `k ≤ EAGER_F_TABLE_MAX`, else `None`.
    f_table: Option<f::FTable>,
}

impl Theory {
    /// Builds the tensor data for a level.
    pub fn new(level: Level) -> Self {
        let k = level.k();
        let denom = (PI / (k as f64 + 2.0)).sin();
        let mut qints = Vec::with_capacity(k as usize + 2);
        let mut qfacts = Vec::with_capacity(k as usize + 2);
        qints.push(0.0);
        qfacts.push(1.0);
        for m in 1..=(k + 1) {
            let q = (PI * m as f64 / (k as f64 + 2.0)).sin() / denom;
            qints.push(q);
            let prev = *qfacts.last().unwrap();
            qfacts.push(prev * q);
        }
        let mut theory = Theory {
            level,
            qints,
            qfacts,
            f_table: None,
        };
        if k <= EAGER_F_TABLE_MAX {
            theory.f_table = Some(f::FTable::build(&theory));
        }
        theory
    }

    /// The theory's level.
    pub fn level(&self) -> Level {
        self.level
    }

    /// Shorthand for `self.level().k()`.
    pub fn k(&self) -> u32 {
        self.level.k()
    }

    /// Validates a twice-integer charge at this theory's level.
    pub fn charge(&self, twice: u32) -> Result<Charge> {
        Charge::from_twice(twice, self.level)
    }

    /// The q-integer `⌊m⌋_q = (q^{m/2} − q^{−m/2})/(q^{1/2} − q^{−1/2})`
    /// evaluated as the real ratio `sin(πm/(k+2)) / sin(π/(k+2))`.
    ///
    /// `qint(2)` is the quantum dimension of the charge-1/2 object,
    /// `2·cos(π/(k+2))`.
    pub fn qint(&self, m: u32) -> f64 {
        if (m as usize) < self.qints.len() {
            self.qints[m as usize]
        } else {
            (PI * m as f64 / (self.k() as f64 + 2.0)).sin() / (PI / (self.k() as f64 + 2.0)).sin()
        }
    }

    /// The q-factorial `⌊n⌋_q!` for `n ≤ k+1` (all values positive there).
    pub(crate) fn qfact(&self, n: u32) -> f64 {
        debug_assert!(
            (n as usize) < self.qfacts.len(),
            "q-factorial argument {n} exceeds k+1"
        );
        self.qfacts[n as usize]
    }

    /// The fusion rule: admissible total charges of `a ⊗ b`, ascending.
    ///
    /// In twice-integer units the outcomes run from `|t_a − t_b|` to
    /// `min(t_a + t_b, 2k − t_a − t_b)` in steps of 2.
    pub fn fuse(&self, a: Charge, b: Charge) -> Vec<Charge> {
        let ta = a.twice() as i64;
        let tb = b.twice() as i64;
        let lo = (ta - tb).abs();
        let hi = (ta + tb).min(2 * self.k() as i64 - ta - tb);
        let mut out = Vec::new();
        let mut t = lo;
        while t <= hi {
            out.push(Charge { twice: t as u32 });
            t += 2;
        }
        out
    }

    /// Whether `c` is an admissible fusion outcome of `a ⊗ b`.
    pub fn admissible(&self, a: Charge, b: Charge, c: Charge) -> bool {
        let ta = a.twice() as i64;
        let tb = b.twice() as i64;
        let tc = c.twice() as i64;
        tc >= (ta - tb).abs()
            && tc <= ta + tb
            && tc <= 2 * self.k() as i64 - ta - tb
            && (ta + tb + tc) % 2 == 0
    }

    /// All fusion paths of an object list, optionally restricted to a total
    /// charge, ordered lexicographically on the intermediate-charge vectors.
    ///
    /// This ordering is the canonical basis order used by every matrix in
    /// the crate.
    pub fn enumerate_paths(&self, objects: &ObjectList, total: Option<Charge>) -> Vec<FusionPath> {
        paths::enumerate(self, objects, total)
    }

    /// The recoupling block `F^{abc}_d`: rows labeled by `e ∈ fuse(a,b)`
    /// with `d ∈ fuse(e,c)`, columns by `f ∈ fuse(b,c)` with `d ∈ fuse(a,f)`,
    /// relating `|((ab)_e c)_d⟩ = Σ_f F[e,f] |(a(bc)_f)_d⟩`.
    ///
    /// Every block is real orthogonal; blocks with a vacuum among `a, b, c`
    /// are the 1×1 identity `[1]`.
    pub fn f_matrix(&self, a: Charge, b: Charge, c: Charge, d: Charge) -> Result<FBlock> {
        match &self.f_table {
            Some(table) => table
                .get(a, b, c, d)
                .cloned()
                .ok_or(Error::EmptyBlock {
                    a: a.twice(),
                    b: b.twice(),
                    c: c.twice(),
                    d: d.twice(),
                }),
            None => f::compute_block(self, a, b, c, d).ok_or(Error::EmptyBlock {
                a: a.twice(),
                b: b.twice(),
                c: c.twice(),
                d: d.twice(),
            }),
        }
    }

    /// Borrowing F-block lookup used by hot loops when the eager table
    /// exists; falls back to owned computation otherwise.
    pub(crate) fn f_block_ref(&self, a: Charge, b: Charge, c: Charge, d: Charge) -> Option<FRef<'_>> {
        match &self.f_table {
            Some(table) => table.get(a, b, c, d).map(FRef::Borrowed),
            None => f::compute_block(self, a, b, c, d).map(FRef::Owned),
        }
    }

    /// The exchange eigenvalue `R^{ab}_c` in fusion channel `c`, under the
    /// frozen convention
    /// `R^{ab}_c = (−1)^{a+b−c} · q^{(c(c+1) − a(a+1) − b(b+1))/2}`.
    pub fn r_phase(&self, a: Charge, b: Charge, c: Charge) -> Result<Complex64> {
        r::r_phase(self, a, b, c)
    }

    /// The gauge-invariant monodromy phase
    /// `m(a,b,c) = R^{ba}_c · R^{ab}_c = q^{c(c+1) − a(a+1) − b(b+1)}`.
    pub fn monodromy(&self, a: Charge, b: Charge, c: Charge) -> Result<Complex64> {
        let r1 = r::r_phase(self, a, b, c)?;
        let r2 = r::r_phase(self, b, a, c)?;
        Ok(r1 * r2)
    }

    /// Replaces objects `i`, `i+1` (0-based) by a single rigid composite of
    /// the given fusion channel.
    pub fn fuse_adjacent(&self, objects: &ObjectList, i: usize, channel: Charge) -> Result<ObjectList> {
        let charges = objects.charges();
        if i + 1 >= charges.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                what: format!("fuse position in a list of {} objects", charges.len()),
            });
        }
        if !self.admissible(charges[i], charges[i + 1], channel) {
            return Err(Error::InadmissibleChannel {
                twice_a: charges[i].twice(),
                twice_b: charges[i + 1].twice(),
                twice_channel: channel.twice(),
            });
        }
        let mut out = Vec::with_capacity(charges.len() - 1);
        out.extend_from_slice(&charges[..i]);
        out.push(channel);
        out.extend_from_slice(&charges[i + 2..]);
        ObjectList::new(out)
    }
}

/// Borrowed-or-owned F block, so hot loops avoid cloning when the eager
/// table is present.
pub(crate) enum FRef<'a> {
    Borrowed(&'a FBlock),
    Owned(FBlock),
}

impl std::ops::Deref for FRef<'_> {
    type Target = FBlock;
    fn deref(&self) -> &FBlock {
        match self {
            FRef::Borrowed(b) => b,
            FRef::Owned(b) => b,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theory(k: u32) -> Theory {
        Theory::new(Level::new(k).unwrap())
    }

    #[test]
    fn level_bounds() {
        assert!(Level::new(0).is_err());
        assert!(Level::new(1).is_ok());
        assert!(Level::new(64).is_ok());
        assert!(Level::new(65).is_err());
    }

    #[test]
    fn charge_bounds() {
        let lvl = Level::new(3).unwrap();
        assert!(Charge::from_twice(0, lvl).is_ok());
        assert!(Charge::from_twice(3, lvl).is_ok());
        assert!(Charge::from_twice(4, lvl).is_err());
    }

    #[test]
    fn qint_unity_for_m_one() {
        for k in [1, 2, 3, 5, 8, 14, 64] {
            assert!((theory(k).qint(1) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn qint_golden_ratio_at_k3() {
        // Quantum dimension of the charge-1/2 object at k=3.
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        assert!((theory(3).qint(2) - phi).abs() < 1e-10);
        assert!((theory(3).qint(2) - 1.618_033_988_7).abs() < 1e-9);
    }

    #[test]
    fn qint_frozen_values_at_k5() {
        // Independent oracle: direct complex evaluation of
        // (q^{m/2} − q^{−m/2})/(q^{1/2} − q^{−1/2}) at q = exp(i·2π/7).
        let q_arg = 2.0 * PI / 7.0;
        let complex_qint = |m: f64| {
            let num = Complex64::from_polar(1.0, q_arg * m / 2.0)
                - Complex64::from_polar(1.0, -q_arg * m / 2.0);
            let den = Complex64::from_polar(1.0, q_arg / 2.0)
                - Complex64::from_polar(1.0, -q_arg / 2.0);
            let v = num / den;
            assert!(v.im.abs() < 1e-14);
            v.re
        };
        let th = theory(5);
        assert!((th.qint(2) - complex_qint(2.0)).abs() < 1e-14);
        assert!((th.qint(3) - complex_qint(3.0)).abs() < 1e-14);
        assert!((th.qint(2) - 1.801_937_735_8).abs() < 1e-9);
        assert!((th.qint(3) - 2.246_979_603_7).abs() < 1e-9);
        // The charge-1/2 quantum dimension is 2·cos(π/(k+2)).
        assert!((th.qint(2) - 2.0 * (PI / 7.0).cos()).abs() < 1e-14);
    }

    #[test]
    fn qfact_positive_throughout_table() {
        for k in [1, 2, 3, 5, 8, 14] {
            let th = theory(k);
            for n in 0..=(k + 1) {
                assert!(th.qfact(n) > 0.0, "qfact({n}) at k={k}");
            }
        }
    }

    #[test]
    fn fuse_half_half() {
        let th = theory(3);
        let half = th.charge(1).unwrap();
        let out = th.fuse(half, half);
        let twices: Vec<u32> = out.iter().map(|c| c.twice()).collect();
        assert_eq!(twices, vec![0, 2]);
    }

    #[test]
    fn fuse_one_one_truncates_with_level() {
        let th3 = theory(3);
        let one3 = th3.charge(2).unwrap();
        assert_eq!(
            th3.fuse(one3, one3).iter().map(|c| c.twice()).collect::<Vec<_>>(),
            vec![0, 2]
        );
        let th5 = theory(5);
        let one5 = th5.charge(2).unwrap();
        assert_eq!(
            th5.fuse(one5, one5).iter().map(|c| c.twice()).collect::<Vec<_>>(),
            vec![0, 2, 4]
        );
    }

    #[test]
    fn fuse_max_charge_with_itself_is_vacuum() {
        for k in [2, 3, 5, 8, 14] {
            let th = theory(k);
            let top = th.charge(k).unwrap();
            let out = th.fuse(top, top);
            assert_eq!(out.len(), 1);
            assert!(out[0].is_vacuum());
        }
    }

    #[test]
    fn fuse_never_empty_for_valid_charges() {
        for k in 1..=8 {
            let th = theory(k);
            for ta in 0..=k {
                for tb in 0..=k {
                    let a = th.charge(ta).unwrap();
                    let b = th.charge(tb).unwrap();
                    assert!(!th.fuse(a, b).is_empty(), "fuse({ta},{tb}) empty at k={k}");
                }
            }
        }
    }

    #[test]
    fn fuse_adjacent_channels() {
        let th = theory(3);
        let half = th.charge(1).unwrap();
        let objs = ObjectList::uniform(half, 4).unwrap();
        let fused0 = th.fuse_adjacent(&objs, 0, Charge::vacuum()).unwrap();
        assert_eq!(
            fused0.charges().iter().map(|c| c.twice()).collect::<Vec<_>>(),
            vec![0, 1, 1]
        );
        let one = th.charge(2).unwrap();
        let fused1 = th.fuse_adjacent(&objs, 1, one).unwrap();
        assert_eq!(
            fused1.charges().iter().map(|c| c.twice()).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        // Channel 2 is not admissible for ½ ⊗ ½ at k=3 (truncation).
        let two = th.charge(3).unwrap();
        assert!(th.fuse_adjacent(&objs, 0, two).is_err());
    }
}
