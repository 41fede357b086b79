//! Whole-theory validation: pentagon and hexagon identities plus unitarity
//! sweeps over every admissible index combination at a level.
//!
//! The pentagon instance checked, for objects `a,b,c,d` with
//! `x ∈ fuse(a,b)`, `y ∈ fuse(x,c)`, `t ∈ fuse(y,d)`, `w ∈ fuse(c,d)`,
//! `v ∈ fuse(a,t)`:
//!
//! ```text
//! Σ_u F^{abc}_y[x,u] · F^{aud}_t[y,v] · F^{bcd}_v[u,w]
//!     = F^{xcd}_t[y,w] · F^{abw}_t[x,v]
//! ```
//!
//! and the hexagon instance, for `e ∈ fuse(a,b)`, `x ∈ fuse(a,c)` (both
//! admissible with the total `d`), in both braiding orientations:
//!
//! ```text
//! R^{ac}_x · Σ_g F^{abc}_d[e,g] · R^{bc}_g · F^{acb}_d[x,g]
//!     = R^{ec}_d · F^{cab}_d[x,e]
//! ```
//!
//! Out-of-range entries are zero on both sides, so the sweeps cover every
//! instance without special-casing sparse blocks.

use super::f::FTable;
use super::generators::braid_generator;
use super::{Charge, FRef, Level, ObjectList, Theory};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Levels up to this bound get a transient full F table for the duration of
/// the check when the theory itself carries none; above it every block is
/// recomputed on demand and a full sweep is correspondingly slow.
const TRANSIENT_F_TABLE_MAX: u32 = 36;

/// Aggregate residuals of a whole-theory consistency sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    /// The level checked.
    pub k: u32,
    /// Largest absolute pentagon-identity residual.
    pub max_pentagon_residual: f64,
    /// Largest absolute hexagon-identity residual (both orientations).
    pub max_hexagon_residual: f64,
    /// Largest unitarity defect over F blocks, exchange phases, and
    /// three-object braid generators.
    pub max_unitarity_defect: f64,
    /// Number of pentagon instances checked.
    pub pentagon_instances: u64,
    /// Number of hexagon instances checked (each orientation counted).
    pub hexagon_instances: u64,
    /// Number of nonempty F blocks checked for unitarity.
    pub f_blocks_checked: u64,
    /// Number of braid-generator matrices checked for unitarity.
    pub generators_checked: u64,
}

impl ConsistencyReport {
    /// Whether all residuals are inside the frozen tolerances: identity
    /// residuals below 1e-10 and unitarity defects below 1e-12.
    pub fn passes(&self) -> bool {
        self.max_pentagon_residual < crate::tol::IDENTITY_LAW
            && self.max_hexagon_residual < crate::tol::IDENTITY_LAW
            && self.max_unitarity_defect < crate::tol::UNITARITY
    }
}

impl std::fmt::Display for ConsistencyReport {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(out, "consistency sweep at k = {}", self.k)?;
        writeln!(
            out,
            "  pentagon  max residual {:.3e} over {} instances",
            self.max_pentagon_residual, self.pentagon_instances
        )?;
        writeln!(
            out,
            "  hexagon   max residual {:.3e} over {} instances",
            self.max_hexagon_residual, self.hexagon_instances
        )?;
        writeln!(
            out,
            "  unitarity max defect   {:.3e} over {} F blocks, {} generators",
            self.max_unitarity_defect, self.f_blocks_checked, self.generators_checked
        )?;
        write!(out, "  verdict: {}", if self.passes() { "PASS" } else { "FAIL" })
    }
}

/// F-block source for sweeps: the theory's own table when present, else a
/// transient table built for the check, else per-call computation.
struct FSource<'a> {
    theory: &'a Theory,
    transient: Option<&'a FTable>,
}

impl<'a> FSource<'a> {
    fn get(&self, a: Charge, b: Charge, c: Charge, d: Charge) -> Option<FRef<'a>> {
        match self.transient {
            Some(table) => table.get(a, b, c, d).map(FRef::Borrowed),
            None => self.theory.f_block_ref(a, b, c, d),
        }
    }
}

#[derive(Default, Clone, Copy)]
struct Partial {
    pentagon: f64,
    pentagon_n: u64,
    hexagon: f64,
    hexagon_n: u64,
    unitarity: f64,
    blocks: u64,
    generators: u64,
}

impl Partial {
    fn merge(self, other: Partial) -> Partial {
        Partial {
            pentagon: self.pentagon.max(other.pentagon),
            pentagon_n: self.pentagon_n + other.pentagon_n,
            hexagon: self.hexagon.max(other.hexagon),
            hexagon_n: self.hexagon_n + other.hexagon_n,
            unitarity: self.unitarity.max(other.unitarity),
            blocks: self.blocks + other.blocks,
            generators: self.generators + other.generators,
        }
    }
}

/// Sweeps every admissible pentagon and hexagon instance and every F-block,
/// exchange-phase, and three-object braid-generator unitarity condition at
/// a level, in parallel over the first object charge.
pub fn check_consistency(level: Level) -> ConsistencyReport {
    let theory = Theory::new(level);
    let transient = if theory.f_table.is_none() && level.k() <= TRANSIENT_F_TABLE_MAX {
        Some(FTable::build(&theory))
    } else {
        None
    };
    let src = FSource {
        theory: &theory,
        transient: transient.as_ref(),
    };
    let all = all_charges(&theory);

    let total = all
        .par_iter()
        .map(|&a| {
            let mut p = Partial::default();
            let (worst, n) = pentagon_for_a(&theory, &src, &all, a);
            p.pentagon = worst;
            p.pentagon_n = n;
            let (worst, n) = hexagon_for_a(&theory, &src, &all, a);
            p.hexagon = worst;
            p.hexagon_n = n;
            let (worst, blocks, gens) = unitarity_for_a(&theory, &src, &all, a);
            p.unitarity = worst;
            p.blocks = blocks;
            p.generators = gens;
            p
        })
        .reduce(Partial::default, Partial::merge);

    ConsistencyReport {
        k: level.k(),
        max_pentagon_residual: total.pentagon,
        max_hexagon_residual: total.hexagon,
        max_unitarity_defect: total.unitarity,
        pentagon_instances: total.pentagon_n,
        hexagon_instances: total.hexagon_n,
        f_blocks_checked: total.blocks,
        generators_checked: total.generators,
    }
}

fn all_charges(theory: &Theory) -> Vec<Charge> {
    (0..=theory.k())
        .map(|t| theory.charge(t).expect("charge within level"))
        .collect()
}

fn entry_or_zero(block: &Option<FRef<'_>>, e: Charge, f: Charge) -> f64 {
    block.as_ref().map_or(0.0, |fb| fb.entry(e, f))
}

fn pentagon_for_a(
    theory: &Theory,
    src: &FSource<'_>,
    all: &[Charge],
    a: Charge,
) -> (f64, u64) {
    let mut worst = 0.0f64;
    let mut count = 0u64;
    for &b in all {
        let fuse_ab = theory.fuse(a, b);
        for &c in all {
            let fuse_bc = theory.fuse(b, c);
            for &d in all {
                let fuse_cd = theory.fuse(c, d);
                for &x in &fuse_ab {
                    for &y in &theory.fuse(x, c) {
                        let Some(f_abc_y) = src.get(a, b, c, y) else {
                            continue;
                        };
                        let c1s: Vec<f64> =
                            fuse_bc.iter().map(|&u| f_abc_y.entry(x, u)).collect();
                        for &t in &theory.fuse(y, d) {
                            let Some(f_xcd_t) = src.get(x, c, d, t) else {
                                continue;
                            };
                            let fuse_at = theory.fuse(a, t);
                            let nv = fuse_at.len();
                            let f_aud: Vec<Option<FRef>> =
                                fuse_bc.iter().map(|&u| src.get(a, u, d, t)).collect();
                            let mut c2s = vec![0.0; fuse_bc.len() * nv];
                            for (ui, slot) in f_aud.iter().enumerate() {
                                if let Some(fb) = slot {
                                    for (vi, &v) in fuse_at.iter().enumerate() {
                                        c2s[ui * nv + vi] = fb.entry(y, v);
                                    }
                                }
                            }
                            let f_bcd: Vec<Option<FRef>> =
                                fuse_at.iter().map(|&v| src.get(b, c, d, v)).collect();
                            for &w in &fuse_cd {
                                let rhs_left = f_xcd_t.entry(y, w);
                                let f_abw_t = src.get(a, b, w, t);
                                for (vi, &v) in fuse_at.iter().enumerate() {
                                    let rhs = rhs_left * entry_or_zero(&f_abw_t, x, v);
                                    let mut lhs = 0.0;
                                    for (ui, &u) in fuse_bc.iter().enumerate() {
                                        let c1 = c1s[ui];
                                        if c1 == 0.0 {
                                            continue;
                                        }
                                        let c2 = c2s[ui * nv + vi];
                                        if c2 == 0.0 {
                                            continue;
                                        }
                                        lhs += c1 * c2 * entry_or_zero(&f_bcd[vi], u, w);
                                    }
                                    worst = worst.max((lhs - rhs).abs());
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    (worst, count)
}

fn hexagon_for_a(
    theory: &Theory,
    src: &FSource<'_>,
    all: &[Charge],
    a: Charge,
) -> (f64, u64) {
    let mut worst = 0.0f64;
    let mut count = 0u64;
    for &b in all {
        let fuse_ab = theory.fuse(a, b);
        for &c in all {
            let fuse_ac = theory.fuse(a, c);
            let fuse_bc = theory.fuse(b, c);
            let r_bc: Vec<Complex64> = fuse_bc
                .iter()
                .map(|&g| theory.r_phase(b, c, g).expect("admissible channel"))
                .collect();
            for &d in all {
                let es: Vec<Charge> = fuse_ab
                    .iter()
                    .copied()
                    .filter(|&e| theory.admissible(e, c, d))
                    .collect();
                if es.is_empty() {
                    continue;
                }
                let xs: Vec<Charge> = fuse_ac
                    .iter()
                    .copied()
                    .filter(|&x| theory.admissible(x, b, d))
                    .collect();
                if xs.is_empty() {
                    continue;
                }
                let f_abc_d = src.get(a, b, c, d);
                let f_acb_d = src.get(a, c, b, d);
                let f_cab_d = src.get(c, a, b, d);
                for &e in &es {
                    let r_ec_d = theory.r_phase(e, c, d).expect("admissible channel");
                    for &x in &xs {
                        let r_ac_x = theory.r_phase(a, c, x).expect("admissible channel");
                        let mut sum_ccw = Complex64::new(0.0, 0.0);
                        let mut sum_cw = Complex64::new(0.0, 0.0);
                        for (gi, &g) in fuse_bc.iter().enumerate() {
                            let prod = entry_or_zero(&f_abc_d, e, g)
                                * entry_or_zero(&f_acb_d, x, g);
                            if prod == 0.0 {
                                continue;
                            }
                            sum_ccw += prod * r_bc[gi];
                            sum_cw += prod * r_bc[gi].conj();
                        }
                        let rhs_f = entry_or_zero(&f_cab_d, x, e);
                        let res_ccw = (r_ac_x * sum_ccw - r_ec_d * rhs_f).norm();
                        let res_cw =
                            (r_ac_x.conj() * sum_cw - r_ec_d.conj() * rhs_f).norm();
                        worst = worst.max(res_ccw).max(res_cw);
                        count += 2;
                    }
                }
            }
        }
    }
    (worst, count)
}

fn unitarity_for_a(
    theory: &Theory,
    src: &FSource<'_>,
    all: &[Charge],
    a: Charge,
) -> (f64, u64, u64) {
    let mut worst = 0.0f64;
    let mut blocks = 0u64;
    let mut generators = 0u64;
    // F blocks whose first label is `a`.
    for &b in all {
        for &c in all {
            for &d in all {
                if let Some(fb) = src.get(a, b, c, d) {
                    worst = worst.max(fb.unitarity_defect());
                    blocks += 1;
                }
            }
        }
    }
    // Exchange phases with first label `a` must be unit modulus.
    for &b in all {
        for ch in theory.fuse(a, b) {
            let r = theory.r_phase(a, b, ch).expect("admissible channel");
            worst = worst.max((r.norm() - 1.0).abs());
        }
    }
    // Braid generators over all three-object contexts starting with `a`,
    // across every total-charge sector at once.
    for &c1 in all {
        for &c2 in all {
            let objects = ObjectList::new(vec![a, c1, c2]).expect("non-empty");
            for i in 1..=2usize {
                let gen = braid_generator(theory, &objects, i, None)
                    .expect("generator on a valid three-object context");
                worst = worst.max(gen.unitarity_defect());
                generators += 1;
            }
        }
    }
    (worst, blocks, generators)
}
