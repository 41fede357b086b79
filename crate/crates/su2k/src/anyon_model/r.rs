//! Exchange phases (R-tensor).
//!
//! Frozen convention: `R^{ab}_c = (−1)^{a+b−c} · q^{(c(c+1) − a(a+1) − b(b+1))/2}`
//! with `q = exp(i·2π/(k+2))`. In twice-integer units the exponent of the
//! unit phase is `π·(t_c(t_c+2) − t_a(t_a+2) − t_b(t_b+2)) / (4(k+2))`.
//!
//! The convention is symmetric in `a, b`, hexagon-consistent with the F
//! gauge of this crate, and makes the monodromy
//! `m(a,b,c) = R^{ba}_c·R^{ab}_c = q^{c(c+1)−a(a+1)−b(b+1)}` manifestly
//! gauge-invariant.

use super::{Charge, Theory};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub(super) fn r_phase(theory: &Theory, a: Charge, b: Charge, c: Charge) -> Result<Complex64> {
    if !theory.admissible(a, b, c) {
        return Err(Error::InadmissibleChannel {
            twice_a: a.twice(),
            twice_b: b.twice(),
            twice_channel: c.twice(),
        });
    }
    let ta = a.twice() as i64;
    let tb = b.twice() as i64;
    let tc = c.twice() as i64;
    // (−1)^{a+b−c}: the exponent (t_a + t_b − t_c)/2 is an integer by parity
    // admissibility.
    let sign = if ((ta + tb - tc) / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let num = (tc * (tc + 2) - ta * (ta + 2) - tb * (tb + 2)) as f64;
    let angle = PI * num / (4.0 * (theory.k() as f64 + 2.0));
    Ok(sign * Complex64::from_polar(1.0, angle))
}
