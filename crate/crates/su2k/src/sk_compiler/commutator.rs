//! The balanced group-commutator step: writing a near-identity rotation as
//! `v·w·v†·w†` with `v`, `w` rotations of roughly the square-root size.
//!
//! For rotations by equal angles φ about the x̂ and ŷ axes the commutator is,
//! exactly, a rotation by θ with `sin(θ/2) = 2·sin²(φ/2)·√(1 − sin⁴(φ/2))`
//! about a fixed computable axis. That relation is solved in closed form for
//! `sin(φ/2)`, and the whole construction is conjugated so the commutator's
//! axis lands on the target's axis. No iteration, no approximation: the
//! reconstruction is exact up to floating-point rounding, and the factor
//! angles scale as `φ = O(√θ)` — the balance that drives the ε^{3/2}
//! refinement contraction.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate_search::{spectral_norm, Quat, U2};

/// Smallest `cos(θ/2)` accepted: rotations by more than 2π/3 (spectral
/// distance 1 from the identity) are refused. Any ε-net with ε₀ ≤ 1 keeps
/// refinement residuals inside this domain, with margin from the `w = 0`
/// hemisphere boundary where the sign-reduced representative degenerates.
const MIN_HALF_COS: f64 = 0.5 - 1e-12;

/// Residual angles below this reconstruct to identities outright; the
/// reconstruction error is then the angle itself, far below the 1e-10
/// contract.
const NEGLIGIBLE_SIN: f64 = 1e-12;

/// Decomposes the rotation `q` (unit quaternion, `q.w ≥ 0` representative)
/// into balanced commutator factors: `[v, w] = v·w·v⁻¹·w⁻¹` equals `q`
/// exactly, up to rounding. Shared by the public matrix interface and the
/// refinement recursion, which works on quaternions throughout.
pub(super) fn gc_quat(q: Quat) -> Result<(Quat, Quat)> {
    if q.w < MIN_HALF_COS {
        return Err(Error::Refused(format!(
            "rotation is too far from the identity for the balanced commutator \
             (cos(θ/2) = {:.6} < 1/2, i.e. θ > 2π/3); approximate it with a \
             net element first",
            q.w
        )));
    }
    // sin(θ/2) is the vector-part norm of a unit quaternion.
    let target_sin = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
    if target_sin < NEGLIGIBLE_SIN {
        return Ok((Quat::IDENTITY, Quat::IDENTITY));
    }
    let cap_s = target_sin.min(1.0);
    // Solve 2·sin²(φ/2)·√(1 − sin⁴(φ/2)) = S: with t = sin⁴(φ/2) this is
    // 4t(1−t) = S², whose small root is t = S²/(2(1+√(1−S²))) — written in
    // the cancellation-free form so tiny S keeps full relative precision.
    let t = cap_s * cap_s / (2.0 * (1.0 + (1.0 - cap_s * cap_s).sqrt()));
    let s = t.sqrt().sqrt(); // sin(φ/2)
    let c = (1.0 - s * s).sqrt(); // cos(φ/2), positive since t < 1/2
    let v0 = Quat {
        w: c,
        x: s,
        y: 0.0,
        z: 0.0,
    };
    let w0 = Quat {
        w: c,
        x: 0.0,
        y: s,
        z: 0.0,
    };
    // [v0, w0] has vector part ∝ (cs, −cs, c²): axis (s, −s, c)/√(1+s²).
    let mn = (1.0 + s * s).sqrt();
    let m = [s / mn, -s / mn, c / mn];
    let n = [q.x / target_sin, q.y / target_sin, q.z / target_sin];
    let rot = rotation_between(m, n);
    let v = rot.mul(v0).mul(rot.conj());
    let w = rot.mul(w0).mul(rot.conj());
    Ok((v, w))
}

/// The rotation carrying unit vector `m` onto unit vector `n`, about the
/// axis `m × n`. For antipodal inputs (where that axis vanishes) the
/// half-turn axis is the tie-break rule fixed by convention: of the two unit
/// vectors perpendicular to `m` in the xy-plane take the one with azimuth in
/// [0, π), and x̂ itself when `m` is polar.
fn rotation_between(m: [f64; 3], n: [f64; 3]) -> Quat {
    let d = (m[0] * n[0] + m[1] * n[1] + m[2] * n[2]).clamp(-1.0, 1.0);
    let k = [
        m[1] * n[2] - m[2] * n[1],
        m[2] * n[0] - m[0] * n[2],
        m[0] * n[1] - m[1] * n[0],
    ];
    let kn = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if kn <= 1e-14 {
        if d >= 0.0 {
            return Quat::IDENTITY;
        }
        let axis = smallest_azimuth_perp(m);
        return Quat {
            w: 0.0,
            x: axis[0],
            y: axis[1],
            z: axis[2],
        };
    }
    // Half-angle forms are stable for every β away from the antipodal case.
    let cos_half = ((1.0 + d) / 2.0).sqrt();
    let sin_half = ((1.0 - d) / 2.0).sqrt();
    Quat {
        w: cos_half,
        x: sin_half * k[0] / kn,
        y: sin_half * k[1] / kn,
        z: sin_half * k[2] / kn,
    }
}

/// Deterministic perpendicular for the antipodal half-turn: `ẑ × m`
/// normalized, sign-fixed to azimuth [0, π); x̂ when `m` is (anti)polar.
fn smallest_azimuth_perp(m: [f64; 3]) -> [f64; 3] {
    let horiz = (m[0] * m[0] + m[1] * m[1]).sqrt();
    if horiz <= 1e-14 {
        return [1.0, 0.0, 0.0];
    }
    let u = [-m[1] / horiz, m[0] / horiz, 0.0];
    if u[1] > 0.0 || (u[1] == 0.0 && u[0] > 0.0) {
        u
    } else {
        [-u[0], -u[1], 0.0]
    }
}

/// Conjugate transpose of a square complex matrix.
fn dagger(m: &Array2<Complex64>) -> Array2<Complex64> {
    m.t().map(|z| z.conj())
}

/// Decomposes a 2×2 special unitary `u` near the identity into balanced
/// commutator factors: returns `(v, w)` with `u ≈ v·w·v†·w†`, both factors
/// special unitary with `‖v−I‖, ‖w−I‖ = O(√‖u−I‖)`.
///
/// Refuses matrices whose determinant is not 1 (the quaternion construction
/// needs a definite rotation, not a ray) and rotations by more than 2π/3 —
/// too far from the identity for the solve; approximate such targets with a
/// net element first and decompose the residual. The reconstruction
/// `v·w·v†·w†` is checked against `u` to 1e-10 before returning.
pub fn gc_decompose(u: &Array2<Complex64>) -> Result<(Array2<Complex64>, Array2<Complex64>)> {
    let t = U2::from_matrix(u)?;
    if t.gamma.abs() > 1e-10 {
        return Err(Error::Refused(format!(
            "group-commutator decomposition needs a special unitary (det = 1); \
             this matrix's determinant has phase {:.3e}",
            2.0 * t.gamma
        )));
    }
    let (v, w) = gc_quat(t.q)?;
    let vm = v.to_matrix();
    let wm = w.to_matrix();
    let rebuilt = vm.dot(&wm).dot(&dagger(&vm)).dot(&dagger(&wm));
    let err = spectral_norm((&rebuilt - u).view());
    if err > 1e-10 {
        return Err(Error::Internal(format!(
            "commutator reconstruction misses its target by {err:.3e}"
        )));
    }
    Ok((vm, wm))
}
