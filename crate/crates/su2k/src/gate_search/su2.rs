//! Quaternion coordinates for 2x2 unitaries.
//!
//! Every `U ∈ U(2)` factors as `e^{iγ} · Q(q)` with `q` a unit quaternion and
//! `Q(q) = w·I − i(x σx + y σy + z σz)`. The map `q → Q(q)` carries the
//! Hamilton product to matrix multiplication, so search loops compose gates
//! with 16 real multiplies instead of complex matrix products, and the
//! phase-quotient metric becomes a four-dimensional dot product.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Unit quaternion (w, x, y, z) standing for an SU(2) element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const IDENTITY: Quat = Quat { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    /// Hamilton product; matches matrix multiplication of `Q(a) · Q(b)`.
    #[inline]
    pub fn mul(self, b: Quat) -> Quat {
        let a = self;
        Quat {
            w: a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            x: a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            y: a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            z: a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        }
    }

    #[inline]
    pub fn conj(self) -> Quat {
        Quat { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    #[inline]
    pub fn dot(self, b: Quat) -> f64 {
        self.w * b.w + self.x * b.x + self.y * b.y + self.z * b.z
    }

    #[inline]
    pub fn neg(self) -> Quat {
        Quat { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    /// Renormalizes against drift accumulated over long products.
    #[inline]
    pub fn normalized(self) -> Quat {
        let n = self.dot(self).sqrt();
        Quat { w: self.w / n, x: self.x / n, y: self.y / n, z: self.z / n }
    }

    /// The SU(2) matrix `w·I − i(x σx + y σy + z σz)`.
    pub fn to_matrix(self) -> Array2<Complex64> {
        let Quat { w, x, y, z } = self;
        ndarray::array![
            [Complex64::new(w, -z), Complex64::new(-y, -x)],
            [Complex64::new(y, -x), Complex64::new(w, z)],
        ]
    }
}

/// A 2x2 unitary as `e^{iγ} · Q(q)`.
///
/// The pair (q, γ) and (−q, γ+π) name the same matrix; composition keeps
/// whichever representative arithmetic produces, and the metrics below are
/// invariant under the identification.
#[derive(Debug, Clone, Copy)]
pub struct U2 {
    pub q: Quat,
    pub gamma: f64,
}

impl U2 {
    pub const IDENTITY: U2 = U2 { q: Quat::IDENTITY, gamma: 0.0 };

    /// Splits a unitary matrix into phase and SU(2) parts.
    pub fn from_matrix(m: &Array2<Complex64>) -> Result<U2> {
        if m.dim() != (2, 2) {
            return Err(Error::BasisMismatch(format!(
                "expected a 2x2 matrix, got {}x{}",
                m.dim().0,
                m.dim().1
            )));
        }
        let det = m[[0, 0]] * m[[1, 1]] - m[[0, 1]] * m[[1, 0]];
        if (det.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::BasisMismatch(format!(
                "matrix is not unitary: |det| = {}",
                det.norm()
            )));
        }
        let gamma = det.arg() / 2.0;
        let phase = Complex64::from_polar(1.0, -gamma);
        let u00 = phase * m[[0, 0]];
        let u11 = phase * m[[1, 1]];
        let u01 = phase * m[[0, 1]];
        let u10 = phase * m[[1, 0]];
        let q = Quat {
            w: (u00.re + u11.re) / 2.0,
            x: -(u01.im + u10.im) / 2.0,
            y: (u10.re - u01.re) / 2.0,
            z: (u11.im - u00.im) / 2.0,
        };
        Ok(U2 { q: q.normalized(), gamma })
    }

    pub fn to_matrix(self) -> Array2<Complex64> {
        let mut m = self.q.to_matrix();
        let phase = Complex64::from_polar(1.0, self.gamma);
        m.mapv_inplace(|e| e * phase);
        m
    }

    /// Matrix product `self · rhs` (rhs acts first).
    #[inline]
    pub fn mul(self, rhs: U2) -> U2 {
        U2 { q: self.q.mul(rhs.q), gamma: self.gamma + rhs.gamma }
    }

    #[inline]
    pub fn inverse(self) -> U2 {
        U2 { q: self.q.conj(), gamma: -self.gamma }
    }

    /// Distance after minimizing over global phase: `min_φ ‖A − e^{iφ}B‖₂`.
    ///
    /// The eigenphases of `A†B` sit at `δ ± α` with `cos α = ⟨q_a, q_b⟩`;
    /// the best `φ` centers them at `±α` (or `±(π−α)` after a half-turn),
    /// giving `2 sin(α'/2)` with `cos α' = |⟨q_a, q_b⟩|` — that is,
    /// `√(2 − 2|⟨q_a, q_b⟩|)`.
    #[inline]
    pub fn phase_quotient_distance(self, b: U2) -> f64 {
        let d = self.q.dot(b.q).abs().min(1.0);
        (2.0 - 2.0 * d).sqrt()
    }

    /// Plain operator-norm distance `‖A − B‖₂`, no phase minimization.
    ///
    /// The eigenphases of `A†B` are `δγ ± α`; the norm is the larger chord.
    #[inline]
    pub fn rigid_distance(self, b: U2) -> f64 {
        let dgamma = b.gamma - self.gamma;
        let alpha = self.q.dot(b.q).clamp(-1.0, 1.0).acos();
        let hi = 2.0 * ((dgamma + alpha) / 2.0).sin().abs();
        let lo = 2.0 * ((dgamma - alpha) / 2.0).sin().abs();
        hi.max(lo)
    }
}
