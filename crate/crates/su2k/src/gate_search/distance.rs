//! Operator-norm distances between unitaries, minimized over global phase.
//!
//! Everything here is exact linear algebra on small dense matrices (sector
//! dimensions never exceed a few dozen), built on a cyclic Jacobi
//! eigensolver for complex Hermitian matrices — no external solver.

use ndarray::{Array2, ArrayView2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::simulator::SectorUnitary;

/// Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix,
/// by cyclic Jacobi rotations.
pub fn hermitian_eigen(h: &Array2<Complex64>) -> (Vec<f64>, Array2<Complex64>) {
    let n = h.dim().0;
    assert_eq!(h.dim().0, h.dim().1, "hermitian_eigen needs a square matrix");
    let mut a = h.clone();
    let mut v = Array2::<Complex64>::eye(n);
    let scale: f64 = a.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[[p, q]].norm_sqr();
            }
        }
        if off.sqrt() < 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                if apq.norm() < 1e-18 * scale {
                    continue;
                }
                let app = a[[p, p]].re;
                let aqq = a[[q, q]].re;
                let omega = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Columns: [p q] ← [p q]·[[c, s·ω], [−s·ω̄, c]]
                for r in 0..n {
                    let arp = a[[r, p]];
                    let arq = a[[r, q]];
                    a[[r, p]] = arp * c - arq * (s * omega.conj());
                    a[[r, q]] = arp * (s * omega) + arq * c;
                    let vrp = v[[r, p]];
                    let vrq = v[[r, q]];
                    v[[r, p]] = vrp * c - vrq * (s * omega.conj());
                    v[[r, q]] = vrp * (s * omega) + vrq * c;
                }
                // Rows: the conjugate-transpose rotation from the left.
                for r in 0..n {
                    let apr = a[[p, r]];
                    let aqr = a[[q, r]];
                    a[[p, r]] = apr * c - aqr * (s * omega);
                    a[[q, r]] = apr * (s * omega.conj()) + aqr * c;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|i| a[[i, i]].re).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let mut sorted_vecs = Array2::<Complex64>::zeros((n, n));
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            sorted_vecs[[r, new]] = v[[r, old]];
        }
    }
    (sorted_vals, sorted_vecs)
}

/// Largest singular value.
pub fn spectral_norm(m: ArrayView2<Complex64>) -> f64 {
    let (rows, cols) = m.dim();
    if rows == 0 || cols == 0 {
        return 0.0;
    }
    // Gram matrix on the smaller side.
    let gram = if cols <= rows {
        let mut g = Array2::<Complex64>::zeros((cols, cols));
        for i in 0..cols {
            for j in 0..cols {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..rows {
                    acc += m[[r, i]].conj() * m[[r, j]];
                }
                g[[i, j]] = acc;
            }
        }
        g
    } else {
        let mut g = Array2::<Complex64>::zeros((rows, rows));
        for i in 0..rows {
            for j in 0..rows {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..cols {
                    acc += m[[i, c]] * m[[j, c]].conj();
                }
                g[[i, j]] = acc;
            }
        }
        g
    };
    let (vals, _) = hermitian_eigen(&gram);
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Eigenphases of a unitary matrix, via simultaneous diagonalization of its
/// commuting Hermitian and anti-Hermitian parts.
pub fn unitary_eigenphases(w: &Array2<Complex64>) -> Vec<f64> {
    let n = w.dim().0;
    let mut h = Array2::<Complex64>::zeros((n, n));
    let mut k = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            h[[i, j]] = (w[[i, j]] + w[[j, i]].conj()) / 2.0;
            k[[i, j]] = (w[[i, j]] - w[[j, i]].conj()) / Complex64::new(0.0, 2.0);
        }
    }
    let (hvals, mut vecs) = hermitian_eigen(&h);
    // Within an eigenspace of H the angle is only fixed up to sign; rotate
    // the degenerate block so K is diagonal there too.
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (hvals[end] - hvals[start]).abs() < 1e-9 {
            end += 1;
        }
        if end - start > 1 {
            let g = end - start;
            let mut kblock = Array2::<Complex64>::zeros((g, g));
            for a in 0..g {
                for b in 0..g {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for r in 0..n {
                        for c in 0..n {
                            acc += vecs[[r, start + a]].conj() * k[[r, c]] * vecs[[c, start + b]];
                        }
                    }
                    kblock[[a, b]] = acc;
                }
            }
            let (_, rot) = hermitian_eigen(&kblock);
            let old: Vec<Vec<Complex64>> =
                (0..g).map(|a| (0..n).map(|r| vecs[[r, start + a]]).collect()).collect();
            for b in 0..g {
                for r in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for a in 0..g {
                        acc += old[a][r] * rot[[a, b]];
                    }
                    vecs[[r, start + b]] = acc;
                }
            }
        }
        start = end;
    }
    (0..n)
        .map(|j| {
            let mut cos_acc = Complex64::new(0.0, 0.0);
            let mut sin_acc = Complex64::new(0.0, 0.0);
            for r in 0..n {
                for c in 0..n {
                    let pair = vecs[[r, j]].conj() * vecs[[c, j]];
                    cos_acc += pair * h[[r, c]];
                    sin_acc += pair * k[[r, c]];
                }
            }
            sin_acc.re.atan2(cos_acc.re)
        })
        .collect()
}

/// `min_φ max_j |1 − e^{i(φ+θ_j)}|` for the given eigenphases: the chord of
/// half the smallest arc that contains them all.
fn enclosing_arc_distance(phases: &[f64]) -> f64 {
    if phases.len() <= 1 {
        return 0.0;
    }
    let tau = std::f64::consts::TAU;
    let mut sorted: Vec<f64> = phases.iter().map(|p| p.rem_euclid(tau)).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut max_gap = sorted[0] + tau - sorted[sorted.len() - 1];
    for i in 1..sorted.len() {
        max_gap = max_gap.max(sorted[i] - sorted[i - 1]);
    }
    let radius = (tau - max_gap) / 2.0;
    2.0 * (radius / 2.0).sin()
}

/// Global-phase-minimized operator-norm distance between two unitaries of
/// the same dimension: `min_φ ‖u − e^{iφ}v‖₂`. Exact (eigenphase method).
pub fn min_phase_distance(u: &Array2<Complex64>, v: &Array2<Complex64>) -> f64 {
    assert_eq!(u.dim(), v.dim(), "min_phase_distance needs matching shapes");
    let n = u.dim().0;
    // W = u†v; the distance only depends on its eigenphases.
    let mut w = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..n {
                acc += u[[r, i]].conj() * v[[r, j]];
            }
            w[[i, j]] = acc;
        }
    }
    enclosing_arc_distance(&unitary_eigenphases(&w))
}

/// Distance between sector unitaries on identical bases.
pub fn distance(u: &SectorUnitary, v: &SectorUnitary) -> Result<f64> {
    if u.domain_objects() != v.domain_objects()
        || u.codomain_objects() != v.codomain_objects()
        || u.domain() != v.domain()
        || u.codomain() != v.codomain()
    {
        return Err(Error::BasisMismatch(
            "distance requires identical domain and codomain bases".into(),
        ));
    }
    Ok(min_phase_distance(u.matrix(), v.matrix()))
}

/// Global-phase-minimized spectral distance `min_φ ‖a − e^{iφ}b‖₂` for
/// arbitrary equal-shape matrices (used on computational-column blocks,
/// where `b` need not be an isometry). Grid scan plus golden-section polish;
/// accurate to ~1e-12 on the phase.
pub fn min_phase_column_distance(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    assert_eq!(a.dim(), b.dim(), "min_phase_column_distance needs matching shapes");
    let f = |phi: f64| {
        let rot = Complex64::from_polar(1.0, phi);
        let diff = a - &b.mapv(|e| e * rot);
        spectral_norm(diff.view())
    };
    let n = 1024usize;
    let tau = std::f64::consts::TAU;
    let mut best = (f(0.0), 0.0);
    for i in 1..n {
        let phi = tau * i as f64 / n as f64;
        let val = f(phi);
        if val < best.0 {
            best = (val, phi);
        }
    }
    // Golden-section search in the bracketing window.
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    let mut lo = best.1 - tau / n as f64;
    let mut hi = best.1 + tau / n as f64;
    let mut c = hi - gr * (hi - lo);
    let mut d = lo + gr * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..60 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        }
    }
    best.0.min(fc).min(fd)
}
