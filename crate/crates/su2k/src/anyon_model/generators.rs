//! Elementary braid-generator matrices in fusion-path bases.

use super::{Charge, ObjectList, Theory};
use crate::error::{Error, Result};
use crate::simulator::SectorUnitary;
use ndarray::Array2;
use num_complex::Complex64;

/// The matrix of the elementary interchange `σ_i` (1-based, exchanging the
/// objects at positions `i−1` and `i` 0-based) in the canonical fusion-path
/// basis, optionally restricted to one total-charge sector.
///
/// `σ_1` acts diagonally by the exchange phase on the first fusion channel;
/// `σ_i` for `i ≥ 2` is the R-phase conjugated into position by one F-move
/// on each side. When the two exchanged charges differ, the codomain basis
/// belongs to the swapped object list; the returned [`SectorUnitary`]
/// carries both bases.
pub fn braid_generator(
    theory: &Theory,
    objects: &ObjectList,
    i: usize,
    total: Option<Charge>,
) -> Result<SectorUnitary> {
    let n = objects.len();
    if i < 1 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            what: format!("braid generator on {n} objects (need 1 ≤ i ≤ {})", n - 1),
        });
    }
    let domain_objects = objects.clone();
    let codomain_objects = objects.swapped(i - 1)?;
    let domain = theory.enumerate_paths(&domain_objects, total);
    let codomain = theory.enumerate_paths(&codomain_objects, total);
    debug_assert_eq!(domain.len(), codomain.len());
    let dim = domain.len();
    let mut matrix = Array2::<Complex64>::zeros((dim, dim));

    let charges = domain_objects.charges();
    let find_codomain = |intermediates: &[Charge]| -> usize {
        codomain
            .binary_search_by(|p| p.intermediates().cmp(intermediates))
            .expect("image path must exist in the codomain basis")
    };

    if i == 1 {
        // Exchange of the first two objects: diagonal phase on the first
        // channel, with the leading intermediate relabeled to the new first
        // object.
        for (col, path) in domain.iter().enumerate() {
            let phase = theory.r_phase(charges[0], charges[1], path.intermediates()[1])?;
            let mut image = path.intermediates().to_vec();
            image[0] = charges[1];
            let row = find_codomain(&image);
            matrix[[row, col]] = phase;
        }
    } else {
        let x = charges[i - 1];
        let y = charges[i];
        for (col, path) in domain.iter().enumerate() {
            let inter = path.intermediates();
            let a = inter[i - 2];
            let e = inter[i - 1];
            let d = inter[i];
            let f_left = theory.f_matrix(a, x, y, d)?;
            let f_right = theory.f_matrix(a, y, x, d)?;
            let e_row = f_left
                .row_index(e)
                .expect("path channel must label a row of its own F block");
            // B[e', e] = Σ_f F^{axy}_d[e,f] · R^{xy}_f · F^{ayx}_d[e',f]
            for (e_prime_idx, e_prime) in f_right.rows().iter().enumerate() {
                let mut coeff = Complex64::new(0.0, 0.0);
                for (f_idx, f) in f_left.cols().iter().enumerate() {
                    let left = f_left.mat[[e_row, f_idx]];
                    if left == 0.0 {
                        continue;
                    }
                    let right = f_right.mat[[e_prime_idx, f_idx]];
                    if right == 0.0 {
                        continue;
                    }
                    coeff += theory.r_phase(x, y, *f)? * (left * right);
                }
                if coeff.norm_sqr() == 0.0 {
                    continue;
                }
                let mut image = inter.to_vec();
                image[i - 1] = *e_prime;
                let row = find_codomain(&image);
                matrix[[row, col]] = coeff;
            }
        }
    }

    SectorUnitary::new(domain_objects, codomain_objects, domain, codomain, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon_model::Level;

    fn theory(k: u32) -> Theory {
        Theory::new(Level::new(k).unwrap())
    }

    #[test]
    fn sigma_one_is_diagonal_on_the_qubit() {
        // Four charge-1/2 anyons at total charge 0: σ_1 is
        // diag(R^{½½}_0, R^{½½}_1) in the canonical basis.
        for k in [3, 5] {
            let th = theory(k);
            let half = th.charge(1).unwrap();
            let objs = ObjectList::uniform(half, 4).unwrap();
            let g = braid_generator(&th, &objs, 1, Some(Charge::vacuum())).unwrap();
            let r0 = th.r_phase(half, half, th.charge(0).unwrap()).unwrap();
            let r1 = th.r_phase(half, half, th.charge(2).unwrap()).unwrap();
            assert!((g.matrix()[[0, 0]] - r0).norm() < 1e-14);
            assert!((g.matrix()[[1, 1]] - r1).norm() < 1e-14);
            assert!(g.matrix()[[0, 1]].norm() < 1e-14);
            assert!(g.matrix()[[1, 0]].norm() < 1e-14);
        }
    }

    #[test]
    fn top_pair_generator_equals_bottom_pair_generator_on_the_qubit() {
        // Braiding the top two anyons of the four-anyon qubit produces the
        // same unitary as braiding the bottom two.
        for k in [3, 5, 6] {
            let th = theory(k);
            let half = th.charge(1).unwrap();
            let objs = ObjectList::uniform(half, 4).unwrap();
            let bottom = braid_generator(&th, &objs, 1, Some(Charge::vacuum())).unwrap();
            let top = braid_generator(&th, &objs, 3, Some(Charge::vacuum())).unwrap();
            let diff = (&top.matrix().clone() - &bottom.matrix().clone())
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            assert!(diff < 1e-12, "k={k}: max entry diff {diff}");
        }
    }

    #[test]
    fn middle_generator_is_unitary_and_nondiagonal() {
        for k in [3, 5, 8] {
            let th = theory(k);
            let half = th.charge(1).unwrap();
            let objs = ObjectList::uniform(half, 4).unwrap();
            let g = braid_generator(&th, &objs, 2, Some(Charge::vacuum())).unwrap();
            assert!(g.unitarity_defect() < 1e-12);
            let off = g.matrix()[[0, 1]].norm() + g.matrix()[[1, 0]].norm();
            assert!(off > 1e-3, "k={k}: σ_2 unexpectedly diagonal");
        }
    }

    #[test]
    fn generators_are_unitary_across_mixed_contexts() {
        let th = theory(5);
        let charges: Vec<Charge> = (0..=3).map(|t| th.charge(t).unwrap()).collect();
        for a in &charges {
            for b in &charges {
                for c in &charges {
                    let objs = ObjectList::new(vec![*a, *b, *c]).unwrap();
                    for i in 1..=2 {
                        let g = braid_generator(&th, &objs, i, None).unwrap();
                        assert!(
                            g.unitarity_defect() < 1e-12,
                            "σ_{i} on ({},{},{})",
                            a.twice(),
                            b.twice(),
                            c.twice()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn heterogeneous_exchange_swaps_the_context() {
        let th = theory(5);
        let one = th.charge(2).unwrap();
        let half = th.charge(1).unwrap();
        let objs = ObjectList::new(vec![one, half]).unwrap();
        let g = braid_generator(&th, &objs, 1, None).unwrap();
        assert_eq!(
            g.codomain_objects().charges(),
            &[half, one],
            "codomain must carry the swapped list"
        );
        // Diagonal in the (relabeled) channel basis with R^{1,½} phases.
        for (idx, path) in g.domain().iter().enumerate() {
            let want = th.r_phase(one, half, path.intermediates()[1]).unwrap();
            assert!((g.matrix()[[idx, idx]] - want).norm() < 1e-14);
        }
    }

    #[test]
    fn index_out_of_range_is_an_error() {
        let th = theory(3);
        let half = th.charge(1).unwrap();
        let objs = ObjectList::uniform(half, 3).unwrap();
        assert!(braid_generator(&th, &objs, 0, None).is_err());
        assert!(braid_generator(&th, &objs, 3, None).is_err());
    }
}
