//! Cross-cutting model properties: the full consistency sweep, naturality of
//! composite braiding, and the winding/phase law on one-dimensional sectors.

use num_complex::Complex64;
use su2k::anyon_model::{check_consistency, Level, ObjectList, Theory};
use su2k::braid_core::BraidWord;
use su2k::simulator::represent;

#[test]
fn consistency_sweep_over_all_supported_small_levels() {
    for k in 2..=16u32 {
        let report = check_consistency(Level::new(k).unwrap());
        assert!(
            report.passes(),
            "level {k} failed: pentagon {:.2e}, hexagon {:.2e}, unitarity {:.2e}",
            report.max_pentagon_residual,
            report.max_hexagon_residual,
            report.max_unitarity_defect
        );
    }
}

/// Passing a neighbor fully around a rigid two-strand composite must act
/// diagonally, with the phase depending only on the composite's channel: the
/// monodromy m(channel, neighbor, total).
#[test]
fn composite_monodromy_matches_single_object_phase() {
    let th = Theory::new(Level::new(5).unwrap());
    let half = th.charge(1).unwrap();
    for x_twice in [1u32, 2, 3] {
        let x = th.charge(x_twice).unwrap();
        let context = ObjectList::new(vec![half, half, x]).unwrap();
        // The neighbor crosses both constituent strands, twice, always with
        // the same chirality: one full pass around the cohesive pair.
        let word = BraidWord::new(context.clone(), vec![(2, 1), (1, 1), (1, 1), (2, 1)]).unwrap();
        for t in 0..=th.k() {
            let total = th.charge(t).unwrap();
            let u = match represent(&th, &word, Some(total)) {
                Ok(u) => u,
                Err(_) => continue, // empty sector
            };
            for (i, path) in u.domain().iter().enumerate() {
                let channel = path.intermediates()[1];
                let expected = th.monodromy(channel, x, total).unwrap();
                for j in 0..u.dim() {
                    let got = u.matrix()[[j, i]];
                    let want = if i == j { expected } else { Complex64::new(0.0, 0.0) };
                    assert!(
                        (got - want).norm() < 1e-10,
                        "k=5 x={x_twice} total={total:?}: entry ({j},{i}) = {got}, want {want}"
                    );
                }
            }
        }
    }
}

/// Same statement for a three-strand composite: the phase only sees the
/// channel in which the whole block fuses, not the internal splitting.
#[test]
fn three_strand_composite_monodromy_is_channel_diagonal() {
    let th = Theory::new(Level::new(3).unwrap());
    let half = th.charge(1).unwrap();
    let context = ObjectList::uniform(half, 4).unwrap();
    let word = BraidWord::new(
        context,
        vec![(3, 1), (2, 1), (1, 1), (1, 1), (2, 1), (3, 1)],
    )
    .unwrap();
    for t in 0..=th.k() {
        let total = th.charge(t).unwrap();
        let u = match represent(&th, &word, Some(total)) {
            Ok(u) => u,
            Err(_) => continue,
        };
        for (i, path) in u.domain().iter().enumerate() {
            let block_channel = path.intermediates()[2];
            let expected = th.monodromy(block_channel, half, total).unwrap();
            for j in 0..u.dim() {
                let got = u.matrix()[[j, i]];
                let want = if i == j { expected } else { Complex64::new(0.0, 0.0) };
                assert!(
                    (got - want).norm() < 1e-10,
                    "total={total:?}: entry ({j},{i}) = {got}, want {want}"
                );
            }
        }
    }
}

/// On a one-dimensional total-charge sector every generator acts as a scalar,
/// and the braid relation forces neighboring scalars equal; a weave therefore
/// contributes exactly (that scalar)^winding. Winding zero means identity —
/// not approximately, structurally.
#[test]
fn winding_zero_weave_is_identity_on_one_dimensional_sectors() {
    let th = Theory::new(Level::new(5).unwrap());
    let half = th.charge(1).unwrap();
    let context = ObjectList::uniform(half, 3).unwrap();
    let top = th.charge(3).unwrap(); // unique path: both pair channels forced

    // Winding zero, but not freely reducible.
    let balanced = BraidWord::new(context.clone(), vec![(2, 1), (1, -1)]).unwrap();
    let u = represent(&th, &balanced, Some(top)).unwrap();
    assert_eq!(u.dim(), 1);
    assert!((u.matrix()[[0, 0]] - Complex64::new(1.0, 0.0)).norm() < 1e-10);

    // A longer balanced wander of the same mobile strand.
    let wander = BraidWord::new(
        context.clone(),
        vec![(2, 1), (1, 1), (1, -1), (1, -1), (1, 1), (2, -1)],
    )
    .unwrap();
    let u = represent(&th, &wander, Some(top)).unwrap();
    assert!((u.matrix()[[0, 0]] - Complex64::new(1.0, 0.0)).norm() < 1e-10);

    // Nonzero winding picks up a genuine phase.
    let wound = BraidWord::new(context, vec![(2, 1), (1, 1)]).unwrap();
    let u = represent(&th, &wound, Some(top)).unwrap();
    assert!((u.matrix()[[0, 0]] - Complex64::new(1.0, 0.0)).norm() > 1e-3);
    assert!((u.matrix()[[0, 0]].norm() - 1.0).abs() < 1e-12);
}
