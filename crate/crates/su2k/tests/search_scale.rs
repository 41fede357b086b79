//! Full-scale meet-in-the-middle runs: sizes that exercise the planner,
//! the cell index, and the memory layout the way production searches do.
//! Expensive (minutes, hundreds of MB), therefore `#[ignore]`d; run with
//! `cargo test -p su2k --test search_scale -- --ignored --nocapture`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::time::Instant;

use ndarray::array;
use num_complex::Complex64;

use su2k::anyon_model::{Level, ObjectList, Theory};
use su2k::gate_search::{bidirectional, Alphabet, Method, SearchConfig};
use su2k::simulator::SectorUnitary;

fn hadamard_on_three_halves(k: u32) -> (SectorUnitary, Level) {
    let level = Level::new(k).unwrap();
    let th = Theory::new(level);
    let half = th.charge(1).unwrap();
    let ctx = ObjectList::uniform(half, 3).unwrap();
    let s = FRAC_1_SQRT_2;
    let h = array![
        [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
    ];
    let basis = th.enumerate_paths(&ctx, Some(half));
    (
        SectorUnitary::new(ctx.clone(), ctx, basis.clone(), basis, h).unwrap(),
        level,
    )
}

#[test]
#[ignore = "minutes of runtime; exercises production-size sides"]
fn hadamard_weave_reaches_one_milli_within_length_48() {
    let (target, level) = hadamard_on_three_halves(5);
    let cfg = SearchConfig {
        max_length: 48,
        alphabet: Alphabet::Twist,
        mobile: 1,
        method: Method::Bidirectional,
        ..SearchConfig::default()
    };
    let t0 = Instant::now();
    let gate = bidirectional(&target, &cfg, level).unwrap();
    let wall = t0.elapsed().as_secs_f64();
    println!(
        "length-48 weave: distance {:.3e}, {} interchanges, {} pairs tested, \
         sides {}/{}, {:.1}s",
        gate.achieved_distance,
        gate.word.len(),
        gate.method.pairs_tested,
        gate.method.left_count,
        gate.method.right_count,
        wall
    );
    assert!(
        gate.achieved_distance <= 1e-3,
        "wanted 1e-3, got {:.3e}",
        gate.achieved_distance
    );
    assert!(gate.word.len() <= 48);
    assert!(!gate.method.budget_limited, "sides were budget-cut");
    assert!(wall < 300.0, "took {wall:.0}s, single-threaded bound is 300s");
}

#[test]
#[ignore = "several minutes and ~1 GB; exercises the largest planned sides"]
fn hadamard_weave_reaches_one_ten_thousandth_within_length_80() {
    let (target, level) = hadamard_on_three_halves(5);
    let cfg = SearchConfig {
        max_length: 80,
        alphabet: Alphabet::Twist,
        mobile: 1,
        method: Method::Bidirectional,
        hash_cell: 0.01,
        budget: 50_000_000,
        ..SearchConfig::default()
    };
    let t0 = Instant::now();
    let gate = bidirectional(&target, &cfg, level).unwrap();
    let wall = t0.elapsed().as_secs_f64();
    println!(
        "length-80 weave: distance {:.3e}, {} interchanges, {} pairs tested, \
         sides {}/{}, {:.1}s",
        gate.achieved_distance,
        gate.word.len(),
        gate.method.pairs_tested,
        gate.method.left_count,
        gate.method.right_count,
        wall
    );
    assert!(
        gate.achieved_distance <= 1e-4,
        "wanted 1e-4, got {:.3e}",
        gate.achieved_distance
    );
    assert!(gate.word.len() <= 80);
    assert!(wall < 1800.0, "took {wall:.0}s, bound is 1800s");
}
