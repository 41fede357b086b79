//! Scratch: freeze-candidate configurations for the contraction fit. Delete me.

use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use su2k::anyon_model::{Charge, Level, ObjectList};
use su2k::gate_search::{Alphabet, Quat, SearchConfig, U2};
use su2k::sk_compiler::{build_net, refine, EpsilonNet};

fn haar_quat(rng: &mut ChaCha8Rng) -> Quat {
    let mut g = || {
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        (r * (std::f64::consts::TAU * u2).cos(), r * (std::f64::consts::TAU * u2).sin())
    };
    let (w, x) = g();
    let (y, z) = g();
    let n = (w * w + x * x + y * y + z * z).sqrt();
    Quat { w: w / n, x: x / n, y: y / n, z: z / n }
}

fn haar_target(rng: &mut ChaCha8Rng) -> Array2<Complex64> {
    U2 { q: haar_quat(rng), gamma: 0.0 }.to_matrix()
}

fn k5_net(eps0: f64) -> EpsilonNet {
    let level = Level::new(5).unwrap();
    let half = Charge::from_twice(1, level).unwrap();
    let context = ObjectList::uniform(half, 3).unwrap();
    let cfg = SearchConfig {
        max_length: 60,
        alphabet: Alphabet::Twist,
        weave_only: true,
        mobile: 1,
        ..SearchConfig::default()
    };
    build_net(level, &context, half, eps0, &cfg).unwrap()
}

fn study(net: &EpsilonNet, seed: u64, targets: usize, max_depth: u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut strict = 0usize;
    let mut stalls: Vec<(usize, Vec<f64>)> = Vec::new();
    let mut min_d = f64::INFINITY;
    let mut depth_log_sums = vec![0.0f64; max_depth as usize + 1];
    for sample in 0..targets {
        let t = haar_target(&mut rng);
        let d: Vec<f64> = (0..=max_depth)
            .map(|n| refine(&t, net, n).unwrap().achieved_distance)
            .collect();
        if d[1] < d[0] && d[2] < d[1] {
            strict += 1;
        } else {
            stalls.push((sample, d.clone()));
        }
        for (n, &v) in d.iter().enumerate() {
            depth_log_sums[n] += v.ln();
        }
        for pair in d.windows(2) {
            if pair[1] < pair[0] {
                xs.push(pair[0].ln());
                ys.push(pair[1].ln());
            }
        }
        min_d = min_d.min(*d.last().unwrap());
    }
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();

    // Mean-based estimator: regress depth-mean log errors pairwise.
    let means: Vec<f64> = depth_log_sums.iter().map(|s| s / targets as f64).collect();
    let mx: Vec<f64> = means[..means.len() - 1].to_vec();
    let my: Vec<f64> = means[1..].to_vec();
    let m = mx.len() as f64;
    let mxb = mx.iter().sum::<f64>() / m;
    let myb = my.iter().sum::<f64>() / m;
    let msxy: f64 = mx.iter().zip(&my).map(|(x, y)| (x - mxb) * (y - myb)).sum();
    let msxx: f64 = mx.iter().map(|x| (x - mxb) * (x - mxb)).sum();
    println!(
        "  seed={seed} targets={targets} depths=0..={max_depth}: pooled={:.4} mean_based={:.4} \
         means={:?} strict2={strict}/{targets} min_final={min_d:.3e} stalls={}",
        sxy / sxx,
        msxy / msxx,
        means.iter().map(|v| (v.exp() * 1e6).round() / 1e6).collect::<Vec<_>>(),
        stalls.len(),
    );
}

#[test]
fn freeze_candidates() {
    let net = k5_net(0.05);
    println!("eps0=0.05 entries={}", net.len());
    study(&net, 2024, 20, 3);
    study(&net, 512, 10, 3);
    study(&net, 512, 20, 3);
    let net = k5_net(0.1);
    println!("eps0=0.1 entries={}", net.len());
    study(&net, 2024, 20, 3);
    study(&net, 512, 10, 3);
}
