//! Seeded point sampling on surface and group charts, with excision of
//! singular points and a conservative margin from chart boundaries.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Margin kept from chart boundaries (conformal factors stay
/// well-conditioned there).
pub const BOUNDARY_MARGIN: f64 = 0.05;
/// Default excision radius around declared singular points.
pub const DEFAULT_EXCISION: f64 = 1e-2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Radius bound used when sampling a chart of curvature `k`: the unit disk
/// (minus margin) for k = −1, |z| ≤ 3 otherwise.
pub fn chart_radius(k: f64) -> f64 {
    if k < 0.0 {
        1.0 - BOUNDARY_MARGIN
    } else {
        3.0
    }
}

fn sample_z(rng: &mut ChaCha8Rng, rmax: f64, excised: &[(f64, f64)], eps: f64) -> (f64, f64) {
    loop {
        let x = rng.gen_range(-rmax..rmax);
        let y = rng.gen_range(-rmax..rmax);
        if (x * x + y * y).sqrt() > rmax {
            continue;
        }
        if excised
            .iter()
            .any(|&(px, py)| ((x - px).powi(2) + (y - py).powi(2)).sqrt() < eps)
        {
            continue;
        }
        return (x, y);
    }
}

/// n points on the surface chart of curvature k, avoiding the excised
/// points and the chart boundary.
pub fn surface_points(
    k: f64,
    n: usize,
    seed: u64,
    excised: &[(f64, f64)],
    eps: f64,
) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    let rmax = chart_radius(k);
    (0..n)
        .map(|_| {
            let (x, y) = sample_z(&mut r, rmax, excised, eps);
            vec![x, y]
        })
        .collect()
}

/// n points on the group chart of H¹_λ. The chart constraint is
/// 1 − λ|z|² > 0, the unit disk for λ = 1; χ ranges over [0, 4π).
pub fn group_points(
    lambda: f64,
    n: usize,
    seed: u64,
    excised_base: &[(f64, f64)],
    eps: f64,
) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    let rmax = if lambda > 0.0 {
        1.0 - BOUNDARY_MARGIN
    } else {
        3.0
    };
    (0..n)
        .map(|_| {
            let (x, y) = sample_z(&mut r, rmax, excised_base, eps);
            let chi = r.gen_range(0.0..4.0 * std::f64::consts::PI);
            vec![x, y, chi]
        })
        .collect()
}

/// Product-chart points for the 4D instanton check: (zM, zN) with each
/// factor inside its surface domain.
pub fn product_points(
    k_m: f64,
    k_n: f64,
    n: usize,
    seed: u64,
    excised_m: &[(f64, f64)],
    eps: f64,
) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    let rm = chart_radius(k_m);
    let rn = chart_radius(k_n);
    (0..n)
        .map(|_| {
            let (x1, y1) = sample_z(&mut r, rm, excised_m, eps);
            let (x2, y2) = sample_z(&mut r, rn, &[], eps);
            vec![x1, y1, x2, y2]
        })
        .collect()
}
