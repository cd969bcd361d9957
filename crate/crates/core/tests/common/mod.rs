#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Lanczos approximation (g = 7, nine terms) with the reflection formula.
/// Relative accuracy is around 1e-15 on the positive axis.
pub fn gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = C[0];
    for (i, c) in C.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

pub fn beta(a: f64, b: f64) -> f64 {
    gamma(a) * gamma(b) / gamma(a + b)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A point `r e^{-i theta}` of the open lower half-plane with `r` in
/// `[r_min, r_max]` and `theta` kept `margin` away from the real axis.
pub fn lower_half_plane_point<R: Rng>(
    rng: &mut R,
    r_min: f64,
    r_max: f64,
    margin: f64,
) -> Complex64 {
    let r = r_min * (r_max / r_min).powf(rng.random::<f64>());
    let theta = margin + (PI - 2.0 * margin) * rng.random::<f64>();
    Complex64::from_polar(r, -theta)
}

pub fn rel_err(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm().max(f64::MIN_POSITIVE)
}
