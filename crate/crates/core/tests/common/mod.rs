#![allow(dead_code)]

use std::time::{Duration, Instant};

/// splitmix64 stream shared with `fixtures/gen_shapiro_reference.py`.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) / (1u64 << 53) as f64
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

/// Same sample kinds as the fixture generator.
pub fn reference_sample(kind: &str, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    if kind == "ramp" {
        return (1..=n).map(|i| i as f64).collect();
    }
    (0..n)
        .map(|_| match kind {
            "normal" => 20.0 + 5.0 * rng.normal(),
            "normal01" => rng.normal(),
            "uniform" => 10.0 * rng.uniform(),
            "exponential" => -rng.uniform().ln(),
            "lognormal" => (0.5 * rng.normal()).exp(),
            "bimodal" => {
                let shift = if rng.uniform() < 0.5 { -3.0 } else { 3.0 };
                shift + rng.normal()
            }
            other => panic!("unknown sample kind {other}"),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ShapiroCase {
    pub kind: String,
    pub n: usize,
    pub seed: u64,
    pub w: f64,
    pub p: f64,
}

pub fn shapiro_cases() -> Vec<ShapiroCase> {
    let text = include_str!("../fixtures/shapiro_reference.csv");
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            ShapiroCase {
                kind: f[0].to_owned(),
                n: f[1].parse().unwrap(),
                seed: f[2].parse().unwrap(),
                w: f[3].parse().unwrap(),
                p: f[4].parse().unwrap(),
            }
        })
        .collect()
}

/// S by direct pair enumeration.
pub fn naive_s(x: &[f64]) -> i64 {
    let mut s = 0i64;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            s += match x[j].partial_cmp(&x[i]).unwrap() {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
            };
        }
    }
    s
}

/// Median of all pair slopes, enumerated and fully sorted.
pub fn naive_sen_slope(t: &[f64], x: &[f64]) -> f64 {
    let mut slopes = Vec::new();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            slopes.push((x[j] - x[i]) / (t[j] - t[i]));
        }
    }
    slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = slopes.len();
    if m % 2 == 1 {
        slopes[m / 2]
    } else {
        (slopes[m / 2 - 1] + slopes[m / 2]) / 2.0
    }
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    a == b || (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}
