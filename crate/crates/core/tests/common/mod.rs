#![allow(dead_code)]

use besselmap::ComplexValue;

pub fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

pub struct Reference {
    pub n: u32,
    pub z: ComplexValue,
    pub j: ComplexValue,
    pub y: ComplexValue,
}

/// 30-digit values from `tests/data/gen_reference.py`.
pub fn reference_table() -> Vec<Reference> {
    include_str!("../data/reference.csv")
        .lines()
        .skip(1)
        .map(|line| {
            let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            Reference { n: f[0] as u32, z: c(f[1], f[2]), j: c(f[3], f[4]), y: c(f[5], f[6]) }
        })
        .collect()
}

/// Ascending series for `Jₙ` with a fixed, generous term count. Kept apart
/// from the library so tests have an independent route.
pub fn j_series_oracle(n: u32, z: ComplexValue, terms: usize) -> ComplexValue {
    let half = z * 0.5;
    let mut term = c(1.0, 0.0);
    for k in 1..=n {
        term = term * half / k as f64;
    }
    let q = -half * half;
    let mut sum = c(0.0, 0.0);
    for k in 0..terms {
        sum += term;
        term = term * q / ((k + 1) as f64 * (n as usize + k + 1) as f64);
    }
    sum
}
