//! Brute-force helpers shared by the integration tests.
#![allow(dead_code)]

use std::ops::ControlFlow;

use mbf::generator::{gen_all, GenConfig};
use mbf::{Dimension, MonotoneTable};

pub fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

/// `a ⪯ b` coordinate by coordinate.
pub fn below(n: u32, a: u64, b: u64) -> bool {
    (0..n).all(|t| (a >> t) & 1 <= (b >> t) & 1)
}

pub fn min_t_of(n: u32, f: impl Fn(u64) -> bool) -> Vec<u64> {
    let size = 1u64 << n;
    (0..size)
        .filter(|&a| f(a) && (0..size).all(|b| b == a || !f(b) || !below(n, b, a)))
        .collect()
}

pub fn max_f_of(n: u32, f: impl Fn(u64) -> bool) -> Vec<u64> {
    let size = 1u64 << n;
    (0..size)
        .filter(|&a| !f(a) && (0..size).all(|b| b == a || f(b) || !below(n, a, b)))
        .collect()
}

/// Minimal elements of `seeds`: an antichain naming a monotone function.
pub fn minimal_elements(n: u32, mut seeds: Vec<u64>) -> Vec<u64> {
    seeds.sort_unstable();
    seeds.dedup();
    seeds
        .iter()
        .copied()
        .filter(|&a| seeds.iter().all(|&b| b == a || !below(n, b, a)))
        .collect()
}

pub fn all_tables(n: u32) -> Vec<MonotoneTable> {
    let mut out = Vec::new();
    gen_all(dim(n), &GenConfig::default(), |t| {
        out.push(t.clone());
        Ok(ControlFlow::Continue(()))
    })
    .unwrap();
    out
}
