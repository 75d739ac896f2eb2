//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thinex_core::exhaustion::CutoffFamily;
use thinex_core::{
    build_neighborhoods, Complex64, FiniteAbelianGroup, GroupFunction, NeighborhoodStrategy, TruncatedMeasure,
};

/// Groups covering the orders 2, 3, 4, 6, 8, 12, 16, 27 and 64, cyclic and not.
pub fn substrate_groups() -> Vec<FiniteAbelianGroup> {
    [
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![6],
        vec![3, 2],
        vec![8],
        vec![2, 4],
        vec![12],
        vec![2, 6],
        vec![16],
        vec![2, 2, 2, 2],
        vec![27],
        vec![3, 9],
        vec![64],
        vec![4, 4, 4],
    ]
    .into_iter()
    .map(|f| FiniteAbelianGroup::new(f).unwrap())
    .collect()
}

pub fn random_function(rng: &mut ChaCha8Rng, g: &FiniteAbelianGroup) -> GroupFunction {
    let values = (0..g.order())
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    GroupFunction::new(g.clone(), values).unwrap()
}

/// Textbook `Σ_x f(x) exp(2πi Σ_m g_m x_m / n_m)`, one character at a time,
/// with the phase reduced as a rational before any floating point.
pub fn naive_dft(f: &GroupFunction) -> Vec<Complex64> {
    let g = f.group();
    let modulus: usize = g.factors().iter().product::<usize>().max(1);
    (0..g.order())
        .map(|xi| {
            let xc = g.element_at(xi);
            (0..g.order())
                .map(|yi| {
                    let yc = g.element_at(yi);
                    // Σ x_m y_m (modulus / n_m) mod modulus, exact in integers
                    let num: usize = xc
                        .coords()
                        .iter()
                        .zip(yc.coords())
                        .zip(g.factors())
                        .map(|((&a, &b), &n)| (a * b % n) * (modulus / n))
                        .sum::<usize>()
                        % modulus;
                    f.values()[yi] * Complex64::from_polar(1.0, TAU * num as f64 / modulus as f64)
                })
                .sum()
        })
        .collect()
}

/// Direct `Σ_y f(y) g(x - y)`.
pub fn naive_convolve(f: &GroupFunction, h: &GroupFunction) -> Vec<Complex64> {
    let g = f.group();
    (0..g.order())
        .map(|x| (0..g.order()).map(|y| f.values()[y] * h.values()[g.sub_index(x, y)]).sum())
        .collect()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// A group of order 4..=64 with one to three factors.
pub fn random_small_group(rng: &mut ChaCha8Rng) -> FiniteAbelianGroup {
    loop {
        let rank = rng.random_range(1..=3);
        let factors: Vec<usize> = (0..rank).map(|_| rng.random_range(2..=9)).collect();
        let order: usize = factors.iter().product();
        if (4..=64).contains(&order) {
            return FiniteAbelianGroup::new(factors).unwrap();
        }
    }
}

/// Random proper subset of size at most a quarter of the group.
pub fn random_support(rng: &mut ChaCha8Rng, g: &FiniteAbelianGroup) -> Vec<usize> {
    let mut all: Vec<usize> = (0..g.order()).collect();
    all.shuffle(rng);
    let size = rng.random_range(1..=(g.order() / 4).max(1));
    let mut k = all[..size].to_vec();
    k.sort_unstable();
    k
}

/// Random positive weights on `support`.
pub fn random_measure(rng: &mut ChaCha8Rng, g: &FiniteAbelianGroup, support: &[usize]) -> TruncatedMeasure {
    let mut w = vec![0.0; g.order()];
    for &i in support {
        w[i] = rng.random_range(0.5..1.5);
    }
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    TruncatedMeasure::from_weights(g.clone(), &w).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyClass {
    Metric,
    Cylinder,
    Chain,
}

pub const FAMILY_CLASSES: [FamilyClass; 3] = [FamilyClass::Metric, FamilyClass::Cylinder, FamilyClass::Chain];

/// Nested family around `support`, consecutive duplicates removed so the
/// neighborhoods shrink strictly.
pub fn random_family(
    rng: &mut ChaCha8Rng,
    g: &FiniteAbelianGroup,
    support: &[usize],
    class: FamilyClass,
) -> CutoffFamily {
    let masks: Vec<Vec<bool>> = match class {
        FamilyClass::Metric => {
            let r0 = rng.random_range(1..=4);
            let radii: Vec<usize> = (0..=r0).rev().collect();
            let fam = build_neighborhoods(support, g, &NeighborhoodStrategy::MetricShrink { radii }).unwrap();
            fam.levels().iter().map(|l| l.neighborhood.clone()).collect()
        }
        FamilyClass::Cylinder => {
            let prefixes: Vec<usize> = (1..=g.rank()).collect();
            let fam = build_neighborhoods(support, g, &NeighborhoodStrategy::QuotientCylinder { prefixes }).unwrap();
            fam.levels().iter().map(|l| l.neighborhood.clone()).collect()
        }
        FamilyClass::Chain => {
            let mut outside: Vec<usize> = (0..g.order()).filter(|i| !support.contains(i)).collect();
            outside.shuffle(rng);
            let levels = rng.random_range(1..=4usize).min(outside.len());
            let mut mask = vec![false; g.order()];
            support.iter().for_each(|&i| mask[i] = true);
            let mut chain = vec![mask.clone()];
            let mut extra = outside.into_iter();
            for _ in 1..levels {
                for _ in 0..rng.random_range(1..=3) {
                    if let Some(i) = extra.next() {
                        mask[i] = true;
                    }
                }
                chain.push(mask.clone());
            }
            chain.reverse();
            chain
        }
    };
    let mut strict: Vec<Vec<bool>> = Vec::new();
    for m in masks {
        if strict.last() != Some(&m) {
            strict.push(m);
        }
    }
    CutoffFamily::from_neighborhoods(g, strict).unwrap()
}
