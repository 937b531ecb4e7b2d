//! Random specs for the integration tests. Everything is driven by a seeded
//! ChaCha stream so failures replay exactly.
#![allow(dead_code)]

use std::collections::BTreeMap;

use color_euler::cec::AlgebraSpec;
use color_euler::{FinAbGroup, GroupElement, ParityMap};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every invariant-factor group of order at most 6.
pub const SMALL_GROUPS: &[&[i64]] = &[&[], &[2], &[3], &[4], &[5], &[6], &[2, 2]];

pub fn random_group(r: &mut impl Rng) -> FinAbGroup {
    let f = SMALL_GROUPS.choose(r).unwrap();
    if f.is_empty() { FinAbGroup::trivial() } else { FinAbGroup::new(f).unwrap() }
}

/// Random well-defined parity: odd bits only on even-order factors.
pub fn random_parity(r: &mut impl Rng, g: &FinAbGroup) -> ParityMap {
    let bits: Vec<u8> = g.factors().iter().map(|&m| if m % 2 == 0 { r.gen_range(0..=1) } else { 0 }).collect();
    ParityMap::new(g, &bits).unwrap()
}

/// `total` dimensions scattered over the group.
pub fn random_dims(r: &mut impl Rng, g: &FinAbGroup, total: u64) -> BTreeMap<GroupElement, u64> {
    let els: Vec<GroupElement> = g.elements().collect();
    let mut dims = BTreeMap::new();
    for _ in 0..total {
        *dims.entry(els.choose(r).unwrap().clone()).or_insert(0) += 1;
    }
    dims
}

pub fn random_spec(r: &mut impl Rng, max_total: u64) -> AlgebraSpec {
    let g = random_group(r);
    let p = random_parity(r, &g);
    let total = r.gen_range(0..=max_total);
    let dims = random_dims(r, &g, total);
    AlgebraSpec::new(p, None, dims, None).unwrap()
}

pub fn with_random_module(r: &mut impl Rng, spec: &AlgebraSpec, max_total: u64) -> AlgebraSpec {
    let total = r.gen_range(1..=max_total);
    let m = random_dims(r, spec.group(), total);
    spec.with_module_dims(m).unwrap()
}
