#![allow(dead_code)]

use coverkit::base::{NSClass, NumericalBase};
use coverkit::cover::{CoverData, CoverSpec};
use coverkit::group::{FinAbGroup, InertiaDatum};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every invariant-factor chain with at most `max_rank` factors, each at
/// most `max_d`.
pub fn chains(max_rank: usize, max_d: i64) -> Vec<Vec<i64>> {
    fn extend(prefix: &mut Vec<i64>, max_rank: usize, max_d: i64, out: &mut Vec<Vec<i64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_rank {
            return;
        }
        let start = prefix.last().copied().unwrap_or(1);
        for d in 2..=max_d {
            if d % start == 0 && d >= start {
                prefix.push(d);
                extend(prefix, max_rank, max_d, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_rank, max_d, &mut out);
    out
}

/// Every abelian group of order at most `bound`, by invariant factors.
pub fn groups_up_to(bound: i64) -> Vec<FinAbGroup> {
    fn extend(prefix: &mut Vec<i64>, order: i64, bound: i64, out: &mut Vec<FinAbGroup>) {
        out.push(FinAbGroup::new(prefix.clone()).unwrap());
        let start = prefix.last().copied().unwrap_or(2);
        for d in start..=bound / order {
            if d % start == 0 || prefix.is_empty() {
                prefix.push(d);
                extend(prefix, order * d, bound, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, bound, &mut out);
    out
}

pub fn random_element(group: &FinAbGroup, rng: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let v: Vec<i64> = group.factors().iter().map(|&d| rng.gen_range(0..d)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Random inertia data whose subgroups generate the group.
pub fn random_surjective(group: &FinAbGroup, max_extra: usize, rng: &mut ChaCha8Rng) -> Vec<InertiaDatum> {
    let mut out: Vec<InertiaDatum> = Vec::new();
    let extra = rng.gen_range(0..=max_extra);
    while !group.surjectivity_check(&out) || out.len() < extra {
        out.push(group.inertia_from(&random_element(group, rng)).unwrap());
    }
    out.shuffle(rng);
    out
}

/// A random constructible cover over `P1xP1`: singletons plus every pair
/// of branch classes with positive intersection must be injective.
pub fn random_cover(rng: &mut ChaCha8Rng, max_order: u64) -> CoverData {
    let groups: Vec<FinAbGroup> = chains(3, 6)
        .into_iter()
        .filter(|c| c.iter().product::<i64>() as u64 <= max_order)
        .map(|c| FinAbGroup::new(c).unwrap())
        .collect();
    let base = NumericalBase::p1xp1();
    loop {
        let group = groups.choose(rng).unwrap().clone();
        let inertia = random_surjective(&group, 3, rng);
        let e = group.exponent();
        let branch: Vec<NSClass> = inertia
            .iter()
            .map(|_| {
                let (a, b) = loop {
                    let a = rng.gen_range(0..=2);
                    let b = rng.gen_range(0..=2);
                    if a + b > 0 {
                        break (a, b);
                    }
                };
                if rng.gen_bool(0.5) {
                    NSClass(vec![a * e, b * e])
                } else {
                    NSClass(vec![rng.gen_range(1..=2 * e), b * rng.gen_range(1..=e)])
                }
            })
            .collect();
        let mut pattern: Vec<Vec<usize>> = (0..inertia.len()).map(|i| vec![i]).collect();
        for i in 0..inertia.len() {
            for j in i + 1..inertia.len() {
                if base.intersect(&branch[i], &branch[j]).unwrap() > 0 {
                    pattern.push(vec![i, j]);
                }
            }
        }
        let mut spec = CoverSpec::new(group, inertia, base.clone(), branch);
        spec.intersection_pattern = Some(pattern);
        if let Ok(cd) = CoverData::from_spec(spec) {
            return cd;
        }
    }
}
