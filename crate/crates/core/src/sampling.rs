//! Seeded generators for parameter sets used by the property suites and the
//! reproduction driver.

use num_traits::One;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratpoly::{ratio, FactoredPoly, Rational, TwoVarPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Roots drawn without replacement from `{1/4, 2/4, ..., 16/4}`.
fn distinct_quarters(rng: &mut impl Rng, count: usize) -> Vec<Rational> {
    let mut picks: Vec<usize> = sample(rng, 16, count).into_vec();
    picks.sort_unstable();
    picks.into_iter().map(|i| ratio(i as i64 + 1, 4)).collect()
}

fn lead(rng: &mut impl Rng) -> Rational {
    [ratio(1, 2), Rational::one(), ratio(2, 1), ratio(3, 1)][rng.gen_range(0..4)].clone()
}

/// `b` of degree `k` and `a` of degree `k - 1` with strictly interlacing
/// roots `b_1 < a_1 < b_2 < ... < a_{k-1} < b_k`, random positive leads.
pub fn interlacing(rng: &mut impl Rng, k: usize) -> TwoVarPoly {
    assert!((1..=8).contains(&k), "degree out of sampling range");
    let chain = distinct_quarters(rng, 2 * k - 1);
    let b_roots = chain.iter().step_by(2).cloned().collect();
    let a_roots = chain.iter().skip(1).step_by(2).cloned().collect();
    TwoVarPoly::new(
        FactoredPoly::new(lead(rng), b_roots).expect("positive"),
        FactoredPoly::new(lead(rng), a_roots).expect("positive"),
    )
    .expect("deg a = deg b - 1")
}

/// `b` of degree `k`, `a` of degree `k - 1` with distinct `a` roots and no
/// ordering constraint between the two root sets.
pub fn unconstrained(rng: &mut impl Rng, k: usize) -> TwoVarPoly {
    assert!((1..=8).contains(&k), "degree out of sampling range");
    let a_roots = distinct_quarters(rng, k - 1);
    let b_roots = (0..k).map(|_| ratio(rng.gen_range(1..=16), 4)).collect();
    TwoVarPoly::new(
        FactoredPoly::new(lead(rng), b_roots).expect("positive"),
        FactoredPoly::new(lead(rng), a_roots).expect("positive"),
    )
    .expect("deg a = deg b - 1")
}
