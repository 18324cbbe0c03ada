//! Tuples whose ordered subproducts land in prescribed sets.

use rayon::prelude::*;

use super::{CountReport, Engine};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::sets::GroupSubset;

/// Upper limit on `|G|^n` for the exhaustive tuple loop.
pub const MIXING_BUDGET: u128 = 1_000_000_000;

/// Product of `tuple[i]` over the set bits `i` of `mask`, in increasing order.
pub fn ordered_product(g: &FiniteGroup, tuple: &[Elem], mask: usize) -> Elem {
    (0..tuple.len())
        .filter(|i| mask >> i & 1 == 1)
        .fold(g.identity(), |acc, i| g.mul(acc, tuple[i]))
}

/// `|𝒳ₙ|`: tuples `(a_1..a_n)` with `a_F ∈ A_F` for every nonempty `F`.
///
/// `sets[mask - 1]` is `A_F` for the subset `F` whose indicator bits form
/// `mask` (bit `i` standing for index `i + 1`). The normalizer is
/// `∏_F |A_F| / |G|^{2ⁿ−1−n}`; the degenerate tuple is the all-identity one.
pub fn count_mixing_tuples(n: usize, sets: &[GroupSubset]) -> Result<CountReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidParameter(format!("mixing arity {n} is outside 2..=4")));
    }
    let masks = (1usize << n) - 1;
    if sets.len() != masks {
        return Err(Error::InvalidParameter(format!(
            "arity {n} needs {masks} sets, got {}",
            sets.len()
        )));
    }
    for s in &sets[1..] {
        sets[0].ensure_same_group(s)?;
    }
    let g = sets[0].group();
    let order = g.order() as u128;
    let work = order.checked_pow(n as u32).unwrap_or(u128::MAX);
    if work > MIXING_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "|G|^{n} = {work} tuple steps exceed {MIXING_BUDGET}"
        )));
    }

    let first = sets[0].elements();
    let count: u64 = first
        .par_iter()
        .map(|&a1| {
            let mut prods = vec![g.identity(); masks + 1];
            prods[1] = a1;
            extend(g, sets, n, 1, &mut prods)
        })
        .sum();

    let id = g.identity();
    let degenerate = u64::from(sets.iter().all(|s| s.contains(id)));
    let overflow = || Error::BudgetExceeded("normalizer overflows 128 bits".into());
    let num = sets
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.card() as u128))
        .ok_or_else(overflow)?;
    let den = order
        .checked_pow((masks - n) as u32)
        .ok_or_else(overflow)?;
    Ok(CountReport::new(
        count,
        degenerate,
        super::ratio_u128(num, den),
        Engine::BruteForce,
    ))
}

/// Chooses `a_{k+1}` given the products over subsets of the first `k` indices.
fn extend(g: &FiniteGroup, sets: &[GroupSubset], n: usize, k: usize, prods: &mut [Elem]) -> u64 {
    if k == n {
        return 1;
    }
    let bit = 1usize << k;
    let mut total = 0;
    'cand: for x in sets[bit - 1].iter() {
        prods[bit] = x;
        for m in 1..bit {
            let p = g.mul(prods[m], x);
            if !sets[(m | bit) - 1].contains(p) {
                continue 'cand;
            }
            prods[m | bit] = p;
        }
        total += extend(g, sets, n, k + 1, prods);
    }
    total
}
