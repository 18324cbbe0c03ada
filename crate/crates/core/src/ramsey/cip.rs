//! Density of monochromatic product tuples under random colorings.

use rayon::prelude::*;
use serde::Serialize;

use super::Coloring;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::rng::{derive_seed, SplitMix64};
use crate::sets::GroupSubset;

/// Largest `|G|^n` counted exactly.
pub const EXACT_TUPLE_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CipMode {
    /// Exact when `|G|^n` is within [`EXACT_TUPLE_LIMIT`], sampled otherwise.
    #[default]
    Auto,
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CipOptions {
    pub mode: CipMode,
    pub samples: u64,
}

impl Default for CipOptions {
    fn default() -> Self {
        CipOptions {
            mode: CipMode::Auto,
            samples: 100_000,
        }
    }
}

/// One random coloring: the largest monochromatic tuple density over colors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CipTrial {
    pub seed: u64,
    pub color: usize,
    pub density: f64,
    /// Standard error of a sampled density; absent for exact counts.
    pub std_error: Option<f64>,
    /// Exact tuple count when computed exactly.
    pub count: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CipReport {
    pub group: String,
    pub k: usize,
    pub n: usize,
    pub exact: bool,
    pub trials: Vec<CipTrial>,
    pub min_density: f64,
    pub median_density: f64,
}

/// Tuples `(a_1..a_n) ∈ Gⁿ` with every ordered subproduct in `class`.
pub fn count_monochromatic_tuples(class: &GroupSubset, n: usize) -> u64 {
    fn extend(g: &FiniteGroup, class: &GroupSubset, n: usize, k: usize, prods: &mut [Elem]) -> u64 {
        if k == n {
            return 1;
        }
        let bit = 1usize << k;
        let mut total = 0;
        'cand: for x in class.iter() {
            prods[bit] = x;
            for m in 1..bit {
                let p = g.mul(prods[m], x);
                if !class.contains(p) {
                    continue 'cand;
                }
                prods[m | bit] = p;
            }
            total += extend(g, class, n, k + 1, prods);
        }
        total
    }
    let g = class.group();
    class
        .elements()
        .par_iter()
        .map(|&a1| {
            let mut prods = vec![g.identity(); 1 << n];
            prods[1] = a1;
            extend(g, class, n, 1, &mut prods)
        })
        .sum()
}

fn sampled_densities(coloring: &Coloring, n: usize, samples: u64, seed: u64) -> Vec<u64> {
    let g = coloring.group();
    let mut rng = SplitMix64::new(seed);
    let mut hits = vec![0u64; coloring.k()];
    let mut prods = vec![g.identity(); 1 << n];
    'sample: for _ in 0..samples {
        for k in 0..n {
            let x = rng.index(g.order());
            let bit = 1usize << k;
            prods[bit] = x;
            for m in 1..bit {
                prods[m | bit] = g.mul(prods[m], x);
            }
        }
        let c = coloring.color(prods[1]);
        for &p in &prods[2..] {
            if coloring.color(p) != c {
                continue 'sample;
            }
        }
        hits[c] += 1;
    }
    hits
}

fn median(sorted: &[f64]) -> f64 {
    let m = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[m]
    } else {
        (sorted[m - 1] + sorted[m]) / 2.0
    }
}

/// For each trial, colors `G` uniformly with `k` colors (seed
/// `derive_seed(seed, trial)`) and records the largest density over colors of
/// `n`-tuples whose ordered subproducts share one color.
pub fn cip_density_experiment(
    g: &std::sync::Arc<FiniteGroup>,
    k: usize,
    n: usize,
    trials: usize,
    seed: u64,
    options: CipOptions,
) -> Result<CipReport> {
    if n == 0 || n > 16 {
        return Err(Error::InvalidParameter(format!("tuple length {n} is outside 1..=16")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is needed".into()));
    }
    let space = (g.order() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let exact = match options.mode {
        CipMode::Exact if space > EXACT_TUPLE_LIMIT => {
            return Err(Error::BudgetExceeded(format!(
                "|G|^{n} = {space} exceeds the exact limit {EXACT_TUPLE_LIMIT}"
            )))
        }
        CipMode::Exact => true,
        CipMode::Sampled => false,
        CipMode::Auto => space <= EXACT_TUPLE_LIMIT,
    };
    if !exact && options.samples == 0 {
        return Err(Error::InvalidParameter("sampling needs at least one sample".into()));
    }
    let trial_results = (0..trials)
        .map(|t| -> Result<CipTrial> {
            let trial_seed = derive_seed(seed, t as u64);
            let coloring = Coloring::random(g.clone(), k, trial_seed)?;
            if exact {
                let counts: Vec<u64> = coloring
                    .classes()
                    .iter()
                    .map(|c| count_monochromatic_tuples(c, n))
                    .collect();
                let (color, &count) = counts
                    .iter()
                    .enumerate()
                    .rev()
                    .max_by_key(|(_, &c)| c)
                    .expect("k >= 1");
                Ok(CipTrial {
                    seed: trial_seed,
                    color,
                    density: count as f64 / space as f64,
                    std_error: None,
                    count: Some(count),
                })
            } else {
                let hits = sampled_densities(&coloring, n, options.samples, derive_seed(trial_seed, 1));
                let (color, &h) = hits
                    .iter()
                    .enumerate()
                    .rev()
                    .max_by_key(|(_, &c)| c)
                    .expect("k >= 1");
                let p = h as f64 / options.samples as f64;
                Ok(CipTrial {
                    seed: trial_seed,
                    color,
                    density: p,
                    std_error: Some((p * (1.0 - p) / options.samples as f64).sqrt()),
                    count: None,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut densities: Vec<f64> = trial_results.iter().map(|t| t.density).collect();
    densities.sort_by(f64::total_cmp);
    Ok(CipReport {
        group: g.name().to_string(),
        k,
        n,
        exact,
        min_density: densities[0],
        median_density: median(&densities),
        trials: trial_results,
    })
}
