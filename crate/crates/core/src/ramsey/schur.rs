//! Monochromatic solutions of `ab = c` and colorings that try to avoid them.

use rayon::prelude::*;
use serde::Serialize;

use super::Coloring;
use crate::counting::{count_xy_eq_z, CountReport, EngineChoice};
use crate::error::Result;
use crate::group::{Elem, FiniteGroup};
use crate::rng::derive_seed;

/// Per-color counts of `(a, b)` with `a`, `b`, `ab` all in that color.
#[derive(Debug, Clone, Serialize)]
pub struct SchurReport {
    pub counts: Vec<CountReport>,
    /// Color with the most monochromatic pairs (least index on ties).
    pub argmax: usize,
    /// The color holding the identity, whose count includes `(id, id, id)`.
    pub identity_color: usize,
}

impl SchurReport {
    pub fn max_count(&self) -> u64 {
        self.counts[self.argmax].count
    }
}

pub fn schur_counts(coloring: &Coloring) -> Result<SchurReport> {
    let counts = coloring
        .classes()
        .iter()
        .map(|a| count_xy_eq_z(a, a, a, EngineChoice::Auto))
        .collect::<Result<Vec<_>>>()?;
    let mut argmax = 0;
    for (j, c) in counts.iter().enumerate() {
        if c.count > counts[argmax].count {
            argmax = j;
        }
    }
    Ok(SchurReport {
        counts,
        argmax,
        identity_color: coloring.color(coloring.group().identity()),
    })
}

/// Best coloring found by [`schur_adversarial_search`].
#[derive(Debug, Clone)]
pub struct AdversarialResult {
    pub coloring: Coloring,
    /// Largest per-color count of the best coloring.
    pub max_count: u64,
    /// Sum over colors of the best coloring.
    pub total_count: u64,
    /// Restart that produced it.
    pub restart: usize,
}

/// Per-color monochromatic pair counts, straight from the definition.
fn color_counts(g: &FiniteGroup, colors: &[usize], k: usize) -> Vec<u64> {
    let mut counts = vec![0u64; k];
    for a in g.elements() {
        for b in g.elements() {
            let c = colors[a];
            if colors[b] == c && colors[g.mul(a, b)] == c {
                counts[c] += 1;
            }
        }
    }
    counts
}

/// For element `x`, the number of pairs touching `x` (as `a`, `b` or `ab`)
/// that would be monochromatic of color `j` if `x` had color `j`, for each `j`.
fn touching_counts(g: &FiniteGroup, colors: &[usize], x: Elem, out: &mut [u64]) {
    out.iter_mut().for_each(|v| *v = 0);
    let mut tally = |a: Elem, b: Elem| {
        let ab = g.mul(a, b);
        let mut color = None;
        for e in [a, b, ab] {
            if e == x {
                continue;
            }
            match color {
                None => color = Some(colors[e]),
                Some(c) if c != colors[e] => return,
                _ => {}
            }
        }
        match color {
            Some(c) => out[c] += 1,
            None => out.iter_mut().for_each(|v| *v += 1),
        }
    };
    for y in g.elements() {
        tally(x, y);
        if y != x {
            tally(y, x);
        }
        let b = g.mul(g.inv(y), x);
        if y != x && b != x {
            tally(y, b);
        }
    }
}

fn descend(g: &FiniteGroup, k: usize, iterations: usize, seed: u64) -> (Vec<usize>, Vec<u64>) {
    let n = g.order();
    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut colors: Vec<usize> = (0..n).map(|_| rng.index(k)).collect();
    let mut counts = color_counts(g, &colors, k);
    let mut touch = vec![0u64; k];
    for _ in 0..iterations {
        let key = |c: &[u64]| (c.iter().copied().max().unwrap_or(0), c.iter().sum::<u64>());
        let current = key(&counts);
        let mut best: Option<((u64, u64), Elem, usize, Vec<u64>)> = None;
        for x in 0..n {
            touching_counts(g, &colors, x, &mut touch);
            let from = colors[x];
            for to in 0..k {
                if to == from {
                    continue;
                }
                let mut next = counts.clone();
                next[from] -= touch[from];
                next[to] += touch[to];
                let cand = key(&next);
                if best.as_ref().is_none_or(|b| cand < b.0) {
                    best = Some((cand, x, to, next));
                }
            }
        }
        match best {
            Some((cand, x, to, next)) if cand < current => {
                colors[x] = to;
                counts = next;
            }
            _ => break,
        }
    }
    (colors, counts)
}

/// Steepest-descent search for a coloring with few monochromatic pairs.
///
/// Each restart starts from a uniform random coloring seeded by
/// `derive_seed(seed, restart)` and repeatedly applies the single recolor
/// that most lowers `(max count, total count)`, preferring lower elements and
/// then lower colors, until no move improves or `iterations` moves are made.
pub fn schur_adversarial_search(
    g: &std::sync::Arc<FiniteGroup>,
    k: usize,
    iterations: usize,
    restarts: usize,
    seed: u64,
) -> Result<AdversarialResult> {
    if k == 0 {
        return Err(crate::error::Error::InvalidParameter("k must be at least 1".into()));
    }
    let runs: Vec<(Vec<usize>, Vec<u64>)> = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| descend(g, k, iterations, derive_seed(seed, r as u64)))
        .collect();
    let (restart, (colors, counts)) = runs
        .into_iter()
        .enumerate()
        .min_by_key(|(r, (_, c))| (c.iter().copied().max().unwrap_or(0), c.iter().sum::<u64>(), *r))
        .expect("at least one restart");
    Ok(AdversarialResult {
        max_count: counts.iter().copied().max().unwrap_or(0),
        total_count: counts.iter().sum(),
        coloring: Coloring::new(g.clone(), k, colors)?,
        restart,
    })
}
