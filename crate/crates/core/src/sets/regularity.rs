//! Checkers for product-richness and regular position.
//!
//! Both notions quantify over every subset of relative density at least `ε`,
//! so exact checking enumerates subsets of small sets and is capped. Sampled
//! checking is a one-sided falsification search and never certifies.
//!
//! Subsets of a set `A` are bitmasks over the positions of `A`'s elements in
//! increasing index order. When several violations exist the reported witness
//! is the least one, comparing masks as integers (and triples of masks
//! lexicographically), so the verdict does not depend on scheduling.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::{product_bits, GroupSubset};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::rng::SplitMix64;

pub const PRODUCT_RICH_EXACT_CAP: usize = 22;
pub const REGULAR_POSITION_EXACT_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum CheckMode {
    Exact,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum VerdictStatus {
    VerifiedExact,
    NoViolationFound { samples: usize },
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityVerdict {
    #[serde(flatten)]
    pub status: VerdictStatus,
    /// The violating subset (product-rich) or subset triple (regular
    /// position); empty unless `status` is `Violated`.
    pub witness: Vec<GroupSubset>,
}

impl RegularityVerdict {
    fn ok(status: VerdictStatus) -> Self {
        RegularityVerdict {
            status,
            witness: Vec::new(),
        }
    }

    fn violated(witness: Vec<GroupSubset>) -> Self {
        RegularityVerdict {
            status: VerdictStatus::Violated,
            witness,
        }
    }

    pub fn is_violated(&self) -> bool {
        self.status == VerdictStatus::Violated
    }
}

/// Knobs for the checkers. `minimal_size_only` restricts exact enumeration to
/// subsets of the least qualifying size; see [`check_product_rich_with`] for
/// why the verdict is unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub exact_cap: Option<usize>,
    pub minimal_size_only: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            exact_cap: None,
            minimal_size_only: false,
        }
    }
}

/// Parses `1/2`, `0.3` or `1` into an exact fraction.
pub fn parse_ratio(s: &str) -> Result<Ratio<usize>> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("bad fraction `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let d: usize = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10usize.pow(frac.len() as u32);
        let int: usize = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: usize = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        return Ok(Ratio::new(int * den + frac, den));
    }
    Ok(Ratio::from_integer(s.parse().map_err(|_| bad())?))
}

fn check_epsilon(eps: Ratio<usize>) -> Result<()> {
    if *eps.numer() == 0 || eps > Ratio::from_integer(1) {
        return Err(Error::InvalidParameter(format!("ε = {eps} must lie in (0, 1]")));
    }
    Ok(())
}

/// Least `s` with `s / m >= ε`.
pub fn min_qualifying_size(m: usize, eps: Ratio<usize>) -> usize {
    (eps.numer() * m).div_ceil(*eps.denom())
}

fn qualifies(size: usize, m: usize, eps: Ratio<usize>) -> bool {
    size * eps.denom() >= eps.numer() * m
}

fn subset_of(base: &[Elem], mask: u64, group: &Arc<FiniteGroup>) -> GroupSubset {
    GroupSubset::new(
        group.clone(),
        base.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e),
    )
}

/// Masks over `m` positions that qualify, in increasing order.
fn qualifying_masks(m: usize, min_size: usize, minimal_only: bool) -> Vec<u64> {
    (0u64..1 << m)
        .filter(|mask| {
            let c = mask.count_ones() as usize;
            if minimal_only {
                c == min_size
            } else {
                c >= min_size
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// product-rich
// ---------------------------------------------------------------------------

pub fn check_product_rich(
    a: &GroupSubset,
    eps: Ratio<usize>,
    mode: CheckMode,
) -> Result<RegularityVerdict> {
    check_product_rich_with(a, eps, mode, CheckOptions::default())
}

/// `A` is product-rich up to `ε` when `A0·A0 ∩ A0 ≠ ∅` for every `A0 ⊆ A` with
/// `|A0| >= ε|A|`.
///
/// With `minimal_size_only` the exact search looks only at subsets of the
/// least qualifying size. This loses nothing: a violating `A0` is product-free,
/// every subset of a product-free set is product-free, and any qualifying `A0`
/// contains a subset of the least qualifying size, so a violation exists iff
/// one of minimal size does. Only the choice of witness can differ.
pub fn check_product_rich_with(
    a: &GroupSubset,
    eps: Ratio<usize>,
    mode: CheckMode,
    opts: CheckOptions,
) -> Result<RegularityVerdict> {
    check_epsilon(eps)?;
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = a.group();
    let elems = a.elements();
    let m = elems.len();
    let min_size = min_qualifying_size(m, eps);
    let pos: HashMap<Elem, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    match mode {
        CheckMode::Exact => {
            let cap = opts.exact_cap.unwrap_or(PRODUCT_RICH_EXACT_CAP);
            if m > cap || m > 63 {
                return Err(Error::ExactCapExceeded { size: m, cap });
            }
            // Triples (i, j, k) of positions with a_i a_j = a_k, as masks.
            let mut triples: Vec<u64> = Vec::new();
            for (i, &x) in elems.iter().enumerate() {
                for (j, &y) in elems.iter().enumerate() {
                    if let Some(&k) = pos.get(&g.mul(x, y)) {
                        triples.push(1 << i | 1 << j | 1 << k);
                    }
                }
            }
            triples.sort_unstable();
            triples.dedup();
            let masks = qualifying_masks(m, min_size, opts.minimal_size_only);
            let found = masks
                .par_iter()
                .find_first(|&&mask| !triples.iter().any(|&t| mask & t == t));
            Ok(match found {
                Some(&mask) => RegularityVerdict::violated(vec![subset_of(&elems, mask, g)]),
                None => RegularityVerdict::ok(VerdictStatus::VerifiedExact),
            })
        }
        CheckMode::Sampled { trials, seed } => {
            let by_pos: Vec<Vec<(usize, usize, usize)>> = triple_lists(&elems, &pos, g);
            for t in 0..trials {
                let mut rng = SplitMix64::for_task(seed, t as u64);
                if let Some(sub) = descend_product_free(m, min_size, &by_pos, &mut rng) {
                    let witness = GroupSubset::new(g.clone(), sub.iter().map(|&i| elems[i]));
                    return Ok(RegularityVerdict::violated(vec![witness]));
                }
            }
            Ok(RegularityVerdict::ok(VerdictStatus::NoViolationFound { samples: trials }))
        }
    }
}

/// For each position, the triples it takes part in.
fn triple_lists(
    elems: &[Elem],
    pos: &HashMap<Elem, usize>,
    g: &FiniteGroup,
) -> Vec<Vec<(usize, usize, usize)>> {
    let mut lists = vec![Vec::new(); elems.len()];
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            if let Some(&k) = pos.get(&g.mul(x, y)) {
                let t = (i, j, k);
                lists[i].push(t);
                if j != i {
                    lists[j].push(t);
                }
                if k != i && k != j {
                    lists[k].push(t);
                }
            }
        }
    }
    lists
}

/// Random subset of the given size, then swap moves that lower the number of
/// internal triples. Returns the member positions if it reaches zero.
fn descend_product_free(
    m: usize,
    size: usize,
    by_pos: &[Vec<(usize, usize, usize)>],
    rng: &mut SplitMix64,
) -> Option<Vec<usize>> {
    let mut inside = vec![false; m];
    for i in rng.sample_indices(m, size) {
        inside[i] = true;
    }
    let load = |inside: &[bool], p: usize| {
        by_pos[p]
            .iter()
            .filter(|&&(i, j, k)| {
                let on = |x: usize| x == p || inside[x];
                on(i) && on(j) && on(k)
            })
            .count()
    };
    let internal = |inside: &[bool]| {
        (0..m)
            .filter(|&p| inside[p])
            .flat_map(|p| by_pos[p].iter().copied())
            .filter(|&(i, j, k)| inside[i] && inside[j] && inside[k])
            .collect::<std::collections::HashSet<_>>()
            .len()
    };
    let mut current = internal(&inside);
    for _ in 0..4 * m {
        if current == 0 {
            return Some((0..m).filter(|&i| inside[i]).collect());
        }
        // Drop the member carrying the most triples, add the outsider that
        // would carry the fewest.
        let out = (0..m).filter(|&p| inside[p]).max_by_key(|&p| load(&inside, p))?;
        inside[out] = false;
        let add = (0..m)
            .filter(|&p| !inside[p] && p != out)
            .min_by_key(|&p| (load(&inside, p), rng.next_u64()));
        match add {
            Some(p) => inside[p] = true,
            None => {
                inside[out] = true;
                break;
            }
        }
        let next = internal(&inside);
        if next >= current {
            // no progress: random restart of a single position
            let members: Vec<usize> = (0..m).filter(|&p| inside[p]).collect();
            let outsiders: Vec<usize> = (0..m).filter(|&p| !inside[p]).collect();
            if outsiders.is_empty() {
                break;
            }
            inside[members[rng.index(members.len())]] = false;
            inside[outsiders[rng.index(outsiders.len())]] = true;
        }
        current = internal(&inside);
    }
    (current == 0).then(|| (0..m).filter(|&i| inside[i]).collect())
}

// ---------------------------------------------------------------------------
// regular position
// ---------------------------------------------------------------------------

pub fn check_regular_position(
    a: &GroupSubset,
    b: &GroupSubset,
    c: &GroupSubset,
    eps: Ratio<usize>,
    mode: CheckMode,
) -> Result<RegularityVerdict> {
    check_regular_position_with(a, b, c, eps, mode, CheckOptions::default())
}

/// `X0 X0^-1 X0`.
fn sandwich(g: &FiniteGroup, x: &Bitset) -> Bitset {
    let inv = Bitset::from_indices(g.order(), x.iter().map(|e| g.inv(e)));
    let left = product_bits(g, x, &inv);
    product_bits(g, &left, x)
}

/// Distinct values of `X0 X0^-1 X0` over qualifying `X0`, each with the least
/// mask producing it, in increasing mask order.
fn distinct_sandwiches(
    g: &FiniteGroup,
    elems: &[Elem],
    masks: &[u64],
) -> Vec<(u64, Bitset)> {
    let all: Vec<(u64, Bitset)> = masks
        .par_iter()
        .map(|&mask| {
            let bits = Bitset::from_indices(
                g.order(),
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e),
            );
            (mask, sandwich(g, &bits))
        })
        .collect();
    let mut seen: HashMap<Bitset, ()> = HashMap::new();
    let mut out = Vec::new();
    for (mask, s) in all {
        if seen.insert(s.clone(), ()).is_none() {
            out.push((mask, s));
        }
    }
    out
}

/// The inclusion-minimal members of `sets`.
fn minimal_sets(sets: &[(u64, Bitset)]) -> Vec<Bitset> {
    let mut by_size: Vec<&Bitset> = sets.iter().map(|(_, s)| s).collect();
    by_size.sort_by_key(|s| s.count_ones());
    let mut kept: Vec<Bitset> = Vec::new();
    for s in by_size {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s.clone());
        }
    }
    kept
}

/// `A, B, C` are in `ε`-regular position when
/// `(A0 A0^-1 A0)(B0 B0^-1 B0) ∩ C0 C0^-1 C0 ≠ ∅` for all `A0 ⊆ A`, `B0 ⊆ B`,
/// `C0 ⊆ C` of relative density at least `ε`.
///
/// The exact check groups subsets by their sandwich `X0 X0^-1 X0`. Shrinking
/// a sandwich keeps a triple incompatible, so a violation exists iff one
/// exists among inclusion-minimal sandwiches; the least witness is then found
/// by scanning distinct sandwiches in order of their least mask.
pub fn check_regular_position_with(
    a: &GroupSubset,
    b: &GroupSubset,
    c: &GroupSubset,
    eps: Ratio<usize>,
    mode: CheckMode,
    opts: CheckOptions,
) -> Result<RegularityVerdict> {
    check_epsilon(eps)?;
    a.ensure_same_group(b)?;
    a.ensure_same_group(c)?;
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = a.group().clone();
    let parts: [Vec<Elem>; 3] = [a.elements(), b.elements(), c.elements()];
    match mode {
        CheckMode::Exact => {
            let cap = opts.exact_cap.unwrap_or(REGULAR_POSITION_EXACT_CAP);
            if let Some(big) = parts.iter().map(Vec::len).find(|&m| m > cap || m > 63) {
                return Err(Error::ExactCapExceeded { size: big, cap });
            }
            let distinct: Vec<Vec<(u64, Bitset)>> = parts
                .iter()
                .map(|elems| {
                    let m = elems.len();
                    let masks = qualifying_masks(m, min_qualifying_size(m, eps), opts.minimal_size_only);
                    distinct_sandwiches(&g, elems, &masks)
                })
                .collect();
            let minimal: Vec<Vec<Bitset>> = distinct.iter().map(|d| minimal_sets(d)).collect();
            let violated_with = |sa: &Bitset, sb: Option<&Bitset>| -> bool {
                let bs: Vec<&Bitset> = match sb {
                    Some(s) => vec![s],
                    None => minimal[1].iter().collect(),
                };
                bs.iter().any(|sb| {
                    let p = product_bits(&g, sa, sb);
                    minimal[2].iter().any(|sc| !p.intersects(sc))
                })
            };
            let any = minimal[0].par_iter().any(|sa| violated_with(sa, None));
            if !any {
                return Ok(RegularityVerdict::ok(VerdictStatus::VerifiedExact));
            }
            let (ma, sa) = distinct[0]
                .iter()
                .find(|(_, sa)| violated_with(sa, None))
                .expect("a violating A-sandwich exists");
            let (mb, sb) = distinct[1]
                .iter()
                .find(|(_, sb)| violated_with(sa, Some(sb)))
                .expect("a violating B-sandwich exists");
            let p = product_bits(&g, sa, sb);
            let (mc, _) = distinct[2]
                .iter()
                .find(|(_, sc)| !p.intersects(sc))
                .expect("a violating C-sandwich exists");
            Ok(RegularityVerdict::violated(vec![
                subset_of(&parts[0], *ma, &g),
                subset_of(&parts[1], *mb, &g),
                subset_of(&parts[2], *mc, &g),
            ]))
        }
        CheckMode::Sampled { trials, seed } => {
            let sizes: Vec<usize> = parts
                .iter()
                .map(|p| min_qualifying_size(p.len(), eps))
                .collect();
            for t in 0..trials {
                let mut rng = SplitMix64::for_task(seed, t as u64);
                if let Some(w) = descend_regular(&g, &parts, &sizes, &mut rng) {
                    return Ok(RegularityVerdict::violated(w));
                }
            }
            Ok(RegularityVerdict::ok(VerdictStatus::NoViolationFound { samples: trials }))
        }
    }
}

fn overlap(g: &FiniteGroup, sets: &[Bitset; 3]) -> usize {
    let s: Vec<Bitset> = sets.iter().map(|x| sandwich(g, x)).collect();
    product_bits(g, &s[0], &s[1]).intersection_count(&s[2])
}

/// Random minimal-size subsets, then first-improvement single swaps lowering
/// `|(A0A0⁻¹A0)(B0B0⁻¹B0) ∩ C0C0⁻¹C0|`.
fn descend_regular(
    g: &Arc<FiniteGroup>,
    parts: &[Vec<Elem>; 3],
    sizes: &[usize],
    rng: &mut SplitMix64,
) -> Option<Vec<GroupSubset>> {
    let n = g.order();
    let mut chosen: [Bitset; 3] = std::array::from_fn(|i| {
        Bitset::from_indices(
            n,
            rng.sample_indices(parts[i].len(), sizes[i])
                .into_iter()
                .map(|p| parts[i][p]),
        )
    });
    let mut score = overlap(g, &chosen);
    let max_rounds = 2 * parts.iter().map(Vec::len).sum::<usize>();
    'rounds: for _ in 0..max_rounds {
        if score == 0 {
            break;
        }
        let which = rng.index(3);
        let members: Vec<Elem> = chosen[which].iter().collect();
        let outsiders: Vec<Elem> = parts[which]
            .iter()
            .copied()
            .filter(|&e| !chosen[which].contains(e))
            .collect();
        for &out in &members {
            for &inn in &outsiders {
                let mut trial = chosen.clone();
                trial[which].remove(out);
                trial[which].insert(inn);
                let s = overlap(g, &trial);
                if s < score {
                    chosen = trial;
                    score = s;
                    continue 'rounds;
                }
            }
        }
    }
    (score == 0).then(|| {
        chosen
            .into_iter()
            .map(|bits| GroupSubset::from_bits(g.clone(), bits))
            .collect()
    })
}

/// Re-checks a product-rich violation against the definition using plain set
/// operations.
pub fn witness_violates_product_rich(a: &GroupSubset, eps: Ratio<usize>, w: &GroupSubset) -> bool {
    w.is_subset(a)
        && qualifies(w.card(), a.card(), eps)
        && !w.product(w).map(|p| p.bits().intersects(w.bits())).unwrap_or(true)
}

/// Re-checks a regular-position violation against the definition.
pub fn witness_violates_regular_position(
    sets: [&GroupSubset; 3],
    eps: Ratio<usize>,
    w: &[GroupSubset],
) -> bool {
    if w.len() != 3 {
        return false;
    }
    let sandwich_of = |x: &GroupSubset| -> Option<GroupSubset> {
        x.product(&x.inverse_set()).ok()?.product(x).ok()
    };
    for (x0, x) in w.iter().zip(sets) {
        if !x0.is_subset(x) || !qualifies(x0.card(), x.card(), eps) {
            return false;
        }
    }
    match (sandwich_of(&w[0]), sandwich_of(&w[1]), sandwich_of(&w[2])) {
        (Some(sa), Some(sb), Some(sc)) => match sa.product(&sb) {
            Ok(p) => !p.bits().intersects(sc.bits()),
            Err(_) => false,
        },
        _ => false,
    }
}
