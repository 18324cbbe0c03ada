//! Tuples whose ordered subproducts all lie in one set.

use rayon::prelude::*;
use serde::Serialize;

use super::Coloring;
use crate::counting::ordered_product;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::sets::GroupSubset;

/// Default node budget for the backtracking search.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// `(a_1..a_n)` together with every ordered subproduct `a_F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleWitness {
    pub elements: Vec<Elem>,
    /// Color class the products lie in, when the tuple came from a coloring.
    pub color: Option<usize>,
    /// `products[mask - 1] = a_F`, bit `i` of `mask` standing for index `i + 1`.
    pub products: Vec<Elem>,
}

impl TupleWitness {
    fn from_elements(g: &FiniteGroup, elements: Vec<Elem>, color: Option<usize>) -> Self {
        let products = (1..1usize << elements.len())
            .map(|m| ordered_product(g, &elements, m))
            .collect();
        TupleWitness {
            elements,
            color,
            products,
        }
    }

    /// Recomputes each `a_F` left to right and checks it against the stored
    /// value and membership in `set`; with `nontrivial`, also that no `a_F`
    /// is the identity.
    pub fn validate(&self, set: &GroupSubset, nontrivial: bool) -> Result<()> {
        let g = set.group();
        let n = self.elements.len();
        if self.products.len() + 1 != 1 << n {
            return Err(Error::ValidationFailed(format!(
                "{} products stored for {n} elements",
                self.products.len()
            )));
        }
        for mask in 1..1usize << n {
            let mut p = g.identity();
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    p = g.mul(p, self.elements[i]);
                }
            }
            if p != self.products[mask - 1] {
                return Err(Error::ValidationFailed(format!("stored product for mask {mask:#b} is wrong")));
            }
            if !set.contains(p) {
                return Err(Error::ValidationFailed(format!("product for mask {mask:#b} leaves the set")));
            }
            if nontrivial && p == g.identity() {
                return Err(Error::ValidationFailed(format!("product for mask {mask:#b} is the identity")));
            }
        }
        Ok(())
    }

    /// [`TupleWitness::validate`] against the witness's own color class.
    pub fn validate_coloring(&self, coloring: &Coloring, nontrivial: bool) -> Result<()> {
        let color = self
            .color
            .ok_or_else(|| Error::ValidationFailed("witness carries no color".into()))?;
        self.validate(&coloring.class(color), nontrivial)
    }
}

/// Where the greedy recursion ran dry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureTrace {
    /// `|B_0|, |B_1|, ...` up to the first empty set.
    pub sizes: Vec<usize>,
    /// Elements chosen before the failure.
    pub chosen: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HindmanOutcome {
    Found(TupleWitness),
    Failed(FailureTrace),
}

/// Greedy shrinking: `B_0 = A` (without the identity when `nontrivial`);
/// pick `a_i ∈ B_i` maximizing `|B_i ∩ a_i⁻¹ B_i|`, least index on ties, and
/// set `B_{i+1} = B_i ∩ a_i⁻¹ B_i`. Every product `a_F` with least index `i`
/// lies in `B_i`, so success needs only `n` nonempty steps; the witness is
/// still re-validated.
pub fn hindman_greedy(a: &GroupSubset, n: usize, nontrivial: bool) -> Result<HindmanOutcome> {
    if n == 0 {
        return Err(Error::InvalidParameter("tuple length must be at least 1".into()));
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = a.group();
    let mut b = a.bits().clone();
    if nontrivial {
        b.remove(g.identity());
    }
    let mut sizes = Vec::with_capacity(n + 1);
    let mut chosen = Vec::with_capacity(n);
    for _ in 0..n {
        let members: Vec<Elem> = b.iter().collect();
        sizes.push(members.len());
        if members.is_empty() {
            return Ok(HindmanOutcome::Failed(FailureTrace { sizes, chosen }));
        }
        // |B ∩ x⁻¹B| = #{y ∈ B : x y ∈ B}
        let (_, pick) = members
            .par_iter()
            .map(|&x| {
                let hits = members.iter().filter(|&&y| b.contains(g.mul(x, y))).count();
                (hits, std::cmp::Reverse(x))
            })
            .max()
            .map(|(h, r)| (h, r.0))
            .expect("nonempty");
        let next = members.iter().copied().filter(|&y| b.contains(g.mul(pick, y)));
        b = crate::bitset::Bitset::from_indices(g.order(), next);
        chosen.push(pick);
    }
    let witness = TupleWitness::from_elements(g, chosen, None);
    witness.validate(a, nontrivial)?;
    Ok(HindmanOutcome::Found(witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_budget: u64,
    pub nontrivial: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            nontrivial: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Witness(TupleWitness),
    /// No color produced a witness; `budget_hit` is false only when every
    /// search tree was explored completely.
    Exhausted { budget_hit: bool },
}

enum ColorResult {
    Found(TupleWitness),
    Absent,
    BudgetHit,
}

/// Looks for a monochromatic tuple, color by color: the greedy first, then
/// backtracking over `(a_1..a_n)` with prefix pruning. Returns the witness
/// of the least color that has one.
pub fn monochromatic_tuple_search(
    coloring: &Coloring,
    n: usize,
    options: SearchOptions,
) -> Result<SearchOutcome> {
    if n < 2 {
        return Err(Error::InvalidParameter("tuple length must be at least 2".into()));
    }
    let g = coloring.group();
    let id_color = coloring.color(g.identity());
    let results: Vec<ColorResult> = (0..coloring.k())
        .into_par_iter()
        .map(|j| -> Result<ColorResult> {
            if !options.nontrivial && j == id_color {
                let w = TupleWitness::from_elements(g, vec![g.identity(); n], Some(j));
                return Ok(ColorResult::Found(w));
            }
            let class = coloring.class(j);
            if class.is_empty() {
                return Ok(ColorResult::Absent);
            }
            if let HindmanOutcome::Found(mut w) = hindman_greedy(&class, n, options.nontrivial)? {
                w.color = Some(j);
                return Ok(ColorResult::Found(w));
            }
            Ok(backtrack(g, &class, n, options, j))
        })
        .collect::<Result<_>>()?;
    let mut budget_hit = false;
    for r in results {
        match r {
            ColorResult::Found(w) => {
                w.validate_coloring(coloring, options.nontrivial)?;
                return Ok(SearchOutcome::Witness(w));
            }
            ColorResult::BudgetHit => budget_hit = true,
            ColorResult::Absent => {}
        }
    }
    Ok(SearchOutcome::Exhausted { budget_hit })
}

struct Backtrack<'a> {
    g: &'a FiniteGroup,
    class: &'a GroupSubset,
    candidates: Vec<Elem>,
    n: usize,
    nontrivial: bool,
    nodes: u64,
    budget: u64,
    prods: Vec<Elem>,
    tuple: Vec<Elem>,
}

impl Backtrack<'_> {
    /// `Some(true)` on a witness, `Some(false)` when the subtree is empty,
    /// `None` when the budget ran out.
    fn extend(&mut self, k: usize) -> Option<bool> {
        if k == self.n {
            return Some(true);
        }
        let bit = 1usize << k;
        let id = self.g.identity();
        for ci in 0..self.candidates.len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let x = self.candidates[ci];
            self.prods[bit] = x;
            let ok = (1..bit).all(|m| {
                let p = self.g.mul(self.prods[m], x);
                self.prods[m | bit] = p;
                self.class.contains(p) && !(self.nontrivial && p == id)
            });
            if !ok {
                continue;
            }
            self.tuple[k] = x;
            match self.extend(k + 1) {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }
}

fn backtrack(g: &FiniteGroup, class: &GroupSubset, n: usize, options: SearchOptions, color: usize) -> ColorResult {
    let id = g.identity();
    let candidates: Vec<Elem> = class
        .iter()
        .filter(|&x| !(options.nontrivial && x == id))
        .collect();
    let mut state = Backtrack {
        g,
        class,
        candidates,
        n,
        nontrivial: options.nontrivial,
        nodes: 0,
        budget: options.node_budget,
        prods: vec![id; 1 << n],
        tuple: vec![id; n],
    };
    match state.extend(0) {
        Some(true) => ColorResult::Found(TupleWitness::from_elements(g, state.tuple, Some(color))),
        Some(false) => ColorResult::Absent,
        None => ColorResult::BudgetHit,
    }
}
