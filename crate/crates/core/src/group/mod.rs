//! Explicit finite groups on the dense index space `0..n`, identity at 0.

mod classes;
pub mod field;
mod perm;
mod psl2;
mod spec;
mod table;

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

pub use classes::ConjugacyClasses;
pub use perm::Permutation;
pub use spec::{build_group, build_group_with, BuildOptions, GroupSpec};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Element index.
pub type Elem = usize;

pub const IDENTITY: Elem = 0;

/// Groups up to this order get a stored multiplication table.
pub const TABLE_LIMIT: usize = 4096;

/// Above this order the associativity check samples triples.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 512;

pub(crate) enum Formula {
    Table,
    Cyclic(usize),
    Product {
        factors: Vec<FiniteGroup>,
        strides: Vec<usize>,
    },
    Psl2(psl2::Psl2),
    Perm(perm::PermData),
}

pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    formula: Formula,
    cyclic_factors: Option<Vec<usize>>,
    labels: Option<Vec<String>>,
    generators: OnceLock<Vec<Elem>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    pub(crate) fn from_formula(
        name: String,
        order: usize,
        formula: Formula,
        cyclic_factors: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Self {
        let mut g = FiniteGroup {
            name,
            order,
            table: None,
            inverse: Vec::new(),
            formula,
            cyclic_factors,
            labels,
            generators: OnceLock::new(),
        };
        g.inverse = g.formula_inverses();
        if order <= TABLE_LIMIT {
            let table = (0..order)
                .flat_map(|a| (0..order).map(move |b| (a, b)))
                .map(|(a, b)| g.formula_mul(a, b) as u32)
                .collect();
            g.table = Some(table);
        }
        g
    }

    pub(crate) fn from_table(
        name: String,
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Self {
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            if let Some(b) = row.iter().position(|&c| c == 0) {
                inverse[a] = b as u32;
            }
        }
        FiniteGroup {
            name,
            order,
            table: Some(table),
            inverse,
            formula: Formula::Table,
            cyclic_factors: None,
            labels,
            generators: OnceLock::new(),
        }
    }

    fn formula_inverses(&self) -> Vec<u32> {
        match &self.formula {
            Formula::Table => unreachable!("table groups compute inverses from the table"),
            Formula::Cyclic(n) => (0..*n).map(|a| ((n - a) % n) as u32).collect(),
            Formula::Product { factors, strides } => (0..self.order)
                .map(|a| {
                    let mut out = 0;
                    let mut rest = a;
                    for (f, s) in factors.iter().zip(strides) {
                        out += f.inv(rest / s) * s;
                        rest %= s;
                    }
                    out as u32
                })
                .collect(),
            Formula::Psl2(m) => m.inverses(),
            Formula::Perm(p) => p.inverses(),
        }
    }

    fn formula_mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.formula {
            Formula::Table => {
                let t = self.table.as_ref().expect("table group without table");
                t[a * self.order + b] as Elem
            }
            Formula::Cyclic(n) => {
                let s = a + b;
                if s >= *n {
                    s - n
                } else {
                    s
                }
            }
            Formula::Product { factors, strides } => {
                let (mut ra, mut rb, mut out) = (a, b, 0);
                for (f, s) in factors.iter().zip(strides) {
                    out += f.mul(ra / s, rb / s) * s;
                    ra %= s;
                    rb %= s;
                }
                out
            }
            Formula::Psl2(m) => m.mul(a, b),
            Formula::Perm(p) => p.mul(a, b),
        }
    }

    /// Canonical spec string this group was built from.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        IDENTITY
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a * self.order + b] as Elem,
            None => self.formula_mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as Elem
    }

    /// Row `a` of the multiplication table, when one is stored.
    pub fn table_row(&self, a: Elem) -> Option<&[u32]> {
        self.table
            .as_ref()
            .map(|t| &t[a * self.order..(a + 1) * self.order])
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// `a^e` for `e >= 0`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least `m >= 1` with `a^m` the identity.
    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut m = 1;
        while x != IDENTITY {
            x = self.mul(x, a);
            m += 1;
        }
        m
    }

    pub fn conjugate(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// Orders of the cyclic factors when the group is `Z/n1 x ... x Z/nk` with
    /// mixed-radix indexing (first factor most significant).
    pub fn cyclic_factors(&self) -> Option<&[usize]> {
        self.cyclic_factors.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        if self.cyclic_factors.is_some() {
            return true;
        }
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// A generating set chosen greedily: scan indices upward and keep every
    /// element not already in the subgroup generated so far.
    pub fn generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut span = Bitset::from_indices(self.order, [IDENTITY]);
            let mut size = 1;
            for g in 0..self.order {
                if size == self.order {
                    break;
                }
                if !span.contains(g) {
                    gens.push(g);
                    span = self.subgroup_closure(&gens);
                    size = span.count_ones();
                }
            }
            gens
        })
    }

    /// Subgroup generated by `gens`, as a membership bitset.
    pub fn subgroup_closure(&self, gens: &[Elem]) -> Bitset {
        let mut seen = Bitset::from_indices(self.order, [IDENTITY]);
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen.contains(y) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Elem]) -> Bitset {
        let conj_by = self.generators().to_vec();
        let mut gens: Vec<Elem> = seeds.to_vec();
        let mut span = self.subgroup_closure(&gens);
        // Each pass adds a conjugate that escapes the current span, so the
        // span strictly grows and the loop ends once it is conjugation
        // invariant.
        'outer: loop {
            for i in 0..gens.len() {
                for &g in &conj_by {
                    let c = self.conjugate(gens[i], g);
                    if !span.contains(c) {
                        gens.push(c);
                        span = self.subgroup_closure(&gens);
                        continue 'outer;
                    }
                }
            }
            return span;
        }
    }

    /// Commutator subgroup `[G, G]`: the normal closure of the commutators of
    /// the generators.
    pub fn derived_subgroup(&self) -> Bitset {
        let gens = self.generators();
        let mut seeds = Vec::new();
        for &a in gens {
            for &b in gens {
                let c = self.commutator(a, b);
                if c != IDENTITY {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        ConjugacyClasses::compute(self)
    }

    /// Checks the group axioms on the stored data: two-sided identity and
    /// inverses, the Latin-square property and associativity (exhaustive up
    /// to [`FULL_ASSOCIATIVITY_LIMIT`], otherwise `10 n^2` sampled triples).
    pub fn check_axioms(&self, seed: u64) -> Result<()> {
        let n = self.order;
        let fail = |msg: String| Err(Error::NotAGroup(msg));
        for a in 0..n {
            if self.mul(IDENTITY, a) != a || self.mul(a, IDENTITY) != a {
                return fail(format!("0 is not a two-sided identity at {a}"));
            }
            let ia = self.inv(a);
            if self.mul(a, ia) != IDENTITY || self.mul(ia, a) != IDENTITY {
                return fail(format!("{a} has no two-sided inverse"));
            }
        }
        if n <= TABLE_LIMIT {
            let mut seen = vec![u32::MAX; n];
            for a in 0..n {
                for b in 0..n {
                    let c = self.mul(a, b);
                    if c >= n || seen[c] == a as u32 {
                        return fail(format!("row {a} is not a permutation"));
                    }
                    seen[c] = a as u32;
                }
            }
            seen.fill(u32::MAX);
            for b in 0..n {
                for a in 0..n {
                    let c = self.mul(a, b);
                    if seen[c] == b as u32 {
                        return fail(format!("column {b} is not a permutation"));
                    }
                    seen[c] = b as u32;
                }
            }
        }
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(seed);
            let samples = 10usize.saturating_mul(n).saturating_mul(n).min(200_000_000);
            for _ in 0..samples {
                let (a, b, c) = (rng.index(n), rng.index(n), rng.index(n));
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                }
            }
        }
        Ok(())
    }
}
