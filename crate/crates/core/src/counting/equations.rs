//! Three-term progressions, power equations and fiber equations.

use rayon::prelude::*;
use serde::Serialize;

use super::{
    cyclic_convolution, indicator, ratio_u128, weighted_triple_count, CountReport, Engine,
    EngineChoice,
};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::sets::GroupSubset;

/// Pairs `(a, b)` with `a, ab, ab²` all in `A`. Pairs with `b = id` are
/// degenerate; the normalizer is `|A|²`.
///
/// Substituting `y = ab` turns the condition into `y a⁻¹ y ∈ A` for
/// `a, y ∈ A`. In an abelian group that is `x + z = 2y`, which the FFT and
/// Cayley engines evaluate as `Σ_{y∈A} (1_A ∗ 1_A)(2y)`.
pub fn count_ap3(a: &GroupSubset, choice: EngineChoice) -> Result<CountReport> {
    let g = a.group();
    let engine = choice.resolve(g)?;
    let abelian = g.is_abelian();
    if engine == Engine::CayleyConvolution && !abelian {
        return Err(Error::InvalidParameter(
            "the convolution form of ap3 needs an abelian group".into(),
        ));
    }
    let elems = a.elements();
    let count = match engine {
        Engine::BruteForce => elems
            .par_iter()
            .map(|&x| {
                let xi = g.inv(x);
                elems
                    .iter()
                    .filter(|&&y| a.contains(g.mul(g.mul(y, xi), y)))
                    .count() as u64
            })
            .sum(),
        Engine::CayleyConvolution | Engine::AbelianFft => {
            let ind = indicator(a);
            let conv = match engine {
                Engine::AbelianFft => {
                    cyclic_convolution(g.cyclic_factors().expect("resolved"), &ind, &ind).0
                }
                _ => super::cayley_convolution(g, &ind, &ind),
            };
            elems.iter().map(|&y| conv[g.mul(y, y)]).sum()
        }
    };
    let k = a.card() as u128;
    Ok(CountReport::new(count, a.card() as u64, ratio_u128(k * k, 1), engine))
}

/// Power-equation count together with the torsion check on `A`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerReport {
    #[serde(flatten)]
    pub report: CountReport,
    /// No element of `A` other than the identity has order dividing any exponent.
    pub torsion_free: bool,
}

fn pushforward(a: &GroupSubset, f: impl Fn(Elem) -> Elem) -> Vec<u64> {
    let mut w = vec![0u64; a.group().order()];
    for x in a.iter() {
        w[f(x)] += 1;
    }
    w
}

/// `|{(x, y, z) ∈ A³ : x^n1 y^n2 = z^n3}|` with degenerate solutions `x = y = z`.
pub fn count_power_equation(
    a: &GroupSubset,
    exps: (u64, u64, u64),
    choice: EngineChoice,
) -> Result<PowerReport> {
    let (n1, n2, n3) = exps;
    if n1 == 0 || n2 == 0 || n3 == 0 {
        return Err(Error::InvalidParameter("exponents must be at least 1".into()));
    }
    let g = a.group();
    let engine = choice.resolve(g)?;
    let p1 = pushforward(a, |x| g.pow(x, n1));
    let p2 = pushforward(a, |x| g.pow(x, n2));
    let p3 = pushforward(a, |x| g.pow(x, n3));
    let count = weighted_triple_count(g, &p1, &p2, &p3, engine);
    let degenerate = a
        .iter()
        .filter(|&x| g.mul(g.pow(x, n1), g.pow(x, n2)) == g.pow(x, n3))
        .count() as u64;
    let id = g.identity();
    let torsion_free = a.iter().filter(|&x| x != id).all(|x| {
        let o = g.element_order(x) as u64;
        n1 % o != 0 && n2 % o != 0 && n3 % o != 0
    });
    let k = a.card() as u128;
    Ok(PowerReport {
        report: CountReport::new(count, degenerate, ratio_u128(k * k, 1), engine),
        torsion_free,
    })
}

/// A map defined on a subset `A`, with values anywhere in the group and every
/// fiber inside `A` of size at most `fiber_bound`.
#[derive(Debug, Clone)]
pub struct FiberFunction {
    domain: GroupSubset,
    values: Vec<Elem>,
    fiber_bound: usize,
}

impl FiberFunction {
    pub fn new(domain: GroupSubset, map: impl Fn(Elem) -> Elem, fiber_bound: usize) -> Result<Self> {
        let n = domain.group().order();
        let mut values = vec![domain.group().identity(); n];
        let mut fibers = vec![0usize; n];
        for x in domain.iter() {
            let y = map(x);
            if y >= n {
                return Err(Error::InvalidParameter(format!(
                    "map sends {x} to {y}, outside the group"
                )));
            }
            values[x] = y;
            fibers[y] += 1;
        }
        let actual = fibers.into_iter().max().unwrap_or(0);
        if actual > fiber_bound {
            return Err(Error::FiberBoundExceeded {
                actual,
                bound: fiber_bound,
            });
        }
        Ok(FiberFunction {
            domain,
            values,
            fiber_bound,
        })
    }

    /// `x ↦ x^n`, with the fiber bound taken as the largest fiber it has on `A`.
    pub fn power(domain: GroupSubset, n: u64) -> Self {
        let g = domain.group().clone();
        let mut fibers = vec![0usize; g.order()];
        for x in domain.iter() {
            fibers[g.pow(x, n)] += 1;
        }
        let bound = fibers.into_iter().max().unwrap_or(0);
        Self::new(domain, |x| g.pow(x, n), bound).expect("bound is exact")
    }

    pub fn identity(domain: GroupSubset) -> Self {
        Self::new(domain, |x| x, 1).expect("injective")
    }

    pub fn domain(&self) -> &GroupSubset {
        &self.domain
    }

    pub fn fiber_bound(&self) -> usize {
        self.fiber_bound
    }

    /// Value at `x`; only meaningful for `x` in the domain.
    pub fn apply(&self, x: Elem) -> Elem {
        self.values[x]
    }
}

/// `|{(a1, a2, a3) ∈ A³ : f1(a1) f2(a2) = f3(a3)}|` with normalizer `|A|²`.
///
/// The pointwise identity `f1(a) f2(a) = f3(a)` must hold on at least
/// `min_fraction · |A|` elements; those diagonal solutions are the degenerate ones.
pub fn count_fiber_equation(
    f1: &FiberFunction,
    f2: &FiberFunction,
    f3: &FiberFunction,
    min_fraction: f64,
    choice: EngineChoice,
) -> Result<CountReport> {
    let a = &f1.domain;
    if f2.domain != *a || f3.domain != *a {
        return Err(Error::DomainMismatch);
    }
    if !(0.0..=1.0).contains(&min_fraction) {
        return Err(Error::InvalidParameter(format!(
            "pointwise fraction {min_fraction} is outside [0, 1]"
        )));
    }
    let g = a.group();
    let engine = choice.resolve(g)?;
    let holds = a
        .iter()
        .filter(|&x| g.mul(f1.apply(x), f2.apply(x)) == f3.apply(x))
        .count();
    let total = a.card();
    if (holds as f64) < min_fraction * total as f64 {
        return Err(Error::PointwiseIdentityFailed { holds, total });
    }
    let w1 = pushforward(a, |x| f1.apply(x));
    let w2 = pushforward(a, |x| f2.apply(x));
    let w3 = pushforward(a, |x| f3.apply(x));
    let count = weighted_triple_count(g, &w1, &w2, &w3, engine);
    let k = total as u128;
    Ok(CountReport::new(count, holds as u64, ratio_u128(k * k, 1), engine))
}
