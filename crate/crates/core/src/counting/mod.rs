//! Exact solution counts for group equations.
//!
//! Every count here reduces to the weighted triple sum
//! `Σ_{a,b} f(a) g(b) h(ab)` for nonnegative integer weights on the group,
//! evaluated by one of three engines that must agree exactly:
//! a brute-force loop over the supports, a convolution over the Cayley table,
//! and (for cyclic-product groups) an exact FFT convolution.

mod convolution;
mod equations;
mod identity;
mod mixing;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

pub use convolution::{cyclic_convolution, naive_convolution, ConvolutionKernel};
pub use equations::{
    count_ap3, count_fiber_equation, count_power_equation, FiberFunction, PowerReport,
};
pub use identity::{convolution_identity_check, IdentityCertificate};
pub use mixing::{count_mixing_tuples, ordered_product, MIXING_BUDGET};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::sets::GroupSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Engine {
    BruteForce,
    CayleyConvolution,
    AbelianFft,
}

/// Engine request; `Auto` picks the FFT for cyclic-product groups and brute
/// force otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineChoice {
    #[default]
    Auto,
    Brute,
    Cayley,
    Fft,
}

impl std::str::FromStr for EngineChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(EngineChoice::Auto),
            "brute" => Ok(EngineChoice::Brute),
            "cayley" => Ok(EngineChoice::Cayley),
            "fft" => Ok(EngineChoice::Fft),
            _ => Err(Error::InvalidParameter(format!("unknown engine `{s}`"))),
        }
    }
}

impl EngineChoice {
    pub(crate) fn resolve(self, g: &FiniteGroup) -> Result<Engine> {
        match self {
            EngineChoice::Auto if g.cyclic_factors().is_some() => Ok(Engine::AbelianFft),
            EngineChoice::Auto | EngineChoice::Brute => Ok(Engine::BruteForce),
            EngineChoice::Cayley => Ok(Engine::CayleyConvolution),
            EngineChoice::Fft if g.cyclic_factors().is_some() => Ok(Engine::AbelianFft),
            EngineChoice::Fft => Err(Error::InvalidParameter(format!(
                "the FFT engine needs a cyclic-product group, got {}",
                g.name()
            ))),
        }
    }
}

/// An exact count with its reference normalizer.
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub count: u64,
    pub degenerate_count: u64,
    pub normalizer: Ratio<u128>,
    pub engine: Engine,
}

impl CountReport {
    pub fn new(count: u64, degenerate_count: u64, normalizer: Ratio<u128>, engine: Engine) -> Self {
        debug_assert!(count >= degenerate_count);
        CountReport {
            count,
            degenerate_count,
            normalizer,
            engine,
        }
    }

    /// `count / normalizer`, or 0 when the normalizer vanishes.
    pub fn ratio(&self) -> f64 {
        let num = *self.normalizer.numer();
        if num == 0 {
            return 0.0;
        }
        self.count as f64 * *self.normalizer.denom() as f64 / num as f64
    }

    pub fn nondegenerate(&self) -> u64 {
        self.count - self.degenerate_count
    }
}

impl Serialize for CountReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CountReport", 6)?;
        st.serialize_field("count", &self.count)?;
        st.serialize_field("degenerate", &self.degenerate_count)?;
        st.serialize_field("normalizer_num", self.normalizer.numer())?;
        st.serialize_field("normalizer_den", self.normalizer.denom())?;
        st.serialize_field("ratio", &self.ratio())?;
        st.serialize_field("engine", &self.engine)?;
        st.end()
    }
}

pub(crate) fn ratio_u128(num: u128, den: u128) -> Ratio<u128> {
    Ratio::new(num, den.max(1))
}

pub(crate) fn indicator(a: &GroupSubset) -> Vec<u64> {
    let mut v = vec![0u64; a.group().order()];
    for x in a.iter() {
        v[x] = 1;
    }
    v
}

fn support(w: &[u64]) -> Vec<(Elem, u64)> {
    w.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect()
}

/// `Σ_{a,b} f(a) g(b) h(ab)`.
pub fn weighted_triple_count(g: &FiniteGroup, f: &[u64], w: &[u64], h: &[u64], engine: Engine) -> u64 {
    let n = g.order();
    assert!(f.len() == n && w.len() == n && h.len() == n);
    match engine {
        Engine::BruteForce => {
            let sw = support(w);
            support(f)
                .par_iter()
                .map(|&(a, fa)| {
                    sw.iter()
                        .map(|&(b, wb)| fa * wb * h[g.mul(a, b)])
                        .sum::<u64>()
                })
                .sum()
        }
        Engine::CayleyConvolution => {
            let conv = cayley_convolution(g, f, w);
            conv.iter().zip(h).map(|(c, hv)| c * hv).sum()
        }
        Engine::AbelianFft => {
            let dims = g
                .cyclic_factors()
                .expect("FFT engine requires a cyclic-product group");
            let (conv, _) = cyclic_convolution(dims, f, w);
            conv.iter().zip(h).map(|(c, hv)| c * hv).sum()
        }
    }
}

/// `(f ∗ w)(x) = Σ_a f(a) w(a⁻¹x)`, one table row of `a⁻¹` per support point.
pub fn cayley_convolution(g: &FiniteGroup, f: &[u64], w: &[u64]) -> Vec<u64> {
    let n = g.order();
    let sf = support(f);
    let chunk = (sf.len() / rayon::current_num_threads().max(1)).max(16);
    sf.par_chunks(chunk)
        .map(|part| {
            let mut acc = vec![0u64; n];
            for &(a, fa) in part {
                let ai = g.inv(a);
                match g.table_row(ai) {
                    Some(row) => {
                        for (x, slot) in acc.iter_mut().enumerate() {
                            *slot += fa * w[row[x] as usize];
                        }
                    }
                    None => {
                        for (x, slot) in acc.iter_mut().enumerate() {
                            *slot += fa * w[g.mul(ai, x)];
                        }
                    }
                }
            }
            acc
        })
        .reduce(
            || vec![0u64; n],
            |mut x, y| {
                for (p, q) in x.iter_mut().zip(y) {
                    *p += q;
                }
                x
            },
        )
}

/// `|{(a, b, c) ∈ A×B×C : ab = c}|`, normalized by `|A||B||C| / |G|`. The
/// degenerate solution is `(id, id, id)`.
pub fn count_xy_eq_z(
    a: &GroupSubset,
    b: &GroupSubset,
    c: &GroupSubset,
    choice: EngineChoice,
) -> Result<CountReport> {
    a.ensure_same_group(b)?;
    a.ensure_same_group(c)?;
    let g = a.group();
    let engine = choice.resolve(g)?;
    let count = match engine {
        Engine::BruteForce => {
            let bs = b.elements();
            let a_elems = a.elements();
            a_elems
                .par_iter()
                .map(|&x| bs.iter().filter(|&&y| c.contains(g.mul(x, y))).count() as u64)
                .sum()
        }
        _ => weighted_triple_count(g, &indicator(a), &indicator(b), &indicator(c), engine),
    };
    let id = g.identity();
    let degenerate = u64::from(a.contains(id) && b.contains(id) && c.contains(id));
    let normalizer = ratio_u128(
        a.card() as u128 * b.card() as u128 * c.card() as u128,
        g.order() as u128,
    );
    Ok(CountReport::new(count, degenerate, normalizer, engine))
}
