//! Named families of subsets: intervals, generalized arithmetic
//! progressions, random sets, subgroups and explicit lists.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::GroupSubset;
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq)]
pub enum SetKind {
    /// `{lo, lo+1, ..., lo+len-1}` in a cyclic-product group.
    Interval { lo: Elem, len: usize },
    /// `{base + Σ t_i step_i : 0 <= t_i < len_i}` in a cyclic-product group.
    Gap {
        base: Elem,
        steps: Vec<(Elem, usize)>,
    },
    /// Each element independently with probability `density`.
    Random { density: f64, seed: u64 },
    Subgroup(Vec<Elem>),
    Explicit(Vec<Elem>),
}

fn bad(s: &str, reason: &str) -> Error {
    Error::InvalidParameter(format!("set spec `{s}`: {reason}"))
}

fn nums<T: FromStr>(s: &str, field: &str) -> Result<Vec<T>> {
    field
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| bad(s, &format!("bad number `{t}`"))))
        .collect()
}

impl FromStr for SetKind {
    type Err = Error;

    /// `interval:lo,len`, `gap:base;step1,len1;step2,len2`,
    /// `random:density,seed`, `subgroup:g1,g2`, `explicit:i1,i2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad(s, "missing `kind:`"))?;
        match kind {
            "interval" => match nums::<usize>(s, rest)?[..] {
                [lo, len] => Ok(SetKind::Interval { lo, len }),
                _ => Err(bad(s, "expected interval:lo,len")),
            },
            "gap" => {
                let mut parts = rest.split(';');
                let base = parts
                    .next()
                    .and_then(|b| b.trim().parse().ok())
                    .ok_or_else(|| bad(s, "missing base"))?;
                let steps = parts
                    .map(|p| match nums::<usize>(s, p)?[..] {
                        [step, len] => Ok((step, len)),
                        _ => Err(bad(s, "each step is `step,len`")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SetKind::Gap { base, steps })
            }
            "random" => {
                let (d, seed) = rest.split_once(',').ok_or_else(|| bad(s, "expected random:density,seed"))?;
                let density: f64 = d.trim().parse().map_err(|_| bad(s, "bad density"))?;
                let seed: u64 = seed.trim().parse().map_err(|_| bad(s, "bad seed"))?;
                Ok(SetKind::Random { density, seed })
            }
            "subgroup" => Ok(SetKind::Subgroup(nums(s, rest)?)),
            "explicit" => Ok(SetKind::Explicit(nums(s, rest)?)),
            _ => Err(bad(s, "unknown set kind")),
        }
    }
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            SetKind::Interval { lo, len } => write!(f, "interval:{lo},{len}"),
            SetKind::Gap { base, steps } => {
                write!(f, "gap:{base}")?;
                for (s, l) in steps {
                    write!(f, ";{s},{l}")?;
                }
                Ok(())
            }
            SetKind::Random { density, seed } => write!(f, "random:{density},{seed}"),
            SetKind::Subgroup(g) => write!(f, "subgroup:{}", join(g)),
            SetKind::Explicit(e) => write!(f, "explicit:{}", join(e)),
        }
    }
}

impl Serialize for SetKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SetKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn make_set(group: &Arc<FiniteGroup>, kind: &SetKind) -> Result<GroupSubset> {
    let g = group.as_ref();
    let n = g.order();
    let check = |x: Elem| {
        if x < n {
            Ok(x)
        } else {
            Err(Error::InvalidParameter(format!("element {x} out of range (order {n})")))
        }
    };
    let bits = match kind {
        SetKind::Interval { lo, len } => {
            return make_set(
                group,
                &SetKind::Gap {
                    base: *lo,
                    steps: vec![(1.min(n - 1), *len)],
                },
            )
            .map_err(|e| relabel(e, kind, g));
        }
        SetKind::Gap { base, steps } => {
            if g.cyclic_factors().is_none() {
                return Err(unsupported(kind, g));
            }
            let mut bits = Bitset::from_indices(n, [check(*base)?]);
            for &(step, len) in steps {
                check(step)?;
                if len == 0 {
                    return Err(Error::InvalidParameter("progression lengths must be positive".into()));
                }
                let mut next = Bitset::new(n);
                for x in bits.iter() {
                    let mut y = x;
                    for _ in 0..len {
                        next.insert(y);
                        y = g.mul(y, step);
                    }
                }
                bits = next;
            }
            bits
        }
        SetKind::Random { density, seed } => {
            if !(0.0..=1.0).contains(density) {
                return Err(Error::InvalidParameter(format!("density {density} not in [0, 1]")));
            }
            let mut rng = SplitMix64::new(*seed);
            Bitset::from_indices(n, (0..n).filter(|_| rng.bernoulli(*density)))
        }
        SetKind::Subgroup(gens) => {
            let gens = gens.iter().map(|&x| check(x)).collect::<Result<Vec<_>>>()?;
            g.subgroup_closure(&gens)
        }
        SetKind::Explicit(elems) => {
            let elems = elems.iter().map(|&x| check(x)).collect::<Result<Vec<_>>>()?;
            Bitset::from_indices(n, elems)
        }
    };
    Ok(GroupSubset::from_bits(group.clone(), bits))
}

fn unsupported(kind: &SetKind, g: &FiniteGroup) -> Error {
    Error::KindUnsupportedForGroup {
        kind: kind.to_string(),
        group: g.name().to_string(),
    }
}

fn relabel(e: Error, kind: &SetKind, g: &FiniteGroup) -> Error {
    match e {
        Error::KindUnsupportedForGroup { .. } => unsupported(kind, g),
        other => other,
    }
}
