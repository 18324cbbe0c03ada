use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::GroupSubset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TriplingVariant {
    /// `|AAA| / |A|`
    #[default]
    Plain,
    /// `|A A^-1 A| / |A|`
    Mixed,
}

fn nonempty(a: &GroupSubset) -> Result<()> {
    if a.is_empty() {
        Err(Error::EmptySet)
    } else {
        Ok(())
    }
}

/// `|A·A| / |A|`.
pub fn doubling_constant(a: &GroupSubset) -> Result<Ratio<usize>> {
    nonempty(a)?;
    Ok(Ratio::new(a.product(a)?.card(), a.card()))
}

pub fn tripling_constant(a: &GroupSubset, variant: TriplingVariant) -> Result<Ratio<usize>> {
    nonempty(a)?;
    let middle = match variant {
        TriplingVariant::Plain => a.clone(),
        TriplingVariant::Mixed => a.inverse_set(),
    };
    let triple = a.product(&middle)?.product(a)?;
    Ok(Ratio::new(triple.card(), a.card()))
}

/// `[|X^{⊙i}| / |A| for i in 1..=m_max]`.
pub fn growth_profile(a: &GroupSubset, m_max: usize) -> Result<Vec<Ratio<usize>>> {
    nonempty(a)?;
    if m_max == 0 {
        return Err(Error::InvalidParameter("m_max must be at least 1".into()));
    }
    let x = a.symmetrize();
    let mut acc = x.clone();
    let mut out = Vec::with_capacity(m_max);
    out.push(Ratio::new(acc.card(), a.card()));
    for _ in 1..m_max {
        if !acc.bits().is_full() {
            acc = acc.product(&x)?;
        }
        out.push(Ratio::new(acc.card(), a.card()));
    }
    Ok(out)
}
