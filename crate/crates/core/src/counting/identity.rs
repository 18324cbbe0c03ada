//! The double-counting identity `|X||Y| = Σ_{x ∈ XY⁻¹} |X ∩ xY|`.

use serde::Serialize;

use crate::error::Result;
use crate::sets::GroupSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityCertificate {
    pub lhs: u64,
    pub rhs: u64,
    /// Number of `x ∈ XY⁻¹` summed over.
    pub terms: usize,
}

impl IdentityCertificate {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates both sides: `|X × Y|` and the sum over `XY⁻¹` of `|X ∩ xY|`.
pub fn convolution_identity_check(x: &GroupSubset, y: &GroupSubset) -> Result<IdentityCertificate> {
    x.ensure_same_group(y)?;
    let quotient = x.product(&y.inverse_set())?;
    let rhs = quotient
        .iter()
        .map(|t| x.bits().intersection_count(y.left_translate(t).bits()) as u64)
        .sum();
    Ok(IdentityCertificate {
        lhs: x.card() as u64 * y.card() as u64,
        rhs,
        terms: quotient.card(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::tests::{grp, random_set};
    use crate::rng::SplitMix64;

    #[test]
    fn examples() {
        let g = grp("Z/4");
        let c = convolution_identity_check(
            &GroupSubset::new(g.clone(), [0, 1]),
            &GroupSubset::new(g.clone(), [0, 2]),
        )
        .unwrap();
        assert_eq!((c.lhs, c.rhs, c.terms), (4, 4, 4));
        let id = GroupSubset::identity_set(g);
        let c = convolution_identity_check(&id, &id).unwrap();
        assert_eq!((c.lhs, c.rhs), (1, 1));
    }

    #[test]
    fn random_instances() {
        let mut rng = SplitMix64::new(31);
        let g = grp("perm:(1 2 3);(1 2)");
        for _ in 0..50 {
            let x = random_set(&g, 0.5, &mut rng);
            let y = random_set(&g, 0.5, &mut rng);
            // Brute-force right side: pairs (a, b) ∈ X×Y grouped by a b⁻¹.
            let mut by_quotient = vec![0u64; g.order()];
            for a in x.iter() {
                for b in y.iter() {
                    by_quotient[g.mul(a, g.inv(b))] += 1;
                }
            }
            let c = convolution_identity_check(&x, &y).unwrap();
            assert!(c.holds());
            assert_eq!(c.rhs, by_quotient.iter().sum::<u64>());
            assert_eq!(c.terms, by_quotient.iter().filter(|&&v| v > 0).count());
        }
    }
}
