//! Irreducible character degrees via the class algebra, and the
//! quasirandomness degree derived from them.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rng::{derive_seed, SplitMix64};

/// Largest class count handed to the eigensolver.
pub const CLASS_LIMIT: usize = 300;
/// Largest group order accepted by [`regular_representation_degrees`].
pub const REGULAR_LIMIT: usize = 64;
/// Minimum separation between eigenvalues that are treated as distinct.
pub const EIGEN_TOLERANCE: f64 = 1e-8;
const ATTEMPTS: u64 = 4;

/// Degrees of the irreducible characters, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub order: usize,
    pub degrees: Vec<usize>,
    pub class_count: usize,
    pub abelianization_order: usize,
}

impl DegreeProfile {
    /// Smallest degree once the trivial character is removed; `1` for the
    /// trivial group.
    pub fn quasirandomness_degree(&self) -> usize {
        self.degrees.get(1).copied().unwrap_or(1)
    }

    fn validate(&self) -> Result<()> {
        let sum: usize = self.degrees.iter().map(|d| d * d).sum();
        let ones = self.degrees.iter().filter(|&&d| d == 1).count();
        let problem = if self.degrees.len() != self.class_count {
            format!("{} degrees for {} classes", self.degrees.len(), self.class_count)
        } else if sum != self.order {
            format!("sum of squared degrees {sum} differs from |G| = {}", self.order)
        } else if ones != self.abelianization_order {
            format!(
                "{ones} linear characters but abelianization has order {}",
                self.abelianization_order
            )
        } else if let Some(d) = self.degrees.iter().find(|&&d| d == 0 || self.order % d != 0) {
            format!("degree {d} does not divide {}", self.order)
        } else {
            return Ok(());
        };
        Err(Error::ValidationFailed(problem))
    }
}

/// `|G / [G, G]|`.
pub fn abelianization_order(g: &FiniteGroup) -> usize {
    g.order() / g.derived_subgroup().count_ones()
}

pub fn character_degrees(g: &FiniteGroup) -> Result<DegreeProfile> {
    character_degrees_seeded(g, 0)
}

pub fn quasirandomness_degree(g: &FiniteGroup) -> Result<usize> {
    Ok(character_degrees(g)?.quasirandomness_degree())
}

/// Character degrees from one Hermitian element of the class algebra.
///
/// In the basis `f_k = C_k / √|C_k|` of the center of the group algebra,
/// multiplication by a class sum is a normal operator and all of them commute.
/// A random complex combination `N` gives a Hermitian `H = (N + N*)/2` whose
/// eigenvectors are the normalized central idempotents. The coordinate of such
/// a unit vector on the identity class is `χ(1)/√|G|`. A failed
/// validation is retried with fresh seeds derived from `seed`.
pub fn character_degrees_seeded(g: &FiniteGroup, seed: u64) -> Result<DegreeProfile> {
    let classes = g.conjugacy_classes();
    let class_count = classes.count();
    let abelianization_order = abelianization_order(g);
    if g.is_abelian() {
        let profile = DegreeProfile {
            order: g.order(),
            degrees: vec![1; g.order()],
            class_count,
            abelianization_order,
        };
        profile.validate()?;
        return Ok(profile);
    }
    if class_count > CLASS_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "{class_count} conjugacy classes exceed the limit {CLASS_LIMIT}"
        )));
    }
    let mut last = None;
    for attempt in 0..ATTEMPTS {
        let attempt_seed = derive_seed(seed, attempt);
        match degrees_attempt(g, &classes, attempt_seed) {
            Ok(degrees) => {
                let profile = DegreeProfile {
                    order: g.order(),
                    degrees,
                    class_count,
                    abelianization_order,
                };
                match profile.validate() {
                    Ok(()) => return Ok(profile),
                    Err(e) => last = Some(e),
                }
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn degrees_attempt(
    g: &FiniteGroup,
    classes: &crate::group::ConjugacyClasses,
    seed: u64,
) -> Result<Vec<usize>> {
    let r = classes.count();
    let order = g.order() as f64;
    assert_eq!(classes.class_of(g.identity()), 0, "identity class comes first");
    let mut rng = SplitMix64::new(seed);
    let z: Vec<Complex64> = (0..r)
        .map(|_| Complex64::new(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0))
        .collect();
    let root: Vec<f64> = classes.sizes().iter().map(|&s| (s as f64).sqrt()).collect();

    // Row k: coefficient of C_k in N·C_l is Σ_{x} z_{class(x)} [x⁻¹ z_k ∈ C_l].
    let rows: Vec<Vec<Complex64>> = (0..r)
        .into_par_iter()
        .map(|k| {
            let rep = classes.class(k)[0];
            let mut row = vec![Complex64::new(0.0, 0.0); r];
            for x in g.elements() {
                let l = classes.class_of(g.mul(g.inv(x), rep));
                row[l] += z[classes.class_of(x)];
            }
            for (l, v) in row.iter_mut().enumerate() {
                *v *= root[k] / root[l];
            }
            row
        })
        .collect();
    let n = DMatrix::from_fn(r, r, |i, j| rows[i][j]);
    let h = (&n + n.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();

    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if values.windows(2).any(|w| w[1] - w[0] < EIGEN_TOLERANCE * scale) {
        return Err(Error::ValidationFailed(
            "class-algebra eigenvalues did not separate".into(),
        ));
    }

    let mut degrees = Vec::with_capacity(r);
    for col in eig.eigenvectors.column_iter() {
        let sq = order * col[0].norm_sqr();
        let d = sq.sqrt().round();
        if d < 1.0 || (sq - d * d).abs() > 1e-6 * order.max(1.0) {
            return Err(Error::ValidationFailed(format!(
                "squared degree {sq} is not close to an integer square"
            )));
        }
        degrees.push(d as usize);
    }
    degrees.sort_unstable();
    Ok(degrees)
}

/// Degrees read off the regular representation: a generic Hermitian central
/// element acts on `C[G]` with one eigenvalue per character, of multiplicity
/// `χ(1)²`.
pub fn regular_representation_degrees(g: &FiniteGroup, seed: u64) -> Result<Vec<usize>> {
    let n = g.order();
    if n > REGULAR_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "regular representation of order {n} exceeds {REGULAR_LIMIT}"
        )));
    }
    let classes = g.conjugacy_classes();
    let mut rng = SplitMix64::new(seed);
    let z: Vec<Complex64> = (0..classes.count())
        .map(|_| Complex64::new(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0))
        .collect();
    // Left multiplication by Σ_x z_{class(x)} x, as an n×n matrix.
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for x in g.elements() {
        let w = z[classes.class_of(x)];
        for y in g.elements() {
            m[(g.mul(x, y), y)] += w;
        }
    }
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut values: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let mut degrees = Vec::new();
    let mut run = 1usize;
    for i in 1..=values.len() {
        if i < values.len() && values[i] - values[i - 1] < 1e-6 {
            run += 1;
            continue;
        }
        let d = (run as f64).sqrt().round() as usize;
        if d * d != run {
            return Err(Error::ValidationFailed(format!(
                "eigenvalue multiplicity {run} is not a square"
            )));
        }
        degrees.push(d);
        run = 1;
    }
    degrees.sort_unstable();
    Ok(degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn grp(spec: &str) -> FiniteGroup {
        build_group(&spec.parse().unwrap()).unwrap()
    }

    #[test]
    fn abelian_groups() {
        for spec in ["Z/1", "Z/12", "Z/2 x Z/2 x Z/3", "Z/100000"] {
            let g = grp(spec);
            let p = character_degrees(&g).unwrap();
            assert!(p.degrees.iter().all(|&d| d == 1));
            assert_eq!(p.class_count, g.order());
            assert_eq!(abelianization_order(&g), g.order());
            assert_eq!(p.quasirandomness_degree(), 1);
        }
    }

    #[test]
    fn small_nonabelian_profiles() {
        let s3 = grp("perm:(1 2 3);(1 2)");
        assert_eq!(character_degrees(&s3).unwrap().degrees, vec![1, 1, 2]);
        assert_eq!(abelianization_order(&s3), 2);
        let a5 = grp("PSL2(5)");
        let p = character_degrees(&a5).unwrap();
        assert_eq!(p.degrees, vec![1, 3, 3, 4, 5]);
        assert_eq!(p.abelianization_order, 1);
        assert_eq!(p.quasirandomness_degree(), 3);
    }

    #[test]
    fn psl2_seven() {
        let p = character_degrees(&grp("PSL2(7)")).unwrap();
        assert_eq!(p.class_count, 6);
        assert_eq!(p.degrees.iter().map(|d| d * d).sum::<usize>(), 168);
        assert_eq!(p.degrees, vec![1, 3, 3, 6, 7, 8]);
    }

    #[test]
    fn larger_psl2_profiles() {
        let p = character_degrees(&grp("PSL2(11)")).unwrap();
        assert_eq!(p.degrees, vec![1, 5, 5, 10, 10, 11, 12, 12]);
        let p = character_degrees(&grp("PSL2(13)")).unwrap();
        assert_eq!(p.degrees, vec![1, 7, 7, 12, 12, 12, 13, 14, 14]);
    }

    #[test]
    fn agrees_with_regular_representation() {
        for spec in [
            "perm:(1 2 3);(1 2)",
            "perm:(1 2 3 4);(1 3)",
            "perm:(1 2 3 4)(5 6 7 8);(1 5 3 7)(2 8 4 6)",
            "perm:(1 2 3 4);(1 2)",
            "perm:(1 2 3 4 5);(2 5)(3 4)",
            "Z/3 x perm:(1 2 3);(1 2)",
            "PSL2(3)",
            "Z/6",
        ] {
            let g = grp(spec);
            assert!(g.order() <= 24);
            let burnside = character_degrees(&g).unwrap().degrees;
            assert_eq!(regular_representation_degrees(&g, 5).unwrap(), burnside, "{spec}");
        }
    }

    #[test]
    fn seeds_do_not_change_degrees() {
        let g = grp("PSL2(8)");
        let a = character_degrees_seeded(&g, 1).unwrap();
        let b = character_degrees_seeded(&g, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degrees.iter().map(|d| d * d).sum::<usize>(), 504);
    }

    #[test]
    fn quasirandomness_is_one_iff_not_perfect() {
        for spec in ["perm:(1 2 3 4);(1 2)", "PSL2(5)", "PSL2(3)", "Z/5 x PSL2(5)"] {
            let g = grp(spec);
            let p = character_degrees(&g).unwrap();
            assert_eq!(p.quasirandomness_degree() == 1, p.abelianization_order > 1, "{spec}");
        }
    }
}
