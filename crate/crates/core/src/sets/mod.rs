//! Subsets of a finite group and their arithmetic.

mod growth;
mod kinds;
pub mod regularity;

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

pub use growth::{doubling_constant, growth_profile, tripling_constant, TriplingVariant};
pub use kinds::{make_set, SetKind};
pub use regularity::{
    check_product_rich, check_regular_position, CheckMode, RegularityVerdict, VerdictStatus,
};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, IDENTITY};

/// A subset of a group, backed by a membership bitset.
#[derive(Clone)]
pub struct GroupSubset {
    group: Arc<FiniteGroup>,
    bits: Bitset,
    card: usize,
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupSubset")
            .field("group", &self.group.name())
            .field("elements", &self.bits)
            .finish()
    }
}

impl PartialEq for GroupSubset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.bits == other.bits
    }
}

impl Eq for GroupSubset {}

impl Serialize for GroupSubset {
    /// A JSON array of element indices.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.bits.iter())
    }
}

impl GroupSubset {
    pub fn from_bits(group: Arc<FiniteGroup>, bits: Bitset) -> Self {
        assert_eq!(bits.len(), group.order(), "bitset length must equal the group order");
        let card = bits.count_ones();
        GroupSubset { group, bits, card }
    }

    /// Panics on indices outside the group; see [`GroupSubset::try_new`].
    pub fn new(group: Arc<FiniteGroup>, elements: impl IntoIterator<Item = Elem>) -> Self {
        let bits = Bitset::from_indices(group.order(), elements);
        GroupSubset::from_bits(group, bits)
    }

    pub fn try_new(group: Arc<FiniteGroup>, elements: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let n = group.order();
        let mut bits = Bitset::new(n);
        for e in elements {
            if e >= n {
                return Err(Error::InvalidParameter(format!(
                    "element {e} out of range for a group of order {n}"
                )));
            }
            bits.insert(e);
        }
        Ok(GroupSubset::from_bits(group, bits))
    }

    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GroupSubset::from_bits(group, Bitset::new(n))
    }

    pub fn whole(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GroupSubset::from_bits(group, Bitset::full(n))
    }

    pub fn identity_set(group: Arc<FiniteGroup>) -> Self {
        GroupSubset::new(group, [IDENTITY])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn bits(&self) -> &Bitset {
        &self.bits
    }

    pub fn card(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.iter()
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.bits.iter().collect()
    }

    /// `|A| / |G|` as an exact fraction.
    pub fn density(&self) -> Ratio<usize> {
        Ratio::new(self.card, self.group.order())
    }

    pub fn density_f64(&self) -> f64 {
        self.card as f64 / self.group.order() as f64
    }

    pub fn same_group(&self, other: &GroupSubset) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
    }

    pub(crate) fn ensure_same_group(&self, other: &GroupSubset) -> Result<()> {
        if self.same_group(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn with_bits(&self, bits: Bitset) -> GroupSubset {
        GroupSubset::from_bits(self.group.clone(), bits)
    }

    pub fn complement(&self) -> GroupSubset {
        self.with_bits(self.bits.complement())
    }

    pub fn union(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.ensure_same_group(other)?;
        let mut b = self.bits.clone();
        b.union_with(&other.bits);
        Ok(self.with_bits(b))
    }

    pub fn intersection(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.ensure_same_group(other)?;
        let mut b = self.bits.clone();
        b.intersect_with(&other.bits);
        Ok(self.with_bits(b))
    }

    pub fn is_subset(&self, other: &GroupSubset) -> bool {
        self.same_group(other) && self.bits.is_subset(&other.bits)
    }

    /// `x S = {x s}`.
    pub fn left_translate(&self, x: Elem) -> GroupSubset {
        let g = &self.group;
        self.with_bits(Bitset::from_indices(
            g.order(),
            self.bits.iter().map(|s| g.mul(x, s)),
        ))
    }

    /// `S x = {s x}`.
    pub fn right_translate(&self, x: Elem) -> GroupSubset {
        let g = &self.group;
        self.with_bits(Bitset::from_indices(
            g.order(),
            self.bits.iter().map(|s| g.mul(s, x)),
        ))
    }

    /// `{a^-1 : a in A}`.
    pub fn inverse_set(&self) -> GroupSubset {
        let g = &self.group;
        self.with_bits(Bitset::from_indices(g.order(), self.bits.iter().map(|a| g.inv(a))))
    }

    /// `A ∪ A^-1 ∪ {id}`, of size at most `2|A| + 1`.
    pub fn symmetrize(&self) -> GroupSubset {
        let mut b = self.inverse_set().bits;
        b.union_with(&self.bits);
        b.insert(IDENTITY);
        self.with_bits(b)
    }

    /// `A·B = {ab}`.
    pub fn product(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.ensure_same_group(other)?;
        Ok(self.with_bits(product_bits(&self.group, &self.bits, &other.bits)))
    }

    /// The `m`-fold product `X^{⊙m}` of `X = symmetrize(A)`.
    pub fn iterated_product(&self, m: usize) -> Result<GroupSubset> {
        if m == 0 {
            return Err(Error::InvalidParameter("iterated product needs m >= 1".into()));
        }
        let x = self.symmetrize();
        let mut acc = x.clone();
        for _ in 1..m {
            let next = acc.product(&x)?;
            if next.card == acc.card {
                // X contains the identity, so the powers are nested and
                // stabilise once the size stops growing.
                break;
            }
            acc = next;
        }
        Ok(acc)
    }

    /// True iff no `a, b, c ∈ A` satisfy `ab = c`.
    pub fn is_product_free(&self) -> bool {
        let g = &self.group;
        let elems = self.elements();
        !elems
            .iter()
            .any(|&a| elems.iter().any(|&b| self.bits.contains(g.mul(a, b))))
    }
}

/// Product-set kernel. Single cyclic groups OR together rotated copies of
/// `B`; otherwise the smaller operand drives a loop over table rows.
pub(crate) fn product_bits(g: &FiniteGroup, a: &Bitset, b: &Bitset) -> Bitset {
    let n = g.order();
    if a.is_empty() || b.is_empty() {
        return Bitset::new(n);
    }
    if let Some([_]) = g.cyclic_factors() {
        let mut out = Bitset::new(n);
        for x in a.iter() {
            out.union_with(&b.rotated(x));
            if out.is_full() {
                break;
            }
        }
        return out;
    }
    let mut out = Bitset::new(n);
    let mut filled = 0;
    let b_elems: Vec<Elem> = b.iter().collect();
    for x in a.iter() {
        match g.table_row(x) {
            Some(row) => {
                for &y in &b_elems {
                    let c = row[y] as usize;
                    if !out.contains(c) {
                        out.insert(c);
                        filled += 1;
                    }
                }
            }
            None => {
                for &y in &b_elems {
                    let c = g.mul(x, y);
                    if !out.contains(c) {
                        out.insert(c);
                        filled += 1;
                    }
                }
            }
        }
        if filled == n {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use proptest::prelude::*;

    pub(crate) fn grp(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(&spec.parse().unwrap()).unwrap())
    }

    fn set(g: &Arc<FiniteGroup>, e: &[usize]) -> GroupSubset {
        GroupSubset::new(g.clone(), e.iter().copied())
    }

    #[test]
    fn product_examples() {
        let z10 = grp("Z/10");
        let a = set(&z10, &[0, 1, 2]);
        let aa = a.product(&a).unwrap();
        assert_eq!(aa.elements(), vec![0, 1, 2, 3, 4]);
        let z5 = grp("Z/5");
        let b = set(&z5, &[2, 3]);
        assert_eq!(b.product(&b).unwrap().elements(), vec![0, 1, 4]);
        let id = GroupSubset::identity_set(z5.clone());
        assert_eq!(id.product(&b).unwrap(), b);
        assert!(matches!(a.product(&b), Err(Error::GroupMismatch)));
    }

    #[test]
    fn inverse_and_symmetrize() {
        let z7 = grp("Z/7");
        let a = set(&z7, &[1, 2]);
        assert_eq!(a.inverse_set().elements(), vec![5, 6]);
        assert_eq!(a.symmetrize().elements(), vec![0, 1, 2, 5, 6]);
        let s = set(&z7, &[0, 3, 4]);
        assert_eq!(s.symmetrize(), s);
    }

    #[test]
    fn iterated_products() {
        let z100 = grp("Z/100");
        let a = set(&z100, &[0, 1]);
        assert_eq!(a.iterated_product(1).unwrap().elements(), vec![0, 1, 99]);
        assert_eq!(a.iterated_product(2).unwrap().elements(), vec![0, 1, 2, 98, 99]);
        let z5 = grp("Z/5");
        assert!(set(&z5, &[1]).iterated_product(2).unwrap().bits().is_full());
        let z12 = grp("Z/12");
        let h = set(&z12, &[0, 4, 8]);
        for m in 1..5 {
            assert_eq!(h.iterated_product(m).unwrap(), h);
        }
        assert!(h.iterated_product(0).is_err());
    }

    #[test]
    fn product_free_examples() {
        let z5 = grp("Z/5");
        assert!(set(&z5, &[2, 3]).is_product_free());
        assert!(!set(&z5, &[1, 2]).is_product_free());
        assert!(!set(&z5, &[0]).is_product_free());
        assert!(GroupSubset::empty(z5).is_product_free());
    }

    fn brute_product(a: &GroupSubset, b: &GroupSubset) -> Vec<usize> {
        let g = a.group();
        let mut v: Vec<usize> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| g.mul(x, y)))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_kernel_matches_brute_force(
            spec in prop::sample::select(vec!["Z/97", "Z/130", "Z/4 x Z/6", "perm:(1 2 3 4);(1 2)", "PSL2(7)"]),
            ra in proptest::collection::vec(any::<usize>(), 0..30),
            rb in proptest::collection::vec(any::<usize>(), 0..30),
        ) {
            let g = grp(spec);
            let n = g.order();
            let a = GroupSubset::new(g.clone(), ra.iter().map(|x| x % n));
            let b = GroupSubset::new(g.clone(), rb.iter().map(|x| x % n));
            prop_assert_eq!(a.product(&b).unwrap().elements(), brute_product(&a, &b));
        }

        #[test]
        fn set_identities(
            spec in prop::sample::select(vec!["Z/31", "Z/2 x Z/2 x Z/3", "perm:(1 2 3 4);(1 2)"]),
            ra in proptest::collection::vec(any::<usize>(), 1..12),
        ) {
            let g = grp(spec);
            let n = g.order();
            let a = GroupSubset::new(g.clone(), ra.iter().map(|x| x % n));
            let id = GroupSubset::identity_set(g.clone());
            prop_assert_eq!(a.product(&id).unwrap(), a.clone());
            prop_assert_eq!(id.product(&a).unwrap(), a.clone());
            prop_assert_eq!(a.inverse_set().inverse_set(), a.clone());
            prop_assert!(a.symmetrize().card() <= 2 * a.card() + 1);
            for m in 1..4 {
                prop_assert!(a.iterated_product(m).unwrap().is_subset(&a.iterated_product(m + 1).unwrap()));
            }
        }
    }
}
