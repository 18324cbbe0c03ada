//! Fixed-length bitsets over element indices.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bitset {
            len,
            words: vec![u64::MAX; len.div_ceil(WORD)],
        };
        b.clear_tail();
        b
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bitset::new(len);
        for i in indices {
            b.insert(i);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersects(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection_count(&self, other: &Bitset) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> Bitset {
        let mut out = Bitset {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    /// Cyclic rotation: bit `i` moves to `(i + shift) mod len`.
    pub fn rotated(&self, shift: usize) -> Bitset {
        let n = self.len;
        if n == 0 {
            return self.clone();
        }
        let shift = shift % n;
        if shift == 0 {
            return self.clone();
        }
        let mut out = self.shifted_up(shift);
        out.union_with(&self.shifted_down(n - shift));
        out
    }

    /// Bits move up by `s`; those leaving `0..len` are dropped.
    fn shifted_up(&self, s: usize) -> Bitset {
        let mut out = Bitset::new(self.len);
        let (ws, bs) = (s / WORD, s % WORD);
        let nw = self.words.len();
        for i in (ws..nw).rev() {
            let src = i - ws;
            let mut w = self.words[src] << bs;
            if bs != 0 && src > 0 {
                w |= self.words[src - 1] >> (WORD - bs);
            }
            out.words[i] = w;
        }
        out.clear_tail();
        out
    }

    /// Bits move down by `s`; those falling below 0 are dropped.
    fn shifted_down(&self, s: usize) -> Bitset {
        let mut out = Bitset::new(self.len);
        let (ws, bs) = (s / WORD, s % WORD);
        let nw = self.words.len();
        for i in 0..nw.saturating_sub(ws) {
            let src = i + ws;
            let mut w = self.words[src] >> bs;
            if bs != 0 && src + 1 < nw {
                w |= self.words[src + 1] << (WORD - bs);
            }
            out.words[i] = w;
        }
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for Bitset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD + tz);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_has_exact_length() {
        for n in [0, 1, 63, 64, 65, 130] {
            assert_eq!(Bitset::full(n).count_ones(), n);
            assert_eq!(Bitset::full(n).complement().count_ones(), 0);
        }
    }

    proptest! {
        #[test]
        fn rotation_matches_elementwise(
            n in 1usize..300,
            raw in proptest::collection::vec(any::<usize>(), 0..40),
            shift in any::<usize>(),
        ) {
            let idx: Vec<usize> = raw.iter().map(|x| x % n).collect();
            let b = Bitset::from_indices(n, idx.iter().copied());
            let expected = Bitset::from_indices(n, idx.iter().map(|i| (i + shift) % n));
            prop_assert_eq!(b.rotated(shift), expected);
        }

        #[test]
        fn iter_roundtrips(n in 1usize..300, raw in proptest::collection::vec(any::<usize>(), 0..60)) {
            let mut idx: Vec<usize> = raw.iter().map(|x| x % n).collect();
            idx.sort_unstable();
            idx.dedup();
            let b = Bitset::from_indices(n, idx.iter().copied());
            prop_assert_eq!(b.iter().collect::<Vec<_>>(), idx.clone());
            prop_assert_eq!(b.count_ones(), idx.len());
        }
    }
}
