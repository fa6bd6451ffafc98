//! Compact fixed-size bit set used for incidence rows and search state.

/// Fixed-capacity bit set backed by `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn clear_all(&mut self) {
        self.words.fill(0);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|self & other|`
    pub fn count_and(&self, other: &BitSet) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|self & !other|` — e.g. targets this row would newly cover.
    pub fn count_and_not(&self, other: &BitSet) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Sets `delta = other & !self`, then ors `other` in. Returns how many bits were new.
    pub fn union_with_delta(&mut self, other: &BitSet, delta: &mut BitSet) -> usize {
        debug_assert_eq!(self.len, other.len);
        let mut added = 0;
        for ((a, b), d) in self.words.iter_mut().zip(&other.words).zip(&mut delta.words) {
            *d = b & !*a;
            added += d.count_ones() as usize;
            *a |= b;
        }
        added
    }

    /// Removes every bit in `delta` (used to undo `union_with_delta`).
    pub fn difference_with(&mut self, delta: &BitSet) {
        debug_assert_eq!(self.len, delta.len);
        for (a, d) in self.words.iter_mut().zip(&delta.words) {
            *a &= !d;
        }
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Index of the lowest zero bit, if any.
    pub fn first_zero(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                let bit = (!w).trailing_zeros() as usize;
                let idx = wi * 64 + bit;
                if idx < self.len {
                    return Some(idx);
                }
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_count() {
        let mut b = BitSet::new(130);
        b.set(0);
        b.set(64);
        b.set(129);
        assert!(b.get(0) && b.get(64) && b.get(129));
        assert!(!b.get(1));
        assert_eq!(b.count_ones(), 3);
        b.clear(64);
        assert_eq!(b.count_ones(), 2);
    }

    #[test]
    fn delta_roundtrip() {
        let mut covered = BitSet::new(100);
        covered.set(3);
        let mut row = BitSet::new(100);
        row.set(3);
        row.set(7);
        row.set(99);
        let mut delta = BitSet::new(100);
        let added = covered.union_with_delta(&row, &mut delta);
        assert_eq!(added, 2);
        assert!(covered.get(7) && covered.get(99));
        covered.difference_with(&delta);
        assert!(covered.get(3) && !covered.get(7) && !covered.get(99));
    }

    #[test]
    fn first_zero_and_iter() {
        let mut b = BitSet::new(65);
        for i in 0..64 {
            b.set(i);
        }
        assert_eq!(b.first_zero(), Some(64));
        b.set(64);
        assert_eq!(b.first_zero(), None);
        assert_eq!(b.iter_ones().count(), 65);
    }
}
