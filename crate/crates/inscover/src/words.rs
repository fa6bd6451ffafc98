//! Words over a finite alphabet, subsequence relations, deletion/insertion
//! balls, and code symmetry/canonicalization.
//!
//! A [`Word`] is a fixed-length sequence of symbols from `[n] = {0, …, n-1}`.
//! A [`Code`] is a duplicate-free set of equal-length words together with its
//! alphabet size. Words compare lexicographically, which coincides with the
//! numeric order of their packed base-`n` encodings.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use smallvec::SmallVec;

use crate::Error;

/// Largest alphabet accepted by brute-force canonicalization (`n! · 2` group elements).
pub const CANONICAL_MAX_ALPHABET: u32 = 8;

/// A fixed-length word; symbols are small nonnegative integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(SmallVec<[u16; 8]>);

impl Word {
    pub fn new(symbols: impl IntoIterator<Item = u16>) -> Self {
        Word(symbols.into_iter().collect())
    }

    pub fn from_slice(symbols: &[u16]) -> Self {
        Word(SmallVec::from_slice(symbols))
    }

    pub fn symbols(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// True iff all symbols are pairwise distinct.
    pub fn is_injective(&self) -> bool {
        let mut seen = [false; 64];
        for &s in &self.0 {
            let i = s as usize;
            if i >= 64 {
                return self.0.iter().filter(|&&t| t == s).count() == 1 && self.slow_injective();
            }
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    fn slow_injective(&self) -> bool {
        let mut v: Vec<u16> = self.0.to_vec();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Sorted multiset of symbols (the word's support with multiplicity).
    pub fn sorted(&self) -> Word {
        let mut v = self.0.clone();
        v.sort_unstable();
        Word(v)
    }

    fn check_alphabet(&self, n: u32) -> Result<(), Error> {
        match self.0.iter().find(|&&s| u32::from(s) >= n) {
            Some(&s) => Err(Error::SymbolOutOfRange { symbol: s, n }),
            None => Ok(()),
        }
    }
}

impl std::fmt::Display for Word {
    /// Symbols space-separated, matching the on-disk body format.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for s in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({self})")
    }
}

/// Dense index space for `[n]^len`: packed base-`n` encoding, most significant
/// symbol first, so index order equals lexicographic word order.
#[derive(Clone, Debug)]
pub(crate) struct WordSpace {
    pub n: u32,
    pub len: u32,
    pows: Vec<u64>,
}

impl WordSpace {
    pub fn new(n: u32, len: u32) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidParameter("alphabet size must be positive".into()));
        }
        let mut pows = vec![1u64; len as usize + 1];
        for i in 1..=len as usize {
            pows[i] = pows[i - 1]
                .checked_mul(u64::from(n))
                .ok_or_else(|| Error::InvalidParameter(format!("{n}^{len} overflows u64")))?;
        }
        Ok(WordSpace { n, len, pows })
    }

    pub fn size(&self) -> u64 {
        self.pows[self.len as usize]
    }

    pub fn index_of(&self, w: &Word) -> u64 {
        debug_assert_eq!(w.len(), self.len as usize);
        w.symbols()
            .iter()
            .fold(0u64, |acc, &s| acc * u64::from(self.n) + u64::from(s))
    }

    pub fn word_at(&self, mut idx: u64) -> Word {
        let mut out = SmallVec::<[u16; 8]>::from_elem(0, self.len as usize);
        for i in (0..self.len as usize).rev() {
            out[i] = (idx % u64::from(self.n)) as u16;
            idx /= u64::from(self.n);
        }
        Word(out)
    }

    /// Index in `[n]^(len-1)` obtained by deleting position `pos` of the word with index `idx`.
    pub fn delete_at(&self, idx: u64, pos: u32) -> u64 {
        let below = self.pows[(self.len - pos) as usize - 1]; // weight of the deleted digit
        let high = idx / (below * u64::from(self.n));
        let low = idx % below;
        high * below + low
    }
}

/// A set of equal-length words over `[n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Code {
    n: u32,
    r: u32,
    words: BTreeSet<Word>,
}

impl Code {
    /// Builds a code, validating word lengths and symbol ranges. Duplicates collapse.
    pub fn new(n: u32, r: u32, words: impl IntoIterator<Item = Word>) -> Result<Self, Error> {
        if n == 0 || r == 0 {
            return Err(Error::InvalidParameter(
                "alphabet size and word length must be positive".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for w in words {
            if w.len() != r as usize {
                return Err(Error::LengthMismatch {
                    expected: r as usize,
                    found: w.len(),
                });
            }
            w.check_alphabet(n)?;
            set.insert(w);
        }
        Ok(Code { n, r, words: set })
    }

    pub fn empty(n: u32, r: u32) -> Result<Self, Error> {
        Code::new(n, r, [])
    }

    /// The full code `[n]^r`.
    pub fn full(n: u32, r: u32) -> Result<Self, Error> {
        let space = WordSpace::new(n, r)?;
        let words = (0..space.size()).map(|i| space.word_at(i));
        Code::new(n, r, words)
    }

    pub fn alphabet_size(&self) -> u32 {
        self.n
    }

    pub fn word_length(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    /// `|C| / n^r` as an exact rational.
    pub fn density(&self) -> BigRational {
        let total = BigInt::from(self.n).pow(self.r);
        BigRational::new(BigInt::from(self.len()), total)
    }

    pub(crate) fn space(&self) -> Result<WordSpace, Error> {
        WordSpace::new(self.n, self.r)
    }

    /// Membership bitset indexed by packed word encoding.
    pub(crate) fn index_bitset(&self) -> Result<crate::bitset::BitSet, Error> {
        let space = self.space()?;
        let size = usize::try_from(space.size())
            .map_err(|_| Error::InvalidParameter("code space too large for bitset".into()))?;
        let mut bits = crate::bitset::BitSet::new(size);
        for w in &self.words {
            bits.set(space.index_of(w) as usize);
        }
        Ok(bits)
    }

    pub fn with_word(&self, w: Word) -> Result<Code, Error> {
        let mut words = self.words.clone();
        if w.len() != self.r as usize {
            return Err(Error::LengthMismatch {
                expected: self.r as usize,
                found: w.len(),
            });
        }
        w.check_alphabet(self.n)?;
        words.insert(w);
        Ok(Code { n: self.n, r: self.r, words })
    }

    pub fn without_word(&self, w: &Word) -> Code {
        let mut words = self.words.clone();
        words.remove(w);
        Code { n: self.n, r: self.r, words }
    }

    pub fn is_subset_of(&self, other: &Code) -> bool {
        self.n == other.n
            && self.r == other.r
            && self.words.iter().all(|w| other.words.contains(w))
    }
}

impl std::fmt::Debug for Code {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Code(n={}, r={}, {} words)", self.n, self.r, self.words.len())
    }
}

/// Greedy left-to-right subsequence test, `O(|a|)`.
///
/// Errors if `x` is longer than `a` (arity misuse, distinct from a `false` answer).
pub fn is_subsequence(x: &Word, a: &Word) -> Result<bool, Error> {
    if x.len() > a.len() {
        return Err(Error::ArityMismatch { r: x.len(), k: a.len() });
    }
    Ok(is_subsequence_symbols(x.symbols(), a.symbols()))
}

pub(crate) fn is_subsequence_symbols(x: &[u16], a: &[u16]) -> bool {
    let mut i = 0;
    for &s in a {
        if i < x.len() && x[i] == s {
            i += 1;
        }
    }
    i == x.len()
}

/// All distinct length-`r` subsequences of `a`.
pub fn deletion_ball(a: &Word, r: u32) -> Result<BTreeSet<Word>, Error> {
    let k = a.len();
    if r == 0 || r as usize > k {
        return Err(Error::InvalidParameter(format!(
            "deletion ball needs 1 <= r <= {k}, got r={r}"
        )));
    }
    let r = r as usize;
    let mut out = BTreeSet::new();
    // Iterate index subsets of size r in lexicographic order.
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.insert(Word::new(idx.iter().map(|&i| a.symbols()[i])));
        // next combination
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if idx[i] != i + k - r {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All length-`(r+1)` words over `[n]` that contain `x` as a subsequence.
///
/// Always has exactly `(r+1)(n-1) + 1` elements.
pub fn insertion_ball(x: &Word, n: u32) -> Result<BTreeSet<Word>, Error> {
    x.check_alphabet(n)?;
    let mut out = BTreeSet::new();
    for pos in 0..=x.len() {
        for s in 0..n as u16 {
            let mut v: SmallVec<[u16; 8]> = SmallVec::with_capacity(x.len() + 1);
            v.extend_from_slice(&x.symbols()[..pos]);
            v.push(s);
            v.extend_from_slice(&x.symbols()[pos..]);
            out.insert(Word(v));
        }
    }
    Ok(out)
}

/// Next lexicographic permutation in place; false once the sequence is descending.
fn next_permutation(v: &mut [u16]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All distinct coordinate permutations of `w`.
pub(crate) fn distinct_permutations(w: &Word) -> Vec<Word> {
    let mut v: Vec<u16> = w.symbols().to_vec();
    v.sort_unstable();
    let mut out = vec![Word::new(v.iter().copied())];
    while next_permutation(&mut v) {
        out.push(Word::new(v.iter().copied()));
    }
    out
}

/// Smallest superset of `c` closed under all permutations of the coordinates.
pub fn symmetrize(c: &Code) -> Code {
    let mut words = BTreeSet::new();
    for w in c.words() {
        for p in distinct_permutations(w) {
            words.insert(p);
        }
    }
    Code { n: c.n, r: c.r, words }
}

/// True iff `c` is closed under all coordinate permutations.
pub fn is_symmetric(c: &Code) -> bool {
    c.words()
        .all(|w| distinct_permutations(w).into_iter().all(|p| c.contains(&p)))
}

/// Symmetry group used when reducing codes to canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalGroup {
    /// Renamings of the alphabet symbols only.
    SymbolPermutations,
    /// Symbol renamings combined with coordinate reversal of every word.
    SymbolPermutationsAndReversal,
}

/// All permutations of `0..n` (Heap's algorithm, deterministic order not required).
pub(crate) fn symbol_permutations(n: u32) -> Vec<Vec<u16>> {
    let mut v: Vec<u16> = (0..n as u16).collect();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

fn apply_symbol_perm(w: &Word, perm: &[u16], reverse: bool) -> Word {
    let it = w.symbols().iter().map(|&s| perm[s as usize]);
    if reverse {
        let mut v: SmallVec<[u16; 8]> = it.collect();
        v.reverse();
        Word(v)
    } else {
        Word(it.collect())
    }
}

fn transformed_key(c: &Code, perm: &[u16], reverse: bool) -> Vec<Word> {
    let mut ws: Vec<Word> = c.words().map(|w| apply_symbol_perm(w, perm, reverse)).collect();
    ws.sort_unstable();
    ws
}

/// Lexicographically least code in the orbit of `c` under the chosen group.
///
/// Two codes are equivalent under the group iff their canonical forms are
/// equal. Brute force over `n!` (times 2 with reversal) group elements;
/// alphabets beyond [`CANONICAL_MAX_ALPHABET`] are rejected.
pub fn canonical_form(c: &Code, group: CanonicalGroup) -> Result<Code, Error> {
    if c.n > CANONICAL_MAX_ALPHABET {
        return Err(Error::ScaleRefused(format!(
            "canonical form is brute force over n! symbol permutations; n={} exceeds {}",
            c.n, CANONICAL_MAX_ALPHABET
        )));
    }
    let reversals: &[bool] = match group {
        CanonicalGroup::SymbolPermutations => &[false],
        CanonicalGroup::SymbolPermutationsAndReversal => &[false, true],
    };
    let mut best: Option<Vec<Word>> = None;
    for perm in symbol_permutations(c.n) {
        for &rev in reversals {
            let key = transformed_key(c, &perm, rev);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    let words = best.unwrap_or_default();
    Ok(Code {
        n: c.n,
        r: c.r,
        words: words.into_iter().collect(),
    })
}
