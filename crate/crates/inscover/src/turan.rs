//! Families of `r`-element subsets of `[n]` and subset enumeration/ranking.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::Error;

/// An `r`-subset of `[n]`, stored strictly increasing.
pub type SubSet = Vec<u16>;

/// `C(n, k)` with overflow checking (desk-scale parameters).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// A family of `r`-element subsets of `[n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct TuranSystem {
    n: u32,
    r: u32,
    sets: BTreeSet<SubSet>,
}

impl TuranSystem {
    /// Builds a system, validating that every member is a strictly increasing
    /// `r`-subset of `[n]`. Duplicates collapse.
    pub fn new(n: u32, r: u32, sets: impl IntoIterator<Item = SubSet>) -> Result<Self, Error> {
        if n == 0 || r == 0 {
            return Err(Error::InvalidParameter(
                "ground size and member size must be positive".into(),
            ));
        }
        let mut out = BTreeSet::new();
        for s in sets {
            if s.len() != r as usize {
                return Err(Error::LengthMismatch {
                    expected: r as usize,
                    found: s.len(),
                });
            }
            for pair in s.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(Error::InvalidParameter(format!(
                        "subset members must be strictly increasing, got {s:?}"
                    )));
                }
            }
            if let Some(&max) = s.last() {
                if u32::from(max) >= n {
                    return Err(Error::SymbolOutOfRange { symbol: max, n });
                }
            }
            out.insert(s);
        }
        Ok(TuranSystem { n, r, sets: out })
    }

    pub fn empty(n: u32, r: u32) -> Result<Self, Error> {
        TuranSystem::new(n, r, [])
    }

    /// All `r`-subsets of `[n]`.
    pub fn full(n: u32, r: u32) -> Result<Self, Error> {
        TuranSystem::new(n, r, subsets_lex(n, r))
    }

    pub fn ground_size(&self) -> u32 {
        self.n
    }

    pub fn member_size(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &SubSet) -> bool {
        self.sets.contains(s)
    }

    pub fn sets(&self) -> impl Iterator<Item = &SubSet> {
        self.sets.iter()
    }

    /// `|T| / C(n, r)` as an exact rational.
    pub fn density(&self) -> BigRational {
        let total = BigInt::from(binomial(u64::from(self.n), u64::from(self.r)));
        BigRational::new(BigInt::from(self.len()), total)
    }
}

impl std::fmt::Debug for TuranSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TuranSystem(n={}, r={}, {} sets)",
            self.n,
            self.r,
            self.sets.len()
        )
    }
}

/// All `k`-subsets of `[n]` in lexicographic order of their sorted tuples.
pub fn subsets_lex(n: u32, k: u32) -> Vec<SubSet> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let k = k as usize;
    let n = n as usize;
    let mut cur: Vec<u16> = (0..k as u16).collect();
    loop {
        out.push(cur.clone());
        // next combination in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if usize::from(cur[i]) != i + n - k {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Lexicographic rank of a sorted `k`-subset among all `k`-subsets of `[n]`.
pub fn subset_rank(n: u32, s: &[u16]) -> u64 {
    let k = s.len() as u64;
    let mut rank = 0u64;
    let mut prev: i64 = -1;
    for (i, &v) in s.iter().enumerate() {
        for u in (prev + 1)..i64::from(v) {
            rank += binomial(u64::from(n) - 1 - u as u64, k - 1 - i as u64);
        }
        prev = i64::from(v);
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(12, 4), 495);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn lex_enumeration_and_rank_agree() {
        for n in 1..=8u32 {
            for k in 1..=n {
                let all = subsets_lex(n, k);
                assert_eq!(all.len() as u64, binomial(u64::from(n), u64::from(k)));
                for (i, s) in all.iter().enumerate() {
                    assert_eq!(subset_rank(n, s), i as u64);
                }
                // lexicographic order
                for w in all.windows(2) {
                    assert!(w[0] < w[1]);
                }
            }
        }
    }

    #[test]
    fn system_validation() {
        assert!(TuranSystem::new(5, 2, [vec![0, 1], vec![2, 3]]).is_ok());
        assert!(TuranSystem::new(5, 2, [vec![1, 0]]).is_err());
        assert!(TuranSystem::new(5, 2, [vec![0, 0]]).is_err());
        assert!(TuranSystem::new(5, 2, [vec![0, 5]]).is_err());
        assert!(TuranSystem::new(5, 2, [vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn full_system() {
        let t = TuranSystem::full(5, 2).unwrap();
        assert_eq!(t.len(), 10);
        use num_traits::One;
        assert!(t.density().is_one());
    }
}
