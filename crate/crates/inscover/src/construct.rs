//! Verified generators: alphabet-map preimages (mod and random lifts),
//! conversions between Turán systems and symmetric codes, and the classical
//! small constructions (half-cube, two-part graph, three-part triple system).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::{verify_cover, verify_turan};
use crate::turan::TuranSystem;
use crate::words::{distinct_permutations, Code, Word, WordSpace};
use crate::Error;

/// A function `[m] → [N]` applied coordinatewise to words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolMap {
    source_size: u32,
    target_size: u32,
    table: Vec<u16>,
}

impl SymbolMap {
    pub fn new(source_size: u32, target_size: u32, table: Vec<u16>) -> Result<Self, Error> {
        if table.len() != source_size as usize {
            return Err(Error::LengthMismatch {
                expected: source_size as usize,
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| u32::from(v) >= target_size) {
            return Err(Error::SymbolOutOfRange { symbol: bad, n: target_size });
        }
        Ok(SymbolMap { source_size, target_size, table })
    }

    pub fn identity(n: u32) -> Self {
        SymbolMap {
            source_size: n,
            target_size: n,
            table: (0..n as u16).collect(),
        }
    }

    /// `y ↦ y mod n` from `[m]` onto `[n]`.
    pub fn modulo(m: u32, n: u32) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidParameter("target alphabet must be positive".into()));
        }
        Ok(SymbolMap {
            source_size: m,
            target_size: n,
            table: (0..m).map(|y| (y % n) as u16).collect(),
        })
    }

    pub fn constant(m: u32, target_size: u32, value: u16) -> Result<Self, Error> {
        SymbolMap::new(m, target_size, vec![value; m as usize])
    }

    /// Uniformly random map drawn from the seeded generator.
    pub fn random(m: u32, target_size: u32, rng: &mut impl Rng) -> Self {
        SymbolMap {
            source_size: m,
            target_size,
            table: (0..m).map(|_| rng.random_range(0..target_size) as u16).collect(),
        }
    }

    pub fn source_size(&self) -> u32 {
        self.source_size
    }

    pub fn target_size(&self) -> u32 {
        self.target_size
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    pub fn apply(&self, s: u16) -> u16 {
        self.table[s as usize]
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        Word::new(w.symbols().iter().map(|&s| self.apply(s)))
    }
}

/// `{ w ∈ [m]^r : f(w) ∈ c }`. Covers `[m]^k` whenever `c` covers `[N]^k`,
/// and is symmetric whenever `c` is.
pub fn preimage_code(c: &Code, f: &SymbolMap) -> Result<Code, Error> {
    if f.target_size() != c.alphabet_size() {
        return Err(Error::InvalidParameter(format!(
            "map targets [{}] but code is over [{}]",
            f.target_size(),
            c.alphabet_size()
        )));
    }
    let m = f.source_size();
    let r = c.word_length();
    let space = WordSpace::new(m, r)?;
    let words = (0..space.size())
        .map(|i| space.word_at(i))
        .filter(|w| c.contains(&f.apply_word(w)));
    Code::new(m, r, words)
}

/// Preimage under `y ↦ y mod n`, lifting a code over `[n]` to `[m]`, `m ≥ n`.
///
/// The result has at most `(⌊m/n⌋+1)^r · |c|` words.
pub fn mod_lift(c: &Code, m: u32) -> Result<Code, Error> {
    if m < c.alphabet_size() {
        return Err(Error::InvalidParameter(format!(
            "mod lift needs m >= n, got m={m}, n={}",
            c.alphabet_size()
        )));
    }
    preimage_code(c, &SymbolMap::modulo(m, c.alphabet_size())?)
}

/// A random lift together with the map that produced it.
#[derive(Clone, Debug)]
pub struct RandomLift {
    pub code: Code,
    pub map: SymbolMap,
}

/// Preimage under a uniformly random map `[n] → [N]` drawn from the seeded
/// generator. Always covers `[n]^k` when `c` covers `[N]^k`.
pub fn random_lift(c: &Code, n: u32, seed: u64) -> Result<RandomLift, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("target alphabet must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let map = SymbolMap::random(n, c.alphabet_size(), &mut rng);
    let code = preimage_code(c, &map)?;
    Ok(RandomLift { code, map })
}

/// All non-injective words of `[n]^r`.
fn non_injective_words(n: u32, r: u32) -> Result<Vec<Word>, Error> {
    let space = WordSpace::new(n, r)?;
    Ok((0..space.size())
        .map(|i| space.word_at(i))
        .filter(|w| !w.is_injective())
        .collect())
}

/// Converts a Turán `(n, k, r)`-system into a symmetric covering code: all
/// `r!` orderings of each member plus every non-injective word of `[n]^r`.
///
/// The input is verified first and rejected with a witness if invalid.
pub fn turan_to_code(t: &TuranSystem, k: u32) -> Result<Code, Error> {
    match verify_turan(t, k)? {
        crate::cover::Coverage::Covered => {}
        crate::cover::Coverage::Uncovered { witness } => {
            return Err(Error::InvalidSystem { witness: format!("{witness:?}") });
        }
    }
    let n = t.ground_size();
    let r = t.member_size();
    let mut words = non_injective_words(n, r)?;
    for set in t.sets() {
        let base = Word::new(set.iter().copied());
        words.extend(distinct_permutations(&base));
    }
    Code::new(n, r, words)
}

/// Extracts the Turán system underlying a symmetric covering code: the family
/// of supports of its injective words.
///
/// Requires `c` symmetric, covering `[n]^k`, and `n ≥ k`; each precondition is
/// checked and violations are rejected.
pub fn code_to_turan(c: &Code, k: u32) -> Result<TuranSystem, Error> {
    let n = c.alphabet_size();
    let r = c.word_length();
    if n < k {
        return Err(Error::InvalidParameter(format!(
            "extraction needs n >= k, got n={n}, k={k}"
        )));
    }
    if let Some(w) = c.words().find(|w| {
        distinct_permutations(w).into_iter().any(|p| !c.contains(&p))
    }) {
        let missing = distinct_permutations(w)
            .into_iter()
            .find(|p| !c.contains(p))
            .expect("just found one");
        return Err(Error::NotSymmetric {
            word: w.to_string(),
            missing: missing.to_string(),
        });
    }
    match verify_cover(c, k)? {
        crate::cover::Coverage::Covered => {}
        crate::cover::Coverage::Uncovered { witness } => {
            return Err(Error::NotCovering { witness: witness.to_string() });
        }
    }
    let sets = c.words().filter(|w| w.is_injective()).map(|w| {
        let mut s: Vec<u16> = w.symbols().to_vec();
        s.sort_unstable();
        s
    });
    TuranSystem::new(n, r, sets)
}

/// The two-block single-insertion code `{(x,y): both < ⌈n/2⌉} ∪ {(x,y): both ≥ ⌈n/2⌉}`.
///
/// Covers `[n]^3` (two of any three coordinates land in the same half) with
/// `⌈n/2⌉² + ⌊n/2⌋²` words; symmetric.
pub fn half_cube_code(n: u32) -> Result<Code, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("alphabet size must be positive".into()));
    }
    let split = n.div_ceil(2) as u16;
    let mut words = Vec::new();
    for x in 0..n as u16 {
        for y in 0..n as u16 {
            if (x < split) == (y < split) {
                words.push(Word::new([x, y]));
            }
        }
    }
    Code::new(n, 2, words)
}

/// Edges inside the two parts `{0,…,⌊n/2⌋−1}` and the rest: a Turán
/// `(n,3,2)`-system of size `C(⌈n/2⌉,2) + C(⌊n/2⌋,2)`.
pub fn mantel_system(n: u32) -> Result<TuranSystem, Error> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3, got n={n}")));
    }
    let split = (n / 2) as u16;
    let mut sets = Vec::new();
    for a in 0..n as u16 {
        for b in (a + 1)..n as u16 {
            if (a < split) == (b < split) {
                sets.push(vec![a, b]);
            }
        }
    }
    TuranSystem::new(n, 2, sets)
}

/// Three-part Turán `(n,4,3)`-system: split `[n]` round-robin into
/// `V_0, V_1, V_2` (symbol `s` joins `V_{s mod 3}`) and take every triple
/// inside some `V_i` together with every triple having two elements in `V_i`
/// and one in `V_{i+1 mod 3}`. Density tends to 4/9.
pub fn turan43_system(n: u32) -> Result<TuranSystem, Error> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3, got n={n}")));
    }
    if n == 3 {
        // singleton parts generate nothing; the single triple is vacuously valid
        return TuranSystem::new(3, 3, [vec![0, 1, 2]]);
    }
    let part = |s: u16| s % 3;
    let mut sets = Vec::new();
    for a in 0..n as u16 {
        for b in (a + 1)..n as u16 {
            for c in (b + 1)..n as u16 {
                let (pa, pb, pc) = (part(a), part(b), part(c));
                let inside = pa == pb && pb == pc;
                let two_one = |x: u16, y: u16| y == (x + 1) % 3;
                let stepped = (pa == pb && two_one(pa, pc))
                    || (pa == pc && two_one(pa, pb))
                    || (pb == pc && two_one(pb, pa));
                if inside || stepped {
                    sets.push(vec![a, b, c]);
                }
            }
        }
    }
    TuranSystem::new(n, 3, sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{verify_cover, verify_turan};
    use crate::words::is_symmetric;

    fn boolean_cube_code() -> Code {
        Code::new(2, 2, [Word::new([0, 0]), Word::new([1, 1])]).unwrap()
    }

    #[test]
    fn preimage_identity_and_constant() {
        let c = boolean_cube_code();
        assert_eq!(preimage_code(&c, &SymbolMap::identity(2)).unwrap(), c);

        // constant map onto a codeword pulls back everything
        let f = SymbolMap::constant(4, 2, 0).unwrap();
        let pre = preimage_code(&c, &f).unwrap();
        assert_eq!(pre.len(), 16);
    }

    #[test]
    fn preimage_mod2_from_4() {
        let c = boolean_cube_code();
        let f = SymbolMap::modulo(4, 2).unwrap();
        let pre = preimage_code(&c, &f).unwrap();
        // {0,2}^2 ∪ {1,3}^2
        assert_eq!(pre.len(), 8);
        assert!(pre.contains(&Word::new([0, 2])));
        assert!(pre.contains(&Word::new([3, 1])));
        assert!(!pre.contains(&Word::new([0, 1])));
        assert!(verify_cover(&pre, 3).unwrap().is_covered());
        assert!(is_symmetric(&pre));
    }

    #[test]
    fn mod_lift_examples() {
        let c = boolean_cube_code();
        assert_eq!(mod_lift(&c, 2).unwrap(), c);
        assert!(mod_lift(&c, 1).is_err());

        let lifted = mod_lift(&c, 5).unwrap();
        // preimage classes have sizes 3 and 2
        assert_eq!(lifted.len(), 13);
        assert!(lifted.len() <= 3 * 3 * 2);
        assert!(verify_cover(&lifted, 3).unwrap().is_covered());

        let opt343 = crate::testkit::optimal_343();
        let lifted = mod_lift(&opt343, 4).unwrap();
        assert!(lifted.len() <= 8 * 12);
        assert!(verify_cover(&lifted, 4).unwrap().is_covered());
    }

    #[test]
    fn random_lift_always_covers_and_records_map() {
        let c = boolean_cube_code();
        for seed in 0..20u64 {
            let lift = random_lift(&c, 6, seed).unwrap();
            assert_eq!(lift.map.source_size(), 6);
            assert!(verify_cover(&lift.code, 3).unwrap().is_covered());
            // reproducible
            let again = random_lift(&c, 6, seed).unwrap();
            assert_eq!(lift.code, again.code);
            assert_eq!(lift.map, again.map);
        }
        // N=1: only one map exists, preimage is everything
        let single = Code::new(1, 2, [Word::new([0, 0])]).unwrap();
        let lift = random_lift(&single, 4, 7).unwrap();
        assert_eq!(lift.code.len(), 16);
    }

    #[test]
    fn turan_code_conversions() {
        let t = TuranSystem::new(5, 2, [vec![0, 1], vec![2, 3], vec![2, 4], vec![3, 4]]).unwrap();
        let code = turan_to_code(&t, 3).unwrap();
        assert_eq!(code.len(), 8 + 5);
        assert!(verify_cover(&code, 3).unwrap().is_covered());
        assert!(is_symmetric(&code));
        // roundtrip is exact
        let back = code_to_turan(&code, 3).unwrap();
        assert_eq!(back, t);

        // single triple over n=3 fills the whole cube
        let t = TuranSystem::new(3, 3, [vec![0, 1, 2]]).unwrap();
        let code = turan_to_code(&t, 4).unwrap();
        assert_eq!(code.len(), 27);

        // invalid systems are rejected with a witness
        let bad = TuranSystem::new(5, 2, [vec![0, 1]]).unwrap();
        assert!(matches!(turan_to_code(&bad, 3), Err(Error::InvalidSystem { .. })));

        // n < k with empty target set: non-injective words only
        let vac = TuranSystem::empty(2, 2).unwrap();
        let code = turan_to_code(&vac, 3).unwrap();
        assert_eq!(code.len(), 2); // (0,0) and (1,1)
        assert!(verify_cover(&code, 3).unwrap().is_covered());
    }

    #[test]
    fn code_to_turan_rejections_and_full() {
        let full = Code::full(4, 2).unwrap();
        let t = code_to_turan(&full, 3).unwrap();
        assert_eq!(t.len(), 6); // all 2-subsets of [4]

        let asym = Code::new(4, 2, [Word::new([0, 1])]).unwrap();
        assert!(matches!(code_to_turan(&asym, 3), Err(Error::NotSymmetric { .. })));

        let sym_not_covering =
            Code::new(4, 2, [Word::new([0, 1]), Word::new([1, 0])]).unwrap();
        assert!(matches!(
            code_to_turan(&sym_not_covering, 3),
            Err(Error::NotCovering { .. })
        ));
    }

    #[test]
    fn half_cube_examples() {
        assert_eq!(half_cube_code(2).unwrap(), boolean_cube_code());
        let one = half_cube_code(1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one.contains(&Word::new([0, 0])));

        let five = half_cube_code(5).unwrap();
        assert_eq!(five.len(), 9 + 4);
        assert!(verify_cover(&five, 3).unwrap().is_covered());
        assert!(is_symmetric(&five));

        // symmetrized half-cube over n=4 extracts a valid (4,3,2)-system
        let four = half_cube_code(4).unwrap();
        let t = code_to_turan(&four, 3).unwrap();
        assert!(verify_turan(&t, 3).unwrap().is_covered());
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn mantel_examples() {
        let t = mantel_system(5).unwrap();
        let expect =
            TuranSystem::new(5, 2, [vec![0, 1], vec![2, 3], vec![2, 4], vec![3, 4]]).unwrap();
        assert_eq!(t, expect);
        assert!(verify_turan(&t, 3).unwrap().is_covered());

        assert_eq!(mantel_system(3).unwrap().len(), 1);
        assert_eq!(mantel_system(4).unwrap().len(), 2);
        assert!(mantel_system(2).is_err());
        for n in 3..=9 {
            let t = mantel_system(n).unwrap();
            assert!(verify_turan(&t, 3).unwrap().is_covered(), "n={n}");
            let half = u64::from(n / 2);
            let other = u64::from(n) - half;
            assert_eq!(t.len() as u64, half * (half - 1) / 2 + other * (other - 1) / 2);
        }
    }

    #[test]
    fn turan43_examples() {
        let t = turan43_system(9).unwrap();
        assert_eq!(t.len(), 30); // 3·C(3,3) + 3·C(3,2)·3 out of C(9,3)=84
        assert!(verify_turan(&t, 4).unwrap().is_covered());

        for n in 4..=12 {
            let t = turan43_system(n).unwrap();
            assert!(verify_turan(&t, 4).unwrap().is_covered(), "n={n}");
        }

        let t = turan43_system(3).unwrap();
        assert_eq!(t.len(), 1);
        assert!(verify_turan(&t, 4).unwrap().is_covered());
    }
}
