//! Incidence construction, coverage verification, and the greedy baseline.
//!
//! A [`CoverInstance`] is the complete bipartite incidence between candidate
//! `r`-words (or `r`-subsets) and target `k`-words (or `k`-subsets). Sequence
//! and Turán mode share the same abstraction, so one solver serves both.

use crate::bitset::BitSet;
use crate::turan::{binomial, subset_rank, subsets_lex, SubSet, TuranSystem};
use crate::words::{Code, Word, WordSpace};
use crate::Error;

/// Default cap on `candidates × targets` incidence bits.
pub const DEFAULT_MAX_INCIDENCE_BITS: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMode {
    /// Candidates are words of `[n]^r`, targets words of `[n]^k`, incidence is
    /// the subsequence relation.
    Sequence,
    /// Candidates are `r`-subsets, targets `k`-subsets, incidence is set inclusion.
    Turan,
}

/// Either kind of covering family, as produced by greedy or exact solvers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverSolution {
    Code(Code),
    System(TuranSystem),
}

impl CoverSolution {
    pub fn len(&self) -> usize {
        match self {
            CoverSolution::Code(c) => c.len(),
            CoverSolution::System(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_code(&self) -> Option<&Code> {
        match self {
            CoverSolution::Code(c) => Some(c),
            CoverSolution::System(_) => None,
        }
    }

    pub fn as_system(&self) -> Option<&TuranSystem> {
        match self {
            CoverSolution::System(t) => Some(t),
            CoverSolution::Code(_) => None,
        }
    }
}

/// Complete candidate/target incidence for one covering problem.
///
/// Immutable after construction; safe to share across search workers.
#[derive(Debug)]
pub struct CoverInstance {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub mode: CoverMode,
    num_candidates: usize,
    num_targets: usize,
    /// candidate -> bitset of covered targets
    cand_covers: Vec<BitSet>,
    /// target -> increasing candidate indices covering it
    target_coverers: Vec<Vec<u32>>,
}

impl CoverInstance {
    pub fn num_candidates(&self) -> usize {
        self.num_candidates
    }

    pub fn num_targets(&self) -> usize {
        self.num_targets
    }

    pub fn candidate_covers(&self, cand: usize) -> &BitSet {
        &self.cand_covers[cand]
    }

    pub fn target_coverers(&self, target: usize) -> &[u32] {
        &self.target_coverers[target]
    }

    /// Degree of the candidate covering the most targets.
    pub fn max_cover_degree(&self) -> usize {
        self.cand_covers.iter().map(BitSet::count_ones).max().unwrap_or(0)
    }

    pub fn candidate_word(&self, cand: usize) -> Result<Word, Error> {
        match self.mode {
            CoverMode::Sequence => Ok(WordSpace::new(self.n, self.r)?.word_at(cand as u64)),
            CoverMode::Turan => Err(Error::InvalidParameter(
                "candidate_word applies to sequence mode".into(),
            )),
        }
    }

    pub fn candidate_set(&self, cand: usize) -> Result<SubSet, Error> {
        match self.mode {
            CoverMode::Turan => Ok(subsets_lex(self.n, self.r)[cand].clone()),
            CoverMode::Sequence => Err(Error::InvalidParameter(
                "candidate_set applies to turan mode".into(),
            )),
        }
    }

    /// Converts a set of chosen candidate indices into a code or system.
    pub fn solution_from_indices(&self, chosen: &[u32]) -> Result<CoverSolution, Error> {
        match self.mode {
            CoverMode::Sequence => {
                let space = WordSpace::new(self.n, self.r)?;
                let words = chosen.iter().map(|&c| space.word_at(u64::from(c)));
                Ok(CoverSolution::Code(Code::new(self.n, self.r, words)?))
            }
            CoverMode::Turan => {
                let all = subsets_lex(self.n, self.r);
                let sets = chosen.iter().map(|&c| all[c as usize].clone());
                Ok(CoverSolution::System(TuranSystem::new(self.n, self.r, sets)?))
            }
        }
    }
}

/// Builds the full incidence for `(n, k, r)` in the given mode.
pub fn build_incidence(n: u32, k: u32, r: u32, mode: CoverMode) -> Result<CoverInstance, Error> {
    build_incidence_with_limit(n, k, r, mode, DEFAULT_MAX_INCIDENCE_BITS)
}

/// As [`build_incidence`] with an explicit resource guard on incidence bits.
pub fn build_incidence_with_limit(
    n: u32,
    k: u32,
    r: u32,
    mode: CoverMode,
    max_bits: u64,
) -> Result<CoverInstance, Error> {
    if r == 0 || r >= k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= r < k, got r={r}, k={k}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("alphabet size must be positive".into()));
    }
    let (num_candidates, num_targets) = match mode {
        CoverMode::Sequence => {
            let cands = WordSpace::new(n, r)?.size();
            let targets = WordSpace::new(n, k)?.size();
            (cands, targets)
        }
        CoverMode::Turan => (
            binomial(u64::from(n), u64::from(r)),
            binomial(u64::from(n), u64::from(k)),
        ),
    };
    let bits = num_candidates.checked_mul(num_targets).ok_or_else(|| Error::InstanceTooLarge {
        bits: u64::MAX,
        limit: max_bits,
    })?;
    if bits > max_bits {
        return Err(Error::InstanceTooLarge { bits, limit: max_bits });
    }
    let num_candidates = num_candidates as usize;
    let num_targets = num_targets as usize;

    let mut cand_covers = vec![BitSet::new(num_targets); num_candidates];
    let mut target_coverers = vec![Vec::new(); num_targets];

    match mode {
        CoverMode::Sequence => {
            let target_space = WordSpace::new(n, k)?;
            let cand_space = WordSpace::new(n, r)?;
            for t in 0..num_targets {
                let word = target_space.word_at(t as u64);
                let ball = crate::words::deletion_ball(&word, r)?;
                let mut cands: Vec<u32> =
                    ball.iter().map(|x| cand_space.index_of(x) as u32).collect();
                cands.sort_unstable();
                for &c in &cands {
                    cand_covers[c as usize].set(t);
                }
                target_coverers[t] = cands;
            }
        }
        CoverMode::Turan => {
            for (t, kset) in subsets_lex(n, k).iter().enumerate() {
                let mut cands: Vec<u32> = subsets_of(kset, r)
                    .iter()
                    .map(|s| subset_rank(n, s) as u32)
                    .collect();
                cands.sort_unstable();
                for &c in &cands {
                    cand_covers[c as usize].set(t);
                }
                target_coverers[t] = cands;
            }
        }
    }

    Ok(CoverInstance {
        n,
        k,
        r,
        mode,
        num_candidates,
        num_targets,
        cand_covers,
        target_coverers,
    })
}

/// All `r`-subsets of the given sorted set.
fn subsets_of(set: &[u16], r: u32) -> Vec<SubSet> {
    let k = set.len() as u32;
    subsets_lex(k, r)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| set[i as usize]).collect())
        .collect()
}

/// Outcome of a coverage check; the witness is the lexicographically least
/// uncovered target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage<W> {
    Covered,
    Uncovered { witness: W },
}

impl<W> Coverage<W> {
    pub fn is_covered(&self) -> bool {
        matches!(self, Coverage::Covered)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Coverage::Covered => None,
            Coverage::Uncovered { witness } => Some(witness),
        }
    }
}

/// Checks whether `c` covers `[n]^k`, scanning targets in lexicographic order.
pub fn verify_cover(c: &Code, k: u32) -> Result<Coverage<Word>, Error> {
    let r = c.word_length();
    if k <= r {
        return Err(Error::InvalidParameter(format!(
            "verification needs k > r, got k={k}, r={r}"
        )));
    }
    let bits = c.index_bitset()?;
    let target_space = WordSpace::new(c.alphabet_size(), k)?;
    let cand_space = WordSpace::new(c.alphabet_size(), r)?;
    // position subsets of size r within k, reused for every target
    let position_sets = subsets_lex(k, r);
    let mut scratch: Vec<u16> = vec![0; r as usize];
    for t in 0..target_space.size() {
        let word = target_space.word_at(t);
        let mut covered = false;
        for ps in &position_sets {
            for (i, &p) in ps.iter().enumerate() {
                scratch[i] = word.symbols()[p as usize];
            }
            let idx = scratch
                .iter()
                .fold(0u64, |acc, &s| acc * u64::from(cand_space.n) + u64::from(s));
            if bits.get(idx as usize) {
                covered = true;
                break;
            }
        }
        if !covered {
            return Ok(Coverage::Uncovered { witness: word });
        }
    }
    Ok(Coverage::Covered)
}

/// Checks whether every `k`-subset of `[n]` contains a member of `t`.
///
/// `n < k` is vacuously covered.
pub fn verify_turan(t: &TuranSystem, k: u32) -> Result<Coverage<SubSet>, Error> {
    let r = t.member_size();
    if k <= r {
        return Err(Error::InvalidParameter(format!(
            "verification needs k > r, got k={k}, r={r}"
        )));
    }
    let n = t.ground_size();
    for kset in subsets_lex(n, k) {
        let covered = subsets_of(&kset, r).iter().any(|s| t.contains(s));
        if !covered {
            return Ok(Coverage::Uncovered { witness: kset });
        }
    }
    Ok(Coverage::Covered)
}

/// Greedy cover: repeatedly take the candidate covering the most uncovered
/// targets, ties broken by least candidate index.
pub fn greedy_cover(inst: &CoverInstance) -> Result<CoverSolution, Error> {
    let chosen = greedy_cover_indices(inst)?;
    inst.solution_from_indices(&chosen)
}

pub(crate) fn greedy_cover_indices(inst: &CoverInstance) -> Result<Vec<u32>, Error> {
    let mut covered = BitSet::new(inst.num_targets());
    let mut uncovered = inst.num_targets();
    let mut chosen: Vec<u32> = Vec::new();
    while uncovered > 0 {
        let mut best: Option<(usize, usize)> = None; // (gain, candidate)
        for c in 0..inst.num_candidates() {
            let gain = inst.cand_covers[c].count_and_not(&covered);
            if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, c));
            }
        }
        let (gain, c) = best.ok_or_else(|| {
            Error::InvalidParameter("infeasible instance: uncovered target with no candidates".into())
        })?;
        covered.union_with(&inst.cand_covers[c]);
        uncovered -= gain;
        chosen.push(c as u32);
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    use crate::testkit::optimal_343;

    fn w(s: &[u16]) -> Word {
        Word::from_slice(s)
    }

    #[test]
    fn incidence_sequence_343() {
        let inst = build_incidence(3, 4, 3, CoverMode::Sequence).unwrap();
        assert_eq!(inst.num_candidates(), 27);
        assert_eq!(inst.num_targets(), 81);
        for c in 0..27 {
            assert_eq!(inst.candidate_covers(c).count_ones(), 9);
        }
    }

    #[test]
    fn incidence_turan_532() {
        let inst = build_incidence(5, 3, 2, CoverMode::Turan).unwrap();
        assert_eq!(inst.num_candidates(), 10);
        assert_eq!(inst.num_targets(), 10);
        for c in 0..10 {
            assert_eq!(inst.candidate_covers(c).count_ones(), 3); // C(3,1)
        }
    }

    #[test]
    fn incidence_trivial_alphabet() {
        let inst = build_incidence(1, 2, 1, CoverMode::Sequence).unwrap();
        assert_eq!(inst.num_candidates(), 1);
        assert_eq!(inst.num_targets(), 1);
        assert_eq!(inst.candidate_covers(0).count_ones(), 1);
    }

    #[test]
    fn incidence_guard() {
        let err = build_incidence_with_limit(3, 4, 3, CoverMode::Sequence, 1000).unwrap_err();
        assert!(matches!(err, Error::InstanceTooLarge { bits: 2187, limit: 1000 }));
    }

    #[test]
    fn verify_cover_examples() {
        let code = optimal_343();
        assert!(verify_cover(&code, 4).unwrap().is_covered());

        let broken = code.without_word(&w(&[0, 0, 0]));
        let out = verify_cover(&broken, 4).unwrap();
        assert_eq!(out.witness(), Some(&w(&[0, 0, 0, 0])));

        let full = Code::full(2, 2).unwrap();
        assert!(verify_cover(&full, 4).unwrap().is_covered());
    }

    #[test]
    fn verify_turan_examples() {
        let t = TuranSystem::new(5, 2, [vec![0, 1], vec![2, 3], vec![2, 4], vec![3, 4]]).unwrap();
        assert!(verify_turan(&t, 3).unwrap().is_covered());

        let t = TuranSystem::new(5, 3, [vec![0, 1, 2]]).unwrap();
        let out = verify_turan(&t, 4).unwrap();
        assert_eq!(out.witness(), Some(&vec![0, 1, 3, 4]));

        let full = TuranSystem::full(6, 3).unwrap();
        assert!(verify_turan(&full, 4).unwrap().is_covered());

        // n < k: vacuous
        let t = TuranSystem::new(3, 2, [vec![0, 1]]).unwrap();
        assert!(verify_turan(&t, 4).unwrap().is_covered());
    }

    #[test]
    fn greedy_examples() {
        let inst = build_incidence(1, 2, 1, CoverMode::Sequence).unwrap();
        assert_eq!(greedy_cover(&inst).unwrap().len(), 1);

        let inst = build_incidence(2, 3, 2, CoverMode::Sequence).unwrap();
        let sol = greedy_cover(&inst).unwrap();
        assert_eq!(sol.len(), 2);
        let code = sol.as_code().unwrap();
        assert!(verify_cover(code, 3).unwrap().is_covered());

        let inst = build_incidence(3, 4, 3, CoverMode::Sequence).unwrap();
        let sol = greedy_cover(&inst).unwrap();
        assert!((12..=27).contains(&sol.len()));
        assert!(verify_cover(sol.as_code().unwrap(), 4).unwrap().is_covered());
    }

    #[test]
    fn cover_is_monotone_and_symmetrization_safe() {
        let code = optimal_343();
        let sym = crate::words::symmetrize(&code);
        assert!(verify_cover(&sym, 4).unwrap().is_covered());
        let bigger = code.with_word(w(&[0, 1, 2])).unwrap();
        assert!(verify_cover(&bigger, 4).unwrap().is_covered());
    }
}
