//! Exact rational diagnostics: tree and star union inequalities over weighted
//! set systems, pairwise intersection bounds, and the kernel/petal/residue
//! decomposition of a covering code.
//!
//! All arithmetic is exact; every check is an equality or inequality of
//! rationals, so a reported violation is a real one, not a tolerance artifact.
//!
//! For a code `C ⊆ [n]^r` the derived sets `C_i ⊆ [n]^(r+1)` collect the words
//! whose `i`-th coordinate deletion lands in `C`. The intersection bound
//! `λ(C_i ∩ C_j) ≥ λ(C)²` is a theorem for adjacent pairs (`j = i+1`, where
//! the shared sections align for Cauchy–Schwarz) and for arbitrary pairs of
//! symmetric codes; for non-adjacent pairs of asymmetric codes it can fail, so
//! [`check_pairwise_intersections`] reports rather than assumes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::words::{Code, Word, WordSpace};
use crate::Error;

/// Measurable sets over a finite weighted ground set.
#[derive(Clone, Debug)]
pub struct WeightedSetSystem {
    weights: Vec<BigRational>,
    sets: Vec<BitSet>,
}

impl WeightedSetSystem {
    /// Validates that the weights form a probability distribution and every
    /// set lives inside the ground set.
    pub fn new(weights: Vec<BigRational>, sets: Vec<Vec<usize>>) -> Result<Self, Error> {
        if weights.iter().any(|w| w < &BigRational::zero()) {
            return Err(Error::InvalidParameter("weights must be nonnegative".into()));
        }
        let total: BigRational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!(
                "weights must sum to 1, got {total}"
            )));
        }
        let ground = weights.len();
        let mut bitsets = Vec::with_capacity(sets.len());
        for set in sets {
            let mut bits = BitSet::new(ground);
            for x in set {
                if x >= ground {
                    return Err(Error::InvalidParameter(format!(
                        "element {x} outside ground set of size {ground}"
                    )));
                }
                bits.set(x);
            }
            bitsets.push(bits);
        }
        Ok(WeightedSetSystem { weights, sets: bitsets })
    }

    /// Uniform distribution over `ground` elements.
    pub fn uniform(ground: usize, sets: Vec<Vec<usize>>) -> Result<Self, Error> {
        if ground == 0 {
            return Err(Error::InvalidParameter("ground set must be nonempty".into()));
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(ground));
        WeightedSetSystem::new(vec![w; ground], sets)
    }

    pub fn ground_size(&self) -> usize {
        self.weights.len()
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn weight(&self, x: usize) -> &BigRational {
        &self.weights[x]
    }

    pub fn contains(&self, set: usize, x: usize) -> bool {
        self.sets[set].get(x)
    }

    /// Number of sets containing `x`.
    pub fn multiplicity(&self, x: usize) -> usize {
        (0..self.sets.len()).filter(|&i| self.sets[i].get(x)).count()
    }

    pub fn set_measure(&self, i: usize) -> BigRational {
        self.sets[i].iter_ones().map(|x| self.weights[x].clone()).sum()
    }

    pub fn pair_measure(&self, i: usize, j: usize) -> BigRational {
        self.sets[i]
            .iter_ones()
            .filter(|&x| self.sets[j].get(x))
            .map(|x| self.weights[x].clone())
            .sum()
    }

    pub fn union_measure(&self) -> BigRational {
        (0..self.ground_size())
            .filter(|&x| self.multiplicity(x) > 0)
            .map(|x| self.weights[x].clone())
            .sum()
    }
}

impl std::fmt::Display for WeightedSetSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ground size {}", self.ground_size())?;
        writeln!(f, "weights: {:?}", self.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>())?;
        for (i, s) in self.sets.iter().enumerate() {
            writeln!(f, "C_{i} = {:?}", s.iter_ones().collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

fn validate_tree(k: usize, edges: &[(usize, usize)]) -> Result<(), Error> {
    if k < 2 {
        return Err(Error::NotSpanningTree(format!("need at least 2 sets, got {k}")));
    }
    if edges.len() != k - 1 {
        return Err(Error::NotSpanningTree(format!(
            "expected {} edges for {k} vertices, got {}",
            k - 1,
            edges.len()
        )));
    }
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in edges {
        if i >= k || j >= k {
            return Err(Error::NotSpanningTree(format!("edge ({i},{j}) out of range")));
        }
        if i == j {
            return Err(Error::NotSpanningTree(format!("self-loop at {i}")));
        }
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj {
            return Err(Error::NotSpanningTree(format!("edge ({i},{j}) closes a cycle")));
        }
        parent[ri] = rj;
    }
    Ok(())
}

/// Result of a union-versus-tree-sum inequality check.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub holds: bool,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl InequalityReport {
    pub fn slack(&self) -> BigRational {
        &self.rhs - &self.lhs
    }
}

/// Checks `λ(∪ C_i) ≤ Σ λ(C_i) − Σ_{(i,j) ∈ T} λ(C_i ∩ C_j)` for a spanning
/// tree `T` on the sets, exactly. A violation would be a fatal correctness
/// bug; callers should report it together with the full system.
pub fn bonferroni_check(
    s: &WeightedSetSystem,
    tree_edges: &[(usize, usize)],
) -> Result<InequalityReport, Error> {
    validate_tree(s.num_sets(), tree_edges)?;
    let lhs = s.union_measure();
    let sum_sets: BigRational = (0..s.num_sets()).map(|i| s.set_measure(i)).sum();
    let sum_edges: BigRational = tree_edges.iter().map(|&(i, j)| s.pair_measure(i, j)).sum();
    let rhs = sum_sets - sum_edges;
    Ok(InequalityReport { holds: lhs <= rhs, lhs, rhs })
}

/// Star-strengthened form at centre `j`: the right side additionally drops
/// `λ(R_j)`, the mass covered at least twice but not by all sets and missing
/// from `C_j`.
pub fn star_bonferroni_check(
    s: &WeightedSetSystem,
    center: usize,
) -> Result<InequalityReport, Error> {
    let k = s.num_sets();
    if center >= k {
        return Err(Error::InvalidParameter(format!(
            "star centre {center} out of range for {k} sets"
        )));
    }
    let star: Vec<(usize, usize)> = (0..k).filter(|&i| i != center).map(|i| (center, i)).collect();
    validate_tree(k, &star)?;
    let lhs = s.union_measure();
    let sum_sets: BigRational = (0..k).map(|i| s.set_measure(i)).sum();
    let sum_edges: BigRational = star.iter().map(|&(i, j)| s.pair_measure(i, j)).sum();
    let residue_complement: BigRational = (0..s.ground_size())
        .filter(|&x| {
            let t = s.multiplicity(x);
            t >= 2 && t <= k - 1 && !s.contains(center, x)
        })
        .map(|x| s.weight(x).clone())
        .sum();
    let rhs = sum_sets - sum_edges - residue_complement;
    Ok(InequalityReport { holds: lhs <= rhs, lhs, rhs })
}

/// Kernel/petal/residue decomposition of `[n]^(r+1)` induced by a covering
/// code: `t(a)` counts the coordinate deletions of `a` landing in the code.
#[derive(Clone, Debug)]
pub struct AtomProfile {
    pub n: u32,
    pub r: u32,
    /// `|C| / n^r`
    pub code_density: BigRational,
    /// Mass with `t = r+1`.
    pub kernel: BigRational,
    /// Mass with `t = 1` via deletion position `i`, for `i = 0..=r`.
    pub petals: Vec<BigRational>,
    /// Mass with `1 < t <= r`.
    pub residue: BigRational,
    /// `λ(R_j) = λ(R \ C_j)` for each deletion position `j`.
    pub residue_complements: Vec<BigRational>,
    /// Count of words by multiplicity `t = 0..=r+1` (index 0 is always 0 for
    /// a covering code).
    pub histogram: Vec<u64>,
}

impl AtomProfile {
    /// `λ(K) + Σ λ(P_i) + λ(R) = 1` for covering codes.
    pub fn partition_sums_to_one(&self) -> bool {
        let total: BigRational =
            &self.kernel + self.petals.iter().sum::<BigRational>() + &self.residue;
        total.is_one()
    }
}

/// Computes the atom profile of `c` over `[n]^(r+1)`; rejects non-covering
/// codes with the least uncovered witness.
pub fn atom_profile(c: &Code) -> Result<AtomProfile, Error> {
    let n = c.alphabet_size();
    let r = c.word_length();
    let space = WordSpace::new(n, r + 1)?;
    let member = c.index_bitset()?;
    let total = space.size();
    let denom = BigInt::from(total);

    let mut histogram = vec![0u64; r as usize + 2];
    let mut kernel_count = 0u64;
    let mut petal_counts = vec![0u64; r as usize + 1];
    let mut residue_count = 0u64;
    let mut complement_counts = vec![0u64; r as usize + 1];

    for a in 0..total {
        let mut t = 0u32;
        let mut only_pos = 0usize;
        for pos in 0..=r {
            if member.get(space.delete_at(a, pos) as usize) {
                t += 1;
                only_pos = pos as usize;
            }
        }
        if t == 0 {
            return Err(Error::NotCovering {
                witness: space.word_at(a).to_string(),
            });
        }
        histogram[t as usize] += 1;
        if t == r + 1 {
            kernel_count += 1;
        } else if t == 1 {
            petal_counts[only_pos] += 1;
        } else {
            residue_count += 1;
            for pos in 0..=r {
                if !member.get(space.delete_at(a, pos) as usize) {
                    complement_counts[pos as usize] += 1;
                }
            }
        }
    }

    let frac = |count: u64| BigRational::new(BigInt::from(count), denom.clone());
    Ok(AtomProfile {
        n,
        r,
        code_density: c.density(),
        kernel: frac(kernel_count),
        petals: petal_counts.iter().map(|&c| frac(c)).collect(),
        residue: frac(residue_count),
        residue_complements: complement_counts.iter().map(|&c| frac(c)).collect(),
        histogram,
    })
}

/// Checks `λ(R) ≤ r(r+1)(1−λ(C))(λ(C) − 1/r)` exactly.
pub fn check_residue_bound(p: &AtomProfile) -> InequalityReport {
    let r = u64::from(p.r);
    let lam = &p.code_density;
    let one_over_r = BigRational::new(BigInt::one(), BigInt::from(r));
    let rhs = BigRational::from(BigInt::from(r * (r + 1)))
        * (BigRational::one() - lam)
        * (lam - one_over_r);
    InequalityReport {
        holds: p.residue <= rhs,
        lhs: p.residue.clone(),
        rhs,
    }
}

/// One pairwise intersection `λ(C_i ∩ C_j)` with its comparison data.
#[derive(Clone, Debug)]
pub struct PairIntersection {
    pub i: u32,
    pub j: u32,
    pub measure: BigRational,
    /// Adjacent deletion positions (`j = i+1`), where the bound is a theorem.
    pub adjacent: bool,
}

#[derive(Clone, Debug)]
pub struct PairwiseReport {
    /// All pairs satisfy `λ(C_i ∩ C_j) ≥ λ(C)²`.
    pub holds: bool,
    /// The adjacent pairs alone satisfy the bound (always true).
    pub adjacent_holds: bool,
    pub lambda_squared: BigRational,
    pub pairs: Vec<PairIntersection>,
    /// `min λ(C_i∩C_j) / λ(C)²`, absent for the empty code.
    pub min_ratio: Option<BigRational>,
}

/// Measures every `λ(C_i ∩ C_j)` for `i < j` against `λ(C)²`. Covering is not
/// required; no precondition beyond a word length `r ≥ 1`.
pub fn check_pairwise_intersections(c: &Code) -> Result<PairwiseReport, Error> {
    let n = c.alphabet_size();
    let r = c.word_length();
    let space = WordSpace::new(n, r + 1)?;
    let member = c.index_bitset()?;
    let total = space.size();
    let denom = BigInt::from(total);
    let lambda = c.density();
    let lambda_squared = &lambda * &lambda;

    let mut pairs = Vec::new();
    for i in 0..=r {
        for j in (i + 1)..=r {
            let mut count = 0u64;
            for a in 0..total {
                if member.get(space.delete_at(a, i) as usize)
                    && member.get(space.delete_at(a, j) as usize)
                {
                    count += 1;
                }
            }
            pairs.push(PairIntersection {
                i,
                j,
                measure: BigRational::new(BigInt::from(count), denom.clone()),
                adjacent: j == i + 1,
            });
        }
    }
    let holds = pairs.iter().all(|p| p.measure >= lambda_squared);
    let adjacent_holds = pairs
        .iter()
        .filter(|p| p.adjacent)
        .all(|p| p.measure >= lambda_squared);
    let min_ratio = if lambda_squared.is_zero() {
        None
    } else {
        pairs.iter().map(|p| &p.measure / &lambda_squared).min()
    };
    Ok(PairwiseReport {
        holds,
        adjacent_holds,
        lambda_squared,
        pairs,
        min_ratio,
    })
}

/// The sets `C_0, …, C_r` over the uniform measure on `[n]^(r+1)`, as a
/// weighted set system ready for the union inequalities.
pub fn deletion_system(c: &Code) -> Result<WeightedSetSystem, Error> {
    let n = c.alphabet_size();
    let r = c.word_length();
    let space = WordSpace::new(n, r + 1)?;
    let total = space.size();
    if total > 1_000_000 {
        return Err(Error::ScaleRefused(format!(
            "deletion system over {total} ground elements"
        )));
    }
    let member = c.index_bitset()?;
    let mut sets = vec![Vec::new(); r as usize + 1];
    for a in 0..total {
        for pos in 0..=r {
            if member.get(space.delete_at(a, pos) as usize) {
                sets[pos as usize].push(a as usize);
            }
        }
    }
    WeightedSetSystem::uniform(total as usize, sets)
}

/// Derives `λ(C) ≥ 1/r` for a covering code from the machinery alone: the
/// path-tree union inequality plus the adjacent-pair intersection bound give
/// `r·λ² ≤ (r+1)·λ − 1`, i.e. `(1−λ)(rλ−1) ≥ 0`.
pub fn density_bound_via_machinery(c: &Code) -> Result<InequalityReport, Error> {
    let r = c.word_length();
    let system = deletion_system(c)?;
    if !system.union_measure().is_one() {
        let witness = crate::cover::verify_cover(c, r + 1)?;
        return Err(Error::NotCovering {
            witness: witness
                .witness()
                .map(|w| w.to_string())
                .unwrap_or_else(|| "unknown".into()),
        });
    }
    let path: Vec<(usize, usize)> = (0..r as usize).map(|i| (i, i + 1)).collect();
    let tree = bonferroni_check(&system, &path)?;
    if !tree.holds {
        return Err(Error::InvalidParameter(format!(
            "tree inequality violated: {} > {}",
            tree.lhs, tree.rhs
        )));
    }
    let pairwise = check_pairwise_intersections(c)?;
    if !pairwise.adjacent_holds {
        return Err(Error::InvalidParameter(
            "adjacent intersection bound violated".into(),
        ));
    }
    // r·λ² + 1 ≤ Σ path intersections + λ(∪) ≤ Σ λ(C_i) = (r+1)·λ
    let lam = c.density();
    let lhs = BigRational::from(BigInt::from(r)) * &lam * &lam + BigRational::one();
    let rhs = BigRational::from(BigInt::from(r + 1)) * &lam;
    Ok(InequalityReport { holds: lhs <= rhs, lhs, rhs })
}

/// Seeded random systems and trees for the fuzzed inequality suites.
pub mod fuzz {
    use super::*;

    /// Outcome of a fuzz run; any violation carries the full offending system.
    #[derive(Debug)]
    pub struct FuzzSummary {
        pub trials: u64,
        pub violations: Vec<String>,
    }

    impl FuzzSummary {
        pub fn all_hold(&self) -> bool {
            self.violations.is_empty()
        }
    }

    fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        rng
    }

    /// Random spanning tree on `k` vertices decoded from a random Prüfer
    /// sequence.
    pub fn random_tree(k: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
        if k == 2 {
            return vec![(0, 1)];
        }
        let seq: Vec<usize> = (0..k - 2).map(|_| rng.random_range(0..k)).collect();
        let mut degree = vec![1usize; k];
        for &v in &seq {
            degree[v] += 1;
        }
        let mut used = vec![false; k];
        let mut edges = Vec::with_capacity(k - 1);
        for &v in &seq {
            let leaf = (0..k)
                .find(|&u| degree[u] == 1 && !used[u])
                .expect("a leaf always exists while decoding");
            edges.push((leaf, v));
            used[leaf] = true;
            degree[v] -= 1;
        }
        let rest: Vec<usize> = (0..k).filter(|&u| !used[u]).collect();
        edges.push((rest[0], rest[1]));
        edges
    }

    /// Ground size 1–32, 2–8 sets, per-trial membership probability from
    /// {0.1, …, 0.9}, uniform weights.
    pub fn random_system(rng: &mut ChaCha8Rng) -> (WeightedSetSystem, Vec<(usize, usize)>) {
        let ground = rng.random_range(1..=32usize);
        let k = rng.random_range(2..=8usize);
        let p = f64::from(rng.random_range(1..=9u32)) / 10.0;
        let sets: Vec<Vec<usize>> = (0..k)
            .map(|_| (0..ground).filter(|_| rng.random_bool(p)).collect())
            .collect();
        let tree = random_tree(k, rng);
        (
            WeightedSetSystem::uniform(ground, sets).expect("uniform weights are valid"),
            tree,
        )
    }

    /// Runs `trials` seeded tree-inequality checks; every trial must hold.
    pub fn run_bonferroni_trials(trials: u64, seed: u64) -> FuzzSummary {
        let mut violations = Vec::new();
        for trial in 0..trials {
            let mut rng = trial_rng(seed, trial);
            let (system, tree) = random_system(&mut rng);
            let report = bonferroni_check(&system, &tree).expect("generated trees are valid");
            if !report.holds {
                violations.push(format!(
                    "trial {trial}: union {} > bound {} with tree {tree:?}\n{system}",
                    report.lhs, report.rhs
                ));
            }
        }
        FuzzSummary { trials, violations }
    }

    /// Runs `trials` seeded star-strengthened checks with random centres.
    pub fn run_star_trials(trials: u64, seed: u64) -> FuzzSummary {
        let mut violations = Vec::new();
        for trial in 0..trials {
            let mut rng = trial_rng(seed, trial);
            let (system, _) = random_system(&mut rng);
            let center = rng.random_range(0..system.num_sets());
            let report = star_bonferroni_check(&system, center).expect("centre is in range");
            if !report.holds {
                violations.push(format!(
                    "trial {trial}: union {} > strengthened bound {} at centre {center}\n{system}",
                    report.lhs, report.rhs
                ));
            }
        }
        FuzzSummary { trials, violations }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::optimal_343;
    use crate::words::symmetrize;

    fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn boolean_cube_code() -> Code {
        Code::new(2, 2, [Word::new([0, 0]), Word::new([1, 1])]).unwrap()
    }

    #[test]
    fn bonferroni_disjoint_and_identical() {
        // pairwise disjoint sets: equality
        let s = WeightedSetSystem::uniform(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let rep = bonferroni_check(&s, &[(0, 1), (1, 2)]).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.lhs, rep.rhs);

        // all sets identical, star tree: both sides equal lambda(C)
        let s = WeightedSetSystem::uniform(4, vec![vec![0, 1]; 4]).unwrap();
        let rep = bonferroni_check(&s, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.lhs, rep.rhs);
        assert_eq!(rep.lhs, ratio(1, 2));
    }

    #[test]
    fn bonferroni_rejects_non_trees() {
        let s = WeightedSetSystem::uniform(4, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert!(bonferroni_check(&s, &[(0, 1)]).is_err()); // too few edges
        assert!(bonferroni_check(&s, &[(0, 1), (0, 1)]).is_err()); // cycle
        assert!(bonferroni_check(&s, &[(0, 1), (1, 3)]).is_err()); // out of range
        assert!(bonferroni_check(&s, &[(0, 0), (1, 2)]).is_err()); // self-loop
    }

    #[test]
    fn star_reduces_to_tree_on_disjoint_sets() {
        let s = WeightedSetSystem::uniform(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        for center in 0..3 {
            let rep = star_bonferroni_check(&s, center).unwrap();
            assert!(rep.holds);
            assert_eq!(rep.lhs, rep.rhs); // R_j is empty here
        }
    }

    #[test]
    fn star_on_derived_deletion_sets() {
        let system = deletion_system(&optimal_343()).unwrap();
        assert_eq!(system.num_sets(), 4);
        for center in 0..4 {
            let rep = star_bonferroni_check(&system, center).unwrap();
            assert!(rep.holds, "centre {center}");
        }
    }

    #[test]
    fn fuzzed_inequalities_hold() {
        let summary = fuzz::run_bonferroni_trials(500, 20240901);
        assert!(summary.all_hold(), "{:?}", summary.violations.first());
        let summary = fuzz::run_star_trials(200, 20240902);
        assert!(summary.all_hold(), "{:?}", summary.violations.first());
    }

    #[test]
    fn atom_profile_full_code() {
        let full = Code::full(2, 2).unwrap();
        let p = atom_profile(&full).unwrap();
        assert!(p.kernel.is_one());
        assert!(p.residue.is_zero());
        assert!(p.partition_sums_to_one());
    }

    #[test]
    fn atom_profile_boolean_cube() {
        let p = atom_profile(&boolean_cube_code()).unwrap();
        // 000 and 111 have every deletion in the code
        assert_eq!(p.kernel, ratio(2, 8));
        assert_eq!(p.petals, vec![ratio(2, 8), ratio(2, 8), ratio(2, 8)]);
        assert!(p.residue.is_zero());
        assert!(p.partition_sums_to_one());
        assert_eq!(p.histogram, vec![0, 6, 0, 2]);
        // residue bound degenerates to 0 <= 0 at lambda = 1/r
        let rep = check_residue_bound(&p);
        assert!(rep.holds);
        assert!(rep.rhs.is_zero());
    }

    #[test]
    fn atom_profile_optimal_343() {
        let p = atom_profile(&optimal_343()).unwrap();
        assert!(p.partition_sums_to_one());
        assert_eq!(p.code_density, ratio(4, 9));
        // every measure is a multiple of 1/81
        for value in p
            .petals
            .iter()
            .chain(p.residue_complements.iter())
            .chain([&p.kernel, &p.residue])
        {
            assert!((value * ratio(81, 1)).is_integer());
        }
        // multiplicity conservation: sum of t over all words = (r+1)|C|·n
        let weighted: u64 = p
            .histogram
            .iter()
            .enumerate()
            .map(|(t, &count)| t as u64 * count)
            .sum();
        assert_eq!(weighted, 4 * 12 * 3);

        let rep = check_residue_bound(&p);
        assert!(rep.holds);
        assert_eq!(rep.rhs, ratio(60, 81)); // 12·(5/9)·(1/9)

        // lambda(R_j) <= (1 - lambda)(r lambda - 1) for each j
        let cap = (BigRational::one() - ratio(4, 9)) * (ratio(3, 1) * ratio(4, 9) - BigRational::one());
        for rj in &p.residue_complements {
            assert!(rj <= &cap);
        }
    }

    #[test]
    fn atom_profile_rejects_non_covering() {
        let code = Code::new(2, 2, [Word::new([0, 1])]).unwrap();
        assert!(matches!(atom_profile(&code), Err(Error::NotCovering { .. })));
    }

    #[test]
    fn pairwise_trivial_cases() {
        let empty = Code::empty(2, 2).unwrap();
        let rep = check_pairwise_intersections(&empty).unwrap();
        assert!(rep.holds); // 0 >= 0
        assert!(rep.min_ratio.is_none());

        let full = Code::full(2, 2).unwrap();
        let rep = check_pairwise_intersections(&full).unwrap();
        assert!(rep.holds); // 1 >= 1
        assert_eq!(rep.min_ratio, Some(BigRational::one()));
    }

    #[test]
    fn pairwise_bound_fails_beyond_its_hypotheses() {
        // covering but asymmetric: the non-adjacent pair drops below lambda^2
        let code = Code::new(
            2,
            2,
            [Word::new([0, 0]), Word::new([0, 1]), Word::new([1, 1])],
        )
        .unwrap();
        assert!(crate::cover::verify_cover(&code, 3).unwrap().is_covered());
        let rep = check_pairwise_intersections(&code).unwrap();
        assert!(rep.adjacent_holds);
        assert!(!rep.holds);
        let bad = rep.pairs.iter().find(|p| (p.i, p.j) == (0, 2)).unwrap();
        assert_eq!(bad.measure, ratio(1, 2));
        assert_eq!(rep.lambda_squared, ratio(9, 16));

        // non-covering single word: the non-adjacent intersection is empty
        let code = Code::new(2, 2, [Word::new([0, 1])]).unwrap();
        let rep = check_pairwise_intersections(&code).unwrap();
        assert!(rep.adjacent_holds);
        assert!(!rep.holds);
    }

    #[test]
    fn pairwise_adjacent_holds_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.random_range(1..=3u32);
            let r = rng.random_range(1..=3u32);
            let space = WordSpace::new(n, r).unwrap();
            let words = (0..space.size())
                .filter(|_| rng.random_bool(0.5))
                .map(|i| space.word_at(i));
            let code = Code::new(n, r, words).unwrap();
            let rep = check_pairwise_intersections(&code).unwrap();
            assert!(rep.adjacent_holds, "code {:?}", code);
        }
    }

    #[test]
    fn pairwise_all_hold_on_random_symmetric_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let n = rng.random_range(1..=3u32);
            let r = rng.random_range(1..=3u32);
            let space = WordSpace::new(n, r).unwrap();
            let words = (0..space.size())
                .filter(|_| rng.random_bool(0.4))
                .map(|i| space.word_at(i));
            let code = symmetrize(&Code::new(n, r, words).unwrap());
            let rep = check_pairwise_intersections(&code).unwrap();
            assert!(rep.holds, "code {:?}", code);
        }
    }

    #[test]
    fn density_machinery_pipeline() {
        for code in [boolean_cube_code(), optimal_343()] {
            let rep = density_bound_via_machinery(&code).unwrap();
            assert!(rep.holds);
            // implied: lambda >= 1/r
            let r = i64::from(code.word_length());
            assert!(code.density() >= ratio(1, r));
        }
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let k = rng.random_range(2..=8usize);
            let tree = fuzz::random_tree(k, &mut rng);
            assert!(validate_tree(k, &tree).is_ok());
        }
    }

    #[test]
    fn system_validation() {
        // weights must sum to one
        assert!(WeightedSetSystem::new(vec![ratio(1, 2)], vec![]).is_err());
        // nonnegative
        assert!(WeightedSetSystem::new(vec![ratio(3, 2), ratio(-1, 2)], vec![]).is_err());
        // set elements in range
        assert!(WeightedSetSystem::uniform(2, vec![vec![5]]).is_err());
        // non-uniform weights are fine
        let s = WeightedSetSystem::new(
            vec![ratio(1, 3), ratio(2, 3)],
            vec![vec![0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(s.set_measure(1), BigRational::one());
        assert_eq!(s.pair_measure(0, 1), ratio(1, 3));
    }
}
