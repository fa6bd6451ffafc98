//! Exact optimization with certificates: minimum covering codes, minimum
//! Turán systems, maximum 1-packings, and enumeration of optimal codes.
//!
//! The cover solvers run branch-and-bound on the most-constrained uncovered
//! target, branching over the candidates that cover it with exclusion of
//! earlier siblings, so every cover corresponds to exactly one leaf. The
//! admissible lower bound is `ceil(uncovered / max cover degree)` over the
//! non-excluded candidates, which at the root subsumes the volume bound.
//!
//! Parallel solves distribute subtrees over a worker pool sharing a monotone
//! incumbent; the reported solution is recomputed deterministically once the
//! optimum is proved, so results are independent of worker count. Budget
//! exhaustion is a first-class outcome (`proved_optimal = false`), never an
//! error.

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::bitset::BitSet;
use crate::cover::{
    build_incidence, greedy_cover_indices, CoverInstance, CoverMode, CoverSolution,
};
use crate::turan::{subset_rank, subsets_lex, TuranSystem};
use crate::words::{
    canonical_form, deletion_ball, symbol_permutations, CanonicalGroup, Code, Word, WordSpace,
    CANONICAL_MAX_ALPHABET,
};
use crate::Error;

/// Largest word space accepted by the packing solver.
const PACKING_MAX_WORDS: u64 = 16_384;

/// Largest candidate space accepted by optimal-code enumeration.
const ENUMERATION_MAX_CANDIDATES: usize = 1_024;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Wall-clock budget per instance.
    pub time_budget: Duration,
    /// Worker count for subtree distribution (1 = fully sequential).
    pub threads: usize,
    /// Prune search nodes whose (chosen, excluded) pair is a symmetry image of
    /// an already-explored node.
    pub isomorph_rejection: bool,
    /// Isomorph rejection applies only at branching depth up to this value.
    pub iso_depth: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            time_budget: Duration::from_secs(300),
            threads: 1,
            isomorph_rejection: true,
            iso_depth: 2,
        }
    }
}

/// Proof state attached to a [`SolveResult`].
///
/// For minimization `bound` is the lower bound that closed (or survived) the
/// search; for packing it is the corresponding upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub proved_optimal: bool,
    pub bound: u64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub optimum: u64,
    pub solution: CoverSolution,
    pub certificate: Certificate,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_proved(&self) -> bool {
        self.certificate.proved_optimal
    }
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Candidate-index permutations induced by the instance symmetry group.
struct GroupMaps {
    maps: Vec<Vec<u32>>,
}

impl GroupMaps {
    fn sequence(n: u32, r: u32, include_reversal: bool) -> Result<Self, Error> {
        let space = WordSpace::new(n, r)?;
        let size = space.size() as usize;
        let mut maps = Vec::new();
        for perm in symbol_permutations(n) {
            for rev in [false, true] {
                if rev && !include_reversal {
                    continue;
                }
                let mut map = vec![0u32; size];
                for (idx, slot) in map.iter_mut().enumerate() {
                    let w = space.word_at(idx as u64);
                    let mut syms: Vec<u16> =
                        w.symbols().iter().map(|&s| perm[s as usize]).collect();
                    if rev {
                        syms.reverse();
                    }
                    *slot = space.index_of(&Word::new(syms)) as u32;
                }
                maps.push(map);
            }
        }
        Ok(GroupMaps { maps })
    }

    fn turan(n: u32, r: u32) -> Self {
        let all = subsets_lex(n, r);
        let mut maps = Vec::new();
        for perm in symbol_permutations(n) {
            let mut map = vec![0u32; all.len()];
            for (idx, slot) in map.iter_mut().enumerate() {
                let mut img: Vec<u16> = all[idx].iter().map(|&s| perm[s as usize]).collect();
                img.sort_unstable();
                *slot = subset_rank(n, &img) as u32;
            }
            maps.push(map);
        }
        GroupMaps { maps }
    }

    fn for_instance(inst: &CoverInstance, include_reversal: bool) -> Result<Option<Self>, Error> {
        if inst.n > 7 || inst.num_candidates() > 65_536 {
            return Ok(None); // group too large to be worth tabulating
        }
        Ok(Some(match inst.mode {
            CoverMode::Sequence => GroupMaps::sequence(inst.n, inst.r, include_reversal)?,
            CoverMode::Turan => GroupMaps::turan(inst.n, inst.r),
        }))
    }
}

/// Memo of canonical (chosen, excluded) pairs. Two nodes with the same
/// canonical pair have symmetry-equivalent residual problems, so pruning the
/// later one loses neither the optimum nor any equivalence class of optima.
struct IsoMemo {
    group: GroupMaps,
    seen: Mutex<HashSet<(Vec<u32>, Vec<u32>)>>,
    depth_limit: u32,
}

impl IsoMemo {
    fn canonical_pair(&self, chosen: &[u32], excluded: &BitSet) -> (Vec<u32>, Vec<u32>) {
        let excl: Vec<u32> = excluded.iter_ones().map(|i| i as u32).collect();
        let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
        for map in &self.group.maps {
            let mut ch: Vec<u32> = chosen.iter().map(|&c| map[c as usize]).collect();
            ch.sort_unstable();
            let mut ex: Vec<u32> = excl.iter().map(|&c| map[c as usize]).collect();
            ex.sort_unstable();
            let key = (ch, ex);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.unwrap_or_default()
    }

    /// Returns true if an equivalent node was already explored.
    fn check_and_insert(&self, chosen: &[u32], excluded: &BitSet) -> bool {
        let key = self.canonical_pair(chosen, excluded);
        !self.seen.lock().unwrap().insert(key)
    }
}

struct Shared<'a> {
    inst: &'a CoverInstance,
    /// Best cover size found so far (monotone decreasing).
    incumbent: AtomicU64,
    best: Mutex<Option<Vec<u32>>>,
    nodes: AtomicU64,
    timed_out: AtomicBool,
    deadline: Instant,
    iso: Option<IsoMemo>,
}

impl Shared<'_> {
    fn note_solution(&self, chosen: &[u32]) {
        let size = chosen.len() as u64;
        let mut cur = self.incumbent.load(Ordering::SeqCst);
        while size < cur {
            match self.incumbent.compare_exchange(cur, size, Ordering::SeqCst, Ordering::SeqCst) {
                Ok(_) => {
                    let mut best = self.best.lock().unwrap();
                    if best.as_ref().is_none_or(|b| b.len() > chosen.len()) {
                        *best = Some(chosen.to_vec());
                    }
                    return;
                }
                Err(now) => cur = now,
            }
        }
    }
}

/// Owned search position: chosen candidates, coverage, and sibling exclusions.
#[derive(Clone)]
struct Node {
    chosen: Vec<u32>,
    covered: BitSet,
    excluded: BitSet,
    uncovered: usize,
    decision_depth: u32,
}

impl Node {
    fn root(inst: &CoverInstance) -> Node {
        Node {
            chosen: Vec::new(),
            covered: BitSet::new(inst.num_targets()),
            excluded: BitSet::new(inst.num_candidates()),
            uncovered: inst.num_targets(),
            decision_depth: 0,
        }
    }
}

/// `ceil(uncovered / best remaining gain)`; `None` when some target is
/// no longer coverable.
fn lower_bound(inst: &CoverInstance, node: &Node) -> Option<usize> {
    if node.uncovered == 0 {
        return Some(0);
    }
    let mut maxdeg = 0;
    for c in 0..inst.num_candidates() {
        if node.excluded.get(c) {
            continue;
        }
        let gain = inst.candidate_covers(c).count_and_not(&node.covered);
        if gain > maxdeg {
            maxdeg = gain;
        }
    }
    if maxdeg == 0 {
        return None;
    }
    Some(ceil_div(node.uncovered, maxdeg))
}

/// Uncovered target with the fewest available coverers (fail-first),
/// ties broken by least target index.
fn select_target(inst: &CoverInstance, node: &Node) -> Option<(usize, Vec<u32>)> {
    let mut best: Option<(usize, Vec<u32>)> = None;
    for t in 0..inst.num_targets() {
        if node.covered.get(t) {
            continue;
        }
        let avail: Vec<u32> = inst
            .target_coverers(t)
            .iter()
            .copied()
            .filter(|&c| !node.excluded.get(c as usize))
            .collect();
        match &best {
            Some((_, b)) if avail.len() >= b.len() => {}
            _ => {
                let single = avail.len() <= 1;
                best = Some((t, avail));
                if single {
                    break; // cannot do better than a forced or dead target
                }
            }
        }
    }
    best.map(|(t, avail)| (t, avail))
}

/// What the DFS is trying to do with complete covers it reaches.
enum Goal<'g> {
    /// Improve the shared incumbent (strict-improvement pruning).
    Minimize,
    /// Visit every cover of size at most `bound`.
    Enumerate {
        bound: u64,
        sink: &'g mut dyn FnMut(&[u32]),
        stop_after_first: bool,
    },
}

/// Returns false when the search was cut short (timeout or first-hit stop).
fn dfs(shared: &Shared<'_>, node: &mut Node, goal: &mut Goal<'_>) -> bool {
    let n_so_far = shared.nodes.fetch_add(1, Ordering::Relaxed);
    if n_so_far % 1024 == 0 && Instant::now() >= shared.deadline {
        shared.timed_out.store(true, Ordering::SeqCst);
    }
    if shared.timed_out.load(Ordering::Relaxed) {
        return false;
    }

    if node.uncovered == 0 {
        match goal {
            Goal::Minimize => shared.note_solution(&node.chosen),
            Goal::Enumerate { sink, stop_after_first, .. } => {
                sink(&node.chosen);
                if *stop_after_first {
                    return false;
                }
            }
        }
        return true;
    }

    let Some(lb) = lower_bound(shared.inst, node) else {
        return true; // dead end: some target lost all its candidates
    };
    let predicted = node.chosen.len() as u64 + lb as u64;
    let prune = match goal {
        Goal::Minimize => predicted >= shared.incumbent.load(Ordering::Relaxed),
        Goal::Enumerate { bound, .. } => predicted > *bound,
    };
    if prune {
        return true;
    }

    let Some((_t, avail)) = select_target(shared.inst, node) else {
        return true;
    };
    if avail.is_empty() {
        return true;
    }
    let branching = avail.len() > 1;

    let mut delta = BitSet::new(node.covered.len());
    for (i, &c) in avail.iter().enumerate() {
        if i > 0 {
            node.excluded.set(avail[i - 1] as usize);
        }
        node.chosen.push(c);
        let added = node
            .covered
            .union_with_delta(shared.inst.candidate_covers(c as usize), &mut delta);
        node.uncovered -= added;
        if branching {
            node.decision_depth += 1;
        }

        let skip = branching
            && shared.iso.as_ref().is_some_and(|iso| {
                node.decision_depth <= iso.depth_limit
                    && iso.check_and_insert(&node.chosen, &node.excluded)
            });
        let keep_going = skip || dfs(shared, node, goal);

        if branching {
            node.decision_depth -= 1;
        }
        node.uncovered += added;
        node.covered.difference_with(&delta);
        node.chosen.pop();
        if !keep_going {
            // undo the sibling exclusions before unwinding
            for &e in &avail[..i] {
                node.excluded.clear(e as usize);
            }
            return false;
        }
    }
    for &e in &avail[..avail.len().saturating_sub(1)] {
        node.excluded.clear(e as usize);
    }
    true
}

/// Expands the root into independent subproblems for worker distribution.
fn frontier(inst: &CoverInstance, want: usize) -> Vec<Node> {
    let mut open = vec![Node::root(inst)];
    loop {
        if open.len() >= want {
            return open;
        }
        // expand the first node that still branches
        let Some(pos) = open.iter().position(|n| n.uncovered > 0) else {
            return open;
        };
        let node = open.remove(pos);
        let Some((_t, avail)) = select_target(inst, &node) else {
            continue; // dead subtree, drop it
        };
        if avail.is_empty() {
            continue;
        }
        let branching = avail.len() > 1;
        let mut children = Vec::with_capacity(avail.len());
        let mut delta = BitSet::new(node.covered.len());
        for (i, &c) in avail.iter().enumerate() {
            let mut child = node.clone();
            for &e in &avail[..i] {
                child.excluded.set(e as usize);
            }
            child.chosen.push(c);
            let added = child
                .covered
                .union_with_delta(inst.candidate_covers(c as usize), &mut delta);
            child.uncovered -= added;
            if branching {
                child.decision_depth += 1;
            }
            children.push(child);
        }
        // leaves stay in the pool so their solutions are still reported
        open.extend(children);
        if branching && open.len() >= want {
            return open;
        }
    }
}

fn solve_instance(inst: &CoverInstance, opts: &SolveOptions) -> Result<SolveResult, Error> {
    let start = Instant::now();
    let deadline = start + opts.time_budget;

    let greedy = greedy_cover_indices(inst)?;
    let greedy_size = greedy.len() as u64;

    let root = Node::root(inst);
    let root_lb = lower_bound(inst, &root)
        .ok_or_else(|| Error::InvalidParameter("infeasible instance".into()))? as u64;

    let mut nodes_total = 0u64;
    let mut proved = greedy_size == root_lb || inst.num_targets() == 0;
    let mut optimum = greedy_size;
    let mut best_chosen = greedy.clone();

    if !proved {
        let iso = if opts.isomorph_rejection {
            GroupMaps::for_instance(inst, true)?.map(|group| IsoMemo {
                group,
                seen: Mutex::new(HashSet::new()),
                depth_limit: opts.iso_depth,
            })
        } else {
            None
        };
        let shared = Shared {
            inst,
            incumbent: AtomicU64::new(greedy_size),
            best: Mutex::new(Some(greedy.clone())),
            nodes: AtomicU64::new(0),
            timed_out: AtomicBool::new(false),
            deadline,
            iso,
        };
        if opts.threads <= 1 {
            let mut node = Node::root(inst);
            dfs(&shared, &mut node, &mut Goal::Minimize);
        } else {
            let subproblems = frontier(inst, opts.threads * 8);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
            pool.install(|| {
                rayon::scope(|scope| {
                    for sub in subproblems {
                        let shared = &shared;
                        scope.spawn(move |_| {
                            let mut node = sub;
                            dfs(shared, &mut node, &mut Goal::Minimize);
                        });
                    }
                });
            });
        }
        nodes_total = shared.nodes.load(Ordering::SeqCst);
        optimum = shared.incumbent.load(Ordering::SeqCst);
        best_chosen = shared.best.lock().unwrap().clone().unwrap_or(greedy);
        proved = !shared.timed_out.load(Ordering::SeqCst);
    }

    // Deterministic reported solution: the first optimal cover in candidate-
    // index DFS order, independent of worker count and incumbent races.
    if proved && optimum < greedy_size {
        if let Some(first) = first_cover_of_size(inst, optimum, deadline) {
            best_chosen = first;
        }
    } else if proved {
        best_chosen = greedy_cover_indices(inst)?;
    }

    let solution = inst.solution_from_indices(&best_chosen)?;
    Ok(SolveResult {
        optimum,
        solution,
        certificate: Certificate {
            proved_optimal: proved,
            bound: if proved { optimum } else { root_lb },
        },
        stats: SolveStats {
            nodes: nodes_total,
            elapsed: start.elapsed(),
        },
    })
}

fn first_cover_of_size(inst: &CoverInstance, size: u64, deadline: Instant) -> Option<Vec<u32>> {
    let shared = Shared {
        inst,
        incumbent: AtomicU64::new(u64::MAX),
        best: Mutex::new(None),
        nodes: AtomicU64::new(0),
        timed_out: AtomicBool::new(false),
        deadline,
        iso: None,
    };
    let mut found: Option<Vec<u32>> = None;
    let mut sink = |chosen: &[u32]| {
        if found.is_none() {
            found = Some(chosen.to_vec());
        }
    };
    let mut node = Node::root(inst);
    dfs(
        &shared,
        &mut node,
        &mut Goal::Enumerate {
            bound: size,
            sink: &mut sink,
            stop_after_first: true,
        },
    );
    if shared.timed_out.load(Ordering::SeqCst) {
        None
    } else {
        found
    }
}

/// Exact `S(n, k, r)`: minimum covering `(k−r)`-insertion code over `[n]`.
pub fn min_cover(n: u32, k: u32, r: u32, opts: &SolveOptions) -> Result<SolveResult, Error> {
    let inst = build_incidence(n, k, r, CoverMode::Sequence)?;
    solve_instance(&inst, opts)
}

/// Exact `T(n, k, r)`: minimum Turán `(n, k, r)`-system. `n < k` is vacuous
/// and yields 0.
pub fn min_turan(n: u32, k: u32, r: u32, opts: &SolveOptions) -> Result<SolveResult, Error> {
    if r == 0 || r >= k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= r < k, got r={r}, k={k}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("ground size must be positive".into()));
    }
    if n < k {
        return Ok(SolveResult {
            optimum: 0,
            solution: CoverSolution::System(TuranSystem::empty(n, r.min(n).max(1))?),
            certificate: Certificate { proved_optimal: true, bound: 0 },
            stats: SolveStats::default(),
        });
    }
    let inst = build_incidence(n, k, r, CoverMode::Turan)?;
    solve_instance(&inst, opts)
}

/// Runs the greedy baseline on a fresh instance (upper-bound generator).
pub fn greedy_solve(n: u32, k: u32, r: u32, mode: CoverMode) -> Result<SolveResult, Error> {
    if mode == CoverMode::Turan && n < k {
        return Ok(SolveResult {
            optimum: 0,
            solution: CoverSolution::System(TuranSystem::empty(n, r.min(n).max(1))?),
            certificate: Certificate { proved_optimal: true, bound: 0 },
            stats: SolveStats::default(),
        });
    }
    let start = Instant::now();
    let inst = build_incidence(n, k, r, mode)?;
    let chosen = greedy_cover_indices(&inst)?;
    let root_lb = lower_bound(&inst, &Node::root(&inst)).unwrap_or(0) as u64;
    let size = chosen.len() as u64;
    Ok(SolveResult {
        optimum: size,
        solution: inst.solution_from_indices(&chosen)?,
        certificate: Certificate { proved_optimal: size == root_lb, bound: root_lb },
        stats: SolveStats { nodes: 0, elapsed: start.elapsed() },
    })
}

/// One canonical representative per equivalence class of optimum-size
/// covering codes for `(n, k, r)`.
///
/// Requires the optimum to be provable within the budget; refuses instances
/// beyond enumeration scale.
pub fn enumerate_optimal(
    n: u32,
    k: u32,
    r: u32,
    group: CanonicalGroup,
    opts: &SolveOptions,
) -> Result<Vec<Code>, Error> {
    if n > CANONICAL_MAX_ALPHABET {
        return Err(Error::ScaleRefused(format!(
            "enumeration canonicalizes over n! symbol permutations; n={n} exceeds {CANONICAL_MAX_ALPHABET}"
        )));
    }
    let inst = build_incidence(n, k, r, CoverMode::Sequence)?;
    if inst.num_candidates() > ENUMERATION_MAX_CANDIDATES {
        return Err(Error::ScaleRefused(format!(
            "enumeration over {} candidates exceeds {ENUMERATION_MAX_CANDIDATES}",
            inst.num_candidates()
        )));
    }
    let solved = solve_instance(&inst, opts)?;
    if !solved.certificate.proved_optimal {
        return Err(Error::ScaleRefused(
            "optimum not proved within budget; cannot enumerate optimal covers".into(),
        ));
    }
    let optimum = solved.optimum;
    let deadline = Instant::now() + opts.time_budget;

    // The memo group must match the requested equivalence group, otherwise a
    // pruned branch could hide a class that only a larger group identifies.
    let iso = if opts.isomorph_rejection {
        let include_reversal = group == CanonicalGroup::SymbolPermutationsAndReversal;
        GroupMaps::for_instance(&inst, include_reversal)?.map(|g| IsoMemo {
            group: g,
            seen: Mutex::new(HashSet::new()),
            depth_limit: opts.iso_depth,
        })
    } else {
        None
    };
    let shared = Shared {
        inst: &inst,
        incumbent: AtomicU64::new(u64::MAX),
        best: Mutex::new(None),
        nodes: AtomicU64::new(0),
        timed_out: AtomicBool::new(false),
        deadline,
        iso,
    };
    let space = WordSpace::new(n, r)?;
    let mut classes: BTreeSet<Vec<Word>> = BTreeSet::new();
    let mut reps: Vec<Code> = Vec::new();
    {
        let mut sink = |chosen: &[u32]| {
            let words = chosen.iter().map(|&c| space.word_at(u64::from(c)));
            let code = Code::new(n, r, words).expect("indices are valid words");
            let canon = canonical_form(&code, group).expect("alphabet bounded above");
            let key: Vec<Word> = canon.words().cloned().collect();
            if classes.insert(key) {
                reps.push(canon);
            }
        };
        let mut node = Node::root(&inst);
        dfs(
            &shared,
            &mut node,
            &mut Goal::Enumerate {
                bound: optimum,
                sink: &mut sink,
                stop_after_first: false,
            },
        );
    }
    if shared.timed_out.load(Ordering::SeqCst) {
        return Err(Error::ScaleRefused(
            "enumeration budget exhausted before exploring all optimal covers".into(),
        ));
    }
    reps.sort_by(|a, b| {
        a.words().cloned().collect::<Vec<_>>().cmp(&b.words().cloned().collect::<Vec<_>>())
    });
    Ok(reps)
}

/// First conflicting pair of a claimed 1-packing, if any: two words sharing a
/// length-`r` subsequence.
pub fn packing_conflict(c: &Code, r: u32) -> Result<Option<(Word, Word)>, Error> {
    let words: Vec<&Word> = c.words().collect();
    let mut balls = Vec::with_capacity(words.len());
    for w in &words {
        balls.push(deletion_ball(w, r)?);
    }
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if balls[i].intersection(&balls[j]).next().is_some() {
                return Ok(Some(((*words[i]).clone(), (*words[j]).clone())));
            }
        }
    }
    Ok(None)
}

/// Exact `P(n, r+1, r)`: maximum set of length-`(r+1)` words over `[n]` with
/// pairwise disjoint deletion balls, via branch-and-bound maximum clique on
/// the compatibility graph with a greedy coloring bound.
///
/// The search is sequential and deterministic; `opts.threads` is ignored.
pub fn max_packing(n: u32, r: u32, opts: &SolveOptions) -> Result<SolveResult, Error> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and r >= 1".into()));
    }
    let start = Instant::now();
    let deadline = start + opts.time_budget;
    let space = WordSpace::new(n, r + 1)?;
    if space.size() > PACKING_MAX_WORDS {
        return Err(Error::ScaleRefused(format!(
            "packing over {} words exceeds {PACKING_MAX_WORDS}",
            space.size()
        )));
    }
    let v = space.size() as usize;
    let sub_space = WordSpace::new(n, r)?;
    let sub_size = sub_space.size() as usize;

    // deletion-ball bitsets per word
    let mut balls: Vec<BitSet> = Vec::with_capacity(v);
    for idx in 0..v as u64 {
        let mut ball = BitSet::new(sub_size);
        for pos in 0..=r {
            ball.set(space.delete_at(idx, pos) as usize);
        }
        balls.push(ball);
    }
    // compatibility adjacency: disjoint balls
    let mut compat: Vec<BitSet> = vec![BitSet::new(v); v];
    for i in 0..v {
        for j in i + 1..v {
            if balls[i].is_disjoint(&balls[j]) {
                compat[i].set(j);
                compat[j].set(i);
            }
        }
    }

    // greedy clique for the initial incumbent: max compatible degree first
    let mut remaining = BitSet::new(v);
    for i in 0..v {
        remaining.set(i);
    }
    let mut greedy: Vec<u32> = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in remaining.iter_ones() {
            let deg = compat[i].count_and(&remaining);
            if best.is_none_or(|(d, _)| deg > d) {
                best = Some((deg, i));
            }
        }
        let Some((_, pick)) = best else { break };
        greedy.push(pick as u32);
        let keep = compat[pick].clone();
        let mut next = BitSet::new(v);
        for i in remaining.iter_ones() {
            if i != pick && keep.get(i) {
                next.set(i);
            }
        }
        remaining = next;
    }

    let mut search = CliqueSearch {
        compat: &compat,
        best_size: greedy.len(),
        best: greedy.clone(),
        nodes: 0,
        deadline,
        timed_out: false,
    };
    let all: Vec<u32> = (0..v as u32).collect();
    let root_bound = search.color_bound(&all) as u64;
    let mut current = Vec::new();
    search.expand(&all, &mut current);

    let proved = !search.timed_out;
    let optimum = search.best_size as u64;
    let words = search.best.iter().map(|&i| space.word_at(u64::from(i)));
    let code = Code::new(n, r + 1, words)?;
    debug_assert!(packing_conflict(&code, r)?.is_none());
    Ok(SolveResult {
        optimum,
        solution: CoverSolution::Code(code),
        certificate: Certificate {
            proved_optimal: proved,
            bound: if proved { optimum } else { root_bound },
        },
        stats: SolveStats {
            nodes: search.nodes,
            elapsed: start.elapsed(),
        },
    })
}

struct CliqueSearch<'a> {
    compat: &'a [BitSet],
    best_size: usize,
    best: Vec<u32>,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

impl CliqueSearch<'_> {
    /// Greedy coloring; returns candidates reordered by ascending color and
    /// their color numbers (clique-size bound for the prefix ending there).
    fn color_sort(&self, cands: &[u32]) -> Vec<(u32, usize)> {
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for &vtx in cands {
            let mut placed = false;
            for class in classes.iter_mut() {
                if class.iter().all(|&u| !self.compat[vtx as usize].get(u as usize)) {
                    class.push(vtx);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![vtx]);
            }
        }
        let mut out = Vec::with_capacity(cands.len());
        for (ci, class) in classes.iter().enumerate() {
            for &vtx in class {
                out.push((vtx, ci + 1));
            }
        }
        out
    }

    fn color_bound(&self, cands: &[u32]) -> usize {
        self.color_sort(cands).last().map_or(0, |&(_, c)| c)
    }

    fn expand(&mut self, cands: &[u32], current: &mut Vec<u32>) {
        self.nodes += 1;
        if self.nodes % 1024 == 0 && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        if cands.is_empty() {
            if current.len() > self.best_size {
                self.best_size = current.len();
                self.best = current.clone();
            }
            return;
        }
        let colored = self.color_sort(cands);
        for i in (0..colored.len()).rev() {
            let (vtx, color) = colored[i];
            if current.len() + color <= self.best_size {
                return; // every earlier candidate has color <= this one
            }
            current.push(vtx);
            let next: Vec<u32> = colored[..i]
                .iter()
                .map(|&(u, _)| u)
                .filter(|&u| self.compat[vtx as usize].get(u as usize))
                .collect();
            if next.is_empty() {
                if current.len() > self.best_size {
                    self.best_size = current.len();
                    self.best = current.clone();
                }
            } else {
                self.expand(&next, current);
            }
            current.pop();
            if self.timed_out {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{verify_cover, verify_turan};
    use crate::turan::binomial;

    #[test]
    fn min_cover_trivial_alphabet() {
        let res = min_cover(1, 3, 1, &SolveOptions::default()).unwrap();
        assert_eq!(res.optimum, 1);
        assert!(res.is_proved());
    }

    #[test]
    fn min_cover_boolean_cube() {
        let res = min_cover(2, 3, 2, &SolveOptions::default()).unwrap();
        assert_eq!(res.optimum, 2);
        assert!(res.is_proved());
        let code = res.solution.as_code().unwrap();
        assert!(verify_cover(code, 3).unwrap().is_covered());
        // the optimum here is unique: constant targets force both constant words
        let words: Vec<_> = code.words().cloned().collect();
        assert_eq!(words, vec![Word::from_slice(&[0, 0]), Word::from_slice(&[1, 1])]);
    }

    #[test]
    fn min_turan_small_values() {
        let opts = SolveOptions::default();
        assert_eq!(min_turan(4, 3, 2, &opts).unwrap().optimum, 2);
        assert_eq!(min_turan(5, 3, 2, &opts).unwrap().optimum, 4);
        let res = min_turan(5, 4, 3, &opts).unwrap();
        assert_eq!(res.optimum, 3);
        assert!(verify_turan(res.solution.as_system().unwrap(), 4).unwrap().is_covered());
        // vacuous
        assert_eq!(min_turan(3, 4, 3, &opts).unwrap().optimum, 0);
    }

    #[test]
    fn min_turan_matches_two_part_formula() {
        // T(n,3,2) = C(n,2) - floor(n^2/4)
        let opts = SolveOptions::default();
        for n in 3..=6u32 {
            let expect = binomial(u64::from(n), 2) - u64::from(n) * u64::from(n) / 4;
            let res = min_turan(n, 3, 2, &opts).unwrap();
            assert!(res.is_proved());
            assert_eq!(res.optimum, expect, "n={n}");
        }
    }

    #[test]
    fn enumerate_optimal_small() {
        let opts = SolveOptions::default();
        let reps = enumerate_optimal(1, 2, 1, CanonicalGroup::SymbolPermutations, &opts).unwrap();
        assert_eq!(reps.len(), 1);

        // brute-force oracle: of the C(4,2)=6 two-word codes over [2]^2 only
        // {00,11} covers [2]^3, so there is exactly one class
        let space = WordSpace::new(2, 2).unwrap();
        let mut covers = 0;
        for a in 0..4u64 {
            for b in (a + 1)..4 {
                let code =
                    Code::new(2, 2, [space.word_at(a), space.word_at(b)]).unwrap();
                if verify_cover(&code, 3).unwrap().is_covered() {
                    covers += 1;
                }
            }
        }
        assert_eq!(covers, 1);
        let reps = enumerate_optimal(2, 3, 2, CanonicalGroup::SymbolPermutations, &opts).unwrap();
        assert_eq!(reps.len(), 1);
    }

    #[test]
    fn packing_boolean_cube() {
        let res = max_packing(2, 2, &SolveOptions::default()).unwrap();
        assert_eq!(res.optimum, 2);
        assert!(res.is_proved());
        let code = res.solution.as_code().unwrap();
        assert!(packing_conflict(code, 2).unwrap().is_none());

        // oracle: no 3 words of [2]^3 are pairwise conflict-free
        let space = WordSpace::new(2, 3).unwrap();
        for a in 0..8u64 {
            for b in (a + 1)..8 {
                for c in (b + 1)..8 {
                    let code = Code::new(
                        2,
                        3,
                        [space.word_at(a), space.word_at(b), space.word_at(c)],
                    )
                    .unwrap();
                    assert!(packing_conflict(&code, 2).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn packing_single_symbol() {
        let res = max_packing(1, 4, &SolveOptions::default()).unwrap();
        assert_eq!(res.optimum, 1);
    }

    #[test]
    fn greedy_solve_reports_bound() {
        let res = greedy_solve(3, 4, 3, CoverMode::Sequence).unwrap();
        assert!((12..=27).contains(&res.optimum));
        assert_eq!(res.certificate.bound, 9); // ceil(81/9)
    }
}
