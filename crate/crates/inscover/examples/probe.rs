use std::time::Instant;

use inscover::cover::CoverMode;
use inscover::solve::{enumerate_optimal, greedy_solve, max_packing, min_cover, min_turan};
use inscover::words::{CanonicalGroup, Code};
use inscover::SolveOptions;

fn pairwise_min_ratio(code: &Code) {
    // lambda(C_i ∩ C_j) vs lambda(C)^2 over [n]^{r+1}, floats are fine for probing
    let n = code.alphabet_size();
    let r = code.word_length();
    let space = WordSpace_pub(n, r + 1);
    let sub = WordSpace_pub(n, r);
    let mut member = vec![false; sub.1 as usize];
    for w in code.words() {
        let mut idx = 0u64;
        for &s in w.symbols() {
            idx = idx * n as u64 + s as u64;
        }
        member[idx as usize] = true;
    }
    let total = space.1;
    let lam = code.len() as f64 / sub.1 as f64;
    let mut worst = f64::INFINITY;
    let mut worst_pair = (0, 0);
    for i in 0..=r {
        for j in (i + 1)..=r {
            let mut count = 0u64;
            for a in 0..total {
                let di = delete_digit(a, i, n as u64, r + 1);
                let dj = delete_digit(a, j, n as u64, r + 1);
                if member[di as usize] && member[dj as usize] {
                    count += 1;
                }
            }
            let lij = count as f64 / total as f64;
            let ratio = lij / (lam * lam);
            if ratio < worst {
                worst = ratio;
                worst_pair = (i, j);
            }
        }
    }
    println!(
        "  pairwise: min ratio {:.4} at pair {:?} (>=1 means bound holds); lambda={:.4}",
        worst, worst_pair, lam
    );
}

fn delete_digit(idx: u64, pos: u32, n: u64, len: u32) -> u64 {
    let below = n.pow(len - pos - 1);
    let high = idx / (below * n);
    let low = idx % below;
    high * below + low
}

#[allow(non_snake_case)]
fn WordSpace_pub(n: u32, len: u32) -> ((), u64) {
    ((), (n as u64).pow(len))
}

fn main() {
    let mut opts = SolveOptions::default();

    let t = Instant::now();
    let res = min_cover(3, 4, 3, &opts).unwrap();
    println!(
        "S(3,4,3): opt={} proved={} nodes={} elapsed={:?}",
        res.optimum,
        res.is_proved(),
        res.stats.nodes,
        t.elapsed()
    );
    let sol1 = res.solution.clone();

    opts.threads = 4;
    let res4 = min_cover(3, 4, 3, &opts).unwrap();
    println!(
        "S(3,4,3) 4 threads: opt={} same solution={}",
        res4.optimum,
        res4.solution == sol1
    );
    opts.threads = 1;

    let t = Instant::now();
    opts.isomorph_rejection = false;
    let res = min_cover(3, 4, 3, &opts).unwrap();
    println!(
        "S(3,4,3) no iso: opt={} nodes={} elapsed={:?}",
        res.optimum, res.stats.nodes, t.elapsed()
    );
    opts.isomorph_rejection = true;

    let t = Instant::now();
    let reps = enumerate_optimal(3, 4, 3, CanonicalGroup::SymbolPermutations, &opts).unwrap();
    println!("enumerate_optimal(3,4,3): {} classes, elapsed={:?}", reps.len(), t.elapsed());
    for rep in &reps {
        let words: Vec<String> = rep.words().map(|w| w.to_string()).collect();
        println!("  class rep: {:?}", words);
    }

    let t = Instant::now();
    let res = min_turan(7, 3, 2, &opts).unwrap();
    println!(
        "T(7,3,2): opt={} proved={} nodes={} elapsed={:?}",
        res.optimum,
        res.is_proved(),
        res.stats.nodes,
        t.elapsed()
    );

    let t = Instant::now();
    let res = max_packing(3, 3, &opts).unwrap();
    println!(
        "P(3,4,3): opt={} proved={} nodes={} elapsed={:?}",
        res.optimum,
        res.is_proved(),
        res.stats.nodes,
        t.elapsed()
    );

    let greedy = greedy_solve(3, 4, 3, CoverMode::Sequence).unwrap();
    let code = greedy.solution.as_code().unwrap();
    let words: Vec<String> = code.words().map(|w| w.to_string()).collect();
    println!("greedy(3,4,3): size={} words={:?}", code.len(), words);
    println!("greedy(3,4,3) symmetric: {}", inscover::is_symmetric(code));
    pairwise_min_ratio(code);

    let opt343 = res4.solution.as_code().unwrap().clone();
    println!("optimal(3,4,3) symmetric: {}", inscover::is_symmetric(&opt343));
    pairwise_min_ratio(&opt343);

    // residue-complement bound probe for greedy code: lambda(R_j) <= (1-l)(r*l-1)
    {
        let n = 3u64;
        let r = 3u32;
        let code = greedy.solution.as_code().unwrap();
        let mut member = vec![false; 27];
        for w in code.words() {
            let mut idx = 0u64;
            for &s in w.symbols() {
                idx = idx * n + s as u64;
            }
            member[idx as usize] = true;
        }
        let total = 81u64;
        let lam = code.len() as f64 / 27.0;
        let rhs = (1.0 - lam) * (3.0 * lam - 1.0);
        for j in 0..=r {
            let mut count = 0u64;
            for a in 0..total {
                let t_a = (0..=r)
                    .filter(|&p| member[delete_digit(a, p, n, r + 1) as usize])
                    .count();
                let in_cj = member[delete_digit(a, j, n, r + 1) as usize];
                if t_a >= 2 && t_a <= r as usize && !in_cj {
                    count += 1;
                }
            }
            let lrj = count as f64 / total as f64;
            println!(
                "  greedy lambda(R_{}) = {:.4} <= {:.4}: {}",
                j,
                lrj,
                rhs,
                lrj <= rhs + 1e-12
            );
        }
    }
}
