//! Search over vertex partitions for a certified dual spine with few vertices.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::partition::{bell, restricted_growth_strings, VertexPartition};
use crate::spine::{
    dual_spine_in, passes_euler_filter, verify_spine, Certificate, Tower, VerifyOptions,
};

pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 100_000;
pub const DEFAULT_ITERATIONS: usize = 2_000;
/// Annealing chains; fixed so results do not depend on the thread count.
pub const CHAINS: usize = 4;
const COOLING: f64 = 0.995;
const START_TEMPERATURE: f64 = 2.0;
const RESTART_EVERY: usize = 400;

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Enumerate every partition when their number is at most this.
    pub exhaustive_cap: u64,
    /// Enumerate every partition regardless of the cap.
    pub force_exhaustive: bool,
    /// Annealing steps per chain.
    pub iterations: usize,
    pub seed: u64,
    /// Worker threads; does not affect the result.
    pub jobs: usize,
    pub verify: VerifyOptions,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            force_exhaustive: false,
            iterations: DEFAULT_ITERATIONS,
            seed: 0,
            jobs: 1,
            verify: VerifyOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best_partition: VertexPartition,
    pub best_count: usize,
    pub proven_exhaustive: bool,
    /// Distinct partitions whose vertex count was computed.
    pub evaluated: usize,
}

/// Top faces of `t` meeting d + 1 classes.
pub fn rainbow_count(t: &Complex, p: &VertexPartition) -> usize {
    let d = t.dim().unwrap_or(0);
    t.faces_of_dim(d)
        .iter()
        .filter(|f| p.classes_meeting(t.face(**f).vertices()) == d + 1)
        .count()
}

struct Evaluator<'a> {
    t: &'a Complex,
    tower: Arc<Tower>,
    opts: VerifyOptions,
}

impl Evaluator<'_> {
    fn certified(&self, p: &VertexPartition) -> bool {
        if !passes_euler_filter(self.t, p) {
            return false;
        }
        let Ok(s) = dual_spine_in(&self.tower, p) else {
            return false;
        };
        matches!(
            verify_spine(&s, self.opts).certificate,
            Certificate::Yes | Certificate::YesHeuristic
        )
    }
}

pub fn search_min_vertices(t: &Complex, budget: &SearchBudget) -> Result<SearchResult> {
    if t.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if !t.is_pure() {
        return Err(Error::NotPure);
    }
    let ev = Evaluator {
        t,
        tower: Tower::new(t),
        opts: budget.verify,
    };
    let n = t.num_vertices();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(budget.jobs.max(1))
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    if budget.force_exhaustive || bell(n) <= budget.exhaustive_cap {
        pool.install(|| exhaustive(&ev, n))
    } else {
        pool.install(|| anneal(&ev, n, budget))
    }
}

fn exhaustive(ev: &Evaluator, n: usize) -> Result<SearchResult> {
    let all: Vec<VertexPartition> = restricted_growth_strings(n)
        .into_iter()
        .map(|rgs| VertexPartition::from_class_of(&rgs))
        .collect();
    let mut scored: Vec<(usize, usize)> = all
        .par_iter()
        .map(|p| rainbow_count(ev.t, p))
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    scored.sort_unstable();
    let evaluated = all.len();
    // Verify in blocks of equal count; the first certified partition in enumeration order wins.
    let mut start = 0;
    while start < scored.len() {
        let count = scored[start].0;
        let end = scored[start..]
            .iter()
            .position(|(c, _)| *c != count)
            .map_or(scored.len(), |o| start + o);
        let block = &scored[start..end];
        let hit = block.par_iter().find_first(|(_, i)| ev.certified(&all[*i]));
        if let Some((c, i)) = hit {
            return Ok(SearchResult {
                best_partition: all[*i].clone(),
                best_count: *c,
                proven_exhaustive: true,
                evaluated,
            });
        }
        start = end;
    }
    Err(Error::NoCertifiedPartition)
}

#[derive(Clone, Copy)]
struct Score {
    count: usize,
    certified: bool,
}

impl Score {
    fn energy(&self, penalty: usize) -> f64 {
        (self.count + if self.certified { 0 } else { penalty }) as f64
    }
}

fn propose(rng: &mut ChaCha8Rng, tags: &[usize]) -> Vec<usize> {
    let n = tags.len();
    let k = tags.iter().max().map_or(0, |m| m + 1);
    let mut next = tags.to_vec();
    match rng.gen_range(0..3) {
        0 if k >= 3 => {
            let a = rng.gen_range(0..k);
            let mut b = rng.gen_range(0..k - 1);
            if b >= a {
                b += 1;
            }
            for x in next.iter_mut().filter(|x| **x == b) {
                *x = a;
            }
        }
        1 => {
            let big: Vec<usize> = (0..k)
                .filter(|c| tags.iter().filter(|x| *x == c).count() >= 2)
                .collect();
            if let Some(&c) = big.get(rng.gen_range(0..big.len().max(1))) {
                let members: Vec<usize> = (0..n).filter(|v| tags[*v] == c).collect();
                // A nonempty proper subset keeping the first member behind.
                loop {
                    let moved: Vec<usize> = members[1..]
                        .iter()
                        .copied()
                        .filter(|_| rng.gen_bool(0.5))
                        .collect();
                    if !moved.is_empty() {
                        for v in moved {
                            next[v] = k;
                        }
                        break;
                    }
                }
            }
        }
        _ => {
            let v = rng.gen_range(0..n);
            next[v] = rng.gen_range(0..=k);
        }
    }
    VertexPartition::from_class_of(&next).class_tags().to_vec()
}

// Best certified (count, tags) of one chain and the number of partitions it scored.
type ChainOutcome = (Option<(usize, Vec<usize>)>, usize);

fn chain(ev: &Evaluator, n: usize, budget: &SearchBudget, idx: usize) -> ChainOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(
        budget.seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(idx as u64 + 1)),
    );
    let penalty = ev.t.faces_of_dim(ev.t.dim().unwrap_or(0)).len() + 1;
    let mut cache: HashMap<Vec<usize>, Score> = HashMap::new();
    let mut score = |tags: &Vec<usize>| -> Score {
        *cache.entry(tags.clone()).or_insert_with(|| {
            let p = VertexPartition::from_class_of(tags);
            Score {
                count: rainbow_count(ev.t, &p),
                certified: ev.certified(&p),
            }
        })
    };
    let mut current: Vec<usize> = (0..n).collect();
    let mut cur_score = score(&current);
    let mut best = cur_score
        .certified
        .then(|| (cur_score.count, current.clone()));
    let mut since_restart = 0;
    for _ in 0..budget.iterations {
        if since_restart == RESTART_EVERY {
            if let Some((_, b)) = &best {
                current = b.clone();
                cur_score = score(&current);
            }
            since_restart = 0;
        }
        let temp = START_TEMPERATURE * COOLING.powi(since_restart as i32);
        since_restart += 1;
        let cand = propose(&mut rng, &current);
        if cand.iter().all(|x| *x == 0) {
            continue;
        }
        let s = score(&cand);
        let delta = s.energy(penalty) - cur_score.energy(penalty);
        let accept = delta <= 0.0 || rng.gen_bool((-delta / temp.max(1e-9)).exp().min(1.0));
        if accept {
            if s.certified
                && best
                    .as_ref()
                    .is_none_or(|(c, b)| (s.count, &cand) < (*c, b))
            {
                best = Some((s.count, cand.clone()));
            }
            current = cand;
            cur_score = s;
        }
    }
    (best, cache.len())
}

fn anneal(ev: &Evaluator, n: usize, budget: &SearchBudget) -> Result<SearchResult> {
    let runs: Vec<ChainOutcome> = (0..CHAINS)
        .into_par_iter()
        .map(|i| chain(ev, n, budget, i))
        .collect();
    let evaluated = runs.iter().map(|(_, e)| e).sum();
    let best = runs
        .into_iter()
        .filter_map(|(b, _)| b)
        .min()
        .ok_or(Error::NoCertifiedPartition)?;
    Ok(SearchResult {
        best_partition: VertexPartition::from_class_of(&best.1),
        best_count: best.0,
        proven_exhaustive: false,
        evaluated,
    })
}
