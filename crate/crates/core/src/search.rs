//! Exhaustive and sampled scans for worst-case approximation ratios.
//!
//! The exhaustive space lists strings over the first `K` letters by length,
//! then lexicographically, and visits index sets in lexicographic order,
//! skipping any set in which one string occurs inside another. Every
//! substring-free instance within the caps is visited exactly once, and its
//! position in that order is its canonical index.
//!
//! Instances are processed in chunks; within a chunk, workers evaluate
//! instances independently and the results are folded in index order, so the
//! report does not depend on the number of workers.
//!
//! # Checkpoints
//!
//! A checkpoint is a JSON object with `"format": "scs-search-checkpoint"`,
//! `"version": 1`, the scan configuration (`space`, `algo`, `metric`,
//! `budget`), `next_index` (instances already folded in) and the partial
//! report (`best`, `zero_optimum`, `all_complete`). A scan started with an
//! existing checkpoint file resumes from `next_index` once the configuration
//! matches.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScsError};
use crate::solvers::exact::{exact_scs, exact_sigma, EXACT_MAX_N};
use crate::solvers::greedy::{enumerate_instantiations, Algo, Solution, DEFAULT_ENUMERATION_BUDGET};
use crate::strings::{is_substring, normalize, Instance, Sym};

pub type Rational = Ratio<u64>;

pub const CHECKPOINT_FORMAT: &str = "scs-search-checkpoint";
pub const CHECKPOINT_VERSION: u32 = 1;

const CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SearchMode {
    Exhaustive,
    Random { seed: u64, samples: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub alphabet_size: usize,
    pub max_strings: usize,
    pub max_len: usize,
    pub mode: SearchMode,
}

impl SearchSpace {
    pub fn exhaustive(alphabet_size: usize, max_strings: usize, max_len: usize) -> SearchSpace {
        SearchSpace { alphabet_size, max_strings, max_len, mode: SearchMode::Exhaustive }
    }

    pub fn random(alphabet_size: usize, max_strings: usize, max_len: usize, seed: u64, samples: u64) -> SearchSpace {
        SearchSpace { alphabet_size, max_strings, max_len, mode: SearchMode::Random { seed, samples } }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=26).contains(&self.alphabet_size) || self.max_strings == 0 || self.max_len == 0 {
            return Err(ScsError::invalid("need 1 ≤ alphabet ≤ 26, max_strings ≥ 1 and max_len ≥ 1"));
        }
        if self.max_strings > EXACT_MAX_N {
            return Err(ScsError::Capacity(format!(
                "{} strings exceed the exact limit of {EXACT_MAX_N}",
                self.max_strings
            )));
        }
        Ok(())
    }

    /// Instances in canonical order, starting at `skip`.
    pub fn instances(&self, skip: u64) -> Result<Box<dyn Iterator<Item = (u64, Instance)> + Send>> {
        self.validate()?;
        Ok(match self.mode {
            SearchMode::Exhaustive => {
                let mut it = Exhaustive::new(self.alphabet_size, self.max_len, self.max_strings);
                for _ in 0..skip {
                    if it.next().is_none() {
                        break;
                    }
                }
                Box::new(it.enumerate().map(move |(i, inst)| (skip + i as u64, inst)))
            }
            SearchMode::Random { seed, samples } => {
                let space = *self;
                Box::new((skip..samples).map(move |i| (i, space.sample(seed, i))))
            }
        })
    }

    fn sample(&self, seed: u64, index: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let count = rng.random_range(1..=self.max_strings);
        let raw = (0..count)
            .map(|_| {
                let len = rng.random_range(1..=self.max_len);
                (0..len).map(|_| b'a' + rng.random_range(0..self.alphabet_size) as u8).collect()
            })
            .collect();
        normalize(raw).expect("non-empty strings over letters")
    }
}

/// All strings over the first `k` letters with length `1..=max_len`, by
/// length and then lexicographically.
pub fn canonical_strings(k: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                (0..k as u8).map(move |c| {
                    let mut t = s.clone();
                    t.push(b'a' + c);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Depth-first walk over increasing index tuples of substring-free strings.
struct Exhaustive {
    strings: Vec<Vec<u8>>,
    /// `compatible[i][j]`: neither string contains the other.
    compatible: Vec<Vec<bool>>,
    max_strings: usize,
    stack: Vec<usize>,
    started: bool,
}

impl Exhaustive {
    fn new(k: usize, max_len: usize, max_strings: usize) -> Exhaustive {
        let strings = canonical_strings(k, max_len);
        let compatible = strings
            .iter()
            .map(|a| strings.iter().map(|b| a == b || (!is_substring(a, b) && !is_substring(b, a))).collect())
            .collect();
        Exhaustive { strings, compatible, max_strings, stack: Vec::new(), started: false }
    }

    fn fits(&self, cand: usize) -> bool {
        self.stack.iter().all(|&i| self.compatible[i][cand])
    }

    /// Smallest compatible index `≥ from`, if any.
    fn next_fit(&self, from: usize) -> Option<usize> {
        (from..self.strings.len()).find(|&c| self.fits(c))
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            if self.strings.is_empty() {
                return false;
            }
            self.stack.push(0);
            return true;
        }
        let Some(&top) = self.stack.last() else {
            return false;
        };
        // extend
        if self.stack.len() < self.max_strings {
            if let Some(c) = self.next_fit(top + 1) {
                self.stack.push(c);
                return true;
            }
        }
        // otherwise replace the last element by its next sibling, backtracking
        while let Some(last) = self.stack.pop() {
            if let Some(c) = self.next_fit(last + 1) {
                self.stack.push(c);
                return true;
            }
        }
        false
    }
}

impl Iterator for Exhaustive {
    type Item = Instance;

    fn next(&mut self) -> Option<Instance> {
        if !self.advance() {
            return None;
        }
        let strings = self.stack.iter().map(|&i| self.strings[i].clone()).collect();
        Some(Instance::new(strings).expect("substring-free by construction"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Length,
    Uniform,
}

/// The metric of a reported ratio, with the symbol for the uniform metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MetricTag {
    Length,
    Uniform { symbol: Sym },
}

/// `P/Q`, also for whole numbers.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

mod ratio_str {
    use super::{format_ratio, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        super::parse_ratio(&String::deserialize(d)?).map_err(de::Error::custom)
    }
}

/// Parses `P/Q` or an integer.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let bad = || ScsError::invalid(format!("bad ratio {text:?}"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// An instance on which some instantiation uses a symbol that an optimal
/// superstring avoids entirely; no finite ratio exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroOptimum {
    pub index: u64,
    pub instance: Instance,
    pub symbol: Sym,
    pub count: u64,
}

/// Worst ratio of one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    #[serde(with = "ratio_str")]
    pub ratio: Rational,
    pub metric: MetricTag,
    /// The instantiation that attains `ratio`.
    pub solution: Solution,
    /// Optimal length, or optimal count of the symbol.
    pub optimum: u64,
    pub complete: bool,
    pub zero_optimum: Option<(Sym, u64)>,
}

/// Ratio of the worst instantiation of `algo` on `inst` to the optimum.
/// Under the uniform metric, symbols are taken in alphabet order and the
/// first maximum wins.
pub fn evaluate(inst: &Instance, algo: Algo, metric: Metric, budget: usize) -> Result<Evaluation> {
    let e = enumerate_instantiations(inst, algo, budget);
    match metric {
        Metric::Length => {
            let opt = exact_scs(inst)?.length;
            let sol = e.max_length().expect("at least one instantiation").clone();
            Ok(Evaluation {
                ratio: Rational::new(sol.length, opt),
                metric: MetricTag::Length,
                solution: sol,
                optimum: opt,
                complete: e.complete,
                zero_optimum: None,
            })
        }
        Metric::Uniform => {
            let mut best: Option<Evaluation> = None;
            let mut zero = None;
            for &p in inst.alphabet() {
                let (opt, _) = exact_sigma(inst, p)?;
                let sol = e.max_count(p).expect("at least one instantiation");
                let count = sol.count(p);
                if opt == 0 {
                    if count > 0 && zero.is_none() {
                        zero = Some((p, count));
                    }
                    continue;
                }
                let ratio = Rational::new(count, opt);
                if best.as_ref().is_none_or(|b| ratio > b.ratio) {
                    best = Some(Evaluation {
                        ratio,
                        metric: MetricTag::Uniform { symbol: p },
                        solution: sol.clone(),
                        optimum: opt,
                        complete: e.complete,
                        zero_optimum: None,
                    });
                }
            }
            let mut out = best.ok_or_else(|| ScsError::invalid("no symbol with a positive optimum"))?;
            out.zero_optimum = zero;
            Ok(out)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub index: u64,
    pub instance: Instance,
    pub evaluation: Evaluation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    #[serde(with = "ratio_str")]
    pub best_ratio: Rational,
    pub metric: MetricTag,
    pub witness_index: u64,
    pub witness_instance: Instance,
    pub witness_solution: Solution,
    pub instances_scanned: u64,
    /// The whole space was scanned and every enumeration finished.
    pub exhausted: bool,
    pub zero_optimum: Option<ZeroOptimum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub passed: bool,
    #[serde(with = "ratio_str")]
    pub lambda: Rational,
    pub counterexample: Option<Witness>,
    pub instances_scanned: u64,
    /// Every enumeration up to the stopping point finished.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpointing {
    pub path: PathBuf,
    pub every: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    pub budget: usize,
    pub checkpoint: Option<Checkpointing>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { jobs: None, budget: DEFAULT_ENUMERATION_BUDGET, checkpoint: None }
    }
}

impl SearchOptions {
    pub fn with_jobs(jobs: usize) -> SearchOptions {
        SearchOptions { jobs: Some(jobs), ..SearchOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    format: String,
    version: u32,
    space: SearchSpace,
    algo: Algo,
    metric: Metric,
    budget: usize,
    next_index: u64,
    best: Option<Witness>,
    zero_optimum: Option<ZeroOptimum>,
    all_complete: bool,
}

fn load_checkpoint(path: &Path) -> Result<Option<Checkpoint>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path)?;
    let cp: Checkpoint =
        serde_json::from_str(&text).map_err(|e| ScsError::invalid(format!("bad checkpoint: {e}")))?;
    if cp.format != CHECKPOINT_FORMAT || cp.version != CHECKPOINT_VERSION {
        return Err(ScsError::invalid("unsupported checkpoint format or version"));
    }
    Ok(Some(cp))
}

fn save_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string_pretty(cp).expect("serializable"))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(ScsError::invalid("jobs must be at least 1"));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| ScsError::invalid(e.to_string()))
}

fn evaluate_chunk(
    chunk: &[(u64, Instance)],
    algo: Algo,
    metric: Metric,
    budget: usize,
) -> Result<Vec<Evaluation>> {
    chunk.par_iter().map(|(_, inst)| evaluate(inst, algo, metric, budget)).collect()
}

/// Scans `space` for the instance with the largest worst-instantiation ratio.
/// Ties go to the smaller canonical index.
pub fn worst_ratio(space: &SearchSpace, algo: Algo, metric: Metric, opts: &SearchOptions) -> Result<RatioReport> {
    space.validate()?;
    let mut state = Checkpoint {
        format: CHECKPOINT_FORMAT.into(),
        version: CHECKPOINT_VERSION,
        space: *space,
        algo,
        metric,
        budget: opts.budget,
        next_index: 0,
        best: None,
        zero_optimum: None,
        all_complete: true,
    };
    if let Some(cp) = &opts.checkpoint {
        if cp.every == 0 {
            return Err(ScsError::invalid("checkpoint interval must be at least 1"));
        }
        if let Some(saved) = load_checkpoint(&cp.path)? {
            if (saved.space, saved.algo, saved.metric, saved.budget) != (*space, algo, metric, opts.budget) {
                return Err(ScsError::invalid("checkpoint belongs to a different search"));
            }
            state = saved;
        }
    }
    let chunk_size = opts.checkpoint.as_ref().map_or(CHUNK, |c| (c.every as usize).clamp(1, CHUNK));
    let workers = pool(opts.jobs)?;
    let mut iter = space.instances(state.next_index)?;
    let mut since_save = 0u64;
    loop {
        let chunk: Vec<(u64, Instance)> = iter.by_ref().take(chunk_size).collect();
        if chunk.is_empty() {
            break;
        }
        let evals = workers.install(|| evaluate_chunk(&chunk, algo, metric, opts.budget))?;
        for ((index, inst), ev) in chunk.into_iter().zip(evals) {
            state.all_complete &= ev.complete;
            if let (None, Some((symbol, count))) = (&state.zero_optimum, ev.zero_optimum) {
                state.zero_optimum = Some(ZeroOptimum { index, instance: inst.clone(), symbol, count });
            }
            if state.best.as_ref().is_none_or(|b| ev.ratio > b.evaluation.ratio) {
                state.best = Some(Witness { index, instance: inst, evaluation: ev });
            }
            state.next_index = index + 1;
            since_save += 1;
        }
        if let Some(cp) = &opts.checkpoint {
            if since_save >= cp.every {
                save_checkpoint(&cp.path, &state)?;
                since_save = 0;
            }
        }
    }
    if let Some(cp) = &opts.checkpoint {
        save_checkpoint(&cp.path, &state)?;
    }
    let best = state.best.ok_or_else(|| ScsError::NotFound("the search space is empty".into()))?;
    Ok(RatioReport {
        best_ratio: best.evaluation.ratio,
        metric: best.evaluation.metric,
        witness_index: best.index,
        witness_instance: best.instance,
        witness_solution: best.evaluation.solution,
        instances_scanned: state.next_index,
        exhausted: space.mode == SearchMode::Exhaustive && state.all_complete,
        zero_optimum: state.zero_optimum,
    })
}

/// As [`worst_ratio`], over an explicit list (indices are list positions).
pub fn worst_ratio_over(instances: &[Instance], algo: Algo, metric: Metric, opts: &SearchOptions) -> Result<RatioReport> {
    if instances.iter().any(|i| i.len() > EXACT_MAX_N) {
        return Err(ScsError::Capacity(format!("instances are limited to {EXACT_MAX_N} strings")));
    }
    let workers = pool(opts.jobs)?;
    let evals: Vec<Evaluation> =
        workers.install(|| instances.par_iter().map(|i| evaluate(i, algo, metric, opts.budget)).collect::<Result<_>>())?;
    let mut best: Option<usize> = None;
    let mut zero = None;
    for (k, ev) in evals.iter().enumerate() {
        if let (None, Some((symbol, count))) = (&zero, ev.zero_optimum) {
            zero = Some(ZeroOptimum { index: k as u64, instance: instances[k].clone(), symbol, count });
        }
        if best.is_none_or(|b| ev.ratio > evals[b].ratio) {
            best = Some(k);
        }
    }
    let b = best.ok_or_else(|| ScsError::NotFound("no instances given".into()))?;
    Ok(RatioReport {
        best_ratio: evals[b].ratio,
        metric: evals[b].metric,
        witness_index: b as u64,
        witness_instance: instances[b].clone(),
        witness_solution: evals[b].solution.clone(),
        instances_scanned: instances.len() as u64,
        exhausted: evals.iter().all(|e| e.complete),
        zero_optimum: zero,
    })
}

fn exceeds(ev: &Evaluation, lambda: Rational) -> bool {
    ev.ratio > lambda || ev.zero_optimum.is_some()
}

/// Stops at the first instance (in canonical order) whose ratio exceeds
/// `lambda`. An instance with a zero optimum counts as exceeding any bound.
pub fn verify_bound(
    space: &SearchSpace,
    algo: Algo,
    metric: Metric,
    lambda: Rational,
    opts: &SearchOptions,
) -> Result<BoundCheck> {
    space.validate()?;
    let workers = pool(opts.jobs)?;
    let mut iter = space.instances(0)?;
    let mut scanned = 0u64;
    let mut complete = true;
    loop {
        let chunk: Vec<(u64, Instance)> = iter.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let evals = workers.install(|| evaluate_chunk(&chunk, algo, metric, opts.budget))?;
        for ((index, inst), ev) in chunk.into_iter().zip(evals) {
            scanned += 1;
            complete &= ev.complete;
            if exceeds(&ev, lambda) {
                return Ok(BoundCheck {
                    passed: false,
                    lambda,
                    counterexample: Some(Witness { index, instance: inst, evaluation: ev }),
                    instances_scanned: scanned,
                    complete,
                });
            }
        }
    }
    Ok(BoundCheck { passed: true, lambda, counterexample: None, instances_scanned: scanned, complete })
}

/// As [`verify_bound`], over an explicit list.
pub fn verify_bound_over(
    instances: &[Instance],
    algo: Algo,
    metric: Metric,
    lambda: Rational,
    opts: &SearchOptions,
) -> Result<BoundCheck> {
    let workers = pool(opts.jobs)?;
    let evals: Vec<Evaluation> =
        workers.install(|| instances.par_iter().map(|i| evaluate(i, algo, metric, opts.budget)).collect::<Result<_>>())?;
    let complete = evals.iter().all(|e| e.complete);
    let hit = evals.iter().position(|e| exceeds(e, lambda));
    Ok(BoundCheck {
        passed: hit.is_none(),
        lambda,
        counterexample: hit.map(|k| Witness {
            index: k as u64,
            instance: instances[k].clone(),
            evaluation: evals[k].clone(),
        }),
        instances_scanned: hit.map_or(instances.len(), |k| k + 1) as u64,
        complete,
    })
}

/// Writes `instance<TAB>ratio` for every instance of the space, in canonical
/// order. Instances are comma-separated strings; ratios are `P/Q`.
pub fn write_ratios_tsv<W: Write>(
    space: &SearchSpace,
    algo: Algo,
    metric: Metric,
    opts: &SearchOptions,
    out: &mut W,
) -> Result<u64> {
    space.validate()?;
    let workers = pool(opts.jobs)?;
    let mut iter = space.instances(0)?;
    let mut n = 0;
    writeln!(out, "instance\tratio")?;
    loop {
        let chunk: Vec<(u64, Instance)> = iter.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let evals = workers.install(|| evaluate_chunk(&chunk, algo, metric, opts.budget))?;
        for ((_, inst), ev) in chunk.iter().zip(evals) {
            let ratio = if ev.zero_optimum.is_some() { "inf".to_string() } else { format_ratio(&ev.ratio) };
            writeln!(out, "{}\t{}", inst.to_strings().join(","), ratio)?;
            n += 1;
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::superstring_of_permutation;

    fn sym(c: char) -> Sym {
        Sym::from_char(c).unwrap()
    }

    fn brute_force_count(k: usize, l: usize, s: usize) -> u64 {
        // all subsets of the canonical strings of size ≤ s, substring-free
        let strings = canonical_strings(k, l);
        let m = strings.len();
        assert!(m <= 20);
        (1u32..1 << m)
            .filter(|mask| mask.count_ones() as usize <= s)
            .filter(|mask| {
                let chosen: Vec<&Vec<u8>> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &strings[i]).collect();
                chosen.iter().enumerate().all(|(i, a)| {
                    chosen.iter().enumerate().all(|(j, b)| i == j || !is_substring(a, b))
                })
            })
            .count() as u64
    }

    #[test]
    fn canonical_order() {
        let s: Vec<String> = canonical_strings(2, 2).into_iter().map(|s| String::from_utf8(s).unwrap()).collect();
        assert_eq!(s, ["a", "b", "aa", "ab", "ba", "bb"]);
        let first: Vec<Vec<String>> = SearchSpace::exhaustive(2, 2, 2)
            .instances(0)
            .unwrap()
            .take(4)
            .map(|(_, i)| i.to_strings())
            .collect();
        assert_eq!(first, [vec!["a"], vec!["a", "b"], vec!["a", "bb"], vec!["b"]]);
    }

    #[test]
    fn exhaustive_space_visits_each_instance_once() {
        for (k, l, s) in [(2, 2, 3), (2, 3, 3), (2, 3, 4), (3, 2, 3), (1, 4, 2)] {
            let all: Vec<Instance> = SearchSpace::exhaustive(k, s, l).instances(0).unwrap().map(|(_, i)| i).collect();
            assert_eq!(all.len() as u64, brute_force_count(k, l, s), "{k} {l} {s}");
            let mut keys: Vec<Vec<String>> = all.iter().map(|i| {
                let mut v = i.to_strings();
                v.sort();
                v
            }).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), all.len());
        }
    }

    #[test]
    fn resume_skips_prefix() {
        let space = SearchSpace::exhaustive(2, 3, 3);
        let all: Vec<(u64, Instance)> = space.instances(0).unwrap().collect();
        let tail: Vec<(u64, Instance)> = space.instances(10).unwrap().collect();
        assert_eq!(&all[10..], &tail[..]);
    }

    #[test]
    fn binary_three_strings_length_three() {
        let report = worst_ratio(&SearchSpace::exhaustive(2, 3, 3), Algo::Greedy, Metric::Length, &SearchOptions::default())
            .unwrap();
        assert_eq!(report.best_ratio, Rational::new(7, 5));
        let mut w = report.witness_instance.to_strings();
        w.sort();
        // first in canonical order; {abb, bbb, bba} is the same up to swapping letters
        assert_eq!(w, ["aaa", "aab", "baa"]);
        let swapped = Instance::from_strs(&["abb", "bbb", "bba"]).unwrap();
        let ev = evaluate(&swapped, Algo::Greedy, Metric::Length, 1000).unwrap();
        assert_eq!(ev.ratio, Rational::new(7, 5));
        assert!(report.exhausted);
        // the witness re-verifies
        let ev = evaluate(&report.witness_instance, Algo::Greedy, Metric::Length, 1000).unwrap();
        assert_eq!(ev.ratio, report.best_ratio);
        assert_eq!(
            superstring_of_permutation(&report.witness_instance, &report.witness_solution.perm).unwrap().len() as u64,
            report.witness_solution.length
        );
    }

    #[test]
    fn explicit_witness_from_intro() {
        let inst = Instance::from_strs(&["abb", "bbb", "bbc"]).unwrap();
        let report = worst_ratio_over(std::slice::from_ref(&inst), Algo::Greedy, Metric::Length, &SearchOptions::default()).unwrap();
        assert_eq!(report.best_ratio, Rational::new(7, 5));
        let check =
            verify_bound_over(&[inst], Algo::Greedy, Metric::Length, Rational::from_integer(1), &SearchOptions::default())
                .unwrap();
        assert!(!check.passed);
        assert_eq!(check.counterexample.unwrap().evaluation.ratio, Rational::new(7, 5));
    }

    #[test]
    fn uniform_example_ratio() {
        let inst = Instance::from_strs(&["aaaab", "aaabaa", "aabaaba", "baabaa", "abaaaa"]).unwrap();
        let report = worst_ratio_over(&[inst], Algo::Greedy, Metric::Uniform, &SearchOptions::default()).unwrap();
        assert_eq!(report.best_ratio, Rational::new(5, 2));
        assert_eq!(report.metric, MetricTag::Uniform { symbol: sym('b') });
        assert_eq!(report.witness_solution.count(sym('b')), 5);
        assert!(report.zero_optimum.is_none());
    }

    #[test]
    fn single_strings_pass_any_bound() {
        let space = SearchSpace::exhaustive(3, 1, 3);
        for metric in [Metric::Length, Metric::Uniform] {
            let c = verify_bound(&space, Algo::LocallyGreedy, metric, Rational::from_integer(1), &SearchOptions::default())
                .unwrap();
            assert!(c.passed && c.complete);
            assert_eq!(c.instances_scanned, 39);
        }
    }

    #[test]
    fn monotone_in_caps() {
        let opts = SearchOptions::default();
        let mut last = Rational::from_integer(0);
        for (s, l) in [(1, 1), (2, 2), (2, 3), (3, 3), (3, 4)] {
            let r = worst_ratio(&SearchSpace::exhaustive(2, s, l), Algo::Greedy, Metric::Uniform, &opts).unwrap();
            assert!(r.best_ratio >= last);
            last = r.best_ratio;
        }
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let space = SearchSpace::exhaustive(2, 3, 3);
        let one = worst_ratio(&space, Algo::LocallyGreedy, Metric::Uniform, &SearchOptions::with_jobs(1)).unwrap();
        let four = worst_ratio(&space, Algo::LocallyGreedy, Metric::Uniform, &SearchOptions::with_jobs(4)).unwrap();
        assert_eq!(one, four);
        let sampled = SearchSpace::random(3, 4, 4, 9, 200);
        let a = worst_ratio(&sampled, Algo::Greedy, Metric::Length, &SearchOptions::with_jobs(1)).unwrap();
        let b = worst_ratio(&sampled, Algo::Greedy, Metric::Length, &SearchOptions::with_jobs(3)).unwrap();
        assert_eq!(a, b);
        assert!(!a.exhausted);
    }

    #[test]
    fn checkpoint_resume_matches_fresh_scan() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.json");
        let space = SearchSpace::exhaustive(2, 3, 3);
        let fresh = worst_ratio(&space, Algo::Greedy, Metric::Length, &SearchOptions::default()).unwrap();
        let opts = SearchOptions {
            checkpoint: Some(Checkpointing { path: path.clone(), every: 7 }),
            ..SearchOptions::default()
        };
        let first = worst_ratio(&space, Algo::Greedy, Metric::Length, &opts).unwrap();
        assert_eq!(first, fresh);
        // rewind the checkpoint to an early state and resume
        let mut cp: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(cp["format"], CHECKPOINT_FORMAT);
        cp["next_index"] = 0.into();
        cp["best"] = serde_json::Value::Null;
        fs::write(&path, cp.to_string()).unwrap();
        assert_eq!(worst_ratio(&space, Algo::Greedy, Metric::Length, &opts).unwrap(), fresh);
        // a checkpoint from another search is refused
        assert!(worst_ratio(&space, Algo::LocallyGreedy, Metric::Length, &opts).is_err());
    }

    #[test]
    fn tsv_stream() {
        let mut buf = Vec::new();
        let n = write_ratios_tsv(&SearchSpace::exhaustive(2, 2, 2), Algo::Greedy, Metric::Length, &SearchOptions::default(), &mut buf)
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len() as u64, n + 1);
        assert_eq!(lines[1], "a\t1/1");
        assert_eq!(lines[2], "a,b\t1/1");
    }

    #[test]
    fn ratio_parsing_and_capacity() {
        assert_eq!(parse_ratio("5/2").unwrap(), Rational::new(5, 2));
        assert_eq!(parse_ratio("4").unwrap(), Rational::from_integer(4));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
        let big = SearchSpace::exhaustive(2, 21, 3);
        assert!(matches!(worst_ratio(&big, Algo::Greedy, Metric::Length, &SearchOptions::default()), Err(ScsError::Capacity(_))));
    }
}
