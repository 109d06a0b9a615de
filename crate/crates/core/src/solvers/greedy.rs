//! The Greedy Algorithm (GA), the Locally Greedy Algorithm (LGA) and the
//! enumeration of all their instantiations.
//!
//! Both algorithms work on the multiset of current strings: each step picks
//! an ordered pair `(s, t)` of distinct current strings and replaces them by
//! their merge. GA requires `|ov(s, t)|` to be globally maximal; LGA only
//! requires it to be maximal among pairs sharing the left string `s` or the
//! right string `t`. Every GA step is therefore a valid LGA step.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScsError};
use crate::strings::{ascii, count_occurrences, overlap_len, Instance, Sym};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Greedy,
    LocallyGreedy,
}

/// How an instantiation chooses among admissible pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreaker {
    /// Smallest `(first index of left, first index of right)`.
    Lexicographic,
    /// Uniform choice from a seeded generator.
    Seeded(u64),
    /// Step `k` merges the current string containing input `script[k].0`
    /// (on the left) with the one containing `script[k].1`. Once the script
    /// runs out the choice falls back to lexicographic.
    Script(Vec<(usize, usize)>),
}

/// One merge: the input indices of the left and right strings, in order,
/// and the overlap length used.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MergeStep {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub overlap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub perm: Vec<usize>,
    pub superstring: String,
    pub length: u64,
    pub compression: u64,
    pub per_symbol: BTreeMap<Sym, u64>,
    pub merge_log: Vec<MergeStep>,
}

impl Solution {
    pub(crate) fn assemble(inst: &Instance, perm: Vec<usize>, text: &[u8], merge_log: Vec<MergeStep>) -> Solution {
        let per_symbol = inst
            .alphabet()
            .iter()
            .map(|&p| (p, count_occurrences(text, p)))
            .collect();
        Solution {
            perm,
            superstring: ascii(text),
            length: text.len() as u64,
            compression: inst.total_len() - text.len() as u64,
            per_symbol,
            merge_log,
        }
    }

    /// The superstring obtained by merging in `perm` order, left to right.
    pub fn from_permutation(inst: &Instance, perm: &[usize]) -> Result<Solution> {
        crate::strings::check_permutation(perm, inst.len())?;
        let mut text = inst.get(perm[0]).to_vec();
        let mut log = Vec::with_capacity(perm.len().saturating_sub(1));
        for k in 1..perm.len() {
            let next = inst.get(perm[k]);
            let ov = overlap_len(&text, next);
            log.push(MergeStep { left: perm[..k].to_vec(), right: vec![perm[k]], overlap: ov as u64 });
            text.extend_from_slice(&next[ov..]);
        }
        Ok(Solution::assemble(inst, perm.to_vec(), &text, log))
    }

    /// Re-executes a merge log on `inst`, checking every recorded overlap.
    pub fn replay(inst: &Instance, merge_log: &[MergeStep]) -> Result<Solution> {
        let mut pool = Pool::new(inst);
        for (k, step) in merge_log.iter().enumerate() {
            let find = |members: &[usize]| pool.clusters.iter().position(|c| c.members == members);
            let (a, b) = match (find(&step.left), find(&step.right)) {
                (Some(a), Some(b)) if a != b => (a, b),
                _ => return Err(ScsError::invalid(format!("merge {k} does not match the current strings"))),
            };
            let done = pool.merge(a, b);
            if done.overlap != step.overlap {
                return Err(ScsError::invalid(format!(
                    "merge {k} has overlap {} but the log records {}",
                    done.overlap, step.overlap
                )));
            }
        }
        if pool.clusters.len() != 1 {
            return Err(ScsError::invalid("merge log leaves more than one string"));
        }
        Ok(pool.finish(inst, merge_log.to_vec()))
    }

    /// Ordered pairs of input indices `(last of left, first of right)` for
    /// each merge: the overlap-graph edges this run chose.
    pub fn chosen_edges(&self) -> Vec<(usize, usize)> {
        self.merge_log
            .iter()
            .map(|m| (*m.left.last().unwrap(), m.right[0]))
            .collect()
    }

    pub fn count(&self, p: Sym) -> u64 {
        self.per_symbol.get(&p).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
struct Cluster {
    members: Vec<usize>,
    text: Vec<u8>,
}

/// Current strings together with their pairwise overlap matrix.
#[derive(Clone, Debug)]
struct Pool {
    clusters: Vec<Cluster>,
    ov: Vec<Vec<usize>>,
}

impl Pool {
    fn new(inst: &Instance) -> Pool {
        let clusters: Vec<Cluster> = inst
            .strings()
            .iter()
            .enumerate()
            .map(|(i, s)| Cluster { members: vec![i], text: s.clone() })
            .collect();
        let ov = clusters
            .iter()
            .map(|a| clusters.iter().map(|b| overlap_len(&a.text, &b.text)).collect())
            .collect();
        Pool { clusters, ov }
    }

    fn len(&self) -> usize {
        self.clusters.len()
    }

    /// Admissible ordered pairs, sorted by the first input index of each side.
    fn candidates(&self, algo: Algo) -> Vec<(usize, usize)> {
        let k = self.len();
        let mut out = Vec::new();
        match algo {
            Algo::Greedy => {
                let best = (0..k)
                    .flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| (a, b)))
                    .map(|(a, b)| self.ov[a][b])
                    .max();
                if let Some(best) = best {
                    for a in 0..k {
                        for b in 0..k {
                            if a != b && self.ov[a][b] == best {
                                out.push((a, b));
                            }
                        }
                    }
                }
            }
            Algo::LocallyGreedy => {
                let row_max: Vec<usize> = (0..k)
                    .map(|a| (0..k).filter(|&b| b != a).map(|b| self.ov[a][b]).max().unwrap_or(0))
                    .collect();
                let col_max: Vec<usize> = (0..k)
                    .map(|b| (0..k).filter(|&a| a != b).map(|a| self.ov[a][b]).max().unwrap_or(0))
                    .collect();
                for (a, &rm) in row_max.iter().enumerate() {
                    for (b, &cm) in col_max.iter().enumerate() {
                        if a != b && self.ov[a][b] >= rm && self.ov[a][b] >= cm {
                            out.push((a, b));
                        }
                    }
                }
            }
        }
        out.sort_by_key(|&(a, b)| (self.clusters[a].members[0], self.clusters[b].members[0]));
        out
    }

    fn merge(&mut self, a: usize, b: usize) -> MergeStep {
        let k = self.ov[a][b];
        let right = self.clusters[b].clone();
        let step = MergeStep {
            left: self.clusters[a].members.clone(),
            right: right.members.clone(),
            overlap: k as u64,
        };
        {
            let left = &mut self.clusters[a];
            left.text.extend_from_slice(&right.text[k..]);
            left.members.extend_from_slice(&right.members);
        }
        self.clusters.remove(b);
        self.ov.remove(b);
        for row in &mut self.ov {
            row.remove(b);
        }
        let a = if b < a { a - 1 } else { a };
        for x in 0..self.len() {
            self.ov[a][x] = overlap_len(&self.clusters[a].text, &self.clusters[x].text);
            self.ov[x][a] = overlap_len(&self.clusters[x].text, &self.clusters[a].text);
        }
        step
    }

    fn key(&self) -> Vec<Vec<u8>> {
        let mut texts: Vec<Vec<u8>> = self.clusters.iter().map(|c| c.text.clone()).collect();
        texts.sort();
        texts
    }

    fn finish(self, inst: &Instance, log: Vec<MergeStep>) -> Solution {
        let last = self.clusters.into_iter().next().expect("one string left");
        Solution::assemble(inst, last.members, &last.text, log)
    }
}

fn pick(
    pool: &Pool,
    cands: &[(usize, usize)],
    step: usize,
    tie: &TieBreaker,
    rng: &mut Option<ChaCha8Rng>,
) -> Result<(usize, usize)> {
    match tie {
        TieBreaker::Script(script) if step < script.len() => {
            let (x, y) = script[step];
            cands
                .iter()
                .copied()
                .find(|&(a, b)| pool.clusters[a].members.contains(&x) && pool.clusters[b].members.contains(&y))
                .ok_or_else(|| ScsError::invalid(format!("scripted merge {step} ({x}, {y}) is not admissible")))
        }
        TieBreaker::Seeded(_) => {
            let rng = rng.as_mut().expect("seeded generator");
            Ok(cands[rng.random_range(0..cands.len())])
        }
        _ => Ok(cands[0]),
    }
}

/// Runs one instantiation of `algo` to completion.
pub fn run(inst: &Instance, algo: Algo, tie: &TieBreaker) -> Result<Solution> {
    let mut pool = Pool::new(inst);
    let mut rng = match tie {
        TieBreaker::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut log = Vec::with_capacity(inst.len().saturating_sub(1));
    while pool.len() > 1 {
        let cands = pool.candidates(algo);
        let (a, b) = pick(&pool, &cands, log.len(), tie, &mut rng)?;
        log.push(pool.merge(a, b));
    }
    Ok(pool.finish(inst, log))
}

/// The GA run as long as the longest overlap is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedRun {
    /// Every positive-overlap step had a unique longest pair.
    pub forced: bool,
    /// Steps taken before the first tie or the first empty overlap.
    pub steps: Vec<MergeStep>,
}

pub fn forced_greedy_run(inst: &Instance) -> ForcedRun {
    let mut pool = Pool::new(inst);
    let mut steps = Vec::new();
    while pool.len() > 1 {
        let cands = pool.candidates(Algo::Greedy);
        let (a, b) = cands[0];
        if pool.ov[a][b] == 0 {
            break;
        }
        if cands.len() > 1 {
            return ForcedRun { forced: false, steps };
        }
        steps.push(pool.merge(a, b));
    }
    ForcedRun { forced: true, steps }
}

/// GA: repeatedly merge a pair with the globally longest overlap.
pub fn greedy_scs(inst: &Instance, tie: &TieBreaker) -> Result<Solution> {
    run(inst, Algo::Greedy, tie)
}

/// LGA: repeatedly merge a pair whose overlap is the longest among all pairs
/// sharing its left or its right string.
pub fn locally_greedy_scs(inst: &Instance, selector: &TieBreaker) -> Result<Solution> {
    run(inst, Algo::LocallyGreedy, selector)
}

/// Every distinct final superstring reachable by some instantiation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub solutions: Vec<Solution>,
    /// False when the state budget ran out before the search finished.
    pub complete: bool,
    pub states_visited: usize,
}

impl Enumeration {
    pub fn max_length(&self) -> Option<&Solution> {
        self.solutions.iter().max_by(|a, b| a.length.cmp(&b.length).then(b.perm.cmp(&a.perm)))
    }

    pub fn min_length(&self) -> Option<&Solution> {
        self.solutions.iter().min_by_key(|s| s.length)
    }

    pub fn max_count(&self, p: Sym) -> Option<&Solution> {
        self.solutions.iter().max_by(|a, b| a.count(p).cmp(&b.count(p)).then(b.perm.cmp(&a.perm)))
    }
}

pub const DEFAULT_ENUMERATION_BUDGET: usize = 1_000_000;

/// Depth-first search over all admissible choices at every step, memoized on
/// the multiset of current strings. Each final superstring is reported once,
/// with the first merge sequence that reached it.
pub fn enumerate_instantiations(inst: &Instance, algo: Algo, budget: usize) -> Enumeration {
    struct Search<'a> {
        inst: &'a Instance,
        algo: Algo,
        budget: usize,
        seen: HashSet<Vec<Vec<u8>>>,
        log: Vec<MergeStep>,
        out: Vec<Solution>,
        complete: bool,
    }

    impl Search<'_> {
        fn visit(&mut self, pool: Pool) {
            if !self.complete {
                return;
            }
            if !self.seen.insert(pool.key()) {
                return;
            }
            if self.seen.len() > self.budget {
                self.complete = false;
                return;
            }
            if pool.len() == 1 {
                self.out.push(pool.finish(self.inst, self.log.clone()));
                return;
            }
            for (a, b) in pool.candidates(self.algo) {
                let mut next = pool.clone();
                let step = next.merge(a, b);
                self.log.push(step);
                self.visit(next);
                self.log.pop();
            }
        }
    }

    let mut search = Search {
        inst,
        algo,
        budget,
        seen: HashSet::new(),
        log: Vec::new(),
        out: Vec::new(),
        complete: true,
    };
    search.visit(Pool::new(inst));
    Enumeration { states_visited: search.seen.len(), solutions: search.out, complete: search.complete }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intro(n: usize) -> Instance {
        let b = "b".repeat(n);
        Instance::from_strs(&[format!("a{b}"), format!("{b}b"), format!("{b}c")]).unwrap()
    }

    fn sym(c: char) -> Sym {
        Sym::from_char(c).unwrap()
    }

    #[test]
    fn ga_tie_breaking_decides_quality() {
        let inst = intro(3);
        let good = greedy_scs(&inst, &TieBreaker::Script(vec![(0, 1), (1, 2)])).unwrap();
        assert_eq!(good.superstring, "abbbbc");
        assert_eq!(good.length, 6);
        let bad = greedy_scs(&inst, &TieBreaker::Script(vec![(0, 2)])).unwrap();
        assert_eq!(bad.superstring, "abbbcbbbb");
        assert_eq!(bad.length, 9);
        assert_eq!(bad.merge_log[0], MergeStep { left: vec![0], right: vec![2], overlap: 3 });
    }

    #[test]
    fn ga_uniform_example_merge_chain() {
        let inst = Instance::from_strs(&["aaaab", "aaabaa", "aabaaba", "baabaa", "abaaaa"]).unwrap();
        let sol = greedy_scs(&inst, &TieBreaker::Script(vec![(3, 2), (1, 4), (4, 0), (2, 1)])).unwrap();
        assert_eq!(sol.superstring, "baabaabaaabaaaab");
        assert_eq!(sol.count(sym('b')), 5);
        let overlaps: Vec<u64> = sol.merge_log.iter().map(|m| m.overlap).collect();
        assert_eq!(overlaps, vec![5, 4, 4, 1]);
    }

    #[test]
    fn lga_examples() {
        let inst = Instance::from_strs(&["abbb", "bbbb", "bbbc", "bbcc"]).unwrap();
        let sol = locally_greedy_scs(&inst, &TieBreaker::Script(vec![(0, 2), (3, 0), (3, 1)])).unwrap();
        assert_eq!(sol.superstring, "bbccabbbcbbbb");
        assert_eq!(sol.length, 13);

        let pair = Instance::from_strs(&["abbb", "bbba"]).unwrap();
        let sol = locally_greedy_scs(&pair, &TieBreaker::Script(vec![(1, 0)])).unwrap();
        assert_eq!(sol.superstring, "bbbabbb");
        // GA never takes that pair
        assert!(greedy_scs(&pair, &TieBreaker::Script(vec![(1, 0)])).is_err());

        let disjoint = Instance::from_strs(&["ab", "cd"]).unwrap();
        for script in [vec![(0, 1)], vec![(1, 0)]] {
            let sol = locally_greedy_scs(&disjoint, &TieBreaker::Script(script)).unwrap();
            assert_eq!(sol.length, 4);
        }
    }

    #[test]
    fn enumeration_finds_both_intro_outcomes() {
        let e = enumerate_instantiations(&intro(3), Algo::Greedy, 1000);
        assert!(e.complete);
        let lengths: Vec<u64> = e.solutions.iter().map(|s| s.length).collect();
        assert!(lengths.contains(&6) && lengths.contains(&9));
    }

    #[test]
    fn enumeration_respects_budget() {
        let e = enumerate_instantiations(&intro(3), Algo::Greedy, 2);
        assert!(!e.complete);
    }

    #[test]
    fn replay_reproduces_solution() {
        let inst = intro(4);
        let sol = greedy_scs(&inst, &TieBreaker::Seeded(9)).unwrap();
        assert_eq!(Solution::replay(&inst, &sol.merge_log).unwrap(), sol);
        let mut broken = sol.merge_log.clone();
        broken[0].overlap += 1;
        assert!(Solution::replay(&inst, &broken).is_err());
    }

    #[test]
    fn seeded_runs_are_deterministic() {
        let inst = Instance::from_strs(&["aaaab", "aaabaa", "aabaaba", "baabaa", "abaaaa"]).unwrap();
        for seed in 0..10 {
            let a = locally_greedy_scs(&inst, &TieBreaker::Seeded(seed)).unwrap();
            let b = locally_greedy_scs(&inst, &TieBreaker::Seeded(seed)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn solution_json_shape() {
        let sol = Solution::from_permutation(&intro(1), &[0, 1, 2]).unwrap();
        let v = serde_json::to_value(&sol).unwrap();
        assert_eq!(v["per_symbol"]["b"], 2);
        assert_eq!(v["length"], 4);
        assert!(v["merge_log"][0]["left"].is_array());
    }
}
