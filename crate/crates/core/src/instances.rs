//! Instance families, random instances and the sentinel transformation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScsError};
use crate::solvers::greedy::{forced_greedy_run, run, Algo, MergeStep, TieBreaker};
use crate::strings::{count_occurrences, normalize, split, Instance, Sym, SENTINEL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `{abⁿ, bⁿ⁺¹, bⁿc}`: GA may return `abⁿ⁺¹c` or `abⁿcbⁿ⁺¹`.
    Intro,
    /// `{abⁿ, bⁿa}`: LGA may return `bⁿabⁿ`.
    LgaPair,
    /// `{abⁿ, bⁿ⁺¹, bⁿc, bⁿ⁻¹c²}`: LGA reaches length `3n + 4`.
    Lga3,
    /// `Lga3` plus `bⁿ⁻²c³`.
    Lga3Ext,
    /// Five fixed strings on which GA may use 5 `b`s where 2 suffice.
    Uniform25,
    Fig1,
    Fig2,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Intro,
        Family::LgaPair,
        Family::Lga3,
        Family::Lga3Ext,
        Family::Uniform25,
        Family::Fig1,
        Family::Fig2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Intro => "intro",
            Family::LgaPair => "lga_pair",
            Family::Lga3 => "lga3",
            Family::Lga3Ext => "lga3_ext",
            Family::Uniform25 => "uniform25",
            Family::Fig1 => "fig1",
            Family::Fig2 => "fig2",
        }
    }

    pub fn is_parametric(self) -> bool {
        matches!(self, Family::Intro | Family::LgaPair | Family::Lga3 | Family::Lga3Ext)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ScsError;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ScsError::invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: Family,
    /// Ignored by the fixed families.
    pub n: usize,
}

impl FamilySpec {
    pub fn new(name: Family, n: usize) -> FamilySpec {
        FamilySpec { name, n }
    }
}

fn rep(c: char, k: usize) -> String {
    std::iter::repeat_n(c, k).collect()
}

pub fn gen_family(spec: FamilySpec) -> Result<Instance> {
    let n = spec.n;
    if spec.name.is_parametric() && n == 0 {
        return Err(ScsError::invalid(format!("family {} needs n ≥ 1", spec.name)));
    }
    let strings: Vec<String> = match spec.name {
        Family::Intro => vec![format!("a{}", rep('b', n)), rep('b', n + 1), format!("{}c", rep('b', n))],
        Family::LgaPair => vec![format!("a{}", rep('b', n)), format!("{}a", rep('b', n))],
        Family::Lga3 => vec![
            format!("a{}", rep('b', n)),
            rep('b', n + 1),
            format!("{}c", rep('b', n)),
            format!("{}cc", rep('b', n - 1)),
        ],
        Family::Lga3Ext => {
            if n < 2 {
                return Err(ScsError::invalid("family lga3_ext needs n ≥ 2"));
            }
            vec![
                format!("a{}", rep('b', n)),
                rep('b', n + 1),
                format!("{}c", rep('b', n)),
                format!("{}cc", rep('b', n - 1)),
                format!("{}ccc", rep('b', n - 2)),
            ]
        }
        Family::Uniform25 => ["aaaab", "aaabaa", "aabaaba", "baabaa", "abaaaa"].map(String::from).to_vec(),
        Family::Fig1 => ["baacabbcaacb", "bcaacbacaaabca"].map(String::from).to_vec(),
        Family::Fig2 => ["ABE", "DAB", "DFA", "ACB", "ECA", "CBD"].map(String::from).to_vec(),
    };
    Instance::from_strs(&strings)
}

/// Parameters of the sentinel transformation
/// `s'_i = $^(m−α_i) c_1 $^m c_2 … $^m c_|s_i| $^(β_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentinelParams {
    pub m: usize,
    pub alphas: Vec<usize>,
    pub betas: Vec<usize>,
    pub sentinel: Sym,
}

impl SentinelParams {
    pub fn new(m: usize, alphas: Vec<usize>, betas: Vec<usize>) -> SentinelParams {
        SentinelParams { m, alphas, betas, sentinel: Sym::new(SENTINEL).expect("'$' is a symbol") }
    }
}

/// Pads every string with sentinel blocks. Counts of base symbols in the
/// strings and in all pairwise overlaps are unchanged.
pub fn sentinelize(inst: &Instance, params: &SentinelParams) -> Result<Instance> {
    let n = inst.len();
    let SentinelParams { m, alphas, betas, sentinel } = params;
    if inst.contains_symbol(*sentinel) {
        return Err(ScsError::invalid(format!("sentinel {sentinel} occurs in the instance")));
    }
    if alphas.len() != n || betas.len() != n {
        return Err(ScsError::invalid(format!("need {n} alphas and {n} betas")));
    }
    if *m == 0 || alphas.iter().chain(betas).any(|x| x >= m) {
        return Err(ScsError::invalid("require m ≥ 1 and every α, β < m"));
    }
    let pad = sentinel.byte();
    let strings: Vec<Vec<u8>> = inst
        .strings()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut out = vec![pad; m - alphas[i]];
            for (k, &c) in s.iter().enumerate() {
                if k > 0 {
                    out.extend(std::iter::repeat_n(pad, *m));
                }
                out.push(c);
            }
            out.extend(std::iter::repeat_n(pad, betas[i]));
            out
        })
        .collect();
    let out = Instance::with_sentinel(strings)?;
    debug_assert!(preserves_base_counts(inst, &out));
    Ok(out)
}

/// Node and overlap counts of every base symbol agree between the two
/// instances, index by index.
pub fn preserves_base_counts(base: &Instance, padded: &Instance) -> bool {
    let n = base.len();
    padded.len() == n
        && base.alphabet().iter().all(|&p| {
            (0..n).all(|i| {
                count_occurrences(base.get(i), p) == count_occurrences(padded.get(i), p)
                    && (0..n).all(|j| {
                        let a = split(base.get(i), base.get(j)).expect("non-empty");
                        let b = split(padded.get(i), padded.get(j)).expect("non-empty");
                        count_occurrences(&a.ov, p) == count_occurrences(&b.ov, p)
                    })
            })
        })
}

/// True when every GA step with a positive longest overlap has exactly one
/// longest ordered pair.
pub fn is_greedy_forced(inst: &Instance) -> bool {
    forced_greedy_run(inst).forced
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SentinelBudget {
    pub max_m: usize,
    /// Per `m`, assignments are enumerated exhaustively only when there are
    /// at most this many; otherwise only rank-derived candidates are tried.
    pub exhaustive_cap: usize,
}

impl SentinelBudget {
    pub fn for_size(n: usize) -> SentinelBudget {
        SentinelBudget { max_m: (4 * n * n).max(1), exhaustive_cap: 4096 }
    }
}

fn falling(m: usize, n: usize) -> usize {
    (0..n).try_fold(1usize, |acc, k| if k >= m { Some(0) } else { acc.checked_mul(m - k) }).unwrap_or(usize::MAX)
}

/// All injective maps `0..n → 0..m` in lexicographic order.
fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(m, n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Position of every input as a tail (resp. head) in the merge sequence;
/// the input that is never a tail (head) gets rank `n − 1`.
fn merge_ranks(n: usize, target: &[MergeStep]) -> (Vec<usize>, Vec<usize>) {
    let mut tail = vec![n - 1; n];
    let mut head = vec![n - 1; n];
    for (t, step) in target.iter().enumerate() {
        tail[*step.left.last().expect("non-empty")] = t;
        head[step.right[0]] = t;
    }
    (tail, head)
}

fn matches_target(inst: &Instance, params: &SentinelParams, target: &[MergeStep]) -> bool {
    sentinelize(inst, params).is_ok_and(|padded| forced_steps_match(&padded, target))
}

/// GA on `padded` is forced, and its forced steps repeat `target` (by input
/// indices) through at least every step of `target` with a positive overlap.
pub fn forced_steps_match(padded: &Instance, target: &[MergeStep]) -> bool {
    let forced = forced_greedy_run(padded);
    let nontrivial = target.iter().filter(|s| s.overlap > 0).count();
    forced.forced
        && forced.steps.len() >= nontrivial
        && forced.steps.len() <= target.len()
        && forced
            .steps
            .iter()
            .zip(target)
            .all(|(a, b)| a.left == b.left && a.right == b.right)
}

/// Searches sentinel parameters under which GA has a single behaviour that
/// follows `target` (a GA merge log of `inst`), at least up to its last
/// merge with a non-empty overlap.
///
/// `m` grows from 1. For each `m`, all pairs of injective `α`, `β`
/// assignments are tried in lexicographic order when there are few enough,
/// then the rank-derived assignments `α_v = head_rank(v) + c`,
/// `β_v = m − c − tail_rank(v)`. Failure within the budget is not a proof
/// that no parameters exist.
pub fn find_sentinel_params(inst: &Instance, target: &[MergeStep], budget: SentinelBudget) -> Result<SentinelParams> {
    let n = inst.len();
    let script: Vec<(usize, usize)> = target.iter().map(|s| (s.left[0], s.right[0])).collect();
    let replayed = run(inst, Algo::Greedy, &TieBreaker::Script(script))
        .map_err(|_| ScsError::invalid("target is not a GA merge log of this instance"))?;
    if replayed.merge_log != target {
        return Err(ScsError::invalid("target is not a GA merge log of this instance"));
    }
    if n == 1 {
        return Ok(SentinelParams::new(1, vec![0], vec![0]));
    }
    let (tail_rank, head_rank) = merge_ranks(n, target);
    for m in 1..=budget.max_m {
        let count = falling(m, n);
        if count > 0 && count.saturating_mul(count) <= budget.exhaustive_cap {
            let maps = injections(m, n);
            for alphas in &maps {
                for betas in &maps {
                    let params = SentinelParams::new(m, alphas.clone(), betas.clone());
                    if matches_target(inst, &params, target) {
                        return Ok(params);
                    }
                }
            }
        }
        for c in 0..m {
            let alphas: Vec<usize> = head_rank.iter().map(|r| r + c).collect();
            let betas: Option<Vec<usize>> = tail_rank.iter().map(|r| m.checked_sub(c + r)).collect();
            let Some(betas) = betas else { continue };
            let params = SentinelParams::new(m, alphas, betas);
            if matches_target(inst, &params, target) {
                return Ok(params);
            }
        }
    }
    Err(ScsError::NotFound(format!(
        "no sentinel parameters with m ≤ {} (not a proof of non-existence)",
        budget.max_m
    )))
}

/// Deterministic random instance over the first `alphabet_size` lowercase
/// letters; normalization may drop strings.
pub fn random_instance(seed: u64, count: usize, max_len: usize, alphabet_size: usize) -> Result<Instance> {
    if count == 0 || max_len == 0 || alphabet_size == 0 || alphabet_size > 26 {
        return Err(ScsError::invalid("need count ≥ 1, max_len ≥ 1 and 1 ≤ alphabet_size ≤ 26"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = (0..count)
        .map(|_| {
            let len = rng.random_range(1..=max_len);
            (0..len).map(|_| b'a' + rng.random_range(0..alphabet_size) as u8).collect()
        })
        .collect();
    normalize(raw)
}

/// Total overlap of the adjacent pairs in a merge log (for quick sanity checks).
pub fn log_compression(log: &[MergeStep]) -> u64 {
    log.iter().map(|s| s.overlap).sum()
}
