//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's solvers.

#![allow(dead_code)]

use scs_core::graph::WeightedDigraph;

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Longest proper suffix of `s` that is a prefix of `t`, by direct comparison.
pub fn naive_overlap(s: &[u8], t: &[u8]) -> usize {
    (1..s.len().min(t.len())).rev().find(|&k| s[s.len() - k..] == t[..k]).unwrap_or(0)
}

pub fn naive_superstring(strings: &[Vec<u8>], perm: &[usize]) -> Vec<u8> {
    let mut out = strings[perm[0]].clone();
    for w in perm.windows(2) {
        let k = naive_overlap(&strings[w[0]], &strings[w[1]]);
        out.extend_from_slice(&strings[w[1]][k..]);
    }
    out
}

pub fn count(s: &[u8], c: u8) -> u64 {
    s.iter().filter(|&&b| b == c).count() as u64
}

/// Shortest superstring length over all permutations.
pub fn brute_scs_len(strings: &[Vec<u8>]) -> u64 {
    permutations(strings.len()).iter().map(|p| naive_superstring(strings, p).len() as u64).min().unwrap()
}

/// Fewest occurrences of `c` over all permutation superstrings.
pub fn brute_sigma_min(strings: &[Vec<u8>], c: u8) -> u64 {
    permutations(strings.len()).iter().map(|p| count(&naive_superstring(strings, p), c)).min().unwrap()
}

/// `‖SHP‖` by trying every node order.
pub fn brute_shp(g: &WeightedDigraph) -> i64 {
    let total: i64 = (0..g.n()).map(|v| g.node_weight(v) as i64).sum();
    permutations(g.n())
        .iter()
        .map(|p| total - p.windows(2).map(|w| g.weight(w[0], w[1]) as i64).sum::<i64>())
        .min()
        .unwrap()
}

/// Maximum weight of a cycle cover (an assignment), by trying every successor
/// permutation.
pub fn brute_max_cover(g: &WeightedDigraph) -> u64 {
    permutations(g.n()).iter().map(|p| (0..g.n()).map(|v| g.weight(v, p[v])).sum::<u64>()).max().unwrap()
}

/// Small deterministic generator (xorshift) for test inputs.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}
