//! String primitives: overlaps, merges, symbol counts and substring-free
//! normalization of input sets.
//!
//! Strings are plain byte slices over a printable ASCII alphabet. The overlap
//! of `s` and `t` is the longest `y` with `s = x·y` and `t = y·z` where both
//! `x` and `z` are non-empty, so `|ov(s, t)| < min(|s|, |t|)` always holds and
//! `ov(s, s)` is the longest proper border of `s`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, ScsError};

/// Symbol reserved for the sentinel transformation.
pub const SENTINEL: u8 = b'$';

/// Comment marker of the instance text format; never part of an alphabet.
pub const COMMENT: u8 = b'#';

/// A single alphabet symbol: a graphic ASCII byte other than `#`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(u8);

impl Sym {
    pub fn new(byte: u8) -> Result<Sym> {
        if is_symbol_byte(byte) {
            Ok(Sym(byte))
        } else {
            Err(ScsError::invalid(format!(
                "byte 0x{byte:02x} is not a valid symbol (graphic ASCII except '#')"
            )))
        }
    }

    pub fn from_char(c: char) -> Result<Sym> {
        if c.is_ascii() {
            Sym::new(c as u8)
        } else {
            Err(ScsError::invalid(format!("{c:?} is not ASCII")))
        }
    }

    pub fn byte(self) -> u8 {
        self.0
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl Serialize for Sym {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let buf = [self.0];
        // always ASCII
        serializer.serialize_str(std::str::from_utf8(&buf).unwrap())
    }
}

impl<'de> Deserialize<'de> for Sym {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Sym::from_char(c).map_err(de::Error::custom),
            _ => Err(de::Error::custom("symbol must be a single character")),
        }
    }
}

fn is_symbol_byte(b: u8) -> bool {
    b.is_ascii_graphic() && b != COMMENT
}

/// The decomposition `s = pref·ov`, `t = ov·suff` with maximal `ov`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapSplit {
    pub pref: Vec<u8>,
    pub ov: Vec<u8>,
    pub suff: Vec<u8>,
    pub distance: usize,
}

/// Classic failure function: `fail[i]` is the length of the longest proper
/// border of `t[..=i]`.
pub(crate) fn prefix_function(t: &[u8]) -> Vec<usize> {
    let mut fail = vec![0usize; t.len()];
    let mut k = 0;
    for i in 1..t.len() {
        while k > 0 && t[i] != t[k] {
            k = fail[k - 1];
        }
        if t[i] == t[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// Length of `ov(s, t)`. Both strings must be non-empty.
///
/// Runs the matcher of `t` over `s`; the final state is the longest suffix of
/// `s` that is a prefix of `t`, and the failure chain is then followed until
/// the overlap is proper on both sides.
pub fn overlap_len(s: &[u8], t: &[u8]) -> usize {
    debug_assert!(!s.is_empty() && !t.is_empty());
    let fail = prefix_function(t);
    let mut q = 0usize;
    for &c in s {
        while q > 0 && (q == t.len() || t[q] != c) {
            q = fail[q - 1];
        }
        if t[q] == c {
            q += 1;
        }
    }
    let cap = s.len().min(t.len()) - 1;
    while q > cap {
        q = fail[q - 1];
    }
    q
}

fn require_non_empty(s: &[u8], name: &str) -> Result<()> {
    if s.is_empty() {
        Err(ScsError::invalid(format!("{name} must be non-empty")))
    } else {
        Ok(())
    }
}

pub fn split(s: &[u8], t: &[u8]) -> Result<OverlapSplit> {
    require_non_empty(s, "s")?;
    require_non_empty(t, "t")?;
    let k = overlap_len(s, t);
    let cut = s.len() - k;
    Ok(OverlapSplit {
        pref: s[..cut].to_vec(),
        ov: s[cut..].to_vec(),
        suff: t[k..].to_vec(),
        distance: cut,
    })
}

/// The shortest string with prefix `s` and suffix `t` (proper overlap only).
pub fn merge(s: &[u8], t: &[u8]) -> Result<Vec<u8>> {
    require_non_empty(s, "s")?;
    require_non_empty(t, "t")?;
    let k = overlap_len(s, t);
    let mut out = Vec::with_capacity(s.len() + t.len() - k);
    out.extend_from_slice(s);
    out.extend_from_slice(&t[k..]);
    Ok(out)
}

/// `pref(s, t)` as a slice of `s`.
pub fn prefix_part<'a>(s: &'a [u8], t: &[u8]) -> &'a [u8] {
    &s[..s.len() - overlap_len(s, t)]
}

pub fn count_occurrences(s: &[u8], p: Sym) -> u64 {
    s.iter().filter(|&&c| c == p.0).count() as u64
}

pub(crate) fn is_substring(needle: &[u8], hay: &[u8]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// A substring-free set of non-empty strings, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    strings: Vec<Vec<u8>>,
    alphabet: Vec<Sym>,
}

/// Serialized as a list of strings; deserialization re-validates and accepts
/// the sentinel.
impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        Instance::with_sentinel(raw.into_iter().map(String::into_bytes).collect()).map_err(de::Error::custom)
    }
}

/// Options for [`normalize_with`] and [`Instance::parse`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Accept the reserved sentinel symbol `$`.
    pub allow_sentinel: bool,
}

fn check_symbols(s: &[u8], allow_sentinel: bool) -> Result<()> {
    require_non_empty(s, "instance string")?;
    for &b in s {
        Sym::new(b)?;
        if b == SENTINEL && !allow_sentinel {
            return Err(ScsError::invalid(
                "the sentinel '$' is reserved; enable sentinel support to use it",
            ));
        }
    }
    Ok(())
}

impl Instance {
    /// Builds an instance from strings that must already be substring-free.
    pub fn new(strings: Vec<Vec<u8>>) -> Result<Instance> {
        Self::build(strings, false)
    }

    /// As [`Instance::new`], but the sentinel symbol is permitted.
    pub fn with_sentinel(strings: Vec<Vec<u8>>) -> Result<Instance> {
        Self::build(strings, true)
    }

    fn build(strings: Vec<Vec<u8>>, allow_sentinel: bool) -> Result<Instance> {
        if strings.is_empty() {
            return Err(ScsError::EmptyInstance);
        }
        for s in &strings {
            check_symbols(s, allow_sentinel)?;
        }
        for (i, a) in strings.iter().enumerate() {
            for (j, b) in strings.iter().enumerate() {
                if i != j && is_substring(a, b) {
                    return Err(ScsError::invalid(format!(
                        "string {i} ({}) is a substring of string {j} ({})",
                        String::from_utf8_lossy(a),
                        String::from_utf8_lossy(b)
                    )));
                }
            }
        }
        let alphabet: BTreeSet<u8> = strings.iter().flatten().copied().collect();
        let alphabet = alphabet.into_iter().map(Sym).collect();
        Ok(Instance { strings, alphabet })
    }

    pub fn from_strs<S: AsRef<str>>(strings: &[S]) -> Result<Instance> {
        Instance::new(strings.iter().map(|s| s.as_ref().as_bytes().to_vec()).collect())
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn strings(&self) -> &[Vec<u8>] {
        &self.strings
    }

    pub fn get(&self, i: usize) -> &[u8] {
        &self.strings[i]
    }

    /// Sorted set of symbols used by the strings.
    pub fn alphabet(&self) -> &[Sym] {
        &self.alphabet
    }

    pub fn total_len(&self) -> u64 {
        self.strings.iter().map(|s| s.len() as u64).sum()
    }

    pub fn contains_symbol(&self, p: Sym) -> bool {
        self.alphabet.binary_search(&p).is_ok()
    }

    /// Strings as owned UTF-8 (they are ASCII by construction).
    pub fn to_strings(&self) -> Vec<String> {
        self.strings.iter().map(|s| ascii(s)).collect()
    }

    /// Instance text format: one string per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.strings {
            out.push_str(&ascii(s));
            out.push('\n');
        }
        out
    }

    /// Parses the instance text format and normalizes the result.
    ///
    /// One string per line; surrounding whitespace is trimmed, blank lines
    /// and lines starting with `#` are skipped.
    pub fn parse(text: &str, opts: NormalizeOptions) -> Result<Instance> {
        let mut raw = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for &b in line.as_bytes() {
                if !is_symbol_byte(b) || (b == SENTINEL && !opts.allow_sentinel) {
                    return Err(ScsError::Parse {
                        line: idx + 1,
                        msg: format!("invalid symbol {:?}", b as char),
                    });
                }
            }
            raw.push(line.as_bytes().to_vec());
        }
        normalize_with(raw, opts)
    }
}

pub(crate) fn ascii(s: &[u8]) -> String {
    String::from_utf8_lossy(s).into_owned()
}

pub fn normalize(raw: Vec<Vec<u8>>) -> Result<Instance> {
    normalize_with(raw, NormalizeOptions::default())
}

/// Removes duplicates and strings contained in other strings, keeping the
/// input order of the survivors.
pub fn normalize_with(raw: Vec<Vec<u8>>, opts: NormalizeOptions) -> Result<Instance> {
    for s in &raw {
        check_symbols(s, opts.allow_sentinel)?;
    }
    let mut survivors: Vec<Vec<u8>> = Vec::with_capacity(raw.len());
    for (i, s) in raw.iter().enumerate() {
        if survivors.contains(s) {
            continue;
        }
        let swallowed = raw
            .iter()
            .enumerate()
            .any(|(j, other)| j != i && other.len() > s.len() && is_substring(s, other));
        if !swallowed {
            survivors.push(s.clone());
        }
    }
    if survivors.is_empty() {
        return Err(ScsError::EmptyInstance);
    }
    Instance::build(survivors, opts.allow_sentinel)
}

/// Left-fold merge of the instance strings in `perm` order.
pub fn superstring_of_permutation(inst: &Instance, perm: &[usize]) -> Result<Vec<u8>> {
    check_permutation(perm, inst.len())?;
    let mut out = inst.get(perm[0]).to_vec();
    for w in perm.windows(2) {
        let (a, b) = (inst.get(w[0]), inst.get(w[1]));
        out.extend_from_slice(&b[overlap_len(a, b)..]);
    }
    Ok(out)
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(ScsError::invalid(format!(
            "permutation has {} entries, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in perm {
        if i >= n || seen[i] {
            return Err(ScsError::invalid(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        seen[i] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Quadratic oracle: try every proper overlap length, longest first.
    fn overlap_brute(s: &[u8], t: &[u8]) -> usize {
        (0..s.len().min(t.len()))
            .rev()
            .find(|&k| s[s.len() - k..] == t[..k])
            .unwrap()
    }

    fn sym(c: char) -> Sym {
        Sym::from_char(c).unwrap()
    }

    #[test]
    fn split_matches_pictured_example() {
        let sp = split(b"baacabbcaacb", b"bcaacbacaaabca").unwrap();
        assert_eq!(sp.pref, b"baacab");
        assert_eq!(sp.ov, b"bcaacb");
        assert_eq!(sp.suff, b"acaaabca");
        assert_eq!(sp.distance, 6);
    }

    #[test]
    fn split_without_proper_border() {
        let sp = split(b"abc", b"abc").unwrap();
        assert!(sp.ov.is_empty());
        assert_eq!(sp.pref, b"abc");
        assert_eq!(sp.suff, b"abc");
    }

    #[test]
    fn split_small() {
        assert_eq!(overlap_brute(b"aab", b"aba"), 2);
        let sp = split(b"aab", b"aba").unwrap();
        assert_eq!((sp.pref.as_slice(), sp.ov.as_slice(), sp.suff.as_slice()), (&b"a"[..], &b"ab"[..], &b"a"[..]));
    }

    #[test]
    fn split_rejects_empty() {
        assert!(matches!(split(b"", b"a"), Err(ScsError::InvalidArgument(_))));
        assert!(matches!(merge(b"a", b""), Err(ScsError::InvalidArgument(_))));
    }

    #[test]
    fn overlap_is_proper_even_for_contained_strings() {
        // t is a suffix of s and s a prefix of t: neither may be consumed whole
        assert_eq!(overlap_len(b"abab", b"ab"), 0);
        assert_eq!(overlap_len(b"aaa", b"aa"), 1);
        assert_eq!(overlap_len(b"aa", b"aaa"), 1);
        assert_eq!(overlap_len(b"a", b"a"), 0);
    }

    #[test]
    fn merges() {
        assert_eq!(merge(b"aab", b"aba").unwrap(), b"aaba");
        assert_eq!(merge(b"abc", b"xyz").unwrap(), b"abcxyz");
        assert_eq!(merge(b"baacabbcaacb", b"bcaacbacaaabca").unwrap().len(), 20);
    }

    #[test]
    fn counts() {
        assert_eq!(count_occurrences(b"baabaabaaabaaaab", sym('b')), 5);
        assert_eq!(count_occurrences(b"aaaa", sym('b')), 0);
        assert_eq!(count_occurrences(b"aaaabaabaaaa", sym('b')), 2);
    }

    #[test]
    fn symbols() {
        assert!(Sym::new(b'#').is_err());
        assert!(Sym::new(b' ').is_err());
        assert!(Sym::new(b'$').is_ok());
        assert_eq!(serde_json::to_string(&sym('b')).unwrap(), "\"b\"");
        let back: Sym = serde_json::from_str("\"q\"").unwrap();
        assert_eq!(back, sym('q'));
    }

    #[test]
    fn normalize_examples() {
        let inst = normalize(vec![b"ab".to_vec(), b"abc".to_vec(), b"b".to_vec()]).unwrap();
        assert_eq!(inst.to_strings(), vec!["abc"]);

        let inst = normalize(vec![b"abbb".to_vec(), b"bbbb".to_vec(), b"bbbc".to_vec()]).unwrap();
        assert_eq!(inst.to_strings(), vec!["abbb", "bbbb", "bbbc"]);

        let inst = normalize(vec![b"aa".to_vec(), b"aa".to_vec(), b"ab".to_vec()]).unwrap();
        assert_eq!(inst.to_strings(), vec!["aa", "ab"]);
        assert_eq!(inst.alphabet(), &[sym('a'), sym('b')]);
    }

    #[test]
    fn normalize_errors() {
        assert!(matches!(normalize(vec![b"a".to_vec(), vec![]]), Err(ScsError::InvalidArgument(_))));
        assert!(matches!(normalize(vec![]), Err(ScsError::EmptyInstance)));
        assert!(normalize(vec![b"a$".to_vec()]).is_err());
        let opts = NormalizeOptions { allow_sentinel: true };
        assert!(normalize_with(vec![b"a$".to_vec()], opts).is_ok());
    }

    #[test]
    fn instance_rejects_substrings() {
        assert!(Instance::from_strs(&["ab", "abc"]).is_err());
        assert!(Instance::from_strs(&["ab", "ab"]).is_err());
    }

    #[test]
    fn permutation_superstrings() {
        let fig2 = Instance::from_strs(&["ABE", "DAB", "DFA", "ACB", "ECA", "CBD"]).unwrap();
        // DAB, ABE, ECA, ACB, CBD, DFA
        let s = superstring_of_permutation(&fig2, &[1, 0, 4, 3, 5, 2]).unwrap();
        assert_eq!(s, b"DABECACBDFA");

        let single = Instance::from_strs(&["xyz"]).unwrap();
        assert_eq!(superstring_of_permutation(&single, &[0]).unwrap(), b"xyz");

        let intro = Instance::from_strs(&["abbb", "bbbb", "bbbc"]).unwrap();
        assert_eq!(superstring_of_permutation(&intro, &[0, 1, 2]).unwrap(), b"abbbbc");

        assert!(superstring_of_permutation(&intro, &[0, 0, 1]).is_err());
        assert!(superstring_of_permutation(&intro, &[0, 1]).is_err());
    }

    #[test]
    fn text_format() {
        let text = "# comment\n\nabbb\n  bbbb \nbbbc\nbb\n";
        let inst = Instance::parse(text, NormalizeOptions::default()).unwrap();
        assert_eq!(inst.to_text(), "abbb\nbbbb\nbbbc\n");
        assert!(matches!(
            Instance::parse("ab\na b\n", NormalizeOptions::default()),
            Err(ScsError::Parse { line: 2, .. })
        ));
    }

    fn small_string(max_len: usize, alpha: u8) -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec((0..alpha).prop_map(|c| b'a' + c), 1..=max_len)
    }

    fn d(s: &[u8], t: &[u8]) -> usize {
        s.len() - overlap_len(s, t)
    }

    proptest! {
        #[test]
        fn overlap_matches_brute_force(s in small_string(12, 3), t in small_string(12, 3)) {
            prop_assert_eq!(overlap_len(&s, &t), overlap_brute(&s, &t));
            let sp = split(&s, &t).unwrap();
            prop_assert!(!sp.pref.is_empty() && !sp.suff.is_empty());
            prop_assert_eq!([sp.pref.clone(), sp.ov.clone()].concat(), s.clone());
            prop_assert_eq!([sp.ov.clone(), sp.suff.clone()].concat(), t.clone());
            prop_assert_eq!(merge(&s, &t).unwrap().len(), s.len() + t.len() - sp.ov.len());
        }

        #[test]
        fn count_is_additive_over_split(s in small_string(10, 3), t in small_string(10, 3), c in 0u8..3) {
            let p = Sym::new(b'a' + c).unwrap();
            let sp = split(&s, &t).unwrap();
            prop_assert_eq!(count_occurrences(&s, p), count_occurrences(&sp.pref, p) + count_occurrences(&sp.ov, p));
        }

        #[test]
        fn triangle_inequality(u in small_string(8, 3), v in small_string(8, 3), w in small_string(8, 3)) {
            prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w));
        }

        #[test]
        fn monge_on_lengths_and_symbol_counts(
            s in small_string(8, 2), t in small_string(8, 2),
            s2 in small_string(8, 2), t2 in small_string(8, 2),
        ) {
            let st = overlap_len(&s, &t);
            let st2 = overlap_len(&s, &t2);
            let s2t = overlap_len(&s2, &t);
            if st >= st2.max(s2t) {
                let s2t2 = overlap_len(&s2, &t2);
                prop_assert!(st + s2t2 >= st2 + s2t);
                for p in *b"ab" {
                    let p = Sym::new(p).unwrap();
                    let c = |x: &[u8], y: &[u8]| count_occurrences(&split(x, y).unwrap().ov, p);
                    prop_assert!(c(&s, &t) + c(&s2, &t2) >= c(&s, &t2) + c(&s2, &t));
                }
            }
        }

        #[test]
        fn permutation_superstring_contains_inputs(raw in prop::collection::vec(small_string(5, 2), 1..6), seed in any::<u64>()) {
            let inst = normalize(raw).unwrap();
            let mut perm: Vec<usize> = (0..inst.len()).collect();
            // cheap deterministic shuffle
            let mut x = seed | 1;
            for i in (1..perm.len()).rev() {
                x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                perm.swap(i, (x % (i as u64 + 1)) as usize);
            }
            let sup = superstring_of_permutation(&inst, &perm).unwrap();
            for s in inst.strings() {
                prop_assert!(is_substring(s, &sup));
            }
            let compression: usize = perm.windows(2).map(|w| overlap_len(inst.get(w[0]), inst.get(w[1]))).sum();
            prop_assert_eq!(sup.len() as u64, inst.total_len() - compression as u64);
        }

        #[test]
        fn text_round_trip(raw in prop::collection::vec(small_string(6, 4), 1..6)) {
            let inst = normalize(raw).unwrap();
            let back = Instance::parse(&inst.to_text(), NormalizeOptions::default()).unwrap();
            prop_assert_eq!(back, inst);
        }
    }
}
