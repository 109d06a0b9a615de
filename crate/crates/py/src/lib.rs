//! Python bindings for `scs_core`.
//!
//! Report-like results (certificates, search reports) are returned as plain
//! dicts with the same layout as the CLI's JSON output.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use scs_core::graph::max_cover_brute_force;
use scs_core::instances::{find_sentinel_params, gen_family as core_gen, is_greedy_forced, Family, FamilySpec, SentinelBudget};
use scs_core::search::{self, Metric, SearchOptions, SearchSpace};
use scs_core::solvers::{self, DEFAULT_ENUMERATION_BUDGET};
use scs_core::{check_properties, overlap_graph, sigma_graph, Algo, NormalizeOptions, OrderPolicy, ScsError, Sym, TieBreaker};

create_exception!(scs_greedy, ScsException, PyException, "Raised for invalid input or exceeded limits.");

fn err(e: ScsError) -> PyErr {
    ScsException::new_err(format!("{}: {e}", e.kind()))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| ScsException::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn algo(name: &str) -> PyResult<Algo> {
    match name {
        "greedy" | "ga" => Ok(Algo::Greedy),
        "locally-greedy" | "lga" => Ok(Algo::LocallyGreedy),
        _ => Err(PyValueError::new_err(format!("unknown algorithm {name:?}"))),
    }
}

fn symbol(c: Option<char>) -> PyResult<Option<Sym>> {
    c.map(Sym::from_char).transpose().map_err(err)
}

/// A substring-free set of strings. Duplicates and strings contained in
/// others are dropped on construction.
#[pyclass(frozen, module = "scs_greedy")]
struct Instance {
    inner: scs_core::Instance,
}

#[pymethods]
impl Instance {
    #[new]
    #[pyo3(signature = (strings, allow_sentinel = false))]
    fn new(strings: Vec<String>, allow_sentinel: bool) -> PyResult<Self> {
        let raw = strings.into_iter().map(String::into_bytes).collect();
        let inner = scs_core::normalize_with(raw, NormalizeOptions { allow_sentinel }).map_err(err)?;
        Ok(Instance { inner })
    }

    #[getter]
    fn strings(&self) -> Vec<String> {
        self.inner.to_strings()
    }

    #[getter]
    fn alphabet(&self) -> String {
        self.inner.alphabet().iter().map(|s| s.as_char()).collect()
    }

    #[getter]
    fn total_len(&self) -> u64 {
        self.inner.total_len()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Instance({:?})", self.inner.to_strings())
    }

    fn __eq__(&self, other: &Instance) -> bool {
        self.inner == other.inner
    }
}

/// One superstring together with the merges that produced it.
#[pyclass(frozen, module = "scs_greedy")]
struct Solution {
    inner: scs_core::Solution,
}

#[pymethods]
impl Solution {
    #[getter]
    fn superstring(&self) -> &str {
        &self.inner.superstring
    }

    #[getter]
    fn perm(&self) -> Vec<usize> {
        self.inner.perm.clone()
    }

    #[getter]
    fn length(&self) -> u64 {
        self.inner.length
    }

    #[getter]
    fn compression(&self) -> u64 {
        self.inner.compression
    }

    #[getter]
    fn per_symbol<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (p, c) in &self.inner.per_symbol {
            d.set_item(p.as_char(), c)?;
        }
        Ok(d)
    }

    /// `(left, right, overlap)` for every merge, in order.
    #[getter]
    fn merge_log(&self) -> Vec<(Vec<usize>, Vec<usize>, u64)> {
        self.inner.merge_log.iter().map(|m| (m.left.clone(), m.right.clone(), m.overlap)).collect()
    }

    fn count(&self, symbol: char) -> PyResult<u64> {
        Sym::from_char(symbol).map(|p| self.inner.count(p)).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| ScsException::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Solution({:?}, length={})", self.inner.superstring, self.inner.length)
    }
}

/// Runs GA or LGA once. `seed=None` breaks ties lexicographically.
#[pyfunction]
#[pyo3(signature = (instance, algo = "greedy", seed = None))]
fn solve(instance: &Instance, algo: &str, seed: Option<u64>) -> PyResult<Solution> {
    let tie = seed.map_or(TieBreaker::Lexicographic, TieBreaker::Seeded);
    let inner = solvers::run(&instance.inner, self::algo(algo)?, &tie).map_err(err)?;
    Ok(Solution { inner })
}

/// Shortest superstring, or with `symbol` a superstring with the fewest
/// occurrences of that symbol.
#[pyfunction]
#[pyo3(signature = (instance, symbol = None))]
fn exact(instance: &Instance, symbol: Option<char>) -> PyResult<Solution> {
    let inner = match self::symbol(symbol)? {
        None => solvers::exact_scs(&instance.inner),
        Some(p) => solvers::exact_sigma(&instance.inner, p)
            .and_then(|(_, perm)| scs_core::Solution::from_permutation(&instance.inner, &perm)),
    }
    .map_err(err)?;
    Ok(Solution { inner })
}

/// Every distinct outcome of GA or LGA, and whether the enumeration finished
/// within `budget` states.
#[pyfunction]
#[pyo3(signature = (instance, algo = "greedy", budget = DEFAULT_ENUMERATION_BUDGET))]
fn enumerate(instance: &Instance, algo: &str, budget: usize) -> PyResult<(Vec<Solution>, bool)> {
    let e = solvers::enumerate_instantiations(&instance.inner, self::algo(algo)?, budget);
    Ok((e.solutions.into_iter().map(|inner| Solution { inner }).collect(), e.complete))
}

/// P1–P4 on the overlap graph, or on the graph counting `symbol`.
#[pyfunction]
#[pyo3(signature = (instance, symbol = None))]
fn certify<'py>(py: Python<'py>, instance: &Instance, symbol: Option<char>) -> PyResult<Bound<'py, PyAny>> {
    let g = match self::symbol(symbol)? {
        None => overlap_graph(&instance.inner),
        Some(p) => sigma_graph(&instance.inner, p),
    };
    let cover = if g.n() <= 8 {
        max_cover_brute_force(&g).1
    } else {
        solvers::cyc(&g, &OrderPolicy::Lexicographic).map_err(err)?
    };
    let report = check_properties(&g, &cover).map_err(err)?;
    to_py(py, &report)
}

/// A named instance family; `n` is ignored by the fixed ones.
#[pyfunction]
#[pyo3(signature = (name, n = 0))]
fn gen_family(name: &str, n: usize) -> PyResult<Instance> {
    let family: Family = name.parse().map_err(err)?;
    let inner = core_gen(FamilySpec::new(family, n)).map_err(err)?;
    Ok(Instance { inner })
}

/// Pads `instance` with sentinels so that GA can only follow `target`
/// (default: the lexicographic GA run). Returns the padded instance and
/// whether GA on it is forced.
#[pyfunction]
#[pyo3(signature = (instance, target = None))]
fn sentinelize(instance: &Instance, target: Option<&Solution>) -> PyResult<(Instance, bool)> {
    let inst = &instance.inner;
    let log = match target {
        Some(t) => t.inner.merge_log.clone(),
        None => solvers::run(inst, Algo::Greedy, &TieBreaker::Lexicographic).map_err(err)?.merge_log,
    };
    let params = find_sentinel_params(inst, &log, SentinelBudget::for_size(inst.len())).map_err(err)?;
    let padded = scs_core::instances::sentinelize(inst, &params).map_err(err)?;
    let forced = is_greedy_forced(&padded);
    Ok((Instance { inner: padded }, forced))
}

/// Worst ratio of `algo` over all substring-free instances of up to
/// `max_strings` strings of length up to `max_len` on `alphabet` letters.
#[pyfunction]
#[pyo3(signature = (alphabet, max_strings, max_len, algo = "greedy", metric = "length", jobs = None))]
fn worst_ratio<'py>(
    py: Python<'py>,
    alphabet: usize,
    max_strings: usize,
    max_len: usize,
    algo: &str,
    metric: &str,
    jobs: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let metric = match metric {
        "length" => Metric::Length,
        "uniform" => Metric::Uniform,
        _ => return Err(PyValueError::new_err(format!("unknown metric {metric:?}"))),
    };
    let space = SearchSpace::exhaustive(alphabet, max_strings, max_len);
    let opts = jobs.map_or_else(SearchOptions::default, SearchOptions::with_jobs);
    let algo = self::algo(algo)?;
    let report = py.detach(|| search::worst_ratio(&space, algo, metric, &opts)).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn scs_greedy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Solution>()?;
    m.add("ScsException", m.py().get_type::<ScsException>())?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(exact, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(gen_family, m)?)?;
    m.add_function(wrap_pyfunction!(sentinelize, m)?)?;
    m.add_function(wrap_pyfunction!(worst_ratio, m)?)?;
    Ok(())
}
