//! The `scs` command line. [`run`] does all the work and returns the exit
//! code and both output streams, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 capacity exceeded. Every error is also written to stderr as
//! `{"error": {"kind": ..., "message": ...}}`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScsError};
use crate::graph::{check_properties, max_cover_brute_force, overlap_graph, sigma_graph, to_dot, PropertyReport, BRUTE_FORCE_COVER_MAX_N};
use crate::instances::{find_sentinel_params, gen_family, is_greedy_forced, sentinelize, Family, FamilySpec, SentinelBudget, SentinelParams};
use crate::search::{
    parse_ratio, verify_bound, worst_ratio, write_ratios_tsv, Checkpointing, Metric, SearchOptions, SearchSpace,
};
use crate::solvers::{
    analyze_trace, cyc, enumerate_instantiations, exact_scs, exact_sigma, path, run as run_algo, Algo, DiagnosticsReport,
    MergeStep, OrderPolicy, Solution, TieBreaker, DEFAULT_ENUMERATION_BUDGET,
};
use crate::strings::{superstring_of_permutation, Instance, NormalizeOptions, Sym};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

/// Environment variable giving the default `--jobs` for `search`.
pub const JOBS_ENV: &str = "SCS_JOBS";

#[derive(Parser, Debug)]
#[command(name = "scs", version, about = "Greedy shortest common superstring workbench")]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Accept '$' in instance files.
    #[arg(long, global = true)]
    pub allow_sentinel: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Greedy,
    LocallyGreedy,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Greedy => Algo::Greedy,
            AlgoArg::LocallyGreedy => Algo::LocallyGreedy,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Length,
    Uniform,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Length => Metric::Length,
            MetricArg::Uniform => Metric::Uniform,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one instantiation of GA or LGA.
    Solve {
        #[arg(long, value_enum, default_value = "greedy")]
        algo: AlgoArg,
        /// `lex` or `random:SEED`.
        #[arg(long, default_value = "lex")]
        tie: String,
        file: PathBuf,
    },
    /// Shortest superstring, or the fewest occurrences of one symbol.
    Exact {
        file: PathBuf,
        #[arg(long)]
        symbol: Option<char>,
    },
    /// All instantiations of an algorithm.
    Enumerate {
        #[arg(long, value_enum, default_value = "greedy")]
        algo: AlgoArg,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: usize,
        file: PathBuf,
    },
    /// Check P1–P4 on the overlap graph or a symbol graph.
    Certify {
        file: PathBuf,
        #[arg(long)]
        symbol: Option<char>,
        /// Also run PATH and check its trace.
        #[arg(long)]
        diagnostics: bool,
    },
    /// Print a named instance family.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Pad with sentinels so that GA follows one merge order.
    Sentinelize {
        file: PathBuf,
        /// JSON merge log, or a solution object with a `merge_log`.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Worst ratio over a space of instances.
    Search {
        #[arg(long)]
        alphabet: usize,
        #[arg(long)]
        max_strings: usize,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// Sample `SAMPLES` instances with `SEED` instead of a full scan.
        #[arg(long, value_name = "SEED:SAMPLES")]
        random: Option<String>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Stop at the first instance with a larger ratio (`P/Q`).
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: usize,
        /// Emit `instance<TAB>ratio` lines.
        #[arg(long)]
        tsv: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000, requires = "checkpoint")]
        checkpoint_every: u64,
    },
    /// Export the overlap graph (or a symbol graph) as Graphviz DOT.
    Graph {
        /// Output file, `-` for stdout.
        #[arg(long)]
        dot: PathBuf,
        file: PathBuf,
        #[arg(long)]
        symbol: Option<char>,
        /// Keep zero-weight edges.
        #[arg(long)]
        all_edges: bool,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

fn error_json(kind: &str, message: String) -> String {
    let mut s = serde_json::to_string(&ErrorObject { error: ErrorBody { kind, message } }).expect("serializable");
    s.push('\n');
    s
}

pub fn exit_code(e: &ScsError) -> i32 {
    match e {
        ScsError::Capacity(_) => EXIT_CAPACITY,
        ScsError::NotFound(_) => EXIT_VERIFICATION,
        _ => EXIT_USAGE,
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct ExactOutput {
    pub length: u64,
    pub compression: u64,
    pub superstring: String,
    pub perm: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct ExactSymbolOutput {
    pub symbol: Sym,
    pub count: u64,
    pub superstring: String,
    pub perm: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct Range {
    pub min: u64,
    pub max: u64,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct EnumerateOutput {
    pub algo: Algo,
    pub instantiations: usize,
    pub complete: bool,
    pub states_visited: usize,
    pub length: Range,
    pub per_symbol: BTreeMap<Sym, Range>,
    pub superstrings: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct CertifyOutput {
    /// `overlap` or the symbol.
    pub graph: String,
    pub nodes: usize,
    pub cover_weight: u64,
    /// The cover was confirmed maximum by brute force.
    pub cover_verified: bool,
    pub properties: PropertyReport,
    pub all_hold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<DiagnosticsReport>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct SentinelizeOutput {
    pub params: SentinelParams,
    pub instance: Instance,
    pub forced: bool,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct GraphOutput {
    pub written: String,
    pub nodes: usize,
    pub edges: usize,
}

struct Ctx<'a> {
    pretty: bool,
    opts: NormalizeOptions,
    stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn read(&mut self, path: &PathBuf) -> Result<String> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| ScsError::Io(format!("{}: {e}", path.display())))
        }
    }

    fn instance(&mut self, path: &PathBuf) -> Result<Instance> {
        let text = self.read(path)?;
        Instance::parse(&text, self.opts)
    }

    fn emit<T: Serialize>(&self, value: &T, pretty: impl FnOnce() -> String) -> String {
        if self.pretty {
            pretty()
        } else {
            let mut s = serde_json::to_string(value).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn parse_tie(text: &str) -> Result<TieBreaker> {
    if text == "lex" {
        return Ok(TieBreaker::Lexicographic);
    }
    if let Some(seed) = text.strip_prefix("random:") {
        let seed = seed.parse().map_err(|_| ScsError::invalid(format!("bad seed in {text:?}")))?;
        return Ok(TieBreaker::Seeded(seed));
    }
    Err(ScsError::invalid(format!("tie must be lex or random:SEED, got {text:?}")))
}

fn parse_symbol(c: char) -> Result<Sym> {
    Sym::from_char(c)
}

fn jobs_default(jobs: Option<usize>) -> Result<Option<usize>> {
    if jobs.is_some() {
        return Ok(jobs);
    }
    match std::env::var(JOBS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| ScsError::invalid(format!("{JOBS_ENV} must be a positive integer"))),
        Err(_) => Ok(None),
    }
}

fn pretty_solution(s: &Solution) -> String {
    let counts: Vec<String> = s.per_symbol.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(
        "superstring  {}\nlength       {}\ncompression  {}\norder        {:?}\ncounts       {}\n",
        s.superstring,
        s.length,
        s.compression,
        s.perm,
        counts.join(" ")
    )
}

fn pretty_properties(r: &PropertyReport) -> String {
    let line = |name: &str, c: &crate::graph::PropertyCheck| match &c.witness {
        None => format!("{name:<10} holds\n"),
        Some(w) => format!("{name:<10} FAILS at {w:?}\n"),
    };
    [
        line("P1", &r.p1),
        line("P2", &r.p2),
        line("P3", &r.p3),
        line("P4", &r.p4),
        line("P4 strict", &r.p4_strict),
    ]
    .concat()
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: error_json("usage", e.to_string()) },
            };
        }
    };
    let mut ctx = Ctx { pretty: cli.pretty, opts: NormalizeOptions { allow_sentinel: cli.allow_sentinel }, stdin };
    match execute(cli.command, &mut ctx) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: error_json(e.kind(), e.to_string()) },
    }
}

fn execute(cmd: Command, ctx: &mut Ctx<'_>) -> Result<(i32, String)> {
    match cmd {
        Command::Solve { algo, tie, file } => {
            let tie = parse_tie(&tie)?;
            let inst = ctx.instance(&file)?;
            let sol = run_algo(&inst, algo.into(), &tie)?;
            Ok((EXIT_OK, ctx.emit(&sol, || pretty_solution(&sol))))
        }
        Command::Exact { file, symbol } => {
            let symbol = symbol.map(parse_symbol).transpose()?;
            let inst = ctx.instance(&file)?;
            match symbol {
                None => {
                    let sol = exact_scs(&inst)?;
                    let out = ExactOutput {
                        length: sol.length,
                        compression: sol.compression,
                        superstring: sol.superstring.clone(),
                        perm: sol.perm.clone(),
                    };
                    Ok((EXIT_OK, ctx.emit(&out, || pretty_solution(&sol))))
                }
                Some(p) => {
                    let (count, perm) = exact_sigma(&inst, p)?;
                    let s = superstring_of_permutation(&inst, &perm)?;
                    let out = ExactSymbolOutput { symbol: p, count, superstring: String::from_utf8_lossy(&s).into(), perm };
                    Ok((EXIT_OK, ctx.emit(&out, || format!("symbol {p}: at least {count}, attained by {}\n", out.superstring))))
                }
            }
        }
        Command::Enumerate { algo, budget, file } => {
            let inst = ctx.instance(&file)?;
            let e = enumerate_instantiations(&inst, algo.into(), budget);
            let lengths = e.solutions.iter().map(|s| s.length);
            let length = Range { min: lengths.clone().min().unwrap_or(0), max: lengths.max().unwrap_or(0) };
            let per_symbol = inst
                .alphabet()
                .iter()
                .map(|&p| {
                    let counts = e.solutions.iter().map(|s| s.count(p));
                    (p, Range { min: counts.clone().min().unwrap_or(0), max: counts.max().unwrap_or(0) })
                })
                .collect();
            let out = EnumerateOutput {
                algo: algo.into(),
                instantiations: e.solutions.len(),
                complete: e.complete,
                states_visited: e.states_visited,
                length,
                per_symbol,
                superstrings: e.solutions.iter().map(|s| s.superstring.clone()).collect(),
            };
            let pretty = || {
                let mut s = format!(
                    "{} distinct superstrings{}\nlength       {}..{}\n",
                    out.instantiations,
                    if out.complete { "" } else { " (budget exhausted)" },
                    out.length.min,
                    out.length.max
                );
                for (p, r) in &out.per_symbol {
                    s += &format!("count of {p}   {}..{}\n", r.min, r.max);
                }
                s
            };
            let text = ctx.emit(&out, pretty);
            Ok((if out.complete { EXIT_OK } else { EXIT_VERIFICATION }, text))
        }
        Command::Certify { file, symbol, diagnostics } => {
            let symbol = symbol.map(parse_symbol).transpose()?;
            let inst = ctx.instance(&file)?;
            let (name, g) = match symbol {
                None => ("overlap".to_string(), overlap_graph(&inst)),
                Some(p) => (p.to_string(), sigma_graph(&inst, p)),
            };
            let cover_verified = g.n() <= BRUTE_FORCE_COVER_MAX_N;
            let cover = if cover_verified { max_cover_brute_force(&g).1 } else { cyc(&g, &OrderPolicy::Lexicographic)? };
            let properties = check_properties(&g, &cover)?;
            let diagnostics = if diagnostics {
                let (_, trace) = path(&g, &OrderPolicy::Lexicographic)?;
                Some(analyze_trace(&g, &trace)?)
            } else {
                None
            };
            let all_hold = properties.all_hold();
            let ok = all_hold && diagnostics.as_ref().is_none_or(|d| d.all_ok());
            let out = CertifyOutput {
                graph: name,
                nodes: g.n(),
                cover_weight: cover.weight(&g),
                cover_verified,
                properties,
                all_hold,
                diagnostics,
            };
            let pretty = || {
                let mut s = pretty_properties(&out.properties);
                if let Some(d) = &out.diagnostics {
                    s += &format!(
                        "w(BC) {}  |C_m| {}  |SHP| {}  laminar {}  placement {}  bound {}\n",
                        d.w_bc, d.cm_length, d.shp_length, d.laminar_ok, d.placement_ok, d.main2_ok
                    );
                }
                s
            };
            let text = ctx.emit(&out, pretty);
            Ok((if ok { EXIT_OK } else { EXIT_VERIFICATION }, text))
        }
        Command::Gen { family, n } => {
            let family: Family = family.parse()?;
            let n = match (family.is_parametric(), n) {
                (true, None) => return Err(ScsError::invalid(format!("family {family} needs --n"))),
                (_, n) => n.unwrap_or(0),
            };
            let inst = gen_family(FamilySpec::new(family, n))?;
            Ok((EXIT_OK, inst.to_text()))
        }
        Command::Sentinelize { file, target } => {
            let inst = ctx.instance(&file)?;
            let log: Vec<MergeStep> = match target {
                Some(path) => parse_merge_log(&ctx.read(&path)?)?,
                None => run_algo(&inst, Algo::Greedy, &TieBreaker::Lexicographic)?.merge_log,
            };
            let params = find_sentinel_params(&inst, &log, SentinelBudget::for_size(inst.len()))?;
            let padded = sentinelize(&inst, &params)?;
            let out = SentinelizeOutput { forced: is_greedy_forced(&padded), params, instance: padded };
            Ok((EXIT_OK, ctx.emit(&out, || out.instance.to_text())))
        }
        Command::Search {
            alphabet,
            max_strings,
            max_len,
            algo,
            metric,
            random,
            jobs,
            lambda,
            budget,
            tsv,
            checkpoint,
            checkpoint_every,
        } => {
            let space = match random {
                None => SearchSpace::exhaustive(alphabet, max_strings, max_len),
                Some(spec) => {
                    let (seed, samples) = spec
                        .split_once(':')
                        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                        .ok_or_else(|| ScsError::invalid(format!("--random expects SEED:SAMPLES, got {spec:?}")))?;
                    SearchSpace::random(alphabet, max_strings, max_len, seed, samples)
                }
            };
            let lambda = lambda.as_deref().map(parse_ratio).transpose()?;
            let opts = SearchOptions {
                jobs: jobs_default(jobs)?,
                budget,
                checkpoint: checkpoint.map(|path| Checkpointing { path, every: checkpoint_every }),
            };
            let (algo, metric) = (algo.into(), metric.into());
            if tsv {
                let mut buf = Vec::new();
                write_ratios_tsv(&space, algo, metric, &opts, &mut buf)?;
                return Ok((EXIT_OK, String::from_utf8(buf).expect("ascii")));
            }
            match lambda {
                Some(lambda) => {
                    let check = verify_bound(&space, algo, metric, lambda, &opts)?;
                    let pretty = || match &check.counterexample {
                        None => format!("bound {} holds on {} instances\n", check.lambda, check.instances_scanned),
                        Some(w) => format!(
                            "bound {} FAILS: ratio {} on {:?}\n",
                            check.lambda,
                            w.evaluation.ratio,
                            w.instance.to_strings()
                        ),
                    };
                    let text = ctx.emit(&check, pretty);
                    Ok((if check.passed { EXIT_OK } else { EXIT_VERIFICATION }, text))
                }
                None => {
                    let report = worst_ratio(&space, algo, metric, &opts)?;
                    let pretty = || {
                        format!(
                            "worst ratio  {}\nwitness      {:?}\nsolution     {}\nscanned      {}{}\n",
                            report.best_ratio,
                            report.witness_instance.to_strings(),
                            report.witness_solution.superstring,
                            report.instances_scanned,
                            if report.exhausted { " (exhaustive)" } else { "" }
                        )
                    };
                    let text = ctx.emit(&report, pretty);
                    Ok((if report.zero_optimum.is_some() { EXIT_VERIFICATION } else { EXIT_OK }, text))
                }
            }
        }
        Command::Graph { dot, file, symbol, all_edges } => {
            let symbol = symbol.map(parse_symbol).transpose()?;
            let inst = ctx.instance(&file)?;
            let g = match symbol {
                None => overlap_graph(&inst),
                Some(p) => sigma_graph(&inst, p),
            };
            let text = to_dot(&g, all_edges);
            let edges = text.lines().filter(|l| l.contains("->")).count();
            if dot.as_os_str() == "-" {
                return Ok((EXIT_OK, text));
            }
            fs::write(&dot, &text).map_err(|e| ScsError::Io(format!("{}: {e}", dot.display())))?;
            let out = GraphOutput { written: dot.display().to_string(), nodes: g.n(), edges };
            Ok((EXIT_OK, ctx.emit(&out, || format!("wrote {} ({} nodes, {} edges)\n", out.written, out.nodes, out.edges))))
        }
    }
}

fn parse_merge_log(text: &str) -> Result<Vec<MergeStep>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Log {
        Steps(Vec<MergeStep>),
        Solution { merge_log: Vec<MergeStep> },
    }
    match serde_json::from_str::<Log>(text) {
        Ok(Log::Steps(s)) | Ok(Log::Solution { merge_log: s }) => Ok(s),
        Err(e) => Err(ScsError::invalid(format!("bad merge log: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> Outcome {
        let mut stdin = input.as_bytes();
        run(std::iter::once("scs").chain(args.iter().copied()), &mut stdin)
    }

    #[test]
    fn tie_parsing() {
        assert_eq!(parse_tie("lex").unwrap(), TieBreaker::Lexicographic);
        assert_eq!(parse_tie("random:7").unwrap(), TieBreaker::Seeded(7));
        assert!(parse_tie("random:x").is_err());
        assert!(parse_tie("first").is_err());
    }

    #[test]
    fn reads_stdin() {
        let out = call(&["exact", "-"], "ABE\nDAB\nDFA\nACB\nECA\nCBD\n");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: ExactOutput = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!((v.length, v.compression), (11, 7));
    }

    #[test]
    fn usage_errors() {
        let out = call(&["solve", "--algo", "best", "-"], "a\n");
        assert_eq!(out.code, EXIT_USAGE);
        let v: serde_json::Value = serde_json::from_str(&out.stderr).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
        assert_eq!(call(&["gen", "--family", "intro"], "").code, EXIT_USAGE);
        assert_eq!(call(&["--help"], "").code, EXIT_OK);
    }

    #[test]
    fn merge_log_formats() {
        let steps = r#"[{"left":[0],"right":[1],"overlap":1}]"#;
        assert_eq!(parse_merge_log(steps).unwrap().len(), 1);
        let sol = format!(r#"{{"merge_log": {steps}, "length": 3}}"#);
        assert_eq!(parse_merge_log(&sol).unwrap().len(), 1);
        assert!(parse_merge_log("{}").is_err());
    }
}
