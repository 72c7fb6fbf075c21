//! The `mct` command line: construct, verify, solve, analyze and tabulate
//! bounds for 5-cycle decompositions without multicolored triangles.
//!
//! Exit codes: 0 on success, 1 when a certificate or computation exhibits a
//! violation (a multicolored triangle, a failed inequality, an oracle
//! mismatch), 2 on usage, I/O or parse errors.

pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use thiserror::Error;

use mct_core::analyzer::{self, AnalyzerConfig, BoundCheck};
use mct_core::certificate::{self, Certificate, CertificateError};
use mct_core::constructions::{self, PartSizes, TnValue};
use mct_core::solver::{self, SearchOptions, SolveError, ORACLE_MAX_N};
use mct_core::verifier;
use mct_core::{BlowupPartition, ColoredGraph};

pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default `5^n` cap for the exhaustive partition search (covers n ≤ 10).
pub const DEFAULT_PARTITION_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Certificate { path: PathBuf, source: CertificateError },
    #[error(transparent)]
    Construction(#[from] constructions::ConstructionError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Analyzer(#[from] analyzer::AnalyzerError),
}

#[derive(Parser, Debug)]
#[command(name = "mct", version, about = "Multicolored-triangle-free 5-cycle decompositions")]
struct Cli {
    /// Emit JSON instead of key/value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a decomposition and write its certificate.
    Construct {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        /// Vertex count (for k5star, n = 4m + 1 with m blades).
        #[arg(long)]
        n: u64,
        /// Write the certificate here and print a summary instead.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Graphviz output instead of the certificate format.
        #[arg(long)]
        dot: bool,
    },
    /// Check a certificate for multicolored triangles and the degree inequalities.
    Verify { file: PathBuf },
    /// Exact maximum number of classes on n vertices by exhaustive search.
    Solve {
        #[arg(long)]
        n: usize,
        /// Cross-check with the unpruned brute-force search (n ≤ 7).
        #[arg(long)]
        oracle: bool,
        /// Node budget for the search.
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads; the output does not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print node count and runtime to stderr.
        #[arg(long)]
        stats: bool,
        /// Also write the witness certificate here.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Structural quantities of a certificate relative to a blow-up partition.
    Analyze {
        file: PathBuf,
        /// Near-average window, as a fraction like 1/16 or 0.0625.
        #[arg(long)]
        gamma: Option<String>,
        /// Search for a partition even if the certificate has one.
        #[arg(long)]
        find_partition: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run the exhaustive partition search when 5^n is at most this.
        #[arg(long, default_value_t = DEFAULT_PARTITION_BUDGET)]
        budget: u64,
    },
    /// Tabulate t(n) against the closed-form bounds.
    Bounds {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Value substituted for the vanishing error term.
        #[arg(long, default_value = "0")]
        delta: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Blowup,
    Perturbed,
    K5star,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Blowup => "blowup",
            Kind::Perturbed => "perturbed",
            Kind::K5star => "k5star",
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let json = cli.json;
    let (report, code) = match cli.command {
        Command::Construct { kind, n, output, dot } => {
            return construct(kind, n, output.as_deref(), dot, json, out);
        }
        Command::Verify { file } => verify(&file)?,
        Command::Solve {
            n,
            oracle,
            budget,
            jobs,
            stats,
            output,
        } => solve(n, oracle, budget, jobs, stats, output.as_deref(), err)?,
        Command::Analyze {
            file,
            gamma,
            find_partition,
            seed,
            budget,
        } => analyze(&file, gamma.as_deref(), find_partition, seed, budget)?,
        Command::Bounds { from, to, delta } => bounds(from, to, &delta)?,
    };
    emit(out, &report.render(json))?;
    Ok(code)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_certificate(path: &Path) -> Result<Result<Certificate, CertificateError>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(certificate::parse(&text))
}

/// Accepts `a/b`, integers and plain decimals such as `0.0625`.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("cannot parse {s:?} as a rational number"));
    let s = s.trim();
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{frac}", whole.trim_start_matches(['-', '+']));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let r = BigRational::new(num, den);
        return Ok(if negative { -r } else { r });
    }
    BigRational::from_str(s).map_err(|_| bad())
}

fn rational(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

fn cycles_table(g: &ColoredGraph) -> Vec<Vec<Value>> {
    g.classes()
        .iter()
        .map(|c| c.iter().map(|&v| Value::from(v)).collect())
        .collect()
}

fn triangle_value(t: Option<[usize; 3]>) -> Value {
    t.map_or(Value::Null, |t| Value::from(t.to_vec()))
}

fn build(kind: Kind, n: u64) -> Result<(ColoredGraph, Option<BlowupPartition>), CliError> {
    Ok(match kind {
        Kind::Blowup => {
            let sizes = PartSizes::balanced(n);
            (constructions::blowup_packing(sizes)?, Some(sizes.partition()))
        }
        Kind::Perturbed => {
            let g = constructions::perturbed_construction(n)?;
            (g, Some(PartSizes::equal(n / 5).partition()))
        }
        Kind::K5star => {
            if n < 5 || !(n - 1).is_multiple_of(4) {
                return Err(CliError::Usage(format!("k5star needs n = 4m + 1 with m >= 1, got {n}")));
            }
            (constructions::k5_star(((n - 1) / 4) as usize)?, None)
        }
    })
}

fn construct(
    kind: Kind,
    n: u64,
    output: Option<&Path>,
    dot: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (g, partition) = build(kind, n)?;
    let text = if dot {
        certificate::render_dot(&g)
    } else {
        certificate::render(&g, partition.as_ref())
    };

    let mut r = Report::new();
    r.put("type", kind.name())
        .put("n", g.n())
        .put("k", g.k())
        .put("edges", g.edge_count())
        .put("t_n", TnValue::of(n).t);
    match output {
        Some(path) => {
            write_file(path, &text)?;
            r.put("output", path.display().to_string());
            emit(out, &r.render(json))?;
        }
        None if json => {
            r.rows("cycle", cycles_table(&g));
            let parts = partition.map(|p| p.assignment().iter().map(|&i| i + 1).collect::<Vec<_>>());
            r.put("parts", parts.map_or(Value::Null, Value::from));
            emit(out, &r.to_json())?;
        }
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn verify(path: &Path) -> Result<(Report, i32), CliError> {
    let mut r = Report::new();
    let cert = match read_certificate(path)? {
        Ok(cert) => cert,
        // A structurally broken decomposition is a mathematical failure of
        // the certificate, not a usage error.
        Err(CertificateError::Validation(e)) => {
            r.put("decomposition_ok", false)
                .put("error", e.to_string())
                .put("valid", false);
            return Ok((r, EXIT_VIOLATION));
        }
        Err(source) => {
            return Err(CliError::Certificate {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    let g = &cert.graph;
    let v = verifier::verify(g);
    r.put("n", g.n())
        .put("k", v.k)
        .put("edges", g.edge_count())
        .put("decomposition_ok", v.decomposition_ok)
        .put("multicolored_triangle", triangle_value(v.multicolored_triangle))
        .list(
            "neighborhood_bound_violations",
            v.neighborhood_violations.iter().copied(),
        )
        .list("degree_sum_bound_violations", v.kn_violations.iter().copied())
        .put("double_count_by_cycles", v.double_count.by_cycles)
        .put("double_count_by_degrees", v.double_count.by_degrees)
        .put("double_count_ok", v.double_count_ok())
        .put("triangles", v.census.triangle_count)
        .put("multicolored_triangles", v.census.multicolored_count);
    if let Some(p) = &cert.partition {
        r.put("unstructured_edges", p.unstructured_edges(g).len());
    }
    r.put("valid", v.clean());
    Ok((r, if v.clean() { EXIT_OK } else { EXIT_VIOLATION }))
}

fn solve(
    n: usize,
    oracle: bool,
    budget: Option<u64>,
    jobs: usize,
    stats: bool,
    output: Option<&Path>,
    err: &mut dyn Write,
) -> Result<(Report, i32), CliError> {
    if oracle && n > ORACLE_MAX_N {
        return Err(CliError::Usage(format!("--oracle supports n <= {ORACLE_MAX_N}")));
    }
    let mut opts = SearchOptions {
        parallel_width: jobs,
        ..SearchOptions::default()
    };
    if let Some(b) = budget {
        opts.node_budget = b;
    }
    let result = match solver::solve_exact(n, &opts) {
        Ok(res) => res,
        Err(SolveError::BudgetExhausted(best)) => *best,
        Err(e) => return Err(e.into()),
    };
    if stats {
        let _ = writeln!(
            err,
            "nodes_explored {} runtime_ms {}",
            result.nodes_explored,
            result.runtime.as_millis()
        );
    }

    let pairs = n * n.saturating_sub(1) / 2;
    let mut r = Report::new();
    r.put("n", n)
        .put("source", "exhaustive-search")
        .put("k_star", result.k_star)
        .put("complete", result.complete)
        .put("t_n", TnValue::of(n as u64).t)
        .put("edge_count_cap", pairs / 5)
        .rows("cycle", cycles_table(&result.witness));
    let mut code = EXIT_OK;
    if oracle {
        let k = solver::brute_force_oracle(n)?;
        let agrees = result.complete && k == result.k_star;
        r.put("oracle_k_star", k).put("oracle_agrees", agrees);
        if !agrees {
            code = EXIT_VIOLATION;
        }
    }
    if !verifier::verify(&result.witness).clean() {
        code = EXIT_VIOLATION;
    }
    if let Some(path) = output {
        write_file(path, &certificate::render(&result.witness, None))?;
    }
    Ok((r, code))
}

fn check_row(c: &BoundCheck) -> Vec<Value> {
    vec![
        c.name.into(),
        rational(&c.value),
        c.relation.symbol().into(),
        rational(&c.bound),
        (if c.holds { "pass" } else { "fail" }).into(),
    ]
}

fn analyze(
    path: &Path,
    gamma: Option<&str>,
    find_partition: bool,
    seed: u64,
    budget: u64,
) -> Result<(Report, i32), CliError> {
    let cert = read_certificate(path)?.map_err(|source| CliError::Certificate {
        path: path.to_path_buf(),
        source,
    })?;
    let cfg = match gamma {
        Some(s) => AnalyzerConfig::with_gamma(parse_rational(s)?)?,
        None => AnalyzerConfig::default(),
    };
    let g = &cert.graph;

    let mut r = Report::new();
    r.put("n", g.n()).put("k", g.k()).put("edges", g.edge_count());
    r.put("multicolored_triangle", triangle_value(g.find_multicolored_triangle()));
    r.put("gamma", rational(&cfg.gamma));

    let partition = match cert.partition {
        Some(p) if !find_partition => {
            r.put("partition_source", "file");
            p
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let found = analyzer::best_blowup_partition(g, budget, &mut rng);
            r.put("partition_source", "search").put("partition_exact", found.exact);
            found.partition
        }
    };
    let a = analyzer::structure_report(g, &partition, &cfg)?;

    r.list("parts", partition.assignment().iter().map(|&i| i + 1))
        .list("part_sizes", a.part_sizes)
        .list("structured_pair_edges", a.structured_edge_counts)
        .put("structured_edges", a.structured_total())
        .put("unstructured_edges", a.unstructured_count())
        .rows("unstructured", a.unstructured.iter().map(|&(u, v, c)| [u, v, c]))
        .put("good_vertices", a.good.len())
        .put("near_average_vertices", a.near_average.len())
        .put("good_unstructured_edges", a.good_unstructured.len())
        .put("good_unstructured_is_matching", a.good_unstructured_is_matching)
        .put("good_edges_within_parts", a.good_edges_within_parts)
        .put("sum_s_squared", rational(&a.sum_s_sq))
        .put("vertex_split_bound", a.vertex_split.bound)
        .put(
            "vertex_split_vertex",
            a.vertex_split.best_vertex.map_or(Value::Null, Value::from),
        )
        .rows(
            "part_degree",
            a.part_degrees
                .iter()
                .enumerate()
                .map(|(v, d)| std::iter::once(v).chain(d.iter().copied())),
        )
        .rows("great_pair", a.great_pairs.iter().map(|(&(u, v), &c)| [u, v, c]))
        .put("triangles", a.census.triangle_count)
        .put("multicolored_triangles", a.census.multicolored_count)
        .rows("check", a.checks.iter().map(check_row));
    Ok((r, EXIT_OK))
}

fn bounds(from: u64, to: u64, delta: &str) -> Result<(Report, i32), CliError> {
    if from == 0 || from > to {
        return Err(CliError::Usage(format!("need 1 <= from <= to, got {from}..{to}")));
    }
    let delta = parse_rational(delta)?;
    let rows = analyzer::bounds_table(from, to, &delta);
    let all_global = rows.iter().all(|row| row.lower_le_global());
    let all_linear = rows.iter().all(|row| row.lower_le_linear());
    let all_quadratic = rows.iter().all(|row| row.quadratic_le_lower());

    let mut r = Report::new();
    r.put("delta", rational(&delta)).list(
        "columns",
        [
            "n",
            "q",
            "r",
            "t_n",
            "quadratic_lower",
            "global_upper",
            "linear_error_upper",
        ],
    );
    r.rows(
        "row",
        rows.iter().map(|row| {
            vec![
                Value::from(row.n),
                row.q.into(),
                row.r.into(),
                row.t.into(),
                rational(&row.quadratic_lower),
                rational(&row.global_upper),
                rational(&row.linear_error_upper),
            ]
        }),
    );
    r.put("t_le_global_upper", all_global)
        .put("t_le_linear_error_upper", all_linear)
        .put("quadratic_lower_le_t", all_quadratic);
    let code = if all_global && all_linear && all_quadratic {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    Ok((r, code))
}
