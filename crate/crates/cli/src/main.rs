//! `symdisc` command-line interface.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 precondition violated,
//! 4 size cap exceeded, 5 verification failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symdisc::bounds::{self, RamseyQuery, RamseyStatus};
use symdisc::constructions::{self, divisibility_gate, prime_power, shift_reduced_dimension};
use symdisc::format::{parse_coloring, parse_hypergraph, write_coloring, write_hypergraph};
use symdisc::hypergraph::{complete_uniform, disc_of_coloring, random_hypergraph, ExactSolver};
use symdisc::product::{self, DEFAULT_PRODUCT_CAP};
use symdisc::simplex::{
    classify_point, enumerate_simplices, simplex_count, simplex_points, stirling2,
};
use symdisc::verify::{run_suite, VerifyOptions};
use symdisc::{Coloring, Error, Hypergraph, ProductColoring};

#[derive(Parser)]
#[command(
    name = "symdisc",
    version,
    about = "Discrepancy of symmetric products of hypergraphs"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Cap on explicitly enumerated grid points.
    #[arg(long, default_value_t = DEFAULT_PRODUCT_CAP, global = true)]
    cap: u64,
    /// Cap on the vertex count for exact discrepancy search.
    #[arg(long, default_value_t = symdisc::hypergraph::DEFAULT_EXACT_CAP, global = true)]
    exact_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact discrepancy of a hypergraph, or of a given coloring.
    Disc {
        hypergraph: PathBuf,
        #[arg(long)]
        c: u32,
        /// Evaluate this coloring instead of minimizing.
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Write the witness coloring here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a product coloring document at a point or on Δ^d H.
    Eval {
        document: PathBuf,
        /// Comma-separated point, e.g. 1,2,3.
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
    },
    /// Divisibility gate c | k! S(d,k) over ranges such as 2..7.
    Gate {
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
    },
    /// Stirling numbers of the second kind.
    Stirling {
        #[arg(long)]
        d: String,
        #[arg(long)]
        l: Option<usize>,
    },
    #[command(subcommand)]
    Simplices(SimplexCommand),
    #[command(subcommand)]
    Construct(ConstructCommand),
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Smallest n forcing a monochromatic-simplex subgrid of size m.
    Ramsey {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Write the largest counterexample here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a named invariant suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        c: u32,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum SimplexCommand {
    /// List simplex ids of [T]^d.
    List {
        #[arg(long)]
        d: usize,
        /// Comma-separated dimensions (default: all).
        #[arg(long)]
        dims: Option<String>,
        /// Ascending values; prints the points of each simplex.
        #[arg(long)]
        t: Option<String>,
    },
    /// Simplex and value sequence of a point.
    Classify {
        #[arg(long)]
        point: String,
    },
}

#[derive(Args)]
struct ConstructInput {
    #[arg(long)]
    hypergraph: PathBuf,
    /// Base coloring (default: an optimal one from exact search).
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Write the coloring document here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Simplex-balanced coloring of Δ^d H.
    Sym {
        #[command(flatten)]
        input: ConstructInput,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: usize,
    },
    /// Shift-orbit reduction for c = p^q.
    Shift {
        #[command(flatten)]
        input: ConstructInput,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        q: u32,
        #[arg(long)]
        d: usize,
    },
    /// Block reduction from dimension d to d - d' + 1.
    Block {
        #[command(flatten)]
        input: ConstructInput,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        dprime: usize,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Smallest m satisfying the lower-bound threshold inequality.
    MinM {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    /// Simplex census of T^d and the resulting imbalance bound.
    Imbalance {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        t: String,
        #[arg(long)]
        kappa: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// All m-subsets of [n].
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random hypergraph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn with_file(path: &Path, err: Error) -> Failure {
    match err {
        Error::Parse { line, message } => Failure::Lib(Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        }),
        other => Failure::Lib(other),
    }
}

fn load_hypergraph(path: &Path) -> CliResult<Hypergraph> {
    parse_hypergraph(&read(path)?).map_err(|e| with_file(path, e))
}

fn load_coloring(path: &Path) -> CliResult<Coloring> {
    parse_coloring(&read(path)?).map_err(|e| with_file(path, e))
}

fn load_document(path: &Path) -> CliResult<ProductColoring> {
    ProductColoring::from_json(&read(path)?).map_err(|e| with_file(path, e))
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_list(text: &str) -> CliResult<Vec<u32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| usage(format!("bad list entry `{t}` in `{text}`")))
        })
        .collect()
}

/// `a..b`, `a-b` (both inclusive) or a single value.
fn parse_range(text: &str) -> CliResult<Vec<usize>> {
    let bad = || usage(format!("bad range `{text}`"));
    let (lo, hi) = match text.split_once("..").or_else(|| text.split_once('-')) {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?,
        ),
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

struct Ctx {
    format: Format,
    cap: u64,
    solver: ExactSolver,
}

impl Ctx {
    fn base_coloring(&self, h: &Hypergraph, c: u32, path: Option<&PathBuf>) -> CliResult<Coloring> {
        match path {
            Some(p) => {
                let chi = load_coloring(p)?;
                if chi.colors() != c {
                    return Err(Error::Argument(format!(
                        "coloring has {} colors, expected {c}",
                        chi.colors()
                    ))
                    .into());
                }
                Ok(chi)
            }
            None => Ok(self.solver.solve(h, c)?.1),
        }
    }

    /// A coloring of `[n]^s` to feed a reduction: the base coloring for
    /// `s = 1`, a simplex-balanced coloring when the gate passes, a further
    /// shift reduction when `c` is a prime power, and otherwise an optimal
    /// coloring of the explicit product found by exact search.
    fn inner_coloring(
        &self,
        h: &Hypergraph,
        psi: &Coloring,
        s: usize,
    ) -> CliResult<ProductColoring> {
        let c = psi.colors();
        if s == 1 {
            return Ok(ProductColoring::from_base(psi));
        }
        if divisibility_gate(c, s)?.pass {
            return Ok(constructions::simplex_balanced_coloring(psi, s)?);
        }
        if let (Some((p, q)), Some(next)) = (prime_power(c), shift_reduced_dimension(c, s)) {
            let inner = self.inner_coloring(h, psi, next)?;
            return Ok(constructions::shift_reduced_coloring(inner, p, q, s)?);
        }
        let explicit = product::symmetric_product_explicit(h, s, self.cap)?;
        let (_, witness) = self.solver.solve(&explicit, c)?;
        Ok(ProductColoring::explicit(
            h.n(),
            s,
            c,
            witness.assignment().to_vec(),
        )?)
    }

    fn emit(&self, tsv: String, json: Value) -> String {
        match self.format {
            Format::Tsv => tsv,
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&json).expect("json")),
        }
    }
}

fn kv(rows: &[(&str, String)]) -> String {
    rows.iter().fold(String::new(), |mut out, (k, v)| {
        let _ = writeln!(out, "{k}\t{v}");
        out
    })
}

fn cmd_disc(
    ctx: &Ctx,
    hypergraph: &Path,
    c: u32,
    coloring: Option<&PathBuf>,
    out: Option<&PathBuf>,
) -> CliResult<String> {
    let h = load_hypergraph(hypergraph)?;
    let (value, witness) = match coloring {
        Some(p) => {
            let chi = load_coloring(p)?;
            if chi.colors() != c {
                return Err(Error::Argument(format!(
                    "coloring has {} colors, expected {c}",
                    chi.colors()
                ))
                .into());
            }
            (disc_of_coloring(&h, &chi)?, chi)
        }
        None => ctx.solver.solve(&h, c)?,
    };
    if let Some(path) = out {
        write(path, &write_coloring(&witness))?;
    }
    let colors = witness
        .assignment()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    Ok(ctx.emit(
        kv(&[("disc", value.to_string()), ("witness", colors)]),
        json!({"disc": value.to_string(), "numerator": value.numerator(), "c": c, "witness": witness.assignment()}),
    ))
}

fn cmd_eval(
    ctx: &Ctx,
    document: &Path,
    point: Option<&String>,
    hypergraph: Option<&PathBuf>,
) -> CliResult<String> {
    let chi = load_document(document)?;
    let mut rows = Vec::new();
    let mut obj = serde_json::Map::new();
    if let Some(p) = point {
        let x = parse_list(p)?;
        let color = chi.evaluate(&x)?;
        rows.push(("color", color.to_string()));
        obj.insert("color".into(), json!(color));
    }
    if let Some(path) = hypergraph {
        let h = load_hypergraph(path)?;
        let v = product::product_disc_of_coloring(&h, &chi, ctx.cap)?;
        rows.push(("disc", v.to_string()));
        obj.insert("disc".into(), json!(v.to_string()));
    }
    if rows.is_empty() {
        return Err(usage("eval needs --point or --hypergraph"));
    }
    Ok(ctx.emit(kv(&rows), Value::Object(obj)))
}

fn cmd_gate(ctx: &Ctx, cs: &str, ds: &str) -> CliResult<String> {
    let mut tsv = String::from("c\td\tverdict\tfirst_failing_k\n");
    let mut rows = Vec::new();
    for c in parse_range(cs)? {
        for d in parse_range(ds)? {
            let report = divisibility_gate(c as u32, d)?;
            let k = report.first_failure().map(|r| r.k);
            let verdict = if report.pass { "pass" } else { "fail" };
            let _ = writeln!(
                tsv,
                "{c}\t{d}\t{verdict}\t{}",
                k.map_or("-".to_string(), |k| k.to_string())
            );
            rows.push(json!({"c": c, "d": d, "verdict": verdict, "first_failing_k": k, "rows": report.rows.iter().map(|r| json!({"k": r.k, "simplices": r.simplices.to_string(), "residue": r.residue.to_string(), "pass": r.pass})).collect::<Vec<_>>()}));
        }
    }
    Ok(ctx.emit(tsv, Value::Array(rows)))
}

fn cmd_stirling(ctx: &Ctx, ds: &str, l: Option<usize>) -> CliResult<String> {
    let mut tsv = String::from("d\tl\tS(d,l)\tl!S(d,l)\n");
    let mut rows = Vec::new();
    for d in parse_range(ds)? {
        let ls: Vec<usize> = match l {
            Some(l) => vec![l],
            None => (1..=d).collect(),
        };
        for l in ls {
            let s = stirling2(d, l)?;
            let count = simplex_count(d, l)?;
            let _ = writeln!(tsv, "{d}\t{l}\t{s}\t{count}");
            rows.push(
                json!({"d": d, "l": l, "stirling": s.to_string(), "simplices": count.to_string()}),
            );
        }
    }
    Ok(ctx.emit(tsv, Value::Array(rows)))
}

fn fmt_point(x: &[u32]) -> String {
    format!(
        "({})",
        x.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    )
}

fn cmd_simplices(ctx: &Ctx, cmd: &SimplexCommand) -> CliResult<String> {
    match cmd {
        SimplexCommand::List { d, dims, t } => {
            let dims: Vec<usize> = match dims {
                Some(s) => parse_list(s)?.into_iter().map(|v| v as usize).collect(),
                None => (1..=*d).collect(),
            };
            if dims.iter().any(|&l| l == 0 || l > *d) {
                return Err(Error::Argument(format!("dimensions must lie in [1, {d}]")).into());
            }
            let t = t.as_deref().map(parse_list).transpose()?;
            let mut tsv = String::new();
            let mut rows = Vec::new();
            for id in enumerate_simplices(*d, &dims)? {
                match &t {
                    Some(t) => {
                        let pts = simplex_points(&id, t)?;
                        let _ = writeln!(
                            tsv,
                            "{id}\t{}",
                            pts.iter()
                                .map(|x| fmt_point(x))
                                .collect::<Vec<_>>()
                                .join(" ")
                        );
                        rows.push(json!({"id": id.to_string(), "points": pts}));
                    }
                    None => {
                        let _ = writeln!(tsv, "{id}");
                        rows.push(json!({"id": id.to_string()}));
                    }
                }
            }
            Ok(ctx.emit(tsv, Value::Array(rows)))
        }
        SimplexCommand::Classify { point } => {
            let x = parse_list(point)?;
            let (id, alpha) = classify_point(&x)?;
            let alpha_s = alpha
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",");
            Ok(ctx.emit(
                kv(&[("id", id.to_string()), ("alpha", alpha_s)]),
                json!({"id": id.to_string(), "alpha": alpha}),
            ))
        }
    }
}

fn cmd_construct(ctx: &Ctx, cmd: &ConstructCommand) -> CliResult<String> {
    let (name, input, chi, h, right) = match cmd {
        ConstructCommand::Sym { input, c, d } => {
            let h = load_hypergraph(&input.hypergraph)?;
            let psi = ctx.base_coloring(&h, *c, input.coloring.as_ref())?;
            let chi = constructions::simplex_balanced_coloring(&psi, *d)?;
            let right = disc_of_coloring(&h, &psi)?;
            ("sym", input, chi, h, right)
        }
        ConstructCommand::Shift { input, p, q, d } => {
            let h = load_hypergraph(&input.hypergraph)?;
            let c = p
                .checked_pow(*q)
                .ok_or_else(|| Error::Argument("p^q overflows".into()))?;
            let s = match (prime_power(*p), shift_reduced_dimension(c, *d)) {
                (Some((_, 1)), Some(s)) => s,
                _ => {
                    return Err(Error::Argument(format!(
                        "need prime p and d >= p^q, got p = {p}, q = {q}, d = {d}"
                    ))
                    .into())
                }
            };
            let psi = ctx.base_coloring(&h, c, input.coloring.as_ref())?;
            let inner = ctx.inner_coloring(&h, &psi, s)?;
            let right = product::product_disc_of_coloring(&h, &inner, ctx.cap)?;
            let chi = constructions::shift_reduced_coloring(inner, *p, *q, *d)?;
            ("shift", input, chi, h, right)
        }
        ConstructCommand::Block {
            input,
            c,
            d,
            dprime,
        } => {
            let h = load_hypergraph(&input.hypergraph)?;
            if *dprime < 2 || dprime > d {
                return Err(Error::Argument(format!(
                    "need 2 <= d' <= d, got d' = {dprime}, d = {d}"
                ))
                .into());
            }
            // gate failures surface before any search
            let gate = divisibility_gate(*c, *dprime)?;
            if let Some(row) = gate.first_failure() {
                return Err(Error::Precondition(format!(
                    "{c} does not divide {k}! * S({dprime},{k}) = {} at k = {k}",
                    row.simplices,
                    k = row.k
                ))
                .into());
            }
            let psi = ctx.base_coloring(&h, *c, input.coloring.as_ref())?;
            let inner = ctx.inner_coloring(&h, &psi, d - dprime + 1)?;
            let right = product::product_disc_of_coloring(&h, &inner, ctx.cap)?;
            let chi = constructions::block_reduced_coloring(inner, *d, *dprime)?;
            ("block", input, chi, h, right)
        }
    };
    let left = product::product_disc_of_coloring(&h, &chi, ctx.cap)?;
    let verdict = if left <= right { "holds" } else { "violated" };
    if let Some(path) = &input.out {
        write(path, &format!("{}\n", chi.to_json()))?;
    }
    let out = ctx.emit(
        kv(&[
            ("construction", name.to_string()),
            ("left", left.to_string()),
            ("right", right.to_string()),
            ("verdict", verdict.to_string()),
        ]),
        json!({"construction": name, "left": left.to_string(), "right": right.to_string(), "verdict": verdict}),
    );
    if verdict == "violated" {
        print!("{out}");
        return Err(Failure::Verification(format!("{name}: {left} > {right}")));
    }
    Ok(out)
}

fn cmd_bounds(ctx: &Ctx, cmd: &BoundsCommand) -> CliResult<String> {
    match cmd {
        BoundsCommand::MinM { k, d } => {
            let m = bounds::min_m_for_lower_bound(*k, *d)?;
            Ok(ctx.emit(
                kv(&[
                    ("k", k.to_string()),
                    ("d", d.to_string()),
                    ("m", m.to_string()),
                ]),
                json!({"k": k, "d": d, "m": m}),
            ))
        }
        BoundsCommand::Imbalance { coloring, t, kappa } => {
            let chi = load_document(coloring)?;
            let t = parse_list(t)?;
            let census = bounds::census(&chi, &t)?;
            let kappa = match kappa.or_else(|| census.kappa()) {
                Some(k) => k,
                None => {
                    return Err(
                        Error::Argument("every dimension is balanced; pass --kappa".into()).into(),
                    )
                }
            };
            let bound = bounds::imbalance_lower_bound(&census, kappa)?;
            let mut tsv = String::from("dim\tcounts\tmixed\n");
            for dc in &census.dims {
                let counts = dc
                    .counts
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                let _ = writeln!(tsv, "{}\t{counts}\t{}", dc.dim, dc.mixed);
            }
            let _ = writeln!(tsv, "kappa\t{kappa}");
            let _ = writeln!(tsv, "bound\t{bound}");
            Ok(ctx.emit(
                tsv,
                json!({"census": census, "kappa": kappa, "bound": bound.to_string()}),
            ))
        }
    }
}

fn cmd_ramsey(ctx: &Ctx, q: RamseyQuery, out: Option<&PathBuf>) -> CliResult<String> {
    let report = bounds::ramsey_search(&q)?;
    if let (Some(path), Some(cex)) = (out, &report.counterexample) {
        write(path, &format!("{}\n", cex.to_json()))?;
    }
    let line = match report.status {
        RamseyStatus::Determined { n } => format!("n = {n}"),
        RamseyStatus::Unknown { n_max } => format!("unknown up to n = {n_max}"),
        RamseyStatus::BudgetExceeded { at_n } => format!("budget exceeded at n = {at_n}"),
    };
    let cex_n = report.counterexample.as_ref().map(ProductColoring::n);
    Ok(ctx.emit(
        format!(
            "{line}\ncounterexample_n\t{}\nchecked\t{}\n",
            cex_n.map_or("-".into(), |n| n.to_string()),
            report.checked
        ),
        json!({"result": report.status, "counterexample_n": cex_n, "checked": report.checked}),
    ))
}

fn cmd_gen(cmd: &GenCommand) -> CliResult<String> {
    let (h, out) = match cmd {
        GenCommand::Complete { n, m, out } => (complete_uniform(*n, *m)?, out),
        GenCommand::Random {
            n,
            edges,
            max_size,
            seed,
            out,
        } => (random_hypergraph(*n, *edges, *max_size, *seed)?, out),
    };
    let text = write_hypergraph(&h);
    match out {
        Some(path) => {
            write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_verify(ctx: &Ctx, suite: &str, opts: VerifyOptions) -> CliResult<String> {
    let report = run_suite(suite, &opts).map_err(|e| match e {
        Error::Argument(m) => usage(m),
        other => Failure::Lib(other),
    })?;
    let verdict = if report.passed() { "pass" } else { "FAIL" };
    let mut tsv = String::from("suite\tproperty\tcases\tfailures\tnote\n");
    for p in &report.properties {
        let _ = writeln!(
            tsv,
            "{suite}\t{}\t{}\t{}\t{}",
            p.property,
            p.cases,
            p.failures,
            p.note.as_deref().unwrap_or("")
        );
    }
    if let Some(note) = report.properties.iter().find_map(|p| p.note.as_deref()) {
        let _ = writeln!(tsv, "{note}");
    }
    let total: u64 = report.properties.iter().map(|p| p.cases).sum();
    let _ = writeln!(tsv, "{verdict}, {total} cases");
    let out = ctx.emit(tsv, json!({"report": report, "verdict": verdict}));
    if report.passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification(format!("suite {suite} failed")))
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let ctx = Ctx {
        format: cli.format,
        cap: cli.cap,
        solver: ExactSolver {
            vertex_cap: cli.exact_cap,
        },
    };
    match &cli.command {
        Command::Disc {
            hypergraph,
            c,
            coloring,
            out,
        } => cmd_disc(&ctx, hypergraph, *c, coloring.as_ref(), out.as_ref()),
        Command::Eval {
            document,
            point,
            hypergraph,
        } => cmd_eval(&ctx, document, point.as_ref(), hypergraph.as_ref()),
        Command::Gate { c, d } => cmd_gate(&ctx, c, d),
        Command::Stirling { d, l } => cmd_stirling(&ctx, d, *l),
        Command::Simplices(cmd) => cmd_simplices(&ctx, cmd),
        Command::Construct(cmd) => cmd_construct(&ctx, cmd),
        Command::Bounds(cmd) => cmd_bounds(&ctx, cmd),
        Command::Ramsey {
            c,
            d,
            m,
            n_max,
            budget,
            out,
        } => {
            let mut q = RamseyQuery::new(*c, *d, *m, *n_max);
            q.budget = *budget;
            q.cap = ctx.cap;
            cmd_ramsey(&ctx, q, out.as_ref())
        }
        Command::Gen(cmd) => cmd_gen(cmd),
        Command::Verify {
            suite,
            seed,
            c,
            d,
            m,
            n_max,
        } => cmd_verify(
            &ctx,
            suite,
            VerifyOptions {
                seed: *seed,
                c: *c,
                d: *d,
                m: *m,
                n_max: *n_max,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Lib(e @ Error::Parse { .. }) => (2, e.to_string()),
                Failure::Lib(e @ (Error::Argument(_) | Error::Precondition(_))) => {
                    (3, e.to_string())
                }
                Failure::Lib(e @ (Error::Size { .. } | Error::Overflow(_))) => (4, e.to_string()),
                Failure::Io(m) | Failure::Usage(m) => (2, m),
                Failure::Verification(m) => (5, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
