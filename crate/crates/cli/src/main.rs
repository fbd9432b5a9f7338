mod ranges;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nfext::charts::{self, ChartFormat};
use nfext::cobar::{ext_table, limit_report, localization_check, stable_level, ExtRow};
use nfext::grading::F2Element;
use nfext::hopf::{check_axioms, eta_r_negative, eta_r_positive, NegativeConeClass};
use nfext::xadic;
use nfext::{CobarModel, CobarMonomial, KoszulModel, RO2Degree, TruncationLevel};
use serde::Serialize;

use ranges::{parse_levels, parse_range, parse_u32_range};

#[derive(Parser)]
#[command(name = "nfext", version, about = "Ext over truncated polynomial Hopf algebras in RO(C2) grading")]
struct Cli {
    /// Worker threads; 0 uses every available core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write the document here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ext in one tridegree.
    Ext(ExtArgs),
    /// Ext over a window of tridegrees.
    ExtTable(ExtTableArgs),
    /// Completed Ext: the inverse limit over truncation levels with u inverted.
    LimitExt(LimitArgs),
    #[command(subcommand)]
    Verify(Verify),
    /// Stage-t page of the x-adic spectral sequence and its differential.
    Xadic(XadicArgs),
    /// Adams-style chart of E∞.
    Chart(ChartArgs),
    /// Right unit on a polynomial in a, u or on a negative-cone class.
    Etar(EtarArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Cobar,
    Koszul,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
}

#[derive(Args)]
struct ExtArgs {
    #[arg(long)]
    n: TruncationLevel,
    #[arg(long)]
    s: u32,
    #[arg(long, allow_hyphen_values = true)]
    p: i64,
    #[arg(long, allow_hyphen_values = true)]
    q: i64,
    #[arg(long)]
    invert_u: bool,
    #[arg(long, value_enum, default_value = "cobar")]
    engine: Engine,
}

#[derive(Args)]
struct ExtTableArgs {
    #[arg(long)]
    n: TruncationLevel,
    #[arg(long, default_value = "0..3")]
    s: String,
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long)]
    invert_u: bool,
    #[arg(long, value_enum, default_value = "cobar")]
    engine: Engine,
    #[arg(long, value_enum, default_value = "tsv")]
    format: TableFormat,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long)]
    s: u32,
    #[arg(long, allow_hyphen_values = true)]
    p: i64,
    #[arg(long, allow_hyphen_values = true)]
    q: i64,
    /// First truncation level; defaults to one past which the system is constant.
    #[arg(long)]
    n_start: Option<u32>,
    #[arg(long, default_value_t = 2)]
    depth: u32,
    #[arg(long, value_enum, default_value = "koszul")]
    engine: Engine,
}

#[derive(Subcommand)]
enum Verify {
    /// Hopf algebra and comodule axioms.
    Axioms {
        #[arg(long, default_value = "1..4,inf")]
        n: String,
        #[arg(long, default_value_t = 15)]
        letters: u64,
        #[arg(long, default_value_t = 6)]
        window: u32,
    },
    /// d(u^{2^r(2m+1)}) ≡ u^{2^{r+1}m} a^{2^{r+1}} [x^{2^r}] modulo letters above 2^r.
    Coboundary {
        #[arg(long)]
        r: String,
        #[arg(long)]
        m: String,
        /// Levels; pairs with n <= r are skipped.
        #[arg(long)]
        n: String,
    },
    /// Cobar Ext of F2[a, u] against the closed-form E∞ count.
    Einfty {
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 12)]
        window: i64,
        #[arg(long, default_value_t = 6)]
        smax: u32,
    },
    /// Completed Ext vanishes for p + q < 0 apart from a^{-q} at s = 0, p = 0.
    Vanishing {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Range of p + q.
        #[arg(long, allow_hyphen_values = true)]
        budget: String,
        #[arg(long, default_value_t = 6)]
        smax: u32,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, value_enum, default_value = "koszul")]
        engine: Engine,
    },
    /// Ext with u inverted against Ext of F2[a, u] shifted by multiples of u^{2^n}.
    Localization {
        #[arg(long, default_value = "1..2")]
        n: String,
        #[arg(long, default_value = "0..3")]
        s: String,
        /// Tridegrees with |p|, |q| <= sample are compared.
        #[arg(long, default_value_t = 4)]
        sample: i64,
        #[arg(long, default_value_t = 12)]
        window: i64,
    },
}

#[derive(Args)]
struct XadicArgs {
    #[arg(long)]
    n: TruncationLevel,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    s: u32,
    #[arg(long, allow_hyphen_values = true)]
    p: i64,
    #[arg(long, allow_hyphen_values = true)]
    q: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartFormatArg {
    Svg,
    Tsv,
    Json,
}

#[derive(Args)]
struct ChartArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "0..7")]
    stems: String,
    #[arg(long, default_value_t = 8)]
    smax: u32,
    /// σ-slice; 0 gives integer stems.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    sigma: i64,
    /// Completed E₂ (u inverted, limit over n) instead of the uncompleted n = ∞ chart.
    #[arg(long, conflicts_with = "conjectural_d2")]
    completed: bool,
    #[arg(long)]
    conjectural_d2: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    format: ChartFormatArg,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["theta", "poly"]))]
struct EtarArgs {
    /// Negative-cone class θ/(a^i u^j).
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    theta: Option<Vec<u32>>,
    /// Polynomial in a and u, e.g. "a^3 + u^2".
    poly: Option<String>,
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| run(&cli.command));
    match result.and_then(|(doc, outcome)| emit(cli.output.as_ref(), &doc).map(|_| outcome)) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: Option<&PathBuf>, doc: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, doc).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(doc.as_bytes())?;
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn verdict(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn run(command: &Command) -> Result<(String, Outcome)> {
    match command {
        Command::Ext(args) => cmd_ext(args),
        Command::ExtTable(args) => cmd_ext_table(args),
        Command::LimitExt(args) => cmd_limit(args),
        Command::Verify(v) => cmd_verify(v),
        Command::Xadic(args) => cmd_xadic(args),
        Command::Chart(args) => cmd_chart(args),
        Command::Etar(args) => cmd_etar(args),
    }
}

fn cmd_ext(args: &ExtArgs) -> Result<(String, Outcome)> {
    let rows = table(
        args.engine,
        args.n,
        args.invert_u,
        args.s..=args.s,
        args.p..=args.p,
        args.q..=args.q,
    )?;
    Ok((json(&rows[0])?, Outcome::Pass))
}

fn table(
    engine: Engine,
    n: TruncationLevel,
    invert_u: bool,
    s: std::ops::RangeInclusive<u32>,
    p: std::ops::RangeInclusive<i64>,
    q: std::ops::RangeInclusive<i64>,
) -> Result<Vec<ExtRow>> {
    Ok(match engine {
        Engine::Cobar => ext_table(&CobarModel, n, invert_u, s, p, q)?,
        Engine::Koszul => ext_table(&KoszulModel, n, invert_u, s, p, q)?,
    })
}

fn cmd_ext_table(args: &ExtTableArgs) -> Result<(String, Outcome)> {
    let rows = table(
        args.engine,
        args.n,
        args.invert_u,
        parse_u32_range(&args.s)?,
        parse_range(&args.p)?,
        parse_range(&args.q)?,
    )?;
    let doc = match args.format {
        TableFormat::Json => json(&rows)?,
        TableFormat::Tsv => {
            let mut out = String::from("s\tp\tq\tn\tdim\tbasis\n");
            for r in &rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.s,
                    r.p,
                    r.q,
                    r.n,
                    r.dim,
                    r.basis.join("; ")
                ));
            }
            out
        }
    };
    Ok((doc, Outcome::Pass))
}

fn cmd_limit(args: &LimitArgs) -> Result<(String, Outcome)> {
    let d = RO2Degree::new(args.p, args.q);
    let start = args.n_start.unwrap_or_else(|| stable_level(d));
    let report = match args.engine {
        Engine::Cobar => limit_report(&CobarModel, args.s, d, start, args.depth)?,
        Engine::Koszul => limit_report(&KoszulModel, args.s, d, start, args.depth)?,
    };
    let outcome = verdict(report.limit_dim.is_some());
    Ok((json(&report)?, outcome))
}

/// Human-readable lines followed by a one-line JSON summary.
fn report<T: Serialize>(lines: Vec<String>, passed: bool, summary: &T) -> Result<(String, Outcome)> {
    let mut out = String::new();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    out.push_str(&serde_json::to_string(summary)?);
    out.push('\n');
    Ok((out, verdict(passed)))
}

#[derive(Serialize)]
struct Summary<T> {
    check: &'static str,
    passed: bool,
    details: T,
}

fn cmd_verify(v: &Verify) -> Result<(String, Outcome)> {
    match v {
        Verify::Axioms { n, letters, window } => {
            let reports: Vec<_> = parse_levels(n)?
                .into_iter()
                .map(|level| check_axioms(level, *letters, *window))
                .collect();
            let lines = reports
                .iter()
                .map(|r| match &r.failure {
                    None => format!("n={} checks={} ok", r.level, r.checks),
                    Some(f) => format!("n={} {} failed at {}", r.level, f.axiom, f.witness),
                })
                .collect();
            let passed = reports.iter().all(|r| r.passed());
            report(lines, passed, &Summary { check: "axioms", passed, details: &reports })
        }
        Verify::Coboundary { r, m, n } => {
            let levels = parse_levels(n)?;
            let mut reports = Vec::new();
            for r in parse_u32_range(r)? {
                for m in parse_u32_range(m)? {
                    for &level in levels.iter().filter(|l| l.admits(1 << r)) {
                        reports.push(xadic::verify_coboundary(r, m, level)?);
                    }
                }
            }
            if reports.is_empty() {
                bail!("no level exceeds r; nothing to check");
            }
            let lines = reports
                .iter()
                .map(|c| {
                    format!(
                        "r={} m={} n={} {}: {} ≡ {}",
                        c.r,
                        c.m,
                        c.n,
                        if c.passed { "ok" } else { "MISMATCH" },
                        c.truncated,
                        c.expected
                    )
                })
                .collect();
            let passed = reports.iter().all(|c| c.passed);
            report(lines, passed, &Summary { check: "coboundary", passed, details: &reports })
        }
        Verify::Einfty { n, window, smax } => {
            let r = xadic::verify_einfty(&parse_levels(n)?, *smax, *window)?;
            let mut lines = vec![format!(
                "levels={} smax={} window={} cells={} total_dim={}",
                r.levels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","),
                r.s_max,
                r.window,
                r.cells,
                r.total_dim
            )];
            lines.extend(r.mismatches.iter().map(|c| {
                format!("mismatch n={} s={} p={} q={}: cobar {} closed form {}", c.n, c.s, c.p, c.q, c.computed, c.expected)
            }));
            let passed = r.passed();
            report(lines, passed, &Summary { check: "einfty", passed, details: &r })
        }
        Verify::Vanishing { p, budget, smax, depth, engine } => {
            let (p, budget) = (parse_range(p)?, parse_range(budget)?);
            if *budget.end() >= 0 {
                bail!("--budget must lie in p + q < 0");
            }
            let r = match engine {
                Engine::Koszul => xadic::verify_vanishing(&KoszulModel, p, budget, *smax, *depth)?,
                Engine::Cobar => xadic::verify_vanishing(&CobarModel, p, budget, *smax, *depth)?,
            };
            let mut lines = vec![format!("engine={} cells={} nonzero={}", r.engine, r.cells, r.nonzero)];
            lines.extend(r.violations.iter().map(|c| {
                format!("violation s={} p={} q={}: limit {:?} basis {:?}", c.s, c.p, c.q, c.limit_dim, c.basis)
            }));
            let passed = r.passed();
            report(lines, passed, &Summary { check: "vanishing", passed, details: &r })
        }
        Verify::Localization { n, s, sample, window } => {
            let mut reports = Vec::new();
            for level in parse_levels(n)? {
                let Some(n) = level.number() else {
                    bail!("localization needs finite levels");
                };
                for s in parse_u32_range(s)? {
                    for p in -sample..=*sample {
                        for q in -sample..=*sample {
                            reports.push(localization_check(s, RO2Degree::new(p, q), n, *window)?);
                        }
                    }
                }
            }
            let bad: Vec<_> = reports.iter().filter(|r| !r.agrees()).collect();
            let mut lines = vec![format!("tridegrees={}", reports.len())];
            lines.extend(bad.iter().map(|r| {
                format!("disagree n={} s={} p={} q={}: inverted {} shifted {:?}", r.n, r.s, r.p, r.q, r.inverted_dim, r.shifted)
            }));
            let passed = bad.is_empty();
            report(lines, passed, &Summary { check: "localization", passed, details: &bad })
        }
    }
}

#[derive(Serialize)]
struct StageDoc {
    n: TruncationLevel,
    t: u32,
    s: u32,
    p: i64,
    q: i64,
    basis: Vec<String>,
    differentials: Vec<StageDifferential>,
}

#[derive(Serialize)]
struct StageDifferential {
    source: String,
    target: String,
}

fn cmd_xadic(args: &XadicArgs) -> Result<(String, Outcome)> {
    let d = RO2Degree::new(args.p, args.q);
    let basis = xadic::xadic_stage(args.n, args.t, args.s, d)?;
    let differentials = basis
        .iter()
        .map(|m| {
            Ok(StageDifferential {
                source: m.to_string(),
                target: xadic::xadic_differential(args.n, args.t, m)?.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let doc = StageDoc {
        n: args.n,
        t: args.t,
        s: args.s,
        p: args.p,
        q: args.q,
        basis: basis.iter().map(|m| m.to_string()).collect(),
        differentials,
    };
    Ok((json(&doc)?, Outcome::Pass))
}

fn cmd_chart(args: &ChartArgs) -> Result<(String, Outcome)> {
    let stems = parse_range(&args.stems)?;
    let chart = if args.completed {
        charts::slice_chart(args.sigma, stems, args.smax, None)?
    } else {
        charts::uncompleted_chart(args.sigma, stems, args.smax)
    };
    let overlay = if args.conjectural_d2 {
        let overlay = charts::conjectural_d2_overlay(&chart);
        for d in &overlay.dropped {
            eprintln!("dropped d2 {} -> {}: {}", d.source, d.target, d.reason);
        }
        overlay.arrows
    } else {
        Vec::new()
    };
    let format = match args.format {
        ChartFormatArg::Svg => ChartFormat::Svg,
        ChartFormatArg::Tsv => ChartFormat::Tsv,
        ChartFormatArg::Json => ChartFormat::Json,
    };
    Ok((charts::render(&chart, &overlay, format), Outcome::Pass))
}

fn cmd_etar(args: &EtarArgs) -> Result<(String, Outcome)> {
    let line = match (&args.theta, &args.poly) {
        (Some(ij), _) => eta_r_negative(NegativeConeClass::new(ij[0], ij[1])).to_string(),
        (None, Some(poly)) => {
            let terms = poly
                .split('+')
                .map(|t| t.trim().parse::<CobarMonomial>())
                .collect::<Result<F2Element<_>, _>>()
                .map_err(|e| anyhow::anyhow!("cannot parse `{poly}`: {e}"))?;
            eta_r_positive(&terms)?.to_string()
        }
        (None, None) => bail!("give --theta I J or a polynomial"),
    };
    Ok((format!("{line}\n"), Outcome::Pass))
}
