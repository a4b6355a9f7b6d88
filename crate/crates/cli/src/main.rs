mod format;
mod table;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use coeffbounds::bounds::{self, Params};
use coeffbounds::extremal::{self, DEFAULT_ORDER};
use coeffbounds::harness::{self, HarnessConfig, Suite};
use coeffbounds::prokhorov::{self, BodySearch, MuNu};
use coeffbounds::Mode;

use crate::table::{Format, Quantity, Range, TableSpec};

/// Sharp coefficient bounds: evaluation, tables and verification.
#[derive(Debug, Parser)]
#[command(name = "coeffbounds", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bounds on |a2|, |a3|, |a4| with branch labels, thresholds and region.
    Bounds {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Evaluate quantities on an (alpha, gamma) grid.
    Table {
        /// LO:HI:STEPS or a single value.
        #[arg(long)]
        alpha: Range,
        /// LO:HI:STEPS or a single value.
        #[arg(long, default_value = "1")]
        gamma: Range,
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        quantities: Vec<Quantity>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification checks; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Coefficients of the extremal function with w(z) = z^i.
    Extremal {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long = "i")]
        index: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Region and Phi(mu, nu), optionally with the brute-force maximum.
    Phi {
        #[command(flatten)]
        point: MuNuArgs,
        /// Evaluation budget for the brute-force search.
        #[arg(long, value_name = "BUDGET")]
        oracle: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Region of (mu, nu).
    Classify {
        #[command(flatten)]
        point: MuNuArgs,
    },
}

#[derive(Debug, Args)]
struct MuNuArgs {
    #[arg(allow_negative_numbers = true, conflicts_with = "mu")]
    mu_pos: Option<f64>,
    #[arg(allow_negative_numbers = true, conflicts_with = "nu")]
    nu_pos: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
}

impl MuNuArgs {
    fn get(&self) -> Result<MuNu> {
        match (self.mu.or(self.mu_pos), self.nu.or(self.nu_pos)) {
            (Some(mu), Some(nu)) => Ok(MuNu::new(mu, nu)),
            _ => bail!("both mu and nu are required (positionally or via --mu/--nu)"),
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Evaluation budget for each chart optimization and oracle run.
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    /// Monte Carlo triples per campaign point.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Points per axis of the alpha and gamma grids.
    #[arg(long, default_value_t = 1000)]
    grid: usize,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report to stdout instead of the summary.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// A failed `verify` run, distinct from usage errors.
#[derive(Debug)]
struct Violations(usize);

impl std::fmt::Display for Violations {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} check(s) failed", self.0)
    }
}

impl std::error::Error for Violations {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Violations>() => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cmd {
        Command::Bounds { alpha, gamma } => cmd_bounds(&mut out, Params::new(alpha, gamma)?),
        Command::Table {
            alpha,
            gamma,
            quantities,
            format,
            out: path,
        } => {
            let spec = TableSpec {
                alpha,
                gamma,
                quantities,
                format,
            };
            let bytes = spec.render()?;
            match path {
                Some(p) => fs::write(&p, bytes).with_context(|| format!("writing {}", p.display())),
                None => Ok(out.write_all(&bytes)?),
            }
        }
        Command::Verify(args) => cmd_verify(&mut out, args),
        Command::Extremal {
            alpha,
            gamma,
            index,
            order,
        } => cmd_extremal(&mut out, Params::new(alpha, gamma)?, index, order),
        Command::Phi { point, oracle, seed } => cmd_phi(&mut out, point.get()?, oracle, seed),
        Command::Classify { point } => {
            let mn = point.get()?;
            writeln!(out, "region {}", prokhorov::classify(mn))?;
            Ok(())
        }
    }
}

fn kv(out: &mut impl Write, key: &str, value: impl std::fmt::Display) -> io::Result<()> {
    writeln!(out, "{key:<12}{value}")
}

fn cmd_bounds(out: &mut impl Write, p: Params) -> Result<()> {
    let r = bounds::report(p);
    let t = bounds::thresholds(p.alpha())?;
    let mn = MuNu::new(r.mu, r.nu);
    kv(out, "alpha", format::num(p.alpha()))?;
    kv(out, "gamma", format::num(p.gamma()))?;
    kv(out, "a2", format::num(r.a2_bound))?;
    kv(out, "a3", format::num(r.a3_bound))?;
    kv(out, "a3_branch", r.a3_branch)?;
    kv(out, "a4", format::num(r.a4_bound))?;
    kv(out, "a4_branch", r.a4_branch)?;
    kv(out, "mu", format::num(r.mu))?;
    kv(out, "nu", format::num(r.nu))?;
    kv(out, "gamma_half", format::num(t.gamma_half))?;
    kv(out, "gamma_2", format::num(t.gamma_2))?;
    kv(out, "gamma_4", format::num(t.gamma_4))?;
    kv(out, "gamma_nu", format::num(t.gamma_nu))?;
    kv(out, "gamma_a3", format::num(t.gamma_a3))?;
    kv(out, "region", prokhorov::classify(mn))?;
    kv(out, "phi", prokhorov::phi(mn).map_or("uncovered".into(), format::num))?;
    Ok(())
}

fn cmd_extremal(out: &mut impl Write, p: Params, i: usize, order: usize) -> Result<()> {
    let f = extremal::extremal_function(p, i, order)?;
    kv(out, "alpha", format::num(p.alpha()))?;
    kv(out, "gamma", format::num(p.gamma()))?;
    kv(out, "i", i)?;
    for (k, a) in f.iter().skip(1) {
        kv(out, &format!("a{k}"), format::complex(a))?;
    }
    let hits = extremal::attained(p, &f, 1e-9);
    if hits.is_empty() {
        kv(out, "attains", "none")?;
    }
    for h in hits {
        let branch = if h.coefficient == 2 {
            String::new()
        } else {
            format!(" {}", h.branch)
        };
        kv(
            out,
            "attains",
            format!("a{}{branch} (bound {})", h.coefficient, format::num(h.bound)),
        )?;
    }
    Ok(())
}

fn cmd_phi(out: &mut impl Write, mn: MuNu, oracle: Option<usize>, seed: u64) -> Result<()> {
    let region = prokhorov::classify(mn);
    let phi = prokhorov::phi(mn);
    kv(out, "mu", format::num(mn.mu))?;
    kv(out, "nu", format::num(mn.nu))?;
    kv(out, "region", region)?;
    kv(out, "phi", phi.map_or("uncovered".into(), format::num))?;
    if let Some(budget) = oracle {
        let found = prokhorov::phi_search(mn, BodySearch::new(budget, seed));
        kv(out, "oracle", format::num(found.value))?;
        kv(out, "evaluations", found.evaluations)?;
        if let Some(v) = phi {
            kv(out, "gap", format::num(v - found.value))?;
        }
    }
    Ok(())
}

fn cmd_verify(out: &mut impl Write, args: VerifyArgs) -> Result<()> {
    let cfg = HarnessConfig {
        alpha_points: args.grid,
        gamma_points: args.grid,
        samples: args.samples,
        budget: args.budget,
        seed: args.seed,
        mode: if args.sequential {
            Mode::Sequential
        } else {
            Mode::Parallel
        },
        ..HarnessConfig::default()
    };
    let start = Instant::now();
    let doc = harness::verify(args.suite, &cfg);
    let json = serde_json::to_string_pretty(&doc)? + "\n";
    if let Some(path) = &args.out {
        fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    if args.format == Some(Format::Json) {
        out.write_all(json.as_bytes())?;
    } else {
        for c in &doc.checks {
            writeln!(out, "{}", c.summary_line())?;
        }
        let failed = doc.checks.iter().filter(|c| !c.pass).count();
        writeln!(
            out,
            "verify --suite {}: {} checks, {} failed",
            doc.suite,
            doc.checks.len(),
            failed
        )?;
    }
    out.flush()?;
    eprintln!("elapsed {:.1}s", start.elapsed().as_secs_f64());
    let failed = doc.checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        return Err(Violations(failed).into());
    }
    Ok(())
}
