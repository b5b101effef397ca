use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tubular::checks::{self, CHECK_NAMES};
use tubular::report::{render_table, run_check, run_suite, Params, Profile, Status};
use tubular::string_group::parse_elem;

#[derive(Parser)]
#[command(name = "tubular", version, about = "Exact checks for weighted projective lines of tubular type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one named check.
    Verify {
        /// Check name; `tubular list` prints them all.
        check: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run the batch suite.
    Suite {
        #[arg(long, default_value = "quick")]
        profile: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the coordinate algebra.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// List the registered checks.
    List,
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Dimension and monomial basis of one homogeneous component.
    Dim {
        /// Degree as `l*c + a1*x1 + ...`.
        #[arg(long)]
        degree: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Weight sequence, e.g. `6,3,2`.
    #[arg(long)]
    p: Option<String>,
    /// Tubular type: 2222, 333, 442 or 632.
    #[arg(long = "type")]
    ty: Option<String>,
    /// Comma-separated parameters of the extra points.
    #[arg(long)]
    lambda: Option<String>,
    /// rational, cyclotomic:p or prime:q.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    n_max: Option<i64>,
    #[arg(long)]
    band: Option<i64>,
    /// Subgroup generators, e.g. `3*x1; w`.
    #[arg(long)]
    gens: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    /// Plain `key = value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra `key=value` parameters.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    extra: Vec<String>,
    #[arg(long)]
    json: bool,
}

impl CommonOpts {
    fn params(&self) -> Result<Params> {
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Params::parse_config(&text)?
            }
            None => Params::new(),
        };
        let mut flags = Params::new();
        let strings = [
            ("p", &self.p),
            ("type", &self.ty),
            ("lambda", &self.lambda),
            ("field", &self.field),
            ("gens", &self.gens),
        ];
        for (k, v) in strings {
            if let Some(v) = v {
                flags.set(k, v);
            }
        }
        let numbers = [
            ("n_max", self.n_max.map(|v| v.to_string())),
            ("band", self.band.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("trials", self.trials.map(|v| v.to_string())),
        ];
        for (k, v) in numbers {
            if let Some(v) = v {
                flags.set(k, &v);
            }
        }
        for kv in &self.extra {
            let (k, v) = kv
                .split_once('=')
                .with_context(|| format!("`--set {kv}` expects KEY=VALUE"))?;
            flags.set(k, v);
        }
        Ok(base.merged(&flags))
    }
}

fn verify(check: &str, opts: &CommonOpts) -> Result<ExitCode> {
    let params = opts.params()?;
    eprintln!("running {check}");
    let report = run_check(check, &params)?;
    if opts.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", render_table(std::slice::from_ref(&report)));
        if let Some(c) = &report.counterexample {
            println!("counterexample: {c}");
        }
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn suite(profile: &str, seed: u64, as_json: bool) -> Result<ExitCode> {
    let profile = Profile::parse(profile)?;
    let start = Instant::now();
    eprintln!("running {profile:?} suite with seed {seed}");
    let reports = run_suite(profile, seed);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if as_json {
        let doc = json!({
            "reports": reports,
            "summary": { "total": reports.len(), "failed": failed },
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print!("{}", render_table(&reports));
        println!("{} checks, {} failed", reports.len(), failed);
    }
    eprintln!("suite finished in {:.1}s", start.elapsed().as_secs_f64());
    let code = if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if failed > 0 {
        1
    } else {
        0
    };
    Ok(ExitCode::from(code))
}

fn algebra_dim(degree: &str, opts: &CommonOpts) -> Result<ExitCode> {
    let params = opts.params()?;
    let weights = params.weights()?;
    let field = params.field(None)?;
    let pres = checks::default_presentation(&weights, field, &params.lambdas(field)?)?;
    let x = parse_elem(&weights, degree)?;
    let basis = pres.component_basis(&x);
    if opts.json {
        let exps: Vec<&[u32]> = basis.iter().map(|m| m.exponents()).collect();
        let doc = json!({
            "weights": weights.to_string(),
            "degree": x.to_string(),
            "dim": basis.len(),
            "mult": x.mult(),
            "basis": exps,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("degree {x} in S{weights}: dim {}", basis.len());
        for m in basis.iter() {
            println!("  {m}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { check, opts } => verify(&check, &opts),
        Command::Suite { profile, seed, json } => suite(&profile, seed, json),
        Command::Algebra(AlgebraCommand::Dim { degree, opts }) => algebra_dim(&degree, &opts),
        Command::List => {
            for name in CHECK_NAMES {
                println!("{name:<16} {}", checks::reference(name));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
