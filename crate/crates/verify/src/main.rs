use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ribet_verify::{list_suites, run_suite, HarnessError, SuiteConfig};

#[derive(Parser)]
#[command(name = "verify", about = "Run exact verification suites and write JSON reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite (or `all`).
    Run {
        suite: String,
        /// TOML run configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// First seed; the configured seed count is kept.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        prime: Option<u64>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Report path; the report goes to stdout when neither this nor the
        /// config names one.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the suite catalog.
    List {
        #[arg(long)]
        json: bool,
    },
}

fn run(
    suite: &str,
    config: Option<PathBuf>,
    seed: Option<u64>,
    prime: Option<u64>,
    jobs: Option<usize>,
    out: Option<PathBuf>,
) -> Result<i32, HarnessError> {
    let mut cfg = match &config {
        Some(p) => SuiteConfig::load(p)?,
        None => SuiteConfig::default(),
    };
    if let Some(s) = seed {
        cfg = cfg.with_base_seed(s);
    }
    if let Some(p) = prime {
        cfg.prime = p;
    }
    let report = run_suite(suite, &cfg, jobs)?;
    match out.or(cfg.out.clone().map(|o| cfg.base_dir.join(o))) {
        Some(path) => {
            report.write_atomic(&path)?;
            let s = &report.summary;
            eprintln!(
                "{suite}: {} checks, {} pass, {} fail, {} timeout -> {}",
                s.total,
                s.pass,
                s.fail,
                s.timeout,
                path.display()
            );
        }
        None => println!("{}", report.to_json()?),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List { json } => {
            if json {
                println!("{}", serde_json::to_string_pretty(list_suites()).expect("static catalog"));
            } else {
                for s in list_suites() {
                    println!("{:<24} [{}] {}", s.name, s.anchors.join(", "), s.description);
                }
            }
            ExitCode::SUCCESS
        }
        Command::Run { suite, config, seed, prime, jobs, out } => match run(&suite, config, seed, prime, jobs, out) {
            Ok(code) => ExitCode::from(code as u8),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
    }
}
