use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use drinfeld::groups::Flavor;
use drinfeld::session::{
    case_name, check_golden, golden_dir, run, write_artifacts, Command, Format, SessionConfig, SessionError,
};

#[derive(Parser)]
#[command(name = "drinfeld", version, about = "Quotients of the Bruhat-Tits tree, harmonic cochains and congruences")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quotient graph as JSON and DOT
    Quotient(Opts),
    /// Integral basis of harmonic cochains
    Basis(Opts),
    /// Intersection pairing and S_Gamma
    Gram(Opts),
    /// Hecke operators for --v or all probes up to --probe-deg
    Hecke(Opts),
    /// Injectivity of (V | wV) from level n to level nv
    Ihara(Opts),
    /// Level-raising primes and their verification
    Congruences(Opts),
    /// The three-level tower over Gamma(n)
    Tower(Opts),
    /// Invariant suite and golden-file comparison
    Selftest(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Level, ascending coefficient codes, e.g. 1,1,0,1
    #[arg(long)]
    n: Option<String>,
    /// Prime v, same form as --n
    #[arg(long)]
    v: Option<String>,
    #[arg(long, default_value_t = 0)]
    r: u32,
    /// GammaN, Gamma0Only or Gamma0vR_cap_GammaN
    #[arg(long, default_value = "GammaN")]
    flavor: String,
    /// A single prime l (tower: upper bound on l)
    #[arg(long)]
    l: Option<u64>,
    #[arg(long = "probe-deg", default_value_t = 2)]
    probe_deg: usize,
    #[arg(long = "depth-cap", default_value_t = 32)]
    depth_cap: usize,
    #[arg(long, default_value_t = 16)]
    precision: i64,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// json, dot or csv; repeatable; default all the command supports
    #[arg(long)]
    format: Vec<String>,
    /// Also store the outputs as golden files (selftest: regenerate all)
    #[arg(long)]
    bless: bool,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn domain_error(e: &drinfeld::Error) -> ExitCode {
    let j = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
    println!("{j}");
    ExitCode::from(1)
}

fn init_threads() -> Result<(), String> {
    let Ok(s) = std::env::var("DRINFELD_THREADS") else {
        return Ok(());
    };
    let n: usize = s
        .parse()
        .map_err(|_| format!("DRINFELD_THREADS must be a positive integer, got {s:?}"))?;
    if n == 0 {
        return Err("DRINFELD_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        return usage_error(&e);
    }
    let (command, o) = match cli.command {
        Cmd::Quotient(o) => (Command::Quotient, o),
        Cmd::Basis(o) => (Command::Basis, o),
        Cmd::Gram(o) => (Command::Gram, o),
        Cmd::Hecke(o) => (Command::Hecke, o),
        Cmd::Ihara(o) => (Command::Ihara, o),
        Cmd::Congruences(o) => (Command::Congruences, o),
        Cmd::Tower(o) => (Command::Tower, o),
        Cmd::Selftest(o) => (Command::Selftest, o),
    };
    let Ok(flavor) = Flavor::parse(&o.flavor) else {
        return usage_error(&format!("unknown flavor {:?}", o.flavor));
    };
    let mut formats = Vec::new();
    for f in &o.format {
        match Format::parse(f) {
            Some(x) => formats.push(x),
            None => return usage_error(&format!("unknown format {f:?}")),
        }
    }
    let cfg = SessionConfig {
        q: o.q,
        n: o.n,
        v: o.v,
        r: o.r,
        flavor,
        l: o.l,
        probe_deg: o.probe_deg,
        depth_cap: o.depth_cap,
        precision: o.precision,
        formats,
    };
    let outcome = match run(command, &cfg) {
        Ok(x) => x,
        Err(SessionError::Usage(m)) => return usage_error(&m),
        Err(SessionError::Domain(e)) => return domain_error(&e),
    };
    if let Err(e) = write_artifacts(&o.out, &outcome.artifacts) {
        return domain_error(&e);
    }
    for a in &outcome.artifacts {
        println!("wrote {}", o.out.join(&a.name).display());
    }
    let mut ok = outcome.ok;
    if command == Command::Selftest {
        match check_golden(o.bless) {
            Ok(bad) if bad.is_empty() => {
                let verb = if o.bless { "blessed" } else { "match" };
                println!("golden files {verb} ({})", golden_dir().display());
            }
            Ok(bad) => {
                for b in &bad {
                    println!("golden mismatch: {b}");
                }
                ok = false;
            }
            Err(SessionError::Usage(m)) => return usage_error(&m),
            Err(SessionError::Domain(e)) => return domain_error(&e),
        }
    } else if o.bless {
        let dir = golden_dir().join(case_name(command, &cfg));
        if let Err(e) = write_artifacts(&dir, &outcome.artifacts) {
            return domain_error(&e);
        }
        println!("blessed into {}", dir.display());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        let j = serde_json::json!({ "error": { "kind": "SelftestFailed", "message": "one or more checks failed" } });
        println!("{j}");
        ExitCode::from(1)
    }
}
