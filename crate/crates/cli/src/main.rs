mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exact Whitehead and Reidemeister torsion of based complexes over group rings.
#[derive(Parser)]
#[command(name = "whtorsion", version)]
struct Cli {
    /// Print a single JSON document instead of text lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reidemeister torsion of a complex file under a representation.
    Torsion {
        file: PathBuf,
        /// `n=<modulus>;g0=<e0>,g1=<e1>,...`; defaults to every generator to ζ.
        #[arg(long)]
        rep: Option<String>,
        /// Also report the torsion under every twist t -> ζ^d.
        #[arg(long)]
        all_d: bool,
    },
    /// Write the cellular complex of L(p,q).
    LensEmit {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homotopy, simple homotopy and torsion verdicts for L(p,q) vs L(p,q2).
    LensClassify {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        q2: i64,
        /// List both torsions under every twist d.
        #[arg(long)]
        all_d: bool,
    },
    /// Compare the two lens complexes over Z/p * Z/p under η, ν -> ζ.
    DemoFreeproduct {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        q2: i64,
    },
    /// Replay a certificate and compare start and end fingerprints.
    VerifyCert {
        file: PathBuf,
        /// Representations to compare under; repeatable.
        #[arg(long)]
        rep: Vec<String>,
    },
    /// Generate a random certificate starting at L(p,q).
    GenCert {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long, default_value_t = 50)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match cli.command {
        Command::Torsion { file, rep, all_d } => commands::torsion(&file, rep.as_deref(), all_d),
        Command::LensEmit { p, q, out } => commands::lens_emit(p, q, out.as_deref()),
        Command::LensClassify { p, q, q2, all_d } => commands::lens_classify(p, q, q2, all_d),
        Command::DemoFreeproduct { p, q, q2 } => commands::demo_freeproduct(p, q, q2),
        Command::VerifyCert { file, rep } => commands::verify_cert(&file, &rep),
        Command::GenCert { p, q, length, seed, out } => commands::gen_cert(p, q, length, seed, out.as_deref()),
    };
    if cli.json {
        print!("{}", report.render_json());
    } else {
        print!("{}", report.render_human());
    }
    ExitCode::from(report.exit_code)
}
