//! `gspectra` command-line front end.
//!
//! Every command writes CSV files plus a `manifest.json` into `--out-dir`.
//! Exit codes: 0 success, 1 I/O or parse failure, 2 size limit exceeded,
//! 3 numerical non-convergence.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn io(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<gspectra::Error> for Failure {
    fn from(e: gspectra::Error) -> Self {
        use gspectra::Error as E;
        let code = match e {
            E::SizeLimit { .. } => 2,
            E::NoConvergence | E::Residual { .. } | E::Singular { .. } | E::Pairing { .. } | E::ZeroVector => 3,
            _ => 1,
        };
        let mut message = e.to_string();
        if code == 2 {
            message.push_str("; use truncate-spectrum to diagonalize the top PageRank nodes");
        }
        Failure { code, message }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gspectra",
    version,
    about = "Google matrix spectra, PageRank and random network models"
)]
struct Cli {
    /// Thread cap, recorded in the manifest. The linear algebra backend is single-threaded.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge list: one `src dst` pair per line, `#` comments, optional `# nodes=N`.
    pub input: PathBuf,
    /// Id of the first node in the file.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub index_base: u8,
    /// Keep repeated edges as multiplicities instead of collapsing them.
    #[arg(long)]
    pub keep_duplicates: bool,
    #[arg(long)]
    pub drop_self_loops: bool,
    /// Drop nodes without out-links once (residual dangling nodes remain).
    #[arg(long)]
    pub filter_dangling: bool,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// L1 change that stops the power iteration.
    #[arg(long, default_value_t = gspectra::ranking::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = gspectra::ranking::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full spectrum of the Google matrix with DOS, degeneracies and eigenvector PARs.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 0.85)]
        alpha: f64,
        /// Residual bound relative to the Frobenius norm.
        #[arg(long, default_value_t = gspectra::spectra::DEFAULT_EIGEN_TOL)]
        tol: f64,
        #[arg(long, default_value_t = gspectra::gmatrix::DEFAULT_DENSE_LIMIT)]
        dense_limit: usize,
        #[arg(long, default_value_t = gspectra::spectra::DEFAULT_ZERO_CUTOFF)]
        zero_cutoff: f64,
        #[arg(long, default_value_t = gspectra::spectra::DEFAULT_DEGENERACY_TOL)]
        degeneracy_tol: f64,
        /// Smoothing window of the density of relaxation rates.
        #[arg(long, default_value_t = 0.1)]
        dos_window: f64,
    },
    /// PageRank by power iteration.
    Pagerank {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 0.85)]
        alpha: f64,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Fidelity grid f(alpha, alpha') of PageRank vectors.
    Fidelity {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Comma-separated damping values.
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Participation ratio of PageRank as a function of alpha.
    ParCurve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Generate a random network.
    Generate {
        #[command(subcommand)]
        model: Model,
    },
    /// Degree-preserving randomization by edge-endpoint swaps.
    Randomize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Swap attempts; defaults to ten per edge.
        #[arg(long)]
        swaps: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        allow_self_loops: bool,
    },
    /// In- and out-degree distributions with cumulative fractions.
    DegreeDist {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Spectra of the Google matrix restricted to the top PageRank nodes.
    TruncateSpectrum {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 0.85)]
        alpha: f64,
        /// Comma-separated subset sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Damping of the PageRank used to order the nodes.
        #[arg(long, default_value_t = 0.85)]
        rank_alpha: f64,
        #[arg(long, default_value_t = gspectra::spectra::DEFAULT_EIGEN_TOL)]
        tol: f64,
        #[arg(long, default_value_t = gspectra::gmatrix::DEFAULT_DENSE_LIMIT)]
        dense_limit: usize,
    },
}

#[derive(Debug, Args)]
pub struct AbArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    /// Probability of a link-addition step.
    #[arg(long, default_value_t = 0.2)]
    pub p: f64,
    /// Probability of a rewiring step.
    #[arg(long, default_value_t = 0.1)]
    pub q: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub self_loops: bool,
    /// Start from a directed ring instead of a bidirectional clique.
    #[arg(long)]
    pub ring_seed: bool,
    #[arg(long, default_value_t = 100)]
    pub max_retries: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Forbidden {
    Omit,
    Redraw,
}

#[derive(Debug, Subcommand)]
pub enum Model {
    /// Albert-Barabási growth.
    Ab {
        #[command(flatten)]
        ab: AbArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// AB growth restricted to links inside color classes.
    Color {
        #[command(flatten)]
        ab: AbArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Probability that a new node founds a new color.
        #[arg(long, default_value_t = 0.01)]
        eta: f64,
        /// Probability that a link between colors is kept anyway.
        #[arg(long, default_value_t = 0.001)]
        epsilon: f64,
        #[arg(long, default_value_t = 3)]
        initial_colors: usize,
        /// Fate of a rejected link between colors.
        #[arg(long, value_enum, default_value = "redraw")]
        forbidden: Forbidden,
    },
    /// Avrachenkov-Lebedev growth with link multiplicities.
    Al {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let threads = cli.threads;
    match cli.command {
        Command::Spectrum {
            input,
            out,
            alpha,
            tol,
            dense_limit,
            zero_cutoff,
            degeneracy_tol,
            dos_window,
        } => commands::spectrum(
            &input,
            &out,
            threads,
            commands::SpectrumOptions {
                alpha,
                tol,
                dense_limit,
                zero_cutoff,
                degeneracy_tol,
                dos_window,
            },
        ),
        Command::Pagerank {
            input,
            out,
            alpha,
            rank,
        } => commands::pagerank(&input, &out, threads, alpha, &rank),
        Command::Fidelity {
            input,
            out,
            alphas,
            rank,
        } => commands::fidelity(&input, &out, threads, &alphas, &rank),
        Command::ParCurve {
            input,
            out,
            alphas,
            rank,
        } => commands::par_curve(&input, &out, threads, &alphas, &rank),
        Command::Generate { model } => commands::generate(model, threads),
        Command::Randomize {
            input,
            out,
            swaps,
            seed,
            allow_self_loops,
        } => commands::randomize(&input, &out, threads, swaps, seed, allow_self_loops),
        Command::DegreeDist { input, out } => commands::degree_dist(&input, &out, threads),
        Command::TruncateSpectrum {
            input,
            out,
            alpha,
            sizes,
            rank_alpha,
            tol,
            dense_limit,
        } => commands::truncate_spectrum(
            &input,
            &out,
            threads,
            alpha,
            &sizes,
            gspectra::spectra::TruncationOptions {
                rank_alpha,
                eigen_tol: tol,
                dense_limit,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gspectra: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
