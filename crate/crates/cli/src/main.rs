use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use filiform_core::conformance::{check_feasible, DEFAULT_COORDINATE_LIMIT};
use filiform_core::Error;

mod commands;
mod output;

use output::Format;

/// Exact cohomology, cocycle families and deformations of the model
/// filiform Lie superalgebras L(n,m).
#[derive(Debug, Parser)]
#[command(name = "filiform-lab", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Run even when the cochain space exceeds --limit coordinates.
    #[arg(long, global = true)]
    force: bool,

    #[arg(long, default_value_t = DEFAULT_COORDINATE_LIMIT, global = true)]
    limit: usize,

    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Worker threads for the parallel kernels.
    #[arg(long, env = "FILIFORM_LAB_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct Dims {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The model algebra, or one read from a structure-constant file.
    Lnm {
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "input")]
        m: Option<usize>,
        /// Structure constants in JSON instead of the model algebra.
        #[arg(long, conflicts_with_all = ["n", "m"])]
        input: Option<PathBuf>,
        #[arg(value_enum, default_value_t = LnmAction::Info)]
        action: LnmAction,
    },
    /// Even 2-cocycles, whole or by block.
    Z2 {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t = PartArg::All)]
        part: PartArg,
        /// Also report coboundaries and dim H.
        #[arg(long)]
        with_h: bool,
    },
    /// Closed-form cocycle families with their verdicts.
    Families {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum)]
        kind: Kind,
        /// First index: k for psi and rho, i for varrho, p for f.
        #[arg(long, requires = "s")]
        k: Option<usize>,
        /// Second index: s for psi, rho and f, j for varrho.
        #[arg(long, requires = "k")]
        s: Option<usize>,
        /// Target index of rho: the shift-compatible one or the printed one.
        #[arg(long, value_enum, default_value_t = RhoIndexArg::Shifted)]
        rho_index: RhoIndexArg,
    },
    /// Solvability of the correction systems for f_{p,s}.
    Aps {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, requires = "s")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        s: Option<usize>,
    },
    /// Lower bound on the odd-odd cocycle dimension against the exact value.
    Bounds {
        #[command(flatten)]
        dims: Dims,
    },
    /// Checks L(n,m) + phi for a cochain phi read from JSON.
    Deform {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        phi: PathBuf,
        /// Highest order of the residuals and of the nilpotency check.
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Every closed-form statement about L(n,m) against the computation.
    Verify {
        #[command(flatten)]
        dims: Dims,
    },
    /// Seeded randomized identities: d o d = 0 and first-order residuals.
    Props {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LnmAction {
    Info,
    Dump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartArg {
    Psi,
    Rho,
    B,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Psi,
    Rho,
    Varrho,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RhoIndexArg {
    Shifted,
    Printed,
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Infeasible { .. }) => EXIT_INFEASIBLE,
        Some(
            Error::Malformed(_)
            | Error::OutOfRange(_)
            | Error::Precondition(_)
            | Error::InvalidPart(_)
            | Error::Json(_),
        ) => EXIT_USAGE,
        Some(_) => EXIT_MISMATCH,
        None if err.downcast_ref::<io::Error>().is_some() => EXIT_USAGE,
        None => EXIT_MISMATCH,
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().filter_map(|e| e.downcast_ref::<io::Error>()).any(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn guard(cli: &Cli, dims: Dims) -> filiform_core::Result<()> {
    if cli.force {
        return Ok(());
    }
    check_feasible(dims.n, dims.m, cli.limit)
}

fn run(cli: &Cli) -> anyhow::Result<output::Output> {
    match &cli.command {
        Command::Lnm { n, m, input, action } => commands::lnm(*n, *m, input.as_deref(), *action == LnmAction::Dump),
        Command::Z2 { dims, part, with_h } => {
            guard(cli, *dims)?;
            let part = match part {
                PartArg::Psi => Some("psi"),
                PartArg::Rho => Some("rho"),
                PartArg::B => Some("b"),
                PartArg::All => None,
            };
            commands::z2(dims.n, dims.m, part, *with_h)
        }
        Command::Families { dims, kind, k, s, rho_index } => {
            guard(cli, *dims)?;
            let printed = *rho_index == RhoIndexArg::Printed;
            commands::families(dims.n, dims.m, *kind, k.zip(*s), printed)
        }
        Command::Aps { dims, p, s } => {
            guard(cli, *dims)?;
            commands::aps(dims.n, dims.m, p.zip(*s))
        }
        Command::Bounds { dims } => {
            guard(cli, *dims)?;
            commands::bounds(dims.n, dims.m)
        }
        Command::Deform { dims, phi, order } => {
            guard(cli, *dims)?;
            commands::deform(dims.n, dims.m, phi, *order)
        }
        Command::Verify { dims } => {
            guard(cli, *dims)?;
            commands::verify(dims.n, dims.m)
        }
        Command::Props { dims, samples } => {
            guard(cli, *dims)?;
            commands::props(dims.n, dims.m, *samples, cli.seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = run(&cli).and_then(|out| {
        out.render(cli.format, io::stdout().lock())?;
        Ok(out.mismatch)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(EXIT_MISMATCH),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
