use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use collapse_cli::{
    cmd_analyze, cmd_classes, cmd_nichols, cmd_typed, Caps, CliError, Format, RunConfig, Toggle,
};

#[derive(Parser)]
#[command(
    name = "collapse",
    version,
    about = "Collapsing checks for Nichols algebras over conjugacy classes"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Fixture name or group file.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Comma-separated caps: order=, subgroup=, rows=, degree=, rack=.
    #[arg(long, global = true, default_value = "")]
    caps: String,
    #[arg(long, global = true, value_enum, default_value = "on")]
    probe_hilbert: Toggle,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Record wall times in the analysis document.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes with reality data.
    Classes,
    /// Full per-class analysis and verdicts.
    Analyze,
    /// Graded dimensions of a Nichols algebra.
    Nichols {
        /// dihedral:p, abelian:k, four-cycles, double:<rack>, or a rack literal.
        #[arg(long)]
        rack: String,
        /// constant:<root>, a root such as -1 or zeta3, or a cocycle literal.
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        cocycle: String,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Include the symmetrizer of this degree as exact JSON.
        #[arg(long)]
        dump_matrix: Option<usize>,
    },
    /// Type-D witnesses for one class or all.
    Typed {
        #[arg(long, default_value = "all")]
        class: String,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let c = cli.common;
    if c.threads == Some(0) {
        return Err(CliError::input("--threads must be positive"));
    }
    let config = RunConfig {
        group: c.group,
        caps: Caps::parse(&c.caps)?,
        probe_hilbert: c.probe_hilbert == Toggle::On,
        format: c.format,
        out: c.out,
        threads: c.threads,
        timing: c.timing,
    };
    if let Some(k) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::internal(e.to_string()))?;
    }
    let output = match cli.command {
        Command::Classes => cmd_classes(&config)?,
        Command::Analyze => cmd_analyze(&config)?,
        Command::Nichols {
            rack,
            cocycle,
            max_degree,
            dump_matrix,
        } => cmd_nichols(&config, &rack, &cocycle, max_degree, dump_matrix)?,
        Command::Typed { class } => cmd_typed(&config, &class)?,
    };
    let body = output.render(config.format);
    match &config.out {
        Some(path) => {
            std::fs::write(path, body)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            print!("{}", output.summary);
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| CliError::internal(e.to_string()))?;
        }
    }
    Ok(output.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
