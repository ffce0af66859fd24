use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use acgw::cli::{generate, run_command, Command, GenKind};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "acgw", version, about = "Chain complexes, homology, snakes and long exact sequences in ACGW categories")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Complex,
    Exact,
    Map,
    Ses,
    Snake,
    StrongSnake,
    Linear,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every declared item; exits 1 on violations.
    Validate { file: PathBuf },
    /// Homology of every complex.
    Homology { file: PathBuf },
    /// Whether each complex is exact.
    Exact { file: PathBuf },
    /// The six-term zigzag of each snake diagram.
    Snake { file: PathBuf },
    /// The long exact sequence of each short exact sequence.
    Les { file: PathBuf },
    /// Spans induced on homology by each morphism, with a quasi-isomorphism verdict.
    MapHomology { file: PathBuf },
    /// Compare homology against ranks of the free complex.
    Oracle { file: PathBuf },
    /// Draw complexes and zigzags.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Print a random document.
    Gen {
        #[arg(long, value_enum, default_value_t = Kind::Complex)]
        kind: Kind,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest object size.
        #[arg(long)]
        size: Option<usize>,
    },
}

/// `-` reads standard input.
fn read(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = matches!(cli.output, Output::Json);
    let (cmd, file) = match &cli.cmd {
        Cmd::Validate { file } => (Command::Validate, file),
        Cmd::Homology { file } => (Command::Homology, file),
        Cmd::Exact { file } => (Command::Exact, file),
        Cmd::Snake { file } => (Command::Snake, file),
        Cmd::Les { file } => (Command::Les, file),
        Cmd::MapHomology { file } => (Command::MapHomology, file),
        Cmd::Oracle { file } => (Command::Oracle, file),
        Cmd::Render { file, format: Format::Dot } => (Command::Render, file),
        Cmd::Gen { kind, seed, size } => {
            let kind = match kind {
                Kind::Complex => GenKind::Complex,
                Kind::Exact => GenKind::Exact,
                Kind::Map => GenKind::Map,
                Kind::Ses => GenKind::Ses,
                Kind::Snake => GenKind::Snake,
                Kind::StrongSnake => GenKind::StrongSnake,
                Kind::Linear => GenKind::Linear,
            };
            return finish(generate(kind, *seed, *size, json));
        }
    };
    match read(file) {
        Ok(text) => finish(run_command(&text, cmd, json)),
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            ExitCode::from(2)
        }
    }
}

fn finish(o: acgw::cli::Outcome) -> ExitCode {
    let _ = std::io::stdout().write_all(o.stdout.as_bytes());
    let _ = std::io::stderr().write_all(o.stderr.as_bytes());
    ExitCode::from(o.code as u8)
}
