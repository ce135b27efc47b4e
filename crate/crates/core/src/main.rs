use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use splitseq::cli::{
    self, error_value, CommandOutput, Job, JobConfig, OutputFormat, SequenceRequest, EXIT_INPUT_ERROR,
};
use splitseq::sequences::Method;
use splitseq::Error;

#[derive(Parser)]
#[command(
    name = "splitseq",
    version,
    about = "Recurrent sequences that decide how primes split in a Galois number field",
    after_help = "The trial-division bound for exceptional-prime reporting defaults to $SPLITSEQ_TRIAL_BOUND, else 1000000."
)]
struct Cli {
    /// Output format; overrides the config's "format".
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Matrix,
    Direct,
    Trace,
}

#[derive(Subcommand)]
enum Command {
    /// Field, generator, Galois group, det of the group matrix and initial terms.
    Analyze { config: PathBuf },
    /// Terms of the sequences a_(K_j, i).
    Sequences {
        config: PathBuf,
        /// Class label j of K_j (1-based); all classes when omitted.
        #[arg(long)]
        class: Option<usize>,
        #[arg(long, default_value_t = 0)]
        from: usize,
        /// Last index, inclusive (default d - 1).
        #[arg(long)]
        to: Option<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Matrix)]
        method: MethodArg,
    },
    /// Classify primes up to a bound and report exceptional primes.
    Classify {
        config: PathBuf,
        #[arg(long)]
        max_prime: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Character table of the Galois group.
    Chartab { config: PathBuf },
    /// Run every invariant check; exit status 1 on any failure.
    Verify { config: PathBuf },
}

impl Command {
    fn config_path(&self) -> &PathBuf {
        match self {
            Command::Analyze { config }
            | Command::Sequences { config, .. }
            | Command::Classify { config, .. }
            | Command::Chartab { config }
            | Command::Verify { config } => config,
        }
    }
}

fn load(cli: &Cli) -> Result<JobConfig, Error> {
    let path = cli.command.config_path();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), format!("cannot read: {e}")))?;
    let mut config = cli::parse_config(&text)?;
    if let Some(f) = cli.format {
        config.format = match f {
            Format::Json => OutputFormat::Json,
            Format::Table => OutputFormat::Table,
        };
    }
    Ok(config)
}

fn run(cli: &Cli, config: JobConfig) -> Result<CommandOutput, Error> {
    if let Command::Verify { .. } = cli.command {
        return cli::verify_config(config);
    }
    let job = Job::from_config(config)?;
    match &cli.command {
        Command::Analyze { .. } => cli::analyze(&job),
        Command::Sequences { class, from, to, method, .. } => {
            if *class == Some(0) {
                return Err(Error::config("--class", "classes are numbered from 1"));
            }
            let method = match method {
                MethodArg::Matrix => Method::Matrix,
                MethodArg::Direct => Method::Direct,
                MethodArg::Trace => Method::Trace,
            };
            cli::sequences(&job, SequenceRequest { class: class.map(|j| j - 1), from: *from, to: *to, method })
        }
        Command::Classify { max_prime, jobs, .. } => cli::classify(&job, *max_prime, *jobs),
        Command::Chartab { .. } => cli::chartab(&job),
        Command::Verify { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut format = cli.format.map_or(OutputFormat::Json, |f| match f {
        Format::Json => OutputFormat::Json,
        Format::Table => OutputFormat::Table,
    });
    let result = load(&cli).and_then(|config| {
        format = config.format;
        run(&cli, config)
    });
    match result {
        Ok(out) => {
            print!("{}", out.render(format));
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            match format {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&error_value(&e)).expect("serializable")),
                OutputFormat::Table => eprintln!("error: {e}"),
            }
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
