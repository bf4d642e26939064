use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use aoam_wigner::cli::{
    self, EvalPath, MarginalAxis, OutputFormat, OverlapMethod, PhaseGrid, ProbabilityMethod, Scale, StateInput,
};
use aoam_wigner::{InterferenceGeometry, Truncation, TwoQubitModes, WignerError, DEFAULT_ORACLE_NODES};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "aoam-wigner", version, about = "Wigner functions on the angle / OAM phase space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StateArgs {
    /// m0,m1,alpha,beta[,delta]
    #[arg(long, allow_hyphen_values = true)]
    qubit: Option<String>,
    /// kind,m0 with kind in phi+, phi-, psi+, psi-
    #[arg(long, allow_hyphen_values = true)]
    bell: Option<String>,
    /// m0,m1,n0,n1,beta,gamma,phi,a10,a01,a11[,d1,d2]
    #[arg(long, allow_hyphen_values = true)]
    two_qubit: Option<String>,
    /// m0,m1,a1,a2,a3[,delta]
    #[arg(long, allow_hyphen_values = true)]
    bloch: Option<String>,
    /// JSON file with {"delta": d, "coefficients": [[m, re, im], ...]}
    #[arg(long)]
    state_json: Option<PathBuf>,
}

#[derive(Args)]
struct JsonArgs {
    /// Rescale JSON coefficients instead of rejecting unnormalized input
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Wigner function on a grid
    Eval {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        json: JsonArgs,
        /// e.g. theta=-pi:pi:64,p=-3:3:121
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// closed | bilinear | oracle
        #[arg(long)]
        path: Option<String>,
        /// raw | two-pi-d
        #[arg(long, default_value = "raw")]
        scale: String,
        #[arg(long, default_value_t = DEFAULT_ORACLE_NODES)]
        nodes: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Angle or momentum marginal on a grid
    Marginal {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        json: JsonArgs,
        /// angle | momentum
        #[arg(long)]
        axis: String,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// OAM probabilities as JSON
    Probs {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        json: JsonArgs,
        /// analytic | quadrature
        #[arg(long, default_value = "analytic")]
        method: String,
        #[arg(long, default_value_t = 1000.0)]
        trunc_radius: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Overlap of two states (pass the same state flag twice, or mix --qubit and --bloch)
    Overlap {
        #[arg(long, allow_hyphen_values = true)]
        qubit: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        bloch: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        bell: Vec<String>,
        #[arg(long)]
        state_json: Vec<PathBuf>,
        #[command(flatten)]
        json: JsonArgs,
        /// direct | phase-space
        #[arg(long, default_value = "direct")]
        method: String,
        #[arg(long, default_value_t = 1000.0)]
        trunc_radius: f64,
    },
    /// Sinc identities and cross-checks of all evaluation paths
    Verify {
        #[arg(long, default_value_t = 1000.0)]
        trunc_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum and negative fraction of the Wigner function over a grid
    Negativity {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        json: JsonArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        path: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_NODES)]
        nodes: usize,
        #[arg(long, default_value_t = cli::NEGATIVITY_THRESHOLD)]
        threshold: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Torus spiral traced by the interference argument
    Spiral {
        /// m0,m1,n0,n1
        #[arg(long, allow_hyphen_values = true)]
        modes: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        alpha11: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        alpha01: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        vartheta_minus: String,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

enum Failure {
    Error(WignerError),
    Io(String),
    Verification,
}

impl From<WignerError> for Failure {
    fn from(e: WignerError) -> Self {
        Failure::Error(e)
    }
}

fn read_json(path: &PathBuf, normalize: bool) -> Result<StateInput, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(StateInput::from_json(&text, normalize)?)
}

fn state_from(args: &StateArgs, json: &JsonArgs) -> Result<StateInput, Failure> {
    Ok(match args {
        StateArgs { qubit: Some(q), .. } => StateInput::parse_qubit(q)?,
        StateArgs { bell: Some(b), .. } => StateInput::parse_bell(b)?,
        StateArgs { two_qubit: Some(t), .. } => StateInput::parse_two_qubit(t)?,
        StateArgs { bloch: Some(b), .. } => StateInput::parse_bloch(b)?,
        StateArgs { state_json: Some(p), .. } => read_json(p, json.normalize)?,
        _ => unreachable!("clap requires one state flag"),
    })
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn eval_path(text: &Option<String>, state: &StateInput) -> Result<EvalPath, Failure> {
    Ok(match text {
        Some(p) => p.parse()?,
        None => state.default_path(),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval { state, json, grid, path, scale, nodes, output } => {
            let state = state_from(&state, &json)?;
            let grid = PhaseGrid::parse(&grid, state.phase_axes())?;
            let path = eval_path(&path, &state)?;
            let result = cli::eval_grid(&state, &grid, path, scale.parse::<Scale>()?, nodes)?;
            emit(&result.render(output.format.parse::<OutputFormat>()?), &output.out)
        }
        Command::Marginal { state, json, axis, grid, output } => {
            let state = state_from(&state, &json)?;
            let axis: MarginalAxis = axis.parse()?;
            let grid = PhaseGrid::parse(&grid, state.marginal_axes(axis))?;
            let result = cli::marginal_grid(&state, axis, &grid)?;
            emit(&result.render(output.format.parse::<OutputFormat>()?), &output.out)
        }
        Command::Probs { state, json, method, trunc_radius, out } => {
            let state = state_from(&state, &json)?;
            let probs = cli::probabilities(
                &state,
                method.parse::<ProbabilityMethod>()?,
                &Truncation::with_radius(trunc_radius),
            )?;
            emit(&cli::probabilities_json(&probs), &out)
        }
        Command::Overlap { qubit, bloch, bell, state_json, json, method, trunc_radius } => {
            let mut states = Vec::new();
            for q in &qubit {
                states.push(StateInput::parse_qubit(q)?);
            }
            for b in &bloch {
                states.push(StateInput::parse_bloch(b)?);
            }
            for b in &bell {
                states.push(StateInput::parse_bell(b)?);
            }
            for p in &state_json {
                states.push(read_json(p, json.normalize)?);
            }
            if states.len() != 2 {
                return Err(WignerError::InvalidParameter(format!(
                    "overlap needs exactly two states, got {}",
                    states.len()
                ))
                .into());
            }
            let v = cli::overlap(
                &states[0],
                &states[1],
                method.parse::<OverlapMethod>()?,
                &Truncation::with_radius(trunc_radius),
            )?;
            println!("{v:.16e}");
            Ok(())
        }
        Command::Verify { trunc_radius, seed, out } => {
            let report = cli::verify(trunc_radius, seed)?;
            emit(&report.to_json(), &out)?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Negativity { state, json, grid, path, nodes, threshold, out } => {
            let state = state_from(&state, &json)?;
            let grid = PhaseGrid::parse(&grid, state.phase_axes())?;
            let path = eval_path(&path, &state)?;
            let report = cli::negativity(&state, &grid, path, nodes, threshold)?;
            emit(&(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"), &out)
        }
        Command::Spiral { modes, alpha11, alpha01, vartheta_minus, samples, output } => {
            let m: Vec<i32> = modes
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| WignerError::StateParse(format!("bad mode `{s}`"))))
                .collect::<Result<_, _>>()?;
            let [m0, m1, n0, n1] = m[..] else {
                return Err(WignerError::StateParse("--modes takes m0,m1,n0,n1".into()).into());
            };
            let geometry = InterferenceGeometry::new(
                TwoQubitModes::new(m0, m1, n0, n1)?,
                cli::parse_value(&alpha11)?,
                cli::parse_value(&alpha01)?,
            );
            let table =
                cli::spiral_table(&geometry, cli::parse_value(&vartheta_minus)?, samples, output.format.parse()?)?;
            emit(&table, &output.out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
    }
}
