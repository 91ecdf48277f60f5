use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "ird",
    version,
    about = "Irrep-distilled long-range Ising chain calculations",
    args_override_self = true
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Serialize)]
pub struct Common {
    /// Number of sites (even).
    #[arg(long, global = true, default_value_t = 12)]
    pub n: usize,
    /// Interpolation parameter; field coefficient is s - 1.
    #[arg(long, global = true, default_value_t = 0.4)]
    pub s: f64,
    /// Power-law exponent of the pair coupling.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub alpha: f64,
    /// key=value file; command-line flags win on conflict.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Tier::Paper)]
    pub tier: Tier,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Output directory; the IRD_OUT environment variable takes precedence.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Quick,
    Paper,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QptMode {
    Gqpt,
    Dqpt,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialState {
    Z,
    X,
    Ghz,
    Scs,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Full distilled spectrum with symmetric population and spin number.
    Spectrum(SpectrumArgs),
    /// Scar detection, optionally paired against exact eigenstates.
    Scars(ScarsArgs),
    /// Compare the distilled Hamiltonian with the exact projection, or run the reproduction suite.
    Validate(ValidateArgs),
    /// Time-averaged Loschmidt echo over coherent states, or one echo trace.
    Loschmidt(LoschmidtArgs),
    /// Collective observables after a quench.
    Quench(QuenchArgs),
    /// Ground-state and dynamical order parameters against s.
    Qpt(QptArgs),
    /// Finite-size scaling collapse of the scar energy variance.
    Fssa(FssaArgs),
    /// Two-body entanglement entropy of the scars.
    Twobody(TwobodyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct SpectrumArgs {
    /// Also write the Hamiltonian as a binary dump.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ScarsArgs {
    /// Pair with exact eigenstates (N <= 14).
    #[arg(long)]
    pub exact: bool,
    #[arg(long, default_value_t = 20)]
    pub theta_points: usize,
    #[arg(long, default_value_t = 40)]
    pub phi_points: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    /// Number of random distilled states to check through the exact Hamiltonian.
    #[arg(long, default_value_t = 0)]
    pub random_states: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run the reproduction suite instead of a single-point comparison.
    #[arg(long)]
    pub suite: bool,
    /// Restrict the suite to these criteria, e.g. 1,2,13.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<u8>,
}

#[derive(Args, Debug, Serialize)]
pub struct LoschmidtArgs {
    #[arg(long, default_value_t = 20)]
    pub theta_points: usize,
    #[arg(long, default_value_t = 40)]
    pub phi_points: usize,
    #[arg(long, default_value_t = 20.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 400)]
    pub t_points: usize,
    /// With --phi, emit the echo trace at one coherent state instead of the map.
    #[arg(long, requires = "phi")]
    pub theta: Option<f64>,
    #[arg(long, requires = "theta")]
    pub phi: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct QuenchArgs {
    #[arg(long, value_enum, default_value_t = InitialState::Z)]
    pub state: InitialState,
    /// Coherent-state polar angle for --state scs.
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 201)]
    pub t_points: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct QptArgs {
    #[arg(long, value_enum, default_value_t = QptMode::Both)]
    pub mode: QptMode,
    /// start:stop:step, inclusive.
    #[arg(long, default_value = "0.3:0.9:0.01")]
    pub s_range: String,
    /// Averaging time of the dynamical order parameter.
    #[arg(long, default_value_t = 1e5)]
    pub t_avg: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct FssaArgs {
    #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value = "0.30:0.60:0.002")]
    pub s_range: String,
}

#[derive(Args, Debug, Serialize)]
pub struct TwobodyArgs {
    /// Add the minimum pair entropy of the paired exact scar (N <= 14).
    #[arg(long)]
    pub exact: bool,
}
