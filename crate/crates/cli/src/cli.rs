use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "supersinglet", version, about = "Supersinglet states, Bell tests and the protocols built on them")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Root seed; every random draw is derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Override the size cap that applies to the command.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// N sites, N levels, fully antisymmetric.
    Nn,
    /// N qubits (N even), total spin zero.
    Qubit,
    /// Two sites of dimension d.
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Group {
    /// Haar-random U(d).
    Unitary,
    /// Haar-random SU(d).
    Special,
    /// Spin rotations exp(-i α n·S).
    Rotation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Quantum,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Published,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Liar {
    None,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Rotating,
    Fixed,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(long, value_enum, ignore_case = true, default_value_t = Family::Nn)]
    pub family: Family,
    /// Number of sites.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Local dimension (pair family).
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a supersinglet and print its amplitudes.
    State(StateArgs),
    /// Apply random collective unitaries and report the deviation from invariance.
    Invariance {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Defaults to rotation for the pair family and unitary otherwise.
        #[arg(long, value_enum)]
        group: Option<Group>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Maximize the CHSH-type functional for each (N, m).
    BellMax {
        #[arg(long = "N", value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        m: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Model::Published)]
        model: Model,
    },
    /// Compare the closed-form correlations with direct evaluation on the state.
    CorrCheck {
        #[arg(long = "N", value_delimiter = ',', default_value = "2,3,4,5")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        m: Vec<usize>,
        /// Random angle pairs per (N, m).
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sample joint measurement outcomes along one direction.
    Sample {
        #[command(flatten)]
        state: StateArgs,
        /// Number of joint outcomes.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Polar angle; a random direction is drawn when omitted.
        #[arg(long, requires = "phi")]
        theta: Option<f64>,
        #[arg(long, requires = "theta")]
        phi: Option<f64>,
    },
    /// Generate a sequence table.
    Table {
        #[arg(long = "N", default_value_t = 3)]
        n: usize,
        #[arg(long = "L", default_value_t = 10)]
        l: usize,
        #[arg(long, value_enum, default_value_t = Source::Quantum)]
        source: Source,
    },
    /// N-strangers victim assignment, one round per table position.
    Nsp {
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
        #[arg(long = "L", default_value_t = 10)]
        l: usize,
        #[arg(long, value_enum, default_value_t = Source::Quantum)]
        source: Source,
    },
    /// Secret sharing with optional false declarations.
    Ssp {
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
        #[arg(long = "L", default_value_t = 10)]
        l: usize,
        /// Agents (1..N) that declare false shares.
        #[arg(long, value_delimiter = ',')]
        dishonest: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Order::Rotating)]
        order: Order,
        #[arg(long, value_enum, default_value_t = Source::Quantum)]
        source: Source,
    },
    /// Three-party liar detection.
    Ldp {
        #[arg(long, value_enum, default_value_t = Liar::None)]
        liar: Liar,
        #[arg(long = "L", default_value_t = 3000)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// A's intended trit; drawn per trial when omitted.
        #[arg(long)]
        message: Option<u8>,
        /// Fake positions A adds to each list it sends.
        #[arg(long)]
        inject: Option<usize>,
        /// Standard deviations below L/3 at which a list counts as too short.
        #[arg(long, default_value_t = 5.0)]
        sigmas: f64,
        #[arg(long, value_enum, default_value_t = Source::Quantum)]
        source: Source,
    },
    /// Distribute-and-test with an optional column-tamper model.
    Dtest {
        #[arg(long = "N", default_value_t = 3)]
        n: usize,
        /// Rounds distributed.
        #[arg(long = "L", default_value_t = 2000)]
        l: usize,
        #[arg(long, default_value_t = 0.5)]
        test_fraction: f64,
        /// Probability that each column is corrupted.
        #[arg(long, default_value_t = 0.0)]
        tamper: f64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Source::Direct)]
        source: Source,
    },
    /// Decoherence-free subspace dimension, basis rank and encoding efficiency.
    Df {
        #[arg(long = "N", value_delimiter = ',', default_value = "2,4,6,8,10,12")]
        n: Vec<usize>,
    },
}
