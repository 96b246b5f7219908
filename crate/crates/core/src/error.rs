use thiserror::Error;

/// Errors from register construction, schedule building and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register size {0} outside the supported range 1..=24")]
    RegisterSize(usize),
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("basis index {index} out of range for {num_qubits} qubits")]
    BasisOutOfRange { index: usize, num_qubits: usize },
    #[error("2x2 matrix is not unitary (max |U U^dag - I| entry {0:.3e})")]
    NonUnitaryGate(f64),
    #[error("amplitude vector length {0} is not a power of two")]
    BadAmplitudeCount(usize),
    #[error("state norm {0} is not 1 within 1e-6")]
    NotNormalized(f64),
    #[error("negative evolution duration {0}")]
    NegativeDuration(f64),
    #[error("qubit counts differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("phase polynomial over {poly} bits applied to {register} qubits")]
    PolynomialWidthMismatch { poly: usize, register: usize },
    #[error("degenerate diagonal couplings: rho1 + rho4 must differ from rho2 + rho3")]
    DegenerateCouplings,
    #[error("invalid qubit positions: {0}")]
    InvalidPositions(String),
    #[error("no coupling tabulated for pair ({0}, {1})")]
    MissingTableEntry(usize, usize),
    #[error("pair indices must differ, got ({0}, {0})")]
    IdenticalPair(usize),
    #[error("pair ({0}, {1}) has zero coupling")]
    ZeroCoupling(usize, usize),
    #[error("Poisson rate {0} must be positive")]
    NonpositiveRate(f64),
    #[error("rate {rate} too low for window {window}: rate * window must be >= {min}")]
    RateTooLow { rate: f64, window: f64, min: f64 },
    #[error("event time {time} outside schedule span [0, {total_time}]")]
    EventOutOfSpan { time: f64, total_time: f64 },
    #[error("events must be appended in non-decreasing time order ({time} after {last})")]
    EventOutOfOrder { time: f64, last: f64 },
    #[error("schedule contains non-diagonal gates; no diagonal action exists")]
    NonDiagonalSchedule,
    #[error("gate instants must be strictly increasing")]
    UnorderedGateTimes,
    #[error(
        "synchronization intervals do not fit: half {half} needs {required} \
         but only {available} is available"
    )]
    InfeasiblePacking {
        half: usize,
        required: f64,
        available: f64,
    },
    #[error("{mode} plans require the canonical base-2 Yukawa coupling at unit spacing")]
    ModeModelMismatch { mode: &'static str },
    #[error("threshold must be non-negative, got {0}")]
    BadThreshold(f64),
    #[error("wave packet (center {center}, spread {spread}) clipped by the box of half-width {half_width}")]
    PacketClipped {
        center: f64,
        spread: f64,
        half_width: f64,
    },
    #[error("total time {total_time} is not an integer multiple of the step {delta_t}")]
    BadTimeStep { delta_t: f64, total_time: f64 },
    #[error("parameter {name} must be positive, got {value}")]
    NonpositiveParameter { name: &'static str, value: f64 },
    #[error("pulse transform backend supports at most {max} qubits, got {requested}")]
    BackendSize { requested: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
