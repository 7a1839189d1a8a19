use thiserror::Error;

/// Every failure mode of the library. Variants map onto the error names used
/// by the CLI reports, so suites can embed them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table size {size} for {what} exceeds the cap {cap}")]
    CapExceeded { what: String, size: u64, cap: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("level F_(q^{0}) is not present in the tower")]
    LevelMissing(u32),
    #[error("no compatible primitive polynomial of degree {degree} over F_{p}")]
    NoCompatiblePolynomial { p: u64, degree: u32 },
    #[error("tower too shallow: needs level {needed}, tower stops at {have}")]
    TowerTooShallow { needed: u32, have: u32 },

    #[error("weight system is not sigma-positive: {0}")]
    NotSigmaPositive(String),
    #[error("weight multiset is not stable under the Weyl group")]
    NotWStable,
    #[error("p_lambda is not surjective (rank {rank} < {dim}); the representation factors through det")]
    NotSurjective { rank: usize, dim: usize },
    #[error("invalid twisted torus point: {0}")]
    InvalidTwistedPoint(String),
    #[error("invalid Weyl lift: {0}")]
    InvalidLift(String),
    #[error("convolution ratio is not constant over the torus")]
    NotConstant,

    #[error("e_1 is not a cyclic vector")]
    NotCyclic,
    #[error("matrix is not in normalized form: {0}")]
    NotNormalized(String),
    #[error("Bernstein solver hit a singular step")]
    SolverSingular,
    #[error("matrix is not in the top stratum")]
    NotTopStratum,
    #[error("matrix is neither regular nor regular semisimple")]
    NotComputableLocus,
    #[error("matrix is singular")]
    Singular,

    #[error("linear system is inconsistent: {0}")]
    SystemInconsistent(String),
    #[error("linear system is rank deficient: rank {rank} < {unknowns} unknowns")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error("vanishing failed at {0}")]
    VanishingFailed(String),
    #[error("invalid config: {0}")]
    ConfigInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
