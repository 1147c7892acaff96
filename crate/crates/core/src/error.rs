use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("SL(n) requires n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("weight of rank {weight} used with root system of rank {roots}")]
    RankMismatch { weight: usize, roots: usize },
    #[error("root L_{i} - L_{j} is not a valid positive root for rank {rank}")]
    InvalidRoot { i: usize, j: usize, rank: usize },
    #[error("root L_{i} - L_{j} is not simple")]
    NotSimple { i: usize, j: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("parabolic function has {got} values, expected {expected}")]
    ParabolicArity { got: usize, expected: usize },
    #[error("parabolic function is infinite on every simple root (G/P is a point)")]
    AllInfinite,
    #[error("weight {weight} is not in Pic(G/P): {reason}")]
    NotInPicard { weight: String, reason: String },
    #[error("zero line bundle")]
    ZeroBundle,
    #[error("line bundle is not ample")]
    NotAmple,
    #[error("fiber degree along alpha_{alpha}: {reason}")]
    FiberDegree { alpha: usize, reason: String },
    #[error("unsupported weight shape: {0}")]
    UnsupportedShape(String),
    #[error("cohomology bookkeeping inconsistent: {0}")]
    Inconsistent(String),
    #[error("theorem precondition violated: {0}")]
    Precondition(String),
    #[error("polynomial arithmetic over mismatched data: {0}")]
    PolyMismatch(String),
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("denominator `{0}` is not a product of declared units")]
    NonUnitDenominator(String),
    #[error("sigma is not an involution on coordinate `{0}`")]
    NotInvolution(String),
    #[error("sigma does not fix the blow-up center: {0}")]
    CenterNotFixed(String),
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("Artin number {0} < 1: sigma does not fix the divisor")]
    DivisorNotFixed(String),
    #[error("ramification data inconsistent: {0}")]
    Ramification(String),
    #[error("divisor ledger: {0}")]
    Ledger(String),
    #[error("usage: {0}")]
    Usage(String),
}
