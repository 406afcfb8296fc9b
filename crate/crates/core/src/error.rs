use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be at least 2, got {0}")]
    TooSmall(u64),

    #[error("factorization limit: {n} has a cofactor with no prime factor up to {limit}")]
    FactorizationLimit { n: u64, limit: u64 },

    #[error("empty graph: {0} is prime and has no proper divisors")]
    EmptyGraph(u64),

    #[error("prime-power exponent below 3: {0} is the square of a prime and its graph is K1")]
    ExponentBelowThree(u64),

    #[error("{vertices} proper divisors exceeds the vertex cap of {cap}")]
    TooManyVertices { vertices: usize, cap: usize },

    #[error("{value} is not a proper divisor of {n}")]
    NotAVertex { n: u64, value: u64 },

    #[error("{0} is not a prime power with exponent at least 3")]
    NotPrimePower(u64),

    #[error("{0} is not a squarefree composite")]
    NotSquarefree(u64),

    #[error("no free color for edge {{{u}, {v}}}")]
    NoFreeColor { u: u64, v: u64 },

    #[error("coloring does not cover the graph: {0}")]
    DomainMismatch(String),

    #[error("automorphism group of order {order} exceeds the enumeration cap of {cap}")]
    GroupTooLarge { order: u64, cap: u64 },
}
