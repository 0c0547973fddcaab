use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {0} out of range 0..=3")]
    IndexOutOfRange(usize),
    #[error("automorphism does not preserve the kernel of the quotient map")]
    KernelNotPreserved,
    #[error("zero complex number where a nonzero one is required")]
    ZeroCharge,
    #[error("{0} is outside the semi-closed upper half plane")]
    OutsideH(String),
    #[error("Z(delta) vanishes")]
    DeltaChargeZero,
    #[error("central charge is not in H^reg")]
    NotRegular,
    #[error("Z(gamma_0) and Z(gamma_1) are linearly dependent over R")]
    DegenerateFrame,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("({0},{1}) is not a root of the Kronecker quiver")]
    NotARoot(i64, i64),
    #[error("a P1 point is required for imaginary roots and forbidden for real roots")]
    LambdaMismatch,
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("the zero representation has no HN filtration")]
    ZeroRep,
    #[error("entry {0} cannot be reduced modulo {1}")]
    NotReducible(String, u64),
    #[error("Ext data of this heart is unknown")]
    ExtUnknown,
    #[error("simple at slot {0} has a self-extension")]
    SelfExtension(usize),
    #[error("slots {0} and {1} are linked by an extension")]
    PairLinked(usize, usize),
    #[error("Ext^0 between pulled-back bundles is infinite dimensional; pass a bound on n")]
    Unbounded,
    #[error("path passes through the puncture {0}")]
    Puncture(String),
    #[error("path touches a wall tangentially at {0}")]
    Tangential(String),
    #[error("{0} is not in the open chamber of sheet [{1}]")]
    NotInChamber(String, String),
    #[error("wall {0} is not adjacent to the chamber of sheet [{1}]")]
    NotAdjacent(String, String),
    #[error("degenerate path: consecutive waypoints coincide")]
    DegeneratePath,
    #[error("polynomial factorization out of range: {0}")]
    Factorization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
