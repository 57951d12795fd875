use thiserror::Error;

/// Errors produced by tower construction, skew-polynomial arithmetic and
/// code constructions. Validation failures carry enough detail to be
/// reported verbatim by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible over the base field")]
    ReducibleModulus,
    #[error("intermediate index {index} does not define a subfield (e = {e}, n = {n})")]
    BadIntermediate { index: usize, e: usize, n: usize },
    #[error("theta power {0} does not generate the Galois group")]
    BadThetaPower(usize),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("lambda values must be nonzero")]
    ZeroLambda,
    #[error("lambda values must be pairwise distinct")]
    DuplicateLambda,
    #[error("operation requires odd field characteristic")]
    EvenCharacteristic,
    #[error("operands belong to different towers")]
    TowerMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcrd of two zero polynomials is undefined")]
    BothZero,
    #[error("alpha shift by zero collapses the polynomial")]
    ZeroAlpha,
    #[error("operation rejects the zero polynomial")]
    ZeroPolynomial,
    #[error("operands belong to different quotient contexts")]
    ContextMismatch,
    #[error("alpha vector norms do not match the context lambdas")]
    NormMismatch,
    #[error("{got} blocks requested but at most {max} distinct norms exist")]
    TooManyBlocks { got: usize, max: usize },
    #[error("lambda set is not a cyclic subgroup of K*")]
    LambdaNotCyclicGroup,
    #[error("lambda set is not a multiplicative subgroup of K*")]
    LambdaNotGroup,
    #[error("bilinear form operands have mismatched shapes")]
    ShapeMismatch,
    #[error("the given elements are not a K-basis of L")]
    DegenerateBasis,
    #[error("dimension k = {k} outside 1..={max}")]
    BadDimension { k: usize, max: usize },
    #[error("eta condition violated: (-1)^(kn) N(eta) = {norm_value} lies in <Lambda> = {{{subgroup}}}")]
    EtaConditionViolated { norm_value: String, subgroup: String },
    #[error("gamma condition violated: N(gamma) is a square of K*")]
    GammaConditionViolated,
    #[error("lambda values must all be squares of K*")]
    LambdaNotSquares,
    #[error("construction requires an even extension degree with an index-2 intermediate field")]
    OddExtensionDegree,
    #[error("message component {index} lies outside its declared field")]
    MessageFieldViolation { index: usize },
    #[error("code has {size} codewords, enumeration budget is {budget}")]
    EnumerationBudgetExceeded { size: u128, budget: u128 },
    #[error("operation needs an exactly computed distance")]
    InexactDistance,
    #[error("isometry multipliers must be units (weight ln)")]
    NonUnitMultiplier,
    #[error("evaluation points must be pairwise distinct")]
    LambdaNotDistinct,
    #[error("element lies outside its declared home field")]
    HomeFieldViolation,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
