use thiserror::Error;

/// Errors shared by every module of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("VarSetMismatch: operands live in different variable sets")]
    VarSetMismatch,
    #[error("UnknownVariable: `{0}` is not in the variable set")]
    UnknownVariable(String),
    #[error("DuplicateVariable: `{0}` appears twice in the variable set")]
    DuplicateVariable(String),
    #[error("ReservedOrder: Plücker variables must appear in the order p01,p02,p03,p12,p13,p23")]
    ReservedOrder,
    #[error("NotDivisible: division leaves a nonzero remainder")]
    NotDivisible,
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("NotHomogeneous: operand must be homogeneous{0}")]
    NotHomogeneous(&'static str),
    #[error("NotHarmonic: operand has a nonzero Laplacian")]
    NotHarmonic,
    #[error("DegreeMismatch: {0}")]
    DegreeMismatch(&'static str),
    #[error("NotWeaklyCayley: {{F,F}} does not lie in the ideal (Q, F)")]
    NotWeaklyCayley,
    #[error("MultipleOfQ: the form is divisible by the Klein quadric")]
    MultipleOfQ,
    #[error("NotALine: the Plücker vector does not satisfy Q = 0")]
    NotALine,
    #[error("DegenerateQuadric: all four diagonal entries must be nonzero")]
    DegenerateQuadric,
    #[error("NotACurve: the input ideal does not define a curve with a hypersurface Chow form")]
    NotACurve,
    #[error("EmptyCurve: the input ideal defines an empty projective scheme")]
    EmptyCurve,
    #[error("DegenerateSpan: no coordinate base point yields a nonzero third line")]
    DegenerateSpan,
    #[error("DegenerateCurve: the parametrization is degenerate (vanishing Wronskian)")]
    DegenerateCurve,
    #[error("BudgetExceeded: Gröbner computation exceeded the degree budget ({0})")]
    BudgetExceeded(u32),
    #[error("ParseError: line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
