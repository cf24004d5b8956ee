use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("operands carry different Clifford signatures")]
    SignatureMismatch,
    #[error("signature ({k},{l}) exceeds the dimension cap {cap}")]
    DimensionCap { k: u32, l: u32, cap: u32 },
    #[error("J^2 != -id: not a complex structure")]
    NotComplexStructure,
    #[error("J is not orthogonal for the given scalar product")]
    NotOrthogonal,
    #[error("scalar product matrix is degenerate")]
    DegenerateMetric,
    #[error("k+l = {dim} is odd; gamma representations are built for even dimension only (use the even-dimensional theory)")]
    OddDimension { dim: u32 },
    #[error("signature ({k},{l}) outside the supported range for this operation")]
    UnsupportedSignature { k: u32, l: u32 },
    #[error("intertwiner system has kernel dimension {got}, expected 1 (non-irreducible or corrupted representation)")]
    KernelDimension { got: usize },
    #[error("intertwiner pair is not normalized")]
    UnnormalizedIntertwiner,
    #[error("intertwiner convention inconsistency: {0}")]
    ConventionBug(String),
    #[error("plane-wave summands disagree on (m, e, A)")]
    MixedWaveParameters,
    #[error("spinor has mixed or undefined chirality")]
    MixedChirality,
    #[error("zero spinor")]
    ZeroSpinor,
    #[error("vector fields or forms are over different coordinate lists")]
    CoordinateMismatch,
    #[error("the span is not totally null: {0}")]
    NotTotallyNull(String),
    #[error("degenerate volume condition: P^2 (mu ∧ mu-bar ∧ lambda) ∧ xi vanishes identically")]
    DegenerateVolume,
    #[error("input is not a CR function: Z ⌟ df != 0")]
    NotCrFunction,
    #[error("frame change coefficient {0} is identically zero")]
    ZeroFrameCoefficient(&'static str),
    #[error("{0}")]
    Invalid(String),
}
