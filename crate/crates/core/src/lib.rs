//! Exact computational backbone for complex structures in physics:
//! Clifford algebras and the spinorial clock, gamma representations with
//! their intertwiners, Dirac plane waves, the Fourier complex structure,
//! an exterior calculus over polynomial coefficients, and optical/CR
//! geometry. Arithmetic is exact (Gaussian rationals) unless a function
//! says otherwise.

pub mod audit;
pub mod clifford;
pub mod clock;
pub mod cstruct;
pub mod dirac;
pub mod error;
pub mod forms;
pub mod fourier;
pub mod jsonio;
pub mod mat;
pub mod optical;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod spinor;

pub use error::Error;
pub use mat::Mat;
pub use scalar::{GaussRat, Rat};

/// Dense matrix over the crate's exact complex scalars.
pub type MatG = Mat<GaussRat>;
/// Dense matrix over the exact reals.
pub type MatR = Mat<Rat>;
/// Multivector over the exact complex scalars.
pub type Mv = clifford::Multivector<GaussRat>;
