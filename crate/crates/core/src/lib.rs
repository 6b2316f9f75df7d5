//! Exact linear algebra over elementary divisor rings.
//!
//! The crate is organised bottom-up:
//!
//! * [`rings`]: the capability hierarchy (explicit divisibility, gcd, Bézout,
//!   constructive PID, Euclidean) and the three concrete coefficient rings
//!   ℤ, ℚ\[x\] and 𝔽ₚ\[x\].
//! * [`matrix`]: dense exact matrices, elementary operations, minors and
//!   determinants.
//! * [`smith`]: Smith normal form by pivot improvement, a verifier, and the
//!   determinantal-divisor oracle.
//! * [`kaplansky`]: the reduction of Smith normal form to 2×2 matrices and the
//!   Kaplansky condition realised through `gdco`.
//! * [`fpmod`]: kernels, cokernels, linear systems, finitely presented modules
//!   and homology of chain complexes.

pub mod fpmod;
pub mod kaplansky;
pub mod matrix;
pub mod rings;
pub mod smith;

pub use fpmod::{ChainComplex, Edr, FpmodError, ModuleDecomposition, Morphism, Presentation};
pub use matrix::{Elementary, IndexMap, Matrix, MatrixError, Side};
pub use rings::{
    BezoutDomain, Capability, CoeffField, ExtGcd, ExtGcd3, FpPoly, GcdDomain, Integers, Poly,
    PolyRing, PrimeField, QPoly, Rationals, Ring, RingCapabilities, RingError,
};
pub use smith::{Descent, PivotReport, SmithError, SmithReport, SmithResult, Strategy};
