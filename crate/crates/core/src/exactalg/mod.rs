//! Exact scalars: rationals, Laurent polynomials, rational functions,
//! cyclotomic numbers and kernels.

pub mod cyclo;
pub mod factored;
pub mod linsolve;
pub mod lpoly;
pub mod rfunc;
pub mod text;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rat = num::BigRational;

pub use cyclo::CycScalar;
pub use factored::{one_minus, Factored};
pub use linsolve::{kernel_cyc, solve_kernel};
pub use lpoly::{lpoly_arith, ArithOp, LPoly};
pub use rfunc::{rfunc_eq, RFunc, HALF_Q};
