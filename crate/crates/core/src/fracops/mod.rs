//! Discrete fractional operators on uniformly sampled functions and a
//! finite-difference solver for ∂ᵅu/∂tᵅ = ∂²u/∂x² built from them.

mod fd;
mod operators;

pub use fd::{fd_solve, FDGrid, Stencil};
pub use operators::{caputo_derivative, fractional_integral, rl_derivative, RlDerivative, SampledFunction};
