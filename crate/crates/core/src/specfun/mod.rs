//! Special functions: Gamma, Wright and M-Wright.

mod gamma;
mod wright;

pub use gamma::{gamma, ln_abs_reciprocal_gamma, ln_gamma, reciprocal_gamma, sin_pi};
pub use wright::{
    m_wright, m_wright_integral, m_wright_tail_cutoff, wright, wright_capped, wright_primitive_integral,
    EvalResult, MWrightOrder, WrightKind, WrightParams, DEFAULT_MAX_TERMS, DEFAULT_TOL,
};
