//! Asymptotic bound analysis for vector addition systems with states.
//!
//! The [`analyzer`] computes, for a connected VASS, the exact polynomial
//! degree of every variable and transition bound, or detects exponential
//! complexity. [`witness`] turns the analysis into concrete traces that
//! realize the lower bounds, and [`oracle`] enumerates small configurations
//! to give ground truth.

pub mod analyzer;
pub mod lp;
pub mod models;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod seq;
pub mod vass;
pub mod witness;

pub use parse::{parse_vass, ParseError, ParseErrorKind};
pub use vass::{
    execute_path, min_initial_valuation, IntegerMatrix, Path, PrePath, StateId, Steps, SubVass,
    Transition, TransitionId, Valuation, Vass, VassError,
};
