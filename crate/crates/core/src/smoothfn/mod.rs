//! Smooth functions on absorbing subsets of a ring: an expression class
//! closed under decomposition at a point, with exact derivatives and jets.

mod calculus;
mod checks;
mod expr;
mod omega;
pub mod poly;

pub use calculus::{
    chain_rule_check, compose, decompose_at, derivative_at, expand_at, jet_at, leibniz_check, Jet,
};
pub use checks::{
    build_product_series, constancy_from_derivative, indicator_nonsmoothness_check,
    integrality_obstruction, tameness_probe, wildness_demo, IndicatorOutcome, IntegralityWitness,
    WildnessCertificate,
};
pub use expr::{
    CoeffSource, ExponentFamily, ProductSeries, SmoothExpr, SERIES_SEARCH_CAP, VALIDATION_HORIZON,
    VALIDATION_PROBE_K,
};
pub use omega::{AbsorbingVerdict, Omega, OmegaShape};
