//! Finite-rank algebras over a prime field and their decomposition theory:
//! type-C ideals and characters, type-C and type-D submodules, graded
//! decompositions, compatibility, C-pairs, homomorphisms and dominations.
//!
//! Everything is decided by exact linear algebra over `F_p` and, where a
//! property quantifies over submodules, by exhaustive enumeration within the
//! limits of [`EnumConfig`].

mod algebra;
mod document;
mod ideals;
mod linalg;
mod pairs;

pub use algebra::{characters, Character, EnumConfig, FiniteAlgebra};
pub use document::{parse_document, AlgebraDocument};
pub use ideals::{
    character_bijection, compatibility_classes, compatibility_graph, compatible, decompose,
    equivalent, generated_ideal, ideal_power, is_ideal, is_submodule_type_c, is_type_c, is_type_d,
    power_submodule, product, project_submodule, projection_character, projections, stable_power,
    strongly_compatible, type_c_ideals, type_c_submodules, type_d_submodules, Decomposition,
};
pub use linalg::Submodule;
pub use pairs::{
    base_field, character_hom, induced_map, is_analytic, is_c_homomorphism, is_domination,
    is_polynomial_type, is_separated, lambda_circle, pullback_ideal, smooth_pairs, AlgebraHom,
    Analyticity, CPair, PolynomialType, SmoothPair,
};
