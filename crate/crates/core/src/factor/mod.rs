//! Polynomial factorization over prime fields and over the integers.

pub mod finite;
pub mod hensel;
pub mod zassenhaus;

pub use finite::{degree_pattern, factor_mod_p, is_irreducible_fp, ModFactorization};
pub use hensel::hensel_lift_factors;
pub use zassenhaus::{factor_over_z, is_irreducible_over_z, Factorization};
