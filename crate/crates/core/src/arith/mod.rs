//! Exact arithmetic: integers, polynomial rings, resultants, real-root counting.

pub mod alg;
pub mod bounds;
pub mod int;
pub mod kron;
pub mod poly;
pub mod resultant;
pub mod ring;
pub mod square;
pub mod sturm;
pub mod trace;

pub use alg::{powmod_double, AlgElem, ModAlgebra};
pub use bounds::{cauchy_root_bound, root_modulus_bound};
pub use poly::{parse_zpoly, poly_arith, Poly, PolyOp, ZPoly};
pub use resultant::{discriminant, resultant, resultant_subresultant};
pub use ring::{Integers, IntegersMod, QuotientRing, Rationals, Ring, Zmod64};
pub use square::{square_part_split, SquareSplit};
pub use sturm::sturm_count;
pub use trace::{algebra_trace, power_sums};
