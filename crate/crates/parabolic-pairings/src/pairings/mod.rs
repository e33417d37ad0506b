//! Invariant bilinear pairings: coefficient systems, Ricci-corrected expansions, first-order
//! classification, excluded weights and splitting data.

pub mod excluded;
pub mod first_order;
pub mod formula;
pub mod gamma;
pub mod higher;
pub mod ricci;
pub mod splitting;

pub use excluded::{projective_excluded_weights, ExcludedWeight};
pub use first_order::{first_order_classify, FirstOrderReport, Target, Verdict};
pub use formula::{pairing_formula, CollectedTerm, PairingFormula};
pub use gamma::{gamma_coefficients, GammaVector};
pub use higher::{higher_order_setup, HigherOrderSetup};
pub use ricci::{cct_constant, ricci_expand, DWord, Letter};
pub use splitting::{splitting_recursion, Geometry, SplittingCoefficients};
