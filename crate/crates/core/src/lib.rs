//! Exact classification of rationally elliptic toric orbifolds.
//!
//! Given the simplicial fan of a compact toric orbifold, this crate checks
//! the fan axioms with exact arithmetic, decides whether the orbifold is
//! rationally elliptic, and for elliptic fans produces the Cox presentation
//! `X = (C^(n_1+1) - {0}) x ... x (C^(n_k+1) - {0}) / G` with the weights of
//! the abelian group `G`.
//!
//! ```
//! use torell::{classify, generators, quotient_presentation, validate};
//!
//! let fan = generators::weighted_projective(&[1, 1, 2]).unwrap();
//! let vf = validate(fan).unwrap();
//! assert!(classify(&vf).unwrap().elliptic);
//! let q = quotient_presentation(&vf).unwrap();
//! assert_eq!(q.y.product_factors, Some(vec![2]));
//! assert!(!q.smooth_case);
//! ```

pub mod complex;
pub mod cox;
pub mod document;
pub mod fan;
pub mod generators;
pub mod lattice;

pub use complex::{
    betti_numbers, classify, underlying_complex, Classification, ComplexError, FacePoset,
    SimplicialComplex,
};
pub use cox::{
    class_group, quotient_presentation, rational_homotopy_degrees, stabilizer_invariants,
    weight_matrix, y_description, CoxError, GroupPresentation, HomotopyDegrees,
    QuotientPresentation, Weight, YDescription,
};
pub use document::{DocumentError, FanDocument};
pub use fan::{validate, validation_report, Fan, FanError, ValidatedFan, ValidationReport};
pub use lattice::{IntMatrix, SnfResult};
pub use num_bigint;
