//! Shifted Popov forms of nonsingular polynomial matrices over prime fields,
//! computed by reduction to modular polynomial systems.
//!
//! The pipeline runs bottom-up: [`orderbasis`] computes shifted Popov order
//! bases, [`modsys`] builds solution bases of modular systems on top of them,
//! and [`popovform`] turns a matrix into such a system through its Smith
//! form. [`oracle`] holds slow independent reference algorithms.
//!
//! ```
//! use popov_core::{hermite_form, popov_form, PolMat, PrimeModulus, Shift};
//!
//! let f = PrimeModulus::new(7).unwrap();
//! // [[X, 1], [0, X]], entries as coefficient lists from degree 0
//! let a = PolMat::from_coeff_rows(f, &[vec![vec![0, 1], vec![1]], vec![vec![0], vec![0, 1]]]);
//! let h = hermite_form(&a).unwrap();
//! assert_eq!(h, PolMat::from_coeff_rows(f, &[vec![vec![0, 0, 1], vec![0]], vec![vec![0, 1], vec![1]]]));
//! assert!(popov_form(&a, &Shift::uniform(2)).unwrap().is_popov(&Shift::uniform(2)).unwrap());
//! ```

// index loops mirror the matrix notation of the algorithms
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod field;
pub mod format;
pub mod matrix;
pub mod modsys;
mod ntt;
pub mod oracle;
pub mod orderbasis;
pub mod polmat;
pub mod poly;
pub mod popovform;
pub mod random;

pub use error::{Error, Result};
pub use field::PrimeModulus;
pub use matrix::FieldMatrix;
pub use modsys::{solution_basis, MinimalDegree, ModularSystem};
pub use orderbasis::{popov_order_basis, popov_order_basis_with, OrderSpec, Strategy};
pub use polmat::{PivotProfile, PolMat, Shift};
pub use poly::Poly;
pub use popovform::{hermite_form, popov_form, SmithDecomposition};
