//! Finite hyper BCK-algebras and fuzzy hyper BCK-algebras.
//!
//! * [`hyper`]: algebras, the hyperorder, axiom validation, subalgebras.
//! * [`fuzzy`]: membership functions, α-cuts, restriction.
//! * [`morphism`]: homomorphisms, fuzzy homomorphisms, iso and mono checks.
//! * [`construct`]: terminal object, products, equalizers, pullbacks,
//!   coequalizers, and their mediating morphisms.
//! * [`enumerate`]: exhaustive model and membership generators.
//! * [`format`]: the JSON structure document.
//!
//! ```
//! use hyperbck::{enumerate::chain_example, fuzzy::{alpha_cut, validate_fuzzy, FuzzyValue}};
//!
//! let c2 = chain_example(2).unwrap();
//! assert!(c2.alg().validate(false).passed());
//! assert!(validate_fuzzy(&c2).passed());
//! let half = FuzzyValue::new(1, 2).unwrap();
//! assert_eq!(c2.alg().carrier().labels_of(alpha_cut(&c2, half)), ["1", "2"]);
//!
//! let c3 = chain_example(3).unwrap();
//! let report = c3.alg().validate(false);
//! let hk1 = &report.violations()[0];
//! assert_eq!(hk1.witness_labels(c3.alg().carrier()), ["3", "2", "3"]);
//! ```

pub mod construct;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod fuzzy;
pub mod hyper;
pub mod morphism;
pub mod report;
pub mod subset;

pub use error::{Error, Result};
pub use fuzzy::{FuzzyHyperBCK, FuzzyValue};
pub use hyper::{Carrier, HyperBCK};
pub use morphism::{FuzzyHom, Hom};
pub use report::{Check, ValidationReport, Violation};
pub use subset::Subset;
