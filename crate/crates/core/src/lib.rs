//! Exact torsion invariants of based complexes over integral group rings,
//! with the lens space classification built on top of them.

pub mod chaincomplex;
pub mod cyclofield;
pub mod error;
pub mod grouprings;
pub mod lensspaces;
pub mod matrix;
pub mod simpleops;
pub mod torsion;

pub use chaincomplex::{BasedComplex, ChainMap, Complex, FieldComplex, Homology};
pub use cyclofield::{CycloField, CycloNum, Rational, Representation, TorsionClass, UnitSubgroup};
pub use error::{Error, Result};
pub use grouprings::{GroupRingElem, GroupSpec, GroupWord};
pub use lensspaces::LensParams;
pub use matrix::{Field, Matrix, Ring};
pub use simpleops::{OpCertificate, SimpleOp};
pub use torsion::{FingerprintEntry, TorsionFingerprint};
