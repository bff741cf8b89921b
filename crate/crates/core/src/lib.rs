//! Colored posets, colored quasisymmetric functions and colored peak
//! functions, with the P-partition maps between them.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! every structure map is computed on explicit basis keys.

pub mod characters;
pub mod combinat;
pub mod error;
pub mod hopf;
pub mod json;
pub mod linear;
pub mod oracle;
pub mod poset;
pub mod qsym;
pub mod verify;

pub use characters::{Character, CharacterTuple, Psi};
pub use combinat::{Color, ColoredComposition, ColoredPermutation, Cycloribbon, Letter, Part, RainbowDecomposition};
pub use error::{Error, Result};
pub use hopf::{HopfAlgebra, PosetHopf, QSymHopf};
pub use linear::{Linear, Rational};
pub use oracle::TruncatedPolynomial;
pub use poset::ColoredPoset;
pub use qsym::{Basis, QSymElement, QSymTensor};
