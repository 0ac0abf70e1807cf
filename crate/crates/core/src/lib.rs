//! Exact computations around the classification of thick and localizing
//! subcategories for Dynkin quivers over commutative noetherian rings.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`] and [`linalg`]: exact scalars and dense matrices, generic over
//!   the scalar type.
//! * [`root_system`] and [`nc`]: simply-laced root systems, Weyl groups and the
//!   noncrossing-partition lattice `NC(W, c)`.
//! * [`quiver`] and [`rep`]: Dynkin quivers, 0/1 tree-module realisations of
//!   the indecomposables, Hom and Ext over any supported field.
//! * [`thick`]: wide-subcategory closure and its bijection with `NC(Q)`.
//! * [`poset`] and [`spec_model`]: finite models of `Spec R` and lattices of
//!   functions into `NC(Q)`.
//! * [`poly`] and [`koszul`]: polynomial complexes, Koszul complexes and their
//!   homology at rational points.

pub mod error;
pub mod field;
pub mod koszul;
pub mod linalg;
pub mod nc;
pub mod poly;
pub mod poset;
pub mod quiver;
pub mod rep;
pub mod root_system;
pub mod spec_model;
pub mod thick;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, FiniteField, Fp, Rational};
pub use linalg::Matrix;
pub use nc::{NcElement, NcLattice};
pub use poset::{FinitePoset, Hasse};
pub use quiver::{DimVector, Quiver};
pub use root_system::{DynkinType, Family, RootSystem, WeylElement};
pub use spec_model::{FunctionLattice, SpecFunction};
pub use thick::{BijectionReport, ThickContext, WideSubcategory};

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
pub type Gf5 = Fp<5>;
/// Integer matrices, used for Weyl group elements.
pub type IntMatrix = Matrix<i64>;
