//! Gorenstein-projective modules over bound quiver algebras and their
//! deformation rings, computed with exact linear algebra.
//!
//! The layers build on each other:
//!
//! - [`exactlin`]: exact scalars (Q or F_p) and dense matrices.
//! - [`quiver`]: quivers, paths, and finite-dimensional quotients `kQ/I`.
//! - [`repmod`]: representations, Hom spaces, projective covers, syzygies.
//! - [`homology`]: stable Hom, Ext, Cohen-Macaulay and Gorenstein tests.
//! - [`monomial`]: perfect paths and overlaps of monomial algebras.
//! - [`deformation`]: tangent spaces, order-by-order lifts, ring classification.
//! - [`transport`]: bimodules and the tensor functor.

pub mod deformation;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod monomial;
pub mod quiver;
pub mod repmod;
pub mod transport;

pub use error::{Error, Result};
pub use exactlin::{Field, Matrix, Scalar};
pub use quiver::{Algebra, Path, Quiver, Relation};
pub use repmod::Representation;
