//! Finite model checking for orthomodular lattices and coupled right
//! orthosemirings.
//!
//! Structures live on dense carriers `0..n` with every operation stored as a
//! full table. Checkers sweep all argument tuples in lexicographic order and
//! report the first counterexample per axiom.
//!
//! ```
//! use orthokit::{corpus, coupled};
//!
//! let mo2 = corpus::mo2();
//! let triple = coupled::construct_n(&mo2).unwrap();
//! assert!(coupled::check_coupled_right_orthosemiring(&triple).unwrap().passed());
//! let back = coupled::construct_l(&triple).unwrap();
//! assert_eq!(back, mo2);
//! ```

pub mod corpus;
pub mod coupled;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod iso;
pub mod lattice;
pub mod mv;
pub mod near_semiring;
pub mod ortho;
pub mod report;
pub mod structure;
pub mod table;

pub use coupled::CoupledTriple;
pub use error::{Error, Result};
pub use lattice::{BoundedLattice, Lattice};
pub use mv::OplusAlgebra;
pub use near_semiring::NearSemiring;
pub use ortho::OrthoLattice;
pub use report::{AxiomResult, CheckReport};
pub use structure::Structure;
pub use table::{Algebra, BinaryOp, Carrier, Elem, OrderRelation, UnaryOp};
