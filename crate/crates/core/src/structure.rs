//! Recognising which kind of structure a parsed algebra block describes.
//!
//! The kind follows from the operation names:
//!
//! | ops                                   | kind             |
//! |---------------------------------------|------------------|
//! | `join times meet star alpha`          | coupled triple   |
//! | `join meet comp`                      | ortholattice     |
//! | `join meet`                           | bounded lattice  |
//! | `plus times`                          | near semiring    |
//! | `oplus neg`                           | oplus algebra    |

use crate::coupled::CoupledTriple;
use crate::error::{Error, Result};
use crate::lattice::BoundedLattice;
use crate::mv::OplusAlgebra;
use crate::near_semiring::NearSemiring;
use crate::ortho::OrthoLattice;
use crate::table::{Algebra, Carrier};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Lattice(BoundedLattice),
    Ortho(OrthoLattice),
    NearSemiring(NearSemiring),
    Coupled(CoupledTriple),
    Oplus(OplusAlgebra),
}

impl Structure {
    pub fn from_algebra(a: &Algebra) -> Result<Self> {
        if a.has_op("star") || a.has_op("alpha") {
            Ok(Structure::Coupled(CoupledTriple::from_algebra(a)?))
        } else if a.has_op("comp") {
            Ok(Structure::Ortho(OrthoLattice::from_algebra(a)?))
        } else if a.has_op("oplus") {
            Ok(Structure::Oplus(OplusAlgebra::from_algebra(a)?))
        } else if a.has_op("plus") {
            Ok(Structure::NearSemiring(NearSemiring::from_algebra(a)?))
        } else if a.has_op("join") {
            Ok(Structure::Lattice(BoundedLattice::from_algebra(a)?))
        } else {
            Err(Error::Missing(
                "operations identifying the structure kind".into(),
            ))
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Lattice(_) => "lattice",
            Structure::Ortho(_) => "ortholattice",
            Structure::NearSemiring(_) => "near-semiring",
            Structure::Coupled(_) => "coupled-triple",
            Structure::Oplus(_) => "oplus-algebra",
        }
    }

    pub fn carrier(&self) -> &Carrier {
        match self {
            Structure::Lattice(s) => s.carrier(),
            Structure::Ortho(s) => s.carrier(),
            Structure::NearSemiring(s) => s.carrier(),
            Structure::Coupled(s) => s.carrier(),
            Structure::Oplus(s) => s.carrier(),
        }
    }

    pub fn to_algebra(&self, name: &str) -> Algebra {
        match self {
            Structure::Lattice(s) => s.to_algebra(name),
            Structure::Ortho(s) => s.to_algebra(name),
            Structure::NearSemiring(s) => s.to_algebra(name),
            Structure::Coupled(s) => s.to_algebra(name),
            Structure::Oplus(s) => s.to_algebra(name),
        }
    }
}
