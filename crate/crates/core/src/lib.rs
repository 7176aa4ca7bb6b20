//! Exact combinatorics of affine Coxeter complexes, sectors, and the
//! flat-group calculus of locally finite affine buildings.
//!
//! ```
//! use flatbldg::build_system;
//! use flatbldg::flat::Thickness;
//!
//! # fn main() -> flatbldg::Result<()> {
//! let sys = build_system("A~2")?;
//! let gem = sys.make_gem(0, &sys.identity())?;
//! assert_eq!(sys.roots_cutting_gem(&gem).len(), 6);
//!
//! let q = Thickness::uniform(&sys, 3)?;
//! let sigma = sys.sector(&gem, &sys.identity())?;
//! let t = sys.sector_translation(&sigma)?;
//! let report = sys.scale_with_factorization(&t, &gem, &sys.identity(), &q)?;
//! assert_eq!(report.scale, sys.q_length(&t.elem, &q));
//! # Ok(())
//! # }
//! ```

pub mod affine;
pub mod chamber;
pub mod coxeter;
pub mod error;
pub mod flat;
pub mod linalg;

pub use coxeter::{build_system, CoxSystem, DiagramAutomorphism, Elem, Kind, RootVec, Word};
pub use error::{Error, Result};
