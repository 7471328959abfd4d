//! Exact computation of osculating curves, Hessian covariants and
//! Weierstrass points (with weights) for algebraic curves in P¹×P¹, for the
//! linear systems of (1,0)-, (0,1)- and (1,1)-curves.

pub mod error;
pub mod bipoly;
pub mod exactalg;
pub mod curvemodel;
pub mod fibers;
pub mod oneone;
pub mod wronskian;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
