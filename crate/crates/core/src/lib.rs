//! Nonsymmetric Macdonald polynomials over `Q(q,t)`, their specialization
//! to the curve `q^m t^n = 1` (with a root of unity), critical pairs, and
//! verification of singular polynomials labelled by quasistaircases.

pub mod cherednik;
pub mod combinat;
pub mod critical;
pub mod error;
pub mod heckerep;
pub mod macdonald;
pub mod polyring;
pub mod quasistair;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
