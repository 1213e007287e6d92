//! Coefficient arithmetic: the generic field `Q(q,t)`, the specialized
//! field `Q(ζ_M)(u)`, and the Laurent ring `Z[ζ_M][u, u⁻¹]` used for
//! fraction-free work at the specialization.

pub mod binfrac;
pub mod cyclo;
pub mod qt;
pub mod spec;
pub mod upoly;

use std::fmt::Debug;

use crate::error::Result;

pub use binfrac::{BinFrac, BinFracRing, BinKey};
pub use cyclo::{cyclotomic_poly, CycloField};
pub use qt::{poly_terms, QtField, QtScalar};
pub use spec::{
    binomial_factor, normalize_specialization, substitute, vanishing_exponent, Laurent,
    LaurentRing, SpecField, SpecScalar, SpecSum, Specialization,
};
pub use upoly::ZqtPoly;

/// A commutative ring in which the monomials `q^a t^b` are units.
///
/// Elements carry no context; every operation goes through the ring
/// object, so a specialized ring can hold its cyclotomic data.
pub trait Ring: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// The image of `q^a t^b`.
    fn qt(&self, a: i64, b: i64) -> Self::Elem;
    fn show(&self, a: &Self::Elem) -> String;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a·q^x t^y`.
    fn mul_qt(&self, a: &Self::Elem, x: i64, y: i64) -> Self::Elem {
        self.mul(a, &self.qt(x, y))
    }

    fn t(&self) -> Self::Elem {
        self.qt(0, 1)
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// `1 − q^a t^b`.
    fn one_minus_qt(&self, a: i64, b: i64) -> Self::Elem {
        self.sub(&self.one(), &self.qt(a, b))
    }
}

pub trait Field: Ring {
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.div(&self.one(), a)
    }
}
