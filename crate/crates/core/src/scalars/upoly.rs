//! Dense univariate polynomials over a gcd domain, with pseudo-division
//! and the subresultant gcd. Nesting gives `Z[q][t]`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub trait GcdDomain: Clone + PartialEq + Eq + Debug + Send + Sync {
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o` when the division is exact.
    fn divexact(&self, o: &Self) -> Option<Self>;
    /// Greatest common divisor with nonnegative leading sign.
    fn gcd_el(&self, o: &Self) -> Self;
    /// Whether the leading sign is negative.
    fn is_neg(&self) -> bool;

    fn is_one_el(&self) -> bool {
        *self == Self::one_el()
    }

    fn pow_el(&self, e: usize) -> Self {
        let mut r = Self::one_el();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }
}

impl GcdDomain for BigInt {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn divexact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd_el(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly<R> {
    pub c: Vec<R>,
}

impl<R: GcdDomain> UPoly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero_el()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero_poly() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(a: R) -> Self {
        UPoly::new(vec![a])
    }

    /// `a·x^k`.
    pub fn monomial(a: R, k: usize) -> Self {
        let mut c = vec![R::zero_el(); k + 1];
        c[k] = a;
        UPoly::new(c)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero_el)
    }

    pub fn coeff(&self, k: usize) -> R {
        self.c.get(k).cloned().unwrap_or_else(R::zero_el)
    }

    pub fn scale(&self, a: &R) -> Self {
        if a.is_zero_el() {
            return Self::zero_poly();
        }
        UPoly::new(self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = vec![R::zero_el(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn divexact_scalar(&self, a: &R) -> Option<Self> {
        let c = self
            .c
            .iter()
            .map(|x| x.divexact(a))
            .collect::<Option<Vec<_>>>()?;
        Some(UPoly::new(c))
    }

    /// Gcd of the coefficients, signed so the primitive part has a
    /// nonnegative leading sign.
    pub fn content(&self) -> R {
        let mut g = R::zero_el();
        for x in &self.c {
            g = g.gcd_el(x);
            if g.is_one_el() {
                break;
            }
        }
        if self.lead().is_neg() {
            g.neg()
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let g = self.content();
        self.divexact_scalar(&g).expect("content divides")
    }

    /// `lead(b)^(deg a − deg b + 1)·a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("prem by zero");
        let Some(da) = self.degree() else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lead();
        let mut r = self.clone();
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            let t = b.shift(dr - db).scale(&lr);
            r = r.scale(&lb).sub(&t);
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&lb.pow_el(e));
        }
        r
    }

    /// Exact quotient `self / b`, or `None`.
    pub fn divexact(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        if self.c.is_empty() {
            return Some(self.clone());
        }
        let da = self.degree().unwrap();
        if da < db {
            return None;
        }
        let lb = b.lead();
        let mut r = self.c.clone();
        let mut q = vec![R::zero_el(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &r[k + db];
            if top.is_zero_el() {
                continue;
            }
            let qk = top.divexact(&lb)?;
            for (j, bj) in b.c.iter().enumerate() {
                if !bj.is_zero_el() {
                    r[k + j] = r[k + j].sub(&qk.mul(bj));
                }
            }
            q[k] = qk;
        }
        if r.iter().any(|x| !x.is_zero_el()) {
            return None;
        }
        Some(UPoly::new(q))
    }

    /// Subresultant gcd, normalized to a nonnegative leading sign.
    pub fn gcd_poly(&self, other: &Self) -> Self {
        if self.c.is_empty() {
            return other.normalized();
        }
        if other.c.is_empty() {
            return self.normalized();
        }
        let c = self.content().gcd_el(&other.content());
        let c = if c.is_neg() { c.neg() } else { c };
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.degree() == Some(0) {
            return UPoly::constant(c);
        }
        let mut g = R::one_el();
        let mut h = R::one_el();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.prem(&b);
            if r.c.is_empty() {
                break;
            }
            if r.degree() == Some(0) {
                return UPoly::constant(c);
            }
            a = b;
            let div = g.mul(&h.pow_el(delta));
            b = r
                .divexact_scalar(&div)
                .expect("subresultant division is exact");
            g = a.lead();
            h = if delta == 0 {
                h
            } else {
                g.pow_el(delta)
                    .divexact(&h.pow_el(delta - 1))
                    .expect("subresultant h update is exact")
            };
        }
        b.primitive_part().scale(&c)
    }

    pub fn normalized(&self) -> Self {
        if self.lead().is_neg() {
            self.neg_poly()
        } else {
            self.clone()
        }
    }

    pub fn neg_poly(&self) -> Self {
        UPoly {
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }
}

impl<R: GcdDomain> GcdDomain for UPoly<R> {
    fn zero_el() -> Self {
        UPoly::zero_poly()
    }
    fn one_el() -> Self {
        UPoly::constant(R::one_el())
    }
    fn is_zero_el(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::new(c)
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::new(c)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero_poly();
        }
        let mut c = vec![R::zero_el(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero_el() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero_el() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        UPoly::new(c)
    }
    fn neg(&self) -> Self {
        self.neg_poly()
    }
    fn divexact(&self, o: &Self) -> Option<Self> {
        UPoly::divexact(self, o)
    }
    fn gcd_el(&self, o: &Self) -> Self {
        self.gcd_poly(o)
    }
    fn is_neg(&self) -> bool {
        self.lead().is_neg()
    }
}

pub type ZPoly = UPoly<BigInt>;
/// Polynomials in `t` with coefficients in `Z[q]`.
pub type ZqtPoly = UPoly<ZPoly>;
