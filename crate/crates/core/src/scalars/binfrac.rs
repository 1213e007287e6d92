//! Fractions `x / ∏(1 − ζ^c u^f)` with `x ∈ Z[ζ_M][u^{±1}]`.
//!
//! Every denominator met while solving for `M_α` at a specialization is a
//! product of such binomials, so sums only ever multiply by binomials and
//! reduction is exact synthetic division. No polynomial gcd is taken.

use std::fmt;

use super::spec::{Laurent, LaurentRing, SpecField, SpecScalar, Specialization};
use super::Ring;
use crate::error::{Error, Result};

/// `(c, f)` stands for `1 − ζ^c u^f` with `0 ≤ c < M`, `f ≥ 0`, and
/// `c ≠ 0` when `f = 0`.
pub type BinKey = (i64, usize);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BinFrac {
    num: Laurent,
    /// Sorted, with multiplicity.
    den: Vec<BinKey>,
}

impl BinFrac {
    pub fn numer(&self) -> &Laurent {
        &self.num
    }

    pub fn denom_keys(&self) -> &[BinKey] {
        &self.den
    }
}

impl fmt::Display for BinFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

fn merge_max(a: &[BinKey], b: &[BinKey]) -> Vec<BinKey> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

fn merge_sum(a: &[BinKey], b: &[BinKey]) -> Vec<BinKey> {
    let mut out = [a, b].concat();
    out.sort_unstable();
    out
}

/// `a − b` as multisets, for `b ⊆ a`.
fn minus(a: &[BinKey], b: &[BinKey]) -> Vec<BinKey> {
    let mut out = Vec::new();
    let mut j = 0;
    for &k in a {
        if j < b.len() && b[j] == k {
            j += 1;
        } else {
            out.push(k);
        }
    }
    debug_assert_eq!(j, b.len());
    out
}

#[derive(Clone, Debug)]
pub struct BinFracRing {
    lr: LaurentRing,
    order: i64,
}

impl BinFracRing {
    pub fn new(spec: &Specialization) -> Self {
        BinFracRing {
            lr: LaurentRing::new(spec),
            order: spec.order() as i64,
        }
    }

    pub fn laurent(&self) -> &LaurentRing {
        &self.lr
    }

    pub fn from_laurent(&self, x: Laurent) -> BinFrac {
        BinFrac {
            num: x,
            den: vec![],
        }
    }

    fn binomial(&self, (c, f): BinKey) -> Laurent {
        let z = self.lr.mul_monomial(&self.lr.one(), c, f as i64);
        self.lr.sub(&self.lr.one(), &z)
    }

    /// `∏` of the keyed binomials.
    pub fn den_poly(&self, keys: &[BinKey]) -> Laurent {
        keys.iter().fold(self.lr.one(), |acc, &k| {
            self.lr.mul(&acc, &self.binomial(k))
        })
    }

    fn lift(&self, x: &BinFrac, target: &[BinKey]) -> Laurent {
        minus(target, &x.den)
            .into_iter()
            .fold(x.num.clone(), |acc, k| self.lr.mul(&acc, &self.binomial(k)))
    }

    /// `x / (q^{a₁}t^{b₁} − q^{a₂}t^{b₂})` taken at the specialization.
    pub fn div_qt_difference(
        &self,
        x: &BinFrac,
        p1: (i64, i64),
        p2: (i64, i64),
    ) -> Result<BinFrac> {
        let spec = self.lr.spec();
        let (z1, e1) = spec.image_exponents(p1.0, p1.1);
        let (z2, e2) = spec.image_exponents(p2.0, p2.1);
        // ζ^{z1}u^{e1}(1 − ζ^c u^f)
        let (mut c, f) = (z2 - z1, e2 - e1);
        let mut num = self.lr.mul_monomial(&x.num, -z1, -e1);
        let f = if f < 0 {
            // 1 − ζ^c u^f = −ζ^c u^f (1 − ζ^{−c} u^{−f})
            num = self.lr.neg(&self.lr.mul_monomial(&num, -c, -f));
            c = -c;
            -f
        } else {
            f
        };
        let c = c.rem_euclid(self.order);
        if f == 0 && c == 0 {
            return Err(Error::DivisionByZero);
        }
        let key = (c, f as usize);
        let mut den = x.den.clone();
        let pos = den.partition_point(|k| *k < key);
        den.insert(pos, key);
        Ok(self.reduce_key(BinFrac { num, den }, key))
    }

    fn try_div(&self, x: &Laurent, (c, f): BinKey) -> Option<Laurent> {
        if f == 0 {
            let b = self.binomial((c, 0));
            let blk: Vec<_> = b.blocks(self.lr.degree()).next()?.1.to_vec();
            self.lr.div_block(x, &blk)
        } else {
            self.lr.div_binomial(x, c, f)
        }
    }

    fn reduce_key(&self, mut x: BinFrac, key: BinKey) -> BinFrac {
        if x.num.is_zero() {
            return BinFrac::default();
        }
        while let Some(pos) = x.den.iter().position(|k| *k == key) {
            match self.try_div(&x.num, key) {
                Some(q) => {
                    x.num = q;
                    x.den.remove(pos);
                }
                None => break,
            }
        }
        x
    }

    /// Smallest key multiset every denominator of `xs` divides.
    pub fn common_keys<'a>(&self, xs: impl IntoIterator<Item = &'a BinFrac>) -> Vec<BinKey> {
        xs.into_iter()
            .fold(Vec::new(), |acc, x| merge_max(&acc, &x.den))
    }

    /// `x · ∏ keys`, for keys covering the denominator of `x`.
    pub fn numerator_over(&self, x: &BinFrac, keys: &[BinKey]) -> Laurent {
        self.lift(x, keys)
    }

    /// Cancel every binomial of the denominator that divides the numerator.
    pub fn reduce(&self, x: BinFrac) -> BinFrac {
        let mut keys = x.den.clone();
        keys.dedup();
        keys.into_iter().fold(x, |acc, k| self.reduce_key(acc, k))
    }

    pub fn to_spec(&self, field: &SpecField, x: &BinFrac) -> Result<SpecScalar> {
        field.from_laurent_pair(&x.num, &self.den_poly(&x.den))
    }

    /// Semantic equality.
    pub fn equal(&self, a: &BinFrac, b: &BinFrac) -> bool {
        self.sub(a, b).num.is_zero()
    }
}

impl Ring for BinFracRing {
    type Elem = BinFrac;

    fn zero(&self) -> BinFrac {
        BinFrac::default()
    }
    fn one(&self) -> BinFrac {
        self.from_laurent(self.lr.one())
    }
    fn from_i64(&self, v: i64) -> BinFrac {
        self.from_laurent(self.lr.from_i64(v))
    }
    fn is_zero(&self, a: &BinFrac) -> bool {
        a.num.is_zero()
    }
    fn add(&self, a: &BinFrac, b: &BinFrac) -> BinFrac {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        let (num, den) = if a.den == b.den {
            (self.lr.add(&a.num, &b.num), a.den.clone())
        } else {
            let den = merge_max(&a.den, &b.den);
            (self.lr.add(&self.lift(a, &den), &self.lift(b, &den)), den)
        };
        if num.is_zero() {
            return BinFrac::default();
        }
        BinFrac { num, den }
    }
    fn add_assign(&self, a: &mut BinFrac, b: &BinFrac) {
        if a.den == b.den && !a.num.is_zero() {
            self.lr.add_assign(&mut a.num, &b.num);
            if a.num.is_zero() {
                a.den.clear();
            }
        } else {
            *a = self.add(a, b);
        }
    }
    fn sub(&self, a: &BinFrac, b: &BinFrac) -> BinFrac {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &BinFrac, b: &BinFrac) -> BinFrac {
        if a.num.is_zero() || b.num.is_zero() {
            return BinFrac::default();
        }
        BinFrac {
            num: self.lr.mul(&a.num, &b.num),
            den: merge_sum(&a.den, &b.den),
        }
    }
    fn neg(&self, a: &BinFrac) -> BinFrac {
        BinFrac {
            num: self.lr.neg(&a.num),
            den: a.den.clone(),
        }
    }
    fn qt(&self, a: i64, b: i64) -> BinFrac {
        self.from_laurent(self.lr.qt(a, b))
    }
    fn mul_qt(&self, a: &BinFrac, x: i64, y: i64) -> BinFrac {
        BinFrac {
            num: self.lr.mul_qt(&a.num, x, y),
            den: a.den.clone(),
        }
    }
    fn show(&self, a: &BinFrac) -> String {
        a.to_string()
    }
}
