//! Sparse polynomials in `x_1..x_N` with the operators `s_i`, `T_i`,
//! `T_i⁻¹` and the shift `π`, all acting on the right.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde_json::{json, Value};

use crate::combinat::{dominance_tri, Composition};
use crate::error::{Error, Result};
use crate::scalars::Ring;

/// Largest number of variables a monomial key can hold.
pub const MAX_VARS: usize = 10;
/// Largest single exponent a monomial key can hold.
pub const MAX_EXPONENT: u32 = 63;

const BITS: u32 = 6;
const MASK: u64 = (1 << BITS) - 1;

/// An exponent vector packed six bits per variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono(u64);

impl Mono {
    #[inline]
    pub fn get(self, i: usize) -> u32 {
        ((self.0 >> (BITS as usize * i)) & MASK) as u32
    }

    #[inline]
    fn set(self, i: usize, v: u32) -> Mono {
        let sh = BITS as usize * i;
        Mono((self.0 & !(MASK << sh)) | ((v as u64) << sh))
    }

    fn pack(a: &Composition) -> Result<Mono> {
        if a.len() > MAX_VARS {
            return Err(Error::CapExceeded {
                what: format!("{} variables", a.len()),
                cap: MAX_VARS,
            });
        }
        let mut w = 0u64;
        for (i, &e) in a.parts().iter().enumerate() {
            if e > MAX_EXPONENT {
                return Err(Error::CapExceeded {
                    what: format!("exponent {e}"),
                    cap: MAX_EXPONENT as usize,
                });
            }
            w |= (e as u64) << (BITS as usize * i);
        }
        Ok(Mono(w))
    }

    fn unpack(self, n: usize) -> Composition {
        Composition((0..n).map(|i| self.get(i)).collect())
    }
}

/// Total order extending `▷`: size, then the sorted rearrangement
/// lexicographically, then the composition lexicographically.
pub fn leading_order(a: &Composition, b: &Composition) -> Ordering {
    a.size()
        .cmp(&b.size())
        .then_with(|| a.sorted_desc().cmp(&b.sorted_desc()))
        .then_with(|| a.cmp(b))
}

/// A polynomial with coefficients in the ring `R`. Operations take the
/// ring explicitly since its elements carry no context.
pub struct MacPoly<R: Ring> {
    n: usize,
    terms: HashMap<Mono, R::Elem>,
}

impl<R: Ring> Clone for MacPoly<R> {
    fn clone(&self) -> Self {
        MacPoly {
            n: self.n,
            terms: self.terms.clone(),
        }
    }
}

impl<R: Ring> std::fmt::Debug for MacPoly<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(
                self.sorted_terms()
                    .into_iter()
                    .map(|(a, c)| (a.to_string(), c)),
            )
            .finish()
    }
}

impl<R: Ring> PartialEq for MacPoly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.terms == o.terms
    }
}

impl<R: Ring> MacPoly<R> {
    pub fn zero(n: usize) -> Self {
        MacPoly {
            n,
            terms: HashMap::new(),
        }
    }

    pub fn constant(ring: &R, n: usize, c: R::Elem) -> Self {
        Self::monomial(ring, &Composition::zeros(n), c).expect("zero exponent fits")
    }

    /// `c·x^α`.
    pub fn monomial(ring: &R, alpha: &Composition, c: R::Elem) -> Result<Self> {
        let mut p = Self::zero(alpha.len());
        if !ring.is_zero(&c) {
            p.terms.insert(Mono::pack(alpha)?, c);
        }
        Ok(p)
    }

    pub fn from_terms(
        ring: &R,
        n: usize,
        terms: impl IntoIterator<Item = (Composition, R::Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n);
        for (a, c) in terms {
            if a.len() != n {
                return Err(Error::SizeMismatch(format!(
                    "monomial {a} in {n} variables"
                )));
            }
            p.add_term(ring, Mono::pack(&a)?, &c);
        }
        p.prune(ring);
        Ok(p)
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, ring: &R, alpha: &Composition) -> R::Elem {
        Mono::pack(alpha)
            .ok()
            .and_then(|m| self.terms.get(&m).cloned())
            .unwrap_or_else(|| ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Composition, &R::Elem)> {
        let n = self.n;
        self.terms.iter().map(move |(m, c)| (m.unpack(n), c))
    }

    pub fn support(&self) -> Vec<Composition> {
        self.terms.keys().map(|m| m.unpack(self.n)).collect()
    }

    /// Terms sorted by decreasing [`leading_order`].
    pub fn sorted_terms(&self) -> Vec<(Composition, &R::Elem)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| leading_order(&b.0, &a.0));
        v
    }

    /// The `▷`-largest term, if the support has a unique maximum.
    pub fn leading(&self) -> Option<(Composition, R::Elem)> {
        let (a, c) = self.terms().max_by(|x, y| leading_order(&x.0, &y.0))?;
        let unique = self
            .terms
            .keys()
            .map(|m| m.unpack(self.n))
            .all(|b| b == a || dominance_tri(&a, &b));
        unique.then(|| (a, c.clone()))
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(|m| m.unpack(self.n).size());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    #[inline]
    fn add_term(&mut self, ring: &R, m: Mono, c: &R::Elem) {
        match self.terms.get_mut(&m) {
            Some(v) => ring.add_assign(v, c),
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn prune(&mut self, ring: &R) {
        self.terms.retain(|_, c| !ring.is_zero(c));
    }

    pub fn add(&self, ring: &R, o: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(ring, *m, c);
        }
        p.prune(ring);
        p
    }

    pub fn sub(&self, ring: &R, o: &Self) -> Self {
        self.add(ring, &o.neg(ring))
    }

    pub fn neg(&self, ring: &R) -> Self {
        self.map(|c| ring.neg(c))
    }

    pub fn scale(&self, ring: &R, a: &R::Elem) -> Self {
        if ring.is_zero(a) {
            return Self::zero(self.n);
        }
        let mut p = self.map(|c| ring.mul(c, a));
        p.prune(ring);
        p
    }

    /// Multiply every coefficient by `q^a t^b`.
    pub fn scale_qt(&self, ring: &R, a: i64, b: i64) -> Self {
        self.map(|c| ring.mul_qt(c, a, b))
    }

    fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        MacPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, f(c))).collect(),
        }
    }

    /// Image of every coefficient under `f` into another ring.
    pub fn map_ring<S: Ring>(
        &self,
        ring: &S,
        f: impl Fn(&R::Elem) -> Result<S::Elem>,
    ) -> Result<MacPoly<S>> {
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !ring.is_zero(&v) {
                terms.insert(*m, v);
            }
        }
        Ok(MacPoly { n: self.n, terms })
    }

    fn check_index(&self, i: usize, max: usize) -> Result<()> {
        if i == 0 || i > max {
            return Err(Error::IndexOutOfRange { index: i, max });
        }
        Ok(())
    }

    /// `p s_i`: exchange `x_i` and `x_{i+1}`.
    pub fn apply_si(&self, i: usize) -> Result<Self> {
        self.check_index(i, self.n.saturating_sub(1))?;
        let (a, b) = (i - 1, i);
        Ok(MacPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let (ea, eb) = (m.get(a), m.get(b));
                    (m.set(a, eb).set(b, ea), c.clone())
                })
                .collect(),
        })
    }

    /// `p T_i = (1−t) x_{i+1} (p − p s_i)/(x_i − x_{i+1}) + t·p s_i`,
    /// with the divided difference expanded monomial by monomial.
    pub fn apply_ti(&self, ring: &R, i: usize) -> Result<Self> {
        self.check_index(i, self.n.saturating_sub(1))?;
        let (x, y) = (i - 1, i);
        let mut out = Self::zero(self.n);
        out.terms.reserve(self.terms.len() * 2);
        for (m, c) in &self.terms {
            let (a, b) = (m.get(x), m.get(y));
            let ct = ring.mul_qt(c, 0, 1);
            match a.cmp(&b) {
                Ordering::Equal => out.add_term(ring, *m, &ct),
                Ordering::Greater => {
                    let w = ring.sub(c, &ct);
                    for k in 0..a - b - 1 {
                        out.add_term(ring, m.set(x, a - 1 - k).set(y, b + 1 + k), &w);
                    }
                    out.add_term(ring, m.set(x, b).set(y, a), c);
                }
                Ordering::Less => {
                    let w = ring.sub(&ct, c);
                    for j in 0..b - a {
                        out.add_term(ring, m.set(x, a + j).set(y, b - j), &w);
                    }
                    out.add_term(ring, m.set(x, b).set(y, a), &ct);
                }
            }
        }
        out.prune(ring);
        Ok(out)
    }

    /// `p T_i⁻¹ = (p T_i + (1−t) p)/t`.
    pub fn apply_ti_inv(&self, ring: &R, i: usize) -> Result<Self> {
        let pt = self.apply_ti(ring, i)?;
        let mut out = pt;
        for (m, c) in &self.terms {
            let w = ring.sub(c, &ring.mul_qt(c, 0, 1));
            out.add_term(ring, *m, &w);
        }
        out.prune(ring);
        Ok(out.scale_qt(ring, 0, -1))
    }

    /// `p π = p(q x_N, x_1, …, x_{N−1})`.
    pub fn apply_shift(&self, ring: &R) -> Self {
        let n = self.n;
        MacPoly {
            n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let a1 = m.get(0);
                    let rot = Mono((m.0 >> BITS) | ((a1 as u64) << (BITS as usize * (n - 1))));
                    (rot, ring.mul_qt(c, a1 as i64, 0))
                })
                .collect(),
        }
    }

    /// Multiply by `x_i`.
    pub fn mul_var(&self, i: usize) -> Result<Self> {
        self.check_index(i, self.n)?;
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.get(i - 1) + 1;
            if e > MAX_EXPONENT {
                return Err(Error::CapExceeded {
                    what: format!("exponent {e}"),
                    cap: MAX_EXPONENT as usize,
                });
            }
            terms.insert(m.set(i - 1, e), c.clone());
        }
        Ok(MacPoly { n: self.n, terms })
    }

    /// Exact division by `x_i`; fails if some term lacks `x_i`.
    pub fn div_var(&self, i: usize) -> Result<Self> {
        self.check_index(i, self.n)?;
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.get(i - 1);
            if e == 0 {
                return Err(Error::Internal(format!(
                    "term {} is not divisible by x_{i}",
                    m.unpack(self.n)
                )));
            }
            terms.insert(m.set(i - 1, e - 1), c.clone());
        }
        Ok(MacPoly { n: self.n, terms })
    }

    /// `{"N":…,"terms":[{"alpha":[…],"coeff":…},…]}` in decreasing
    /// leading order.
    pub fn to_json(&self, coeff: impl Fn(&R::Elem) -> Value) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(a, c)| json!({"alpha": a, "coeff": coeff(c)}))
            .collect();
        json!({"N": self.n, "terms": terms})
    }

    pub fn to_text(&self, ring: &R) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.sorted_terms()
            .into_iter()
            .map(|(a, c)| format!("[{}]·x^({a})", ring.show(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
