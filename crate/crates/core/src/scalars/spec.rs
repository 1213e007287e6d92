//! The specialization `(q,t) = (ω u^{−n/g}, u^{m/g})` and the coefficient
//! rings it produces.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::cyclo::CycloField;
use super::qt::{poly_terms, QtScalar};
use super::upoly::{GcdDomain, UPoly, ZqtPoly};
use super::{Field, Ring};
use crate::error::{Error, Result};

/// `(m, n, k)` normalized so that `1 ≤ k < g` when `g = gcd(m,n) > 1` and
/// `k = 0` (so `ω = 1`) when `g = 1`. `ω = exp(2πik/m)` is represented by
/// the generator of `Q[x]/Φ_M` with `M = m/gcd(k,m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    m: u64,
    n: u64,
    k: u64,
    g: u64,
    field: CycloField,
}

/// Validate and normalize `(m, n, k)`.
pub fn normalize_specialization(m: u64, n: u64, k: i64) -> Result<Specialization> {
    if m < 1 {
        return Err(Error::InvalidSpecialization("m must be ≥ 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidSpecialization("n must be ≥ 2".into()));
    }
    let g = m.gcd(&n);
    let k = if g == 1 {
        0
    } else {
        let kk = k.rem_euclid(g as i64) as u64;
        if kk.gcd(&g) != 1 {
            return Err(Error::InvalidSpecialization(format!(
                "gcd(k={k}, g={g}) ≠ 1"
            )));
        }
        kk
    };
    let order = (m / k.gcd(&m)) as usize;
    Ok(Specialization {
        m,
        n,
        k,
        g,
        field: CycloField::new(order),
    })
}

impl Specialization {
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn g(&self) -> u64 {
        self.g
    }
    /// Multiplicative order `M` of `ω`.
    pub fn order(&self) -> usize {
        self.field.order()
    }
    pub fn field(&self) -> &CycloField {
        &self.field
    }

    /// `q^a t^b ↦ ω^a u^e`; returns `(a, e)`.
    pub fn image_exponents(&self, a: i64, b: i64) -> (i64, i64) {
        let (m, n, g) = (self.m as i64, self.n as i64, self.g as i64);
        (a, (-a * n + b * m) / g)
    }

    /// Display form of the defining relation, e.g. `q^2 t^4 = 1, ω order 2`.
    pub fn describe(&self) -> String {
        format!(
            "(q,t) = (ω u^-{}, u^{}) with ω = exp(2πi·{}/{}), order {}",
            self.n / self.g,
            self.m / self.g,
            self.k,
            self.m,
            self.order()
        )
    }
}

/// `Some(p)` exactly when `q^a t^b = 1` at the specialization, in which
/// case `(a, b) = (pm, pn)`.
pub fn vanishing_exponent(a: i64, b: i64, spec: &Specialization) -> Option<i64> {
    let (m, n) = (spec.m as i64, spec.n as i64);
    (a * n == b * m && a.rem_euclid(m) == 0).then(|| a / m)
}

// ---------------------------------------------------------------------------
// Laurent polynomials in u over Z[ζ_M]

/// `Σ u^{lo+k} c_k` with `c_k ∈ Z[ζ_M]`, flattened into blocks of length
/// `φ(M)`. The first and last blocks are nonzero; zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Laurent {
    lo: i64,
    c: Vec<BigInt>,
}

impl Laurent {
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.lo
    }

    /// Number of u-blocks.
    pub fn width(&self, d: usize) -> usize {
        self.c.len() / d
    }

    pub fn blocks(&self, d: usize) -> impl Iterator<Item = (i64, &[BigInt])> {
        let lo = self.lo;
        self.c
            .chunks(d)
            .enumerate()
            .map(move |(k, b)| (lo + k as i64, b))
    }

    /// Largest absolute coefficient bit length.
    pub fn max_bits(&self) -> u64 {
        self.c.iter().map(|x| x.bits()).max().unwrap_or(0)
    }
}

/// The ring `Z[ζ_M][u, u⁻¹]`.
#[derive(Clone, Debug)]
pub struct LaurentRing {
    spec: Specialization,
    d: usize,
    zeta_pows: Vec<Vec<BigInt>>,
}

impl LaurentRing {
    pub fn new(spec: &Specialization) -> Self {
        let d = spec.field.degree();
        let zeta_pows = (0..spec.order() as i64)
            .map(|a| spec.field.zeta_pow(a))
            .collect();
        LaurentRing {
            spec: spec.clone(),
            d,
            zeta_pows,
        }
    }

    pub fn spec(&self) -> &Specialization {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    fn norm(&self, mut lo: i64, mut c: Vec<BigInt>) -> Laurent {
        let d = self.d;
        let mut end = c.len();
        while end >= d && c[end - d..end].iter().all(|x| x.is_zero()) {
            end -= d;
        }
        c.truncate(end);
        let mut start = 0;
        while start < c.len() && c[start..start + d].iter().all(|x| x.is_zero()) {
            start += d;
        }
        if start > 0 {
            c.drain(..start);
            lo += (start / d) as i64;
        }
        if c.is_empty() {
            lo = 0;
        }
        Laurent { lo, c }
    }

    /// `c·u^e` for a cyclotomic integer block `c`.
    pub fn term(&self, block: Vec<BigInt>, e: i64) -> Laurent {
        self.norm(e, block)
    }

    fn zeta(&self, a: i64) -> &[BigInt] {
        &self.zeta_pows[a.rem_euclid(self.spec.order() as i64) as usize]
    }

    fn block_mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if self.d == 1 {
            vec![&a[0] * &b[0]]
        } else {
            self.spec.field.mul(a, b)
        }
    }

    /// Image of a `Z[q,t]` polynomial.
    pub fn from_qt_poly(&self, p: &ZqtPoly) -> Laurent {
        let mut acc = self.zero();
        for (eq, et, c) in poly_terms(p) {
            let (a, e) = self.spec.image_exponents(eq as i64, et as i64);
            let block: Vec<BigInt> = self.zeta(a).iter().map(|z| z * &c).collect();
            acc = self.add(&acc, &self.norm(e, block));
        }
        acc
    }

    /// Multiply by `ζ^a u^e`.
    pub fn mul_monomial(&self, x: &Laurent, a: i64, e: i64) -> Laurent {
        if x.is_zero() {
            return x.clone();
        }
        let z = self.zeta(a);
        if self.d == 1 {
            let c = if z[0].is_one() {
                x.c.clone()
            } else {
                x.c.iter().map(|v| v * &z[0]).collect()
            };
            return Laurent { lo: x.lo + e, c };
        }
        let mut c = Vec::with_capacity(x.c.len());
        for b in x.c.chunks(self.d) {
            c.extend(self.spec.field.mul(b, z));
        }
        Laurent { lo: x.lo + e, c }
    }

    /// Exact division by a scalar integer, if possible.
    pub fn divexact_int(&self, x: &Laurent, k: &BigInt) -> Option<Laurent> {
        let c =
            x.c.iter()
                .map(|v| GcdDomain::divexact(v, k))
                .collect::<Option<Vec<_>>>()?;
        Some(Laurent { lo: x.lo, c })
    }

    /// Integer content of all coefficients.
    pub fn int_content(&self, x: &Laurent) -> BigInt {
        let mut g = BigInt::zero();
        for v in &x.c {
            g = g.gcd(v);
            if g.is_one_el() {
                break;
            }
        }
        g
    }

    /// `x / (1 − ζ^c u^f)` for `f > 0`, when the division is exact.
    pub fn div_binomial(&self, x: &Laurent, c: i64, f: usize) -> Option<Laurent> {
        if x.is_zero() {
            return Some(x.clone());
        }
        let d = self.d;
        let len = x.c.len() / d;
        if len <= f {
            return None;
        }
        let z = self.zeta(c).to_vec();
        let mut q: Vec<Vec<BigInt>> = Vec::with_capacity(len);
        for k in 0..len {
            let mut b = x.c[k * d..(k + 1) * d].to_vec();
            if k >= f {
                let t = self.block_mul(&z, &q[k - f]);
                for (u, v) in b.iter_mut().zip(t) {
                    *u += v;
                }
            }
            if k >= len - f && b.iter().any(|v| !v.is_zero()) {
                return None;
            }
            q.push(b);
        }
        q.truncate(len - f);
        Some(self.norm(x.lo, q.concat()))
    }

    /// `x / b` for a nonzero constant `b ∈ Z[ζ_M]`, when the quotient is
    /// integral.
    pub fn div_block(&self, x: &Laurent, b: &[BigInt]) -> Option<Laurent> {
        let f = &self.spec.field;
        let inv = f.inv(&f.to_rational(b)).ok()?;
        let mut c = Vec::with_capacity(x.c.len());
        for blk in x.c.chunks(self.d) {
            let r = if self.d == 1 {
                vec![BigRational::from_integer(blk[0].clone()) * &inv[0]]
            } else {
                f.mul(&f.to_rational(blk), &inv)
            };
            for v in r {
                if !v.is_integer() {
                    return None;
                }
                c.push(v.to_integer());
            }
        }
        Some(Laurent { lo: x.lo, c })
    }

    /// Convert to a reduced element of `Q(ζ_M)(u)`.
    pub fn to_spec(&self, x: &Laurent) -> SpecScalar {
        SpecField::new(&self.spec).from_laurent(self, x)
    }
}

impl Ring for LaurentRing {
    type Elem = Laurent;

    fn zero(&self) -> Laurent {
        Laurent::default()
    }
    fn one(&self) -> Laurent {
        self.from_i64(1)
    }
    fn from_i64(&self, v: i64) -> Laurent {
        let mut c = vec![BigInt::zero(); self.d];
        c[0] = BigInt::from(v);
        self.norm(0, c)
    }
    fn is_zero(&self, a: &Laurent) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let d = self.d as i64;
        let lo = a.lo.min(b.lo);
        let hi = (a.lo + (a.c.len() as i64) / d).max(b.lo + (b.c.len() as i64) / d);
        let mut c = vec![BigInt::zero(); ((hi - lo) * d) as usize];
        let oa = ((a.lo - lo) * d) as usize;
        for (k, v) in a.c.iter().enumerate() {
            c[oa + k] = v.clone();
        }
        let ob = ((b.lo - lo) * d) as usize;
        for (k, v) in b.c.iter().enumerate() {
            c[ob + k] += v;
        }
        self.norm(lo, c)
    }
    fn add_assign(&self, a: &mut Laurent, b: &Laurent) {
        if b.is_zero() {
            return;
        }
        if a.is_zero() {
            *a = b.clone();
            return;
        }
        let d = self.d as i64;
        let a_hi = a.lo + (a.c.len() as i64) / d;
        let b_hi = b.lo + (b.c.len() as i64) / d;
        if b.lo >= a.lo && b_hi <= a_hi {
            let ob = ((b.lo - a.lo) * d) as usize;
            for (k, v) in b.c.iter().enumerate() {
                a.c[ob + k] += v;
            }
            let lo = a.lo;
            let c = std::mem::take(&mut a.c);
            *a = self.norm(lo, c);
        } else {
            *a = self.add(a, b);
        }
    }
    fn sub(&self, a: &Laurent, b: &Laurent) -> Laurent {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        if a.is_zero() || b.is_zero() {
            return Laurent::default();
        }
        let d = self.d;
        let (la, lb) = (a.c.len() / d, b.c.len() / d);
        if d == 1 {
            let mut c = vec![BigInt::zero(); la + lb - 1];
            for (i, x) in a.c.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.c.iter().enumerate() {
                    if !y.is_zero() {
                        c[i + j] += x * y;
                    }
                }
            }
            return self.norm(a.lo + b.lo, c);
        }
        let mut c = vec![BigInt::zero(); (la + lb - 1) * d];
        for (i, x) in a.c.chunks(d).enumerate() {
            if x.iter().all(|v| v.is_zero()) {
                continue;
            }
            for (j, y) in b.c.chunks(d).enumerate() {
                if y.iter().all(|v| v.is_zero()) {
                    continue;
                }
                let p = self.block_mul(x, y);
                for (k, v) in p.into_iter().enumerate() {
                    c[(i + j) * d + k] += v;
                }
            }
        }
        self.norm(a.lo + b.lo, c)
    }
    fn neg(&self, a: &Laurent) -> Laurent {
        Laurent {
            lo: a.lo,
            c: a.c.iter().map(|x| -x).collect(),
        }
    }
    fn qt(&self, a: i64, b: i64) -> Laurent {
        let (za, e) = self.spec.image_exponents(a, b);
        self.norm(e, self.zeta(za).to_vec())
    }
    fn mul_qt(&self, x: &Laurent, a: i64, b: i64) -> Laurent {
        let (za, e) = self.spec.image_exponents(a, b);
        self.mul_monomial(x, za, e)
    }
    fn show(&self, a: &Laurent) -> String {
        self.to_spec(a).to_string()
    }
}

// ---------------------------------------------------------------------------
// Polynomials in u over Q(ζ_M)

type QBlock = Vec<BigRational>;
type QuPoly = Vec<QBlock>;

fn block_is_zero(b: &[BigRational]) -> bool {
    b.iter().all(|x| x.is_zero())
}

fn qu_trim(mut p: QuPoly) -> QuPoly {
    while p.last().is_some_and(|b| block_is_zero(b)) {
        p.pop();
    }
    p
}

fn block_add(a: &[BigRational], b: &[BigRational]) -> QBlock {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn block_sub(a: &[BigRational], b: &[BigRational]) -> QBlock {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `Q(ζ_M)(u)` element `u^e·num/den` with `num(0) ≠ 0`, `den(0) ≠ 0`,
/// `den` monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpecScalar {
    e: i64,
    num: QuPoly,
    den: QuPoly,
    order: usize,
}

impl SpecScalar {
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Whether the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.len() == 1
    }

    pub fn u_shift(&self) -> i64 {
        self.e
    }

    pub fn to_json(&self) -> Value {
        let enc = |p: &QuPoly, shift: i64| -> Value {
            Value::Array(
                p.iter()
                    .enumerate()
                    .filter(|(_, b)| !block_is_zero(b))
                    .map(|(k, b)| {
                        let coeffs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                        json!([k as i64 + shift, coeffs])
                    })
                    .collect(),
            )
        };
        json!({"order": self.order, "numer": enc(&self.num, self.e), "denom": enc(&self.den, 0)})
    }
}

fn show_block(b: &[BigRational]) -> (bool, String) {
    let nz: Vec<(usize, &BigRational)> =
        b.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    if nz.len() == 1 && nz[0].0 == 0 {
        let x = nz[0].1;
        return (x.is_negative(), x.abs().to_string());
    }
    let parts: Vec<String> = nz
        .iter()
        .map(|(j, x)| match j {
            0 => x.to_string(),
            1 => format!("{x}*z"),
            _ => format!("{x}*z^{j}"),
        })
        .collect();
    (false, format!("({})", parts.join(" + ")))
}

fn show_qu(p: &QuPoly, shift: i64) -> String {
    let mut s = String::new();
    let mut first = true;
    for (k, b) in p.iter().enumerate() {
        if block_is_zero(b) {
            continue;
        }
        let (neg, mag) = show_block(b);
        if first {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        first = false;
        let e = k as i64 + shift;
        match e {
            0 => s.push_str(&mag),
            _ => {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push('*');
                }
                if e == 1 {
                    s.push('u');
                } else {
                    s.push_str(&format!("u^{e}"));
                }
            }
        }
    }
    if first {
        s.push('0');
    }
    s
}

impl fmt::Display for SpecScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", show_qu(&self.num, self.e))
        } else {
            write!(
                f,
                "({})/({})",
                show_qu(&self.num, self.e),
                show_qu(&self.den, 0)
            )
        }
    }
}

/// A sum of products kept as one numerator per distinct denominator.
#[derive(Clone, Debug, Default)]
pub struct SpecSum {
    groups: Vec<(QuPoly, i64, QuPoly)>,
}

/// The field `Q(ζ_M)(u)` for a fixed specialization.
#[derive(Clone, Debug)]
pub struct SpecField {
    spec: Specialization,
    d: usize,
}

impl SpecField {
    pub fn new(spec: &Specialization) -> Self {
        SpecField {
            spec: spec.clone(),
            d: spec.field.degree(),
        }
    }

    pub fn spec(&self) -> &Specialization {
        &self.spec
    }

    fn fld(&self) -> &CycloField {
        &self.spec.field
    }

    fn bzero(&self) -> QBlock {
        vec![BigRational::zero(); self.d]
    }

    fn bone(&self) -> QBlock {
        let mut b = self.bzero();
        b[0] = BigRational::one();
        b
    }

    fn bmul(&self, a: &[BigRational], b: &[BigRational]) -> QBlock {
        if self.d == 1 {
            vec![&a[0] * &b[0]]
        } else {
            self.fld().mul(a, b)
        }
    }

    fn binv(&self, a: &[BigRational]) -> QBlock {
        self.fld().inv(a).expect("nonzero block")
    }

    fn qu_add(&self, a: &QuPoly, b: &QuPoly) -> QuPoly {
        let n = a.len().max(b.len());
        let z = self.bzero();
        qu_trim(
            (0..n)
                .map(|k| block_add(a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z)))
                .collect(),
        )
    }

    fn qu_mul(&self, a: &QuPoly, b: &QuPoly) -> QuPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut c = vec![self.bzero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if block_is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !block_is_zero(y) {
                    c[i + j] = block_add(&c[i + j], &self.bmul(x, y));
                }
            }
        }
        qu_trim(c)
    }

    fn qu_scale(&self, a: &QuPoly, s: &[BigRational]) -> QuPoly {
        qu_trim(a.iter().map(|b| self.bmul(b, s)).collect())
    }

    fn qu_divmod(&self, a: &QuPoly, b: &QuPoly) -> (QuPoly, QuPoly) {
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (vec![], a.clone());
        }
        let inv_lead = self.binv(&b[db]);
        let mut r = a.clone();
        let mut q = vec![self.bzero(); a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.bmul(&r[k + db], &inv_lead);
            if !block_is_zero(&c) {
                for (j, bj) in b.iter().enumerate() {
                    r[k + j] = block_sub(&r[k + j], &self.bmul(&c, bj));
                }
            }
            q[k] = c;
        }
        (qu_trim(q), qu_trim(r))
    }

    fn qu_monic(&self, a: &QuPoly) -> QuPoly {
        let inv = self.binv(a.last().expect("nonzero"));
        self.qu_scale(a, &inv)
    }

    fn qu_gcd(&self, a: &QuPoly, b: &QuPoly) -> QuPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let (_, r) = self.qu_divmod(&x, &y);
            x = y;
            y = r;
        }
        self.qu_monic(&x)
    }

    /// Canonicalize `u^e·num/den`.
    fn make(&self, mut e: i64, num: QuPoly, den: QuPoly) -> Result<SpecScalar> {
        let mut num = qu_trim(num);
        let mut den = qu_trim(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(self.zero());
        }
        let lz = num.iter().take_while(|b| block_is_zero(b)).count();
        num.drain(..lz);
        e += lz as i64;
        let lz = den.iter().take_while(|b| block_is_zero(b)).count();
        den.drain(..lz);
        e -= lz as i64;
        if den.len() > 1 && num.len() > 1 {
            let g = self.qu_gcd(&num, &den);
            if g.len() > 1 {
                num = self.qu_divmod(&num, &g).0;
                den = self.qu_divmod(&den, &g).0;
            }
        }
        let inv = self.binv(den.last().expect("nonzero"));
        if !(self.d == 1 && inv[0].is_one()) {
            num = self.qu_scale(&num, &inv);
            den = self.qu_scale(&den, &inv);
        }
        Ok(SpecScalar {
            e,
            num,
            den,
            order: self.spec.order(),
        })
    }

    fn laurent_to_qu(&self, x: &Laurent) -> (i64, QuPoly) {
        let blocks =
            x.c.chunks(self.d)
                .map(|b| {
                    b.iter()
                        .map(|v| BigRational::from_integer(v.clone()))
                        .collect()
                })
                .collect();
        (x.lo, blocks)
    }

    pub fn from_laurent(&self, _ring: &LaurentRing, x: &Laurent) -> SpecScalar {
        let (e, num) = self.laurent_to_qu(x);
        self.make(e, num, vec![self.bone()])
            .expect("unit denominator")
    }

    /// `num/den` for Laurent numerator and denominator.
    pub fn from_laurent_pair(&self, num: &Laurent, den: &Laurent) -> Result<SpecScalar> {
        let (e1, n) = self.laurent_to_qu(num);
        let (e2, d) = self.laurent_to_qu(den);
        self.make(e1 - e2, n, d)
    }

    /// Add `c·m` to a running sum.
    pub fn sum_add(&self, s: &mut SpecSum, c: &SpecScalar, m: &Laurent) {
        if c.is_zero() || m.is_zero() {
            return;
        }
        let (le, mq) = self.laurent_to_qu(m);
        let mut prod = self.qu_mul(&c.num, &mq);
        let mut e = c.e + le;
        let shift = |p: &mut QuPoly, k: i64| {
            if k > 0 {
                p.splice(0..0, std::iter::repeat_n(self.bzero(), k as usize));
            }
        };
        match s.groups.iter_mut().find(|g| g.0 == c.den) {
            Some(g) => {
                if e < g.1 {
                    shift(&mut g.2, g.1 - e);
                    g.1 = e;
                } else {
                    shift(&mut prod, e - g.1);
                    e = g.1;
                }
                debug_assert_eq!(e, g.1);
                g.2 = self.qu_add(&g.2, &prod);
            }
            None => s.groups.push((c.den.clone(), e, prod)),
        }
    }

    pub fn sum_finish(&self, s: SpecSum) -> SpecScalar {
        let mut acc = self.zero();
        for (den, e, num) in s.groups {
            let x = self.make(e, num, den).expect("nonzero denominator");
            acc = self.add(&acc, &x);
        }
        acc
    }

    /// Write `xs` over a common denominator: `xs[k] = nums[k]/den` with
    /// everything in `Z[ζ_M][u^{±1}]`.
    pub fn common_denominator(&self, xs: &[&SpecScalar]) -> (Vec<Laurent>, Laurent) {
        let mut den: QuPoly = vec![self.bone()];
        for x in xs {
            if x.is_zero() || x.den == den || x.den.len() == 1 {
                continue;
            }
            let g = self.qu_gcd(&den, &x.den);
            den = self.qu_mul(&den, &self.qu_divmod(&x.den, &g).0);
        }
        let nums: Vec<(i64, QuPoly)> = xs
            .iter()
            .map(|x| {
                if x.is_zero() {
                    return (0, vec![]);
                }
                let (co, r) = self.qu_divmod(&den, &x.den);
                debug_assert!(r.is_empty());
                (x.e, self.qu_mul(&x.num, &co))
            })
            .collect();
        let mut l = BigInt::one();
        for p in nums.iter().map(|(_, p)| p).chain(std::iter::once(&den)) {
            for v in p.iter().flatten() {
                l = l.lcm(v.denom());
            }
        }
        let flat = |p: &QuPoly| -> Vec<BigInt> {
            p.iter().flatten().map(|v| (v * &l).to_integer()).collect()
        };
        let mut out: Vec<Laurent> = nums
            .iter()
            .map(|(e, p)| Laurent {
                lo: if p.is_empty() { 0 } else { *e },
                c: flat(p),
            })
            .collect();
        let mut d = Laurent {
            lo: 0,
            c: flat(&den),
        };
        let mut g = BigInt::zero();
        for v in out.iter().flat_map(|x| x.c.iter()).chain(d.c.iter()) {
            g = g.gcd(v);
        }
        if !g.is_zero() && !g.is_one() {
            for x in out.iter_mut().chain(std::iter::once(&mut d)) {
                for v in x.c.iter_mut() {
                    *v = &*v / &g;
                }
            }
        }
        (out, d)
    }

    fn reciprocal(&self, a: &SpecScalar) -> Result<SpecScalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.make(-a.e, a.den.clone(), a.num.clone())
    }
}

impl Ring for SpecField {
    type Elem = SpecScalar;

    fn zero(&self) -> SpecScalar {
        SpecScalar {
            e: 0,
            num: vec![],
            den: vec![self.bone()],
            order: self.spec.order(),
        }
    }
    fn one(&self) -> SpecScalar {
        self.from_i64(1)
    }
    fn from_i64(&self, v: i64) -> SpecScalar {
        let mut b = self.bzero();
        b[0] = BigRational::from_integer(BigInt::from(v));
        self.make(0, vec![b], vec![self.bone()])
            .expect("unit denominator")
    }
    fn is_zero(&self, a: &SpecScalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &SpecScalar, b: &SpecScalar) -> SpecScalar {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let e = a.e.min(b.e);
        let shift = |p: &QuPoly, s: i64| -> QuPoly {
            let mut v = vec![self.bzero(); s as usize];
            v.extend(p.iter().cloned());
            v
        };
        let an = shift(&a.num, a.e - e);
        let bn = shift(&b.num, b.e - e);
        if a.den == b.den {
            return self
                .make(e, self.qu_add(&an, &bn), a.den.clone())
                .expect("nonzero denominator");
        }
        let num = self.qu_add(&self.qu_mul(&an, &b.den), &self.qu_mul(&bn, &a.den));
        let den = self.qu_mul(&a.den, &b.den);
        self.make(e, num, den).expect("nonzero denominator")
    }
    fn sub(&self, a: &SpecScalar, b: &SpecScalar) -> SpecScalar {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &SpecScalar, b: &SpecScalar) -> SpecScalar {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let num = self.qu_mul(&a.num, &b.num);
        let den = self.qu_mul(&a.den, &b.den);
        if den.len() == 1 {
            return SpecScalar {
                e: a.e + b.e,
                num,
                den,
                order: a.order,
            };
        }
        self.make(a.e + b.e, num, den).expect("nonzero denominator")
    }
    fn neg(&self, a: &SpecScalar) -> SpecScalar {
        SpecScalar {
            e: a.e,
            num: a
                .num
                .iter()
                .map(|b| b.iter().map(|x| -x).collect())
                .collect(),
            den: a.den.clone(),
            order: a.order,
        }
    }
    fn qt(&self, a: i64, b: i64) -> SpecScalar {
        let (za, e) = self.spec.image_exponents(a, b);
        let z = self.spec.field.zeta_pow(za);
        let blk = self.spec.field.to_rational(&z);
        self.make(e, vec![blk], vec![self.bone()])
            .expect("unit denominator")
    }
    fn show(&self, a: &SpecScalar) -> String {
        a.to_string()
    }
}

impl Field for SpecField {
    fn div(&self, a: &SpecScalar, b: &SpecScalar) -> Result<SpecScalar> {
        Ok(self.mul(a, &self.reciprocal(b)?))
    }
}

/// Image of `x` at the specialization. A denominator that vanishes is
/// first divided by factors `1 − q^{pm} t^{pn}` common to numerator and
/// denominator; a denominator that still vanishes is a pole.
pub fn substitute(x: &QtScalar, spec: &Specialization) -> Result<SpecScalar> {
    let ring = LaurentRing::new(spec);
    let field = SpecField::new(spec);
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut den_img = ring.from_qt_poly(&den);
    if den_img.is_zero() {
        let (dq, dt) = x.degrees();
        let max_p = ((dq + dt) as u64 / (spec.m + spec.n)).max(1) as usize;
        for p in 1..=max_p {
            let f = binomial_factor(p as u64 * spec.m, p as u64 * spec.n);
            while let (Some(a), Some(b)) = (num.divexact(&f), den.divexact(&f)) {
                num = a;
                den = b;
            }
        }
        den_img = ring.from_qt_poly(&den);
        if den_img.is_zero() {
            let residual = QtScalar::from_polys(den.clone(), ZqtPoly::one_el())
                .map(|d| d.to_string())
                .unwrap_or_default();
            return Err(Error::Pole { residual });
        }
    }
    let num_img = ring.from_qt_poly(&num);
    field.from_laurent_pair(&num_img, &den_img)
}

/// `1 − q^a t^b` as a polynomial.
/// `1 − q^a t^b`.
pub fn binomial_factor(a: u64, b: u64) -> ZqtPoly {
    let one: ZqtPoly = UPoly::constant(UPoly::constant(BigInt::one()));
    let mono: ZqtPoly = UPoly::monomial(UPoly::monomial(BigInt::one(), a as usize), b as usize);
    one.sub(&mono)
}
