//! Exact rational functions in `q` and `t`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::upoly::{GcdDomain, UPoly, ZPoly, ZqtPoly};
use super::{Field, Ring};
use crate::error::{Error, Result};

/// `num/den` with `gcd(num, den) = 1` in `Z[q,t]` and the graded-lex
/// leading coefficient of `den` positive. Stored as polynomials in `t`
/// over `Z[q]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QtScalar {
    num: ZqtPoly,
    den: ZqtPoly,
}

/// Terms `(q-exponent, t-exponent, coefficient)` of a bivariate polynomial.
pub fn poly_terms(p: &ZqtPoly) -> Vec<(usize, usize, BigInt)> {
    let mut out = Vec::new();
    for (et, cq) in p.c.iter().enumerate() {
        for (eq, c) in cq.c.iter().enumerate() {
            if !c.is_zero() {
                out.push((eq, et, c.clone()));
            }
        }
    }
    out
}

pub fn poly_from_terms(terms: &[(usize, usize, BigInt)]) -> ZqtPoly {
    let dt = terms.iter().map(|t| t.1).max().map_or(0, |d| d + 1);
    let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); dt];
    for (eq, et, c) in terms {
        let row = &mut rows[*et];
        if row.len() <= *eq {
            row.resize(eq + 1, BigInt::zero());
        }
        row[*eq] += c;
    }
    UPoly::new(rows.into_iter().map(UPoly::new).collect())
}

fn graded_lead_negative(p: &ZqtPoly) -> bool {
    poly_terms(p)
        .into_iter()
        .max_by_key(|(eq, et, _)| (eq + et, *eq))
        .is_some_and(|(_, _, c)| c.is_negative())
}

fn qt_mono(a: usize, b: usize) -> ZqtPoly {
    UPoly::monomial(UPoly::monomial(BigInt::one(), a), b)
}

fn show_poly(p: &ZqtPoly) -> String {
    let mut terms = poly_terms(p);
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by_key(|(eq, et, _)| (eq + et, *eq, *et));
    let mut s = String::new();
    for (k, (eq, et, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if !a.is_one() || (*eq == 0 && *et == 0) {
            factors.push(a.to_string());
        }
        match eq {
            0 => {}
            1 => factors.push("q".into()),
            e => factors.push(format!("q^{e}")),
        }
        match et {
            0 => {}
            1 => factors.push("t".into()),
            e => factors.push(format!("t^{e}")),
        }
        s.push_str(&factors.join("*"));
    }
    s
}

impl QtScalar {
    pub fn zero() -> Self {
        QtScalar {
            num: ZqtPoly::zero_el(),
            den: ZqtPoly::one_el(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        QtScalar {
            num: UPoly::constant(UPoly::constant(BigInt::from(v))),
            den: ZqtPoly::one_el(),
        }
    }

    /// `q^a t^b` for any integer exponents.
    pub fn monomial(a: i64, b: i64) -> Self {
        let (na, da) = if a >= 0 {
            (a as usize, 0)
        } else {
            (0, (-a) as usize)
        };
        let (nb, db) = if b >= 0 {
            (b as usize, 0)
        } else {
            (0, (-b) as usize)
        };
        QtScalar {
            num: qt_mono(na, nb),
            den: qt_mono(da, db),
        }
    }

    pub fn from_polys(num: ZqtPoly, den: ZqtPoly) -> Result<Self> {
        if den.is_zero_el() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero_el() {
            return Ok(Self::zero());
        }
        let g = num.gcd_poly(&den);
        let (num, den) = if g.is_one_el() {
            (num, den)
        } else {
            (
                num.divexact(&g).expect("gcd divides numerator"),
                den.divexact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::signed(num, den))
    }

    fn signed(num: ZqtPoly, den: ZqtPoly) -> Self {
        if graded_lead_negative(&den) {
            QtScalar {
                num: num.neg_poly(),
                den: den.neg_poly(),
            }
        } else {
            QtScalar { num, den }
        }
    }

    pub fn numer(&self) -> &ZqtPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZqtPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero_el()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one_el()
    }

    pub fn neg(&self) -> Self {
        QtScalar {
            num: self.num.neg_poly(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one_el() {
                return QtScalar {
                    num,
                    den: self.den.clone(),
                };
            }
            return Self::from_polys(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = self.den.gcd_poly(&o.den);
        let sd = self.den.divexact(&g).expect("gcd divides");
        let od = o.den.divexact(&g).expect("gcd divides");
        let num = self.num.mul(&od).add(&o.num.mul(&sd));
        let den = self.den.mul(&od);
        if num.is_zero_el() {
            return Self::zero();
        }
        let g2 = num.gcd_poly(&g);
        if g2.is_one_el() {
            Self::signed(num, den)
        } else {
            Self::signed(
                num.divexact(&g2).expect("gcd divides"),
                den.divexact(&g2).expect("gcd divides"),
            )
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one_el() && o.den.is_one_el() {
            return QtScalar {
                num: self.num.mul(&o.num),
                den: ZqtPoly::one_el(),
            };
        }
        let g1 = self.num.gcd_poly(&o.den);
        let g2 = o.num.gcd_poly(&self.den);
        let a = self.num.divexact(&g1).expect("gcd divides");
        let d = o.den.divexact(&g1).expect("gcd divides");
        let b = o.num.divexact(&g2).expect("gcd divides");
        let c = self.den.divexact(&g2).expect("gcd divides");
        Self::signed(a.mul(&b), c.mul(&d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::signed(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// `(q-degree, t-degree)` of numerator and denominator combined.
    pub fn degrees(&self) -> (usize, usize) {
        let f = |p: &ZqtPoly| {
            let dt = p.degree().unwrap_or(0);
            let dq = p.c.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
            (dq, dt)
        };
        let (a, b) = f(&self.num);
        let (c, d) = f(&self.den);
        (a.max(c), b.max(d))
    }

    /// Substitute `t ↦ 1/t` and re-canonicalize.
    pub fn invert_t(&self) -> Self {
        let flip = |p: &ZqtPoly| -> (ZqtPoly, usize) {
            let d = p.degree().unwrap_or(0);
            let mut c = p.c.clone();
            c.reverse();
            (UPoly::new(c), d)
        };
        let (n, dn) = flip(&self.num);
        let (d, dd) = flip(&self.den);
        // num(1/t)/den(1/t) = t^dd·n / (t^dn·d)
        let (n, d) = if dd >= dn {
            (n.shift(dd - dn), d)
        } else {
            (n, d.shift(dn - dd))
        };
        Self::from_polys(n, d).expect("nonzero")
    }

    pub fn to_json(&self) -> Value {
        let enc = |p: &ZqtPoly| -> Value {
            Value::Array(
                poly_terms(p)
                    .into_iter()
                    .map(|(eq, et, c)| json!([eq, et, c.to_string()]))
                    .collect(),
            )
        };
        json!({"numer": enc(&self.num), "denom": enc(&self.den)})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let dec = |v: &Value| -> Result<ZqtPoly> {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::Parse("expected term array".into()))?;
            let mut terms = Vec::new();
            for t in arr {
                let t = t
                    .as_array()
                    .filter(|t| t.len() == 3)
                    .ok_or_else(|| Error::Parse("expected [eq, et, coeff]".into()))?;
                let eq = t[0]
                    .as_u64()
                    .ok_or_else(|| Error::Parse("bad q exponent".into()))?;
                let et = t[1]
                    .as_u64()
                    .ok_or_else(|| Error::Parse("bad t exponent".into()))?;
                let c: BigInt = match &t[2] {
                    Value::String(s) => s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?,
                    Value::Number(n) => BigInt::from(
                        n.as_i64()
                            .ok_or_else(|| Error::Parse("bad coefficient".into()))?,
                    ),
                    _ => return Err(Error::Parse("bad coefficient".into())),
                };
                terms.push((eq as usize, et as usize, c));
            }
            Ok(poly_from_terms(&terms))
        };
        let num = dec(v
            .get("numer")
            .ok_or_else(|| Error::Parse("missing numer".into()))?)?;
        let den = match v.get("denom") {
            Some(d) => dec(d)?,
            None => ZqtPoly::one_el(),
        };
        Self::from_polys(num, den)
    }
}

impl fmt::Display for QtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_el() {
            write!(f, "{}", show_poly(&self.num))
        } else {
            write!(f, "({})/({})", show_poly(&self.num), show_poly(&self.den))
        }
    }
}

/// The field `Q(q,t)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct QtField;

impl Ring for QtField {
    type Elem = QtScalar;
    fn zero(&self) -> QtScalar {
        QtScalar::zero()
    }
    fn one(&self) -> QtScalar {
        QtScalar::one()
    }
    fn from_i64(&self, v: i64) -> QtScalar {
        QtScalar::from_int(v)
    }
    fn is_zero(&self, a: &QtScalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &QtScalar, b: &QtScalar) -> QtScalar {
        a.add(b)
    }
    fn sub(&self, a: &QtScalar, b: &QtScalar) -> QtScalar {
        a.sub(b)
    }
    fn mul(&self, a: &QtScalar, b: &QtScalar) -> QtScalar {
        a.mul(b)
    }
    fn neg(&self, a: &QtScalar) -> QtScalar {
        a.neg()
    }
    fn qt(&self, a: i64, b: i64) -> QtScalar {
        QtScalar::monomial(a, b)
    }
    fn show(&self, a: &QtScalar) -> String {
        a.to_string()
    }
}

impl Field for QtField {
    fn div(&self, a: &QtScalar, b: &QtScalar) -> Result<QtScalar> {
        a.div(b)
    }
}

/// `Z[q]` polynomial helper used by tests and oracles.
pub fn zpoly(v: &[i64]) -> ZPoly {
    UPoly::new(v.iter().map(|&x| BigInt::from(x)).collect())
}
