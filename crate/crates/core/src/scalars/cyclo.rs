//! Cyclotomic fields `Q[x]/Φ_M(x)` with dense coefficient vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};

/// `Φ_M` by dividing `x^M − 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(m: usize) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut p = vec![BigInt::zero(); m + 1];
    p[0] = BigInt::from(-1);
    p[m] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = divide_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn divide_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

/// Euler's totient.
pub fn totient(m: usize) -> usize {
    (1..=m).filter(|&k| k.gcd(&m) == 1).count()
}

/// Arithmetic in `Z[ζ_M]` and `Q(ζ_M)` where `ζ_M` is the class of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloField {
    order: usize,
    phi: Vec<BigInt>,
}

impl CycloField {
    pub fn new(order: usize) -> Self {
        CycloField {
            order,
            phi: cyclotomic_poly(order),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Degree `φ(M)` of the extension.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    /// Reduce a coefficient vector of any length modulo `Φ_M`.
    pub fn reduce<T>(&self, mut v: Vec<T>) -> Vec<T>
    where
        T: Num + Clone,
        T: From<BigInt>,
    {
        let d = self.degree();
        for k in (d..v.len()).rev() {
            let c = v[k].clone();
            if !c.is_zero() {
                for j in 0..d {
                    let pj: T = T::from(self.phi[j].clone());
                    v[k - d + j] = v[k - d + j].clone() - c.clone() * pj;
                }
                v[k] = T::zero();
            }
        }
        v.resize(d, T::zero());
        v
    }

    pub fn mul<T>(&self, a: &[T], b: &[T]) -> Vec<T>
    where
        T: Num + Clone,
        T: From<BigInt>,
    {
        let d = self.degree();
        if d == 1 {
            return vec![a[0].clone() * b[0].clone()];
        }
        let mut buf = vec![T::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    buf[i + j] = buf[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        self.reduce(buf)
    }

    /// `ζ^a` as an integer vector.
    pub fn zeta_pow(&self, a: i64) -> Vec<BigInt> {
        let e = a.rem_euclid(self.order as i64) as usize;
        let mut v = vec![BigInt::zero(); e.max(self.degree()) + 1];
        v[e] = BigInt::one();
        self.reduce(v)
    }

    pub fn int(&self, c: BigInt) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[0] = c;
        v
    }

    pub fn to_rational(&self, a: &[BigInt]) -> Vec<BigRational> {
        a.iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect()
    }

    /// Inverse in `Q(ζ_M)` by the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self, a: &[BigRational]) -> Result<Vec<BigRational>> {
        if a.iter().all(|x| x.is_zero()) {
            return Err(Error::DivisionByZero);
        }
        let d = self.degree();
        if d == 1 {
            return Ok(vec![a[0].recip()]);
        }
        type P = Vec<BigRational>;
        fn trim(mut p: P) -> P {
            while p.last().is_some_and(|x| x.is_zero()) {
                p.pop();
            }
            p
        }
        fn sub_mul(a: &P, q: &P, b: &P) -> P {
            let mut out = a.clone();
            for (i, x) in q.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    if out.len() <= i + j {
                        out.resize(i + j + 1, BigRational::zero());
                    }
                    out[i + j] = &out[i + j] - x * y;
                }
            }
            trim(out)
        }
        fn divmod(a: &P, b: &P) -> (P, P) {
            let mut r = a.clone();
            let db = b.len() - 1;
            if r.len() < b.len() {
                return (vec![], r);
            }
            let mut q = vec![BigRational::zero(); r.len() - db];
            let lb = b[db].clone();
            for k in (0..q.len()).rev() {
                let c = &r[k + db] / &lb;
                if !c.is_zero() {
                    for (j, bj) in b.iter().enumerate() {
                        r[k + j] = &r[k + j] - &c * bj;
                    }
                }
                q[k] = c;
            }
            (trim(q), trim(r))
        }
        // invariant: s·a ≡ r (mod Φ)
        let mut r0: P = trim(
            self.phi
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        );
        let mut r1: P = trim(a.to_vec());
        let mut s0: P = vec![];
        let mut s1: P = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = divmod(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r1.is_empty() {
            return Err(Error::Internal("non-invertible cyclotomic element".into()));
        }
        let c = r1[0].recip();
        let mut out: P = s1.into_iter().map(|x| x * &c).collect();
        out.resize(out.len().max(d), BigRational::zero());
        Ok(self.reduce(out))
    }
}
