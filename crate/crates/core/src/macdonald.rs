//! Nonsymmetric Macdonald polynomials `M_α` built by the Yang–Baxter
//! recursion, with the convention that the leading coefficient is a
//! monomial `q^a t^b` determined by the construction path.

use std::collections::HashMap;

use crate::cherednik::{apply_cherednik, spectral_exponents};
use crate::combinat::{rank_function, Composition};
use crate::error::{Error, Result};
use crate::polyring::MacPoly;
use crate::scalars::{binomial_factor, poly_terms, Field, QtField, QtScalar, Ring, ZqtPoly};

/// Cap on `|α|` for generic construction.
pub const MAX_GENERIC_SIZE: usize = 40;
/// Cap on `N` for generic construction.
pub const MAX_GENERIC_VARS: usize = 10;

pub fn spectral_vector(alpha: &Composition) -> Vec<QtScalar> {
    spectral_exponents(alpha)
        .into_iter()
        .map(|(a, b)| QtScalar::monomial(a, b))
        .collect()
}

/// `ρ = ζ_α(i+1)/ζ_α(i)` as exponents.
pub fn step_ratio(alpha: &Composition, i: usize) -> (i64, i64) {
    let z = spectral_exponents(alpha);
    (z[i].0 - z[i - 1].0, z[i].1 - z[i - 1].1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStep {
    /// `M_{βΦ} = x_N (M_β π)`.
    Affine,
    /// `M_{αs_i}` from `M_α` with `α_i < α_{i+1}`.
    Swap(usize),
}

/// Steps from `0` to `α`, in the order they are applied.
pub fn yang_baxter_path(alpha: &Composition) -> Vec<PathStep> {
    let mut rev = Vec::new();
    let mut a = alpha.clone();
    let n = a.len();
    loop {
        if let Some(i) = (1..n).find(|&i| a.at(i) > a.at(i + 1)) {
            a = a.swapped(i);
            rev.push(PathStep::Swap(i));
            continue;
        }
        if a.size() == 0 {
            break;
        }
        // a is weakly increasing with a_N > 0; undo the affine raise.
        let mut p = vec![a.at(n) - 1];
        p.extend_from_slice(&a.parts()[..n - 1]);
        a = Composition(p);
        rev.push(PathStep::Affine);
    }
    rev.reverse();
    rev
}

/// Exponents `(a, b)` of the leading coefficient `q^a t^b` of `M_α`.
pub fn leading_exponents(alpha: &Composition) -> (i64, i64) {
    let n = alpha.len();
    let mut a = Composition::zeros(n);
    let (mut eq, mut et) = (0i64, 0i64);
    for s in yang_baxter_path(alpha) {
        match s {
            PathStep::Affine => {
                eq += a.at(1) as i64;
                a = a.affine_raise();
            }
            PathStep::Swap(i) => {
                et += 1;
                a = a.swapped(i);
            }
        }
    }
    (eq, et)
}

/// `(1−t)/(1−ρ)` for the step out of `α` at `i`.
pub fn step_coefficient<R: Field>(ring: &R, alpha: &Composition, i: usize) -> Result<R::Elem> {
    let (a, b) = step_ratio(alpha, i);
    let den = ring.one_minus_qt(a, b);
    if ring.is_zero(&den) {
        return Err(Error::DivisionByZero);
    }
    ring.div(&ring.one_minus_qt(0, 1), &den)
}

/// `M_{αs_i} = M_α T_i + (1−t)/(1−ρ) M_α`, for `α_i < α_{i+1}`.
pub fn macdonald_step<R: Field>(
    ring: &R,
    m: &MacPoly<R>,
    alpha: &Composition,
    i: usize,
) -> Result<MacPoly<R>> {
    check_step(alpha, i)?;
    if alpha.at(i) >= alpha.at(i + 1) {
        return Err(Error::IllegalStep(i));
    }
    let c = step_coefficient(ring, alpha, i)?;
    Ok(m.apply_ti(ring, i)?.add(ring, &m.scale(ring, &c)))
}

/// Inverse of [`macdonald_step`]: `M_γ` from `M_{γs_i}`, with
/// `(T_i + c)⁻¹ = (T_i + 1 − t − c)/(t + c(1 − t − c))`.
pub fn macdonald_step_down<R: Field>(
    ring: &R,
    m: &MacPoly<R>,
    alpha: &Composition,
    i: usize,
) -> Result<MacPoly<R>> {
    check_step(alpha, i)?;
    if alpha.at(i) <= alpha.at(i + 1) {
        return Err(Error::IllegalStep(i));
    }
    let gamma = alpha.swapped(i);
    let c = step_coefficient(ring, &gamma, i)?;
    let e = ring.sub(&ring.one_minus_qt(0, 1), &c);
    let den = ring.add(&ring.t(), &ring.mul(&c, &e));
    if ring.is_zero(&den) {
        return Err(Error::DivisionByZero);
    }
    let x = m.apply_ti(ring, i)?.add(ring, &m.scale(ring, &e));
    Ok(x.scale(ring, &ring.div(&ring.one(), &den)?))
}

fn check_step(alpha: &Composition, i: usize) -> Result<()> {
    if i == 0 || i >= alpha.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: alpha.len().saturating_sub(1),
        });
    }
    Ok(())
}

/// Coefficients `(c₁, c₂)` with `M_α T_i = c₁ M_α + c₂ M_{αs_i}` when
/// `α_i > α_{i+1}`.
pub fn step_relation<R: Field>(
    ring: &R,
    alpha: &Composition,
    i: usize,
) -> Result<(R::Elem, R::Elem)> {
    check_step(alpha, i)?;
    if alpha.at(i) <= alpha.at(i + 1) {
        return Err(Error::IllegalStep(i));
    }
    let c = step_coefficient(ring, &alpha.swapped(i), i)?;
    let tm1 = ring.sub(&ring.t(), &ring.one());
    let c1 = ring.add(&tm1, &c);
    let c2 = ring.sub(&ring.sub(&ring.t(), &ring.mul(&tm1, &c)), &ring.mul(&c, &c));
    Ok((c1, c2))
}

/// Memoizing Yang–Baxter builder over any field.
pub struct MacdonaldBuilder<'a, R: Field> {
    ring: &'a R,
    n: usize,
    cache: HashMap<Composition, MacPoly<R>>,
}

impl<'a, R: Field> MacdonaldBuilder<'a, R> {
    pub fn new(ring: &'a R, n: usize) -> Self {
        MacdonaldBuilder {
            ring,
            n,
            cache: HashMap::new(),
        }
    }

    pub fn build(&mut self, alpha: &Composition) -> Result<MacPoly<R>> {
        if alpha.len() != self.n {
            return Err(Error::SizeMismatch(format!(
                "{alpha} in {} variables",
                self.n
            )));
        }
        if alpha.size() as usize > MAX_GENERIC_SIZE || self.n > MAX_GENERIC_VARS {
            return Err(Error::CapExceeded {
                what: format!("generic build of {alpha}"),
                cap: MAX_GENERIC_SIZE,
            });
        }
        if let Some(m) = self.cache.get(alpha) {
            return Ok(m.clone());
        }
        let ring = self.ring;
        let mut a = Composition::zeros(self.n);
        let mut m = MacPoly::constant(ring, self.n, ring.one());
        for s in yang_baxter_path(alpha) {
            let next = match s {
                PathStep::Affine => a.affine_raise(),
                PathStep::Swap(i) => a.swapped(i),
            };
            if let Some(c) = self.cache.get(&next) {
                m = c.clone();
            } else {
                m = match s {
                    PathStep::Affine => m.apply_shift(ring).mul_var(self.n)?,
                    PathStep::Swap(i) => macdonald_step(ring, &m, &a, i)?,
                };
                self.cache.insert(next.clone(), m.clone());
            }
            a = next;
        }
        Ok(m)
    }
}

/// `M_α` over `Q(q,t)`, checked against the Cherednik eigenvalues and the
/// expected denominators.
pub fn build_macdonald(alpha: &Composition) -> Result<MacPoly<QtField>> {
    let m = MacdonaldBuilder::new(&QtField, alpha.len()).build(alpha)?;
    check_eigen(&QtField, &m, alpha)?;
    check_denominators(&m, alpha)?;
    Ok(m)
}

/// `p ξ_i = ζ_α(i) p` for all `i`.
pub fn check_eigen<R: Ring>(ring: &R, p: &MacPoly<R>, alpha: &Composition) -> Result<()> {
    for (i, (a, b)) in spectral_exponents(alpha).into_iter().enumerate() {
        let lhs = apply_cherednik(ring, p, i + 1)?;
        if lhs != p.scale_qt(ring, a, b) {
            return Err(Error::EigenCheck(format!("ξ_{} on M_{alpha}", i + 1)));
        }
    }
    Ok(())
}

fn is_unit(p: &ZqtPoly) -> bool {
    let ts = poly_terms(p);
    ts.len() == 1 && (ts[0].2 == 1.into() || ts[0].2 == (-1).into())
}

/// Every reduced denominator is a product of factors of `1 − q^a t^b`.
pub fn check_denominators(p: &MacPoly<QtField>, alpha: &Composition) -> Result<()> {
    let amax = alpha.size();
    let bmax = alpha.len() as u64;
    let mut seen = Vec::new();
    for (_, c) in p.terms() {
        let d = c.denom();
        if seen.contains(d) {
            continue;
        }
        seen.push(d.clone());
        let mut d = d.clone();
        for a in 0..=amax {
            for b in 0..=bmax {
                if a + b == 0 {
                    continue;
                }
                let f = binomial_factor(a, b);
                loop {
                    let g = d.gcd_poly(&f);
                    if is_unit(&g) {
                        break;
                    }
                    d = d
                        .divexact(&g)
                        .ok_or(Error::Internal("gcd does not divide".into()))?;
                }
            }
        }
        if !is_unit(&d) {
            return Err(Error::EigenCheck(format!(
                "unexpected denominator factor in M_{alpha}"
            )));
        }
    }
    Ok(())
}

/// Divide by the leading coefficient.
pub fn monic_normalize<R: Field>(ring: &R, p: &MacPoly<R>) -> Result<MacPoly<R>> {
    let (_, lc) = p.leading().ok_or(Error::DivisionByZero)?;
    Ok(p.scale(ring, &ring.div(&ring.one(), &lc)?))
}

/// Ranks of `α`, as used for the spectral vector.
pub fn ranks(alpha: &Composition) -> Vec<usize> {
    rank_function(alpha)
}
