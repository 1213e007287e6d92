//! Cherednik operators `ξ_i`, Dunkl operators `D_i`, the polynomial
//! Jucys–Murphy elements `φ_i`, and the projection `𝒯_α` onto `M_α` at a
//! specialization.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::combinat::{compositions_of, dominance_tri, rank_function, Composition};
use crate::error::{Error, Result};
use crate::polyring::{leading_order, MacPoly};
use crate::scalars::{
    vanishing_exponent, BinFrac, BinFracRing, Field, LaurentRing, Ring, SpecField, Specialization,
};

/// Default cap on the number of labels `β ◁ α` scanned by the projection.
pub const PROJECTION_CAP: usize = 20_000;

/// A single operator letter. Words act on the right, so letters are
/// applied in written order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    T(usize),
    TInv(usize),
    Shift,
    MulX(usize),
    /// Multiplication by `q^a t^b`.
    Qt(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Word(Vec<Letter>),
    Xi(usize),
    Dunkl(usize),
    Phi(usize),
    /// `op − q^a t^b`.
    Shifted(Box<OperatorExpr>, i64, i64),
    /// Apply each operator in turn.
    Compose(Vec<OperatorExpr>),
}

impl OperatorExpr {
    /// The defining word of `ξ_i` in `N` variables.
    pub fn cherednik_word(i: usize, n: usize) -> Vec<Letter> {
        let mut w = vec![Letter::Qt(0, i as i64 - 1)];
        w.extend((1..i).rev().map(Letter::TInv));
        w.push(Letter::Shift);
        w.extend((i..n).rev().map(Letter::T));
        w
    }

    pub fn apply<R: Ring>(&self, ring: &R, p: &MacPoly<R>) -> Result<MacPoly<R>> {
        match self {
            OperatorExpr::Word(w) => apply_word(ring, p, w),
            OperatorExpr::Xi(i) => apply_cherednik(ring, p, *i),
            OperatorExpr::Dunkl(i) => apply_dunkl(ring, p, *i),
            OperatorExpr::Phi(i) => apply_jucys_poly(ring, p, *i),
            OperatorExpr::Shifted(op, a, b) => {
                let x = op.apply(ring, p)?;
                Ok(x.sub(ring, &p.scale_qt(ring, *a, *b)))
            }
            OperatorExpr::Compose(ops) => {
                let mut x = p.clone();
                for op in ops {
                    x = op.apply(ring, &x)?;
                }
                Ok(x)
            }
        }
    }
}

pub fn apply_word<R: Ring>(ring: &R, p: &MacPoly<R>, w: &[Letter]) -> Result<MacPoly<R>> {
    let mut x = p.clone();
    for l in w {
        x = match l {
            Letter::T(i) => x.apply_ti(ring, *i)?,
            Letter::TInv(i) => x.apply_ti_inv(ring, *i)?,
            Letter::Shift => x.apply_shift(ring),
            Letter::MulX(i) => x.mul_var(*i)?,
            Letter::Qt(a, b) => x.scale_qt(ring, *a, *b),
        };
    }
    Ok(x)
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(())
}

/// `p ξ_i` with `ξ_i = t^{i−1} T_{i−1}⁻¹ ⋯ T_1⁻¹ π T_{N−1} ⋯ T_i`.
pub fn apply_cherednik<R: Ring>(ring: &R, p: &MacPoly<R>, i: usize) -> Result<MacPoly<R>> {
    let n = p.nvars();
    check_index(i, n)?;
    let mut x = p.scale_qt(ring, 0, i as i64 - 1);
    for j in (1..i).rev() {
        x = x.apply_ti_inv(ring, j)?;
    }
    x = x.apply_shift(ring);
    for j in (i..n).rev() {
        x = x.apply_ti(ring, j)?;
    }
    Ok(x)
}

/// `p D_i`: `D_N = (1/x_N)(1 − ξ_N)` and `D_i = (1/t) T_i D_{i+1} T_i`.
pub fn apply_dunkl<R: Ring>(ring: &R, p: &MacPoly<R>, i: usize) -> Result<MacPoly<R>> {
    let n = p.nvars();
    check_index(i, n)?;
    if i == n {
        let x = p.sub(ring, &apply_cherednik(ring, p, n)?);
        return x.div_var(n);
    }
    let a = p.apply_ti(ring, i)?;
    let b = apply_dunkl(ring, &a, i + 1)?;
    Ok(b.apply_ti(ring, i)?.scale_qt(ring, 0, -1))
}

/// `p φ_i`: `φ_N = 1` and `φ_i = (1/t) T_i φ_{i+1} T_i`.
pub fn apply_jucys_poly<R: Ring>(ring: &R, p: &MacPoly<R>, i: usize) -> Result<MacPoly<R>> {
    let n = p.nvars();
    check_index(i, n)?;
    if i == n {
        return Ok(p.clone());
    }
    let a = p.apply_ti(ring, i)?;
    let b = apply_jucys_poly(ring, &a, i + 1)?;
    Ok(b.apply_ti(ring, i)?.scale_qt(ring, 0, -1))
}

/// `ζ_α(i) = q^{α_i} t^{N − r_α(i)}` as exponent pairs.
pub fn spectral_exponents(alpha: &Composition) -> Vec<(i64, i64)> {
    let n = alpha.len() as i64;
    rank_function(alpha)
        .iter()
        .zip(alpha.parts())
        .map(|(&r, &a)| (a as i64, n - r as i64))
        .collect()
}

/// The smallest index at which the spectral vectors of `α` and `β`
/// differ after specialization.
pub fn separating_index(
    alpha: &Composition,
    beta: &Composition,
    spec: &Specialization,
) -> Option<usize> {
    let za = spectral_exponents(alpha);
    let zb = spectral_exponents(beta);
    (0..alpha.len())
        .find(|&k| vanishing_exponent(za[k].0 - zb[k].0, za[k].1 - zb[k].1, spec).is_none())
        .map(|k| k + 1)
}

/// One factor `(ξ_i − ζ_β(i))/(ζ_α(i) − ζ_β(i))` of `𝒯_α`, keyed by
/// `(i, β_i, r_β(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectionFactor {
    pub i: usize,
    /// `ζ_β(i)` as `(q, t)` exponents.
    pub value: (i64, i64),
}

/// `𝒯_α` at a specialization, as a product of distinct factors.
#[derive(Clone, Debug)]
pub struct Projection {
    pub alpha: Composition,
    pub spec: Specialization,
    pub factors: Vec<ProjectionFactor>,
    /// Number of labels `β ◁ α` the product covers.
    pub labels: usize,
}

/// All `β` of the same size and length with `α ▷ β`.
pub fn labels_below(alpha: &Composition, cap: usize) -> Result<Vec<Composition>> {
    let all = compositions_of(alpha.size() as u32, alpha.len());
    let below: Vec<Composition> = all
        .into_iter()
        .filter(|b| dominance_tri(alpha, b))
        .collect();
    if below.len() > cap {
        return Err(Error::CapExceeded {
            what: format!("{} labels below {alpha}", below.len()),
            cap,
        });
    }
    Ok(below)
}

/// Build `𝒯_α`. Each `β ◁ α` contributes the factor for its separating
/// index; a `β` without one is a critical obstruction.
pub fn projection_operator(alpha: &Composition, spec: &Specialization) -> Result<Projection> {
    projection_operator_capped(alpha, spec, PROJECTION_CAP)
}

pub fn projection_operator_capped(
    alpha: &Composition,
    spec: &Specialization,
    cap: usize,
) -> Result<Projection> {
    let below = labels_below(alpha, cap)?;
    let mut seen = HashSet::new();
    let mut factors = Vec::new();
    for beta in &below {
        let i = separating_index(alpha, beta, spec).ok_or_else(|| Error::CriticalObstruction {
            beta: beta.to_string(),
        })?;
        let zb = spectral_exponents(beta)[i - 1];
        let f = ProjectionFactor { i, value: zb };
        if seen.insert(f.clone()) {
            factors.push(f);
        }
    }
    Ok(Projection {
        alpha: alpha.clone(),
        spec: spec.clone(),
        factors,
        labels: below.len(),
    })
}

impl Projection {
    /// The numerator `∏ (ξ_i − ζ_β(i))` as an operator expression.
    pub fn numerator_expr(&self) -> OperatorExpr {
        OperatorExpr::Compose(
            self.factors
                .iter()
                .map(|f| {
                    OperatorExpr::Shifted(Box::new(OperatorExpr::Xi(f.i)), f.value.0, f.value.1)
                })
                .collect(),
        )
    }

    /// `∏ (ζ_α(i) − ζ_β(i))` in the given ring.
    pub fn denominator<R: Ring>(&self, ring: &R) -> R::Elem {
        let za = spectral_exponents(&self.alpha);
        let mut d = ring.one();
        for f in &self.factors {
            let (a, b) = za[f.i - 1];
            let v = ring.sub(&ring.qt(a, b), &ring.qt(f.value.0, f.value.1));
            d = ring.mul(&d, &v);
        }
        d
    }

    /// `x^α ∏(ξ_i − ζ_β(i))` over `Z[ζ][u^{±1}]`.
    pub fn apply_numerator(
        &self,
        ring: &LaurentRing,
        p: &MacPoly<LaurentRing>,
    ) -> Result<MacPoly<LaurentRing>> {
        self.numerator_expr().apply(ring, p)
    }

    /// `x^α 𝒯_α`, the monic form of `M_α` at the specialization.
    pub fn monic(&self) -> Result<MacPoly<SpecField>> {
        let ring = LaurentRing::new(&self.spec);
        let field = SpecField::new(&self.spec);
        let start = MacPoly::monomial(&ring, &self.alpha, ring.one())?;
        let num = self.apply_numerator(&ring, &start)?;
        let den = self.denominator(&ring);
        let den = field.from_laurent_pair(&den, &ring.one())?;
        num.map_ring(&field, |c| {
            let v = field.from_laurent_pair(c, &ring.one())?;
            field.div(&v, &den)
        })
    }
}

/// `x^α 𝒯_α` computed without forming the operator product: the
/// coefficient of `x^γ` is fixed by the `ξ_i` eigen-equation at the
/// separating index `i` of `γ`, solved in decreasing `▷` order.
pub fn solve_projection_frac(
    alpha: &Composition,
    spec: &Specialization,
    cap: usize,
) -> Result<MacPoly<BinFracRing>> {
    let ring = BinFracRing::new(spec);
    let lr = ring.laurent();
    let n = alpha.len();
    let mut labels = labels_below(alpha, cap)?;
    labels.sort_by(|a, b| leading_order(b, a));
    let index: HashMap<&Composition, usize> =
        labels.iter().enumerate().map(|(k, g)| (g, k)).collect();
    let za = spectral_exponents(alpha);
    let mut sep = Vec::with_capacity(labels.len());
    let mut zg = Vec::with_capacity(labels.len());
    for g in &labels {
        let i = separating_index(alpha, g, spec).ok_or_else(|| Error::CriticalObstruction {
            beta: g.to_string(),
        })?;
        zg.push(spectral_exponents(g)[i - 1]);
        sep.push(i);
    }
    let used: BTreeSet<usize> = sep.iter().copied().collect();
    let mut accs: Vec<BinFrac> = vec![BinFrac::default(); labels.len()];
    let scatter = |beta: &Composition, c: &BinFrac, accs: &mut Vec<BinFrac>| -> Result<()> {
        let x = MacPoly::monomial(lr, beta, lr.one())?;
        for &i in &used {
            for (g, m) in apply_cherednik(lr, &x, i)?.terms() {
                if let Some(&k) = index.get(&g) {
                    if sep[k] == i && &g != beta {
                        let y = ring.mul(c, &ring.from_laurent(m.clone()));
                        ring.add_assign(&mut accs[k], &y);
                    }
                }
            }
        }
        Ok(())
    };
    let one = ring.one();
    scatter(alpha, &one, &mut accs)?;
    let mut out = vec![(alpha.clone(), one)];
    for k in 0..labels.len() {
        let s = std::mem::take(&mut accs[k]);
        if s.numer().is_zero() {
            continue;
        }
        let c = ring.reduce(ring.div_qt_difference(&s, za[sep[k] - 1], zg[k])?);
        scatter(&labels[k], &c, &mut accs)?;
        out.push((labels[k].clone(), c));
    }
    MacPoly::from_terms(&ring, n, out)
}

/// [`solve_projection_frac`] with coefficients reduced in `Q(ζ_M)(u)`.
pub fn solve_projection(
    alpha: &Composition,
    spec: &Specialization,
    cap: usize,
) -> Result<MacPoly<SpecField>> {
    let ring = BinFracRing::new(spec);
    let field = SpecField::new(spec);
    solve_projection_frac(alpha, spec, cap)?.map_ring(&field, |c| ring.to_spec(&field, c))
}
