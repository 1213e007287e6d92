//! End-to-end checks that the quasistaircase labels give singular
//! polynomials of isotype `τ` at a specialization, plus the enumeration of
//! singular values for two-row shapes.

use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cherednik::{
    apply_cherednik, apply_dunkl, apply_jucys_poly, solve_projection_frac, spectral_exponents,
};
use crate::combinat::{enumerate_rsyt, rank_function, Composition, Partition, Tableau};
use crate::critical::find_critical_partners;
use crate::error::{Error, Result};
use crate::heckerep::{content_gap, tau_case, TauCase};
use crate::macdonald::{build_macdonald, leading_exponents, step_coefficient, step_relation};
use crate::polyring::MacPoly;
use crate::quasistair::{
    alpha_of_tableau, build_theta, equipolar_reduce, has_property_v, rank_of_label, Quasistaircase,
};
use crate::scalars::{
    substitute, BinFracRing, LaurentRing, QtField, Ring, SpecField, SpecScalar, Specialization,
};

pub const REPORT_VERSION: u32 = 1;

/// Default cap on `|labels below α|` for a single solve.
pub const TERM_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Substitute,
    Project,
}

/// `M_α` at the specialization with leading coefficient `q^a t^b`, over
/// the binomial-fraction ring. Succeeds exactly when every label below
/// `α` has a separating index, which certifies the absence of poles.
pub fn project_frac(
    alpha: &Composition,
    spec: &Specialization,
    cap: usize,
) -> Result<MacPoly<BinFracRing>> {
    let ring = BinFracRing::new(spec);
    let (a, b) = leading_exponents(alpha);
    Ok(solve_projection_frac(alpha, spec, cap)?.scale_qt(&ring, a, b))
}

pub fn specialize_macdonald(
    alpha: &Composition,
    spec: &Specialization,
    strategy: Strategy,
) -> Result<MacPoly<SpecField>> {
    let field = SpecField::new(spec);
    match strategy {
        Strategy::Substitute => build_macdonald(alpha)?.map_ring(&field, |c| substitute(c, spec)),
        Strategy::Project => {
            let partners =
                find_critical_partners(alpha, spec.m() as u32, spec.n() as u32, alpha.len())?;
            if let Some(p) = partners.first() {
                return Err(Error::CriticalObstruction {
                    beta: p.beta.to_string(),
                });
            }
            let ring = BinFracRing::new(spec);
            project_frac(alpha, spec, TERM_CAP)?.map_ring(&field, |c| ring.to_spec(&field, c))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        CheckResult {
            name,
            status: Status::Pass,
            detail: detail.into(),
            witness: None,
        }
    }
    fn fail(name: &'static str, detail: impl Into<String>, witness: Value) -> Self {
        CheckResult {
            name,
            status: Status::Fail,
            detail: detail.into(),
            witness: Some(witness),
        }
    }
    fn skipped(name: &'static str) -> Self {
        CheckResult {
            name,
            status: Status::Skipped,
            detail: "outside the desk-scale gate; run with full".into(),
            witness: None,
        }
    }
    fn from_outcome(
        name: &'static str,
        ok_detail: String,
        r: std::result::Result<(), (String, Value)>,
    ) -> Self {
        match r {
            Ok(()) => Self::pass(name, ok_detail),
            Err((d, w)) => Self::fail(name, d, w),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelInfo {
    pub tableau: Vec<Vec<usize>>,
    pub alpha: Composition,
    pub content: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecInfo {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub omega_order: usize,
    pub description: String,
}

impl SpecInfo {
    pub fn of(spec: &Specialization) -> Self {
        SpecInfo {
            m: spec.m(),
            n: spec.n(),
            k: spec.k(),
            omega_order: spec.order(),
            description: spec.describe(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub version: u32,
    pub quasistaircase: Quasistaircase,
    pub specialization: SpecInfo,
    pub full: bool,
    pub labels: Vec<LabelInfo>,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    /// No enabled check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Every check ran and passed.
    pub fn fully_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// `None` applies [`desk_scale`].
    pub full: Option<bool>,
    pub term_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            full: None,
            term_cap: TERM_CAP,
        }
    }
}

/// Largest monomial count of degree `|λ|` in `N` variables for which the
/// polynomial checks run by default.
pub const DESK_TERMS: u64 = 6188;

/// The support of a label lies among the degree-`|λ|` monomials in `N`
/// variables; gate on their number.
pub fn desk_scale(qs: &Quasistaircase) -> bool {
    let (d, n) = (qs.lambda.size() as u64, qs.big_n as u64);
    let mut c: u64 = 1;
    // C(d + n − 1, n − 1), bailing out once over the bound
    for i in 1..n {
        c = c * (d + i) / i;
        if c > DESK_TERMS {
            return false;
        }
    }
    true
}

type Outcome = std::result::Result<(), (String, Value)>;

fn term_witness<R: Ring>(ring: &R, p: &MacPoly<R>) -> Value {
    match p.sorted_terms().into_iter().next() {
        Some((a, c)) => json!({"monomial": a, "coeff": ring.show(c)}),
        None => Value::Null,
    }
}

/// `p ξ_i = ζ_i p` for every `i`, with `ζ_i = q^a t^b` given as exponents.
pub fn eigen_outcome<R: Ring>(
    ring: &R,
    p: &MacPoly<R>,
    zeta: &[(i64, i64)],
    op: &str,
) -> Result<Outcome> {
    for (i, &(a, b)) in zeta.iter().enumerate() {
        let lhs = match op {
            "phi" => apply_jucys_poly(ring, p, i + 1)?,
            _ => apply_cherednik(ring, p, i + 1)?,
        };
        let r = lhs.sub(ring, &p.scale_qt(ring, a, b));
        if !r.is_zero() {
            return Ok(Err((
                format!("{op}_{} eigenvalue mismatch", i + 1),
                json!({"i": i + 1, "residual": term_witness(ring, &r)}),
            )));
        }
    }
    Ok(Ok(()))
}

/// `p D_i = 0` for every `i`.
pub fn dunkl_outcome<R: Ring>(ring: &R, p: &MacPoly<R>) -> Result<Outcome> {
    for i in 1..=p.nvars() {
        let r = apply_dunkl(ring, p, i)?;
        if !r.is_zero() {
            return Ok(Err((
                format!("D_{i} does not annihilate"),
                json!({"i": i, "image": term_witness(ring, &r)}),
            )));
        }
    }
    Ok(Ok(()))
}

/// `(s, s·off, s·diag)` for the `V_τ` action at content gap `|d| ≥ 2`,
/// with `s = (t^d − 1)` or `(t^d − 1)²` clearing the denominators.
pub fn pair_relation<R: Ring>(ring: &R, d: i64) -> Result<(R::Elem, R::Elem, R::Elem)> {
    let one = ring.one();
    let tm1 = ring.sub(&ring.t(), &one);
    let tdm1 = ring.sub(&ring.qt(0, d), &one);
    // diag = t^d(t−1)/(t^d − 1)
    let diag = ring.mul_qt(&tm1, 0, d);
    if d >= 2 {
        return Ok((tdm1.clone(), tdm1, diag));
    }
    if d > -2 {
        return Err(Error::Internal(format!(
            "content gap {d} has no pair action"
        )));
    }
    // off = t(t^{d+1} − 1)(t^{d−1} − 1)/(t^d − 1)²
    let a = ring.sub(&ring.qt(0, d + 1), &one);
    let b = ring.sub(&ring.qt(0, d - 1), &one);
    let off = ring.mul_qt(&ring.mul(&a, &b), 0, 1);
    Ok((ring.mul(&tdm1, &tdm1), off, ring.mul(&diag, &tdm1)))
}

fn specialized_eq(spec: &Specialization, x: (i64, i64), y: (i64, i64)) -> bool {
    let (a, e) = spec.image_exponents(x.0, x.1);
    let (b, f) = spec.image_exponents(y.0, y.1);
    e == f && (a - b).rem_euclid(spec.order() as i64) == 0
}

struct Label {
    s: Tableau,
    alpha: Composition,
    ct: Vec<i64>,
}

fn structural_labels(qs: &Quasistaircase, labels: &[Label]) -> Outcome {
    let lam = qs.lambda_composition();
    for l in labels {
        let r = rank_of_label(qs, &l.s).map_err(|e| (e.to_string(), Value::Null))?;
        if r != rank_function(&l.alpha) || l.alpha.sorted_desc() != lam {
            return Err((
                "label rank or rearrangement mismatch".into(),
                json!({"alpha": l.alpha}),
            ));
        }
    }
    let mut seen: Vec<&Composition> = labels.iter().map(|l| &l.alpha).collect();
    seen.sort();
    seen.dedup();
    if seen.len() != labels.len() {
        return Err(("labels not distinct".into(), Value::Null));
    }
    Ok(())
}

fn structural_critical(spec: &Specialization, labels: &[Label]) -> Result<Outcome> {
    for l in labels {
        let ps = find_critical_partners(&l.alpha, spec.m() as u32, spec.n() as u32, l.alpha.len())?;
        if let Some(p) = ps.first() {
            return Ok(Err((
                "critical partner within N variables".into(),
                json!({"alpha": l.alpha, "beta": p.beta, "p": p.p}),
            )));
        }
    }
    Ok(Ok(()))
}

fn structural_theta(qs: &Quasistaircase, labels: &[Label]) -> Result<(Outcome, usize)> {
    let mut count = 0;
    for j in 1..qs.rows() {
        for k in 1..=qs.tau.part(j + 1) as usize {
            let theta = build_theta(qs, j, k)?;
            for l in labels {
                if !has_property_v(&l.s, j, k)? {
                    continue;
                }
                let steps = equipolar_reduce(&l.s, j, k)?;
                let mut cur = l.s.clone();
                for &i in &steps {
                    let next = cur.exchange(i)?;
                    if content_gap(&cur, i).abs() < 2 || next.inversions() >= cur.inversions() {
                        return Ok((
                            Err((
                                "non-equipolar step".into(),
                                json!({"from": cur.rows(), "i": i}),
                            )),
                            count,
                        ));
                    }
                    cur = next;
                }
                if cur != theta {
                    return Ok((
                        Err((
                            "reduction missed Θ".into(),
                            json!({"j": j, "k": k, "end": cur.rows()}),
                        )),
                        count,
                    ));
                }
                count += 1;
            }
        }
    }
    Ok((Ok(()), count))
}

fn structural_spectral(spec: &Specialization, labels: &[Label]) -> Outcome {
    for l in labels {
        for (i, z) in spectral_exponents(&l.alpha).into_iter().enumerate() {
            if !specialized_eq(spec, z, (0, l.ct[i])) {
                return Err((
                    "ζ does not specialize to t^CT".into(),
                    json!({"alpha": l.alpha, "i": i + 1, "zeta": [z.0, z.1], "content": l.ct[i]}),
                ));
            }
        }
    }
    Ok(())
}

/// The scalar form of the isotype relations: the Yang–Baxter relation
/// coefficients specialize to those of `V_τ`.
fn structural_isotype(spec: &Specialization, labels: &[Label]) -> Result<Outcome> {
    let field = SpecField::new(spec);
    let sub = |x: &crate::scalars::QtScalar| substitute(x, spec);
    for l in labels {
        for i in 1..l.alpha.len() {
            let w = |msg: &str| json!({"alpha": l.alpha, "i": i, "case": msg});
            let (ai, aj) = (l.alpha.at(i), l.alpha.at(i + 1));
            let case = tau_case(&field, &l.s, i)?;
            let ok = match &case {
                TauCase::SameRow => ai == aj,
                TauCase::SameColumn => {
                    if ai <= aj {
                        false
                    } else {
                        let (c1, c2) = step_relation(&QtField, &l.alpha, i)?;
                        sub(&c1)? == field.from_i64(-1) && sub(&c2)?.is_zero()
                    }
                }
                TauCase::Pair { off, diag, .. } => {
                    let (gd, go): (SpecScalar, SpecScalar) = if ai < aj {
                        let c = step_coefficient(&QtField, &l.alpha, i)?;
                        (field.neg(&sub(&c)?), field.one())
                    } else {
                        let (c1, c2) = step_relation(&QtField, &l.alpha, i)?;
                        (sub(&c1)?, sub(&c2)?)
                    };
                    &gd == diag && &go == off
                }
            };
            if !ok {
                let name = match case {
                    TauCase::SameRow => "same row",
                    TauCase::SameColumn => "same column",
                    TauCase::Pair { .. } => "pair",
                };
                return Ok(Err((
                    "relation coefficients differ from V_τ".into(),
                    w(name),
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn isotype_outcome<R: Ring>(ring: &R, labels: &[Label], polys: &[MacPoly<R>]) -> Result<Outcome> {
    let find = |s: &Tableau| labels.iter().position(|l| &l.s == s);
    for (k, l) in labels.iter().enumerate() {
        let m = &polys[k];
        for i in 1..l.alpha.len() {
            let lhs = m.apply_ti(ring, i)?;
            let r = match tau_case(&QtField, &l.s, i)? {
                TauCase::SameRow => lhs.sub(ring, &m.scale_qt(ring, 0, 1)),
                TauCase::SameColumn => lhs.add(ring, m),
                TauCase::Pair { d, .. } => {
                    let (sc, off, diag) = pair_relation(ring, d)?;
                    let other = find(&l.s.exchange(i)?)
                        .ok_or_else(|| Error::Internal("exchanged tableau not a label".into()))?;
                    let rhs = polys[other]
                        .scale(ring, &off)
                        .add(ring, &m.scale(ring, &diag));
                    lhs.scale(ring, &sc).sub(ring, &rhs)
                }
            };
            if !r.is_zero() {
                return Ok(Err((
                    format!("T_{i} action differs from V_τ"),
                    json!({"alpha": l.alpha, "i": i, "residual": term_witness(ring, &r)}),
                )));
            }
        }
    }
    Ok(Ok(()))
}

pub fn verify_singular(
    qs: &Quasistaircase,
    spec: &Specialization,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    if spec.m() != qs.m as u64 || spec.n() != qs.n as u64 {
        return Err(Error::InvalidSpecialization(format!(
            "specialization ({}, {}) does not match quasistaircase ({}, {})",
            spec.m(),
            spec.n(),
            qs.m,
            qs.n
        )));
    }
    let t0 = Instant::now();
    let full = opts.full.unwrap_or_else(|| desk_scale(qs));
    let labels: Vec<Label> = enumerate_rsyt(&qs.tau)?
        .into_iter()
        .map(|s| {
            let alpha = alpha_of_tableau(qs, &s)?;
            let ct = s.content_vector();
            Ok(Label { s, alpha, ct })
        })
        .collect::<Result<_>>()?;

    let mut checks = vec![
        CheckResult::from_outcome(
            "labels",
            format!("{} labels", labels.len()),
            structural_labels(qs, &labels),
        ),
        CheckResult::from_outcome(
            "critical_pairs",
            "no critical partner within N variables".into(),
            structural_critical(spec, &labels)?,
        ),
    ];
    let (theta, reductions) = structural_theta(qs, &labels)?;
    checks.push(CheckResult::from_outcome(
        "theta_reduction",
        format!("{reductions} reductions"),
        theta,
    ));
    checks.push(CheckResult::from_outcome(
        "spectral_exponents",
        "ζ specializes to t^CT".into(),
        structural_spectral(spec, &labels),
    ));
    checks.push(CheckResult::from_outcome(
        "isotype_coefficients",
        "relation coefficients match V_τ".into(),
        structural_isotype(spec, &labels)?,
    ));

    let mut terms = vec![None; labels.len()];
    if full {
        let ring = BinFracRing::new(spec);
        let solved: Vec<Result<MacPoly<BinFracRing>>> = labels
            .par_iter()
            .map(|l| project_frac(&l.alpha, spec, opts.term_cap))
            .collect();
        let mut polys = Vec::with_capacity(labels.len());
        let mut pole = None;
        for (l, r) in labels.iter().zip(solved) {
            match r {
                Ok(p) => polys.push(p),
                Err(Error::CriticalObstruction { beta }) => {
                    pole = Some(json!({"alpha": l.alpha, "unseparated": beta}));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        match pole {
            Some(w) => {
                checks.push(CheckResult::fail(
                    "pole_free",
                    "label without separating index",
                    w,
                ));
                for name in ["spectral", "dunkl", "xi_phi", "isotype"] {
                    checks.push(CheckResult::skipped(name));
                }
            }
            None => {
                for (t, p) in terms.iter_mut().zip(&polys) {
                    *t = Some(p.len());
                }
                // the checks are linear, so run them on D·M_S with D the
                // common binomial denominator, over Z[ζ][u^±1]
                let keys = ring.common_keys(polys.iter().flat_map(|p| p.terms().map(|(_, c)| c)));
                let lr = ring.laurent();
                let cleared: Vec<MacPoly<LaurentRing>> = polys
                    .iter()
                    .map(|p| p.map_ring(lr, |c| Ok(ring.numerator_over(c, &keys))))
                    .collect::<Result<_>>()?;
                drop(polys);
                checks.push(CheckResult::pass(
                    "pole_free",
                    format!("every label below has a separating index; denominator keys {keys:?}"),
                ));
                let per_label: Vec<Result<[Outcome; 3]>> = labels
                    .par_iter()
                    .zip(&cleared)
                    .map(|(l, p)| {
                        let zeta: Vec<(i64, i64)> = l.ct.iter().map(|&c| (0, c)).collect();
                        let tag = |o: Outcome| {
                            o.map_err(|(d, w)| (d, json!({"alpha": l.alpha, "at": w})))
                        };
                        Ok([
                            tag(eigen_outcome(lr, p, &zeta, "xi")?),
                            tag(dunkl_outcome(lr, p)?),
                            tag(eigen_outcome(lr, p, &zeta, "phi")?),
                        ])
                    })
                    .collect();
                let per_label = per_label.into_iter().collect::<Result<Vec<_>>>()?;
                let details = ["M ξ_i = t^CT M", "M D_i = 0", "M φ_i = M ξ_i"];
                for (idx, name) in ["spectral", "dunkl", "xi_phi"].into_iter().enumerate() {
                    let first = per_label.iter().find_map(|o| o[idx].clone().err());
                    checks.push(CheckResult::from_outcome(
                        name,
                        details[idx].into(),
                        first.map_or(Ok(()), Err),
                    ));
                }
                checks.push(CheckResult::from_outcome(
                    "isotype",
                    "T_i acts as on V_τ".into(),
                    isotype_outcome(lr, &labels, &cleared)?,
                ));
            }
        }
    } else {
        for name in ["pole_free", "spectral", "dunkl", "xi_phi", "isotype"] {
            checks.push(CheckResult::skipped(name));
        }
    }

    Ok(VerificationReport {
        version: REPORT_VERSION,
        quasistaircase: qs.clone(),
        specialization: SpecInfo::of(spec),
        full,
        labels: labels
            .iter()
            .zip(terms)
            .map(|(l, terms)| LabelInfo {
                tableau: l.s.rows().to_vec(),
                alpha: l.alpha.clone(),
                content: l.ct.clone(),
                terms,
            })
            .collect(),
        checks,
        elapsed_ms: t0.elapsed().as_millis(),
    })
}

/// Every valid `(qs, k)` with `N ≤ max_n` and `m·n ≤ max_mn`; `k` runs
/// over representatives coprime to `g` (just `0` when `g = 1`).
pub fn sweep_instances(max_n: usize, max_mn: u32) -> Vec<(Quasistaircase, i64)> {
    let mut out = Vec::new();
    for n in 2..=max_mn.min(max_n as u32) {
        for m in 1..=max_mn / n {
            let g = m.gcd(&n);
            for big_n in n as usize..=max_n {
                for d in 1..=big_n as u32 {
                    for kk in 1..=big_n as u32 {
                        let Ok(qs) = crate::quasistair::build_quasistaircase(m, n, d, kk, big_n)
                        else {
                            continue;
                        };
                        if g == 1 {
                            out.push((qs, 0));
                        } else {
                            for k in (1..g).filter(|k| k.gcd(&g) == 1) {
                                out.push((qs.clone(), k as i64));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularParam {
    /// Reduced pair `(m/d, n/d)` of the relation `q^{m/d} t^{n/d} = 1`.
    pub m: u64,
    pub n: u64,
    pub d: u64,
    /// Order of `ω^{m/g}`.
    pub omega_order: u64,
    /// The `k` in `ω = exp(2πik/m)`, `0 ≤ k < g`, with `gcd(k, g) = d`.
    pub ks: Vec<u64>,
    pub relation: String,
    /// `(m', n', d, K, N)` of the matching quasistaircase.
    pub quasistaircase: (u64, u64, u64, u64, usize),
    /// A specialization triple `(m', n', k')` realizing it.
    pub spec: (u64, u64, u64),
}

/// Singular values for `λ = (m^{τ₂}, 0^{N−τ₂})`.
pub fn enumerate_singular_params(lambda: &Partition, big_n: usize) -> Result<Vec<SingularParam>> {
    let parts: Vec<u32> = lambda.parts().iter().copied().filter(|&x| x > 0).collect();
    let tau2 = parts.len();
    let m = parts.first().copied().unwrap_or(0) as u64;
    if m == 0
        || parts.iter().any(|&x| x as u64 != m)
        || lambda.parts().len() > big_n
        || 2 * tau2 > big_n
    {
        return Err(Error::InvalidQuasistaircase(format!(
            "{:?} is not a two-row rectangle label in {big_n} variables",
            lambda.parts()
        )));
    }
    let n = (big_n - tau2 + 1) as u64;
    let g = m.gcd(&n);
    Ok((1..=g)
        .filter(|d| g.is_multiple_of(*d) && d * (tau2 as u64 + 1) <= n && (g == 1 || *d != g))
        .map(|d| {
            let ks: Vec<u64> = if g == 1 {
                vec![0]
            } else {
                (1..g).filter(|k| k.gcd(&g) == d).collect()
            };
            let (mm, nn) = (m / d, n / d);
            let g2 = g / d;
            SingularParam {
                m: mm,
                n: nn,
                d,
                omega_order: g2,
                ks,
                relation: format!("q^{mm} t^{nn} = 1"),
                quasistaircase: (mm, nn, d, 1, big_n),
                spec: (mm, nn, if g2 == 1 { 0 } else { 1 }),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heckerep::pair_coefficients;
    use crate::quasistair::build_quasistaircase;
    use crate::scalars::{normalize_specialization, Field};

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn pair_relation_agrees() {
        for d in [-5, -3, -2, 2, 3, 4] {
            let (sc, o, g) = pair_relation(&QtField, d).unwrap();
            let (o2, g2) = pair_coefficients(&QtField, d).unwrap();
            assert_eq!(QtField.div(&o, &sc).unwrap(), o2);
            assert_eq!(QtField.div(&g, &sc).unwrap(), g2);
        }
    }

    #[test]
    fn constant_label() {
        let s = normalize_specialization(2, 4, 1).unwrap();
        for st in [Strategy::Substitute, Strategy::Project] {
            let p = specialize_macdonald(&c("0,0,0"), &s, st).unwrap();
            assert_eq!(p.len(), 1);
            assert_eq!(
                p.coeff(&SpecField::new(&s), &c("0,0,0")),
                SpecField::new(&s).one()
            );
        }
    }

    #[test]
    fn strategies_agree_on_3_1() {
        let s = normalize_specialization(2, 4, 1).unwrap();
        for a in ["2,0,0,0", "0,2,0,0", "0,0,2,0", "0,0,0,2"] {
            let x = specialize_macdonald(&c(a), &s, Strategy::Substitute).unwrap();
            let y = specialize_macdonald(&c(a), &s, Strategy::Project).unwrap();
            assert_eq!(x, y, "{a}");
        }
    }

    #[test]
    fn worked_example_is_singular() {
        let qs = build_quasistaircase(2, 4, 1, 1, 4).unwrap();
        let s = normalize_specialization(2, 4, 1).unwrap();
        let r = verify_singular(&qs, &s, &VerifyOptions::default()).unwrap();
        assert!(r.full);
        assert!(
            r.fully_passed(),
            "{}",
            serde_json::to_string_pretty(&r.checks).unwrap()
        );
        assert_eq!(r.labels.len(), 3);
    }

    #[test]
    fn generic_parameters_are_not_singular() {
        let qs = build_quasistaircase(1, 2, 1, 1, 2).unwrap();
        let m = build_macdonald(&qs.lambda_composition()).unwrap();
        let w = dunkl_outcome(&QtField, &m).unwrap().unwrap_err();
        assert!(w.1["image"]["monomial"].is_array());
    }

    #[test]
    fn mismatched_specialization_rejected() {
        // (2,4) labels at q t^2 = 1 instead of q^2 t^4 = 1
        let qs = build_quasistaircase(1, 2, 1, 1, 2).unwrap();
        let s = normalize_specialization(1, 3, 0).unwrap();
        assert!(verify_singular(&qs, &s, &VerifyOptions::default()).is_err());
        let s = normalize_specialization(1, 2, 0).unwrap();
        let r = verify_singular(&qs, &s, &VerifyOptions::default()).unwrap();
        assert!(r.fully_passed());
    }

    #[test]
    fn two_row_params() {
        let lam = Partition(vec![30, 30, 30]);
        let ps = enumerate_singular_params(&lam, 14).unwrap();
        let rel: Vec<_> = ps.iter().map(|p| p.relation.as_str()).collect();
        assert_eq!(rel, ["q^30 t^12 = 1", "q^15 t^6 = 1", "q^10 t^4 = 1"]);
        assert_eq!(
            ps.iter().map(|p| p.omega_order).collect::<Vec<_>>(),
            [6, 3, 2]
        );
        for p in &ps {
            let (m, n, d, k, big_n) = p.quasistaircase;
            let q = build_quasistaircase(m as u32, n as u32, d as u32, k as u32, big_n).unwrap();
            assert_eq!(q.lambda.parts()[..3], [30, 30, 30]);
            assert!(p.ks.iter().all(|k| k.gcd(&6) == p.d));
        }
        let ps = enumerate_singular_params(&Partition(vec![4, 4]), 6).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].omega_order, 1);
        assert_eq!(ps[0].ks, [0]);
        assert!(enumerate_singular_params(&Partition(vec![3, 2]), 6).is_err());
    }
}
