//! The Hecke algebra module `V_τ` spanned by reverse standard tableaux of
//! shape `τ`, with the seminormal action of `T_i`, the inner product
//! weights `γ(S;t)` and the Jucys–Murphy elements.

use std::collections::HashMap;

use crate::combinat::Tableau;
use crate::error::{Error, Result};
use crate::scalars::{Field, QtField, QtScalar, Ring};

/// A vector of `V_τ` as a sparse combination of tableaux.
pub struct ModuleVector<R: Ring> {
    terms: HashMap<Tableau, R::Elem>,
}

impl<R: Ring> Clone for ModuleVector<R> {
    fn clone(&self) -> Self {
        ModuleVector {
            terms: self.terms.clone(),
        }
    }
}

impl<R: Ring> std::fmt::Debug for ModuleVector<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(s, c)| (s.rows(), c)))
            .finish()
    }
}

impl<R: Ring> PartialEq for ModuleVector<R> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl<R: Ring> ModuleVector<R> {
    pub fn zero() -> Self {
        ModuleVector {
            terms: HashMap::new(),
        }
    }

    pub fn basis(ring: &R, s: &Tableau) -> Self {
        let mut v = Self::zero();
        v.terms.insert(s.clone(), ring.one());
        v
    }

    pub fn coeff(&self, ring: &R, s: &Tableau) -> R::Elem {
        self.terms.get(s).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tableau, &R::Elem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, ring: &R, s: Tableau, c: R::Elem) {
        match self.terms.get_mut(&s) {
            Some(v) => ring.add_assign(v, &c),
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    pub fn add(&self, ring: &R, o: &Self) -> Self {
        let mut v = self.clone();
        for (s, c) in &o.terms {
            v.add_term(ring, s.clone(), c.clone());
        }
        v.terms.retain(|_, c| !ring.is_zero(c));
        v
    }

    pub fn scale(&self, ring: &R, a: &R::Elem) -> Self {
        let mut v = ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), ring.mul(c, a)))
                .collect(),
        };
        v.terms.retain(|_, c| !ring.is_zero(c));
        v
    }
}

/// How `T_i` acts on a single tableau.
#[derive(Clone, Debug, PartialEq)]
pub enum TauCase<E> {
    /// `i`, `i+1` in the same row: `S ↦ t·S`.
    SameRow,
    /// `i`, `i+1` in the same column: `S ↦ −S`.
    SameColumn,
    /// `S ↦ off·S^(i) + diag·S` for `|d[i]| ≥ 2`.
    Pair { off: E, diag: E, d: i64 },
}

/// `d[i] = CT[i] − CT[i+1]`.
pub fn content_gap(s: &Tableau, i: usize) -> i64 {
    s.content(i) - s.content(i + 1)
}

/// Coefficients of the action for a content gap `d` with `|d| ≥ 2`:
/// returns `(off, diag)`.
pub fn pair_coefficients<R: Field>(ring: &R, d: i64) -> Result<(R::Elem, R::Elem)> {
    let t = ring.t();
    let one = ring.one();
    let td = ring.qt(0, d);
    let td_minus_1 = ring.sub(&td, &one);
    if d >= 2 {
        // (t−1)/(1−t^{−d}) = (t−1)t^d/(t^d−1)
        let diag = ring.div(&ring.mul(&ring.sub(&t, &one), &td), &td_minus_1)?;
        Ok((one, diag))
    } else if d <= -2 {
        let a = ring.sub(&ring.qt(0, d + 1), &one);
        let b = ring.sub(&ring.qt(0, d - 1), &one);
        let off = ring.div(
            &ring.mul(&t, &ring.mul(&a, &b)),
            &ring.mul(&td_minus_1, &td_minus_1),
        )?;
        let diag = ring.div(&ring.mul(&td, &ring.sub(&t, &one)), &td_minus_1)?;
        Ok((off, diag))
    } else {
        Err(Error::Internal(format!(
            "content gap {d} has no pair action"
        )))
    }
}

/// Classify the action of `T_i` on `S`. A gap of `±1` must come from a
/// shared row or column, which is asserted.
pub fn tau_case<R: Field>(ring: &R, s: &Tableau, i: usize) -> Result<TauCase<R::Elem>> {
    if i == 0 || i >= s.size() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: s.size().saturating_sub(1),
        });
    }
    let d = content_gap(s, i);
    if s.row(i) == s.row(i + 1) {
        if d != 1 {
            return Err(Error::InvalidTableau(format!("same row with gap {d}")));
        }
        return Ok(TauCase::SameRow);
    }
    if s.col(i) == s.col(i + 1) {
        if d != -1 {
            return Err(Error::InvalidTableau(format!("same column with gap {d}")));
        }
        return Ok(TauCase::SameColumn);
    }
    if d.abs() < 2 {
        return Err(Error::InvalidTableau(format!(
            "gap {d} at i={i} outside a shared row or column"
        )));
    }
    let (off, diag) = pair_coefficients(ring, d)?;
    Ok(TauCase::Pair { off, diag, d })
}

/// `v τ(T_i)` extended linearly from the basis action.
pub fn tau_action<R: Field>(ring: &R, v: &ModuleVector<R>, i: usize) -> Result<ModuleVector<R>> {
    let mut out = ModuleVector::zero();
    for (s, c) in &v.terms {
        match tau_case(ring, s, i)? {
            TauCase::SameRow => out.add_term(ring, s.clone(), ring.mul(c, &ring.t())),
            TauCase::SameColumn => out.add_term(ring, s.clone(), ring.neg(c)),
            TauCase::Pair { off, diag, .. } => {
                out.add_term(ring, s.exchange(i)?, ring.mul(c, &off));
                out.add_term(ring, s.clone(), ring.mul(c, &diag));
            }
        }
    }
    out.terms.retain(|_, c| !ring.is_zero(c));
    Ok(out)
}

/// `v τ(T_i)⁻¹ = (v τ(T_i) + (1−t) v)/t`.
pub fn tau_action_inv<R: Field>(
    ring: &R,
    v: &ModuleVector<R>,
    i: usize,
) -> Result<ModuleVector<R>> {
    let a = tau_action(ring, v, i)?;
    let b = v.scale(ring, &ring.one_minus_qt(0, 1));
    Ok(a.add(ring, &b).scale(ring, &ring.qt(0, -1)))
}

/// `v φ_i` by the recursion `φ_N = 1`, `φ_i = (1/t) T_i φ_{i+1} T_i`.
pub fn jucys_murphy_action<R: Field>(
    ring: &R,
    v: &ModuleVector<R>,
    i: usize,
    n: usize,
) -> Result<ModuleVector<R>> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if i == n {
        return Ok(v.clone());
    }
    let a = tau_action(ring, v, i)?;
    let b = jucys_murphy_action(ring, &a, i + 1, n)?;
    let c = tau_action(ring, &b, i)?;
    Ok(c.scale(ring, &ring.qt(0, -1)))
}

/// `t^{CT_S[i]}`, the eigenvalue of `φ_i` on `S`.
pub fn jucys_murphy_eigen(s: &Tableau, i: usize) -> QtScalar {
    QtScalar::monomial(0, s.content(i))
}

/// Recompute `S φ_i` through the recursion and compare with
/// `t^{CT_S[i]} S`.
pub fn check_jucys_murphy<R: Field>(ring: &R, s: &Tableau, i: usize) -> Result<()> {
    let v = ModuleVector::basis(ring, s);
    let got = jucys_murphy_action(ring, &v, i, s.size())?;
    let want = v.scale(ring, &ring.qt(0, s.content(i)));
    if got != want {
        return Err(Error::EigenCheck(format!(
            "φ_{i} on {:?} is not t^{}",
            s.rows(),
            s.content(i)
        )));
    }
    Ok(())
}

/// `γ(S;t) = ∏ (1−t^{c−1})(1−t^{c+1})/(1−t^c)²` over pairs `i<j` with
/// `c = CT[j] − CT[i] ≥ 2`.
pub fn gamma_norm(s: &Tableau) -> QtScalar {
    let f = QtField;
    let ct = s.content_vector();
    let mut num = f.one();
    let mut den = f.one();
    for i in 0..ct.len() {
        for j in i + 1..ct.len() {
            let c = ct[j] - ct[i];
            if c >= 2 {
                num = num
                    .mul(&f.one_minus_qt(0, c - 1))
                    .mul(&f.one_minus_qt(0, c + 1));
                let d = f.one_minus_qt(0, c);
                den = den.mul(&d).mul(&d);
            }
        }
    }
    num.div(&den).expect("1 − t^c is nonzero for c ≥ 2")
}

/// `t^{−inv(S)}·γ(S;t)`, the diagonal weight for which `τ(T_i)` is
/// self-adjoint. With `γ` alone the two sides of `⟨S τ(T_i), S'⟩ =
/// ⟨S, S' τ(T_i)⟩` differ by `t^{inv(S) − inv(S')}`.
pub fn form_weight(s: &Tableau) -> QtScalar {
    gamma_norm(s).mul(&QtScalar::monomial(0, -(s.inversions() as i64)))
}

/// Whether `⟨S τ(T_i), S'⟩ = ⟨S, S' τ(T_i)⟩` holds for all basis pairs
/// with the diagonal weights `w`. Returns the first failing pair.
pub fn adjointness_witness(
    basis: &[Tableau],
    i: usize,
    w: impl Fn(&Tableau) -> QtScalar,
) -> Result<Option<(Tableau, Tableau)>> {
    let f = QtField;
    let images = basis
        .iter()
        .map(|s| tau_action(&f, &ModuleVector::basis(&f, s), i))
        .collect::<Result<Vec<_>>>()?;
    for (a, sa) in basis.iter().enumerate() {
        for (b, sb) in basis.iter().enumerate().skip(a + 1) {
            let lhs = images[a].coeff(&f, sb).mul(&w(sb));
            let rhs = images[b].coeff(&f, sa).mul(&w(sa));
            if lhs != rhs {
                return Ok(Some((sa.clone(), sb.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{enumerate_rsyt, Partition};

    const F: QtField = QtField;

    fn tab(rows: Vec<Vec<usize>>) -> Tableau {
        Tableau::from_rows(rows).unwrap()
    }

    fn shapes_up_to(n: usize) -> Vec<Partition> {
        fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=left.min(max)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        for k in 2..=n as u32 {
            rec(k, k, &mut Vec::new(), &mut out);
        }
        out
    }

    fn t() -> QtScalar {
        QtScalar::monomial(0, 1)
    }

    #[test]
    fn basic_cases() {
        let col = tab(vec![vec![2], vec![1]]);
        let v = ModuleVector::basis(&F, &col);
        assert_eq!(tau_action(&F, &v, 1).unwrap(), v.scale(&F, &F.from_i64(-1)));
        let row = tab(vec![vec![2, 1]]);
        let v = ModuleVector::basis(&F, &row);
        assert_eq!(tau_action(&F, &v, 1).unwrap(), v.scale(&F, &t()));
        // shape (2,1) with d[1] = 2
        let s = tab(vec![vec![3, 1], vec![2]]);
        assert_eq!(content_gap(&s, 1), 2);
        let v = ModuleVector::basis(&F, &s);
        let w = tau_action(&F, &v, 1).unwrap();
        let expect = t()
            .sub(&QtScalar::one())
            .div(&F.one_minus_qt(0, -2))
            .unwrap();
        assert_eq!(w.coeff(&F, &s), expect);
        assert_eq!(w.coeff(&F, &s.exchange(1).unwrap()), QtScalar::one());
    }

    fn matrix_relations(shape: &Partition) {
        let basis = enumerate_rsyt(shape).unwrap();
        let n = shape.size();
        for s in &basis {
            let v = ModuleVector::basis(&F, s);
            for i in 1..n {
                let a = tau_action(&F, &v, i).unwrap();
                let sum = a.add(&F, &v);
                let quad = tau_action(&F, &sum, i)
                    .unwrap()
                    .add(&F, &sum.scale(&F, &t().neg()));
                assert!(
                    quad.is_zero(),
                    "quadratic relation at {:?}, i={i}",
                    s.rows()
                );
                assert_eq!(tau_action_inv(&F, &a, i).unwrap(), v);
                if i + 1 < n {
                    let l = tau_action(&F, &tau_action(&F, &a, i + 1).unwrap(), i).unwrap();
                    let b = tau_action(&F, &v, i + 1).unwrap();
                    let r = tau_action(&F, &tau_action(&F, &b, i).unwrap(), i + 1).unwrap();
                    assert_eq!(l, r, "braid relation at {:?}, i={i}", s.rows());
                }
                for j in i + 2..n {
                    let l = tau_action(&F, &a, j).unwrap();
                    let r = tau_action(&F, &tau_action(&F, &v, j).unwrap(), i).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn hecke_relations_on_v_tau() {
        for shape in shapes_up_to(7) {
            matrix_relations(&shape);
        }
    }

    #[test]
    fn self_adjoint_and_t_inversion() {
        for shape in shapes_up_to(6) {
            let basis = enumerate_rsyt(&shape).unwrap();
            let gammas: Vec<QtScalar> = basis.iter().map(gamma_norm).collect();
            for g in &gammas {
                assert_eq!(g.invert_t(), *g, "γ not t-inversion invariant");
            }
            for i in 1..shape.size() {
                let images: Vec<_> = basis
                    .iter()
                    .map(|s| tau_action(&F, &ModuleVector::basis(&F, s), i).unwrap())
                    .collect();
                for (a, sa) in basis.iter().enumerate() {
                    for (b, sb) in basis.iter().enumerate() {
                        let lhs = images[a].coeff(&F, sb).mul(&form_weight(sb));
                        let rhs = images[b].coeff(&F, sa).mul(&form_weight(sa));
                        assert_eq!(lhs, rhs, "self-adjointness at i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn jucys_murphy_all_small_shapes() {
        for shape in shapes_up_to(6) {
            for s in enumerate_rsyt(&shape).unwrap() {
                for i in 1..=shape.size() {
                    check_jucys_murphy(&F, &s, i).unwrap();
                }
            }
        }
    }

    #[test]
    fn jucys_murphy_examples() {
        let s = tab(vec![vec![4, 3, 2], vec![1]]);
        assert_eq!(jucys_murphy_eigen(&s, 4), QtScalar::one());
        assert_eq!(jucys_murphy_eigen(&s, 1), QtScalar::monomial(0, -1));
        let s = tab(vec![vec![7, 6, 5, 2], vec![4, 3, 1]]);
        assert_eq!(jucys_murphy_eigen(&s, 2), QtScalar::monomial(0, 3));
        check_jucys_murphy(&F, &s, 2).unwrap();
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_norm(&tab(vec![vec![4, 3, 2, 1]])), QtScalar::one());
        // a single column has CT = [−2,−1,0], so the pair (1,3) contributes
        let col = gamma_norm(&tab(vec![vec![3], vec![2], vec![1]]));
        let f2 = F.one_minus_qt(0, 1).mul(&F.one_minus_qt(0, 3));
        let d2 = F.one_minus_qt(0, 2);
        assert_eq!(col, f2.div(&d2.mul(&d2)).unwrap());
        assert_eq!(gamma_norm(&tab(vec![vec![2], vec![1]])), QtScalar::one());
        // shape (2,1): [[3,1],[2]] has CT = [1,−1,0]; the only pair with
        // CT[j] − CT[i] ≥ 2 would need a later entry with larger content
        let a = tab(vec![vec![3, 1], vec![2]]);
        assert_eq!(gamma_norm(&a), QtScalar::one());
        // [[3,2],[1]] has CT = [−1,1,0]; pair (1,2) has c = 2
        let b = tab(vec![vec![3, 2], vec![1]]);
        let c = F.one_minus_qt(0, 1).mul(&F.one_minus_qt(0, 3));
        let d = F.one_minus_qt(0, 2);
        assert_eq!(gamma_norm(&b), c.div(&d.mul(&d)).unwrap());
    }

    /// `(1/t)·T·Φ·T = diag(t^{c₁}, t^{c₂})` on the pair `{S, S^(i)}` for
    /// contents `c₁ = c₂ + d`.
    #[test]
    fn pair_matrix_identity() {
        type M = [[QtScalar; 2]; 2];
        fn mm(a: &M, b: &M) -> M {
            let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
            [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
        }
        for d in 2..=7i64 {
            for c2 in -4..=4i64 {
                let c1 = c2 + d;
                let (off_s, diag_s) = pair_coefficients(&F, d).unwrap();
                let (off_r, diag_r) = pair_coefficients(&F, -d).unwrap();
                // row vectors: S ↦ diag_s·S + off_s·S^(i)
                let tm: M = [[diag_s, off_s], [off_r, diag_r]];
                let z = QtScalar::zero();
                let phi: M = [
                    [QtScalar::monomial(0, c2), z.clone()],
                    [z.clone(), QtScalar::monomial(0, c1)],
                ];
                let mut r = mm(&mm(&tm, &phi), &tm);
                for row in r.iter_mut() {
                    for x in row.iter_mut() {
                        *x = x.mul(&QtScalar::monomial(0, -1));
                    }
                }
                assert_eq!(r[0][0], QtScalar::monomial(0, c1));
                assert_eq!(r[1][1], QtScalar::monomial(0, c2));
                assert!(r[0][1].is_zero() && r[1][0].is_zero());
            }
        }
    }
}
