//! `(m,n)`-critical pairs: `β = α + m·p` with `r_α − r_β = n·p` and
//! `α ▷ β`, searched over compositions of bounded length.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{compositions_of, dominance_tri, rank_function, Composition};
use crate::error::{Error, Result};
use crate::quasistair::ThetaLabel;

/// Default cap on explored search nodes.
pub const NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPair {
    pub alpha: Composition,
    pub beta: Composition,
    pub p: Vec<i64>,
    /// `ℓ(β)`, the index of the last nonzero part.
    pub len: usize,
}

/// Index of the last nonzero part (0 for the zero composition).
pub fn ell(a: &[u32]) -> usize {
    a.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1)
}

/// `R_α(i) = r_α(i) + n·α_i` for `i ≤ upto`, with `α` padded by zeros.
pub fn r_sequence(alpha: &Composition, n: u32, upto: usize) -> Vec<i64> {
    let a = alpha.padded(upto.max(alpha.len()));
    rank_function(&a)
        .iter()
        .zip(a.parts())
        .map(|(&r, &x)| r as i64 + n as i64 * x as i64)
        .collect()
}

/// Whether `(α, β)` (padded to a common length) is `(m,n)`-critical.
pub fn is_critical(alpha: &Composition, beta: &Composition, m: u32, n: u32) -> Option<Vec<i64>> {
    let l = alpha.len().max(beta.len());
    let (a, b) = (alpha.padded(l), beta.padded(l));
    if a == b || !dominance_tri(&a, &b) {
        return None;
    }
    let (ra, rb) = (rank_function(&a), rank_function(&b));
    let mut p = Vec::with_capacity(l);
    for i in 0..l {
        let diff = b.0[i] as i64 - a.0[i] as i64;
        if diff % m as i64 != 0 {
            return None;
        }
        let pi = diff / m as i64;
        if ra[i] as i64 - rb[i] as i64 != n as i64 * pi {
            return None;
        }
        p.push(pi);
    }
    Some(p)
}

fn make_pair(alpha: &Composition, beta: Vec<u32>, p: Vec<i64>) -> CriticalPair {
    let len = ell(&beta);
    let keep = len.max(alpha.len());
    CriticalPair {
        alpha: alpha.clone(),
        beta: Composition(beta[..keep].to_vec()),
        p: p[..keep].to_vec(),
        len,
    }
}

struct Search<'a> {
    alpha: Vec<u32>,
    ra: Vec<i64>,
    m: i64,
    n: i64,
    len: usize,
    size: u64,
    /// Prefix sums of the decreasing rearrangement of `α`.
    top: Vec<u64>,
    nodes: &'a AtomicU64,
    budget: u64,
}

struct State {
    beta: Vec<u32>,
    rb: Vec<i64>,
    used: Vec<bool>,
    sum: u64,
    sorted: Vec<u32>,
}

impl Search<'_> {
    fn candidates(&self, i: usize) -> impl Iterator<Item = i64> + '_ {
        let r = self.ra[i];
        let l = self.len as i64;
        let lo = (r - l).div_euclid(self.n) + i64::from((r - l).rem_euclid(self.n) != 0);
        let hi = (r - 1).div_euclid(self.n);
        let a = self.alpha[i] as i64;
        let lo = lo.max((-a).div_euclid(self.m) + i64::from((-a).rem_euclid(self.m) != 0));
        lo..=hi
    }

    fn consistent(&self, st: &State, i: usize, b: u32, r: i64) -> bool {
        if r < 1 || r > self.len as i64 || st.used[r as usize] {
            return false;
        }
        if st.sum + b as u64 > self.size {
            return false;
        }
        // rank order: for k < i, β_k ≥ β_i ⟺ r_k < r_i
        for k in 0..i {
            if (st.beta[k] >= b) != (st.rb[k] < r) {
                return false;
            }
        }
        // top-k sums of the assigned parts stay below those of α
        let pos = st.sorted.partition_point(|&x| x > b);
        let mut acc = 0u64;
        for (idx, x) in st.sorted[..pos]
            .iter()
            .chain(std::iter::once(&b))
            .chain(&st.sorted[pos..])
            .enumerate()
        {
            acc += *x as u64;
            if acc > self.top[idx.min(self.top.len() - 1)] {
                return false;
            }
        }
        true
    }

    fn dfs(&self, st: &mut State, i: usize, out: &mut Vec<(Vec<u32>, Vec<i64>)>) -> Result<()> {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > self.budget {
            return Err(Error::BudgetExceeded { nodes: seen });
        }
        if i == self.len {
            if st.sum == self.size && st.beta != self.alpha {
                let p: Vec<i64> = (0..self.len)
                    .map(|k| (st.beta[k] as i64 - self.alpha[k] as i64) / self.m)
                    .collect();
                out.push((st.beta.clone(), p));
            }
            return Ok(());
        }
        let cands: Vec<i64> = self.candidates(i).collect();
        for p in cands {
            let b = (self.alpha[i] as i64 + self.m * p) as u32;
            let r = self.ra[i] - self.n * p;
            if !self.consistent(st, i, b, r) {
                continue;
            }
            st.beta.push(b);
            st.rb.push(r);
            st.used[r as usize] = true;
            st.sum += b as u64;
            let pos = st.sorted.partition_point(|&x| x > b);
            st.sorted.insert(pos, b);
            let res = self.dfs(st, i + 1, out);
            st.sorted.remove(pos);
            st.sum -= b as u64;
            st.used[r as usize] = false;
            st.rb.pop();
            st.beta.pop();
            res?;
        }
        Ok(())
    }
}

/// All `β` with `ℓ(β) ≤ max_len` forming an `(m,n)`-critical pair with
/// `α`, sorted by `ℓ(β)` then lexicographically.
pub fn find_critical_partners(
    alpha: &Composition,
    m: u32,
    n: u32,
    max_len: usize,
) -> Result<Vec<CriticalPair>> {
    find_critical_partners_budget(alpha, m, n, max_len, NODE_BUDGET)
}

pub fn find_critical_partners_budget(
    alpha: &Composition,
    m: u32,
    n: u32,
    max_len: usize,
    budget: u64,
) -> Result<Vec<CriticalPair>> {
    if max_len < alpha.len() {
        return Err(Error::SizeMismatch(format!(
            "max_len {max_len} below the length {} of {alpha}",
            alpha.len()
        )));
    }
    if m == 0 || n == 0 || max_len > 64 {
        return Err(Error::InvalidSpecialization(format!(
            "m={m} n={n} max_len={max_len}"
        )));
    }
    let a = alpha.padded(max_len);
    let mut sorted = a.0.clone();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    let top: Vec<u64> = sorted
        .iter()
        .scan(0u64, |s, &x| {
            *s += x as u64;
            Some(*s)
        })
        .collect();
    let nodes = AtomicU64::new(0);
    let search = Search {
        alpha: a.0.clone(),
        ra: rank_function(&a).iter().map(|&r| r as i64).collect(),
        m: m as i64,
        n: n as i64,
        len: max_len,
        size: a.size(),
        top,
        nodes: &nodes,
        budget,
    };
    let first: Vec<i64> = search.candidates(0).collect();
    let found: Vec<Vec<(Vec<u32>, Vec<i64>)>> = first
        .par_iter()
        .map(|&p| {
            let mut st = State {
                beta: Vec::with_capacity(max_len),
                rb: Vec::with_capacity(max_len),
                used: vec![false; max_len + 1],
                sum: 0,
                sorted: Vec::with_capacity(max_len),
            };
            let mut out = Vec::new();
            let b = (search.alpha[0] as i64 + search.m * p) as u32;
            let r = search.ra[0] - search.n * p;
            if search.consistent(&st, 0, b, r) {
                st.beta.push(b);
                st.rb.push(r);
                st.used[r as usize] = true;
                st.sum = b as u64;
                st.sorted.push(b);
                search.dfs(&mut st, 1, &mut out)?;
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut pairs: Vec<CriticalPair> = found
        .into_iter()
        .flatten()
        .filter(|(b, _)| {
            // exact validation against the definition
            is_critical(&a, &Composition(b.clone()), m, n).is_some()
        })
        .map(|(b, p)| make_pair(alpha, b, p))
        .collect();
    pairs.sort_by(|x, y| x.len.cmp(&y.len).then_with(|| x.beta.0.cmp(&y.beta.0)));
    for pr in &pairs {
        check_pair_structure(&a, pr)?;
    }
    Ok(pairs)
}

/// Brute force over all compositions of `|α|` with `max_len` parts.
pub fn naive_critical_partners(
    alpha: &Composition,
    m: u32,
    n: u32,
    max_len: usize,
) -> Vec<CriticalPair> {
    let a = alpha.padded(max_len);
    let mut out: Vec<CriticalPair> = compositions_of(a.size() as u32, max_len)
        .into_iter()
        .filter_map(|b| is_critical(&a, &b, m, n).map(|p| make_pair(alpha, b.0, p)))
        .collect();
    out.sort_by(|x, y| x.len.cmp(&y.len).then_with(|| x.beta.0.cmp(&y.beta.0)));
    out
}

/// The interval and zero-tail properties every critical pair has.
pub fn check_pair_structure(alpha: &Composition, pair: &CriticalPair) -> Result<()> {
    let l = alpha.len().max(pair.beta.len());
    let (a, b) = (alpha.padded(l), pair.beta.padded(l));
    let la = ell(a.parts());
    for i in 0..l {
        if i >= la && b.0[i] == 0 && b.0[i..].iter().any(|&x| x != 0) {
            return Err(Error::Internal(format!(
                "zero tail fails for {b} at {}",
                i + 1
            )));
        }
        let mut p = 1;
        while i + p < l && a.0[i + p] == a.0[i] {
            if b.0[i + p] == b.0[i] && (1..p).any(|u| b.0[i + u] != b.0[i]) {
                return Err(Error::Internal(format!(
                    "interval property fails for {b} at {}",
                    i + 1
                )));
            }
            p += 1;
        }
    }
    Ok(())
}

/// The unique partner of `μ = α(Θ_{j,k})/m` under `(1,n)`.
pub fn unique_partner_formula(theta: &ThetaLabel) -> Result<Composition> {
    let mu = theta.mu()?;
    let big_n = theta.qs.big_n;
    let j = theta.j;
    let e = theta.e_intervals();
    if j > 1 {
        let (e2_lo, e3_hi) = (e[1].0, e[2].1);
        let out: Vec<u32> = (1..=big_n + j)
            .map(|i| {
                let m = if i <= big_n { mu.at(i) } else { 0 };
                if i < e2_lo {
                    m
                } else if i <= e3_hi {
                    0
                } else {
                    m + 1
                }
            })
            .collect();
        Ok(Composition(out))
    } else {
        let d = theta.qs.d;
        let inside = |i: usize, r: (usize, usize)| r.0 <= i && i <= r.1;
        let out: Vec<u32> = (1..=big_n + 1)
            .map(|i| {
                if i == big_n + 1 || inside(i, e[0]) || inside(i, e[3]) {
                    d
                } else if inside(i, e[1]) || inside(i, e[2]) {
                    0
                } else {
                    mu.at(i)
                }
            })
            .collect();
        Ok(Composition(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasistair::build_quasistaircase;
    use proptest::prelude::*;

    fn c(v: &[u32]) -> Composition {
        Composition(v.to_vec())
    }

    #[test]
    fn r_of_zero() {
        assert_eq!(
            r_sequence(&Composition::zeros(3), 4, 6),
            vec![1, 2, 3, 4, 5, 6]
        );
    }

    #[test]
    fn scaling() {
        for a in compositions_of(4, 3) {
            let scaled = Composition(a.parts().iter().map(|x| 3 * x).collect());
            let p1 = naive_critical_partners(&a, 1, 2, 5);
            let p3 = naive_critical_partners(&scaled, 3, 2, 5);
            assert_eq!(p1.len(), p3.len());
            for (x, y) in p1.iter().zip(&p3) {
                assert_eq!(y.beta.0, x.beta.0.iter().map(|v| 3 * v).collect::<Vec<_>>());
                assert_eq!(x.p, y.p);
            }
        }
    }

    #[test]
    fn partition_has_no_partner_within_n() {
        for (m, n, d, k, big_n) in [
            (1, 3, 1, 2, 6),
            (2, 3, 1, 1, 4),
            (1, 4, 1, 1, 5),
            (1, 2, 2, 3, 6),
        ] {
            let q = build_quasistaircase(m, n, d, k, big_n).unwrap();
            let lam = q.lambda_composition();
            assert!(find_critical_partners(&lam, m, n, big_n)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn formula_matches_search_small() {
        for (m, n, d, k, big_n) in [
            (1, 3, 1, 2, 6),
            (1, 3, 2, 1, 6),
            (1, 4, 1, 1, 5),
            (1, 3, 1, 1, 4),
            (1, 2, 2, 2, 5),
        ] {
            let q = build_quasistaircase(m, n, d, k, big_n).unwrap();
            for j in 1..q.rows() {
                for kk in 1..=q.tau.part(j + 1) as usize {
                    let th = ThetaLabel::new(&q, j, kk).unwrap();
                    let mu = th.mu().unwrap();
                    let found = find_critical_partners(&mu, 1, n, big_n + q.rows()).unwrap();
                    let want = unique_partner_formula(&th).unwrap();
                    assert_eq!(
                        found.len(),
                        1,
                        "qs {:?} j={j} k={kk}: {found:?}",
                        (m, n, d, k, big_n)
                    );
                    assert_eq!(found[0].beta.padded(want.len()), want);
                }
            }
        }
    }

    #[test]
    fn padding_independence() {
        let a = c(&[2, 0, 1]);
        let x = find_critical_partners(&a, 1, 2, 6).unwrap();
        let y = find_critical_partners(&a.padded(5), 1, 2, 6).unwrap();
        let bx: Vec<_> = x.iter().map(|p| p.beta.padded(6)).collect();
        let by: Vec<_> = y.iter().map(|p| p.beta.padded(6)).collect();
        assert_eq!(bx, by);
    }

    #[test]
    fn budget_is_reported() {
        let a = c(&[3, 3, 2, 2, 1, 0]);
        match find_critical_partners_budget(&a, 1, 1, 12, 10) {
            Err(Error::BudgetExceeded { nodes }) => assert!(nodes > 10),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn search_equals_naive(v in proptest::collection::vec(0u32..=3, 2..=5), m in 1u32..=2, n in 1u32..=3, extra in 0usize..=3) {
            let a = Composition(v);
            prop_assume!(a.size() <= 8);
            let l = (a.len() + extra).min(8);
            let fast = find_critical_partners(&a, m, n, l).unwrap();
            let slow = naive_critical_partners(&a, m, n, l);
            prop_assert_eq!(fast, slow);
        }
    }
}
