//! Quasistaircase partitions, their tableau labels `α(S)`, the
//! distinguished tableaux `Θ_{j,k}` and the equipolar reduction onto them.

use serde::Serialize;

use crate::combinat::{extremal_tableaux, rank_function, Composition, Partition, Tableau};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quasistaircase {
    pub m: u32,
    pub n: u32,
    pub d: u32,
    #[serde(rename = "K")]
    pub k: u32,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub lambda: Partition,
    pub tau: Partition,
    /// `ν₀ = N > ν₁ > ⋯ > ν_{K+1} = 0`.
    pub nu: Vec<usize>,
}

/// `ν₀ = N`, `ν_j = ν_{j−1} − τ_j`.
pub fn nu_of_shape(tau: &Partition) -> Vec<usize> {
    let mut nu = vec![tau.size()];
    for &p in tau.parts() {
        let last = *nu.last().expect("nonempty");
        nu.push(last - p as usize);
    }
    nu
}

pub fn build_quasistaircase(
    m: u32,
    n: u32,
    d: u32,
    k: u32,
    big_n: usize,
) -> Result<Quasistaircase> {
    if m == 0 || d == 0 || k == 0 || n < 2 || (n as usize) > big_n {
        return Err(Error::InvalidQuasistaircase(format!(
            "need m,d,K ≥ 1 and 2 ≤ n ≤ N, got m={m} n={n} d={d} K={k} N={big_n}"
        )));
    }
    let head = (d * n - 1) as i64 + (k as i64 - 1) * (n as i64 - 1);
    let nu_k = big_n as i64 - head;
    if nu_k < 1 || nu_k > n as i64 - 1 {
        return Err(Error::InvalidQuasistaircase(format!(
            "ν_K = {nu_k} outside [1, {}]",
            n - 1
        )));
    }
    let mut tau = vec![d * n - 1];
    tau.extend(std::iter::repeat_n(n - 1, k as usize - 1));
    tau.push(nu_k as u32);
    let tau = Partition(tau);
    let nu = nu_of_shape(&tau);
    let mut lambda = vec![0u32; big_n];
    for j in 2..=tau.length() {
        for i in nu[j] + 1..=nu[j - 1] {
            lambda[i - 1] = (d + j as u32 - 2) * m;
        }
    }
    Ok(Quasistaircase {
        m,
        n,
        d,
        k,
        big_n,
        lambda: Partition(lambda),
        tau,
        nu,
    })
}

impl Quasistaircase {
    /// Number of rows `K + 1`.
    pub fn rows(&self) -> usize {
        self.tau.length()
    }

    /// `I_j = [ν_j + 1, ν_{j−1}]`.
    pub fn interval(&self, j: usize) -> (usize, usize) {
        (self.nu[j] + 1, self.nu[j - 1])
    }

    pub fn lambda_composition(&self) -> Composition {
        Composition(self.lambda.0.clone())
    }

    fn check_shape(&self, s: &Tableau) -> Result<()> {
        if s.shape() != self.tau {
            return Err(Error::SizeMismatch(format!(
                "tableau shape {:?} vs τ = {:?}",
                s.shape().0,
                self.tau.0
            )));
        }
        Ok(())
    }

    /// `S₀` and `S₁` of shape `τ`.
    pub fn extremal(&self) -> (Tableau, Tableau) {
        extremal_tableaux(&self.tau)
    }
}

pub fn alpha_of_tableau(qs: &Quasistaircase, s: &Tableau) -> Result<Composition> {
    qs.check_shape(s)?;
    Ok(Composition(
        (1..=qs.big_n)
            .map(|i| match s.row(i) {
                1 => 0,
                r => (qs.d + r as u32 - 2) * qs.m,
            })
            .collect(),
    ))
}

/// Rank function of `α(S)` from the shape alone.
pub fn rank_of_label(qs: &Quasistaircase, s: &Tableau) -> Result<Vec<usize>> {
    qs.check_shape(s)?;
    let tail = |r: usize| -> usize { qs.tau.parts()[r - 1..].iter().map(|&p| p as usize).sum() };
    let r: Vec<usize> = (1..=qs.big_n)
        .map(|i| match s.row(i) {
            1 => qs.big_n + 1 - s.col(i),
            row => tail(row) - s.col(i) + 1,
        })
        .collect();
    debug_assert_eq!(r, rank_function(&alpha_of_tableau(qs, s)?));
    Ok(r)
}

fn check_v_range(s: &Tableau, j: usize, k: usize) -> Result<()> {
    let sh = s.shape();
    if j == 0 || j >= sh.length() || k == 0 || k > sh.part(j + 1) as usize {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: if j >= 1 && j < sh.length() {
                sh.part(j + 1) as usize
            } else {
                0
            },
        });
    }
    Ok(())
}

/// Whether exchanging `S[j,k]` and `S[j+1,k]` gives an RSYT.
pub fn has_property_v(s: &Tableau, j: usize, k: usize) -> Result<bool> {
    check_v_range(s, j, k)?;
    let a = s.entry(j, k).expect("inside");
    let b = s.entry(j + 1, k).expect("inside");
    let mut rows = s.rows().to_vec();
    rows[j - 1][k - 1] = b;
    rows[j][k - 1] = a;
    Ok(Tableau::from_rows(rows).is_ok_and(|t| t.is_rsyt()))
}

/// `Θ_{j,k}` for a shape.
pub fn theta_for_shape(tau: &Partition, j: usize, k: usize) -> Result<Tableau> {
    let (_, s1) = extremal_tableaux(tau);
    check_v_range(&s1, j, k)?;
    let nu = nu_of_shape(tau);
    let (tj, tj1) = (tau.part(j) as usize, tau.part(j + 1) as usize);
    let mut rows = s1.rows().to_vec();
    let top = nu[j - 1];
    let mut left = (top + 3 - 2 * k..=top).rev();
    let mut right = (nu[j + 1] + 1..=top - 2 * k).rev();
    let (mut rj, mut rj1) = (vec![0; tj], vec![0; tj1]);
    for slot in rj.iter_mut().take(k - 1) {
        *slot = left.next().expect("left block");
    }
    for slot in rj1.iter_mut().take(k - 1) {
        *slot = left.next().expect("left block");
    }
    rj[k - 1] = top + 1 - 2 * k;
    rj1[k - 1] = top + 2 - 2 * k;
    for slot in rj.iter_mut().skip(k) {
        *slot = right.next().expect("right block");
    }
    for slot in rj1.iter_mut().skip(k) {
        *slot = right.next().expect("right block");
    }
    rows[j - 1] = rj;
    rows[j] = rj1;
    Tableau::from_rows(rows)
}

pub fn build_theta(qs: &Quasistaircase, j: usize, k: usize) -> Result<Tableau> {
    theta_for_shape(&qs.tau, j, k)
}

/// A pair `(j, k)` for a quasistaircase, with the interval split of
/// `I_j ∪ I_{j+1}`.
#[derive(Clone, Debug)]
pub struct ThetaLabel {
    pub qs: Quasistaircase,
    pub j: usize,
    pub k: usize,
}

impl ThetaLabel {
    pub fn new(qs: &Quasistaircase, j: usize, k: usize) -> Result<Self> {
        if j == 0 || j >= qs.rows() || k == 0 || k > qs.tau.part(j + 1) as usize {
            return Err(Error::IndexOutOfRange { index: k, max: 0 });
        }
        Ok(ThetaLabel {
            qs: qs.clone(),
            j,
            k,
        })
    }

    /// `E₁..E₄` as inclusive ranges; `lo > hi` means empty.
    pub fn e_intervals(&self) -> [(usize, usize); 4] {
        let nu = &self.qs.nu;
        let (j, k) = (self.j, self.k);
        [
            (nu[j + 1] + 1, nu[j] - k),
            (nu[j] - k + 1, nu[j - 1] + 1 - 2 * k),
            (nu[j - 1] + 2 - 2 * k, nu[j - 1] + 1 - k),
            (nu[j - 1] + 2 - k, nu[j - 1]),
        ]
    }

    pub fn theta(&self) -> Result<Tableau> {
        build_theta(&self.qs, self.j, self.k)
    }

    pub fn alpha(&self) -> Result<Composition> {
        alpha_of_tableau(&self.qs, &self.theta()?)
    }

    /// `α(Θ_{j,k})/m`, the `(1,n)` label.
    pub fn mu(&self) -> Result<Composition> {
        let a = self.alpha()?;
        Ok(Composition(
            a.parts().iter().map(|&x| x / self.qs.m).collect(),
        ))
    }
}

/// Step indices taking `S` (reverse row-ordered, with `V(j,k)`) to
/// `Θ_{j,k}`. Every step `i` has `row[i] < row[i+1]` and
/// `col[i] > col[i+1]` and keeps `V(j,k)`; at each stage the smallest such
/// `i` is taken.
pub fn equipolar_reduce(s: &Tableau, j: usize, k: usize) -> Result<Vec<usize>> {
    if !has_property_v(s, j, k)? {
        return Err(Error::PropertyVAbsent { j, k });
    }
    let target = theta_for_shape(&s.shape(), j, k)?;
    let mut cur = s.clone();
    let mut steps = Vec::new();
    while cur != target {
        let next = (1..cur.size()).find_map(|i| {
            if !cur.can_step(i) {
                return None;
            }
            let t = cur.exchange(i).ok()?;
            has_property_v(&t, j, k).ok()?.then_some((i, t))
        });
        match next {
            Some((i, t)) => {
                steps.push(i);
                cur = t;
            }
            None => {
                return Err(Error::Stuck(format!("no legal step from {:?}", cur.rows())));
            }
        }
    }
    Ok(steps)
}

/// Apply steps to a tableau.
pub fn replay(s: &Tableau, steps: &[usize]) -> Result<Tableau> {
    steps.iter().try_fold(s.clone(), |t, &i| t.exchange(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enumerate_rsyt;

    fn comp(v: &[u32]) -> Composition {
        Composition(v.to_vec())
    }

    #[test]
    fn examples() {
        let q = build_quasistaircase(30, 12, 1, 1, 14).unwrap();
        let mut lam = vec![30; 3];
        lam.extend([0; 11]);
        assert_eq!(q.lambda.0, lam);
        assert_eq!(q.tau.0, vec![11, 3]);
        assert_eq!(q.nu, vec![14, 3, 0]);
        assert_eq!(q.interval(1), (4, 14));
        assert_eq!(q.interval(2), (1, 3));

        let q = build_quasistaircase(1, 3, 2, 3, 10).unwrap();
        assert_eq!(q.lambda.0, vec![4, 3, 3, 2, 2, 0, 0, 0, 0, 0]);
        assert_eq!(q.tau.0, vec![5, 2, 2, 1]);

        let q = build_quasistaircase(1, 4, 2, 3, 15).unwrap();
        let mut lam = vec![4, 4, 3, 3, 3, 2, 2, 2];
        lam.extend([0; 7]);
        assert_eq!(q.lambda.0, lam);
        assert_eq!(q.nu, vec![15, 8, 5, 2, 0]);

        assert!(build_quasistaircase(1, 4, 2, 3, 13).is_err());
        assert!(build_quasistaircase(1, 4, 2, 3, 17).is_err());
    }

    #[test]
    fn shape_31_labels() {
        let q = build_quasistaircase(2, 4, 1, 1, 4).unwrap();
        assert_eq!(q.tau.0, vec![3, 1]);
        let mut got: Vec<Composition> = enumerate_rsyt(&q.tau)
            .unwrap()
            .iter()
            .map(|s| alpha_of_tableau(&q, s).unwrap())
            .collect();
        got.sort_by(|a, b| b.0.cmp(&a.0));
        assert_eq!(
            got,
            vec![
                comp(&[2, 0, 0, 0]),
                comp(&[0, 2, 0, 0]),
                comp(&[0, 0, 2, 0])
            ]
        );
        let (_, s1) = q.extremal();
        assert_eq!(alpha_of_tableau(&q, &s1).unwrap(), q.lambda_composition());
    }

    #[test]
    fn rank_formula_agrees() {
        for (m, n, d, kk, big_n) in [
            (1, 3, 2, 3, 10),
            (2, 3, 1, 2, 6),
            (1, 4, 1, 1, 5),
            (3, 2, 2, 2, 5),
        ] {
            let q = build_quasistaircase(m, n, d, kk, big_n).unwrap();
            for s in enumerate_rsyt(&q.tau).unwrap() {
                let a = alpha_of_tableau(&q, &s).unwrap();
                assert_eq!(a.sorted_desc(), q.lambda_composition());
                assert_eq!(rank_of_label(&q, &s).unwrap(), rank_function(&a));
            }
        }
    }

    #[test]
    fn theta_444() {
        let t = theta_for_shape(&Partition(vec![4, 4, 4]), 2, 2).unwrap();
        assert_eq!(
            t.rows(),
            &[vec![12, 11, 10, 9], vec![8, 5, 4, 3], vec![7, 6, 2, 1]]
        );
        assert!(has_property_v(&t, 2, 2).unwrap());
        assert_eq!(equipolar_reduce(&t, 2, 2).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn two_row_rearrangement() {
        let s =
            Tableau::from_rows(vec![vec![12, 11, 9, 5, 4, 2, 1], vec![10, 8, 7, 6, 3]]).unwrap();
        assert!(has_property_v(&s, 1, 4).unwrap());
        let steps = equipolar_reduce(&s, 1, 4).unwrap();
        let t = replay(&s, &steps).unwrap();
        assert_eq!(
            t.rows(),
            &[vec![12, 11, 10, 5, 4, 3, 2], vec![9, 8, 7, 6, 1]]
        );
    }

    #[test]
    fn worked_example_reduction() {
        let q = build_quasistaircase(1, 4, 2, 3, 15).unwrap();
        let (s0, _) = q.extremal();
        let s = s0.exchange(9).unwrap();
        assert!(has_property_v(&s, 2, 2).unwrap());
        let steps = equipolar_reduce(&s, 2, 2).unwrap();
        let mut cur = s.clone();
        for &i in &steps {
            let next = cur.exchange(i).unwrap();
            assert!(cur.content(i) - cur.content(i + 1) >= 2);
            assert!(next.inversions() < cur.inversions());
            cur = next;
        }
        assert_eq!(cur, build_theta(&q, 2, 2).unwrap());
        let mut mu = vec![4, 4, 3, 2, 2, 3, 3, 2];
        mu.extend([0; 7]);
        assert_eq!(alpha_of_tableau(&q, &cur).unwrap().0, mu);
    }

    fn small_shapes() -> Vec<Partition> {
        let mut out = Vec::new();
        for n in 2..=8u32 {
            for p in crate::combinat::compositions_of(n, n as usize) {
                if p.is_partition() && p.length() >= 2 {
                    out.push(Partition(p.parts()[..p.length()].to_vec()));
                }
            }
        }
        out
    }

    #[test]
    fn reduction_reaches_theta_everywhere() {
        for sh in small_shapes() {
            for s in enumerate_rsyt(&sh).unwrap() {
                for j in 1..sh.length() {
                    for k in 1..=sh.part(j + 1) as usize {
                        let target = theta_for_shape(&sh, j, k).unwrap();
                        assert!(has_property_v(&target, j, k).unwrap());
                        // every V(j,k) tableau is an RSYT with that column pair swapped
                        let mut rows = s.rows().to_vec();
                        let (a, b) = (rows[j - 1][k - 1], rows[j][k - 1]);
                        rows[j - 1][k - 1] = b;
                        rows[j][k - 1] = a;
                        let Ok(v) = Tableau::from_rows(rows) else {
                            continue;
                        };
                        assert!(has_property_v(&v, j, k).unwrap());
                        let steps = equipolar_reduce(&v, j, k)
                            .unwrap_or_else(|e| panic!("{:?} ({j},{k}): {e}", v.rows()));
                        assert_eq!(replay(&v, &steps).unwrap(), target);
                    }
                }
            }
        }
    }

    #[test]
    fn equal_column_swaps_have_v() {
        for sh in small_shapes() {
            for s in enumerate_rsyt(&sh).unwrap() {
                for u in 1..s.size() {
                    if s.col(u) == s.col(u + 1) && s.row(u + 1) == s.row(u) + 1 {
                        let j = s.row(u);
                        let t = s.exchange(u).unwrap();
                        assert!(has_property_v(&t, j, s.col(u)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn theta_alpha_closed_form() {
        for (m, n, d, kk, big_n) in [
            (1, 3, 2, 3, 10),
            (2, 3, 1, 2, 6),
            (1, 4, 2, 3, 15),
            (3, 2, 2, 2, 5),
            (1, 4, 1, 1, 5),
        ] {
            let q = build_quasistaircase(m, n, d, kk, big_n).unwrap();
            for j in 1..q.rows() {
                for k in 1..=q.tau.part(j + 1) as usize {
                    let th = ThetaLabel::new(&q, j, k).unwrap();
                    let a = th.alpha().unwrap();
                    let e = th.e_intervals();
                    let sizes: Vec<usize> = e
                        .iter()
                        .map(|&(lo, hi)| (hi + 1).saturating_sub(lo))
                        .collect();
                    let tj1 = q.tau.part(j + 1) as usize;
                    assert_eq!(sizes[0], tj1 - k);
                    let want2 = if j == 1 {
                        (n * d) as usize - k
                    } else {
                        n as usize - k
                    };
                    assert_eq!(sizes[1], want2);
                    assert_eq!(sizes[2], k);
                    assert_eq!(sizes[3], k - 1);
                    assert_eq!(sizes.iter().sum::<usize>(), q.tau.part(j) as usize + tj1);
                    let inside = |i: usize, r: (usize, usize)| r.0 <= i && i <= r.1;
                    for i in 1..=big_n {
                        let want = if i <= q.nu[j + 1] || i > q.nu[j - 1] {
                            q.lambda.0[i - 1]
                        } else if inside(i, e[0]) || inside(i, e[2]) {
                            m * (d + j as u32 - 1)
                        } else if j > 1 {
                            m * (d + j as u32 - 2)
                        } else {
                            0
                        };
                        assert_eq!(a.at(i), want, "qs {q:?} j={j} k={k} i={i}");
                    }
                }
            }
        }
    }
}
