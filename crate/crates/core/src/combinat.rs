//! Compositions, partitions, dominance orders and reverse standard tableaux.
//!
//! Tableau rows are counted bottom-to-top and columns left-to-right, both
//! starting at 1.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of cells accepted by [`enumerate_rsyt`].
pub const RSYT_CELL_CAP: usize = 20;

/// A fixed-length vector of nonnegative exponents. The length is the
/// number of variables, so `(1,0)` and `(1,0,0)` are different values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn zeros(n: usize) -> Self {
        Composition(vec![0; n])
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    /// 1-based entry access.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Position of the last nonzero entry (0 for the zero composition).
    pub fn length(&self) -> usize {
        self.0.iter().rposition(|&a| a != 0).map_or(0, |p| p + 1)
    }

    /// Weakly decreasing rearrangement.
    pub fn sorted_desc(&self) -> Composition {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Composition(v)
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Exchange entries `i` and `i+1` (1-based).
    pub fn swapped(&self, i: usize) -> Composition {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Composition(v)
    }

    /// Pad with trailing zeros up to `n` entries.
    pub fn padded(&self, n: usize) -> Composition {
        let mut v = self.0.clone();
        if v.len() < n {
            v.resize(n, 0);
        }
        Composition(v)
    }

    /// `(α₂,…,α_N, α₁+1)`.
    pub fn affine_raise(&self) -> Composition {
        let mut v: Vec<u32> = self.0[1..].to_vec();
        v.push(self.0[0] + 1);
        Composition(v)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Composition(vec![]));
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("composition entry {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Composition)
    }
}

impl Serialize for Composition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<u32>::deserialize(d).map(Composition)
    }
}

/// A weakly decreasing sequence; trailing zeros are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    /// 1-based part, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.0.len() {
            self.0[i - 1]
        } else {
            0
        }
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(Composition::from_str(s)?.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Composition(self.0.clone()))
    }
}

/// `r(i) = #{k: a_k > a_i} + #{k ≤ i: a_k = a_i}`, 1-based values.
pub fn rank_function(a: &Composition) -> Vec<usize> {
    let v = &a.0;
    (0..v.len())
        .map(|i| {
            let greater = v.iter().filter(|&&x| x > v[i]).count();
            let equal_before = v[..=i].iter().filter(|&&x| x == v[i]).count();
            greater + equal_before
        })
        .collect()
}

fn check_same(a: &Composition, b: &Composition) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(format!(
            "lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.size() != b.size() {
        return Err(Error::SizeMismatch(format!(
            "sizes {} and {}",
            a.size(),
            b.size()
        )));
    }
    Ok(())
}

fn prefix_dominates(a: &[u32], b: &[u32]) -> bool {
    let (mut sa, mut sb) = (0u64, 0u64);
    for k in 0..a.len().max(b.len()) {
        sa += *a.get(k).unwrap_or(&0) as u64;
        sb += *b.get(k).unwrap_or(&0) as u64;
        if sa < sb {
            return false;
        }
    }
    true
}

/// The strict order `a ≻ b` on prefix sums.
pub fn dominance_succ(a: &Composition, b: &Composition) -> Result<bool> {
    check_same(a, b)?;
    Ok(a != b && prefix_dominates(&a.0, &b.0))
}

/// The order `a ▷ b`: compare sorted rearrangements, then the compositions.
pub fn dominance_tri(a: &Composition, b: &Composition) -> bool {
    if a.len() != b.len() || a.size() != b.size() || a == b {
        return false;
    }
    let (sa, sb) = (a.sorted_desc(), b.sorted_desc());
    if sa != sb {
        prefix_dominates(&sa.0, &sb.0)
    } else {
        prefix_dominates(&a.0, &b.0)
    }
}

/// All compositions of `size` into exactly `n` parts, in lex-descending order.
pub fn compositions_of(size: u32, n: usize) -> Vec<Composition> {
    fn rec(rem: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if left == 1 {
            cur.push(rem);
            out.push(Composition(cur.clone()));
            cur.pop();
            return;
        }
        for a in (0..=rem).rev() {
            cur.push(a);
            rec(rem - a, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if size == 0 {
            out.push(Composition(vec![]));
        }
        return out;
    }
    rec(size, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Number of compositions of `size` into `n` parts, saturating.
pub fn composition_count(size: u32, n: usize) -> u64 {
    if n == 0 {
        return u64::from(size == 0);
    }
    // C(size+n-1, n-1)
    let mut c: u128 = 1;
    let k = (n - 1) as u128;
    for j in 0..k {
        c = c * (size as u128 + n as u128 - 1 - j) / (j + 1);
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    c as u64
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum TableauKind {
    Rsyt,
    ReverseRowOrdered,
}

/// A filling of a partition shape by `1..=N` with strictly decreasing rows.
#[derive(Clone, Debug)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
    row_of: Vec<usize>,
    col_of: Vec<usize>,
    kind: TableauKind,
}

impl PartialEq for Tableau {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}
impl Eq for Tableau {}

impl std::hash::Hash for Tableau {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state)
    }
}

impl Tableau {
    /// Build from rows listed bottom-to-top.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Tableau> {
        if rows.iter().any(|r| r.is_empty()) {
            return Err(Error::InvalidTableau("empty row".into()));
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidTableau("row lengths not a partition".into()));
        }
        let n: usize = rows.iter().map(|r| r.len()).sum();
        let mut row_of = vec![0; n + 1];
        let mut col_of = vec![0; n + 1];
        for (r, row) in rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if e == 0 || e > n || row_of[e] != 0 {
                    return Err(Error::InvalidTableau(format!("bad or repeated entry {e}")));
                }
                row_of[e] = r + 1;
                col_of[e] = c + 1;
            }
            if row.windows(2).any(|w| w[0] <= w[1]) {
                return Err(Error::InvalidTableau(format!(
                    "row {} not decreasing",
                    r + 1
                )));
            }
        }
        let columns_ok = rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(up, down)| up < down));
        let kind = if columns_ok {
            TableauKind::Rsyt
        } else {
            TableauKind::ReverseRowOrdered
        };
        Ok(Tableau {
            rows,
            row_of,
            col_of,
            kind,
        })
    }

    /// Rows bottom-to-top.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn size(&self) -> usize {
        self.row_of.len() - 1
    }

    pub fn kind(&self) -> TableauKind {
        self.kind
    }

    pub fn is_rsyt(&self) -> bool {
        self.kind == TableauKind::Rsyt
    }

    pub fn row(&self, entry: usize) -> usize {
        self.row_of[entry]
    }

    pub fn col(&self, entry: usize) -> usize {
        self.col_of[entry]
    }

    /// Entry at 1-based (row, col), if inside the shape.
    pub fn entry(&self, row: usize, col: usize) -> Option<usize> {
        self.rows
            .get(row.checked_sub(1)?)?
            .get(col.checked_sub(1)?)
            .copied()
    }

    /// `CT[i] = col − row`, indexed by `entry − 1`.
    pub fn content_vector(&self) -> Vec<i64> {
        (1..=self.size())
            .map(|e| self.col_of[e] as i64 - self.row_of[e] as i64)
            .collect()
    }

    pub fn content(&self, entry: usize) -> i64 {
        self.col_of[entry] as i64 - self.row_of[entry] as i64
    }

    pub fn inversions(&self) -> usize {
        let n = self.size();
        let mut inv = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                if self.row_of[i] < self.row_of[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Entries read row by row, bottom row first.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Exchange entries `i` and `i+1` without any legality check beyond
    /// row strictness.
    pub fn exchange(&self, i: usize) -> Result<Tableau> {
        if i == 0 || i >= self.size() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.size().saturating_sub(1),
            });
        }
        let mut rows = self.rows.clone();
        let (ri, ci) = (self.row_of[i] - 1, self.col_of[i] - 1);
        let (rj, cj) = (self.row_of[i + 1] - 1, self.col_of[i + 1] - 1);
        rows[ri][ci] = i + 1;
        rows[rj][cj] = i;
        Tableau::from_rows(rows)
    }

    /// The step `S → S^(i)`, legal when `row[i] < row[i+1]` and `col[i] > col[i+1]`.
    pub fn step(&self, i: usize) -> Result<Tableau> {
        if i == 0 || i >= self.size() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.size().saturating_sub(1),
            });
        }
        if !(self.row_of[i] < self.row_of[i + 1] && self.col_of[i] > self.col_of[i + 1]) {
            return Err(Error::IllegalStep(i));
        }
        let t = self.exchange(i).map_err(|_| Error::IllegalStep(i))?;
        if self.is_rsyt() && !t.is_rsyt() {
            return Err(Error::IllegalStep(i));
        }
        Ok(t)
    }

    /// Whether `step(i)` is legal.
    pub fn can_step(&self, i: usize) -> bool {
        i >= 1
            && i < self.size()
            && self.row_of[i] < self.row_of[i + 1]
            && self.col_of[i] > self.col_of[i + 1]
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Tableau", 2)?;
        st.serialize_field("shape", &self.shape().0)?;
        st.serialize_field("rows", &self.rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            shape: Option<Vec<u32>>,
            rows: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(d)?;
        let t = Tableau::from_rows(raw.rows).map_err(serde::de::Error::custom)?;
        if let Some(shape) = raw.shape {
            if t.shape().0 != shape {
                return Err(serde::de::Error::custom("shape does not match rows"));
            }
        }
        Ok(t)
    }
}

fn shape_cells(shape: &Partition) -> usize {
    shape.size()
}

/// All reverse standard tableaux of the shape, ordered by inversions
/// descending, then by reading word.
pub fn enumerate_rsyt(shape: &Partition) -> Result<Vec<Tableau>> {
    enumerate_rsyt_capped(shape, RSYT_CELL_CAP)
}

pub fn enumerate_rsyt_capped(shape: &Partition, cap: usize) -> Result<Vec<Tableau>> {
    let n = shape_cells(shape);
    if n > cap {
        return Err(Error::CapExceeded {
            what: format!("shape with {n} cells"),
            cap,
        });
    }
    let lens: Vec<usize> = shape.0.iter().map(|&a| a as usize).collect();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); lens.len()];
    let mut out = Vec::new();
    // Place n, n-1, ..., 1; a cell is addable when the row below is longer.
    fn rec(v: usize, lens: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v == 0 {
            out.push(rows.clone());
            return;
        }
        for r in 0..lens.len() {
            let cur = rows[r].len();
            if cur < lens[r] && (r == 0 || rows[r - 1].len() > cur) {
                rows[r].push(v);
                rec(v - 1, lens, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(n, &lens, &mut rows, &mut raw);
    for r in raw {
        out.push(Tableau::from_rows(r)?);
    }
    sort_tableaux(&mut out);
    Ok(out)
}

pub fn sort_tableaux(ts: &mut [Tableau]) {
    ts.sort_by(|a, b| match b.inversions().cmp(&a.inversions()) {
        Ordering::Equal => a.reading_word().cmp(&b.reading_word()),
        o => o,
    });
}

/// `(S₀, S₁)`: `N..1` entered column by column, and row by row.
pub fn extremal_tableaux(shape: &Partition) -> (Tableau, Tableau) {
    let lens: Vec<usize> = shape.0.iter().map(|&a| a as usize).collect();
    let n: usize = lens.iter().sum();
    let mut s0: Vec<Vec<usize>> = lens.iter().map(|&l| Vec::with_capacity(l)).collect();
    let mut v = n;
    let width = lens.first().copied().unwrap_or(0);
    for c in 0..width {
        for (r, &l) in lens.iter().enumerate() {
            if c < l {
                s0[r].push(v);
                v -= 1;
            }
        }
    }
    let mut s1 = Vec::with_capacity(lens.len());
    let mut v = n;
    for &l in &lens {
        s1.push((0..l).map(|c| v - c).collect::<Vec<_>>());
        v -= l;
    }
    (
        Tableau::from_rows(s0).expect("column filling is a tableau"),
        Tableau::from_rows(s1).expect("row filling is a tableau"),
    )
}

/// Number of standard tableaux of the shape by the hook length formula.
pub fn hook_length_count(shape: &Partition) -> u128 {
    let lens: Vec<usize> = shape.0.iter().map(|&a| a as usize).collect();
    let n: usize = lens.iter().sum();
    let mut num: u128 = 1;
    for k in 1..=n as u128 {
        num *= k;
    }
    let mut den: u128 = 1;
    for (r, &l) in lens.iter().enumerate() {
        for c in 0..l {
            let arm = l - c - 1;
            let leg = lens[r + 1..].iter().filter(|&&x| x > c).count();
            den *= (arm + leg + 1) as u128;
        }
    }
    num / den
}
