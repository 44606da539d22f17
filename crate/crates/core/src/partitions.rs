//! Partitions, strict partitions and compositions, together with the
//! combinatorial sets built from them: duals, horizontal strips, and the
//! difference sets used by the first-variable expansions of Q̃-polynomials.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts. The empty partition is (0).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidIndex(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidIndex(format!("{parts:?} has an interior zero")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts arbitrary parts into a partition (zeros are discarded).
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `k` copies of `value` followed by the parts of `rest`.
    pub fn with_leading(value: u32, k: usize, rest: &Partition) -> Result<Self> {
        let mut parts = vec![value; k];
        parts.extend_from_slice(rest.parts());
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Largest part, 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// Young diagram containment.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.parts[i] >= other.parts[i])
    }

    /// Number of leading parts equal to `value`.
    pub fn leading_count(&self, value: u32) -> usize {
        self.parts.iter().take_while(|&&p| p == value).count()
    }

    /// Removes the part at `index`.
    pub fn remove_at(&self, index: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts.remove(index);
        Partition { parts }
    }

    /// Drops the first `k` parts.
    pub fn skip(&self, k: usize) -> Partition {
        Partition {
            parts: self.parts[k.min(self.len())..].to_vec(),
        }
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Exponent vector of multiplicities: entry `i` counts parts equal to `i + 1`.
    pub fn multiplicities(&self, max_part: usize) -> Vec<u32> {
        let mut m = vec![0u32; max_part];
        for &p in &self.parts {
            m[p as usize - 1] += 1;
        }
        m
    }

    /// Comma separated parts, empty for (0). This is the CLI syntax.
    pub fn to_csv(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", self.to_csv())
        }
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad part {tok:?} in {s:?}")))
        })
        .collect()
}

/// A strict partition λ₁ > λ₂ > ⋯ > λ_ℓ > 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct StrictPartition(Partition);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        Self::try_from_partition(Partition::new(parts)?)
    }

    pub fn try_from_partition(p: Partition) -> Result<Self> {
        if p.is_strict() {
            Ok(StrictPartition(p))
        } else {
            Err(Error::InvalidIndex(format!("{p} is not strict")))
        }
    }

    pub fn empty() -> Self {
        StrictPartition(Partition::empty())
    }

    /// ρ_n = (n, n-1, ..., 1).
    pub fn rho(n: u32) -> Self {
        StrictPartition(Partition {
            parts: (1..=n).rev().collect(),
        })
    }

    /// A one-row partition (k); (0) when k = 0.
    pub fn row(k: u32) -> Self {
        StrictPartition(Partition::new(vec![k]).expect("single part"))
    }

    pub fn as_partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }

    /// Membership in 𝒟_n.
    pub fn is_in(&self, n: u32) -> bool {
        self.first() <= n
    }

    pub fn check_in(&self, n: u32) -> Result<()> {
        if self.is_in(n) {
            Ok(())
        } else {
            Err(Error::InvalidIndex(format!("{self} has a part larger than {n}")))
        }
    }

    /// λ ∖ {values}: removes every part equal to one of `values`.
    pub fn without(&self, values: &[u32]) -> StrictPartition {
        StrictPartition(Partition {
            parts: self
                .0
                .parts
                .iter()
                .copied()
                .filter(|p| !values.contains(p))
                .collect(),
        })
    }

    /// Adds a part, which must not already occur.
    pub fn with_part(&self, value: u32) -> Result<StrictPartition> {
        if value == 0 {
            return Ok(self.clone());
        }
        if self.0.parts.contains(&value) {
            return Err(Error::InvalidIndex(format!("{self} already has part {value}")));
        }
        let mut parts = self.0.parts.clone();
        parts.push(value);
        Ok(StrictPartition(Partition::from_unsorted(parts)))
    }
}

impl Deref for StrictPartition {
    type Target = Partition;

    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StrictPartition::new(parse_parts(s)?)
    }
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Vec<u32> {
        p.0.parts
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        StrictPartition::new(parts)
    }
}

/// A finite integer sequence with trailing zeros removed. Entries may be
/// negative; a Q̃-polynomial indexed by such a composition is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<i64>);

impl Composition {
    pub fn new(mut parts: Vec<i64>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Composition(parts)
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&p| p < 0)
    }

    /// Number of nonzero entries.
    pub fn nonzero_len(&self) -> usize {
        self.0.iter().filter(|&&p| p != 0).count()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    /// The partition with the same entries, if the composition is one.
    pub fn as_partition(&self) -> Option<Partition> {
        if self.has_negative() {
            return None;
        }
        let parts: Vec<u32> = self.0.iter().map(|&p| p as u32).collect();
        Partition::new(parts).ok()
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Composition(p.parts().iter().map(|&x| x as i64).collect())
    }
}

impl From<Vec<i64>> for Composition {
    fn from(parts: Vec<i64>) -> Self {
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(0)");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// λ̂: the parts of {1, ..., n} not occurring in λ.
pub fn dual(lambda: &StrictPartition, n: u32) -> Result<StrictPartition> {
    lambda.check_in(n)?;
    Ok(complement(lambda, n))
}

/// λ′ for the Lagrangian Grassmannian: complement in {1, ..., n-1}.
pub fn lg_dual(lambda: &StrictPartition, n: u32) -> Result<StrictPartition> {
    if n == 0 || !lambda.is_in(n - 1) {
        return Err(Error::InvalidIndex(format!(
            "{lambda} is not in D_{}",
            n.saturating_sub(1)
        )));
    }
    Ok(complement(lambda, n - 1))
}

fn complement(lambda: &StrictPartition, n: u32) -> StrictPartition {
    let parts = (1..=n).rev().filter(|p| !lambda.parts().contains(p)).collect();
    StrictPartition(Partition { parts })
}

/// λ* = (n - λ_ℓ, ..., n - λ₁) with zero entries dropped; (0)* = (0).
pub fn star(lambda: &StrictPartition, n: u32) -> Result<StrictPartition> {
    lambda.check_in(n)?;
    let parts = lambda
        .parts()
        .iter()
        .rev()
        .map(|&p| n - p)
        .filter(|&p| p > 0)
        .collect();
    Ok(StrictPartition(Partition { parts }))
}

/// All of 𝒟_n, ordered by weight and then lexicographically.
pub fn strict_partitions(n: u32) -> Vec<StrictPartition> {
    let mut out: Vec<StrictPartition> = (0u64..1 << n)
        .map(|mask| {
            let parts = (1..=n).rev().filter(|p| mask >> (p - 1) & 1 == 1).collect();
            StrictPartition(Partition { parts })
        })
        .collect();
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
    out
}

/// Partitions of `weight` with every part at most `max_part` and at most
/// `max_len` parts, in lexicographically decreasing order.
pub fn partitions_bounded(weight: u32, max_part: u32, max_len: usize) -> Vec<Partition> {
    fn rec(
        remaining: u32,
        max_part: u32,
        max_len: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if max_len == 0 {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, max_len - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weight, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `weight` with parts at most `max_part`: the degree-`weight`
/// slice of ℰ_max_part.
pub fn partitions_with_max_part(weight: u32, max_part: u32) -> Vec<Partition> {
    partitions_bounded(weight, max_part, usize::MAX)
}

pub fn partitions_of(weight: u32) -> Vec<Partition> {
    partitions_bounded(weight, weight, usize::MAX)
}

/// Number of connected components of a skew diagram given by row ranges
/// `[start, end)` (0-based columns), where boxes sharing an edge or a vertex
/// are connected.
pub fn skew_components(rows: &[(u32, u32)]) -> usize {
    let mut boxes = Vec::new();
    for (r, &(start, end)) in rows.iter().enumerate() {
        for c in start..end {
            boxes.push((r as i64, c as i64));
        }
    }
    let mut uf = UnionFind::new(boxes.len());
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            let (a, b) = (boxes[i], boxes[j]);
            if (a.0 - b.0).abs() <= 1 && (a.1 - b.1).abs() <= 1 {
                uf.union(i, j);
            }
        }
    }
    (0..boxes.len()).filter(|&i| uf.find(i) == i).count()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// N′(λ, μ): one less than the number of components of μ/λ. The empty strip
/// gets 0.
pub fn strip_exponent(lambda: &Partition, mu: &Partition) -> u32 {
    let rows: Vec<(u32, u32)> = (0..mu.len())
        .map(|i| (lambda.part(i), mu.part(i)))
        .collect();
    skew_components(&rows).saturating_sub(1) as u32
}

/// All μ ⊇ λ with |μ| = |λ| + k, μ₁ ≤ cap and μ/λ a horizontal strip, each
/// paired with N′(λ, μ). Sorted lexicographically by μ.
pub fn horizontal_strips(lambda: &Partition, k: u32, cap: u32) -> Vec<(Partition, u32)> {
    fn rec(
        lambda: &Partition,
        row: usize,
        remaining: u32,
        cap: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if row > lambda.len() {
            if remaining == 0 {
                out.push(Partition::new(cur.clone()).expect("strip is a partition"));
            }
            return;
        }
        let low = lambda.part(row);
        let high = if row == 0 { cap } else { lambda.part(row - 1) };
        if low > high {
            return;
        }
        for v in low..=high.min(low + remaining) {
            cur.push(v);
            rec(lambda, row + 1, remaining - (v - low), cap, cur, out);
            cur.pop();
        }
    }
    let mut mus = Vec::new();
    rec(lambda, 0, k, cap, &mut Vec::new(), &mut mus);
    mus.sort();
    mus.into_iter()
        .map(|mu| {
            let e = strip_exponent(lambda, &mu);
            (mu, e)
        })
        .collect()
}

/// C(λ, a, b): compositions μ with λ_i - μ_i ∈ {0, 1, 2}, the difference 1
/// occurring exactly `a` times and 2 exactly `b` times.
pub fn c_set(lambda: &Partition, a: usize, b: usize) -> Vec<Composition> {
    let len = lambda.len();
    if a + b > len {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut diffs = vec![0i64; len];
    fn rec(
        lambda: &Partition,
        i: usize,
        a: usize,
        b: usize,
        diffs: &mut Vec<i64>,
        out: &mut Vec<Composition>,
    ) {
        if i == diffs.len() {
            if a == 0 && b == 0 {
                let parts = (0..diffs.len())
                    .map(|j| lambda.part(j) as i64 - diffs[j])
                    .collect();
                out.push(Composition::new(parts));
            }
            return;
        }
        let left = diffs.len() - i;
        if a + b > left {
            return;
        }
        for (d, na, nb) in [(0, a, b), (1, a.wrapping_sub(1), b), (2, a, b.wrapping_sub(1))] {
            if (d == 1 && a == 0) || (d == 2 && b == 0) {
                continue;
            }
            diffs[i] = d;
            rec(lambda, i + 1, na, nb, diffs, out);
        }
        diffs[i] = 0;
    }
    rec(lambda, 0, a, b, &mut diffs, &mut out);
    out
}

/// B(λ, k): compositions μ with λ_i - μ_i ∈ {0, 1} and |λ| - |μ| = k.
pub fn b_set(lambda: &Partition, k: usize) -> Vec<Composition> {
    c_set(lambda, k, 0)
}
