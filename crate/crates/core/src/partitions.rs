//! Partitions, stratum dimension bookkeeping and the add-a-part rule.
//!
//! Partitions are listed in reverse lexicographic order throughout, so any
//! sum assembled stratum by stratum is deterministic.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Accepts only an already weakly decreasing list of positive parts.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(contract(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(contract(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts.to_vec()))
    }

    /// `(1^k)`, a single column.
    pub fn column(k: u32) -> Self {
        Partition(vec![1; k as usize])
    }

    /// `(k)`, a single row.
    pub fn row(k: u32) -> Self {
        Partition::new(vec![k])
    }

    /// Rectangle with `rows` parts each equal to `width`.
    pub fn rectangle(rows: u32, width: u32) -> Self {
        Partition::new(vec![width; rows as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Part `k` (0-based), zero past the end.
    pub fn part(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// `m_i` = number of parts equal to `i`; index 0 is unused.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.largest() as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    pub fn multiplicity(&self, value: u32) -> u32 {
        self.0.iter().filter(|&&p| p == value).count() as u32
    }

    /// Distinct part values in decreasing order.
    pub fn distinct_values(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.dedup();
        v
    }

    pub fn conjugate(&self) -> Self {
        let width = self.largest();
        Partition((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// True when the diagram fits inside `rows` rows of length `width`.
    pub fn fits_box(&self, rows: u32, width: u32) -> bool {
        self.len() <= rows as usize && self.largest() <= width
    }

    /// Replaces one part equal to `value` (or a new zero part when
    /// `value == 0`) by `value + i` and re-sorts.
    pub fn add_to_part(&self, value: u32, i: u32) -> Option<Self> {
        let mut parts = self.0.clone();
        if value == 0 {
            parts.push(i);
        } else {
            let pos = parts.iter().position(|&p| p == value)?;
            parts[pos] += i;
        }
        Some(Partition::new(parts))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Partition {
    /// Exponent notation such as `1^2 3`.
    pub fn exponent_notation(&self) -> String {
        if self.is_empty() {
            return "∅".into();
        }
        let m = self.multiplicities();
        let mut out = Vec::new();
        for (value, &count) in m.iter().enumerate().skip(1) {
            match count {
                0 => {}
                1 => out.push(format!("{value}")),
                c => out.push(format!("{value}^{c}")),
            }
        }
        out.join(" ")
    }
}

/// Reverse lexicographic: `(4) > (3,1) > (2,2) > ...`; the enumeration
/// order is decreasing in this ordering.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of every weight `0..=n`.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(enumerate_partitions).collect()
}

/// The coefficient `a_{λμ}` of `m_λ` in `p_i · m_μ`.
///
/// `λ` must arise from `μ` by adding `i` to one part `μ_j` (possibly a zero
/// part) and re-sorting; the coefficient is then the number of parts of `λ`
/// equal to `μ_j + i`. Any other `λ` of the right weight gets 0.
pub fn add_part_coefficient(lambda: &Partition, mu: &Partition, i: u32) -> Result<u32> {
    if i == 0 {
        return Err(contract("power-sum index must be positive"));
    }
    if lambda.weight() != mu.weight() + i {
        return Err(contract(format!(
            "weight mismatch: |{lambda}| = {} but |{mu}| + {i} = {}",
            lambda.weight(),
            mu.weight() + i
        )));
    }
    for value in mu.distinct_values().into_iter().chain(std::iter::once(0)) {
        if mu.add_to_part(value, i).as_ref() == Some(lambda) {
            return Ok(lambda.multiplicity(value + i));
        }
    }
    Ok(0)
}

/// Every `(λ, a_{λμ})` with `a_{λμ} > 0`, one per distinct addable value.
pub fn add_part_terms(mu: &Partition, i: u32) -> Vec<(Partition, u32)> {
    mu.distinct_values()
        .into_iter()
        .chain(std::iter::once(0))
        .filter_map(|value| {
            let lambda = mu.add_to_part(value, i)?;
            let a = lambda.multiplicity(value + i);
            Some((lambda, a))
        })
        .collect()
}

/// Numerical invariants of a surface entering the moduli dimension formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub c1_sq: i64,
    pub chi_o: i64,
    pub h1_o: i64,
}

impl SurfaceInvariants {
    /// `P²` with `c_1(L) = H`.
    pub const P2_LINE: SurfaceInvariants = SurfaceInvariants { c1_sq: 1, chi_o: 1, h1_o: 0 };
}

/// The `n`-independent constant `a` in `dim M^G(r, n) = 2rn + a`.
pub fn gieseker_offset(r: u32, inv: SurfaceInvariants) -> i64 {
    let r = r as i64;
    -(r - 1) * inv.c1_sq - (r * r - 1) * inv.chi_o + inv.h1_o
}

/// Expected dimension of the Gieseker moduli space of rank `r`, `c_2 = n`.
/// A negative value signals that the space is empty.
pub fn dim_gieseker(r: u32, n: u32, inv: SurfaceInvariants) -> i64 {
    2 * r as i64 * n as i64 + gieseker_offset(r, inv)
}

/// `rn - 1`, the dimension of the punctual Quot scheme of length `n` quotients of `O^r`.
pub fn dim_punctual_quot(r: u32, n: u32) -> Result<i64> {
    if r == 0 {
        return Err(contract("rank must be positive"));
    }
    if n == 0 {
        return Err(contract("the punctual Quot scheme needs n >= 1"));
    }
    Ok(r as i64 * n as i64 - 1)
}

/// One stratum `(s, μ)` of the Uhlenbeck space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub s: u32,
    pub mu: Partition,
    /// `rs - m`.
    pub fiber_dim: i64,
    /// `2(rs - m)`.
    pub codim: i64,
    /// Set when the locally free part `N(r, n - s)` has negative expected
    /// dimension. Only computed by [`strata_on_surface`].
    pub expected_empty: bool,
}

fn fiber_dim(r: u32, mu: &Partition) -> i64 {
    r as i64 * mu.weight() as i64 - mu.len() as i64
}

/// All strata `(s, μ)` with `0 <= s < n`, `μ ⊢ s`.
pub fn strata(r: u32, n: u32) -> Result<Vec<Stratum>> {
    if r == 0 {
        return Err(contract("rank must be positive"));
    }
    Ok((0..n)
        .flat_map(|s| {
            enumerate_partitions(s).into_iter().map(move |mu| {
                let f = fiber_dim(r, &mu);
                Stratum { s, mu, fiber_dim: f, codim: 2 * f, expected_empty: false }
            })
        })
        .collect())
}

/// Like [`strata`], flagging strata whose locally free part is expected empty.
pub fn strata_on_surface(r: u32, n: u32, inv: SurfaceInvariants) -> Result<Vec<Stratum>> {
    let mut out = strata(r, n)?;
    for st in &mut out {
        st.expected_empty = dim_gieseker(r, n - st.s, inv) < 0;
    }
    Ok(out)
}

/// Fiber dimension recomputed as a sum of punctual Quot dimensions, one per
/// part of `μ`.
pub fn fiber_dim_from_quot(r: u32, mu: &Partition) -> Result<i64> {
    mu.parts().iter().map(|&p| dim_punctual_quot(r, p)).sum()
}

/// Codimension of the stratum `(s, μ)` in the Uhlenbeck space from dimension
/// counts: `dim N(r, n) - dim N(r, n - s) - dim Sym^s_μ`, the last being
/// `2m` (m distinct moving points).
pub fn codim_from_dimensions(r: u32, n: u32, s: u32, mu: &Partition, inv: SurfaceInvariants) -> i64 {
    dim_gieseker(r, n, inv) - dim_gieseker(r, n - s, inv) - 2 * mu.len() as i64
}
