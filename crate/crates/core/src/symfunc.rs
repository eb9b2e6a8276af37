//! Symmetric functions in the monomial basis.
//!
//! Multiplication by a power sum acts on `m_μ` by adding `i` to one part of
//! `μ` (a zero part included). The finite-variable polynomial routines below
//! are the brute-force oracle for that rule.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::partitions::{add_part_terms, Partition};
use crate::poly::MultiPoly;
use crate::rational::{fmt_q, q, Q};

#[derive(Clone, Default, PartialEq, Eq)]
pub struct SymFunc {
    terms: BTreeMap<Partition, Q>,
}

impl SymFunc {
    pub fn zero() -> Self {
        SymFunc::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty())
    }

    /// The monomial symmetric function `m_λ`.
    pub fn monomial(lambda: Partition) -> Self {
        Self::from_terms([(lambda, q(1))])
    }

    /// `e_k = m_{(1^k)}`.
    pub fn elementary(k: u32) -> Self {
        Self::monomial(Partition::column(k))
    }

    pub fn from_terms(items: impl IntoIterator<Item = (Partition, Q)>) -> Self {
        let mut f = SymFunc::zero();
        for (p, c) in items {
            f.add_term(p, &c);
        }
        f
    }

    pub fn add_term(&mut self, lambda: Partition, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Q> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Q {
        self.terms.get(lambda).cloned().unwrap_or_else(|| q(0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weight of all terms, if the function is homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Partition::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Partition::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, x)| (p.clone(), x * c)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(p, c)| {
                if *c == q(1) {
                    format!("m[{}]", p.exponent_notation())
                } else {
                    format!("{}*m[{}]", fmt_q(c), p.exponent_notation())
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `p_i · f`, term by term through the add-a-part rule.
pub fn mult_powersum(i: u32, f: &SymFunc) -> SymFunc {
    assert!(i >= 1, "power sum index must be positive");
    let mut out = SymFunc::zero();
    for (mu, c) in &f.terms {
        for (lambda, a) in add_part_terms(mu, i) {
            out.add_term(lambda, &(c * Q::from_integer(a.into())));
        }
    }
    out
}

/// All distinct rearrangements of `v`, in lexicographic order.
fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(k) = (0..cur.len().saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            return out;
        };
        let l = (k + 1..cur.len()).rev().find(|&l| cur[k] < cur[l]).expect("successor exists");
        cur.swap(k, l);
        cur[k + 1..].reverse();
        out.push(cur.clone());
    }
}

/// `m_λ(x_1, ..., x_nvars)`; zero when `λ` has more parts than variables.
pub fn monomial_polynomial(lambda: &Partition, nvars: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    if lambda.len() > nvars {
        return p;
    }
    let mut padded = lambda.parts().to_vec();
    padded.resize(nvars, 0);
    let one = q(1);
    for exp in distinct_permutations(&padded) {
        p.add_term(exp, &one);
    }
    p
}

/// Evaluates `f` in `nvars` variables.
pub fn to_polynomial(f: &SymFunc, nvars: usize) -> MultiPoly {
    f.terms.iter().fold(MultiPoly::zero(nvars), |acc, (lambda, c)| acc.add(&monomial_polynomial(lambda, nvars).scale(c)))
}

/// Reads off the monomial expansion of a symmetric polynomial, keeping
/// terms of degree at most `degree_bound`.
///
/// Symmetry is checked under every adjacent transposition; the first
/// violating one is reported.
pub fn from_polynomial(p: &MultiPoly, degree_bound: u32) -> Result<SymFunc> {
    let n = p.nvars();
    for i in 0..n.saturating_sub(1) {
        if p.swap_vars(i, i + 1) != *p {
            return Err(Error::NotSymmetric(i + 1, i + 2));
        }
    }
    let mut out = SymFunc::zero();
    for (exp, c) in p.terms() {
        let degree: u32 = exp.iter().sum();
        if degree > degree_bound || exp.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        out.add_term(Partition::new(exp.clone()), c);
    }
    Ok(out)
}

/// Expands `p_i · m_μ` in `|μ| + i` variables and reads it back in the
/// monomial basis.
pub fn oracle_mult_powersum(i: u32, mu: &Partition) -> Result<SymFunc> {
    let nvars = (mu.weight() + i) as usize;
    let prod = MultiPoly::power_sum(nvars, i).mul(&monomial_polynomial(mu, nvars));
    from_polynomial(&prod, mu.weight() + i)
}

/// Coefficients `E_0, ..., E_N` of `exp(Σ_i z^i P_i / ((-1)^{i-1} i))·1`
/// where `P_i` is multiplication by `p_i`.
///
/// Uses `n E_n = Σ_{i=1}^{n} (-1)^{i-1} P_i(E_{n-i})`, valid because the
/// operators commute.
pub fn elementary_chain(n_max: u32) -> Vec<SymFunc> {
    let mut chain = vec![SymFunc::one()];
    for n in 1..=n_max {
        let mut acc = SymFunc::zero();
        for i in 1..=n {
            let term = mult_powersum(i, &chain[(n - i) as usize]);
            let sign = if i % 2 == 1 { q(1) } else { q(-1) };
            acc = acc.add(&term.scale(&sign));
        }
        chain.push(acc.scale(&Q::new(1.into(), n.into())));
    }
    chain
}
