//! Exact coefficient rings: rationals, Laurent polynomials in one or two
//! variables, univariate rational functions, and plain multivariate
//! polynomials used by the brute-force oracles.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::rational::{fmt_q, q, Q};

/// Commutative ring with exact equality, used as the coefficient type of
/// [`crate::series::Series`].
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Q) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
    /// Canonical text form; the variable names are ring specific.
    fn render(&self) -> String;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn from_q(c: Q) -> Self {
        Self::one().scale(&c)
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn render(&self) -> String {
        fmt_q(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

/// Laurent polynomial in `N` variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent<const N: usize> {
    terms: BTreeMap<[i32; N], Q>,
}

/// Laurent polynomial in `t` (or `u` where noted).
pub type LaurentT = Laurent<1>;
/// Laurent polynomial in `x, y`.
pub type LaurentXY = Laurent<2>;

impl<const N: usize> Laurent<N> {
    pub fn monomial(exp: [i32; N], c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(exp, c);
        }
        Laurent { terms }
    }

    pub fn from_terms(items: impl IntoIterator<Item = ([i32; N], Q)>) -> Self {
        let mut out = Laurent { terms: BTreeMap::new() };
        for (e, c) in items {
            out.add_term(e, &c);
        }
        out
    }

    pub fn add_term(&mut self, exp: [i32; N], c: &Q) {
        if Zero::is_zero(c) {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(|| q(0));
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> &BTreeMap<[i32; N], Q> {
        &self.terms
    }

    pub fn coeff(&self, exp: [i32; N]) -> Q {
        self.terms.get(&exp).cloned().unwrap_or_else(|| q(0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reindexes exponents, summing collisions.
    pub fn map_exponents<const M: usize>(&self, f: impl Fn([i32; N]) -> [i32; M]) -> Laurent<M> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    /// Sum of all coefficients, i.e. every variable set to 1.
    pub fn at_one(&self) -> Q {
        self.terms.values().fold(q(0), |acc, c| acc + c)
    }

    fn render_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (exp, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = exp
                .iter()
                .zip(names)
                .filter(|(e, _)| **e != 0)
                .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
                .collect();
            let negative = c.is_negative();
            let mag = c.abs();
            let body = if mono.is_empty() {
                fmt_q(&mag)
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", fmt_q(&mag), mono.join("*"))
            };
            match (k, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body)
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body)
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body)
                }
            }
        }
        out
    }
}

impl LaurentT {
    pub fn t_pow(e: i32) -> Self {
        Laurent::monomial([e], q(1))
    }

    /// Builds `Σ c_k t^k` from `(k, c_k)` integer pairs.
    pub fn from_ints(items: &[(i32, i64)]) -> Self {
        Laurent::from_terms(items.iter().map(|&(e, c)| ([e], q(c))))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().map(|e| e[0])
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().map(|e| e[0])
    }

    /// Replaces `t` by `t^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        self.map_exponents(|[e]| [e * k])
    }

    /// `f(t^{-1})`.
    pub fn reflect(&self) -> Self {
        self.substitute_power(-1)
    }
}

impl LaurentXY {
    /// Specialization `x = y = t`.
    pub fn diagonal(&self) -> LaurentT {
        self.map_exponents(|[a, b]| [a + b])
    }
}

impl<const N: usize> Ring for Laurent<N> {
    fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Laurent::monomial([0; N], q(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }
    fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c);
        }
    }
    fn neg(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = [0i32; N];
                for k in 0..N {
                    e[k] = ea[k] + eb[k];
                }
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }
    fn scale(&self, c: &Q) -> Self {
        if Zero::is_zero(c) {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let mut inv = [0i32; N];
        for k in 0..N {
            inv[k] = -e[k];
        }
        Some(Laurent::monomial(inv, c.recip()))
    }
    fn render(&self) -> String {
        match N {
            1 => self.render_with(&["t"]),
            2 => self.render_with(&["x", "y"]),
            _ => {
                let names: Vec<String> = (1..=N).map(|k| format!("x{k}")).collect();
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                self.render_with(&refs)
            }
        }
    }
}

impl<const N: usize> fmt::Debug for Laurent<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<const N: usize> fmt::Display for Laurent<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Dense univariate polynomial over `Q`, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn constant(c: Q) -> Self {
        UPoly::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(k: usize, c: Q) -> Self {
        let mut v = vec![q(0); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(|| q(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = q(0);
        UPoly::new((0..n).map(|k| self.0.get(k).unwrap_or(&zero) + other.0.get(k).unwrap_or(&zero)).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![q(0); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.0.clone();
        let mut quot = vec![q(0); self.0.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !Zero::is_zero(c))
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(q(0), |acc, c| acc * x + c)
    }

    fn render_var(&self, var: &str) -> String {
        let l: LaurentT = Laurent::from_terms(self.0.iter().enumerate().map(|(k, c)| ([k as i32], c.clone())));
        l.render_with(&[var])
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_var("t"))
    }
}

/// Univariate rational function over `Q` in reduced form: coprime
/// numerator and denominator, monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: UPoly::constant(q(1)) };
        }
        let g = UPoly::gcd(&num, &den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lead = d.leading().recip();
        n = n.scale(&lead);
        d = d.scale(&lead);
        RatFunc { num: n, den: d }
    }

    pub fn from_laurent(l: &LaurentT) -> Self {
        let Some(min) = l.min_degree() else {
            return RatFunc::zero();
        };
        let shift = (-min).max(0);
        let max = l.max_degree().unwrap();
        let mut coeffs = vec![q(0); (max + shift) as usize + 1];
        for ([e], c) in l.terms() {
            coeffs[(e + shift) as usize] = c.clone();
        }
        RatFunc::new(UPoly::new(coeffs), UPoly::monomial(shift as usize, q(1)))
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    /// The Laurent polynomial this function equals, if its reduced
    /// denominator is a power of the variable.
    pub fn to_laurent(&self) -> Option<LaurentT> {
        let d = self.den.degree()?;
        if self.den.coeffs()[..d].iter().any(|c| !Zero::is_zero(c)) {
            return None;
        }
        Some(Laurent::from_terms(self.num.coeffs().iter().enumerate().map(|(k, c)| ([k as i32 - d as i32], c.clone()))))
    }

    pub fn render_var(&self, var: &str) -> String {
        if let Some(l) = self.to_laurent() {
            return l.render_with(&[var]);
        }
        format!("({})/({})", self.num.render_var(var), self.den.render_var(var))
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc { num: UPoly::default(), den: UPoly::constant(q(1)) }
    }
    fn one() -> Self {
        RatFunc { num: UPoly::constant(q(1)), den: UPoly::constant(q(1)) }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn scale(&self, c: &Q) -> Self {
        if Zero::is_zero(c) {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()))
    }
    fn render(&self) -> String {
        self.render_var("t")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Multivariate polynomial over `Q` with a fixed number of variables;
/// exponent vectors are dense.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], &q(1));
        p
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(e, &q(1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(|| q(0))
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: &Q) {
        assert_eq!(exp.len(), self.nvars);
        if Zero::is_zero(c) {
            return;
        }
        let slot = self.terms.entry(exp.clone()).or_insert_with(|| q(0));
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), &(x * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    /// Drops every monomial of total degree above `d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() <= d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Swaps variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.add_term(e, c);
        }
        out
    }

    /// Power sum `x_1^i + ... + x_n^i`.
    pub fn power_sum(nvars: usize, i: u32) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for k in 0..nvars {
            let mut e = vec![0; nvars];
            e[k] = i;
            p.add_term(e, &q(1));
        }
        p
    }
}
