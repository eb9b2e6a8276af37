//! Truncated power series in `q` with exponents on a lattice `(1/D)·Z` and
//! coefficients in any [`Ring`], together with the generating functions
//! built from surface Betti and Hodge numbers.
//!
//! A series carries an absolute precision `order`: every coefficient with
//! exponent below `order` is known exactly and nothing at or above it is
//! stored. Products and quotients track precision the way Laurent series
//! arithmetic does, so dividing by a series of positive valuation (theta
//! functions) costs precision instead of silently producing garbage.

use std::collections::BTreeMap;

use num::integer::lcm;
use num::{BigInt, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{contract, Error, Result};
use crate::partitions::enumerate_partitions;
use crate::poly::{Laurent, LaurentT, LaurentXY, RatFunc, Ring};
use crate::rational::{binom, fmt_q, q, Q};

/// Precision marker for series that are exact (finite sums).
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, PartialEq)]
pub struct Series<C: Ring> {
    denom: u32,
    order: i64,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Ring> std::fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Series(D={}, order={}/{}, ", self.denom, self.order, self.denom)?;
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{}]q^{}/{}", c.render(), k, self.denom)?;
        }
        write!(f, ")")
    }
}

impl<C: Ring> Series<C> {
    /// The zero series known up to `q^{order/denom}`.
    pub fn zero(denom: u32, order: i64) -> Self {
        assert!(denom > 0, "lattice denominator must be positive");
        Series { denom, order, coeffs: BTreeMap::new() }
    }

    pub fn one(denom: u32, order: i64) -> Self {
        Self::monomial(denom, order, 0, C::one())
    }

    /// `c·q^{k/denom}` truncated at `order`.
    pub fn monomial(denom: u32, order: i64, k: i64, c: C) -> Self {
        let mut s = Self::zero(denom, order);
        s.add_coeff(k, &c);
        s
    }

    pub fn from_coeffs(denom: u32, order: i64, items: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut s = Self::zero(denom, order);
        for (k, c) in items {
            s.add_coeff(k, &c);
        }
        s
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// Precision numerator: coefficients of `q^{k/denom}` with `k < order`
    /// are known.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn order_q(&self) -> Q {
        Q::new(BigInt::from(self.order), BigInt::from(self.denom))
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, C> {
        &self.coeffs
    }

    /// Coefficient of `q^{k/denom}`.
    pub fn coeff(&self, k: i64) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `q^n` for integral `n`.
    pub fn coeff_int(&self, n: i64) -> C {
        self.coeff(n * self.denom as i64)
    }

    /// Smallest exponent numerator with a nonzero coefficient, or the order
    /// when the series is zero to its precision.
    pub fn valuation(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_coeff(&mut self, k: i64, c: &C) {
        if k >= self.order || c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(slot) => {
                slot.add_assign(c);
                if slot.is_zero() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, c.clone());
            }
        }
    }

    /// Drops everything at or above `order` (never raises precision).
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        Series { denom: self.denom, order, coeffs: self.coeffs.range(..order).map(|(k, c)| (*k, c.clone())).collect() }
    }

    /// Same series on the finer lattice `(1/new_denom)·Z`.
    pub fn rescale(&self, new_denom: u32) -> Self {
        assert!(new_denom % self.denom == 0, "lattice {new_denom} does not refine {}", self.denom);
        let f = (new_denom / self.denom) as i64;
        Series {
            denom: new_denom,
            order: self.order.saturating_mul(f).min(EXACT),
            coeffs: self.coeffs.iter().map(|(k, c)| (k * f, c.clone())).collect(),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.denom == other.denom {
            return (self.clone(), other.clone());
        }
        let d = lcm(self.denom, other.denom);
        (self.rescale(d), other.rescale(d))
    }

    /// Replaces `q` by `q^k`.
    pub fn substitute_q_power(&self, k: i64) -> Self {
        assert!(k > 0);
        Series {
            denom: self.denom,
            order: self.order.saturating_mul(k).min(EXACT),
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Multiplies by `q^{k/denom}`.
    pub fn shift(&self, k: i64) -> Self {
        Series {
            denom: self.denom,
            order: self.order.saturating_add(k).min(EXACT),
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::from_coeffs(self.denom, self.order, self.coeffs.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = a.truncate(b.order);
        for (k, c) in &b.coeffs {
            out.add_coeff(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let order = a.order.saturating_add(b.valuation()).min(b.order.saturating_add(a.valuation())).min(EXACT);
        let mut out = Self::zero(a.denom, order);
        for (ka, ca) in &a.coeffs {
            for (kb, cb) in &b.coeffs {
                let k = ka + kb;
                if k >= order {
                    break;
                }
                out.add_coeff(k, &ca.mul(cb));
            }
        }
        out
    }

    /// Multiplicative inverse as a Laurent series in `q`; the leading
    /// coefficient must be a unit of the coefficient ring.
    pub fn inverse(&self) -> Result<Self> {
        let Some((&v, lead)) = self.coeffs.iter().next() else {
            return Err(contract("cannot invert a series that vanishes to its precision"));
        };
        let lead_inv = lead
            .inverse()
            .ok_or_else(|| contract(format!("leading coefficient {} is not invertible", lead.render())))?;
        if self.order >= EXACT && self.coeffs.len() > 1 {
            return Err(contract("inverse of an exact polynomial needs an explicit precision; truncate first"));
        }
        let order = if self.order >= EXACT { EXACT } else { self.order - 2 * v };
        let mut g: BTreeMap<i64, C> = BTreeMap::new();
        if self.coeffs.len() == 1 {
            g.insert(-v, lead_inv);
            return Ok(Series { denom: self.denom, order, coeffs: g });
        }
        let tail: Vec<(i64, &C)> = self.coeffs.iter().skip(1).map(|(k, c)| (*k, c)).collect();
        for k in -v..order {
            let mut acc = if k == -v { C::one() } else { C::zero() };
            for &(j, fj) in &tail {
                let idx = k + v - j;
                if idx < -v {
                    break;
                }
                if let Some(gi) = g.get(&idx) {
                    acc = acc.sub(&fj.mul(gi));
                }
            }
            if !acc.is_zero() {
                g.insert(k, acc.mul(&lead_inv));
            }
        }
        Ok(Series { denom: self.denom, order, coeffs: g })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut result = Self::one(self.denom, EXACT);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// `exp(f)` for `f` with no constant or negative-exponent terms.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs.keys().any(|&k| k <= 0) {
            return Err(contract("exp needs a series with zero constant term and no negative exponents"));
        }
        if self.order >= EXACT {
            return Err(contract("exp needs a finite precision"));
        }
        let mut g: BTreeMap<i64, C> = BTreeMap::new();
        g.insert(0, C::one());
        for k in 1..self.order {
            let mut acc = C::zero();
            for (&j, fj) in self.coeffs.range(1..=k) {
                if let Some(gk) = g.get(&(k - j)) {
                    acc.add_assign(&fj.mul(gk).scale(&q(j)));
                }
            }
            if !acc.is_zero() {
                g.insert(k, acc.scale(&Q::new(1.into(), k.into())));
            }
        }
        Ok(Series { denom: self.denom, order: self.order, coeffs: g })
    }

    /// `log(f)` for `f = 1 + (positive exponents)`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs.keys().next().is_some_and(|&k| k < 0) || self.coeff(0) != C::one() {
            return Err(contract("log needs a series with constant term 1"));
        }
        if self.order >= EXACT {
            return Err(contract("log needs a finite precision"));
        }
        let mut g: BTreeMap<i64, C> = BTreeMap::new();
        for k in 1..self.order {
            let mut acc = self.coeff(k).scale(&q(k));
            for (&j, gj) in g.range(1..k) {
                let fk = self.coeff(k - j);
                if !fk.is_zero() {
                    acc = acc.sub(&gj.mul(&fk).scale(&q(j)));
                }
            }
            if !acc.is_zero() {
                g.insert(k, acc.scale(&Q::new(1.into(), k.into())));
            }
        }
        Ok(Series { denom: self.denom, order: self.order, coeffs: g })
    }

    /// Exponent numerators below `order` where the two series differ, after
    /// aligning lattices. Only exponents known in both are compared.
    pub fn mismatches(&self, other: &Self, order_q: Option<&Q>) -> Vec<(Q, C, C)> {
        let (a, b) = self.aligned(other);
        let mut limit = a.order.min(b.order);
        if let Some(oq) = order_q {
            let cap = (oq * Q::from_integer(BigInt::from(a.denom))).ceil().to_integer().to_i64().unwrap_or(EXACT);
            limit = limit.min(cap);
        }
        let keys: std::collections::BTreeSet<i64> =
            a.coeffs.range(..limit).map(|(k, _)| *k).chain(b.coeffs.range(..limit).map(|(k, _)| *k)).collect();
        keys.into_iter()
            .filter_map(|k| {
                let (x, y) = (a.coeff(k), b.coeff(k));
                (x != y).then(|| (Q::new(k.into(), a.denom.into()), x, y))
            })
            .collect()
    }

    /// Coefficientwise equality on all exponents below `order_q` (which must
    /// be within both precisions).
    pub fn agrees_to(&self, other: &Self, order_q: &Q) -> bool {
        let (a, b) = self.aligned(other);
        let need = (order_q * Q::from_integer(BigInt::from(a.denom))).ceil().to_integer().to_i64().unwrap_or(EXACT);
        need <= a.order && need <= b.order && self.mismatches(other, Some(order_q)).is_empty()
    }

    /// JSON document `{"D", "order", "coeffs": [{"q_num", "value"}]}`.
    pub fn to_json_with(&self, render: impl Fn(&C) -> String) -> Value {
        let order = if self.order >= EXACT { "inf".to_string() } else { fmt_q(&self.order_q()) };
        json!({
            "D": self.denom,
            "order": order,
            "coeffs": self.coeffs.iter().map(|(k, c)| json!({"q_num": k, "value": render(c)})).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> Value {
        self.to_json_with(|c| c.render())
    }
}

impl Series<RatFunc> {
    /// Converts every coefficient to a Laurent polynomial, or reports the
    /// first exponent where that fails.
    pub fn to_laurent(&self) -> Result<Series<LaurentT>> {
        let mut out = Series::zero(self.denom, self.order);
        for (k, c) in &self.coeffs {
            let l = c.to_laurent().ok_or_else(|| {
                Error::Consistency(format!("coefficient of q^({k}/{}) is not a Laurent polynomial: {}", self.denom, c.render()))
            })?;
            out.add_coeff(*k, &l);
        }
        Ok(out)
    }
}

impl Series<LaurentT> {
    pub fn to_ratfunc(&self) -> Series<RatFunc> {
        self.map_coeffs(RatFunc::from_laurent)
    }

    /// Every coefficient evaluated at `t = 1`.
    pub fn at_t_one(&self) -> Series<Q> {
        self.map_coeffs(|c| c.at_one())
    }
}

/// `(1 + c·q^{l/D})^e` for any integer `e`, expanded to `order`.
pub fn binomial_factor<C: Ring>(c: &C, denom: u32, l: i64, e: i64, order: i64) -> Series<C> {
    assert!(l > 0);
    let mut s = Series::zero(denom, order);
    let mut power = C::one();
    let mut k = 0i64;
    while k * l < order {
        let b = binom(e, k as u64);
        if Zero::is_zero(&b) {
            break;
        }
        s.add_coeff(k * l, &power.scale(&b));
        power = power.mul(c);
        k += 1;
    }
    s
}

/// Betti numbers `b_0..b_4` of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceBetti(pub [u32; 5]);

impl SurfaceBetti {
    pub const P2: SurfaceBetti = SurfaceBetti([1, 0, 1, 0, 1]);
    pub const K3: SurfaceBetti = SurfaceBetti([1, 0, 22, 0, 1]);
    pub const ABELIAN: SurfaceBetti = SurfaceBetti([1, 4, 6, 4, 1]);

    /// Checks Poincaré duality `b0 = b4`, `b1 = b3`.
    pub fn new(b: [u32; 5]) -> Result<Self> {
        if b[0] != b[4] {
            return Err(Error::Invalid(format!("b0 = {} differs from b4 = {}", b[0], b[4])));
        }
        if b[1] != b[3] {
            return Err(Error::Invalid(format!("b1 = {} differs from b3 = {}", b[1], b[3])));
        }
        Ok(SurfaceBetti(b))
    }

    pub fn euler(&self) -> i64 {
        let b = self.0.map(|x| x as i64);
        b[0] - b[1] + b[2] - b[3] + b[4]
    }
}

/// Hodge numbers `h^{p,q}` for `p, q ∈ {0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeTable(pub [[u32; 3]; 3]);

impl HodgeTable {
    pub const P2: HodgeTable = HodgeTable([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    pub const K3: HodgeTable = HodgeTable([[1, 0, 1], [0, 20, 0], [1, 0, 1]]);
    pub const ABELIAN: HodgeTable = HodgeTable([[1, 2, 1], [2, 4, 2], [1, 2, 1]]);

    /// Checks `h^{p,q} = h^{q,p}` and that the row sums satisfy Poincaré duality.
    pub fn new(h: [[u32; 3]; 3]) -> Result<Self> {
        for p in 0..3 {
            for qq in 0..3 {
                if h[p][qq] != h[qq][p] {
                    return Err(Error::Invalid(format!("h[{p}][{qq}] = {} differs from h[{qq}][{p}] = {}", h[p][qq], h[qq][p])));
                }
            }
        }
        let t = HodgeTable(h);
        SurfaceBetti::new(t.betti().0)?;
        Ok(t)
    }

    /// `b_i = Σ_{p+q=i} h^{p,q}`.
    pub fn betti(&self) -> SurfaceBetti {
        let mut b = [0u32; 5];
        for p in 0..3 {
            for qq in 0..3 {
                b[p + qq] += self.0[p][qq];
            }
        }
        SurfaceBetti(b)
    }
}

fn t_mono(e: i32, c: i64) -> LaurentT {
    Laurent::monomial([e], q(c))
}

/// The five per-`l` factors of the Göttsche product: for Betti index `i`
/// the factor is `(1 - (-1)^i t^{i-2} q^l)^{-(-1)^i b_i}`.
fn betti_factors(b: &SurfaceBetti, l: i64, order: i64) -> Series<LaurentT> {
    let mut acc = Series::one(1, order);
    for (i, &bi) in b.0.iter().enumerate() {
        if bi == 0 {
            continue;
        }
        let sign = if i % 2 == 0 { -1 } else { 1 };
        let c = t_mono(i as i32 - 2, sign);
        acc = acc.mul(&binomial_factor(&c, 1, l, sign * bi as i64, order));
    }
    acc
}

/// `Π_{l≥1} (1+t^{-1}q^l)^{b1}(1+tq^l)^{b3} / [(1-t^{-2}q^l)^{b0}(1-q^l)^{b2}(1-t^2q^l)^{b4}]`
/// to `q^order` (exclusive), the generating function of shifted Poincaré
/// polynomials of Hilbert schemes of points.
pub fn goettsche_product(b: &SurfaceBetti, order: u32) -> Series<LaurentT> {
    let order = order as i64;
    (1..order).fold(Series::one(1, order), |acc, l| acc.mul(&betti_factors(b, l, order)))
}

/// `Σ_m a_m(t) q^m`, shifted Poincaré polynomials of the symmetric powers.
pub fn macdonald_sym_power(b: &SurfaceBetti, order: u32) -> Series<LaurentT> {
    betti_factors(b, 1, order as i64)
}

/// `Σ_{s, μ ⊢ s} q^s Π_i a_{m_i(μ)}(t)`, assembled partition by partition.
pub fn strata_sum(b: &SurfaceBetti, order: u32) -> Series<LaurentT> {
    let a = macdonald_sym_power(b, order);
    let mut out = Series::zero(1, order as i64);
    for s in 0..order {
        for mu in enumerate_partitions(s) {
            let term = mu
                .multiplicities()
                .iter()
                .skip(1)
                .fold(LaurentT::one(), |acc, &m| acc.mul(&a.coeff(m as i64)));
            out.add_coeff(s as i64, &term);
        }
    }
    out
}

/// `Π_{l≥1} Π_{i,j=-1}^{1} (1 + (-1)^{i+j+1} x^i y^j q^l)^{(-1)^{i+j+1} h^{i+1,j+1}}`.
pub fn hodge_product(h: &HodgeTable, order: u32) -> Series<LaurentXY> {
    let order = order as i64;
    let mut acc = Series::one(1, order);
    for l in 1..order {
        for i in -1i32..=1 {
            for j in -1i32..=1 {
                let hij = h.0[(i + 1) as usize][(j + 1) as usize] as i64;
                if hij == 0 {
                    continue;
                }
                let sign = if (i + j + 1).rem_euclid(2) == 0 { 1 } else { -1 };
                let c = Laurent::monomial([i, j], q(sign));
                acc = acc.mul(&binomial_factor(&c, 1, l, sign * hij, order));
            }
        }
    }
    acc
}

/// Lattice denominator used by theta series.
pub const THETA_DENOM: u32 = 8;

fn order_to_num(order: &Q, denom: u32) -> i64 {
    (order * Q::from_integer(BigInt::from(denom))).ceil().to_integer().to_i64().expect("order out of range")
}

/// `θ_{μ,ν} = Σ_n (-1)^{nν} q^{(n+μ/2)^2/2} t^{n+μ/2}` on the `q^{1/8}`
/// lattice, with coefficients in `u` where `t = u^2`.
pub fn theta(mu: u8, nu: u8, order: &Q) -> Result<Series<RatFunc>> {
    Ok(theta_laurent(mu, nu, order)?.to_ratfunc())
}

fn theta_laurent(mu: u8, nu: u8, order: &Q) -> Result<Series<LaurentT>> {
    if mu > 1 || nu > 1 {
        return Err(contract("theta characteristics must be 0 or 1"));
    }
    let order_num = order_to_num(order, THETA_DENOM);
    let mut s = Series::zero(THETA_DENOM, order_num);
    let mut n = 0i64;
    loop {
        let mut any = false;
        for m in [n, -n - 1] {
            // 2n + μ is the u-exponent; the q-exponent is (2n+μ)^2 / 8.
            let e = 2 * m + mu as i64;
            let qe = e * e;
            if qe < order_num {
                any = true;
                let sign = if nu == 1 && m.rem_euclid(2) == 1 { -1 } else { 1 };
                s.add_coeff(qe, &t_mono(e as i32, sign));
            }
        }
        if !any {
            break;
        }
        n += 1;
    }
    Ok(s)
}

/// Product form `q^{1/8}(u - u^{-1}) Π_l (1-u^{-2}q^l)(1-q^l)(1-u^2q^l)` of
/// `θ_{1,1}`, again with `t = u^2`.
pub fn theta11_product(order: &Q) -> Series<RatFunc> {
    let order_num = order_to_num(order, THETA_DENOM);
    // The product itself is needed to order - 1/8.
    let inner_order = order_num - 1;
    let mut prod = Series::one(THETA_DENOM, inner_order);
    for l in 1..=(inner_order / THETA_DENOM as i64 + 1) {
        for e in [-2, 0, 2] {
            prod = prod.mul(&binomial_factor(&t_mono(e, -1), THETA_DENOM, l * THETA_DENOM as i64, 1, inner_order));
        }
    }
    let pref = Series::from_coeffs(THETA_DENOM, EXACT, [(1, LaurentT::from_ints(&[(1, 1), (-1, -1)]))]);
    prod.mul(&pref).to_ratfunc()
}

/// Numerator `Σ_b t^{-2b} q^{b^2} / (1 - t^4 q^{2b-1})` of Yoshioka's
/// formula. For `b ≤ 0` the factor is rewritten as
/// `-t^{-4} q^{1-2b} / (1 - t^{-4} q^{1-2b})` so every expansion runs in
/// positive powers of `q`.
pub fn yoshioka_numerator(order: u32) -> Series<LaurentT> {
    let order = order as i64;
    let mut s = Series::zero(1, order);
    let mut b = 1i64;
    while b * b < order {
        let mut k = 0i64;
        while b * b + (2 * b - 1) * k < order {
            s.add_coeff(b * b + (2 * b - 1) * k, &t_mono((-2 * b + 4 * k) as i32, 1));
            k += 1;
        }
        b += 1;
    }
    let mut b = 0i64;
    while (1 - b) * (1 - b) < order {
        let mut k = 1i64;
        while b * b + (1 - 2 * b) * k < order {
            s.add_coeff(b * b + (1 - 2 * b) * k, &t_mono((-2 * b - 4 * k) as i32, -1));
            k += 1;
        }
        b -= 1;
    }
    s
}

/// `Σ_n t^{-2n} q^{n^2}`.
fn theta_denominator(order: i64) -> Series<LaurentT> {
    let mut s = Series::zero(1, order);
    let mut n = 0i64;
    while n * n < order {
        s.add_coeff(n * n, &t_mono(-2 * n as i32, 1));
        if n > 0 {
            s.add_coeff(n * n, &t_mono(2 * n as i32, 1));
        }
        n += 1;
    }
    s
}

fn p2_eta_cubed(order: i64) -> Series<LaurentT> {
    // Π_l (1 - t^{-2}q^l)(1 - q^l)(1 - t^2 q^l)
    let mut acc = Series::one(1, order);
    for l in 1..order {
        for e in [-2, 0, 2] {
            acc = acc.mul(&binomial_factor(&t_mono(e, -1), 1, l, 1, order));
        }
    }
    acc
}

/// `1 / (t^4 (t^2 - 1))` as a constant series.
fn yoshioka_constant() -> RatFunc {
    RatFunc::from_laurent(&LaurentT::from_ints(&[(6, 1), (4, -1)])).inverse().expect("nonzero")
}

/// Yoshioka's generating function for rank 2 sheaves on `P²` with
/// `c_1 = H`, expanded in the field of rational functions in `t`.
///
/// Each coefficient must reduce to a Laurent polynomial; a failure is an
/// internal consistency error.
pub fn yoshioka_series(order: u32) -> Result<Series<RatFunc>> {
    let o = order as i64;
    let num = yoshioka_numerator(order).to_ratfunc();
    let den = theta_denominator(o).to_ratfunc();
    let eta = p2_eta_cubed(o).to_ratfunc();
    let out = num
        .div(&den)?
        .div(&eta.mul(&eta))?
        .scale(&yoshioka_constant())
        .truncate(o);
    out.to_laurent()?;
    Ok(out)
}

/// `θ_{0,0}(2τ, 2z)` and `θ_{1,1}(τ, 2z)` in the variable `t`.
///
/// Doubling `z` turns `u = t^{1/2}` into `t`, so the theta series in `u`
/// can be read directly as series in `t`.
fn doubled_thetas(order: i64) -> Result<(Series<RatFunc>, Series<RatFunc>)> {
    let ord = q(order + 1);
    let th00 = theta(0, 0, &ord)?.substitute_q_power(2);
    let th11 = theta(1, 1, &ord)?;
    Ok((th00, th11))
}

/// The theta-function form
/// `Σ_b t^{-2b}q^{b^2}/(1-t^4q^{2b-1}) · q^{1/4}(t - t^{-1}) / [t^5 θ_{0,0}(2τ,2z) θ_{1,1}(τ,2z)^2]`.
pub fn yoshioka_theta_form(order: u32) -> Result<Series<RatFunc>> {
    let o = order as i64;
    let (th00, th11) = doubled_thetas(o)?;
    let num = yoshioka_numerator(order).to_ratfunc().rescale(THETA_DENOM);
    let pref = Series::monomial(THETA_DENOM, EXACT, 2, RatFunc::from_laurent(&LaurentT::from_ints(&[(1, 1), (-1, -1)])));
    let t5 = RatFunc::from_laurent(&t_mono(5, 1));
    let den = th00.mul(&th11).mul(&th11).scale(&t5);
    Ok(num.mul(&pref).div(&den)?.truncate(o * THETA_DENOM as i64))
}

/// Intersection-cohomology series of the Uhlenbeck spaces: Yoshioka's series
/// divided by the Göttsche product of `P²`.
pub fn uhlenbeck_series_p2(order: u32) -> Result<Series<RatFunc>> {
    let y = yoshioka_series(order)?;
    let g = goettsche_product(&SurfaceBetti::P2, order).to_ratfunc();
    if g.coeff(0).is_zero() {
        return Err(contract("Göttsche product has vanishing constant term"));
    }
    y.div(&g)
}

/// `Σ_b t^{-2b}q^{b^2}/(1-t^4q^{2b-1}) · q^{1/8} / [t^5 θ_{0,0}(2τ,2z) θ_{1,1}(τ,2z)]`.
pub fn uhlenbeck_theta_form(order: u32) -> Result<Series<RatFunc>> {
    let o = order as i64;
    let (th00, th11) = doubled_thetas(o)?;
    let num = yoshioka_numerator(order).to_ratfunc().rescale(THETA_DENOM);
    let pref = Series::monomial(THETA_DENOM, EXACT, 1, RatFunc::one());
    let t5 = RatFunc::from_laurent(&t_mono(5, 1));
    let den = th00.mul(&th11).scale(&t5);
    Ok(num.mul(&pref).div(&den)?.truncate(o * THETA_DENOM as i64))
}

/// Common center of symmetry of the nonzero coefficients, as a `t`-exponent.
///
/// `None` when some coefficient is not palindromic or the centers differ.
/// A nonzero common center in a series expected to be Poincaré-symmetric
/// about `t^0` is a global normalization factor.
pub fn palindromic_center(s: &Series<LaurentT>) -> Option<Q> {
    let mut center: Option<i32> = None;
    for c in s.coeffs().values() {
        let c2 = c.min_degree()? + c.max_degree()?;
        if c.terms().iter().any(|(&[e], x)| c.coeff([c2 - e]) != *x) {
            return None;
        }
        match center {
            None => center = Some(c2),
            Some(prev) if prev != c2 => return None,
            _ => {}
        }
    }
    center.map(|c2| Q::new(BigInt::from(c2), BigInt::from(2)))
}

/// `Π_{l≥1} (1 - q^l)^{-e}`, with rational coefficients.
pub fn eta_power(e: i64, order: u32) -> Series<Q> {
    let order = order as i64;
    (1..order).fold(Series::one(1, order), |acc, l| acc.mul(&binomial_factor(&q(-1), 1, l, -e, order)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn lt(items: &[(i32, i64)]) -> LaurentT {
        LaurentT::from_ints(items)
    }

    #[test]
    fn inverse_and_division_roundtrip() {
        let f = Series::from_coeffs(1, 6, [(0, q(1)), (1, q(-1))]);
        let g = f.inverse().unwrap();
        for k in 0..6 {
            assert_eq!(g.coeff(k), q(1));
        }
        assert_eq!(f.mul(&g), Series::one(1, 6));
    }

    #[test]
    fn inverse_with_positive_valuation_loses_precision() {
        // q^2 (1 - q) known to q^6
        let f = Series::from_coeffs(1, 6, [(2, q(1)), (3, q(-1))]);
        let g = f.inverse().unwrap();
        assert_eq!(g.valuation(), -2);
        assert_eq!(g.order(), 2);
        let back = f.mul(&g);
        assert_eq!(back.order(), 4);
        assert_eq!(back.coeffs().len(), 1);
        assert_eq!(back.coeff(0), q(1));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f: Series<Q> = Series::zero(1, 4);
        assert!(f.inverse().is_err());
        let g = Series::from_coeffs(1, 4, [(0, lt(&[(-1, 1), (1, 1)]))]);
        assert!(g.inverse().is_err());
    }

    #[test]
    fn exp_log_small() {
        // log(1/(1-q)) = Σ q^k / k
        let f = Series::from_coeffs(1, 7, [(0, q(1)), (1, q(-1))]).inverse().unwrap();
        let l = f.log().unwrap();
        for k in 1..7 {
            assert_eq!(l.coeff(k), qf(1, k));
        }
        assert_eq!(l.exp().unwrap(), f);
    }

    #[test]
    fn mixed_lattices_rescale() {
        let a = Series::from_coeffs(2, 8, [(1, q(1))]);
        let b = Series::from_coeffs(3, 12, [(1, q(1))]);
        let c = a.mul(&b);
        assert_eq!(c.denom(), 6);
        assert_eq!(c.coeff(5), q(1));
    }

    #[test]
    fn goettsche_p2_low_terms() {
        let g = goettsche_product(&SurfaceBetti::P2, 4);
        assert_eq!(g.coeff(0), LaurentT::one());
        assert_eq!(g.coeff(1), lt(&[(-2, 1), (0, 1), (2, 1)]));
        assert_eq!(g.coeff(2), lt(&[(-4, 1), (-2, 2), (0, 3), (2, 2), (4, 1)]));
        assert_eq!(g.coeff(2).at_one(), q(9));
    }

    #[test]
    fn macdonald_p2_low_terms() {
        let m = macdonald_sym_power(&SurfaceBetti::P2, 4);
        assert_eq!(m.coeff(0), LaurentT::one());
        assert_eq!(m.coeff(1), lt(&[(-2, 1), (0, 1), (2, 1)]));
        assert_eq!(m.coeff(2), lt(&[(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)]));
    }

    #[test]
    fn strata_sum_low_terms() {
        let b = SurfaceBetti::P2;
        let s = strata_sum(&b, 5);
        assert_eq!(s.coeff(0), LaurentT::one());
        assert_eq!(s.coeff(1), macdonald_sym_power(&b, 5).coeff(1));
        assert_eq!(s, goettsche_product(&b, 5));
    }

    #[test]
    fn hodge_p2_q1() {
        let h = hodge_product(&HodgeTable::P2, 3);
        assert_eq!(h.coeff(0), LaurentXY::one());
        let expected = LaurentXY::from_terms([([-1, -1], q(1)), ([0, 0], q(1)), ([1, 1], q(1))]);
        assert_eq!(h.coeff(1), expected);
    }

    #[test]
    fn betti_validation() {
        assert!(SurfaceBetti::new([1, 0, 0, 0, 1]).is_ok());
        assert!(SurfaceBetti::new([1, 0, 1, 0, 2]).is_err());
        assert!(SurfaceBetti::new([1, 1, 1, 0, 1]).is_err());
        assert!(HodgeTable::new([[1, 0, 0], [1, 1, 0], [0, 0, 1]]).is_err());
        assert_eq!(HodgeTable::K3.betti(), SurfaceBetti::K3);
        assert_eq!(HodgeTable::ABELIAN.betti(), SurfaceBetti::ABELIAN);
    }

    #[test]
    fn theta_low_terms() {
        let th00 = theta(0, 0, &q(2)).unwrap();
        assert_eq!(th00.coeff(0), RatFunc::one());
        let th11 = theta(1, 1, &qf(9, 8)).unwrap();
        assert_eq!(th11.valuation(), 1);
        assert_eq!(th11.coeff(1).to_laurent().unwrap(), lt(&[(1, 1), (-1, -1)]));
        assert!(theta(2, 0, &q(1)).is_err());
    }

    #[test]
    fn theta11_sum_equals_product() {
        let order = q(4) + qf(1, 8);
        let sum = theta(1, 1, &order).unwrap();
        let prod = theta11_product(&order);
        assert!(sum.agrees_to(&prod, &order), "{:?}", sum.mismatches(&prod, Some(&order)));
    }

    #[test]
    fn yoshioka_vanishing_constant_and_point() {
        let y = yoshioka_series(3).unwrap().to_laurent().unwrap();
        assert!(y.coeff(0).is_zero());
        assert_eq!(y.coeff(1), lt(&[(-8, 1)]));
    }

    #[test]
    fn eta_power_24() {
        // 1/η^24 without the q^{-1}: 1, 24, 324, 3200, 25650
        let e = eta_power(24, 5);
        let got: Vec<Q> = (0..5).map(|k| e.coeff(k)).collect();
        assert_eq!(got, vec![q(1), q(24), q(324), q(3200), q(25650)]);
    }

    #[test]
    fn json_shape() {
        let s = Series::from_coeffs(8, 33, [(1, lt(&[(1, 1), (-1, -1)]))]);
        let j = s.to_json();
        assert_eq!(j["D"], 8);
        assert_eq!(j["order"], "33/8");
        assert_eq!(j["coeffs"][0]["q_num"], 1);
        assert_eq!(j["coeffs"][0]["value"], "-t^-1 + t");
    }
}
