//! Schubert calculus on the Grassmannian of `n`-dimensional quotients of an
//! `r`-dimensional space, and the excess intersection Chern-class chain.
//!
//! Classes are integer combinations of Schur classes `s_λ` with `λ` in the
//! `n × (r-n)` box. Structure constants come from multiplying polynomials in
//! `n` variables: `s_λ · a_{μ+δ} = Σ_ν c^ν_{λμ} a_{ν+δ}`, so `c^ν_{λμ}` is
//! the coefficient of `x^{ν+δ}`. Convention: `c_j(Q) = s_{(1^j)}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, One, Signed, Zero};

use crate::error::{contract, Result};
use crate::par::{self, Mode};
use crate::partitions::{enumerate_partitions, Partition};
use crate::poly::MultiPoly;
use crate::rational::{binom_u, q, Q};
use crate::series::Series;

/// Multiplication table of `H*(Gr)` in the Schur basis.
#[derive(Debug)]
pub struct BoxRing {
    r: u32,
    n: u32,
    basis: Vec<Partition>,
    index: HashMap<Partition, usize>,
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

/// Semistandard tableaux of shape `λ` with entries `< nvars`, as monomials.
pub fn schur_polynomial(lambda: &Partition, nvars: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    if lambda.len() > nvars {
        return out;
    }
    let shape = lambda.parts().to_vec();
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(i, &w)| (0..w as usize).map(move |j| (i, j))).collect();
    let mut fill: Vec<Vec<usize>> = shape.iter().map(|&w| vec![0; w as usize]).collect();
    fn rec(k: usize, cells: &[(usize, usize)], fill: &mut Vec<Vec<usize>>, nvars: usize, out: &mut MultiPoly) {
        if k == cells.len() {
            let mut exp = vec![0u32; nvars];
            for row in fill.iter() {
                for &v in row {
                    exp[v] += 1;
                }
            }
            out.add_term(exp, &q(1));
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { fill[i][j - 1] } else { 0 };
        let lo_col = if i > 0 { fill[i - 1][j] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..nvars {
            fill[i][j] = v;
            rec(k + 1, cells, fill, nvars, out);
        }
    }
    rec(0, &cells, &mut fill, nvars, &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        // insert n-1 at position k; moving it from the end past n-1-k entries
        for k in 0..n {
            let mut v = p.clone();
            v.insert(k, n - 1);
            out.push((v, odd ^ ((n - 1 - k) % 2 == 1)));
        }
    }
    out
}

/// `a_{μ+δ} = Σ_σ sgn(σ) x^{σ(μ+δ)}` in `nvars` variables.
fn alternant(mu: &Partition, nvars: usize) -> MultiPoly {
    let exps: Vec<u32> = (0..nvars).map(|k| mu.part(k) + (nvars - 1 - k) as u32).collect();
    let mut out = MultiPoly::zero(nvars);
    for (perm, odd) in permutations(nvars) {
        let mut e = vec![0u32; nvars];
        for (k, &p) in perm.iter().enumerate() {
            e[p] = exps[k];
        }
        out.add_term(e, &q(if odd { -1 } else { 1 }));
    }
    out
}

/// Partitions in the `rows × width` box, by weight then reverse lex.
pub fn box_partitions(rows: u32, width: u32) -> Vec<Partition> {
    (0..=rows * width).flat_map(enumerate_partitions).filter(|p| p.fits_box(rows, width)).collect()
}

impl BoxRing {
    fn build(r: u32, n: u32, mode: Mode) -> Self {
        let width = r - n;
        let basis = box_partitions(n, width);
        let index: HashMap<Partition, usize> = basis.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        let nv = n as usize;
        let schurs: Vec<MultiPoly> = basis.iter().map(|l| schur_polynomial(l, nv)).collect();
        let alts: Vec<MultiPoly> = basis.iter().map(|m| alternant(m, nv)).collect();
        let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|a| (0..basis.len()).map(move |b| (a, b))).collect();
        let entries = par::map(mode, &pairs, |&(a, b)| {
            let prod = schurs[a].mul(&alts[b]);
            let mut row = Vec::new();
            for (exp, c) in prod.terms() {
                if exp.windows(2).any(|w| w[0] <= w[1]) {
                    continue;
                }
                let nu: Vec<u32> = exp.iter().enumerate().map(|(k, &e)| e - (nv - 1 - k) as u32).collect();
                let nu = Partition::new(nu);
                if let Some(&k) = index.get(&nu) {
                    let v = c.to_integer();
                    row.push((k, i64::try_from(v).expect("structure constant fits in i64")));
                }
            }
            row.sort();
            row
        });
        let mut table = vec![vec![Vec::new(); basis.len()]; basis.len()];
        for ((a, b), row) in pairs.into_iter().zip(entries) {
            table[a][b] = row;
        }
        BoxRing { r, n, basis, index, table }
    }

    /// Shared table for `Gr(r, n)`, built on first use.
    pub fn get(r: u32, n: u32) -> Result<Arc<BoxRing>> {
        if n > r {
            return Err(contract(format!("no {n}-dimensional quotients of a {r}-dimensional space")));
        }
        static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<BoxRing>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().expect("cache lock").get(&(r, n)) {
            return Ok(t.clone());
        }
        let built = Arc::new(BoxRing::build(r, n, Mode::Sequential));
        Ok(cache.lock().expect("cache lock").entry((r, n)).or_insert(built).clone())
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn dim(&self) -> u32 {
        self.n * (self.r - self.n)
    }

    /// `c^ν_{λμ}` for `ν` in the box.
    pub fn structure_constant(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> i64 {
        let (Some(&a), Some(&b), Some(&c)) = (self.index.get(lambda), self.index.get(mu), self.index.get(nu)) else {
            return 0;
        };
        self.table[a][b].iter().find(|(k, _)| *k == c).map(|(_, v)| *v).unwrap_or(0)
    }
}

/// An integer combination of Schur classes on `Gr(r, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxClass {
    r: u32,
    n: u32,
    terms: BTreeMap<Partition, BigInt>,
}

impl fmt::Display for BoxClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if a.is_one() && !p.is_empty() {
                write!(f, "s{p}")?;
            } else if p.is_empty() {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a} s{p}")?;
            }
        }
        Ok(())
    }
}

impl BoxClass {
    pub fn zero(r: u32, n: u32) -> Self {
        assert!(n <= r, "quotient dimension exceeds the ambient dimension");
        BoxClass { r, n, terms: BTreeMap::new() }
    }

    pub fn one(r: u32, n: u32) -> Self {
        Self::schur(r, n, Partition::empty())
    }

    /// `s_λ`, or zero when `λ` leaves the box.
    pub fn schur(r: u32, n: u32, lambda: Partition) -> Self {
        let mut c = Self::zero(r, n);
        c.add_term(lambda, &BigInt::one());
        c
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, lambda: Partition, c: &BigInt) {
        if c.is_zero() || !lambda.fits_box(self.n, self.r - self.n) {
            return;
        }
        let slot = self.terms.entry(lambda.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if (self.r, self.n) != (other.r, other.n) {
            return Err(contract(format!(
                "classes live on different Grassmannians: ({}, {}) and ({}, {})",
                self.r, self.n, other.r, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.r, self.n);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), &(x * c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Degree-`d` part.
    pub fn graded(&self, d: u32) -> Self {
        let mut out = Self::zero(self.r, self.n);
        for (p, c) in &self.terms {
            if p.weight() == d {
                out.add_term(p.clone(), c);
            }
        }
        out
    }

    /// Coefficient of the full-box class.
    pub fn integrate(&self) -> BigInt {
        self.coeff(&Partition::rectangle(self.n, self.r - self.n))
    }
}

/// Product in `H*(Gr)`.
pub fn schur_mult(a: &BoxClass, b: &BoxClass) -> Result<BoxClass> {
    a.check_same(b)?;
    let ring = BoxRing::get(a.r, a.n)?;
    let mut out = BoxClass::zero(a.r, a.n);
    for (la, ca) in &a.terms {
        let ia = ring.index[la];
        for (lb, cb) in &b.terms {
            let ib = ring.index[lb];
            let prod = ca * cb;
            for (k, v) in &ring.table[ia][ib] {
                out.add_term(ring.basis[*k].clone(), &(&prod * BigInt::from(*v)));
            }
        }
    }
    Ok(out)
}

/// Total Chern class of a bundle of the given rank on `Gr(r, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernVector {
    pub rank: u32,
    pub total: BoxClass,
}

impl ChernVector {
    pub fn trivial(r: u32, n: u32, rank: u32) -> Self {
        ChernVector { rank, total: BoxClass::one(r, n) }
    }

    /// `c_j`.
    pub fn c(&self, j: u32) -> BoxClass {
        self.total.graded(j)
    }

    /// `c_0, ..., c_D` with `D` the dimension of the Grassmannian.
    pub fn classes(&self) -> Vec<BoxClass> {
        let d = self.total.n * (self.total.r - self.total.n);
        (0..=d).map(|j| self.c(j)).collect()
    }

    pub fn top(&self) -> BoxClass {
        self.c(self.rank)
    }

    /// `c(E*)`: `c_j ↦ (-1)^j c_j`.
    pub fn dual(&self) -> Self {
        let mut total = BoxClass::zero(self.total.r, self.total.n);
        for (p, c) in &self.total.terms {
            let c = if p.weight() % 2 == 1 { -c } else { c.clone() };
            total.add_term(p.clone(), &c);
        }
        ChernVector { rank: self.rank, total }
    }

    /// Whitney sum.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(ChernVector { rank: self.rank + other.rank, total: schur_mult(&self.total, &other.total)? })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let (r, n) = (self.total.r, self.total.n);
        (0..e).try_fold(ChernVector::trivial(r, n, 0), |acc, _| acc.mul(self))
    }

    /// Inverse total class, `1 / (1 + x) = Σ (-x)^k`; the rank is the
    /// virtual rank `-rank` clamped to zero and must be set by the caller
    /// when the inverse is an honest bundle.
    pub fn inverse_total(&self) -> Result<BoxClass> {
        let (r, n) = (self.total.r, self.total.n);
        if self.total.coeff(&Partition::empty()) != BigInt::one() {
            return Err(contract("total Chern class must start with 1"));
        }
        let x = self.total.sub(&BoxClass::one(r, n))?;
        let neg_x = x.neg();
        let mut out = BoxClass::one(r, n);
        let mut power = BoxClass::one(r, n);
        for _ in 0..n * (r - n) {
            power = schur_mult(&power, &neg_x)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// `c(self) / c(other)` as a total class.
    pub fn div_total(&self, other: &Self) -> Result<BoxClass> {
        schur_mult(&self.total, &other.inverse_total()?)
    }
}

/// `c(Q) = Σ_{j ≤ n} s_{(1^j)}`.
pub fn chern_q(r: u32, n: u32) -> Result<ChernVector> {
    if n > r {
        return Err(contract(format!("no {n}-dimensional quotients of a {r}-dimensional space")));
    }
    let mut total = BoxClass::zero(r, n);
    for j in 0..=n {
        total.add_term(Partition::column(j), &BigInt::one());
    }
    Ok(ChernVector { rank: n, total })
}

/// `c(S) = c(Q)^{-1}` for the rank `r - n` subbundle.
pub fn chern_s(r: u32, n: u32) -> Result<ChernVector> {
    let cq = chern_q(r, n)?;
    Ok(ChernVector { rank: r - n, total: cq.inverse_total()? })
}

/// Elementary symmetric polynomial `e_k` in the variables `vars`.
fn elementary_in(nvars: usize, vars: &[usize], k: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    fn rec(nvars: usize, vars: &[usize], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut MultiPoly) {
        if k == 0 {
            out.add_term(cur.clone(), &q(1));
            return;
        }
        for p in start..vars.len() {
            cur[vars[p]] += 1;
            rec(nvars, vars, k - 1, p + 1, cur, out);
            cur[vars[p]] -= 1;
        }
    }
    rec(nvars, vars, k, 0, &mut vec![0; nvars], &mut out);
    out
}

/// Writes a polynomial symmetric in `x_0..x_{a-1}` and separately in
/// `x_a..x_{a+b-1}` as a polynomial in the two sets of elementary symmetric
/// functions. Keys are `(powers of e_1..e_a, powers of e_1..e_b)`.
fn to_elementary(mut p: MultiPoly, a: usize, b: usize) -> Result<BTreeMap<(Vec<u32>, Vec<u32>), Q>> {
    let nv = a + b;
    let xs: Vec<usize> = (0..a).collect();
    let ys: Vec<usize> = (a..nv).collect();
    let ex: Vec<MultiPoly> = (0..=a).map(|k| elementary_in(nv, &xs, k)).collect();
    let ey: Vec<MultiPoly> = (0..=b).map(|k| elementary_in(nv, &ys, k)).collect();
    let mut out = BTreeMap::new();
    while let Some((lead, c)) = p.terms().iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let (alpha, beta) = lead.split_at(a);
        if alpha.windows(2).any(|w| w[0] < w[1]) || beta.windows(2).any(|w| w[0] < w[1]) {
            return Err(crate::Error::Consistency("splitting-principle polynomial is not symmetric".into()));
        }
        let px: Vec<u32> = (0..a).map(|k| alpha[k] - if k + 1 < a { alpha[k + 1] } else { 0 }).collect();
        let py: Vec<u32> = (0..b).map(|k| beta[k] - if k + 1 < b { beta[k + 1] } else { 0 }).collect();
        let mut term = MultiPoly::one(nv);
        for (k, &m) in px.iter().enumerate() {
            for _ in 0..m {
                term = term.mul(&ex[k + 1]);
            }
        }
        for (k, &m) in py.iter().enumerate() {
            for _ in 0..m {
                term = term.mul(&ey[k + 1]);
            }
        }
        p = p.add(&term.scale(&-&c));
        out.insert((px, py), c);
    }
    Ok(out)
}

/// `c(A ⊗ B)` by the splitting principle: expand `Π_{i,j} (1 + a_i + b_j)`,
/// rewrite in elementary symmetric functions of the two root sets and
/// substitute the Chern classes.
pub fn chern_tensor(a: &ChernVector, b: &ChernVector) -> Result<ChernVector> {
    a.total.check_same(&b.total)?;
    let (r, n) = (a.total.r, a.total.n);
    let dim = n * (r - n);
    let (ra, rb) = (a.rank as usize, b.rank as usize);
    let nv = ra + rb;
    let mut p = MultiPoly::one(nv);
    for i in 0..ra {
        for j in 0..rb {
            let factor = MultiPoly::one(nv).add(&MultiPoly::var(nv, i)).add(&MultiPoly::var(nv, ra + j));
            p = p.mul(&factor).truncate_degree(dim);
        }
    }
    let ca: Vec<BoxClass> = (0..=a.rank).map(|j| a.c(j)).collect();
    let cb: Vec<BoxClass> = (0..=b.rank).map(|j| b.c(j)).collect();
    let mut total = BoxClass::zero(r, n);
    for ((px, py), coeff) in to_elementary(p, ra, rb)? {
        let mut term = BoxClass::one(r, n);
        for (k, &m) in px.iter().enumerate() {
            for _ in 0..m {
                term = schur_mult(&term, &ca[k + 1])?;
            }
        }
        for (k, &m) in py.iter().enumerate() {
            for _ in 0..m {
                term = schur_mult(&term, &cb[k + 1])?;
            }
        }
        if !coeff.is_integer() {
            return Err(crate::Error::Consistency("non-integral elementary coefficient".into()));
        }
        total = total.add(&term.scale(&coeff.to_integer()))?;
    }
    Ok(ChernVector { rank: a.rank * b.rank, total })
}

/// `c(V) = c(T_M) c(T_Gr) / (c(T_C) c(T_C'))` with `c(T_M) = (c(Q)c(Q*))^r`,
/// `c(T_C) = c(T_C') = c(Q)^r` and `T_Gr = S* ⊗ Q`.
pub fn excess_bundle(r: u32, n: u32) -> Result<ChernVector> {
    if n == 0 || n > r {
        return Err(contract(format!("excess bundle needs 1 <= n <= r, got r = {r}, n = {n}")));
    }
    let cq = chern_q(r, n)?;
    let cs = chern_s(r, n)?;
    let tm = cq.mul(&cq.dual())?.pow(r)?;
    let tgr = chern_tensor(&cs.dual(), &cq)?;
    let tc = cq.pow(r)?;
    let num = tm.mul(&tgr)?;
    let den = tc.mul(&tc)?;
    Ok(ChernVector { rank: n * (r - n), total: num.div_total(&den)? })
}

/// `(-1)^{(r-1)n} C(r, n)`.
pub fn expected_top(r: u32, n: u32) -> BigInt {
    let b = BigInt::from(binom_u(r as u64, n as u64));
    if ((r as u64).saturating_sub(1) * n as u64) % 2 == 1 {
        -b
    } else {
        b
    }
}

/// Rank of the excess bundle from dimensions: the two cycles have
/// complementary dimensions in `M` (dim `2rn + a`), so the excess equals
/// `dim Gr`; `a` cancels.
pub fn excess_rank_from_dimensions(r: u32, n: u32, a: i64) -> i64 {
    let dim_m = 2 * (r * n) as i64 + a;
    let dim_cycles = dim_m;
    let dim_gr = (n * (r - n)) as i64;
    dim_gr + dim_m - dim_cycles
}

/// `Σ_{n=0}^{r} z^{2n} ∫ c_top(V_{r,n})`, raised to the power `pairing`.
pub fn intersection_series(r: u32, pairing: u32) -> Result<Series<Q>> {
    if r == 0 {
        return Err(contract("rank must be positive"));
    }
    let order = 2 * (r * pairing.max(1)) as i64 + 1;
    let mut base = Series::from_coeffs(1, order, [(0, q(1))]);
    for n in 1..=r {
        let v = excess_bundle(r, n)?.top().integrate();
        base = base.add(&Series::monomial(1, order, 2 * n as i64, Q::from_integer(v)));
    }
    base.pow(pairing as i64)
}

/// `(1 - (-1)^r z²)^{r·pairing}` expanded binomially.
pub fn intersection_closed_form(r: u32, pairing: u32) -> Series<Q> {
    let e = (r * pairing) as u64;
    let order = 2 * e as i64 + 1;
    // -(-1)^r
    let step: i64 = if r % 2 == 0 { -1 } else { 1 };
    let mut s = Series::zero(1, order);
    for j in 0..=e {
        let c = step.pow(j as u32) * binom_u(e, j) as i64;
        s = s.add(&Series::monomial(1, order, 2 * j as i64, q(c)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn display_lists_terms_with_signs() {
        let c = BoxClass::schur(4, 2, p(&[2, 1])).scale(&BigInt::from(-12)).add(&BoxClass::one(4, 2)).unwrap();
        assert_eq!(c.to_string(), "1 - 12 s(2,1)");
        assert_eq!(BoxClass::zero(4, 2).to_string(), "0");
        assert_eq!(BoxClass::schur(4, 2, p(&[1])).to_string(), "s(1)");
    }

    #[test]
    fn gr24_square() {
        let s1 = BoxClass::schur(4, 2, p(&[1]));
        let sq = schur_mult(&s1, &s1).unwrap();
        let want = BoxClass::schur(4, 2, p(&[2])).add(&BoxClass::schur(4, 2, p(&[1, 1]))).unwrap();
        assert_eq!(sq, want);
        let one = BoxClass::one(4, 2);
        assert_eq!(schur_mult(&one, &s1).unwrap(), s1);
    }

    #[test]
    fn p1_truncation() {
        let h = BoxClass::schur(2, 1, p(&[1]));
        assert!(schur_mult(&h, &h).unwrap().is_zero());
        assert_eq!(h.integrate(), BigInt::one());
        assert!(schur_mult(&h, &BoxClass::one(3, 1)).is_err());
    }

    #[test]
    fn p1_chern_classes() {
        let cq = chern_q(2, 1).unwrap();
        let cs = chern_s(2, 1).unwrap();
        let h = BoxClass::schur(2, 1, p(&[1]));
        assert_eq!(cq.total, BoxClass::one(2, 1).add(&h).unwrap());
        assert_eq!(cs.total, BoxClass::one(2, 1).sub(&h).unwrap());
        assert_eq!(schur_mult(&cq.total, &cs.total).unwrap(), BoxClass::one(2, 1));
        let qq = chern_tensor(&cq, &cq.dual()).unwrap();
        assert_eq!(qq.total, BoxClass::one(2, 1));
    }

    #[test]
    fn excess_small_cases() {
        let v = excess_bundle(2, 1).unwrap();
        let h = BoxClass::schur(2, 1, p(&[1]));
        assert_eq!(v.total, BoxClass::one(2, 1).sub(&h.scale(&BigInt::from(2))).unwrap());
        assert_eq!(v.top().integrate(), BigInt::from(-2));
        assert_eq!(excess_bundle(3, 3).unwrap().total, BoxClass::one(3, 3));
        assert_eq!(excess_bundle(4, 2).unwrap().top().integrate(), BigInt::from(6));
        assert_eq!(excess_bundle(3, 1).unwrap().top().integrate(), BigInt::from(3));
    }

    #[test]
    fn tangent_euler_characteristic() {
        for (r, n) in [(2, 1), (3, 1), (4, 2), (5, 2)] {
            let t = chern_tensor(&chern_s(r, n).unwrap().dual(), &chern_q(r, n).unwrap()).unwrap();
            assert_eq!(t.top().integrate(), BigInt::from(binom_u(r as u64, n as u64)));
        }
    }

    #[test]
    fn series_small() {
        let s = intersection_series(2, 1).unwrap();
        assert_eq!(s, intersection_closed_form(2, 1));
        assert_eq!(s.coeff(2), q(-2));
        assert_eq!(intersection_series(1, 1).unwrap().coeff(2), q(1));
    }

    #[test]
    fn schur_polynomial_counts() {
        // number of SSYT of shape (2,1) with entries in {1,2,3} is 8
        let s = schur_polynomial(&p(&[2, 1]), 3);
        let total: Q = s.terms().values().sum();
        assert_eq!(total, q(8));
    }
}
