//! Super-Fock space of the oscillator algebra attached to the cohomology of
//! a surface.
//!
//! A basis state is a product of creation operators `p^α_{-i}` applied to
//! the vacuum, stored with labels `(i, α)` sorted ascending. Odd classes
//! anticommute, so an odd label occurs at most once and reordering odd
//! labels costs the sign of the permutation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{contract, Error, Result};
use crate::par::{self, Mode};
use crate::rational::{fmt_q, parse_q, q, Q};
use crate::series::{Series, SurfaceBetti};

/// Basis of `H*(S)` with cohomological degrees and the intersection pairing.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceDatum {
    names: Vec<String>,
    degrees: Vec<u8>,
    pairing: Vec<Vec<Q>>,
}

fn koszul(a: u8, b: u8) -> bool {
    (a % 2 == 1) && (b % 2 == 1)
}

impl SurfaceDatum {
    /// Validates degrees, the degree condition and graded symmetry of the
    /// pairing, and Poincaré duality of the Betti counts.
    pub fn new(names: Vec<String>, degrees: Vec<u8>, pairing: Vec<Vec<Q>>) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return Err(Error::Invalid("a surface datum needs at least one class".into()));
        }
        if names.len() != n || pairing.len() != n || pairing.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("pairing must be a {n}x{n} matrix with {n} class names")));
        }
        if let Some(d) = degrees.iter().find(|&&d| d > 4) {
            return Err(Error::Invalid(format!("class degree {d} is outside 0..=4")));
        }
        for a in 0..n {
            for b in 0..n {
                let v = &pairing[a][b];
                if !v.is_zero() && degrees[a] + degrees[b] != 4 {
                    return Err(Error::Invalid(format!(
                        "pairing <{},{}> is nonzero but the degrees {} + {} do not sum to 4",
                        names[a], names[b], degrees[a], degrees[b]
                    )));
                }
                let w = &pairing[b][a];
                let expected = if koszul(degrees[a], degrees[b]) { -w } else { w.clone() };
                if *v != expected {
                    return Err(Error::Invalid(format!(
                        "pairing is not graded symmetric at <{},{}> = {} versus <{},{}> = {}",
                        names[a],
                        names[b],
                        fmt_q(v),
                        names[b],
                        names[a],
                        fmt_q(w)
                    )));
                }
            }
        }
        let datum = SurfaceDatum { names, degrees, pairing };
        SurfaceBetti::new(datum.betti_counts())?;
        Ok(datum)
    }

    /// Classes `1`, `H`, `pt` with `<1,pt> = <H,H> = 1`.
    pub fn p2() -> Self {
        let z = q(0);
        let o = q(1);
        Self::new(
            vec!["1".into(), "H".into(), "pt".into()],
            vec![0, 2, 4],
            vec![vec![z.clone(), z.clone(), o.clone()], vec![z.clone(), o.clone(), z.clone()], vec![o, z.clone(), z]],
        )
        .expect("valid datum")
    }

    /// `H²` carries the even unimodular lattice `U^3 ⊕ E8(-1)^2`.
    pub fn k3() -> Self {
        let mut h2 = Vec::new();
        for _ in 0..3 {
            h2.push(vec![vec![0, 1], vec![1, 0]]);
        }
        for _ in 0..2 {
            h2.push(e8_negative());
        }
        Self::with_middle_lattice(&[1, 0, 0, 0, 1], &h2)
    }

    /// `H¹` paired with `H³` and `H² = U^3`.
    pub fn abelian() -> Self {
        let h2 = vec![vec![vec![0, 1], vec![1, 0]]; 3];
        Self::with_middle_lattice(&[1, 4, 0, 4, 1], &h2)
    }

    /// Default datum for given Betti numbers: `H⁰ ↔ H⁴` and `H¹ ↔ H³`
    /// paired index by index, diagonal `H²`.
    pub fn from_betti(b: &SurfaceBetti) -> Result<Self> {
        let b = SurfaceBetti::new(b.0)?.0;
        let h2: Vec<Vec<Vec<i64>>> = (0..b[2]).map(|_| vec![vec![1]]).collect();
        Ok(Self::with_middle_lattice(&[b[0], b[1], 0, b[3], b[4]], &h2))
    }

    fn with_middle_lattice(b: &[u32; 5], h2_blocks: &[Vec<Vec<i64>>]) -> Self {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (d, prefix) in [(0u8, "e"), (1, "a"), (3, "c"), (4, "pt")] {
            for k in 0..b[d as usize] {
                names.push(if b[d as usize] == 1 { prefix.to_string() } else { format!("{prefix}{}", k + 1) });
                degrees.push(d);
            }
        }
        let h2_start = names.len();
        let mut h2_size = 0;
        for block in h2_blocks {
            for _ in 0..block.len() {
                h2_size += 1;
                names.push(format!("D{h2_size}"));
                degrees.push(2);
            }
        }
        let n = names.len();
        let mut pairing = vec![vec![q(0); n]; n];
        let idx = |d: u8, k: u32| -> usize {
            let mut pos = 0;
            for (dd, _) in [(0u8, ()), (1, ()), (3, ()), (4, ())] {
                if dd == d {
                    return pos + k as usize;
                }
                pos += b[dd as usize] as usize;
            }
            unreachable!()
        };
        for k in 0..b[0] {
            pairing[idx(0, k)][idx(4, k)] = q(1);
            pairing[idx(4, k)][idx(0, k)] = q(1);
        }
        for k in 0..b[1] {
            pairing[idx(1, k)][idx(3, k)] = q(1);
            pairing[idx(3, k)][idx(1, k)] = q(-1);
        }
        let mut off = h2_start;
        for block in h2_blocks {
            for (i, row) in block.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    pairing[off + i][off + j] = q(v);
                }
            }
            off += block.len();
        }
        Self::new(names, degrees, pairing).expect("valid datum")
    }

    /// Reads `{"degrees": [..], "pairing": [[..]], "names": [..]?}`; matrix
    /// entries are integers or `"p/q"` strings.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("pairing file: {m}"));
        let degrees: Vec<u8> = v["degrees"]
            .as_array()
            .ok_or_else(|| bad("missing \"degrees\" array"))?
            .iter()
            .map(|d| d.as_u64().and_then(|x| u8::try_from(x).ok()).ok_or_else(|| bad("degrees must be small integers")))
            .collect::<Result<_>>()?;
        let rows = v["pairing"].as_array().ok_or_else(|| bad("missing \"pairing\" matrix"))?;
        let mut pairing = Vec::new();
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("pairing rows must be arrays"))?;
            let parsed: Vec<Q> = row
                .iter()
                .map(|x| match x {
                    Value::Number(n) => n.as_i64().map(q),
                    Value::String(s) => parse_q(s),
                    _ => None,
                })
                .map(|x| x.ok_or_else(|| bad("entries must be integers or \"p/q\" strings")))
                .collect::<Result<_>>()?;
            pairing.push(parsed);
        }
        let names = match v.get("names").and_then(Value::as_array) {
            Some(ns) => ns.iter().map(|n| n.as_str().map(str::to_string).ok_or_else(|| bad("names must be strings"))).collect::<Result<_>>()?,
            None => (0..degrees.len()).map(|k| format!("x{}", k + 1)).collect(),
        };
        Self::new(names, degrees, pairing)
    }

    pub fn class_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, alpha: usize) -> u8 {
        self.degrees[alpha]
    }

    pub fn name(&self, alpha: usize) -> &str {
        &self.names[alpha]
    }

    pub fn pairing(&self, alpha: usize, beta: usize) -> &Q {
        &self.pairing[alpha][beta]
    }

    pub fn is_odd(&self, alpha: usize) -> bool {
        self.degrees[alpha] % 2 == 1
    }

    fn betti_counts(&self) -> [u32; 5] {
        let mut b = [0u32; 5];
        for &d in &self.degrees {
            b[d as usize] += 1;
        }
        b
    }

    pub fn betti(&self) -> SurfaceBetti {
        SurfaceBetti(self.betti_counts())
    }
}

fn e8_negative() -> Vec<Vec<i64>> {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut m = vec![vec![0i64; 8]; 8];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = -2;
    }
    for (a, b) in edges {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    m
}

/// A creation label `(i, α)`.
pub type Label = (u32, usize);

/// Sorted creation labels; the empty state is the vacuum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FockState(Vec<Label>);

impl FockState {
    pub fn vacuum() -> Self {
        FockState(Vec::new())
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn energy(&self) -> u32 {
        self.0.iter().map(|l| l.0).sum()
    }

    /// `Σ (deg α - 2)` over the labels.
    pub fn shift_degree(&self, s: &SurfaceDatum) -> i32 {
        self.0.iter().map(|&(_, a)| s.degree(a) as i32 - 2).sum()
    }

    pub fn render(&self, s: &SurfaceDatum) -> String {
        if self.0.is_empty() {
            return "|0>".into();
        }
        let ops: Vec<String> = self.0.iter().map(|&(i, a)| format!("p[-{i}]({})", s.name(a))).collect();
        format!("{}|0>", ops.join(" "))
    }
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Places `(i, α)` in front of `state` and sorts it into position.
///
/// Returns `None` if an odd label would repeat, otherwise the new state
/// and whether the Koszul sign is negative.
fn insert_label(s: &SurfaceDatum, state: &FockState, label: Label) -> Option<(FockState, bool)> {
    let odd = s.is_odd(label.1);
    if odd && state.0.contains(&label) {
        return None;
    }
    let pos = state.0.partition_point(|l| *l < label);
    let passed_odd = state.0[..pos].iter().filter(|l| s.is_odd(l.1)).count();
    let mut labels = Vec::with_capacity(state.0.len() + 1);
    labels.extend_from_slice(&state.0[..pos]);
    labels.push(label);
    labels.extend_from_slice(&state.0[pos..]);
    Some((FockState(labels), odd && passed_odd % 2 == 1))
}

/// `p^α_i` on a basis state: the sum over labels with index `i` of
/// `i·<α,β>` times the Koszul sign for passing the labels in front.
fn annihilate_state(s: &SurfaceDatum, i: u32, alpha: usize, state: &FockState) -> Vec<(FockState, Q)> {
    let mut out = Vec::new();
    let alpha_odd = s.is_odd(alpha);
    let mut odd_before = 0usize;
    for (k, &(j, beta)) in state.0.iter().enumerate() {
        if j == i {
            let p = s.pairing(alpha, beta);
            if !p.is_zero() {
                let mut c = p * Q::from_integer(BigInt::from(i));
                if alpha_odd && odd_before % 2 == 1 {
                    c = -c;
                }
                let mut labels = state.0.clone();
                labels.remove(k);
                out.push((FockState(labels), c));
            }
        }
        if s.is_odd(beta) {
            odd_before += 1;
        }
    }
    out
}

#[derive(Clone, Default, PartialEq)]
pub struct FockVector(BTreeMap<FockState, Q>);

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn vacuum() -> Self {
        Self::basis(FockState::vacuum())
    }

    pub fn basis(state: FockState) -> Self {
        let mut v = Self::zero();
        v.add_term(state, &q(1));
        v
    }

    pub fn add_term(&mut self, state: FockState, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(state) {
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

    pub fn terms(&self) -> &BTreeMap<FockState, Q> {
        &self.0
    }

    pub fn coeff(&self, state: &FockState) -> Q {
        self.0.get(state).cloned().unwrap_or_else(|| q(0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (st, c) in &other.0 {
            out.add_term(st.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (st, x) in &self.0 {
            out.add_term(st.clone(), &(x * c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn render(&self, s: &SurfaceDatum) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.0.iter().map(|(st, c)| format!("{}*{}", fmt_q(c), st.render(s))).collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter().map(|(k, v)| (k, fmt_q(v)))).finish()
    }
}

/// `p^α_{-i} v`.
pub fn create(s: &SurfaceDatum, i: u32, alpha: usize, v: &FockVector) -> FockVector {
    assert!(i >= 1, "creation index must be positive");
    let mut out = FockVector::zero();
    for (st, c) in &v.0 {
        if let Some((new, neg)) = insert_label(s, st, (i, alpha)) {
            out.add_term(new, &if neg { -c } else { c.clone() });
        }
    }
    out
}

/// `p^α_i v` for `i > 0`.
pub fn annihilate(s: &SurfaceDatum, i: u32, alpha: usize, v: &FockVector) -> FockVector {
    assert!(i >= 1, "annihilation index must be positive");
    let mut out = FockVector::zero();
    for (st, c) in &v.0 {
        for (new, a) in annihilate_state(s, i, alpha, st) {
            out.add_term(new, &(c * a));
        }
    }
    out
}

/// A signed generator `p^α_i`: creation for `i < 0`, annihilation for `i > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub index: i32,
    pub class: usize,
}

impl Generator {
    pub fn render(&self, s: &SurfaceDatum) -> String {
        format!("p[{}]({})", self.index, s.name(self.class))
    }
}

/// Applies a signed generator.
pub fn apply(s: &SurfaceDatum, g: Generator, v: &FockVector) -> FockVector {
    match g.index {
        i if i < 0 => create(s, (-i) as u32, g.class, v),
        i if i > 0 => annihilate(s, i as u32, g.class, v),
        _ => panic!("generator index must be nonzero"),
    }
}

/// Graded commutator `[a, b] = ab - (-1)^{|a||b|} ba` applied to `v`.
pub fn graded_commutator(s: &SurfaceDatum, a: Generator, b: Generator, v: &FockVector) -> FockVector {
    let ab = apply(s, a, &apply(s, b, v));
    let ba = apply(s, b, &apply(s, a, v));
    if s.is_odd(a.class) && s.is_odd(b.class) {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

/// All basis states with energy at most `max_energy`, sorted by energy and
/// then by labels.
pub fn basis_states(s: &SurfaceDatum, max_energy: u32) -> Vec<FockState> {
    let labels: Vec<Label> = (1..=max_energy).flat_map(|i| (0..s.class_count()).map(move |a| (i, a))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(s: &SurfaceDatum, labels: &[Label], start: usize, budget: u32, cur: &mut Vec<Label>, out: &mut Vec<FockState>) {
        out.push(FockState(cur.clone()));
        for k in start..labels.len() {
            let l = labels[k];
            if l.0 > budget {
                continue;
            }
            cur.push(l);
            // even labels may repeat, odd ones may not
            let next = if s.is_odd(l.1) { k + 1 } else { k };
            rec(s, labels, next, budget - l.0, cur, out);
            cur.pop();
        }
    }
    rec(s, &labels, 0, max_energy, &mut cur, &mut out);
    out.sort_by(|a, b| a.energy().cmp(&b.energy()).then_with(|| a.cmp(b)));
    out
}

/// Normalization of the creation operators in a relation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Normalization {
    /// `[p^α_i, p^β_j] = i<α,β> δ_{i+j,0}`.
    Standard,
    /// Creations scaled by `(-1)^{ri-1} r`, so that
    /// `[P^α_i, P^β_{-i}] = (-1)^{ri-1} r i <α,β>`.
    Rank(u32),
}

impl Normalization {
    /// Factor multiplying `p^α_{-i}`.
    pub fn creation_factor(self, i: u32) -> Q {
        match self {
            Normalization::Standard => q(1),
            Normalization::Rank(r) => {
                let sign = if (r as u64 * i as u64) % 2 == 1 { 1 } else { -1 };
                q(sign * r as i64)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub state: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub max_energy: u32,
    pub normalization: Normalization,
    pub generators: usize,
    pub states: usize,
    /// Every (pair, state) combination whose intermediate energies stay
    /// within the bound.
    pub checks: u64,
    /// Combinations evaluated term by term; the rest vanish because both
    /// generators kill the state and no central term is expected.
    pub evaluated: u64,
    /// Evaluated combinations where both generators are odd.
    pub anticommutator_checks: u64,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Image = Vec<(u32, Q)>;

struct Cache {
    gens: Vec<Generator>,
    states: Vec<FockState>,
    energy: Vec<u32>,
    /// Per state: nonzero images of the admissible generators, sorted by
    /// generator position.
    images: Vec<Vec<(u32, Image)>>,
}

impl Cache {
    fn build(s: &SurfaceDatum, max_energy: u32, norm: Normalization, mode: Mode) -> Self {
        let e = max_energy as i32;
        let gens: Vec<Generator> = (-e..=e)
            .filter(|&i| i != 0)
            .flat_map(|index| (0..s.class_count()).map(move |class| Generator { index, class }))
            .collect();
        let states = basis_states(s, max_energy);
        let index: HashMap<&FockState, u32> = states.iter().enumerate().map(|(k, st)| (st, k as u32)).collect();
        let energy: Vec<u32> = states.iter().map(FockState::energy).collect();
        let images = par::map(mode, &states, |st| {
            let en = st.energy();
            let mut out = Vec::new();
            for (gi, g) in gens.iter().enumerate() {
                let img: Image = if g.index < 0 {
                    let i = (-g.index) as u32;
                    if en + i > max_energy {
                        continue;
                    }
                    match insert_label(s, st, (i, g.class)) {
                        Some((new, neg)) => {
                            let c = norm.creation_factor(i);
                            vec![(index[&new], if neg { -c } else { c })]
                        }
                        None => Vec::new(),
                    }
                } else {
                    let mut acc: BTreeMap<u32, Q> = BTreeMap::new();
                    for (new, c) in annihilate_state(s, g.index as u32, g.class, st) {
                        *acc.entry(index[&new]).or_insert_with(|| q(0)) += c;
                    }
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                };
                if !img.is_empty() {
                    out.push((gi as u32, img));
                }
            }
            out
        });
        Cache { gens, states, energy, images }
    }

    fn image(&self, g: u32, state: u32) -> Option<&Image> {
        let row = &self.images[state as usize];
        row.binary_search_by_key(&g, |(k, _)| *k).ok().map(|p| &row[p].1)
    }

    fn delta(&self, g: u32) -> i32 {
        -self.gens[g as usize].index
    }

    fn compose(&self, a: u32, b: u32, state: u32) -> BTreeMap<u32, Q> {
        let mut acc: BTreeMap<u32, Q> = BTreeMap::new();
        if let Some(first) = self.image(b, state) {
            for (t, c) in first {
                if let Some(second) = self.image(a, *t) {
                    for (u, d) in second {
                        *acc.entry(*u).or_insert_with(|| q(0)) += c * d;
                    }
                }
            }
        }
        acc
    }
}

/// Checks every graded commutator of generators with `|i| ≤ max_energy` on
/// every basis state of energy `≤ max_energy`, keeping all intermediate
/// states within the same energy bound.
pub fn check_relations(s: &SurfaceDatum, max_energy: u32, norm: Normalization, mode: Mode) -> Result<RelationReport> {
    if max_energy == 0 {
        return Err(contract("max_energy must be at least 1"));
    }
    let cache = Cache::build(s, max_energy, norm, mode);
    let g_count = cache.gens.len() as u32;
    let e_max = max_energy as i32;
    let ids: Vec<u32> = (0..cache.states.len() as u32).collect();

    let per_state = par::map(mode, &ids, |&st| {
        let e = cache.energy[st as usize] as i32;
        let admissible = |g: u32| -> bool { e + cache.delta(g) <= e_max };
        let active: Vec<u32> = cache.images[st as usize].iter().map(|(g, _)| *g).collect();
        let is_active = |g: u32| active.binary_search(&g).is_ok();
        let mut checks = 0u64;
        let mut evaluated = 0u64;
        let mut anti = 0u64;
        let mut failures = Vec::new();
        for a in 0..g_count {
            if !admissible(a) {
                continue;
            }
            for b in 0..g_count {
                if !admissible(b) || e + cache.delta(a) + cache.delta(b) > e_max {
                    continue;
                }
                checks += 1;
                let (ga, gb) = (cache.gens[a as usize], cache.gens[b as usize]);
                let expected = if ga.index + gb.index == 0 {
                    s.pairing(ga.class, gb.class) * q(ga.index as i64) * norm.creation_factor(ga.index.unsigned_abs())
                } else {
                    q(0)
                };
                if !is_active(a) && !is_active(b) {
                    if !expected.is_zero() {
                        failures.push(failure(s, &cache, ga, gb, st, &expected, &BTreeMap::new()));
                    }
                    continue;
                }
                evaluated += 1;
                let both_odd = s.is_odd(ga.class) && s.is_odd(gb.class);
                if both_odd {
                    anti += 1;
                }
                let mut got = cache.compose(a, b, st);
                for (u, c) in cache.compose(b, a, st) {
                    let slot = got.entry(u).or_insert_with(|| q(0));
                    if both_odd {
                        *slot += c;
                    } else {
                        *slot -= c;
                    }
                }
                got.retain(|_, c| !c.is_zero());
                let ok = match got.len() {
                    0 => expected.is_zero(),
                    1 => got.get(&st).is_some_and(|c| *c == expected),
                    _ => false,
                };
                if !ok {
                    failures.push(failure(s, &cache, ga, gb, st, &expected, &got));
                }
            }
        }
        (checks, evaluated, anti, failures)
    });

    let mut report = RelationReport {
        max_energy,
        normalization: norm,
        generators: cache.gens.len(),
        states: cache.states.len(),
        checks: 0,
        evaluated: 0,
        anticommutator_checks: 0,
        failures: Vec::new(),
    };
    for (c, e, a, f) in per_state {
        report.checks += c;
        report.evaluated += e;
        report.anticommutator_checks += a;
        report.failures.extend(f);
    }
    Ok(report)
}

fn failure(
    s: &SurfaceDatum,
    cache: &Cache,
    a: Generator,
    b: Generator,
    st: u32,
    expected: &Q,
    got: &BTreeMap<u32, Q>,
) -> RelationFailure {
    let bracket = if s.is_odd(a.class) && s.is_odd(b.class) { ("{", "}") } else { ("[", "]") };
    let mut v = FockVector::zero();
    for (u, c) in got {
        v.add_term(cache.states[*u as usize].clone(), c);
    }
    RelationFailure {
        relation: format!("{}{}, {}{}", bracket.0, a.render(s), b.render(s), bracket.1),
        state: cache.states[st as usize].render(s),
        expected: format!("{} * Id", fmt_q(expected)),
        got: v.render(s),
    }
}

/// Graded dimension `Σ q^{energy} t^{shift degree}` of the Fock space times
/// the vacuum dimension, counted generator by generator.
pub fn character(s: &SurfaceDatum, order: u32, vacuum_dim: u32) -> Series<crate::poly::LaurentT> {
    use crate::poly::{LaurentT, Ring};
    // counts[energy] maps shift degree to the number of states
    let mut counts: Vec<BTreeMap<i32, BigInt>> = vec![BTreeMap::new(); order as usize];
    if order > 0 {
        counts[0].insert(0, BigInt::from(vacuum_dim));
    }
    for i in 1..order {
        for alpha in 0..s.class_count() {
            let w = s.degree(alpha) as i32 - 2;
            if s.is_odd(alpha) {
                for e in (i..order).rev() {
                    let src = counts[(e - i) as usize].clone();
                    for (d, c) in src {
                        *counts[e as usize].entry(d + w).or_insert_with(BigInt::zero) += c;
                    }
                }
            } else {
                for e in i..order {
                    let src = counts[(e - i) as usize].clone();
                    for (d, c) in src {
                        *counts[e as usize].entry(d + w).or_insert_with(BigInt::zero) += c;
                    }
                }
            }
        }
    }
    let mut out = Series::zero(1, order as i64);
    for (e, row) in counts.into_iter().enumerate() {
        let mut poly = LaurentT::zero();
        for (d, c) in row {
            if !c.is_zero() {
                poly.add_term([d], &Q::from_integer(c));
            }
        }
        if !poly.is_zero() {
            out = out.add(&Series::monomial(1, order as i64, e as i64, poly));
        }
    }
    out
}

/// `c_n = n² [z^{2n}] log((1 - (-1)^r z²)^{r·pairing}) / pairing` for
/// `n = 1..=n_max`.
pub fn recover_constants(r: u32, pairing: u32, n_max: u32) -> Result<Vec<Q>> {
    if r == 0 || pairing == 0 {
        return Err(contract("rank and pairing must be positive"));
    }
    let order = 2 * n_max as i64 + 1;
    let sign = if r % 2 == 0 { q(-1) } else { q(1) };
    let base: Series<Q> = Series::from_coeffs(1, order, [(0, q(1)), (2, sign)]);
    let powered = base.pow((r * pairing) as i64)?.truncate(order);
    let phi = powered.log()?;
    Ok((1..=n_max as i64)
        .map(|n| phi.coeff(2 * n) * q(n * n) / q(pairing as i64))
        .collect())
}

/// `(-1)^{rn-1} r n`.
pub fn expected_constant(r: u32, n: u32) -> Q {
    let v = (r * n) as i64;
    if v % 2 == 1 {
        q(v)
    } else {
        q(-v)
    }
}

/// Bilinear form on basis states by full contraction: the sum over
/// bijections between labels of equal index of `Π i<α,α'>`, times the sign
/// of the induced permutation of odd labels.
pub fn wick_form(s: &SurfaceDatum, x: &FockState, y: &FockState) -> Q {
    let (lx, ly) = (x.labels(), y.labels());
    if lx.len() != ly.len() {
        return q(0);
    }
    let mut total = q(0);
    let mut used = vec![false; ly.len()];
    let mut perm = Vec::with_capacity(lx.len());
    fn rec(
        s: &SurfaceDatum,
        lx: &[Label],
        ly: &[Label],
        k: usize,
        used: &mut [bool],
        perm: &mut Vec<usize>,
        acc: Q,
        total: &mut Q,
    ) {
        if k == lx.len() {
            let odd_x: Vec<usize> = (0..lx.len()).filter(|&p| s.is_odd(lx[p].1)).collect();
            let targets: Vec<usize> = odd_x.iter().map(|&p| perm[p]).collect();
            let mut inversions = 0;
            for a in 0..targets.len() {
                for b in a + 1..targets.len() {
                    if targets[a] > targets[b] {
                        inversions += 1;
                    }
                }
            }
            *total += if inversions % 2 == 1 { -acc } else { acc };
            return;
        }
        let (i, alpha) = lx[k];
        for m in 0..ly.len() {
            if used[m] || ly[m].0 != i {
                continue;
            }
            let p = s.pairing(alpha, ly[m].1);
            if p.is_zero() {
                continue;
            }
            used[m] = true;
            perm.push(m);
            rec(s, lx, ly, k + 1, used, perm, &acc * p * q(i as i64), total);
            perm.pop();
            used[m] = false;
        }
    }
    rec(s, lx, ly, 0, &mut used, &mut perm, q(1), &mut total);
    total
}

/// Extends [`wick_form`] bilinearly.
pub fn wick_form_vectors(s: &SurfaceDatum, x: &FockVector, y: &FockVector) -> Q {
    let mut total = q(0);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let w = wick_form(s, a, b);
            if !w.is_zero() {
                total += ca * cb * w;
            }
        }
    }
    total
}

/// Whether the pairing matrix is identically zero.
pub fn pairing_is_degenerate(s: &SurfaceDatum) -> bool {
    s.pairing.iter().all(|row| row.iter().all(|x| x.is_zero()))
}

/// Absolute value of every pairing entry is at most this bound.
pub fn pairing_bound(s: &SurfaceDatum) -> Q {
    s.pairing.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(|| q(0))
}
