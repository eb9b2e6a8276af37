//! Commuting nilpotent matrices with cyclic vectors: points of the punctual
//! Quot scheme in linear-algebra form.
//!
//! The main construction takes a commuting nilpotent pair `(B1, B2)`, builds
//! a basis of Jordan chains for `B1` in which `B2` is triangular on chain
//! tops, and from it a second operator `B2'` with a cyclic vector. The
//! straight line from `B2` to `B2'` stays inside the commuting nilpotent
//! pairs, which deforms any point into the open cell.

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{contract, Result};
use crate::linalg::{add_vec, extend_basis, independent_subset, scale_vec, span_rank, Matrix, Vector};
use crate::par::{self, Mode};
use crate::partitions::{dim_punctual_quot, enumerate_partitions, Partition};
use crate::rational::{fmt_q, q, Q};

#[derive(Debug, Clone, PartialEq)]
pub struct NilpotentPair {
    b1: Matrix,
    b2: Matrix,
}

impl NilpotentPair {
    /// Checks squareness, `B1 B2 = B2 B1` and nilpotency of both.
    pub fn new(b1: Matrix, b2: Matrix) -> Result<Self> {
        let d = b1.rows();
        if b1.cols() != d || b2.rows() != d || b2.cols() != d {
            return Err(contract("B1 and B2 must be square of the same size"));
        }
        if !b1.commutator(&b2).is_zero() {
            return Err(contract("B1 and B2 do not commute"));
        }
        if !b1.is_nilpotent() {
            return Err(contract("B1 is not nilpotent"));
        }
        if !b2.is_nilpotent() {
            return Err(contract("B2 is not nilpotent"));
        }
        Ok(NilpotentPair { b1, b2 })
    }

    pub fn dim(&self) -> usize {
        self.b1.rows()
    }

    pub fn b1(&self) -> &Matrix {
        &self.b1
    }

    pub fn b2(&self) -> &Matrix {
        &self.b2
    }

    /// `(g B1 g^{-1}, g B2 g^{-1})`.
    pub fn conjugate(&self, g: &Matrix, g_inv: &Matrix) -> Self {
        NilpotentPair { b1: g.mul(&self.b1).mul(g_inv), b2: g.mul(&self.b2).mul(g_inv) }
    }
}

/// A pair together with `r` vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotPoint {
    pub pair: NilpotentPair,
    pub vectors: Vec<Vector>,
}

impl QuotPoint {
    pub fn new(pair: NilpotentPair, vectors: Vec<Vector>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != pair.dim()) {
            return Err(contract("vector length differs from the matrix size"));
        }
        Ok(QuotPoint { pair, vectors })
    }

    /// Membership in `U_r`.
    pub fn is_stable(&self) -> bool {
        is_cyclic(&self.pair.b1, &self.pair.b2, &self.vectors)
    }

    /// `{"dim", "B1", "B2", "vectors"}` with `"p/q"` entries.
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.pair.dim(),
            "B1": self.pair.b1.to_json(),
            "B2": self.pair.b2.to_json(),
            "vectors": self.vectors.iter().map(|v| v.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Random unit lower-triangular times unit upper-triangular integer matrix,
/// with its (integral) inverse.
pub fn random_unimodular(dim: usize, rng: &mut ChaCha8Rng) -> (Matrix, Matrix) {
    let mut l = Matrix::identity(dim);
    let mut u = Matrix::identity(dim);
    for i in 0..dim {
        for j in 0..i {
            l[(i, j)] = q(rng.gen_range(-1..=1));
            u[(j, i)] = q(rng.gen_range(-1..=1));
        }
    }
    let g = l.mul(&u);
    let inv = g.inverse().expect("unit triangular factors are invertible");
    (g, inv)
}

fn boxes(diagram: &Partition) -> Vec<(usize, usize)> {
    diagram.parts().iter().enumerate().flat_map(|(i, &w)| (0..w as usize).map(move |j| (i, j))).collect()
}

/// Multiplication by `x1` (along rows) and `x2` (down columns) on the
/// monomial quotient indexed by the boxes of `diagram`, optionally
/// conjugated by a seeded random invertible matrix.
pub fn staircase_pair(diagram: &Partition, conjugate_by_random: bool, seed: u64) -> Result<NilpotentPair> {
    let (pair, _) = staircase_with_frame(diagram, conjugate_by_random, seed)?;
    Ok(pair)
}

/// Same as [`staircase_pair`], also returning the change of basis `g`.
fn staircase_with_frame(diagram: &Partition, conjugate_by_random: bool, seed: u64) -> Result<(NilpotentPair, Matrix)> {
    if diagram.weight() == 0 {
        return Err(contract("diagram must have at least one box"));
    }
    let cells = boxes(diagram);
    let d = cells.len();
    let pos = |i: usize, j: usize| cells.iter().position(|&c| c == (i, j));
    let mut b1 = Matrix::zeros(d, d);
    let mut b2 = Matrix::zeros(d, d);
    for (k, &(i, j)) in cells.iter().enumerate() {
        if let Some(t) = pos(i, j + 1) {
            b1[(t, k)] = q(1);
        }
        if let Some(t) = pos(i + 1, j) {
            b2[(t, k)] = q(1);
        }
    }
    let pair = NilpotentPair { b1, b2 };
    if !conjugate_by_random {
        return Ok((pair, Matrix::identity(d)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (g, g_inv) = random_unimodular(d, &mut rng);
    Ok((pair.conjugate(&g, &g_inv), g))
}

/// Closure of `span(vectors)` under `B1` and `B2` is the whole space.
pub fn is_cyclic(b1: &Matrix, b2: &Matrix, vectors: &[Vector]) -> bool {
    let dim = b1.rows();
    let mut basis = independent_subset(vectors, dim);
    let mut frontier = basis.clone();
    while !frontier.is_empty() && basis.len() < dim {
        let images: Vec<Vector> = frontier.iter().flat_map(|v| [b1.mul_vec(v), b2.mul_vec(v)]).collect();
        let new = extend_basis(&basis, &images, dim);
        basis.extend(new.iter().cloned());
        frontier = new;
    }
    basis.len() == dim
}

/// Jordan chains `e_{i,1}, ..., e_{i,μ_i}` of `B1` with
/// `B1 e_{i,j} = e_{i,j+1}` and `B1 e_{i,μ_i} = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedBasis {
    pub mu: Partition,
    pub chains: Vec<Vec<Vector>>,
}

impl AdaptedBasis {
    /// Columns `e_{1,1}, ..., e_{1,μ_1}, e_{2,1}, ...`.
    pub fn matrix(&self, dim: usize) -> Matrix {
        let cols: Vec<Vector> = self.chains.iter().flatten().cloned().collect();
        Matrix::from_columns(&cols, dim)
    }

    /// Column position of `e_{i,j}` (0-based `i`, `j`).
    pub fn position(&self, i: usize, j: usize) -> usize {
        self.chains[..i].iter().map(Vec::len).sum::<usize>() + j
    }
}

/// Basis of `K_L = ker B1^L` for `L = 0..=d`.
fn kernel_flag(b1: &Matrix, d: u32) -> Vec<Vec<Vector>> {
    (0..=d).map(|l| b1.pow(l).kernel()).collect()
}

/// Builds the adapted basis.
///
/// With `V_i = ker B1^{d-i}`, the tops of chains of length `L = d - i` are
/// lifts of a basis of `W = V_i / (B1 V_{i-1} + V_{i+1})`. On each `W` the
/// induced `B2` is nilpotent; the basis is taken along its kernel flag,
/// highest level first, so that `B2` maps each top into later tops plus the
/// image of `B1`.
pub fn adapted_basis(p: &NilpotentPair) -> Result<AdaptedBasis> {
    let dim = p.dim();
    let b1 = &p.b1;
    let b2 = &p.b2;
    let d = b1.nilpotency_index().ok_or_else(|| contract("B1 is not nilpotent"))?;
    let ks = kernel_flag(b1, d);
    let mut chains: Vec<Vec<Vector>> = Vec::new();
    for l in (1..=d as usize).rev() {
        // U = B1·K_{l+1} + K_{l-1}, inside K_l
        let upper: &[Vector] = if l < d as usize { &ks[l + 1] } else { &ks[d as usize] };
        let mut u_gens: Vec<Vector> = upper.iter().map(|v| b1.mul_vec(v)).collect();
        u_gens.extend(ks[l - 1].iter().cloned());
        let u_basis = independent_subset(&u_gens, dim);
        let complement = extend_basis(&u_basis, &ks[l], dim);
        if complement.is_empty() {
            continue;
        }
        let w = complement.len();
        // induced B2 on W in the complement basis
        let mut full = u_basis.clone();
        full.extend(complement.iter().cloned());
        let frame = Matrix::from_columns(&full, dim);
        let mut n_mat = Matrix::zeros(w, w);
        for (c, v) in complement.iter().enumerate() {
            let coords = frame
                .solve(&b2.mul_vec(v))
                .ok_or_else(|| crate::Error::Consistency("B2 does not preserve ker B1^L".into()))?;
            for r in 0..w {
                n_mat[(r, c)] = coords[u_basis.len() + r].clone();
            }
        }
        // kernel flag of the induced operator, listed highest level first
        let mut levels: Vec<Vec<Vector>> = Vec::new();
        let mut acc: Vec<Vector> = Vec::new();
        let mut m = 1;
        while acc.len() < w {
            let ker = n_mat.pow(m).kernel();
            let new = extend_basis(&acc, &ker, w);
            if new.is_empty() && m > w as u32 {
                return Err(crate::Error::Consistency("induced B2 is not nilpotent".into()));
            }
            acc.extend(new.iter().cloned());
            levels.push(new);
            m += 1;
        }
        for coords in levels.into_iter().rev().flatten() {
            let mut top = vec![q(0); dim];
            for (k, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    top = add_vec(&top, &scale_vec(&complement[k], c));
                }
            }
            let mut chain = vec![top];
            for _ in 1..l {
                let next = b1.mul_vec(chain.last().expect("nonempty"));
                chain.push(next);
            }
            chains.push(chain);
        }
    }
    let mu = Partition::new(chains.iter().map(|c| c.len() as u32).collect());
    let basis = AdaptedBasis { mu, chains };
    if span_rank(&basis.chains.iter().flatten().cloned().collect::<Vec<_>>(), dim) != dim {
        return Err(crate::Error::Consistency("chains do not form a basis".into()));
    }
    Ok(basis)
}

/// Result of checking the two defining properties of an adapted basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdaptedCheck {
    pub chains: bool,
    pub triangular: bool,
}

/// Verifies (a) `B1 e_{i,j} = e_{i,j+1}`, `B1 e_{i,μ_i} = 0` and
/// (b) `B2 e_{i,1}` has no `e_{k,1}` component for `k ≤ i`.
pub fn check_adapted(p: &NilpotentPair, basis: &AdaptedBasis) -> AdaptedCheck {
    let dim = p.dim();
    let mut chains = true;
    for chain in &basis.chains {
        for (j, v) in chain.iter().enumerate() {
            let img = p.b1.mul_vec(v);
            let ok = match chain.get(j + 1) {
                Some(next) => img == *next,
                None => img.iter().all(Zero::is_zero),
            };
            chains &= ok;
        }
    }
    let frame = basis.matrix(dim);
    let mut triangular = true;
    match frame.inverse() {
        None => {
            chains = false;
            triangular = false;
        }
        Some(inv) => {
            for i in 0..basis.chains.len() {
                let coords = inv.mul_vec(&p.b2.mul_vec(&basis.chains[i][0]));
                for k in 0..=i {
                    if !coords[basis.position(k, 0)].is_zero() {
                        triangular = false;
                    }
                }
            }
        }
    }
    AdaptedCheck { chains, triangular }
}

/// `B2' e_{i,j} = e_{i+1,j}` when `j ≤ μ_{i+1}`, else `0`; `w = e_{1,1}`.
pub fn companion(p: &NilpotentPair) -> Result<(Matrix, Vector)> {
    let basis = adapted_basis(p)?;
    Ok(companion_from(p, &basis))
}

fn companion_from(p: &NilpotentPair, basis: &AdaptedBasis) -> (Matrix, Vector) {
    let dim = p.dim();
    let frame = basis.matrix(dim);
    let inv = frame.inverse().expect("adapted basis is a basis");
    let mut c = Matrix::zeros(dim, dim);
    for i in 0..basis.chains.len() {
        for j in 0..basis.chains[i].len() {
            if i + 1 < basis.chains.len() && j < basis.chains[i + 1].len() {
                c[(basis.position(i + 1, j), basis.position(i, j))] = q(1);
            }
        }
    }
    let b2p = frame.mul(&c).mul(&inv);
    (b2p, basis.chains[0][0].clone())
}

/// `Φ(t) = (B1, t B2' + (1-t) B2, t w + (1-t) v1, v2, ..., vr)`, so that
/// `Φ(0)` is the input and `Φ(1)` the companion end.
pub fn deformation_path(x: &QuotPoint, t: &Q) -> Result<QuotPoint> {
    let (b2p, w) = companion(&x.pair)?;
    Ok(deformation_at(x, &b2p, &w, t))
}

fn deformation_at(x: &QuotPoint, b2p: &Matrix, w: &[Q], t: &Q) -> QuotPoint {
    let s = q(1) - t;
    let b2 = b2p.scale(t).add(&x.pair.b2.scale(&s));
    let mut vectors = x.vectors.clone();
    if let Some(v1) = vectors.first_mut() {
        *v1 = add_vec(&scale_vec(w, t), &scale_vec(v1, &s));
    }
    QuotPoint { pair: NilpotentPair { b1: x.pair.b1.clone(), b2 }, vectors }
}

/// Dimension of the space of `X` with `X v_k = 0`, `[X, B1] = [X, B2] = 0`;
/// zero means the stabilizer of the tuple in `GL(V)` is trivial.
pub fn stabilizer_dimension(x: &QuotPoint) -> usize {
    let d = x.pair.dim();
    let unknowns = d * d;
    let var = |i: usize, j: usize| i * d + j;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for b in [&x.pair.b1, &x.pair.b2] {
        // (X B - B X)_{ij} = Σ_k X_ik B_kj - B_ik X_kj
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![q(0); unknowns];
                for k in 0..d {
                    row[var(i, k)] += &b[(k, j)];
                    row[var(k, j)] -= &b[(i, k)];
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    for v in &x.vectors {
        for i in 0..d {
            let mut row = vec![q(0); unknowns];
            for k in 0..d {
                row[var(i, k)] = v[k].clone();
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    unknowns - Matrix::from_rows(rows).rank()
}

/// A seeded test instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub index: usize,
    pub seed: u64,
    pub diagram: Partition,
    pub point: QuotPoint,
}

/// Mixes the suite seed with the instance index.
pub fn instance_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64).rotate_left(17) ^ 0xA076_1D64_78BD_642F
}

/// Random diagram of size `1..=max_dim`, conjugated staircase pair and `r`
/// vectors; one randomly chosen vector carries the generator, the others are
/// random, so the tuple is in `U_r` but `v1` alone often is not cyclic.
pub fn random_instance(index: usize, seed: u64, max_dim: u32, rank: u32) -> Result<Instance> {
    if max_dim == 0 || rank == 0 {
        return Err(contract("max_dim and rank must be positive"));
    }
    let s = instance_seed(seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let n = rng.gen_range(1..=max_dim);
    let parts = enumerate_partitions(n);
    let diagram = parts[rng.gen_range(0..parts.len())].clone();
    let (pair, g) = staircase_with_frame(&diagram, true, rng.gen())?;
    let d = pair.dim();
    let carrier = rng.gen_range(0..rank as usize);
    let mut vectors = Vec::new();
    for k in 0..rank as usize {
        // coordinates in the box basis; box 0 is the generator 1
        let mut coords: Vec<Q> = (0..d).map(|_| q(rng.gen_range(-2..=2))).collect();
        coords[0] = if k == carrier { q(1) } else { q(0) };
        vectors.push(g.mul_vec(&coords));
    }
    let point = QuotPoint::new(pair, vectors)?;
    Ok(Instance { index, seed: s, diagram, point })
}

/// A rational in `(0, 1)` when `unit_interval`, else in `[-1, 1]`.
/// Denominators up to 1000 keep samples away from the few special
/// parameters of small height.
fn sample_rational(rng: &mut ChaCha8Rng, unit_interval: bool) -> Q {
    let den: i64 = rng.gen_range(2..=1000);
    let num: i64 = if unit_interval { rng.gen_range(1..den) } else { rng.gen_range(-den..=den) };
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Outcome of the full check list on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    pub seed: u64,
    pub diagram: String,
    pub dim: usize,
    pub rank: usize,
    pub jordan_type: String,
    pub input_in_u_r: bool,
    pub adapted_chains: bool,
    pub adapted_triangular: bool,
    pub companion_commutes: bool,
    pub companion_nilpotent_samples: usize,
    pub companion_nilpotent_passed: usize,
    pub companion_cyclic: bool,
    pub path_start_is_input: bool,
    pub path_end_first_vector_cyclic: bool,
    pub path_samples_commuting_nilpotent: bool,
    /// Sampled `t` in `(0, 1)` where `Φ(t)` leaves `U_r`.
    pub path_generic_failures: Vec<String>,
    pub gl_invariant: bool,
    pub stabilizer_dim: Option<usize>,
    pub dimension_count: bool,
    pub error: Option<String>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.input_in_u_r
            && self.adapted_chains
            && self.adapted_triangular
            && self.companion_commutes
            && self.companion_nilpotent_passed == self.companion_nilpotent_samples
            && self.companion_cyclic
            && self.path_start_is_input
            && self.path_end_first_vector_cyclic
            && self.path_samples_commuting_nilpotent
            && self.gl_invariant
            && self.stabilizer_dim.is_none_or(|d| d == 0)
            && self.dimension_count
    }
}

/// Runs every check on one instance. `nilpotent_samples` random `(α, β)`
/// test `α B2 + β B2'`, `path_samples` random `t ∈ (0, 1)` test the path.
pub fn check_instance(inst: &Instance, nilpotent_samples: usize, path_samples: usize, check_stabilizer: bool) -> InstanceReport {
    let x = &inst.point;
    let mut rep = InstanceReport {
        index: inst.index,
        seed: inst.seed,
        diagram: inst.diagram.to_string(),
        dim: x.pair.dim(),
        rank: x.vectors.len(),
        jordan_type: String::new(),
        input_in_u_r: x.is_stable(),
        adapted_chains: false,
        adapted_triangular: false,
        companion_commutes: false,
        companion_nilpotent_samples: nilpotent_samples,
        companion_nilpotent_passed: 0,
        companion_cyclic: false,
        path_start_is_input: false,
        path_end_first_vector_cyclic: false,
        path_samples_commuting_nilpotent: false,
        path_generic_failures: Vec::new(),
        gl_invariant: false,
        stabilizer_dim: None,
        dimension_count: false,
        error: None,
    };
    let basis = match adapted_basis(&x.pair) {
        Ok(b) => b,
        Err(e) => {
            rep.error = Some(e.to_string());
            return rep;
        }
    };
    rep.jordan_type = basis.mu.to_string();
    let ac = check_adapted(&x.pair, &basis);
    rep.adapted_chains = ac.chains;
    rep.adapted_triangular = ac.triangular;
    let (b2p, w) = companion_from(&x.pair, &basis);
    let b1 = &x.pair.b1;
    rep.companion_commutes = b1.commutator(&b2p).is_zero();
    let mut rng = ChaCha8Rng::seed_from_u64(inst.seed ^ 0x5EED);
    for _ in 0..nilpotent_samples {
        let (a, b) = (sample_rational(&mut rng, false), sample_rational(&mut rng, false));
        if x.pair.b2.scale(&a).add(&b2p.scale(&b)).is_nilpotent() {
            rep.companion_nilpotent_passed += 1;
        }
    }
    rep.companion_cyclic = is_cyclic(b1, &b2p, std::slice::from_ref(&w));

    rep.path_start_is_input = deformation_at(x, &b2p, &w, &q(0)) == *x;
    let end = deformation_at(x, &b2p, &w, &q(1));
    rep.path_end_first_vector_cyclic = is_cyclic(&end.pair.b1, &end.pair.b2, &end.vectors[..1]);
    let mut all_ok = true;
    for _ in 0..path_samples {
        let t = sample_rational(&mut rng, true);
        let pt = deformation_at(x, &b2p, &w, &t);
        all_ok &= pt.pair.b1.commutator(&pt.pair.b2).is_zero() && pt.pair.b2.is_nilpotent();
        if !pt.is_stable() {
            rep.path_generic_failures.push(fmt_q(&t));
        }
    }
    rep.path_samples_commuting_nilpotent = all_ok;

    let (g, g_inv) = random_unimodular(x.pair.dim(), &mut rng);
    let moved = x.pair.conjugate(&g, &g_inv);
    let moved_vectors: Vec<Vector> = x.vectors.iter().map(|v| g.mul_vec(v)).collect();
    rep.gl_invariant = is_cyclic(&moved.b1, &moved.b2, &moved_vectors) == rep.input_in_u_r;
    if check_stabilizer {
        rep.stabilizer_dim = Some(stabilizer_dimension(x));
    }
    let n = x.pair.dim() as u32;
    let r = x.vectors.len() as u32;
    rep.dimension_count = dim_punctual_quot(r, n).is_ok_and(|dq| dq == ((r as i64 - 1) * n as i64 + (n as i64 - 1)));
    rep
}

/// Summary of a seeded batch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub instances: usize,
    pub max_dim: u32,
    pub rank: Option<u32>,
    pub failures: Vec<InstanceReport>,
    pub generic_path_failures: usize,
    pub stabilizer_checks: usize,
    pub max_dim_seen: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `instances` seeded instances. With `rank = None` each instance
/// draws its rank from `1..=3`. The stabilizer check runs on the first
/// `stabilizer_checks` instances.
pub fn run_suite(
    instances: usize,
    seed: u64,
    max_dim: u32,
    rank: Option<u32>,
    stabilizer_checks: usize,
    mode: Mode,
) -> Result<SuiteReport> {
    let ids: Vec<usize> = (0..instances).collect();
    let reports = par::map(mode, &ids, |&k| {
        let r = rank.unwrap_or_else(|| 1 + (instance_seed(seed, k) % 3) as u32);
        random_instance(k, seed, max_dim, r).map(|inst| check_instance(&inst, 20, 10, k < stabilizer_checks))
    });
    let mut out = SuiteReport {
        seed,
        instances,
        max_dim,
        rank,
        failures: Vec::new(),
        generic_path_failures: 0,
        stabilizer_checks: stabilizer_checks.min(instances),
        max_dim_seen: 0,
    };
    for rep in reports {
        let rep = rep?;
        out.generic_path_failures += rep.path_generic_failures.len();
        out.max_dim_seen = out.max_dim_seen.max(rep.dim);
        if !rep.passed() {
            out.failures.push(rep);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn staircase_examples() {
        let one = staircase_pair(&p(&[1]), false, 0).unwrap();
        assert!(one.b1().is_zero() && one.b2().is_zero());
        let row = staircase_pair(&p(&[4]), false, 0).unwrap();
        assert!(row.b2().is_zero());
        assert_eq!(row.b1().nilpotency_index(), Some(4));
        let conj = staircase_pair(&p(&[2, 1]), true, 42).unwrap();
        assert!(NilpotentPair::new(conj.b1().clone(), conj.b2().clone()).is_ok());
        assert_eq!(conj.dim(), 3);
    }

    #[test]
    fn rejects_bad_pairs() {
        let a = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let b = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        assert!(NilpotentPair::new(a.clone(), b).is_err());
        assert!(NilpotentPair::new(Matrix::identity(2), Matrix::zeros(2, 2)).is_err());
        assert!(NilpotentPair::new(a, Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn zero_pair_adapted_basis() {
        let pair = NilpotentPair::new(Matrix::zeros(3, 3), Matrix::zeros(3, 3)).unwrap();
        let basis = adapted_basis(&pair).unwrap();
        assert_eq!(basis.mu, p(&[1, 1, 1]));
        let c = check_adapted(&pair, &basis);
        assert!(c.chains && c.triangular);
    }

    #[test]
    fn single_block_with_polynomial_b2() {
        let row = staircase_pair(&p(&[4]), false, 0).unwrap();
        let b1 = row.b1().clone();
        let b2 = b1.mul(&b1).add(&b1.pow(3).scale(&q(3)));
        let pair = NilpotentPair::new(b1, b2).unwrap();
        let basis = adapted_basis(&pair).unwrap();
        assert_eq!(basis.mu, p(&[4]));
        let c = check_adapted(&pair, &basis);
        assert!(c.chains && c.triangular);
        let (b2p, w) = companion(&pair).unwrap();
        assert!(b2p.is_zero());
        assert!(is_cyclic(pair.b1(), &b2p, &[w]));
    }

    #[test]
    fn cyclicity_examples() {
        let one = staircase_pair(&p(&[1]), false, 0).unwrap();
        assert!(is_cyclic(one.b1(), one.b2(), &[vec![q(3)]]));
        let z = Matrix::zeros(2, 2);
        assert!(!is_cyclic(&z, &z, &[vec![q(1), q(0)]]));
        assert!(is_cyclic(&z, &z, &[vec![q(1), q(0)], vec![q(0), q(1)]]));
    }

    #[test]
    fn companion_on_conjugated_square() {
        let pair = staircase_pair(&p(&[2, 2]), true, 5).unwrap();
        let basis = adapted_basis(&pair).unwrap();
        let c = check_adapted(&pair, &basis);
        assert!(c.chains && c.triangular);
        let (b2p, w) = companion(&pair).unwrap();
        assert!(pair.b1().commutator(&b2p).is_zero());
        assert!(pair.b2().add(&b2p).is_nilpotent());
        assert!(is_cyclic(pair.b1(), &b2p, &[w]));
    }

    #[test]
    fn deformation_endpoints() {
        let inst = random_instance(3, 11, 6, 2).unwrap();
        let x = &inst.point;
        assert_eq!(deformation_path(x, &q(0)).unwrap(), *x);
        let end = deformation_path(x, &q(1)).unwrap();
        assert!(is_cyclic(&end.pair.b1, &end.pair.b2, &end.vectors[..1]));
    }

    #[test]
    fn stabilizer_trivial_on_cyclic_tuple() {
        let inst = random_instance(0, 1, 5, 1).unwrap();
        assert!(inst.point.is_stable());
        assert_eq!(stabilizer_dimension(&inst.point), 0);
        let z = NilpotentPair::new(Matrix::zeros(2, 2), Matrix::zeros(2, 2)).unwrap();
        let pt = QuotPoint::new(z, vec![vec![q(1), q(0)]]).unwrap();
        assert_eq!(stabilizer_dimension(&pt), 2);
    }

    #[test]
    fn small_suite_passes() {
        let rep = run_suite(12, 7, 6, None, 4, Mode::Sequential).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures.first());
    }

    #[test]
    fn json_shape() {
        let pair = staircase_pair(&p(&[2]), false, 0).unwrap();
        let pt = QuotPoint::new(pair, vec![vec![q(1), qf_half()]]).unwrap();
        let j = pt.to_json();
        assert_eq!(j["dim"], 2);
        assert_eq!(j["B1"][1][0], "1");
        assert_eq!(j["vectors"][0][1], "1/2");
    }

    fn qf_half() -> Q {
        crate::rational::qf(1, 2)
    }
}
