//! Box-ring multiplication against Jacobi-Trudi Schur polynomials
//! decomposed by leading monomials.

use moduli_core::partitions::enumerate_partitions;
use moduli_core::poly::MultiPoly;
use moduli_core::rational::q;
use moduli_core::schubert::*;
use moduli_core::{Partition, Q};
use num::{BigInt, One, Signed, Zero};
use std::collections::BTreeMap;

/// `h_k(x_1..x_n)` by summing all monomials of degree `k`.
fn complete(k: i64, n: usize) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero(n);
    }
    let mut out = MultiPoly::zero(n);
    fn rec(k: u32, n: usize, pos: usize, cur: &mut Vec<u32>, out: &mut MultiPoly) {
        if pos == n - 1 {
            cur[pos] = k;
            out.add_term(cur.clone(), &q(1));
            return;
        }
        for e in 0..=k {
            cur[pos] = e;
            rec(k - e, n, pos + 1, cur, out);
        }
        cur[pos] = 0;
    }
    rec(k as u32, n, 0, &mut vec![0; n], &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<MultiPoly>], n: usize) -> MultiPoly {
    let k = m.len();
    if k == 0 {
        return MultiPoly::one(n);
    }
    let mut out = MultiPoly::zero(n);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].mul(&det(&minor, n));
        out = out.add(&if j % 2 == 0 { term } else { term.scale(&q(-1)) });
    }
    out
}

fn jacobi_trudi(lambda: &Partition, n: usize) -> MultiPoly {
    let l = lambda.len();
    let m: Vec<Vec<MultiPoly>> = (0..l)
        .map(|i| (0..l).map(|j| complete(lambda.part(i) as i64 - i as i64 + j as i64, n)).collect())
        .collect();
    det(&m, n)
}

/// Repeatedly strips the lexicographically largest monomial.
fn decompose(mut p: MultiPoly, n: usize) -> BTreeMap<Partition, Q> {
    let mut out = BTreeMap::new();
    while let Some((exp, c)) = p.terms().iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        assert!(exp.windows(2).all(|w| w[0] >= w[1]), "leading monomial must be dominant");
        let lambda = Partition::new(exp);
        p = p.add(&jacobi_trudi(&lambda, n).scale(&-c.clone()));
        out.insert(lambda, c);
    }
    out
}

fn oracle_product(r: u32, n: u32, a: &Partition, b: &Partition) -> BTreeMap<Partition, BigInt> {
    let nv = n as usize;
    let prod = jacobi_trudi(a, nv).mul(&jacobi_trudi(b, nv));
    decompose(prod, nv)
        .into_iter()
        .filter(|(l, _)| l.fits_box(n, r - n))
        .map(|(l, c)| (l, c.to_integer()))
        .collect()
}

#[test]
fn jacobi_trudi_agrees_with_tableaux() {
    for n in 1..=3usize {
        for w in 0..=4 {
            for l in enumerate_partitions(w) {
                assert_eq!(jacobi_trudi(&l, n), schur_polynomial(&l, n), "{l} in {n} variables");
            }
        }
    }
}

#[test]
fn products_match_oracle_up_to_rank_five() {
    for r in 1..=5 {
        for n in 1..r {
            let basis = box_partitions(n, r - n);
            for a in &basis {
                for b in &basis {
                    let got = schur_mult(&BoxClass::schur(r, n, a.clone()), &BoxClass::schur(r, n, b.clone())).unwrap();
                    assert_eq!(got.terms(), &oracle_product(r, n, a, b), "Gr({n} of {r}): {a} * {b}");
                }
            }
        }
    }
}

#[test]
fn pieri_for_one_box() {
    let (r, n) = (5, 2);
    for lambda in box_partitions(n, r - n) {
        let got = schur_mult(&BoxClass::schur(r, n, Partition::row(1)), &BoxClass::schur(r, n, lambda.clone())).unwrap();
        let mut want = BoxClass::zero(r, n);
        for k in 0..=lambda.len() {
            let mut parts = lambda.parts().to_vec();
            if k == parts.len() {
                parts.push(1);
            } else {
                parts[k] += 1;
            }
            if parts.windows(2).all(|w| w[0] >= w[1]) {
                want = want.add(&BoxClass::schur(r, n, Partition::new(parts))).unwrap();
            }
        }
        assert_eq!(got, want, "s_1 * s_{lambda}");
    }
}

#[test]
fn gr24_and_p1_examples() {
    let s1 = BoxClass::schur(4, 2, Partition::row(1));
    let sq = schur_mult(&s1, &s1).unwrap();
    let want = BoxClass::schur(4, 2, Partition::row(2)).add(&BoxClass::schur(4, 2, Partition::column(2))).unwrap();
    assert_eq!(sq, want);
    let h = BoxClass::schur(2, 1, Partition::row(1));
    assert!(schur_mult(&h, &h).unwrap().is_zero());
}

#[test]
fn whitney_relation_and_vanishing() {
    for r in 1..=5 {
        for n in 0..=r {
            let cq = chern_q(r, n).unwrap();
            let cs = chern_s(r, n).unwrap();
            assert_eq!(schur_mult(&cq.total, &cs.total).unwrap(), BoxClass::one(r, n));
            for j in (r - n + 1)..=n * (r - n) {
                assert!(cs.c(j).is_zero(), "c_{j}(S) on Gr({n} of {r})");
            }
        }
    }
}

#[test]
fn tensor_examples() {
    let cq = chern_q(2, 1).unwrap();
    assert_eq!(chern_tensor(&cq, &cq.dual()).unwrap().total, BoxClass::one(2, 1));
    let triv = ChernVector::trivial(4, 2, 1);
    let q42 = chern_q(4, 2).unwrap();
    assert_eq!(chern_tensor(&q42, &triv).unwrap().total, q42.total);
    let v = chern_tensor(&chern_q(3, 1).unwrap().dual(), &chern_s(3, 1).unwrap()).unwrap();
    assert_eq!(v.top().integrate(), BigInt::from(3));
}

#[test]
fn euler_characteristic_of_grassmannians() {
    for r in 1..=5 {
        for n in 1..=r {
            let t = chern_tensor(&chern_s(r, n).unwrap().dual(), &chern_q(r, n).unwrap()).unwrap();
            let chi = t.top().integrate();
            let binom = (0..n).fold(BigInt::one(), |acc, k| acc * (r - k) / (k + 1));
            assert_eq!(chi, binom, "Gr({n} of {r})");
        }
    }
}

#[test]
fn excess_chain_all_cells() {
    for r in 1..=5 {
        for n in 1..=r {
            let v = excess_bundle(r, n).unwrap();
            let direct = chern_tensor(&chern_q(r, n).unwrap().dual(), &chern_s(r, n).unwrap()).unwrap();
            assert_eq!(v.classes(), direct.classes());
            let top = v.top().integrate();
            assert_eq!(top, expected_top(r, n));
            assert_eq!(top.abs(), (0..n).fold(BigInt::one(), |acc, k| acc * (r - k) / (k + 1)));
        }
    }
    assert_eq!(excess_bundle(2, 1).unwrap().top().integrate(), BigInt::from(-2));
    assert_eq!(excess_bundle(4, 2).unwrap().top().integrate(), BigInt::from(6));
    assert!(excess_bundle(3, 0).is_err());
    assert!(excess_bundle(2, 3).is_err());
}

#[test]
fn intersection_series_closed_form() {
    for r in 1..=5 {
        for pairing in 1..=3 {
            assert_eq!(intersection_series(r, pairing).unwrap(), intersection_closed_form(r, pairing));
        }
    }
    let s = intersection_series(2, 1).unwrap();
    assert_eq!((s.coeff(0), s.coeff(2), s.coeff(4)), (q(1), q(-2), q(1)));
    let s = intersection_series(3, 1).unwrap();
    assert_eq!((s.coeff(2), s.coeff(4), s.coeff(6)), (q(3), q(3), q(1)));
    assert!(s.coeff(8).is_zero());
}
