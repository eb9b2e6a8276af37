use moduli_core::fock::*;
use moduli_core::par::Mode;
use moduli_core::rational::q;
use moduli_core::series::goettsche_product;
use proptest::prelude::*;

fn data() -> Vec<SurfaceDatum> {
    vec![SurfaceDatum::p2(), SurfaceDatum::k3(), SurfaceDatum::abelian()]
}

fn generators(s: &SurfaceDatum, max: i32) -> Vec<Generator> {
    (1..=max)
        .flat_map(|i| [i, -i])
        .flat_map(|index| (0..s.class_count()).map(move |class| Generator { index, class }))
        .collect()
}

fn parity(s: &SurfaceDatum, g: Generator) -> bool {
    s.is_odd(g.class)
}

#[test]
fn relations_on_small_energies() {
    let cases = [(SurfaceDatum::p2(), 4), (SurfaceDatum::abelian(), 3), (SurfaceDatum::k3(), 2)];
    for (s, e) in cases {
        let rep = check_relations(&s, e, Normalization::Standard, Mode::Sequential).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures.first());
        assert!(rep.evaluated > 0);
    }
    let ab = check_relations(&SurfaceDatum::abelian(), 2, Normalization::Standard, Mode::Sequential).unwrap();
    assert!(ab.anticommutator_checks > 0);
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let s = SurfaceDatum::abelian();
    let a = check_relations(&s, 2, Normalization::Standard, Mode::Sequential).unwrap();
    let b = check_relations(&s, 2, Normalization::Standard, Mode::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn degenerate_pairing_gives_commuting_generators() {
    let zero = vec![vec![q(0); 3]; 3];
    let s = SurfaceDatum::new(vec!["e".into(), "h".into(), "pt".into()], vec![0, 2, 4], zero).unwrap();
    assert!(pairing_is_degenerate(&s));
    let rep = check_relations(&s, 3, Normalization::Standard, Mode::Sequential).unwrap();
    assert!(rep.passed());
}

#[test]
fn rank_normalized_bracket() {
    // [P_1(pt), P_{-1}(e)] = -2 on the vacuum for rank 2
    let s = SurfaceDatum::p2();
    let rep = check_relations(&s, 3, Normalization::Rank(2), Mode::Sequential).unwrap();
    assert!(rep.passed());
    assert_eq!(Normalization::Rank(2).creation_factor(1), q(-2));
    assert_eq!(Normalization::Rank(3).creation_factor(1), q(3));
}

#[test]
fn characters_match_products_to_q8() {
    for s in data() {
        assert_eq!(character(&s, 9, 1), goettsche_product(&s.betti(), 9));
    }
    let doubled = character(&SurfaceDatum::p2(), 5, 2);
    let g = goettsche_product(&SurfaceDatum::p2().betti(), 5);
    assert_eq!(doubled, g.add(&g));
}

#[test]
fn basis_size_matches_character_at_one() {
    for s in data() {
        let total: moduli_core::Q = character(&s, 4, 1).at_t_one().coeffs().values().sum();
        assert_eq!(q(basis_states(&s, 3).len() as i64), total);
    }
}

#[test]
fn constants_for_small_ranks() {
    for r in 1..=5 {
        for pairing in 1..=3 {
            let cs = recover_constants(r, pairing, 8).unwrap();
            for (k, c) in cs.iter().enumerate() {
                assert_eq!(*c, expected_constant(r, k as u32 + 1), "r = {r}, n = {}", k + 1);
            }
        }
    }
    assert_eq!(recover_constants(2, 1, 1).unwrap(), vec![q(-2)]);
    assert_eq!(recover_constants(1, 1, 3).unwrap(), vec![q(1), q(-2), q(3)]);
}

#[test]
fn annihilation_is_adjoint_to_creation() {
    for (s, e) in [(SurfaceDatum::p2(), 3), (SurfaceDatum::abelian(), 3), (SurfaceDatum::k3(), 2)] {
        let states = basis_states(&s, e);
        for x in &states {
            for y in &states {
                if x.energy() + 1 != y.energy() && x.energy() + 2 != y.energy() {
                    continue;
                }
                let i = y.energy() - x.energy();
                for alpha in 0..s.class_count() {
                    let cx = create(&s, i, alpha, &FockVector::basis(x.clone()));
                    let ay = annihilate(&s, i, alpha, &FockVector::basis(y.clone()));
                    let lhs = wick_form_vectors(&s, &cx, &FockVector::basis(y.clone()));
                    let rhs = wick_form_vectors(&s, &FockVector::basis(x.clone()), &ay);
                    assert_eq!(lhs, rhs, "{} vs {}", x.render(&s), y.render(&s));
                }
            }
        }
    }
}

/// `[a, X] v` for `X = [b, c]`, the inner bracket taken as an operator.
fn outer(s: &SurfaceDatum, a: Generator, b: Generator, c: Generator, v: &FockVector) -> FockVector {
    let inner = |w: &FockVector| graded_commutator(s, b, c, w);
    let x_odd = parity(s, b) ^ parity(s, c);
    let first = apply(s, a, &inner(v));
    let second = inner(&apply(s, a, v));
    if parity(s, a) && x_odd {
        first.add(&second)
    } else {
        first.sub(&second)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn super_jacobi(which in 0usize..3, ia in 0usize..64, ib in 0usize..64, ic in 0usize..64, is in 0usize..64) {
        let s = &data()[which];
        let gens = generators(s, 2);
        let (a, b, c) = (gens[ia % gens.len()], gens[ib % gens.len()], gens[ic % gens.len()]);
        let states = basis_states(s, 2);
        let v = FockVector::basis(states[is % states.len()].clone());
        // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
        let lhs = outer(s, a, b, c, &v);
        // [a,b] is central, so [[a,b],c] = 0
        let rhs = outer(s, b, a, c, &v);
        let sign_odd = parity(s, a) && parity(s, b);
        let rhs = if sign_odd { rhs.scale(&q(-1)) } else { rhs };
        prop_assert_eq!(lhs, rhs);
    }
}
