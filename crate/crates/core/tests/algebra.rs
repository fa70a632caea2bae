use mmm_core::algebra::serial::{basis_json, polynomial_from_json, polynomial_json};
use mmm_core::algebra::{
    basis, convert_barred_unbarred, e_monomials, enumerate_basis, hilbert_count, make_generator, rat, weighted_partitions,
    Bidegree, Direction, Generator, GeneratorKind, Monomial, Polynomial,
};
use mmm_core::Error;
use proptest::prelude::*;

fn m(i: u32, j: u32) -> Polynomial {
    Polynomial::gen(Generator::mbar(i, j).unwrap())
}

fn e(i: u32) -> Polynomial {
    Polynomial::gen(Generator::E(i))
}

#[test]
fn generators() {
    let g = make_generator(GeneratorKind::Twisted, &[0, 2]).unwrap();
    assert_eq!(g.bidegree(), Bidegree::new(0, 2));
    assert_eq!(make_generator(GeneratorKind::Classical, &[3]).unwrap().bidegree(), Bidegree::new(6, 0));
    let err = make_generator(GeneratorKind::Twisted, &[0, 1]).unwrap_err();
    assert!(err.to_string().contains("inadmissible generator"), "{err}");
    assert!(matches!(make_generator(GeneratorKind::Classical, &[0]), Err(Error::ClassicalIndexZero)));
    assert!(matches!(make_generator(GeneratorKind::Twisted, &[-1, 3]), Err(Error::NegativeIndex(-1))));
}

#[test]
fn products() {
    let sq = m(1, 1) * m(1, 1);
    assert_eq!(sq.bidegree(), Some(Bidegree::new(2, 2)));
    assert_eq!(sq.len(), 1);
    assert!(((m(0, 2) + e(1)) * Polynomial::zero()).is_zero());
    assert_eq!((e(1) * m(0, 2)).bidegree(), Some(Bidegree::new(2, 2)));
}

fn basis_polys(b: Bidegree) -> Vec<Polynomial> {
    enumerate_basis(b).monomials().iter().map(|x| Polynomial::monomial(x.clone(), rat(1, 1))).collect()
}

fn same_set(mut a: Vec<Polynomial>, mut b: Vec<Polynomial>) -> bool {
    a.sort_by_key(|p| p.to_expr());
    b.sort_by_key(|p| p.to_expr());
    a == b
}

#[test]
fn small_bases() {
    assert!(same_set(basis_polys(Bidegree::new(1, 3)), vec![m(0, 3), m(0, 2) * m(1, 1)]));
    assert!(same_set(basis_polys(Bidegree::new(2, 2)), vec![m(1, 2), e(1) * m(0, 2), m(1, 1).pow(2)]));
    // degree and weight always have the same parity
    assert!(enumerate_basis(Bidegree::new(2, 3)).is_empty());
    assert_eq!(basis_polys(Bidegree::ZERO), vec![Polynomial::one()]);
    assert_eq!(basis_polys(Bidegree::new(0, 4)), vec![m(0, 2).pow(2)]);
    assert_eq!(hilbert_count(Bidegree::new(1, 3)), 2);
    assert_eq!(hilbert_count(Bidegree::ZERO), 1);
    assert_eq!(hilbert_count(Bidegree::new(2, 2)), 3);
}

#[test]
fn canonical_order() {
    // twisted classes by (j, i), e before twisted, lex on exponent vectors
    let t = basis(Bidegree::new(1, 3));
    assert_eq!(t.get(0), &Monomial::gen(Generator::M(0, 3)));
    let v = t.to_vector(&(m(0, 3) - (m(0, 2) * m(1, 1)).scale(&rat(2, 1)))).unwrap();
    assert_eq!(v, vec![(0, rat(1, 1)), (1, rat(-2, 1))]);
    assert_eq!(t.to_vector(&Polynomial::zero()).unwrap(), vec![]);
    assert!(matches!(t.to_vector(&e(1)), Err(Error::BidegreeMismatch { .. })));
    assert!(matches!(t.to_vector(&(m(0, 3) + e(1))), Err(Error::Inhomogeneous)));
    let ev: Vec<String> = e_monomials(4, None).iter().map(|x| x.to_string()).collect();
    assert_eq!(ev, ["e(2)", "e(1)^2"]);
    assert_eq!(e_monomials(8, Some(2)).len(), 3);
}

#[test]
fn barred_unbarred_examples() {
    let up = |p: &Polynomial| convert_barred_unbarred(p, Direction::ToUnbarred);
    assert_eq!(up(&m(0, 2)), m(0, 2).scale(&rat(1, 2)));
    assert_eq!(up(&m(1, 1)), -m(1, 1));
    assert_eq!(up(&e(5)), e(5));
    assert_eq!(m(0, 2).to_unbarred_expr(), "1/2*m(0,2)");
}

#[test]
fn partitions() {
    let p = weighted_partitions(2, 2, false);
    assert_eq!(p.len(), 2);
    assert!(p.contains(&vec![(1, 2)]) && p.contains(&vec![(1, 1), (1, 1)]));
    assert_eq!(weighted_partitions(1, 3, false), vec![vec![(2, 1)]]);
    assert_eq!(weighted_partitions(0, 0, false), vec![Vec::<(u32, u32)>::new()]);
    assert_eq!(weighted_partitions(2, 2, true), vec![vec![(1, 2)]]);
}

#[test]
fn hilbert_matches_enumeration() {
    for deg in 0..=20 {
        for wt in 0..=6 {
            let b = Bidegree::new(deg, wt);
            assert_eq!(enumerate_basis(b).len() as u64, hilbert_count(b), "{b}");
        }
    }
}

#[test]
fn weighted_partitions_times_e_count_the_basis() {
    // every basis monomial splits uniquely into a twisted part and an e-part
    for d in 0..=4u32 {
        for deg in 0..=12u32 {
            let n: u64 = (0..=deg)
                .map(|t| weighted_partitions(d, t, false).len() as u64 * e_monomials(deg - t, None).len() as u64)
                .sum();
            assert_eq!(n, hilbert_count(Bidegree::new(deg, d)), "({deg},{d})");
        }
    }
}

#[test]
fn serialization_is_deterministic() {
    for (deg, wt) in [(4, 2), (7, 3), (10, 4)] {
        let b = Bidegree::new(deg, wt);
        let a = serde_json::to_string(&basis_json(&enumerate_basis(b))).unwrap();
        let c = serde_json::to_string(&basis_json(&enumerate_basis(b))).unwrap();
        assert_eq!(a, c);
    }
    let p = (m(0, 2) * e(3)).scale(&rat(-3, 7)) + m(2, 1).pow(2) * e(2);
    assert_eq!(polynomial_from_json(&polynomial_json(&p)).unwrap(), p);
}

// random polynomials over a handful of generators
fn gens() -> Vec<Generator> {
    vec![Generator::E(1), Generator::E(2), Generator::E(3), Generator::M(0, 2), Generator::M(1, 1), Generator::M(2, 1), Generator::M(0, 3), Generator::M(1, 2)]
}

fn poly() -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec((0usize..8, 1u32..3), 0..3), -5i64..6, 1i64..4);
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        let g = gens();
        Polynomial::from_terms(terms.into_iter().map(|(fs, n, d)| (Monomial::from_pairs(fs.into_iter().map(|(k, x)| (g[k], x))), rat(n, d))))
    })
}

fn homogeneous() -> impl Strategy<Value = Polynomial> {
    (0u32..7, 0u32..4).prop_flat_map(|(deg, wt)| {
        let t = basis(Bidegree::new(deg, wt));
        let n = t.len();
        prop::collection::vec((0..n.max(1), -4i64..5), 0..4).prop_map(move |cs| {
            if n == 0 {
                return Polynomial::zero();
            }
            Polynomial::from_terms(cs.into_iter().map(|(k, c)| (t.get(k).clone(), rat(c, 1))))
        })
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn barred_round_trip(p in poly()) {
        let there = convert_barred_unbarred(&p, Direction::ToUnbarred);
        prop_assert_eq!(convert_barred_unbarred(&there, Direction::ToBarred), p);
    }

    #[test]
    fn products_stay_homogeneous(p in homogeneous(), q in homogeneous()) {
        let pq = &p * &q;
        if let (Some(a), Some(b)) = (p.bidegree(), q.bidegree()) {
            for (mono, _) in pq.terms() {
                prop_assert_eq!(mono.bidegree(), Bidegree::new(a.degree + b.degree, a.weight + b.weight));
            }
        }
    }

    #[test]
    fn vector_round_trip(p in homogeneous()) {
        if let Some(b) = p.bidegree() {
            let t = basis(b);
            prop_assert_eq!(t.from_vector(&t.to_vector(&p).unwrap()), p);
        }
    }
}
