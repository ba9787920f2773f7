use num_bigint::BigInt;
use proptest::prelude::*;
use solvquot::presentations::*;

fn w(letters: &[i32]) -> Word {
    Word::from_signed(letters)
}

fn ring(terms: &[(&[i32], i64)]) -> FreeGroupRingElement {
    let mut e = FreeGroupRingElement::zero();
    for (letters, c) in terms {
        e.add_term(w(letters), BigInt::from(*c));
    }
    e
}

#[test]
fn parsing_examples() {
    let p = parse_presentation("< x, y | x y^3 x^-1 y^-2 >").unwrap();
    assert_eq!((p.num_generators(), p.relators().len(), p.relators()[0].len()), (2, 1, 7));
    let p = parse_presentation("< x, y | [x, y] >").unwrap();
    assert_eq!(p.relators()[0], w(&[-1, -2, 1, 2]));
    let p = parse_presentation("< a, b | a^4, b^2, (b a)^2 >").unwrap();
    let lens: Vec<usize> = p.relators().iter().map(|r| r.len()).collect();
    assert_eq!(lens, [4, 2, 4]);
    // conjugation is v^-1 w v
    let p = parse_presentation("< x, y | x^(y) ; y >").unwrap();
    assert_eq!(p.relators()[0], w(&[-2, 1, 2]));
    let p = parse_presentation("# comment\n< x | (x x)^0 x >").unwrap();
    assert_eq!(p.relators()[0], w(&[1]));
}

#[test]
fn parse_errors_carry_positions() {
    match parse_presentation("< x, y | x z >") {
        Err(solvquot::Error::UndeclaredGenerator { name, pos }) => assert_eq!((name.as_str(), pos), ("z", 11)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_presentation("< x | x^ >"), Err(solvquot::Error::Syntax { .. })));
    assert!(matches!(parse_presentation("< x | [x x] >"), Err(solvquot::Error::Syntax { .. })));
}

#[test]
fn builtin_families() {
    let b3 = builtin_presentation("braid(3)").unwrap();
    assert_eq!(b3.relators(), &[w(&[2, 2, 2, -1, -2, -1, -2])]);
    assert_eq!(builtin_presentation("braid(6)").unwrap().relators().len(), 3);
    let pf = builtin_presentation("parafree(1,1)").unwrap();
    // x z x z^-1 x^-1 z y z^-1 y^-1
    assert_eq!((pf.num_generators(), pf.relators().len(), pf.relators()[0].len()), (3, 1, 9));
    let h = builtin_presentation("hillman_link").unwrap();
    assert_eq!((h.num_generators(), h.relators().len()), (4, 3));
    assert_eq!(builtin_presentation("braid4_split").unwrap().num_generators(), 5);
    assert!(builtin_presentation("braid(2)").is_err());
    assert!(builtin_presentation("bs(3,2)").is_err());
    assert!(builtin_presentation("surface(0)").is_err());
    assert!(matches!(builtin_presentation("torus(1)"), Err(solvquot::Error::UnknownFamily(_))));
}

#[test]
fn reduction_examples() {
    assert_eq!(w(&[1, 2, -2, 1]).free_reduce(), w(&[1, 1]));
    assert_eq!(Word::empty().free_reduce(), Word::empty());
    assert_eq!(w(&[-1, 1]).free_reduce(), Word::empty());
}

#[test]
fn fox_examples() {
    assert_eq!(fox_derivative(&w(&[1, 2]), 0), FreeGroupRingElement::one());
    // x y^m x^-1 y^-n with m = 2, n = 3
    let bs = builtin_presentation("bs(2,3)").unwrap();
    let d = fox_derivative(&bs.relators()[0], 0);
    assert_eq!(d, ring(&[(&[], 1), (&[1, 2, 2, -1], -1)]));
    assert_eq!(fox_derivative(&w(&[-1]), 0), ring(&[(&[-1], -1)]));
}

#[test]
fn parafree_jacobian() {
    // x z^m x z^-m x^-1 z^n y z^-n y^-1 with m = 1, n = 2
    let p = builtin_presentation("parafree(1,2)").unwrap();
    let j = p.symbolic_jacobian();
    assert_eq!(j.len(), 1);
    // 1 + x z − x z x z^-1 x^-1, which is 1 + x z^m − [y, z^n] modulo the relator
    let dx = ring(&[(&[], 1), (&[1, 3], 1), (&[1, 3, 1, -3, -1], -1)]);
    assert_eq!(j[0][0], dx);
    // P − P y z^-2 y^-1 with P = x z x z^-1 x^-1 z^2
    let pre = [1, 3, 1, -3, -1, 3, 3];
    let dy = ring(&[(&pre, 1), (&[1, 3, 1, -3, -1, 3, 3, 2, -3, -3, -2], -1)]);
    assert_eq!(j[0][1], dy);
    assert_eq!(j[0][0].augmentation(), BigInt::from(1));
    assert_eq!(j[0][1].augmentation(), BigInt::from(0));
    assert_eq!(j[0][2].augmentation(), BigInt::from(0));
}

#[test]
fn klein_jacobian() {
    let k = builtin_presentation("klein").unwrap();
    let j = k.symbolic_jacobian();
    assert_eq!((j.len(), j[0].len()), (1, 2));
    let aug: Vec<BigInt> = j[0].iter().map(|e| e.augmentation()).collect();
    assert_eq!(aug, [BigInt::from(2), BigInt::from(0)]);
    assert!(Presentation::free(3).symbolic_jacobian().is_empty());
}

#[test]
fn abelian_invariant_examples() {
    let f2 = abelian_invariants(&builtin_presentation("free(2)").unwrap());
    assert_eq!((f2.free_rank, f2.torsion.len()), (2, 0));
    let bs = abelian_invariants(&builtin_presentation("bs(2,4)").unwrap());
    assert_eq!((bs.free_rank, bs.torsion.clone()), (1, vec!["2".to_string()]));
    assert_eq!((bs.alpha(2), bs.beta(2), bs.alpha_below(2, 1)), (1, 1, 0));
    let s2 = abelian_invariants(&builtin_presentation("surface(2)").unwrap());
    assert_eq!((s2.free_rank, s2.torsion.len()), (4, 0));
    let k = abelian_invariants(&builtin_presentation("klein").unwrap());
    assert_eq!((k.free_rank, k.torsion.clone()), (1, vec!["2".to_string()]));
}

#[test]
fn baumslag_solitar_abelianization() {
    for n in -6i64..=6 {
        for m in 1..=n.abs() {
            let inv = abelian_invariants(&builtin_presentation(&format!("bs({m},{n})")).unwrap());
            // exponent sums (0, m - n): rank 1 and torsion Z_{|n-m|}, or rank 2 when m = n
            let (rank, torsion) = if m == n { (2, 1) } else { (1, (n - m).unsigned_abs()) };
            assert_eq!(inv.free_rank, rank, "bs({m},{n})");
            assert_eq!(inv.torsion_order(), BigInt::from(torsion), "bs({m},{n})");
        }
    }
}

fn arb_word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, prop::bool::ANY), 0..=max_len)
        .prop_map(|ls| Word(ls.into_iter().map(|(g, p)| Letter::new(g, if p { 1 } else { -1 })).collect()))
}

proptest! {
    #[test]
    fn reduction_is_idempotent(u in arb_word(3, 30)) {
        let r = u.free_reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.free_reduce(), r);
    }

    #[test]
    fn multiplication_is_associative(u in arb_word(3, 12), v in arb_word(3, 12), x in arb_word(3, 12)) {
        prop_assert_eq!(u.mul(&v).mul(&x), u.mul(&v.mul(&x)));
        prop_assert_eq!(u.mul(&Word::empty()), u.free_reduce());
        prop_assert_eq!(u.mul(&u.inverse()), Word::empty());
    }

    #[test]
    fn augmentation_is_exponent_sum(u in arb_word(3, 30), j in 0..3usize) {
        prop_assert_eq!(fox_derivative(&u, j).augmentation(), BigInt::from(u.exponent_sum(j)));
    }

    #[test]
    fn fundamental_identity(u in arb_word(3, 30)) {
        let mut lhs = FreeGroupRingElement::zero();
        for j in 0..3 {
            let xj = FreeGroupRingElement::from_word(Word::gen(j)).sub(&FreeGroupRingElement::one());
            lhs = lhs.add(&fox_derivative(&u, j).mul(&xj));
        }
        let rhs = FreeGroupRingElement::from_word(u.clone()).sub(&FreeGroupRingElement::one());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_then_parse_round_trips(rels in prop::collection::vec(arb_word(3, 15), 0..4)) {
        let names = vec!["a".to_string(), "b".to_string(), "c1".to_string()];
        let p = Presentation::new(names, rels).unwrap();
        prop_assert_eq!(parse_presentation(&p.to_dsl()).unwrap(), p);
    }
}
