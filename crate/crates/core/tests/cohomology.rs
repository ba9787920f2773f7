use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use solvquot::cohomology::*;
use solvquot::counting::{epi_maps, CountConfig};
use solvquot::groups::{builtin_group, ExtensionTower};
use solvquot::presentations::{builtin_presentation, FreeGroupRingElement, Presentation, Word};

fn g(spec: &str) -> ExtensionTower {
    builtin_group(spec).unwrap()
}

fn src(spec: &str) -> Presentation {
    builtin_presentation(spec).unwrap()
}

fn top_epis(p: &Presentation, tw: &ExtensionTower) -> Vec<Vec<u32>> {
    epi_maps(p, tw, tw.depth() - 1, &CountConfig::default()).unwrap()
}

fn scalar(target: &AbelianTarget, c: &[u64]) -> EndoMatrix {
    let d = target.dim();
    let mut m = EndoMatrix::zero(d);
    for i in 0..d {
        m.entries[i * d + i] = c[i];
    }
    m
}

/// Every tuple in A^n, as the solver's column vector.
fn all_tuples(target: &AbelianTarget, n: usize) -> Vec<Vec<u64>> {
    let mods: Vec<u64> = (0..n).flat_map(|_| (0..target.dim()).map(|i| target.modulus(i))).collect();
    let mut out = vec![vec![]];
    for m in mods {
        out = out.into_iter().flat_map(|v| (0..m).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

#[test]
fn ring_element_evaluation() {
    let t = AbelianTarget::elementary(3, 1);
    let minus = EndoMatrix { dim: 1, entries: vec![2] };
    let act = TwistedAction::new(t.clone(), vec![minus.clone(), minus]).unwrap();
    assert_eq!(evaluate_ring_element(&FreeGroupRingElement::one(), &act), EndoMatrix::identity(1));
    // 1 − x y^2 x^-1 with both generators acting by −1
    let xyx = Word::from_signed(&[1, 2, 2, -1]);
    let e = FreeGroupRingElement::one().sub(&FreeGroupRingElement::from_word(xyx));
    assert!(evaluate_ring_element(&e, &act).is_zero());
    let triv = TwistedAction::new(t, vec![EndoMatrix::identity(1); 2]).unwrap();
    let x_minus_1 = FreeGroupRingElement::from_word(Word::gen(1)).sub(&FreeGroupRingElement::one());
    assert!(evaluate_ring_element(&x_minus_1, &triv).is_zero());
}

#[test]
fn solution_counts() {
    let sys = CocycleSystem {
        target: AbelianTarget::elementary(3, 2),
        relators: 0,
        generators: 3,
        matrix: vec![],
        rhs: vec![],
    };
    assert_eq!(homogeneous_count(&sys), BTreeMap::from([(3, 6)]));
    // twisted Jacobian of the Klein bottle group over S_3 → Aut(Z_2²)
    let sys = CocycleSystem {
        target: AbelianTarget::elementary(2, 2),
        relators: 1,
        generators: 2,
        matrix: vec![vec![1, 0, 0, 1], vec![0, 0, 1, 1]],
        rhs: vec![0, 0],
    };
    assert_eq!(homogeneous_count(&sys), BTreeMap::from([(2, 2)]));
    // 2a = 0 over Z_4
    let sys = CocycleSystem {
        target: AbelianTarget::cyclic(4),
        relators: 1,
        generators: 1,
        matrix: vec![vec![2]],
        rhs: vec![0],
    };
    assert_eq!(solve(&sys).homogeneous_count(), BigInt::from(2));
    assert_eq!(solve(&sys).solutions().len(), 2);
}

#[test]
fn klein_bottle_does_not_lift_to_symmetric_four() {
    let k = src("klein");
    let s4 = g("S(4)");
    let top = s4.depth() - 1;
    let rhos = top_epis(&k, &s4);
    assert_eq!(rhos.len(), 6);
    for rho in rhos {
        let r = cohomology_report(&k, s4.level_table(top), &rho, s4.layer(top)).unwrap();
        assert_eq!((r.z1.as_str(), r.h1_dim[&2]), ("4", 0));
    }
}

#[test]
fn free_sources_give_empty_systems() {
    let s4 = g("S(4)");
    let top = s4.depth() - 1;
    let f2 = src("free(2)");
    for rho in top_epis(&f2, &s4) {
        let sys = build_system(&f2, s4.level_table(top), &rho, s4.layer(top), SignConvention::Twisted).unwrap();
        assert!(sys.matrix.is_empty());
        assert_eq!(epsilon_and_witness(&sys), (true, Some(vec![0; 4])));
    }
}

#[test]
fn split_layers_have_zero_rhs() {
    let s4 = g("S(4)");
    let top = s4.depth() - 1;
    let b3 = src("braid(3)");
    for rho in top_epis(&b3, &s4) {
        let sys = build_system(&b3, s4.level_table(top), &rho, s4.layer(top), SignConvention::Twisted).unwrap();
        assert!(sys.is_homogeneous());
        assert_eq!(epsilon_and_witness(&sys), (true, Some(vec![0; 4])));
    }
}

#[test]
fn baumslag_solitar_obstructions() {
    let bs = src("bs(1,3)");
    for (spec, expected) in [("D(8)", 2), ("Q(8)", 6)] {
        let tw = g(spec);
        let top = tw.depth() - 1;
        let rhos = top_epis(&bs, &tw);
        assert_eq!(rhos.len(), 6);
        let lifting = rhos
            .iter()
            .filter(|rho| {
                let sys = build_system(&bs, tw.level_table(top), rho, tw.layer(top), SignConvention::Twisted).unwrap();
                epsilon_and_witness(&sys).0
            })
            .count();
        assert_eq!(lifting, expected, "{spec}");
    }
}

#[test]
fn non_homomorphisms_are_rejected() {
    let s4 = g("S(4)");
    let top = s4.depth() - 1;
    let b3 = src("braid(3)");
    // y ↦ 1 leaves the relator as x^-2, so x ↦ a 3-cycle is not a homomorphism
    let base = s4.level_table(top);
    let t = (1..base.order() as u32).find(|&x| base.element_order(x) == 3).unwrap();
    let err = build_system(&b3, base, &[t, 0], s4.layer(top), SignConvention::Twisted).unwrap_err();
    assert_eq!(err, solvquot::Error::NotHomomorphism);
}

#[test]
fn first_cohomology_dimensions() {
    let s4 = g("S(4)");
    let top = s4.depth() - 1;
    for n in 2..=3 {
        let p = src(&format!("free({n})"));
        for rho in top_epis(&p, &s4) {
            assert_eq!(h1_dim(&p, s4.level_table(top), &rho, s4.layer(top)).unwrap(), 2 * n as u64 - 2);
        }
    }
    let b3 = src("braid(3)");
    for rho in top_epis(&b3, &s4) {
        assert_eq!(h1_dim(&b3, s4.level_table(top), &rho, s4.layer(top)).unwrap(), 1);
    }
    let z2 = g("Z(2)");
    assert_eq!(h1_dim(&src("free(2)"), z2.level_table(0), &[0, 0], z2.layer(0)).unwrap(), 2);
}

#[test]
fn finite_source_cocycles() {
    let s4 = g("S(4)");
    let top = s4.depth() - 1;
    let layer = s4.layer(top);
    let sigma = |b: u32| layer.sigma(b).to_vec();
    assert_eq!(finite_source_z1(s4.level_table(top), &sigma, 2, 2, 1 << 20).unwrap(), 4);
    let s3 = g("S(3)");
    let layer = s3.layer(1);
    let sigma = |b: u32| layer.sigma(b).to_vec();
    assert_eq!(finite_source_z1(s3.level_table(1), &sigma, 3, 1, 1 << 20).unwrap(), 3);
    // trivial action gives Hom(B, E)
    let v = g("Z(2)^2");
    let triv = |_: u32| vec![1];
    assert_eq!(finite_source_z1(v.table(), &triv, 2, 1, 1 << 20).unwrap(), 4);
    assert_eq!(finite_source_z1(s3.table(), &triv, 2, 1, 1 << 20).unwrap(), 2);
    assert_eq!(finite_source_z1(s3.table(), &triv, 3, 1, 1 << 20).unwrap(), 1);
    assert!(finite_source_z1(s4.table(), &triv, 3, 2, 10).unwrap_err().is_cap());
}

#[test]
fn coboundaries_and_cohomology_multiply() {
    let sources = ["free(2)", "bs(1,3)", "bs(2,4)", "klein", "surface(2)", "braid(3)", "braid(4)", "parafree(1,3)"];
    let targets = ["S(3)", "D(8)", "Q(8)", "D(12)", "Dstar(12)", "A(4)", "S(4)", "Z(6)", "D(10)"];
    for s in sources {
        let p = src(s);
        for t in targets {
            let tw = g(t);
            let top = tw.depth() - 1;
            let layer = tw.layer(top);
            for rho in top_epis(&p, &tw) {
                let r = cohomology_report(&p, tw.level_table(top), &rho, layer).unwrap();
                let q = layer.q as u64;
                let b1: BigInt = r.b1.parse().unwrap();
                let z1: BigInt = r.z1.parse().unwrap();
                assert_eq!(z1, &b1 * BigInt::from(q).pow(r.h1_dim[&q] as u32), "{s} {t}");
                let zeta = if layer.acts_trivially() { 0 } else { 1 };
                assert_eq!(b1, BigInt::from(layer.module_order()).pow(zeta), "{s} {t}");
            }
        }
    }
}

#[test]
fn counts_multiply_over_primes() {
    let k = src("klein");
    let bs = src("bs(2,5)");
    for n in [6u64, 12] {
        let full = AbelianTarget::cyclic(n);
        // x acts by −1, y trivially
        let minus: Vec<u64> = (0..full.dim()).map(|i| full.modulus(i) - 1).collect();
        let ones = vec![1; full.dim()];
        for p in [&k, &bs] {
            let act = TwistedAction::new(full.clone(), vec![scalar(&full, &minus), scalar(&full, &ones)]).unwrap();
            let sys = twisted_jacobian(p, &act);
            let total = solve(&sys).homogeneous_count();
            let mut product = BigInt::from(1);
            for &(q, r) in &full.factors {
                let part = AbelianTarget::new(vec![(q, r)]).unwrap();
                let m = part.modulus(0);
                let act = TwistedAction::new(part.clone(), vec![scalar(&part, &[m - 1]), scalar(&part, &[1])]).unwrap();
                product *= solve(&twisted_jacobian(p, &act)).homogeneous_count();
            }
            assert_eq!(total, product);
            let brute = all_tuples(&full, 2).iter().filter(|a| sys.is_solution(a)).count();
            assert_eq!(total, BigInt::from(brute));
        }
    }
}

/// A random well-defined system over a product of cyclic groups: the
/// coefficient from a Z_a coordinate into a Z_b coordinate is a multiple of
/// b / gcd(a, b).
fn arb_system() -> impl Strategy<Value = CocycleSystem> {
    let factor = prop::sample::select(vec![(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]);
    (prop::collection::vec(factor, 1..=3), 1..=3usize, 0..=3usize).prop_flat_map(|(factors, n, m)| {
        let target = AbelianTarget::new(factors).unwrap();
        let d = target.dim();
        let cells = m * d * n * d;
        (
            Just(target),
            Just(n),
            Just(m),
            prop::collection::vec(0u64..1000, cells),
            prop::collection::vec(0u64..1000, m * d),
        )
    })
    .prop_filter("at most 6561 tuples", |(t, n, ..)| t.order().pow(*n as u32) <= 6561)
    .prop_map(|(target, n, m, raw, rhs_raw)| {
        let d = target.dim();
        let gcd = |mut a: u64, mut b: u64| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let mut matrix = vec![vec![0u64; n * d]; m * d];
        for (row, line) in matrix.iter_mut().enumerate() {
            let mr = target.modulus(row % d);
            for (col, x) in line.iter_mut().enumerate() {
                let mc = target.modulus(col % d);
                let step = mr / gcd(mr, mc);
                *x = raw[row * n * d + col] * step % mr;
            }
        }
        let rhs = (0..m * d).map(|row| rhs_raw[row] % target.modulus(row % d)).collect();
        CocycleSystem { target, relators: m, generators: n, matrix, rhs }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_matches_enumeration(sys in arb_system()) {
        let tuples = all_tuples(&sys.target, sys.generators);
        let hom = sys.homogeneous();
        let zero_count = tuples.iter().filter(|a| hom.is_solution(a)).count();
        let solved = solve(&sys);
        prop_assert_eq!(solved.homogeneous_count(), BigInt::from(zero_count));
        let mut brute: Vec<Vec<u64>> = tuples.into_iter().filter(|a| sys.is_solution(a)).collect();
        prop_assert_eq!(solved.solvable(), !brute.is_empty());
        let mut found = solved.solutions();
        found.sort();
        brute.sort();
        prop_assert_eq!(found, brute);
        if let Some(w) = solved.witness() {
            prop_assert!(sys.is_solution(&w));
        }
    }
}
