use solvquot::groups::*;
use solvquot::Error;

fn g(spec: &str) -> ExtensionTower {
    builtin_group(spec).unwrap()
}

#[test]
fn dihedral_eight_relations() {
    let d8 = g("D(8)");
    assert_eq!(d8.order(), 8);
    let t = d8.table();
    // a^u b^v sits at index v + 2u
    let (a, b) = (2, 1);
    assert_eq!(t.element_order(a), 4);
    assert_eq!(t.mul(t.mul(b, a), b), t.inv(a));
    let nonsplit = (0..d8.depth()).filter(|&i| !d8.constants(i).split).count();
    assert_eq!(nonsplit, 1);
    assert!(!d8.constants(d8.depth() - 1).split);
}

#[test]
fn quaternion_cocycle_vanishing_set() {
    let q8 = g("Q(8)");
    assert_eq!(q8.order(), 8);
    let top = q8.layer(q8.depth() - 1);
    assert!(top.acts_trivially());
    // base D_4: 1 = 0, b = 1, a = 2, ab = 3
    let vanishing = [(2, 1), (1, 3), (3, 2)];
    for x in 1..4u32 {
        for y in 1..4u32 {
            let zero = top.chi(x, y)[0] == 0;
            assert_eq!(zero, vanishing.contains(&(x, y)), "chi({x},{y})");
        }
    }
    let t = q8.table();
    let a = 2;
    let b = 1;
    assert_eq!(t.pow(a, 2), t.pow(b, 2));
    assert_eq!(t.element_order(a), 4);
    assert!((1..8).all(|x| t.element_order(x) != 2 || x == t.pow(a, 2)));
}

#[test]
fn symmetric_four_layers() {
    let s4 = g("S(4)");
    assert_eq!(s4.order(), 24);
    let sizes: Vec<(u32, usize)> = s4.layers().iter().map(|l| (l.q, l.s)).collect();
    assert_eq!(sizes, vec![(2, 1), (3, 1), (2, 2)]);
    let c = s4.constants(2);
    assert!(c.zeta && c.split);
    assert_eq!((c.kappa, c.alpha), (1, 1));
    assert_eq!(s4.complement_count(2), 4);
    assert_eq!(s4.complement_count_gaschutz(2), 4);
    assert_eq!(s4.complement_count_direct(2, 1 << 20).unwrap(), 4);
    assert_eq!(aut_order(s4.table()).unwrap(), 24);
}

#[test]
fn klein_four_constants() {
    let v = g("Z(2)^2");
    let c = v.constants(1);
    assert!(!c.zeta && c.split);
    assert_eq!((c.kappa, c.alpha), (1, 2));
    assert_eq!(v.complement_count(1), 2);
    assert_eq!(v.complement_count_gaschutz(1), 2);
    assert_eq!(v.complement_count_direct(1, 1 << 20).unwrap(), 2);
}

#[test]
fn quaternion_center_has_no_complement() {
    let q8 = g("Q(8)");
    let top = q8.depth() - 1;
    assert_eq!(q8.complement_count(top), 0);
    assert_eq!(q8.complement_count_gaschutz(top), 0);
    assert_eq!(q8.complement_count_direct(top, 1 << 20).unwrap(), 0);
}

#[test]
fn automorphism_orders() {
    assert_eq!(aut_order(g("D(8)").table()).unwrap(), 8);
    assert_eq!(aut_order(g("Q(8)").table()).unwrap(), 24);
    assert_eq!(aut_order(g("A(4)").table()).unwrap(), 24);
    assert_eq!(aut_order(g("D(12)").table()).unwrap(), 12);
    assert_eq!(aut_order(g("Z(2)^3").table()).unwrap(), 168);
}

#[test]
fn element_formulas_match_tables() {
    for spec in SOLVABLE_CATALOG.iter().filter(|s| builtin_group_order(s).unwrap() <= 24) {
        let tw = g(spec);
        let t = tw.table();
        for x in 0..t.order() as u32 {
            let ex = tw.element(x);
            assert_eq!(tw.index(&ex).unwrap(), x);
            let inv = tw.inverse(&ex).unwrap();
            assert_eq!(tw.index(&inv).unwrap(), t.inv(x), "{spec}");
            assert_eq!(tw.multiply(&ex, &inv).unwrap(), tw.identity());
            for y in 0..t.order() as u32 {
                let p = tw.multiply(&ex, &tw.element(y)).unwrap();
                assert_eq!(tw.index(&p).unwrap(), t.mul(x, y), "{spec}");
            }
        }
    }
}

#[test]
fn mismatched_elements_are_rejected() {
    let d8 = g("D(8)");
    let z3 = g("Z(3)");
    assert!(d8.multiply(&d8.identity(), &z3.element(1)).is_err());
}

#[test]
fn every_catalog_layer_verifies() {
    for spec in SOLVABLE_CATALOG {
        let tw = g(spec);
        assert_eq!(tw.order() as u128, builtin_group_order(spec).unwrap(), "{spec}");
        for i in 0..tw.depth() {
            tw.layer(i).verify(tw.level_table(i)).unwrap();
            assert!(tw.layer(i).is_irreducible());
        }
        assert!(tw.table().is_solvable());
    }
}

#[test]
fn chief_series_of_tables() {
    let z6 = FiniteGroupTable::cyclic(6);
    let tw = chief_series(&z6).unwrap();
    let mut primes: Vec<u32> = tw.layers().iter().map(|l| l.q).collect();
    primes.sort();
    assert_eq!(primes, vec![2, 3]);
    assert!((0..2).all(|i| tw.constants(i).split && !tw.constants(i).zeta));

    let s4 = chief_series(g("S(4)").table()).unwrap();
    let mut sizes: Vec<usize> = s4.layers().iter().map(|l| l.module_order()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 3, 4]);

    let d12 = chief_series(g("D(12)").table()).unwrap();
    let mut sizes: Vec<usize> = d12.layers().iter().map(|l| l.module_order()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 2, 3]);
}

#[test]
fn chief_series_reproduces_catalog_groups() {
    for spec in SOLVABLE_CATALOG.iter().filter(|s| builtin_group_order(s).unwrap() <= 64) {
        let tw = g(spec);
        let (rebuilt, _) = chief_series_with_map(tw.table(), DEFAULT_ORDER_CAP).unwrap();
        assert!(is_isomorphic(tw.table(), rebuilt.table()).unwrap(), "{spec}");
        for i in 0..rebuilt.depth() {
            assert_eq!(
                rebuilt.complement_count(i),
                rebuilt.complement_count_gaschutz(i),
                "{spec} level {i}"
            );
        }
    }
}

#[test]
fn non_solvable_tables_are_rejected() {
    // A_5 as permutations, generated by (1 2 3 4 5) and (1 2 3)
    let mut perms: Vec<[u8; 5]> = vec![[0, 1, 2, 3, 4]];
    let gens = [[1u8, 2, 3, 4, 0], [1, 2, 0, 3, 4]];
    let mut i = 0;
    while i < perms.len() {
        for gperm in &gens {
            let p = perms[i];
            let c: [u8; 5] = std::array::from_fn(|k| gperm[p[k] as usize]);
            if !perms.contains(&c) {
                perms.push(c);
            }
        }
        i += 1;
    }
    assert_eq!(perms.len(), 60);
    let t = FiniteGroupTable::from_fn(60, |a, b| {
        let (pa, pb) = (perms[a as usize], perms[b as usize]);
        let c: [u8; 5] = std::array::from_fn(|k| pb[pa[k] as usize]);
        perms.iter().position(|x| *x == c).unwrap() as u32
    })
    .unwrap();
    assert!(!t.is_solvable());
    assert_eq!(chief_series(&t).unwrap_err(), Error::NotSolvable);
}

#[test]
fn table_text_round_trip() {
    let t = g("Dstar(12)").table().clone();
    let back = FiniteGroupTable::parse(&t.to_text()).unwrap();
    assert_eq!(back, t);
    assert!(FiniteGroupTable::parse("order 2\n0 1\n1 1\n").is_err());
    assert!(FiniteGroupTable::parse("order 2\n1 0\n0 1\n").is_err());
}

#[test]
fn group_spec_errors() {
    assert!(matches!(builtin_group("D(7)"), Err(Error::BadParameter(_))));
    assert!(matches!(builtin_group("Q(12)"), Err(Error::BadParameter(_))));
    assert!(matches!(builtin_group("V(2,5,1)"), Err(Error::BadParameter(_))));
    assert!(matches!(builtin_group("V(2,3,0)"), Err(Error::BadParameter(_))));
    assert!(matches!(builtin_group("W(3)"), Err(Error::UnknownFamily(_))));
    assert!(matches!(builtin_group("Z(2)*"), Err(Error::Syntax { .. })));
    assert!(builtin_group("Z(1024)").unwrap_err().is_cap());
    assert_eq!(g("z(2)^3").order(), 8);
    assert_eq!(g("s(3)*z(5)").order(), 30);
    assert_eq!(g("Z(1)").order(), 1);
}

#[test]
fn metacyclic_composite_kernel() {
    // Z_9 ⋊ Z_2 by inversion is D_18
    let m = g("M(9,2,8)");
    assert_eq!(m.order(), 18);
    assert!(is_isomorphic(m.table(), g("D(18)").table()).unwrap());
    assert!(is_isomorphic(g("M(3,4,2)").table(), g("Dstar(12)").table()).unwrap());
}
