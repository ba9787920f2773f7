use solvquot::counting::{epi_total, gaschutz_eulerian, CountConfig};
use solvquot::groups::{builtin_group, NILPOTENT_CATALOG, SOLVABLE_CATALOG};
use solvquot::lattice::*;
use solvquot::presentations::builtin_presentation;

fn lattice(spec: &str) -> SubgroupLattice {
    all_subgroups(builtin_group(spec).unwrap().table()).unwrap()
}

#[test]
fn subgroup_counts() {
    for (spec, n) in [("Z(6)", 4), ("D(8)", 10), ("S(3)", 6), ("Q(8)", 6), ("Z(2)^2", 5), ("A(4)", 10), ("S(4)", 30)] {
        assert_eq!(lattice(spec).len(), n, "{spec}");
    }
    let l = lattice("D(8)");
    assert_eq!(l.subgroup(0).order, 1);
    assert_eq!(l.subgroup(l.top()).order, 8);
    let normal = (0..l.len()).filter(|&i| l.is_normal(i)).count();
    assert_eq!(normal, 6);
}

#[test]
fn symmetric_three_moebius() {
    let l = lattice("S(3)");
    let mu = moebius(&l);
    let by_order = |o: usize| -> Vec<i64> {
        (0..l.len()).filter(|&i| l.subgroup(i).order == o).map(|i| mu.values[i]).collect()
    };
    assert_eq!(by_order(6), [1]);
    assert_eq!(by_order(3), [-1]);
    assert_eq!(by_order(2), [-1, -1, -1]);
    assert_eq!(by_order(1), [3]);
    assert_eq!(moebius(&lattice("D(8)")).values[0], 0);
    assert!(moebius_weisner(&l).is_err());
}

#[test]
fn variants_agree_with_inductive() {
    for spec in SOLVABLE_CATALOG {
        let tw = builtin_group(spec).unwrap();
        let l = all_subgroups(tw.table()).unwrap();
        let mu = moebius(&l);
        assert_eq!(moebius_kt(&l, &tw).unwrap(), mu, "{spec}");
    }
    for spec in NILPOTENT_CATALOG {
        let tw = builtin_group(spec).unwrap();
        let l = all_subgroups(tw.table()).unwrap();
        assert_eq!(moebius_weisner(&l).unwrap(), moebius(&l), "{spec}");
    }
    let names: Vec<&str> = moebius_variants().iter().map(|v| v.name()).collect();
    assert_eq!(names, ["inductive", "kt", "weisner"]);
}

#[test]
fn dihedral_moebius_formula() {
    let cfg = CountConfig::default();
    for s in ["free(2)", "braid(3)", "klein", "bs(1,3)", "surface(1)"] {
        let p = builtin_presentation(s).unwrap();
        for m in 3..=8u64 {
            let direct = epi_total(&p, &builtin_group(&format!("D({})", 2 * m)).unwrap(), &cfg).unwrap();
            assert_eq!(epi_dihedral_moebius(&p, m, &cfg).unwrap(), direct, "{s} m={m}");
        }
    }
}

#[test]
fn hall_identities_balance() {
    let cfg = CountConfig::default();
    for s in ["free(2)", "braid(3)", "klein", "bs(1,3)"] {
        let p = builtin_presentation(s).unwrap();
        for spec in ["S(3)", "D(8)", "Q(8)", "A(4)", "Z(2)*Z(4)", "D(12)"] {
            let tw = builtin_group(spec).unwrap();
            let r = hall_identities(&p, &tw, &cfg).unwrap();
            assert!(r.balanced, "{s} {spec} {r:?}");
            assert_eq!(epi_via_moebius(&p, &tw, &cfg).unwrap(), r.epi);
        }
    }
}

#[test]
fn eulerian_functions_agree() {
    let cfg = CountConfig::default();
    for spec in ["S(3)", "D(8)", "Q(8)", "A(4)", "Z(6)", "Z(2)^2", "S(4)", "D(10)"] {
        let tw = builtin_group(spec).unwrap();
        let l = all_subgroups(tw.table()).unwrap();
        let mu = moebius(&l);
        for n in 1..=3u32 {
            let via_mu = eulerian_via_moebius(&l, &mu, n).unwrap();
            assert_eq!(gaschutz_eulerian(&tw, n).unwrap(), via_mu, "{spec} n={n}");
            let free = builtin_presentation(&format!("free({n})")).unwrap();
            assert_eq!(epi_total(&free, &tw, &cfg).unwrap(), via_mu, "{spec} n={n}");
        }
    }
}
