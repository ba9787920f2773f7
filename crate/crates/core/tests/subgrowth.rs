use solvquot::counting::{delta, CountConfig};
use solvquot::groups::builtin_group;
use solvquot::presentations::{abelian_invariants, builtin_presentation, Presentation};
use solvquot::subgrowth::*;

fn src(spec: &str) -> Presentation {
    builtin_presentation(spec).unwrap()
}

fn cfg() -> CountConfig {
    CountConfig::default()
}

fn eng(p: &Presentation, spec: &str) -> u128 {
    delta(p, &builtin_group(spec).unwrap(), &cfg()).unwrap()
}

/// (h_k, t_k) by running over every tuple of permutations.
fn brute_symmetric(p: &Presentation, k: usize) -> (u128, u128) {
    let perms = all_perms(k);
    let n = p.num_generators();
    let total = perms.len().pow(n as u32);
    let (mut h, mut t) = (0, 0);
    for code in 0..total {
        let imgs: Vec<Perm> = (0..n).map(|j| perms[code / perms.len().pow(j as u32) % perms.len()]).collect();
        let ok = p.relators().iter().all(|r| {
            let mut acc = Perm::identity(k);
            for l in r.letters() {
                let x = if l.exp > 0 { imgs[l.gen] } else { imgs[l.gen].inverse() };
                acc = acc.then(&x);
            }
            acc.is_identity()
        });
        if ok {
            h += 1;
            if Perm::transitive(&imgs, k) {
                t += 1;
            }
        }
    }
    (h, t)
}

#[test]
fn class_sizes_add_up() {
    for k in 1..=8 {
        let reps = class_representatives(k);
        let total: u128 = reps.iter().map(|r| r.1).sum();
        assert_eq!(total, all_perms(k).len() as u128);
    }
    assert_eq!(class_representatives(5).len(), 7);
}

#[test]
fn symmetric_hom_counts() {
    let b3 = src("braid(3)");
    assert_eq!(hom_count_symmetric(&b3, 2).unwrap(), 2);
    assert_eq!(hom_count_symmetric(&b3, 3).unwrap(), 12);
    for n in 1..=3 {
        for k in 1..=5usize {
            let kf: u128 = (1..=k as u128).product();
            assert_eq!(hom_count_symmetric(&src(&format!("free({n})")), k).unwrap(), kf.pow(n));
        }
    }
    assert!(hom_count_symmetric(&b3, 9).unwrap_err().is_cap());
}

#[test]
fn enumerator_and_recursion_match_brute_force() {
    for s in ["braid(3)", "braid(4)", "klein", "bs(1,2)", "bs(2,4)", "surface(1)", "braid3_split"] {
        let p = src(s);
        let kmax = if p.num_generators() > 2 { 3 } else { 4 };
        let r = ak_sequence(&p, kmax, &GrowthConfig::default()).unwrap();
        for k in 1..=kmax {
            let (h, t) = brute_symmetric(&p, k);
            assert_eq!((r.h[k - 1], r.t[k - 1]), (h, t), "{s} k={k}");
        }
    }
}

#[test]
fn free_group_growth() {
    let r = ak_sequence(&src("free(2)"), 4, &GrowthConfig::default()).unwrap();
    assert_eq!(r.h[..3], [1, 4, 36]);
    assert_eq!(r.a, [1, 3, 13, 71]);
    for k in 1..=4 {
        let f: u128 = (1..k as u128).product();
        assert_eq!(r.t[k - 1], r.a[k - 1] * f);
    }
}

#[test]
fn braid_low_index_counts() {
    let c = GrowthConfig::default();
    assert_eq!(ak_sequence(&src("braid(3)"), 7, &c).unwrap().a, [1, 1, 4, 9, 6, 22, 43]);
    assert_eq!(ak_sequence(&src("braid(4)"), 6, &c).unwrap().a, [1, 1, 4, 17, 6, 34]);
    assert_eq!(ak_sequence(&src("braid(5)"), 7, &c).unwrap().a, [1, 1, 1, 1, 6, 7, 1]);
    let b6 = ak_sequence(&src("braid(6)"), 6, &c).unwrap();
    assert_eq!(b6.a, [1, 1, 1, 1, 1, 13]);
}

#[test]
fn braid_table_marks_unreached_entries() {
    let c = GrowthConfig { max_k: 5, ..GrowthConfig::default() };
    let rows = braid_table(&[3, 5], 6, &c, None).unwrap();
    assert_eq!(rows[0].a, [Some(1), Some(1), Some(4), Some(9), Some(6), None]);
    let tsv = braid_table_tsv(&rows, 6);
    assert_eq!(tsv.lines().next().unwrap(), "group\ta_1\ta_2\ta_3\ta_4\ta_5\ta_6");
    assert_eq!(tsv.lines().nth(2).unwrap(), "B_5\t1\t1\t1\t1\t6\t?");
}

#[test]
fn normal_subgroup_counts() {
    let f2 = src("free(2)");
    assert_eq!(ak_normal(&f2, 4, &cfg()).unwrap(), 7);
    assert_eq!(ak_normal(&f2, 6, &cfg()).unwrap(), 15);
    for n in 1..=3u32 {
        let fnn = src(&format!("free({n})"));
        for p in [2u128, 3, 5, 7] {
            assert_eq!(ak_normal(&fnn, p as u32, &cfg()).unwrap(), (p.pow(n) - 1) / (p - 1));
        }
    }
    assert!(ak_normal(&f2, 16, &cfg()).is_err());
    let r = growth_with_normal(&src("braid(3)"), 4, &GrowthConfig::default(), &cfg()).unwrap();
    // every normal subgroup of B_3 of index ≤ 4 has cyclic quotient
    assert_eq!(r.normal.unwrap(), [1, 1, 1, 1]);
}

#[test]
fn abelian_closed_forms_match_engine() {
    let f2 = abelian_invariants(&src("free(2)"));
    assert_eq!(delta_abelian_closed(&f2, AbelianShape::Cyclic { p: 3, s: 1 }).unwrap(), 4);
    assert_eq!(delta_abelian_closed(&f2, AbelianShape::Cyclic { p: 2, s: 2 }).unwrap(), 6);
    assert_eq!(delta_abelian_closed(&f2, AbelianShape::Elementary { p: 2, s: 2 }).unwrap(), 1);
    for s in ["free(2)", "bs(2,4)", "surface(2)", "free(3)", "bs(1,5)", "bs(1,10)", "klein", "bs(3,12)"] {
        let p = src(s);
        let inv = abelian_invariants(&p);
        for q in [2u64, 3] {
            for e in 1..=2u32 {
                let mut shapes = vec![AbelianShape::Cyclic { p: q, s: e }, AbelianShape::Elementary { p: q, s: e }];
                if e >= 2 {
                    shapes.push(AbelianShape::Mixed { p: q, s: e });
                }
                for shape in shapes {
                    let closed = delta_abelian_closed(&inv, shape).unwrap();
                    assert_eq!(closed, eng(&p, &shape.group_spec()), "{s} {shape:?}");
                }
            }
        }
    }
    assert!(delta_abelian_closed(&f2, AbelianShape::Mixed { p: 2, s: 1 }).is_err());
}

#[test]
fn small_group_sums_match_engine() {
    for s in ["free(2)", "braid(3)", "braid(4)", "klein", "bs(2,4)", "bs(1,3)", "parafree(1,3)"] {
        let p = src(s);
        for gamma in SmallGroup::ALL {
            assert_eq!(delta_small(&p, gamma, &cfg()).unwrap(), eng(&p, gamma.group_spec()), "{s} {gamma:?}");
        }
        assert_eq!(delta_small(&p, SmallGroup::Dic12, &cfg()).unwrap(), eng(&p, "Dstar(12)"), "{s}");
    }
}

#[test]
fn low_index_dual_path() {
    let gc = GrowthConfig::default();
    for s in ["free(2)", "braid(3)", "braid(4)", "klein", "surface(2)"] {
        let p = src(s);
        let lo = low_index_via_deltas(&p, &cfg()).unwrap();
        let r = ak_sequence(&p, 4, &gc).unwrap();
        assert_eq!([lo.a2, lo.a3, lo.a4], r.a[1..4], "{s}");
    }
    let lo = low_index_via_deltas(&src("free(2)"), &cfg()).unwrap();
    assert_eq!((lo.a2, lo.a3, lo.a4), (3, 13, 71));
    assert_eq!((lo.deltas["D(8)"], lo.deltas["A(4)"], lo.deltas["S(4)"]), (3, 4, 9));
    let lo = low_index_via_deltas(&src("braid(3)"), &cfg()).unwrap();
    assert_eq!((lo.a3, lo.a4), (4, 9));
}

#[test]
fn surfaces_share_growth_but_not_invariants() {
    let gc = GrowthConfig::default();
    for g in 1..=2 {
        let orient = src(&format!("surface({g})"));
        let non = src(&format!("nonorientable({})", 2 * g));
        assert_eq!(ak_sequence(&orient, 5, &gc).unwrap().a, ak_sequence(&non, 5, &gc).unwrap().a, "g={g}");
        assert_ne!(eng(&orient, "Z(3)"), eng(&non, "Z(3)"));
    }
}

#[test]
fn solvable_quotients_of_braid_five_are_cyclic() {
    let b5 = src("braid(5)");
    for spec in ["S(3)", "D(8)", "A(4)"] {
        assert_eq!(eng(&b5, spec), 0, "{spec}");
    }
    for spec in ["Z(2)", "Z(3)", "Z(4)", "Z(6)"] {
        assert_eq!(eng(&b5, spec), 1, "{spec}");
    }
}

#[test]
fn report_is_deterministic_json() {
    let r = ak_sequence(&src("braid(3)"), 4, &GrowthConfig::default()).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert!(!json.contains("timing"));
    assert!(json.contains("\"a\":[1,1,4,9]"), "{json}");
}
