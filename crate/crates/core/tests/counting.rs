use solvquot::counting::*;
use solvquot::groups::*;
use solvquot::presentations::{builtin_presentation, Presentation};

fn g(spec: &str) -> ExtensionTower {
    builtin_group(spec).unwrap()
}

fn src(spec: &str) -> Presentation {
    builtin_presentation(spec).unwrap()
}

fn cfg() -> CountConfig {
    CountConfig::default()
}

/// Hom and Epi by trying every tuple of generator images.
fn brute(p: &Presentation, t: &FiniteGroupTable) -> (u128, u128) {
    let n = p.num_generators();
    let k = t.order() as u64;
    let (mut hom, mut epi) = (0, 0);
    for code in 0..k.pow(n as u32) {
        let imgs: Vec<u32> = (0..n).map(|j| (code / k.pow(j as u32) % k) as u32).collect();
        let ok = p.relators().iter().all(|r| {
            r.letters().iter().fold(0u32, |x, l| {
                let y = imgs[l.gen];
                t.mul(x, if l.exp > 0 { y } else { t.inv(y) })
            }) == 0
        });
        if ok {
            hom += 1;
            if t.generated_order(&imgs) == t.order() {
                epi += 1;
            }
        }
    }
    (hom, epi)
}

#[test]
fn hom_counts() {
    assert_eq!(hom_count(&src("free(2)"), &g("S(3)"), &cfg()).unwrap(), 36);
    assert_eq!(hom_count(&src("free(2)"), &g("Z(6)"), &cfg()).unwrap(), 36);
    let b3 = src("braid(3)");
    assert_eq!(hom_count(&b3, &g("S(3)"), &cfg()).unwrap(), brute(&b3, g("S(3)").table()).0);
    assert_eq!(hom_count(&b3, &g("S(3)"), &cfg()).unwrap(), 12);
}

#[test]
fn hom_cap_is_enforced() {
    let c = CountConfig { hom_cap: 100, ..cfg() };
    assert!(hom_count(&src("free(3)"), &g("S(3)"), &c).unwrap_err().is_cap());
}

#[test]
fn epi_counts_and_deltas() {
    let r = epi_count(&src("free(2)"), &g("S(3)"), "free(2)", &cfg()).unwrap();
    assert_eq!((r.epi, r.hom), (18, Some(36)));
    let r = epi_count(&src("free(2)"), &g("S(4)"), "free(2)", &cfg()).unwrap();
    assert_eq!((r.epi, r.aut, r.delta), (216, 24, 9));
    assert_eq!(epi_total(&src("braid(3)"), &g("S(3)"), &cfg()).unwrap(), 6);
    assert_eq!(delta(&src("braid(4)"), &g("S(4)"), &cfg()).unwrap(), 3);
    assert_eq!(delta(&src("klein"), &g("S(4)"), &cfg()).unwrap(), 0);
    assert_eq!(delta(&src("hillman_link"), &g("S(4)"), &cfg()).unwrap(), 33);
    assert_eq!(delta(&src("hillman_link"), &g("S(3)"), &cfg()).unwrap(), 3);
}

#[test]
fn level_tallies_for_symmetric_four() {
    let r = epi_count(&src("free(2)"), &g("S(4)"), "free(2)", &cfg()).unwrap();
    let top = r.levels.last().unwrap();
    assert_eq!((top.epi_in, top.lifts, top.complements, top.epi_out), (18, 18 * 16, 18 * 4, 216));
    for w in r.levels.windows(2) {
        assert_eq!(w[0].epi_out, w[1].epi_in);
    }
}

#[test]
fn lifting_single_maps() {
    let s4 = g("S(4)");
    let top = s4.depth() - 1;
    let f2 = src("free(2)");
    let rhos = epi_maps(&f2, &s4, top, &cfg()).unwrap();
    assert_eq!(rhos.len(), 18);
    for images in rhos {
        let rho = GeneratorImageMap::new(&f2, s4.level_table(top), images).unwrap();
        assert_eq!(epi_lift(&f2, &s4, top, &rho, Default::default()).unwrap().len(), 12);
    }
    let k = src("klein");
    for images in epi_maps(&k, &s4, top, &cfg()).unwrap() {
        let rho = GeneratorImageMap::new(&k, s4.level_table(top), images).unwrap();
        assert!(epi_lift(&k, &s4, top, &rho, Default::default()).unwrap().is_empty());
    }
}

#[test]
fn engine_matches_brute_force() {
    let sources = ["free(2)", "bs(1,3)", "bs(2,4)", "klein", "braid(3)", "parafree(1,3)"];
    let targets = ["Z(6)", "S(3)", "D(8)", "Q(8)", "A(4)", "D(12)", "Dstar(12)"];
    for s in sources {
        let p = src(s);
        for t in targets {
            let tw = g(t);
            let (h, e) = brute(&p, tw.table());
            assert_eq!(hom_count(&p, &tw, &cfg()).unwrap(), h, "Hom({s}, {t})");
            assert_eq!(epi_total(&p, &tw, &cfg()).unwrap(), e, "Epi({s}, {t})");
        }
    }
}

#[test]
fn gaschutz_examples() {
    for n in 1..5 {
        assert_eq!(gaschutz_eulerian(&g("Z(2)"), n).unwrap(), 2u128.pow(n) - 1);
    }
    assert_eq!(gaschutz_eulerian(&g("S(4)"), 2).unwrap(), 216);
    assert_eq!(gaschutz_eulerian(&g("D(8)"), 2).unwrap(), 24);
    let types = module_types(&g("Z(2)^3"));
    assert_eq!(types.len(), 1);
    assert_eq!((types[0].complemented, types[0].frattini), (3, 0));
}

#[test]
fn closed_forms() {
    assert_eq!(closed_form_eulerian(EulerianFamily::Dihedral { m: 3, n: 2 }).unwrap(), 18);
    assert_eq!(closed_form_eulerian(EulerianFamily::BinaryDihedral { m: 2, n: 2 }).unwrap(), 24);
    let surf = closed_form_eulerian(EulerianFamily::Surface { g: 2, m: 3 }).unwrap();
    assert_eq!(surf, epi_total(&src("surface(2)"), &g("D(6)"), &cfg()).unwrap());
    for m in [2u64, 5, 6, 9, 10] {
        let f = EulerianFamily::Surface { g: 2, m };
        let d = g(&format!("D({})", 2 * m));
        assert_eq!(closed_form_eulerian(f).unwrap(), epi_total(&src("surface(2)"), &d, &cfg()).unwrap(), "m={m}");
    }
    for m in [2u64, 5, 6, 9, 10] {
        let f = EulerianFamily::Surface { g: 1, m };
        let d = g(&format!("D({})", 2 * m));
        assert_eq!(closed_form_eulerian(f).unwrap(), epi_total(&src("surface(1)"), &d, &cfg()).unwrap(), "m={m}");
    }
    // the nonorientable form only matches for squarefree m
    for m in [1u64, 2, 3, 5, 6, 7, 10, 15] {
        for gen in 1..=4u32 {
            let d = g(&format!("D({})", 2 * m));
            let p = src(&format!("nonorientable({gen})"));
            let f = EulerianFamily::Nonorientable { g: gen, m };
            assert_eq!(closed_form_eulerian(f).unwrap(), epi_total(&p, &d, &cfg()).unwrap(), "m={m} g={gen}");
        }
    }
    assert_eq!(closed_form_delta(DeltaFamily::BsD8 { m: 2, n: 6 }).unwrap(), 3);
    assert_eq!(closed_form_delta(DeltaFamily::BsD8 { m: 1, n: 3 }).unwrap(), 1);
    assert_eq!(closed_form_delta(DeltaFamily::BsD8 { m: 1, n: 5 }).unwrap(), 0);
    assert_eq!(closed_form_delta(DeltaFamily::ParafreeS4 { m: 1, n: 3 }).unwrap(), 17);
    assert_eq!(closed_form_delta(DeltaFamily::ParafreeS4 { m: 2, n: 4 }).unwrap(), 9);
    let z7z6 = DeltaFamily::BraidMetabelian { kind: 2, r: 7, k: 6 };
    assert_eq!(closed_form_delta(z7z6).unwrap(), 2);
    assert!(closed_form_delta(DeltaFamily::BraidMetabelian { kind: 2, r: 7, k: 4 }).is_err());
}

#[test]
fn metabelian_braid_quotients() {
    // Z_7 ⋊ Z_6 acting faithfully, by the generator 3 of Z_7^*
    let b3 = src("braid(3)");
    assert_eq!(delta(&b3, &g("M(7,6,3)"), &cfg()).unwrap(), 2);
    // Z_3 ⋊ Z_4 = Dic_12 and Z_2² ⋊ Z_3 = A_4
    assert_eq!(delta(&b3, &g("Dstar(12)"), &cfg()).unwrap(), 1);
    assert_eq!(delta(&b3, &g("A(4)"), &cfg()).unwrap(), 1);
}

#[test]
fn q2p_formula_matches_engine() {
    for s in ["free(2)", "klein", "bs(1,2)", "braid(3)", "braid(4)"] {
        let p = src(s);
        let direct = epi_total(&p, &g("V(2,3,1)"), &cfg()).unwrap();
        assert_eq!(epi_count_q2p(&p, 2, 3, 1, &cfg()).unwrap(), direct, "{s}");
    }
    assert_eq!(epi_count_q2p(&src("free(2)"), 2, 3, 1, &cfg()).unwrap(), 216);
    assert_eq!(epi_count_q2p(&src("klein"), 2, 3, 1, &cfg()).unwrap(), 0);
    assert_eq!(delta_s4(&src("braid(3)"), &cfg()).unwrap(), 1);
    let p = src("free(2)");
    assert_eq!(epi_count_q2p(&p, 5, 3, 4, &cfg()).unwrap(), epi_total(&p, &g("V(5,3,4)"), &cfg()).unwrap());
}

#[test]
fn dihedral_recursions_match_engine() {
    for s in ["free(2)", "bs(1,3)", "bs(2,4)", "klein", "surface(2)", "braid(3)"] {
        let p = src(s);
        for m in 1..=12u64 {
            let direct = epi_total(&p, &g(&format!("D({})", 2 * m)), &cfg()).unwrap();
            assert_eq!(epi_dihedral_recursion(&p, m, &cfg()).unwrap(), direct, "{s} D_{}", 2 * m);
            let direct = epi_total(&p, &g(&format!("Dstar({})", 4 * m)), &cfg()).unwrap();
            assert_eq!(epi_binary_dihedral_recursion(&p, m, &cfg()).unwrap(), direct, "{s} Dstar_{}", 4 * m);
        }
    }
}

#[test]
fn aut_by_lifting_matches_search() {
    for spec in ["D(8)", "Q(8)", "D(12)", "A(4)", "S(4)"] {
        let tw = g(spec);
        assert_eq!(aut_via_lifting(&tw, &cfg()).unwrap(), aut_order(tw.table()).unwrap(), "{spec}");
    }
}

#[test]
fn delta_is_multiplicative_on_coprime_products() {
    let f2 = src("free(2)");
    let prod = delta(&f2, &g("Z(3)*D(8)"), &cfg()).unwrap();
    assert_eq!(prod, delta(&f2, &g("Z(3)"), &cfg()).unwrap() * delta(&f2, &g("D(8)"), &cfg()).unwrap());
}

#[test]
fn strategies_agree() {
    let p = src("bs(2,4)");
    let tw = g("D(8)");
    let lifted = epi_strategy("lifting").unwrap().epi(&p, &tw, &cfg()).unwrap();
    assert_eq!(epi_strategy("moebius").unwrap().epi(&p, &tw, &cfg()).unwrap(), lifted);
    assert!(epi_strategy("gaschutz").unwrap().epi(&p, &tw, &cfg()).is_err());
    let f3 = src("free(3)");
    let lifted = epi_strategy("lifting").unwrap().epi(&f3, &tw, &cfg()).unwrap();
    for s in epi_strategies() {
        assert_eq!(s.epi(&f3, &tw, &cfg()).unwrap(), lifted, "{}", s.name());
    }
}

#[test]
fn report_serializes_in_documented_order() {
    let r = epi_count(&src("free(2)"), &g("S(3)"), "free(2)", &cfg()).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    let keys = ["\"source\"", "\"target\"", "\"hom\"", "\"epi\"", "\"aut\"", "\"delta\"", "\"levels\""];
    let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
}
