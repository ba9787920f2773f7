use std::time::Duration;

use solvquot::counting::{epi_maps, CountConfig};
use solvquot::groups::builtin_group;
use solvquot::presentations::{builtin_presentation, Presentation};
use solvquot_oracle::*;

fn src(spec: &str) -> Presentation {
    builtin_presentation(spec).unwrap()
}

fn budget() -> OracleBudget {
    OracleBudget::default()
}

#[test]
fn raw_counts() {
    let s3 = builtin_group("S(3)").unwrap();
    assert_eq!(brute_hom(&src("free(2)"), s3.table(), &budget()), Outcome::Verified(36));
    assert_eq!(brute_epi(&src("free(2)"), s3.table(), &budget()), Outcome::Verified(18));
    assert_eq!(brute_hom(&src("braid(3)"), s3.table(), &budget()), Outcome::Verified(12));
    let d8 = builtin_group("D(8)").unwrap();
    assert_eq!(brute_epi(&src("bs(1,3)"), d8.table(), &budget()), Outcome::Verified(8));
    let s4 = builtin_group("S(4)").unwrap();
    assert_eq!(brute_epi(&src("parafree(1,3)"), s4.table(), &budget()), Outcome::Verified(408));
    assert_eq!(brute_epi(&src("klein"), s4.table(), &budget()), Outcome::Verified(0));
}

#[test]
fn budget_and_timeout_give_unverified() {
    let s4 = builtin_group("S(4)").unwrap();
    let tight = OracleBudget { max_letter_ops: 1000, timeout: None };
    assert!(matches!(brute_hom(&src("braid(3)"), s4.table(), &tight), Outcome::Unverified(_)));
    let hurried = OracleBudget { timeout: Some(Duration::ZERO), ..budget() };
    assert_eq!(
        brute_hom(&src("surface(2)"), s4.table(), &hurried),
        Outcome::Unverified("timed out".into())
    );
    let homs = brute_homs(&src("braid(3)"), builtin_group("S(3)").unwrap().table(), &budget());
    assert_eq!(homs.verified().unwrap().len(), 12);
}

#[test]
fn lift_check_examples() {
    let s4 = builtin_group("S(4)").unwrap();
    let top = s4.depth() - 1;
    let (base, layer) = (s4.level_table(top), s4.layer(top));
    let cfg = CountConfig::default();
    // split layer: the zero lift of any homomorphism works
    let b3 = src("braid(3)");
    for rho in epi_maps(&b3, &s4, top, &cfg).unwrap() {
        assert!(brute_lift_check(&b3, base, &rho, layer, &[0; 4]));
    }
    // no relators, nothing to fail
    let f2 = src("free(2)");
    let rho = &epi_maps(&f2, &s4, top, &cfg).unwrap()[0];
    let all = brute_lift_accepted(&f2, base, rho, layer, &budget()).verified().unwrap();
    assert_eq!(all.len(), 16);
}

#[test]
fn klein_bottle_lifts_land_in_complements() {
    let k = src("klein");
    let s4 = builtin_group("S(4)").unwrap();
    let top = s4.depth() - 1;
    let (base, layer) = (s4.level_table(top), s4.layer(top));
    let nb = base.order() as u32;
    let rhos = epi_maps(&k, &s4, top, &CountConfig::default()).unwrap();
    assert_eq!(rhos.len(), 6);
    for rho in rhos {
        let accepted = brute_lift_accepted(&k, base, &rho, layer, &budget()).verified().unwrap();
        assert_eq!(accepted.len(), 4);
        for v in accepted {
            // element (a, b) of S_4 has index b + |B|·(a_0 + 2·a_1)
            let imgs: Vec<u32> = (0..2).map(|j| rho[j] + nb * (v[2 * j] + 2 * v[2 * j + 1]) as u32).collect();
            assert_eq!(s4.table().generated_order(&imgs), 6);
        }
    }
}

#[test]
fn engine_counts_match_enumeration() {
    let rows = verify_counts(count_sources(), &count_targets(), &budget(), &CountConfig::default()).unwrap();
    assert_eq!(rows.len(), 2 * count_sources().len() * count_targets().len());
    let bad: Vec<&CheckRow> = rows.iter().filter(|r| r.status != CheckStatus::Pass).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn cocycle_solutions_match_direct_lifts() {
    let rows = verify_lifts(lift_sources(), lift_targets(), &budget()).unwrap();
    let bad: Vec<&CheckRow> = rows.iter().filter(|r| r.status != CheckStatus::Pass).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    let layers: usize = lift_targets().iter().map(|t| builtin_group(t).unwrap().depth()).sum();
    assert_eq!(rows.len(), lift_sources().len() * layers);
}
