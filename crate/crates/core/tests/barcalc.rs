use num_bigint::BigInt;

use tcrcalc::abelian::FinAbGroup;
use tcrcalc::barcalc::*;
use tcrcalc::Ctx;

/// Invariant factor lists `d₁ | d₂ | …` with product at most `bound`.
fn abelian_groups(bound: u64) -> Vec<Vec<u64>> {
    fn rec(prefix: &mut Vec<u64>, prod: u64, bound: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        let start = prefix.last().copied().unwrap_or(2);
        let mut d = start;
        while prod * d <= bound {
            if prefix.last().map_or(true, |&l| d % l == 0) {
                prefix.push(d);
                rec(prefix, prod * d, bound, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 1, bound, &mut out);
    out
}

#[test]
fn enumeration_matches_closed_form_for_small_abelian_groups() {
    let ctx = Ctx::default();
    let groups = abelian_groups(16);
    // one group per isomorphism type of order ≤ 16
    assert_eq!(
        groups.len(),
        1 + 1 + 1 + 2 + 1 + 1 + 1 + 3 + 2 + 1 + 1 + 2 + 1 + 1 + 1 + 5
    );
    for inv in groups {
        let g = FinAbGroup::from_invariants(&inv).unwrap();
        assert!(check_finite_abelian(&g, &ctx).unwrap(), "{inv:?}");
    }
}

#[test]
fn psi_lands_in_tau_fixed_components() {
    let ctx = Ctx::default();
    for s in [
        "C2 with inv",
        "C4",
        "C2xC4",
        "S3 with inv",
        "D4 with inv",
        "D6 with inv",
        "C2xS3 with inv",
    ] {
        let m = GroupSpec::parse(s).unwrap().finite(&ctx).unwrap();
        let d = components(&m, &ctx).unwrap();
        for c in 0..d.len() {
            assert_eq!(d.tau[d.psi[c]], d.psi[c], "{s}");
            assert_eq!(d.tau[d.tau[c]], c, "{s}");
        }
        // the components partition the pairs of fixed elements
        let f = m.fixed().len();
        assert_eq!(d.class_of.len(), f * f);
    }
}

#[test]
fn orbit_stabilizer_counts() {
    // Σ over components of |G| / |Aut| equals the number of pairs
    let ctx = Ctx::default();
    for s in [
        "S3 with inv",
        "D4 with inv",
        "D5 with inv",
        "C3xC2 with inv",
        "C2xC2xC2",
    ] {
        let m = GroupSpec::parse(s).unwrap().finite(&ctx).unwrap();
        let d = components(&m, &ctx).unwrap();
        let n = m.group.order();
        let total: usize = d.aut.iter().map(|a| n / a.len()).sum();
        assert_eq!(total, d.class_of.len(), "{s}");
    }
}

#[test]
fn c2_example() {
    let ctx = Ctx::default();
    let m = GroupSpec::parse("C2 with inv").unwrap().finite(&ctx).unwrap();
    let d = components(&m, &ctx).unwrap();
    assert_eq!(d.reps, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    for (c, &(x, y)) in d.reps.iter().enumerate() {
        assert_eq!(d.aut[c], vec![0, 1]);
        assert_eq!(d.reps[d.psi[c]], (x, x));
        assert_eq!(d.reps[d.tau[c]], (y, x));
    }
}

#[test]
fn c3_with_inversion() {
    let ctx = Ctx::default();
    let m = GroupSpec::parse("C3 with inv").unwrap().finite(&ctx).unwrap();
    assert_eq!(m.fixed(), vec![0]);
    let d = components(&m, &ctx).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d.aut[0].len(), 3);
}

#[test]
fn integers_closed_form() {
    let ctx = Ctx::default();
    let g = FinAbGroup::integers();
    assert!(check_abelian_closed_form(&g, 8, &ctx).unwrap());
    let lab = AbelianLabels::new(g.clone());
    let e = |x: i64| vec![BigInt::from(x)];
    assert_eq!(lab.label(&e(3), &e(5)), (e(8), vec![1]));
    assert_eq!(lab.psi(&e(3), &[0]), (e(6), vec![1]));
    assert_eq!(lab.tau(&e(3), &[0]), (e(3), vec![1]));
    assert_eq!(lab.psi(&e(0), &[1]), (e(0), vec![1]));
    assert_eq!(lab.tau(&e(4), &[1]), (e(4), vec![1]));
    let r = abelian_report(&g).unwrap();
    assert_eq!(r.type_one, Card::Finite(2));
    assert_eq!(r.type_two, Card::CountablyInfinite);
    assert!(check_abelian_closed_form(&FinAbGroup::from_orders(vec![0, 0]), 3, &ctx).unwrap());
    assert!(check_abelian_closed_form(&FinAbGroup::from_orders(vec![4, 0]), 3, &ctx).unwrap());
}

#[test]
fn census_counts_for_finite_two_groups() {
    for inv in [vec![2], vec![4], vec![2, 2], vec![2, 4], vec![8]] {
        let g = FinAbGroup::from_invariants(&inv).unwrap();
        let r = abelian_report(&g).unwrap();
        let n: u64 = inv.iter().product();
        let g2 = 1u64 << inv.len();
        // |2G| = |G| / |G/2|
        let two_g = n / g2;
        assert_eq!(r.type_one, Card::Finite(g2));
        assert_eq!(r.tau_fixed, Card::Finite(two_g * g2));
        assert_eq!(r.type_two, Card::Finite((n - two_g) * g2 / 2));
        assert!(!r.two_torsion_free);
    }
    let r = abelian_report(&FinAbGroup::from_orders(vec![0, 0])).unwrap();
    assert_eq!(r.type_one, Card::Finite(4));
}

#[test]
fn divisibility_hypothesis() {
    for inv in [vec![3], vec![2, 6], vec![5, 0]] {
        let g = FinAbGroup::from_orders(inv);
        assert!(matches!(abelian_report(&g), Err(tcrcalc::Error::Refused { .. })));
    }
}

#[test]
fn anti_involution_axioms_are_checked() {
    let g = FiniteGroup::dihedral(3).unwrap();
    // the identity is not an anti-involution of a non-abelian group
    assert!(MonoidWithAntiInv::new(g.clone(), (0..6).collect()).is_err());
    assert!(MonoidWithAntiInv::with(g, GroupInv::Inversion).is_ok());
}

#[test]
fn group_parsing() {
    assert!(GroupSpec::parse("Q8").is_err());
    assert!(GroupSpec::parse("C2 with frob").is_err());
    let s = GroupSpec::parse("ZxZ/4").unwrap();
    assert!(!s.is_finite());
    assert_eq!(s.abelian().unwrap().invariants(), vec![4, 0]);
}
