use std::collections::BTreeSet;

use num_bigint::BigInt;

use tcrcalc::abelian::GroupHom;
use tcrcalc::ringkit::{parse_ring, FinRing, ProRing};
use tcrcalc::tcr::*;
use tcrcalc::{Ctx, Error};

const F4: &str = "GF(2,x^2+x+1)";
const F8: &str = "GF(2,x^3+x+1)";

fn field(s: &str) -> FinRing {
    parse_ring(s).unwrap().ring
}

/// `|k / {x + x²}|` by brute force.
fn artin_schreier_quotient_order(k: &FinRing) -> usize {
    let elems = k.elements(&Ctx::default()).unwrap();
    let image: BTreeSet<Vec<u64>> = elems.iter().map(|x| k.add(x, &k.mul(x, x))).collect();
    elems.len() / image.len()
}

#[test]
fn tower_level_one_degree_two_over_f2() {
    let t = trr_phi_tower(&field("Z/2"), 1, (0, 4), &Ctx::default()).unwrap();
    let d = &t.degrees[&2];
    assert_eq!(d.labels, vec![(0, 2), (1, 1), (2, 0)]);
    assert_eq!(d.group.invariants(), vec![2, 2, 2]);
    assert_eq!(d.r.image().0.invariants(), vec![2]);
    assert_eq!(d.f.image().0.invariants(), vec![2, 2]);
}

#[test]
fn tower_restriction_is_square_root_on_the_diagonal() {
    let ctx = Ctx::default();
    let k = field(F4);
    let kf = PerfectRing::new(&k, 2, true, &ctx).unwrap();
    let t = trr_phi_tower(&k, 3, (2, 2), &ctx).unwrap();
    let d = &t.degrees[&2];
    let w = kf.group().ngens();
    for x in k.elements(&ctx).unwrap() {
        let mut v = vec![BigInt::from(0); 3 * w];
        v[w..2 * w].clone_from_slice(&kf.coords(&x));
        let out = d.r.apply(&v);
        // in F₄ the square root of x is x²
        assert_eq!(kf.elem(&out[w..2 * w]), k.mul(&x, &x));
        assert!(out[..w].iter().chain(&out[2 * w..]).all(|c| c == &BigInt::from(0)));
    }
}

#[test]
fn oracle_agrees_with_closed_form() {
    let ctx = Ctx::default();
    for k in ["Z/2", F4] {
        for l in 1..=4 {
            let c = trr_phi_tower(&field(k), l, (0, 6), &ctx).unwrap();
            let o = trr_phi_oracle(&field(k), l, (0, 6), &ctx).unwrap();
            assert!(oracle_matches(&c, &o).unwrap(), "{k}, l = {l}");
            assert!(o.tower.groups().same_groups(&c.groups()));
        }
    }
}

#[test]
fn level_one_kernel_of_the_oracle_is_diagonal_on_n_equals_m() {
    // level two is the kernel of (x, y) ↦ r x − σ r y; its group has one k per label n ≥ m plus one per n ≤ m, glued on n = m
    let ctx = Ctx::default();
    let o = trr_phi_oracle(&field("Z/2"), 2, (0, 4), &ctx).unwrap();
    for (d, g) in &o.tower.degrees {
        let n = (*d + 1) as usize;
        assert_eq!(g.group.invariants(), vec![2; n], "degree {d}");
    }
}

#[test]
fn limit_is_k_in_even_degrees_with_frobenius() {
    let ctx = Ctx::default();
    for k in ["Z/2", F4] {
        let kf = PerfectRing::new(&field(k), 2, true, &ctx).unwrap();
        let lim = trr_phi_limit(&field(k), (0, 8), &ctx).unwrap();
        for d in 0..=8 {
            let g = lim.groups.get(d);
            if d % 2 == 0 {
                assert!(g.is_isomorphic(kf.group()), "{k} degree {d}");
            } else {
                assert!(g.is_trivial(), "{k} degree {d}");
            }
        }
        // degree zero: the limit is the (0,0) summand and F acts by squaring
        let e = &lim.embedding[&0];
        let f = &lim.frobenius[&0];
        assert!(e.compose(f).unwrap().equals(&kf.frob.compose(e).unwrap()));
    }
}

#[test]
fn char2_fields_match_closed_form_and_brute_force() {
    let ctx = Ctx::default();
    for k in ["Z/2", F4, F8] {
        let kr = field(k);
        let g = tcr_phi_char2_field(&kr, (-2, 8), &ctx).unwrap();
        assert!(g.same_groups(&char2_field_closed_form(&kr, (-2, 8), &ctx).unwrap()));
        assert!(g.get(-2).is_trivial());
        let q = artin_schreier_quotient_order(&kr);
        for d in -1..=8 {
            let expect = if d % 2 == 0 { 2 } else { q };
            assert_eq!(g.get(d).order_u64(), Some(expect as u64), "{k} degree {d}");
        }
    }
}

#[test]
fn perfect_algebras() {
    let ctx = Ctx::default();
    let g = tcr_phi_perfect_algebra(&field("Z/2"), (-3, 5), &ctx).unwrap();
    for d in -1..=5 {
        assert_eq!(g.invariants(d), vec![2]);
    }
    assert!(g.get(-2).is_trivial());
    let g = tcr_phi_perfect_algebra(&field(&format!("Z/2x{F4}")), (-2, 3), &ctx).unwrap();
    for d in -1..=3 {
        assert_eq!(g.invariants(d), vec![2, 2]);
    }
    let e = tcr_phi_perfect_algebra(&field("Z/2[C2]"), (0, 1), &ctx).unwrap_err();
    assert!(matches!(e, Error::Refused { .. }));
}

#[test]
fn integers_agree_with_two_cell_oracle() {
    let ctx = Ctx::default();
    let t = tcr_phi_torsionfree(&ProRing::parse("Z").unwrap(), (-2, 9), &ctx).unwrap();
    let o = tcr_phi_z_oracle((-2, 9), &ctx).unwrap();
    assert!(t.groups.same_groups(&o));
    for d in -1i64..=9 {
        let expect: Vec<u64> = match d.rem_euclid(4) {
            0 => vec![8],
            1 | 3 => vec![2],
            _ => vec![],
        };
        assert_eq!(t.groups.invariants(d), expect, "degree {d}");
    }
    assert!(t.groups.get(-2).is_trivial());
}

#[test]
fn witt_vectors_of_f2_behave_like_integers() {
    let ctx = Ctx::default();
    let z = tcr_phi_torsionfree(&ProRing::parse("Z").unwrap(), (-1, 4), &ctx).unwrap();
    let w = tcr_phi_torsionfree(&ProRing::parse("W(Z/2)").unwrap(), (-1, 4), &ctx).unwrap();
    assert!(z.groups.same_groups(&w.groups));
}

#[test]
fn odd_prime_vanishing_and_quotients() {
    let ctx = Ctx::default();
    let r = tcr_phi_odd(&parse_ring("Z/9").unwrap(), 3, &ctx).unwrap();
    assert!(r.tr_surjective && r.pi0.is_trivial());
    // A = Z/2 at p = 3 has tr = 2 = 0 and Q = F₂
    let r = tcr_phi_odd(&parse_ring("Z/2").unwrap(), 3, &ctx).unwrap();
    assert!(!r.tr_surjective);
    assert_eq!(r.pi0.invariants(), vec![2]);
    assert!(tcr_phi_odd(&parse_ring("Z/9").unwrap(), 2, &ctx).is_err());
}

#[test]
fn odd_perfect_field_truncations() {
    let ctx = Ctx::default();
    for n in 1..=3 {
        let o = tcr_odd_perfect_field(&field("Z/3"), 3, n, (-2, 2), &ctx).unwrap();
        let q = 3u64.pow(n as u32);
        assert_eq!(o.groups.invariants(0), vec![q]);
        assert_eq!(o.groups.invariants(-1), vec![q]);
        for d in [-2, 1, 2] {
            assert!(o.groups.get(d).is_trivial());
        }
        assert!(o.stable);
    }
    let o = tcr_odd_perfect_field(&field("GF(3,x^2+1)"), 3, 2, (-1, 0), &ctx).unwrap();
    assert_eq!(o.groups.invariants(0), vec![9]);
}

#[test]
fn green_functor_of_f2() {
    let ctx = Ctx::default();
    let g = pi0_trr_green(&parse_ring("Z/2").unwrap(), 2, &ctx).unwrap();
    g.check_axioms(&ctx).unwrap();
    assert_eq!(g.fixed_group().invariants(), vec![8]);
    assert_eq!(g.underlying_group().invariants(), vec![8]);
    for (r, n) in [(F4, 1), ("Z/4", 1), ("Z/2xZ/2 with swap", 1)] {
        let g = pi0_trr_green(&parse_ring(r).unwrap(), n, &ctx).unwrap();
        g.check_axioms(&ctx).unwrap();
    }
    let g = pi0_trr_green(&parse_ring(&format!("{F4} with galois")).unwrap(), 1, &ctx).unwrap();
    assert_eq!(g.fixed_group().invariants(), vec![4]);
    assert_eq!(g.underlying_group().invariants(), vec![4, 4]);
    // res ∘ tr = 1 + w
    let lhs = g.res.compose(&g.tr).unwrap();
    let rhs = GroupHom::identity(g.underlying_group()).add(&g.w).unwrap();
    assert!(lhs.equals(&rhs));
}

#[test]
fn green_refuses_without_mu_iso() {
    let e = pi0_trr_green(&parse_ring("Z/4[C2]").unwrap(), 1, &Ctx::default()).unwrap_err();
    match e {
        Error::Refused { hypothesis, detail } => {
            assert!(hypothesis.contains("μ"));
            assert!(detail.contains("ker μ"));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn mittag_leffler() {
    let ctx = Ctx::default();
    let m = ml_check(&parse_ring("Z/2").unwrap(), 4, &ctx).unwrap();
    assert!(m.levels.iter().all(|l| l.1) && m.witt_conclusion);
    let m = ml_check(&parse_ring(&format!("{F4} with galois")).unwrap(), 3, &ctx).unwrap();
    assert!(m.witt_conclusion);
    for (r, n) in [("Z/8", 3), ("Z/16", 2)] {
        let m = ml_check(&parse_ring(r).unwrap(), n, &ctx).unwrap();
        assert!(!m.levels[0].1, "{r}");
        assert!(!m.witt_conclusion);
    }
}

#[test]
fn report_json_has_sorted_schema() {
    let ctx = Ctx::default();
    let r = TcrReport {
        input: "Z/2".into(),
        theorem: "char2-perfect-field".into(),
        groups: tcr_phi_char2_field(&field("Z/2"), (-2, 2), &ctx).unwrap(),
        oracle_checked: true,
    };
    let s = serde_json::to_string(&r.to_json()).unwrap();
    let keys = [
        "\"groups\"",
        "\"input\"",
        "\"oracle_checked\"",
        "\"periodicity\"",
        "\"theorem\"",
        "\"window\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}
