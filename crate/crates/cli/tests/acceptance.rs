//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use tcrcalc::abelian::FinAbGroup;
use tcrcalc::barcalc::{abelian_report, check_abelian_closed_form, check_finite_abelian, components, Card, GroupSpec};
use tcrcalc::mackey::{constant_mackey, fixedpoint_mackey, norm_cofiber_homotopy, norm_pair, rep_sphere_homotopy};
use tcrcalc::ringkit::{parse_ring, Elem, FinRing, ProRing};
use tcrcalc::tcr::*;
use tcrcalc::witt::{witt_structure, WittRing};
use tcrcalc::{Ctx, Error};

const F4: &str = "GF(2,x^2+x+1)";
const F8: &str = "GF(2,x^3+x+1)";

fn ring(s: &str) -> FinRing {
    parse_ring(s).unwrap().ring
}

fn elements(w: &std::sync::Arc<WittRing>) -> Vec<Elem> {
    FinRing::Witt(w.clone()).elements(&Ctx::default()).unwrap()
}

type Criterion = (&'static str, fn(), Option<Duration>);

type BaseMap = Box<dyn Fn(&FinRing, &[u64]) -> Elem>;

fn criterion_1() {
    let ctx = Ctx::default();
    for n in 1..=4 {
        let s = witt_structure(&ring("Z/2"), 2, n, &ctx).unwrap();
        assert_eq!(s.group().invariants(), vec![1u64 << n]);
    }
    let rings = [
        "Z/2",
        "Z/3",
        "Z/4",
        "Z/5",
        "Z/6",
        "Z/7",
        "Z/8",
        "Z/9",
        F4,
        F8,
        "GF(3,x^2+1)",
        "Z/2xZ/2",
        "Z/2xZ/4",
        "Z/2[C2]",
        "Z/3xZ/3",
        "Z/2xZ/3",
    ];
    for r in rings {
        let a = ring(r);
        assert!(a.order() <= 9);
        for p in [2u64, 3] {
            let w: Vec<_> = (1..=3).map(|n| WittRing::new(a.clone(), p, n, &ctx).unwrap()).collect();
            let el: Vec<Vec<Elem>> = w.iter().map(elements).collect();
            for n in 1..=2 {
                let (lo, hi) = (&w[n - 1], &w[n]);
                // F V = p
                for x in &el[n - 1] {
                    let mut px = lo.zero();
                    for _ in 0..p {
                        px = lo.add(&px, x);
                    }
                    assert_eq!(hi.frobenius(&lo.verschiebung(x)), px, "FV = p on W_{n}({r};{p})");
                }
                // V(F(x) y) = x V(y)
                for x in &el[n] {
                    let fx = hi.frobenius(x);
                    for y in &el[n - 1] {
                        assert_eq!(
                            lo.verschiebung(&lo.mul(&fx, y)),
                            hi.mul(x, &lo.verschiebung(y)),
                            "projection formula on W_{}({r};{p})",
                            n + 1
                        );
                    }
                }
            }
            // ghost naturality along ring endomorphisms of A
            let mut maps: Vec<(&str, BaseMap)> = vec![("id", Box::new(|_: &FinRing, x: &[u64]| x.to_vec()))];
            if a.characteristic() == p {
                maps.push(("frobenius", Box::new(move |a: &FinRing, x: &[u64]| a.pow(x, p))));
            }
            if r.contains('x') && !r.starts_with("GF") {
                let h = a.width() / 2;
                if r == "Z/2xZ/2" || r == "Z/3xZ/3" {
                    maps.push((
                        "swap",
                        Box::new(move |_: &FinRing, x: &[u64]| [&x[h..], &x[..h]].concat()),
                    ));
                }
            }
            for (name, f) in &maps {
                for x in &el[2] {
                    let image = w[2].map_coords(x, |c| f(&a, c));
                    let expect: Vec<Elem> = w[2].ghost(x).iter().map(|g| f(&a, g)).collect();
                    assert_eq!(
                        w[2].ghost(&image),
                        expect,
                        "ghost naturality for {name} on W_3({r};{p})"
                    );
                }
            }
            // ghost is additive and multiplicative on W_2
            for x in &el[1] {
                let gx = w[1].ghost(x);
                for y in &el[1] {
                    let gy = w[1].ghost(y);
                    let gs = w[1].ghost(&w[1].add(x, y));
                    let gm = w[1].ghost(&w[1].mul(x, y));
                    for i in 0..2 {
                        assert_eq!(gs[i], a.add(&gx[i], &gy[i]));
                        assert_eq!(gm[i], a.mul(&gx[i], &gy[i]));
                    }
                }
            }
        }
    }
    // naturality along reductions between different rings
    for (src, tgt, p, m) in [("Z/4", "Z/2", 2u64, 2u64), ("Z/8", "Z/4", 2, 4), ("Z/9", "Z/3", 3, 3)] {
        let (a, b) = (ring(src), ring(tgt));
        let wa = WittRing::new(a, p, 3, &ctx).unwrap();
        let wb = WittRing::new(b, p, 3, &ctx).unwrap();
        for x in elements(&wa) {
            let image = wa.map_coords(&x, |c| vec![c[0] % m]);
            let expect: Vec<Elem> = wa.ghost(&x).iter().map(|g| vec![g[0] % m]).collect();
            assert_eq!(wb.ghost(&image), expect, "ghost naturality {src} → {tgt}");
        }
    }
}

fn criterion_2() {
    let z = rep_sphere_homotopy(&constant_mackey(&FinAbGroup::integers()), 2).unwrap();
    assert_eq!(
        (z.invariants(2), z.invariants(3), z.invariants(4)),
        (vec![2], vec![], vec![0])
    );
    let (u, w) = norm_pair();
    let m = fixedpoint_mackey(&u, &w).unwrap();
    assert_eq!(m.fixed.invariants(), vec![2, 0]);
    for k in [0i64, 2, 4, 6] {
        let g = norm_cofiber_homotopy(k).unwrap();
        for d in k..2 * k {
            assert_eq!(g.invariants(d), vec![2], "k = {k}, degree {d}");
        }
        assert_eq!(g.invariants(2 * k), vec![4], "k = {k}");
        assert_eq!(g.invariants(2 * k + 1), vec![2], "k = {k}");
        for d in (g.window.0..k).chain(2 * k + 2..=g.window.1) {
            assert!(g.get(d).is_trivial());
        }
    }
}

fn criterion_3() {
    let ctx = Ctx::default();
    for k in ["Z/2", F4] {
        for l in 1..=4 {
            let c = trr_phi_tower(&ring(k), l, (0, 6), &ctx).unwrap();
            let o = trr_phi_oracle(&ring(k), l, (0, 6), &ctx).unwrap();
            assert!(oracle_matches(&c, &o).unwrap(), "{k} level {l}");
        }
    }
    let t = trr_phi_tower(&ring("Z/2"), 1, (2, 2), &ctx).unwrap();
    let d = &t.degrees[&2];
    assert_eq!(d.group.invariants(), vec![2, 2, 2]);
    assert_eq!(d.r.image().0.invariants(), vec![2]);
    assert_eq!(d.f.image().0.invariants(), vec![2, 2]);
}

fn criterion_4() {
    let ctx = Ctx::default();
    for k in ["Z/2", F4] {
        let kf = PerfectRing::new(&ring(k), 2, true, &ctx).unwrap();
        let lim = trr_phi_limit(&ring(k), (0, 8), &ctx).unwrap();
        for d in 0..=8 {
            let g = lim.groups.get(d);
            assert!(
                if d % 2 == 0 {
                    g.is_isomorphic(kf.group())
                } else {
                    g.is_trivial()
                },
                "{k} degree {d}"
            );
        }
        for d in (0..=8).step_by(2) {
            let e = &lim.embedding[&d];
            let f = &lim.frobenius[&d];
            // the limit sits on the diagonal summands, where F acts as the Frobenius of k
            let diag = e.compose(f).unwrap();
            assert!(f.is_iso());
            let sq = if d == 0 {
                kf.frob.compose(e).unwrap()
            } else {
                diag.clone()
            };
            assert!(diag.equals(&sq), "{k} degree {d}");
        }
    }
}

fn criterion_5() {
    let ctx = Ctx::default();
    for k in ["Z/2", F4, F8] {
        let kr = ring(k);
        let g = tcr_phi_char2_field(&kr, (-2, 8), &ctx).unwrap();
        assert!(g.same_groups(&char2_field_closed_form(&kr, (-2, 8), &ctx).unwrap()));
        let el = kr.elements(&ctx).unwrap();
        let image: BTreeSet<Elem> = el.iter().map(|x| kr.add(x, &kr.mul(x, x))).collect();
        let q = (el.len() / image.len()) as u64;
        assert!(g.get(-2).is_trivial());
        for d in -1..=8 {
            assert_eq!(
                g.get(d).order_u64(),
                Some(if d % 2 == 0 { 2 } else { q }),
                "{k} degree {d}"
            );
        }
    }
}

fn criterion_6() {
    let ctx = Ctx::default();
    let t = tcr_phi_torsionfree(&ProRing::parse("Z").unwrap(), (-2, 9), &ctx).unwrap();
    let o = tcr_phi_z_oracle((-2, 9), &ctx).unwrap();
    for g in [&t.groups, &o] {
        assert!(g.get(-2).is_trivial());
        for d in -1i64..=9 {
            let expect: Vec<u64> = match d.rem_euclid(4) {
                0 => vec![8],
                2 => vec![],
                _ => vec![2],
            };
            assert_eq!(g.invariants(d), expect, "degree {d}");
        }
    }
}

fn criterion_7() {
    let ctx = Ctx::default();
    for (r, n) in [
        ("Z/2", 1),
        ("Z/2", 2),
        ("Z/4", 1),
        (F4, 1),
        ("GF(2,x^2+x+1) with galois", 1),
    ] {
        let g = pi0_trr_green(&parse_ring(r).unwrap(), n, &ctx).unwrap();
        g.check_axioms(&ctx).unwrap();
        if (r, n) == ("Z/2", 2) {
            assert_eq!(g.fixed_group().invariants(), vec![8]);
        }
    }
    match pi0_trr_green(&parse_ring("Z/4[C2]").unwrap(), 1, &ctx) {
        Err(Error::Refused { hypothesis, detail }) => {
            assert!(hypothesis.contains("μ"));
            assert!(detail.contains('⊗'), "witness missing: {detail}");
        }
        other => panic!("expected a refusal, got {other:?}"),
    }
}

fn criterion_8() {
    let ctx = Ctx::default();
    for (r, n) in [("Z/2", 4), (F4, 3), ("Z/2xZ/2", 3), ("GF(2,x^2+x+1) with galois", 3)] {
        let m = ml_check(&parse_ring(r).unwrap(), n, &ctx).unwrap();
        assert!(m.witt_conclusion && m.levels.iter().all(|l| l.1), "{r}");
    }
    for r in ["Z/8", "Z/16"] {
        let m = ml_check(&parse_ring(r).unwrap(), 2, &ctx).unwrap();
        assert!(!m.levels[0].1, "{r}");
    }
}

fn criterion_9() {
    let ctx = Ctx::default();
    let r = tcr_phi_odd(&parse_ring("Z/9").unwrap(), 3, &ctx).unwrap();
    assert!(r.pi0.is_trivial());
    for n in 1..=4 {
        let o = tcr_odd_perfect_field(&ring("Z/3"), 3, n, (-3, 3), &ctx).unwrap();
        let q = 3u64.pow(n as u32);
        for d in -3..=3 {
            let expect = if d == 0 || d == -1 { vec![q] } else { vec![] };
            assert_eq!(o.groups.invariants(d), expect, "N = {n}, degree {d}");
        }
    }
}

fn criterion_10() {
    let ctx = Ctx::default();
    let m = GroupSpec::parse("C2 with inv").unwrap().finite(&ctx).unwrap();
    let d = components(&m, &ctx).unwrap();
    assert_eq!(d.len(), 4);
    for (c, &(x, y)) in d.reps.iter().enumerate() {
        assert_eq!(d.aut[c].len(), 2);
        assert_eq!(d.reps[d.psi[c]], (x, x));
        assert_eq!(d.reps[d.tau[c]], (y, x));
    }
    let z = FinAbGroup::integers();
    assert!(check_abelian_closed_form(&z, 10, &ctx).unwrap());
    let r = abelian_report(&z).unwrap();
    assert_eq!((r.type_one, r.type_two), (Card::Finite(2), Card::CountablyInfinite));
    let mut count = 0;
    for n in 1..=16u64 {
        for inv in invariant_lists(n) {
            let g = FinAbGroup::from_invariants(&inv).unwrap();
            assert!(check_finite_abelian(&g, &ctx).unwrap(), "{inv:?}");
            count += 1;
        }
    }
    assert_eq!(count, 25);
}

fn invariant_lists(n: u64) -> Vec<Vec<u64>> {
    fn rec(rest: u64, last: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rest {
            if rest % d == 0 && (last == 0 || d % last == 0) {
                acc.push(d);
                rec(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut Vec::new(), &mut out);
    out
}

fn criterion_11() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_tcrcalc"))
            .args(["fixtures", "--format", "json"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        out.stdout
    };
    let start = Instant::now();
    let a = run();
    assert!(start.elapsed() < Duration::from_secs(300));
    let b = run();
    assert_eq!(a, b, "fixture output is not deterministic");
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 0);
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Witt core identities", criterion_1, Some(Duration::from_secs(10))),
        ("Bredon homotopy of S^{kρ}", criterion_2, Some(Duration::from_secs(1))),
        ("tower oracle", criterion_3, Some(Duration::from_secs(30))),
        ("limit of the tower", criterion_4, None),
        ("TCR of char 2 fields", criterion_5, None),
        ("TCR of the integers", criterion_6, None),
        ("π₀ as a Green functor", criterion_7, None),
        ("Mittag-Leffler", criterion_8, None),
        ("odd primes", criterion_9, None),
        ("bar construction census", criterion_10, None),
        ("fixture suite", criterion_11, Some(Duration::from_secs(300))),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        let t = start.elapsed();
        let in_time = budget.map_or(true, |b| t <= b);
        let pass = ok && in_time;
        if !pass {
            failed += 1;
        }
        let budget = budget.map_or(String::new(), |b| format!(", budget {}s", b.as_secs()));
        let note = if ok && !in_time { " over budget" } else { "" };
        println!(
            "criterion {:>2}: {} {name} ({:.2}s{budget}){note}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            t.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
