use num_bigint::BigInt;
use proptest::prelude::*;

use tcrcalc::ringkit::{parse_ring, Elem, FinRing};
use tcrcalc::witt::{build_polys, witt_structure, WittRing};
use tcrcalc::Ctx;

fn ring(s: &str) -> FinRing {
    parse_ring(s).unwrap().ring
}

fn witt(base: &FinRing, p: u64, n: usize) -> (std::sync::Arc<WittRing>, Vec<Elem>) {
    let ctx = Ctx::default();
    let w = WittRing::new(base.clone(), p, n, &ctx).unwrap();
    let elems = FinRing::Witt(w.clone()).elements(&ctx).unwrap();
    (w, elems)
}

fn times_p(w: &WittRing, x: &[u64]) -> Elem {
    let mut acc = w.zero();
    for _ in 0..w.prime() {
        acc = w.add(&acc, x);
    }
    acc
}

#[test]
fn witt_of_f2_is_cyclic() {
    let ctx = Ctx::default();
    for n in 1..=4 {
        let s = witt_structure(&ring("Z/2"), 2, n, &ctx).unwrap();
        assert_eq!(s.group().invariants(), vec![1u64 << n]);
    }
    let s = witt_structure(&ring("GF(2,x^2+x+1)"), 2, 3, &ctx).unwrap();
    assert_eq!(s.group().invariants(), vec![8, 8]);
    let s = witt_structure(&ring("Z/3"), 3, 3, &ctx).unwrap();
    assert_eq!(s.group().invariants(), vec![27]);
    // p is invertible in Z/3, so W_2(Z/3;2) ≅ Z/3 × Z/3 through the ghost map
    let s = witt_structure(&ring("Z/3"), 2, 2, &ctx).unwrap();
    assert_eq!(s.group().invariants(), vec![3, 3]);
}

#[test]
fn frobenius_after_verschiebung_is_p() {
    for (r, p) in [
        ("Z/2", 2),
        ("Z/4", 2),
        ("GF(2,x^2+x+1)", 2),
        ("Z/3", 3),
        ("Z/9", 3),
        ("Z/2", 3),
    ] {
        let a = ring(r);
        for n in 1..=2 {
            let (wn, elems) = witt(&a, p, n);
            let (wn1, _) = witt(&a, p, n + 1);
            for x in &elems {
                assert_eq!(wn1.frobenius(&wn.verschiebung(x)), times_p(&wn, x), "{r}, n = {n}");
            }
        }
    }
}

#[test]
fn projection_formula() {
    for (r, p) in [("Z/2", 2), ("Z/4", 2), ("Z/2xZ/2", 2), ("Z/3", 3), ("GF(3,x^2+1)", 3)] {
        let a = ring(r);
        for n in 1..=2 {
            let (wn, small) = witt(&a, p, n);
            let (wn1, big) = witt(&a, p, n + 1);
            for x in &big {
                let fx = wn1.frobenius(x);
                for y in &small {
                    let lhs = wn.verschiebung(&wn.mul(&fx, y));
                    let rhs = wn1.mul(x, &wn.verschiebung(y));
                    assert_eq!(lhs, rhs, "{r}, n = {n}");
                }
            }
        }
    }
}

#[test]
fn ghost_is_a_ring_map_and_natural() {
    // ring maps A → B with their effect on elements
    type Map = Box<dyn Fn(&[u64]) -> Elem>;
    let cases: Vec<(&str, &str, u64, Map)> = vec![
        ("Z/4", "Z/2", 2, Box::new(|a: &[u64]| vec![a[0] % 2])),
        ("Z/8", "Z/4", 2, Box::new(|a: &[u64]| vec![a[0] % 4])),
        ("Z/9", "Z/3", 3, Box::new(|a: &[u64]| vec![a[0] % 3])),
        ("Z/2xZ/2", "Z/2xZ/2", 2, Box::new(|a: &[u64]| vec![a[1], a[0]])),
    ];
    for (src, tgt, p, f) in cases {
        let (a, b) = (ring(src), ring(tgt));
        let (wa, elems) = witt(&a, p, 3);
        let (wb, _) = witt(&b, p, 3);
        let wf = |x: &[u64]| wa.map_coords(x, |c| f(c));
        for x in &elems {
            let gx = wa.ghost(x);
            let mapped: Vec<Elem> = gx.iter().map(|g| f(g)).collect();
            assert_eq!(wb.ghost(&wf(x)), mapped, "{src} → {tgt}");
            for y in elems.iter().step_by(11) {
                let gy = wa.ghost(y);
                let gs = wa.ghost(&wa.add(x, y));
                let gm = wa.ghost(&wa.mul(x, y));
                for i in 0..3 {
                    assert_eq!(gs[i], a.add(&gx[i], &gy[i]));
                    assert_eq!(gm[i], a.mul(&gx[i], &gy[i]));
                }
                assert_eq!(wb.add(&wf(x), &wf(y)), wf(&wa.add(x, y)));
                assert_eq!(wb.mul(&wf(x), &wf(y)), wf(&wa.mul(x, y)));
            }
        }
    }
}

#[test]
fn frobenius_on_ghosts_shifts() {
    let a = ring("Z/9");
    let (w3, elems) = witt(&a, 3, 3);
    for x in &elems {
        let g = w3.ghost(x);
        let (w2, _) = witt(&a, 3, 2);
        let gf = w2.ghost(&w3.frobenius(x));
        assert_eq!(gf, g[1..].to_vec());
    }
}

#[test]
fn witt_polynomials_reproduce_ghosts_over_z() {
    // the sum polynomials satisfy w_i(S) = w_i(X) + w_i(Y) as integer polynomials
    for (p, n) in [(2, 3), (3, 3), (5, 2)] {
        let set = build_polys(p, n).unwrap();
        for i in 0..n {
            let vals: Vec<BigInt> = (0..2 * n).map(|k| BigInt::from(k as i64 * 7 - 5)).collect();
            let s: Vec<BigInt> = set.sums.iter().map(|q| q.eval_int(&vals)).collect();
            let ghost = |v: &[BigInt]| -> BigInt {
                (0..=i)
                    .map(|j| BigInt::from(p).pow(j as u32) * v[j].pow((p as u32).pow((i - j) as u32)))
                    .sum()
            };
            let x: Vec<BigInt> = (0..n).map(|k| vals[2 * k].clone()).collect();
            let y: Vec<BigInt> = (0..n).map(|k| vals[2 * k + 1].clone()).collect();
            assert_eq!(ghost(&s), ghost(&x) + ghost(&y), "p = {p}, i = {i}");
        }
    }
}

proptest! {
    #[test]
    fn witt_ring_axioms_on_gf9(x in 0usize..729, y in 0usize..729, z in 0usize..729) {
        let a = ring("GF(3,x^2+1)");
        let w = WittRing::new(a, 3, 3, &Ctx::default()).unwrap();
        let r = FinRing::Witt(w.clone());
        let (x, y, z) = (r.elem_at(x), r.elem_at(y), r.elem_at(z));
        prop_assert_eq!(w.add(&x, &y), w.add(&y, &x));
        prop_assert_eq!(w.mul(&x, &y), w.mul(&y, &x));
        prop_assert_eq!(w.add(&w.add(&x, &y), &z), w.add(&x, &w.add(&y, &z)));
        prop_assert_eq!(w.mul(&w.mul(&x, &y), &z), w.mul(&x, &w.mul(&y, &z)));
        prop_assert_eq!(w.mul(&x, &w.add(&y, &z)), w.add(&w.mul(&x, &y), &w.mul(&x, &z)));
        prop_assert_eq!(w.add(&x, &w.neg(&x)), w.zero());
        prop_assert_eq!(w.mul(&x, &w.one()), x.clone());
        prop_assert_eq!(w.restriction(&w.mul(&x, &y)), {
            let w2 = WittRing::new(ring("GF(3,x^2+1)"), 3, 2, &Ctx::default()).unwrap();
            w2.mul(&w.restriction(&x), &w.restriction(&y))
        });
    }
}
