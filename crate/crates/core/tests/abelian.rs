use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use tcrcalc::abelian::{
    cokernel, homology, is_exact_at, kernel, mapping_cone, smith_normal_form, ChainComplex, ChainMap, FinAbGroup,
    GroupHom, IntMatrix, Snf,
};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-12i64..13, r * c)
            .prop_map(move |v| IntMatrix::from_rows(&v.chunks(c).map(|row| row.to_vec()).collect::<Vec<_>>()))
    })
}

fn is_unimodular(m: &IntMatrix) -> bool {
    let s = Snf::compute(m);
    m.rows() == m.cols() && s.rank == m.rows() && (0..s.rank).all(|i| s.diag(i).abs().is_one())
}

fn orders() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(prop::sample::select(vec![0u64, 2, 3, 4, 6, 8, 9, 12]), 1..4)
}

/// Random well-defined hom: entry `(i, j)` is a multiple of `t_i / gcd(t_i, s_j)`.
fn hom() -> impl Strategy<Value = GroupHom> {
    (orders(), orders()).prop_flat_map(|(s, t)| {
        let n = s.len() * t.len();
        prop::collection::vec(-5i64..6, n).prop_map(move |k| {
            let rows: Vec<Vec<BigInt>> = t
                .iter()
                .enumerate()
                .map(|(i, &ti)| {
                    s.iter()
                        .enumerate()
                        .map(|(j, &sj)| {
                            let step = if ti == 0 {
                                if sj == 0 {
                                    1
                                } else {
                                    0
                                }
                            } else {
                                ti / ti.gcd(&sj)
                            };
                            BigInt::from(k[i * s.len() + j] * step as i64)
                        })
                        .collect()
                })
                .collect();
            GroupHom::new(
                FinAbGroup::from_orders(s.clone()),
                FinAbGroup::from_orders(t.clone()),
                IntMatrix::from_rows(&rows),
            )
            .expect("constructed to be well defined")
        })
    })
}

proptest! {
    #[test]
    fn snf_is_a_factorization(m in matrix()) {
        let (u, d, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
        prop_assert!(is_unimodular(&u));
        prop_assert!(is_unimodular(&v));
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    prop_assert!(d[(i, j)].is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
            prop_assert!(!w[0].is_negative());
        }
    }

    #[test]
    fn kernel_image_orders(h in hom()) {
        let (k, incl) = kernel(&h);
        let (im, _) = h.image();
        if let (Some(s), Some(ko), Some(io)) = (h.source().order(), k.order(), im.order()) {
            prop_assert_eq!(ko * io, s);
        }
        prop_assert!(incl.is_injective());
        prop_assert!(h.compose(&incl).unwrap().is_zero());
        let (_, proj) = cokernel(&h);
        prop_assert!(proj.is_surjective());
        prop_assert!(is_exact_at(&incl, &h).unwrap());
        prop_assert!(is_exact_at(&h, &proj).unwrap());
    }

    #[test]
    fn invariants_are_a_divisibility_chain(o in orders()) {
        let g = FinAbGroup::from_orders(o);
        let inv = g.invariants();
        prop_assert!(FinAbGroup::from_invariants(&inv).unwrap().is_isomorphic(&g));
        prop_assert_eq!(g.order(), FinAbGroup::from_invariants(&inv).unwrap().order());
    }
}

#[test]
fn pr_plus_square_on_z8() {
    // y ↦ y + y² on ℤ/8 → ℤ/2 is zero since y + y² is even
    let z8 = FinAbGroup::cyclic(8);
    let z2 = FinAbGroup::cyclic(2);
    let images: Vec<BigInt> = (0..8i64).map(|y| BigInt::from((y + y * y) % 2)).collect();
    assert!(images.iter().all(|x| x.is_zero()));
    let h = GroupHom::from_images(z8.clone(), z2, &[vec![BigInt::zero()]]).unwrap();
    assert!(kernel(&h).0.is_isomorphic(&z8));
}

#[test]
fn cone_of_multiplication_by_two() {
    // cone of 2: ℤ → ℤ in degree 0 has H_0 = ℤ/2
    let z = FinAbGroup::integers();
    let c = ChainComplex::from_groups(0, vec![z.clone()]);
    let phi = ChainMap::new(c.clone(), c, 0, vec![GroupHom::scalar(&z, 2)]).unwrap();
    let cone = mapping_cone(&phi).unwrap();
    assert_eq!(homology(&cone, 0).invariants(), vec![2]);
    assert!(homology(&cone, 1).is_trivial());
}
