//! Odd primes: vanishing of the geometric fixed points and perfect fields.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::{FinAbGroup, GradedGroups, GroupHom};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ringkit::{fixed_subring, is_prime, ring_chart, FinRing, InvRing};
use crate::witt::witt_structure;

use super::field::PerfectRing;

/// `π₀` of the geometric fixed points at an odd prime.
#[derive(Clone, Debug)]
pub struct OddPhi {
    /// `tr: A → A^{Z/2}` is onto, so everything vanishes.
    pub tr_surjective: bool,
    pub pi0: FinAbGroup,
}

fn check_odd(p: u64) -> Result<()> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Zero when the transfer is onto, else `Q ⊗_A Q` with `Q = A^{Z/2}/tr(A)` and `a·x = a x w(a)`.
pub fn tcr_phi_odd(a: &InvRing, p: u64, ctx: &Ctx) -> Result<OddPhi> {
    check_odd(p)?;
    let fx = fixed_subring(a, ctx)?;
    let fr = &fx.ring;
    let m = fr.checked_size(ctx)?;
    let tr_image: BTreeSet<usize> = fx.tr.iter().copied().collect();
    if tr_image.len() == m {
        return Ok(OddPhi {
            tr_surjective: true,
            pi0: FinAbGroup::trivial(),
        });
    }
    let chart = ring_chart(fr, ctx)?;
    let (_, incl) = chart.span(&tr_image.into_iter().collect::<Vec<_>>())?;
    let (q, proj) = incl.cokernel();
    let qc = |i: usize| proj.apply(&chart.coords(i));
    let n = a.ring.checked_size(ctx)?;
    let fels: Vec<Vec<u64>> = (0..m).map(|i| fr.elem_at(i)).collect();
    // action of a ∈ A on Q through the fixed element a·w(a)
    let act = |norm_idx: usize, x: usize| fr.index_of(&fr.mul(&fels[norm_idx], &fels[x]));
    ctx.check_pairs("Frobenius action", (n as u64).pow(2) / 2 * m as u64)?;
    let norms: BTreeSet<usize> = fx.norm.iter().copied().collect();
    for i in 0..n {
        ctx.checkpoint()?;
        for j in i..n {
            let s = a.ring.index_of(&a.ring.add(&a.ring.elem_at(i), &a.ring.elem_at(j)));
            for x in 0..m {
                let lhs = qc(act(fx.norm[s], x));
                let rhs = q.add(&qc(act(fx.norm[i], x)), &qc(act(fx.norm[j], x)));
                if !q.elem_eq(&lhs, &rhs) {
                    return Err(Error::Internal(
                        "a·x = a x w(a) is not additive in a on the quotient".into(),
                    ));
                }
            }
        }
    }
    // Q ⊗ Q on generator pairs
    let d = q.orders().to_vec();
    let r = d.len();
    let tensor = FinAbGroup::from_orders((0..r * r).map(|k| d[k / r].gcd(&d[k % r])).collect());
    let pure = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); r * r];
        for i in 0..r {
            for j in 0..r {
                v[i * r + j] = &x[i] * &y[j];
            }
        }
        tensor.reduce(&v)
    };
    let pre = proj.preimager();
    let lifts: Vec<usize> = (0..r)
        .map(|i| chart.element(&pre.solve(&q.basis_elem(i)).expect("projection is onto")))
        .collect();
    let mut rels = Vec::new();
    for &nv in &norms {
        for i in 0..r {
            let ai = qc(act(nv, lifts[i]));
            for (j, &lj) in lifts.iter().enumerate() {
                let aj = qc(act(nv, lj));
                let t = tensor.add(&pure(&ai, &q.basis_elem(j)), &tensor.neg(&pure(&q.basis_elem(i), &aj)));
                if !tensor.is_zero_elem(&t) {
                    rels.push(t);
                }
            }
        }
    }
    let free = FinAbGroup::from_orders(vec![0; rels.len()]);
    let rel = GroupHom::from_images(free, tensor, &rels)?;
    Ok(OddPhi {
        tr_surjective: false,
        pi0: rel.cokernel().0,
    })
}

/// `π₀ = R(ker(R − F: W_{N+1} → W_N))`, `π₋₁ = coker(R − F)`, all other degrees zero.
#[derive(Clone, Debug)]
pub struct OddField {
    pub groups: GradedGroups,
    /// `coker_N → coker_{N−1}` is onto with kernel `p^{N−1} coker_N`.
    pub stable: bool,
}

pub fn tcr_odd_perfect_field(k: &FinRing, p: u64, depth: usize, window: (i64, i64), ctx: &Ctx) -> Result<OddField> {
    check_odd(p)?;
    if depth == 0 {
        return Err(Error::Invalid("truncation depth must be positive".into()));
    }
    PerfectRing::new(k, p, true, ctx)?;
    let w_hi = witt_structure(k, p, depth + 1, ctx)?;
    let w_lo = witt_structure(k, p, depth, ctx)?;
    let r = w_hi.restriction_hom(&w_lo)?;
    let f = w_hi.frobenius_hom(&w_lo)?;
    let diff = r.sub(&f)?;
    let (_, kin) = diff.kernel();
    let pi0 = r.compose(&kin)?.image().0;
    let (coker, proj) = diff.cokernel();
    let stable = if depth == 1 {
        true
    } else {
        let w_lower = witt_structure(k, p, depth - 1, ctx)?;
        let r2 = w_lo.restriction_hom(&w_lower)?;
        let f2 = w_lo.frobenius_hom(&w_lower)?;
        let (_, proj2) = r2.sub(&f2)?.cokernel();
        let induced = r2.induced_on_quotients(&proj, &proj2)?;
        let pn = GroupHom::scalar(&coker, (p as i64).pow(depth as u32 - 1));
        let (kg, _) = induced.kernel();
        induced.is_surjective() && induced.compose(&pn)?.is_zero() && kg.order() == pn.image().0.order()
    };
    if !stable {
        return Err(Error::Unstable {
            what: format!("coker(R − F) for {} at truncation {depth}", k.describe()),
            depth,
        });
    }
    let groups = GradedGroups::from_fn(window, |d| {
        Ok(match d {
            0 => pi0.clone(),
            -1 => coker.clone(),
            _ => FinAbGroup::trivial(),
        })
    })?;
    Ok(OddField { groups, stable })
}
