//! Geometric fixed points of TCR for perfect rings of characteristic two.

use crate::abelian::{graded_kernel_of_difference, FinAbGroup, GradedGroups, GradedHom, GroupHom, Periodicity};
use crate::ctx::Ctx;
use crate::error::Result;
use crate::ringkit::FinRing;

use super::field::PerfectRing;
use super::tower::{lower_f, lower_r};

/// Fibre of `r − f` from the genuine fixed points: `π_d = ker(r−f)_d ⊕ coker(r−f)_{d+1}`.
pub fn tcr_phi_char2_field(k: &FinRing, window: (i64, i64), ctx: &Ctx) -> Result<GradedGroups> {
    let kf = PerfectRing::new(k, 2, true, ctx)?;
    let mut r = GradedHom::new();
    let mut f = GradedHom::new();
    for d in window.0.max(0)..=window.1 + 1 {
        ctx.checkpoint()?;
        r.insert(d, lower_r(&kf, d)?);
        f.insert(d, lower_f(&kf, d)?);
    }
    let diff = graded_kernel_of_difference(&r, &f)?;
    let mut g = GradedGroups::from_fn(window, |d| {
        let ker = diff.kernels.get(&d).map(|x| x.0.clone()).unwrap_or_default();
        let coker = diff.cokernels.get(&(d + 1)).map(|x| x.0.clone()).unwrap_or_default();
        Ok(ker.direct_sum(&coker))
    })?;
    let closed = artin_schreier(&kf)?;
    g.periodicity = Some(Periodicity {
        period: 2,
        start: -1,
        pattern: vec![closed.1.invariants(), vec![2]],
        asserted_by: "TCR of perfect fields of characteristic 2: F_2 in even degrees ≥ 0, k/(x+x²) in odd degrees ≥ -1"
            .into(),
    });
    Ok(g)
}

/// Kernel and cokernel of the additive map `x ↦ x + x²`.
fn artin_schreier(a: &PerfectRing) -> Result<(FinAbGroup, FinAbGroup)> {
    let phi = a.id().add(&a.frob)?;
    Ok((phi.kernel().0, phi.cokernel().0))
}

/// The closed form `F_2` in even degrees `≥ 0` and `k/(x+x²)` in odd degrees `≥ -1`, by enumeration.
pub fn char2_field_closed_form(k: &FinRing, window: (i64, i64), ctx: &Ctx) -> Result<GradedGroups> {
    let kf = PerfectRing::new(k, 2, true, ctx)?;
    let (_, coker) = artin_schreier(&kf)?;
    GradedGroups::from_fn(window, |d| {
        Ok(if d < -1 {
            FinAbGroup::trivial()
        } else if d % 2 == 0 {
            FinAbGroup::cyclic(2)
        } else {
            coker.clone()
        })
    })
}

/// `π_{2n} = ker(id + (−)²)`, `π_{2n−1} = coker(id + (−)²)` for a perfect `F_2`-algebra.
pub fn tcr_phi_perfect_algebra(a: &FinRing, window: (i64, i64), ctx: &Ctx) -> Result<GradedGroups> {
    let pa = PerfectRing::new(a, 2, false, ctx)?;
    let (ker, coker) = artin_schreier(&pa)?;
    let mut g = GradedGroups::from_fn(window, |d| {
        Ok(if d < -1 {
            FinAbGroup::trivial()
        } else if d.rem_euclid(2) == 0 {
            ker.clone()
        } else {
            coker.clone()
        })
    })?;
    g.periodicity = Some(Periodicity {
        period: 2,
        start: -1,
        pattern: vec![coker.invariants(), ker.invariants()],
        asserted_by: "TCR of perfect F_2-algebras".into(),
    });
    Ok(g)
}

/// `id + (−)²` as a hom on the additive group of a perfect `F_2`-algebra.
pub fn artin_schreier_hom(a: &FinRing, ctx: &Ctx) -> Result<GroupHom> {
    let pa = PerfectRing::new(a, 2, false, ctx)?;
    pa.id().add(&pa.frob)
}
