//! `π₀` of TRR as a Green functor built from Witt vectors, and the Mittag-Leffler test.

use std::sync::Arc;

use crate::abelian::{FinAbGroup, GroupHom};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ringkit::{fixed_subring, mu_is_iso, ring_chart, Chart, FinRing, FixedSubring, InvRing, MuReport};
use crate::witt::WittRing;

/// `W_{n+1}(A;2)` with `W(w)` over `W_{n+1}(A^{Z/2};2)`.
#[derive(Clone, Debug)]
pub struct GreenFunctorData {
    pub n: usize,
    pub underlying: InvRing,
    pub fixed: FinRing,
    pub underlying_chart: Chart,
    pub fixed_chart: Chart,
    /// Fixed index to underlying index.
    pub res_table: Vec<usize>,
    pub res: GroupHom,
    pub tr: GroupHom,
    pub w: GroupHom,
}

fn witt_ring(r: &FinRing, len: usize, ctx: &Ctx) -> Result<Arc<WittRing>> {
    WittRing::new(r.clone(), 2, len, ctx)
}

/// The pair `W_len(A) ⊇ W_len(A^{Z/2})` with charts, `res`, `W(w)` and `tr`.
struct WittPair {
    under: InvRing,
    fixed: FinRing,
    uc: Chart,
    fc: Chart,
    res_table: Vec<usize>,
    res: GroupHom,
    w: GroupHom,
    tr: GroupHom,
}

fn witt_pair(a: &InvRing, fx: &FixedSubring, len: usize, ctx: &Ctx) -> Result<WittPair> {
    let under = a.witt(2, len, ctx)?;
    let uw = witt_ring(&a.ring, len, ctx)?;
    let fw = witt_ring(&fx.ring, len, ctx)?;
    let fixed = FinRing::Witt(fw.clone());
    let uc = ring_chart(&under.ring, ctx)?;
    let fc = ring_chart(&fixed, ctx)?;
    let m = fixed.checked_size(ctx)?;
    let res_table: Vec<usize> = (0..m)
        .map(|i| {
            let x = fixed.elem_at(i);
            let coords: Vec<Vec<u64>> = fw
                .coords(&x)
                .iter()
                .map(|c| a.ring.elem_at(fx.incl[fx.ring.index_of(c)]))
                .collect();
            under.ring.index_of(&uw.from_coords(&coords))
        })
        .collect();
    let res = fc.hom_from_fn(&uc, |i| res_table[i])?;
    let w = uc.hom_from_fn(&uc, |i| under.ring.index_of(&under.apply_w(&under.ring.elem_at(i))))?;
    let one_plus_w = GroupHom::identity(uc.group()).add(&w)?;
    let tr = one_plus_w
        .lift_through(&res)
        .map_err(|_| Error::Internal("x + W(w)x is not in the fixed Witt vectors".into()))?;
    Ok(WittPair {
        under,
        fixed,
        uc,
        fc,
        res_table,
        res,
        w,
        tr,
    })
}

fn mu_refusal(mu: &MuReport) -> Error {
    Error::refused(
        "μ: A^{Z/2} ⊗_N A^{Z/2} → A^{Z/2} is an isomorphism",
        format!(
            "ker μ ≅ {}, containing {}",
            mu.kernel.render(),
            mu.witness.clone().unwrap_or_default()
        ),
    )
}

/// Builds the Green functor at level `n` and checks its axioms exhaustively; refuses when μ is not an isomorphism.
pub fn pi0_trr_green(a: &InvRing, n: usize, ctx: &Ctx) -> Result<GreenFunctorData> {
    let mu = mu_is_iso(a, ctx)?;
    if !mu.iso {
        return Err(mu_refusal(&mu));
    }
    let fx = fixed_subring(a, ctx)?;
    let wp = witt_pair(a, &fx, n + 1, ctx)?;
    let g = GreenFunctorData {
        n,
        underlying: wp.under,
        fixed: wp.fixed,
        underlying_chart: wp.uc,
        fixed_chart: wp.fc,
        res_table: wp.res_table,
        res: wp.res,
        tr: wp.tr,
        w: wp.w,
    };
    g.check_axioms(ctx)?;
    Ok(g)
}

impl GreenFunctorData {
    pub fn fixed_group(&self) -> &FinAbGroup {
        self.fixed_chart.group()
    }

    pub fn underlying_group(&self) -> &FinAbGroup {
        self.underlying_chart.group()
    }

    /// `res` multiplicative and unital, `res∘tr = 1 + W(w)`, `W(w)∘res = res`, `tr∘W(w) = tr`,
    /// and Frobenius reciprocity `tr(res(a)·x) = a·tr(x)`, on all elements.
    pub fn check_axioms(&self, ctx: &Ctx) -> Result<()> {
        let u = &self.underlying.ring;
        let f = &self.fixed;
        let bad = |what: &str| Err(Error::Internal(format!("Green functor axiom fails: {what}")));
        let id = GroupHom::identity(self.underlying_group());
        if !self.res.compose(&self.tr)?.equals(&id.add(&self.w)?) {
            return bad("res∘tr = 1 + W(w)");
        }
        if !self.w.compose(&self.res)?.equals(&self.res) {
            return bad("W(w)∘res = res");
        }
        if !self.tr.compose(&self.w)?.equals(&self.tr) {
            return bad("tr∘W(w) = tr");
        }
        let m = f.checked_size(ctx)?;
        let nu = u.checked_size(ctx)?;
        ctx.check_pairs("Green functor axioms", (m as u64) * (m.max(nu) as u64))?;
        if self.res_table[f.index_of(&f.one())] != u.index_of(&u.one()) {
            return bad("res(1) = 1");
        }
        let fels: Vec<Vec<u64>> = (0..m).map(|i| f.elem_at(i)).collect();
        for a in 0..m {
            ctx.checkpoint()?;
            for b in 0..m {
                let lhs = self.res_table[f.index_of(&f.mul(&fels[a], &fels[b]))];
                let rhs = u.index_of(&u.mul(&u.elem_at(self.res_table[a]), &u.elem_at(self.res_table[b])));
                if lhs != rhs {
                    return bad("res is multiplicative");
                }
            }
        }
        let tr_of = |x: usize| {
            self.fixed_chart
                .element(&self.tr.apply(&self.underlying_chart.coords(x)))
        };
        for (a, fa) in fels.iter().enumerate() {
            ctx.checkpoint()?;
            let ra = u.elem_at(self.res_table[a]);
            for x in 0..nu {
                let lhs = tr_of(u.index_of(&u.mul(&ra, &u.elem_at(x))));
                let rhs = f.index_of(&f.mul(fa, &f.elem_at(tr_of(x))));
                if lhs != rhs {
                    return bad("Frobenius reciprocity");
                }
            }
        }
        Ok(())
    }
}

/// Per level whether `R: W_{n+1}(A^{Z/2})/tr → W_n(A^{Z/2})/tr` is an isomorphism.
#[derive(Clone, Debug)]
pub struct MlReport {
    /// `(n, R is an isomorphism at n)` for `n = 1..=N`.
    pub levels: Vec<(usize, bool)>,
    /// All levels passed, so `π₀` of the limit is `W(A^{Z/2};2)`.
    pub witt_conclusion: bool,
}

pub fn ml_check(a: &InvRing, depth: usize, ctx: &Ctx) -> Result<MlReport> {
    if depth == 0 {
        return Err(Error::Invalid("depth must be positive".into()));
    }
    let mu = mu_is_iso(a, ctx)?;
    if !mu.iso {
        return Err(mu_refusal(&mu));
    }
    let fx = fixed_subring(a, ctx)?;
    let mut prev = witt_pair(a, &fx, 1, ctx)?;
    let mut prev_proj = prev.tr.cokernel().1;
    let mut levels = Vec::new();
    for n in 1..=depth {
        ctx.checkpoint()?;
        let cur = witt_pair(a, &fx, n + 1, ctx)?;
        let cur_proj = cur.tr.cokernel().1;
        let fw = match &cur.fixed {
            FinRing::Witt(w) => w.clone(),
            _ => unreachable!("fixed ring of a Witt pair is a Witt ring"),
        };
        let r = cur.fc.hom_from_fn(&prev.fc, |i| {
            prev.fixed.index_of(&fw.restriction(&cur.fixed.elem_at(i)))
        })?;
        let induced = r.induced_on_quotients(&cur_proj, &prev_proj)?;
        levels.push((n, induced.is_iso()));
        prev = cur;
        prev_proj = cur_proj;
    }
    let witt_conclusion = levels.iter().all(|&(_, ok)| ok);
    Ok(MlReport {
        levels,
        witt_conclusion,
    })
}
