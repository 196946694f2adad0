//! Geometric fixed points of TCR for 2-torsion free rings with perfect reduction mod 2.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::abelian::{
    mapping_cone, ChainComplex, ChainMap, FinAbGroup, GradedGroups, GroupHom, IntMatrix, Periodicity,
};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ringkit::{ring_chart, Chart, FinRing, ProRing};

/// The three nonzero groups of the formula at one level of the tower.
struct LevelData {
    ring: FinRing,
    chart: Chart,
    /// `B → B/⟨b + b²⟩`.
    q1: GroupHom,
    /// `B → B/⟨4(b + b²)⟩`.
    q4: GroupHom,
    /// `B → B/2`.
    q2: GroupHom,
    /// `ker(pr + pr²: B/⟨4(x+x²)⟩ → B/2)`.
    k4: GroupHom,
    /// `ker(id + (−)²)` on `B/2`.
    k2: GroupHom,
}

fn span_quotient(chart: &Chart, elems: Vec<usize>) -> Result<GroupHom> {
    let set: BTreeSet<usize> = elems.into_iter().collect();
    let v: Vec<usize> = set.into_iter().collect();
    let (_, incl) = chart.span(&v)?;
    Ok(incl.cokernel().1)
}

fn level_data(b: &ProRing, n: usize, ctx: &Ctx) -> Result<LevelData> {
    let ring = b.level(n, ctx)?.ring;
    let chart = ring_chart(&ring, ctx)?;
    let size = ring.checked_size(ctx)?;
    let els: Vec<Vec<u64>> = (0..size).map(|i| ring.elem_at(i)).collect();
    let as_idx: Vec<usize> = els
        .iter()
        .map(|x| ring.index_of(&ring.add(x, &ring.mul(x, x))))
        .collect();
    let four = BigInt::from(4);
    let q1 = span_quotient(&chart, as_idx.clone())?;
    let q4 = span_quotient(
        &chart,
        as_idx
            .iter()
            .map(|&i| ring.index_of(&ring.times(&four, &els[i])))
            .collect(),
    )?;
    let q2 = GroupHom::scalar(chart.group(), 2).cokernel().1;
    let b2 = q2.target().clone();
    // 2-torsion freeness at this level: ker(2) = 2^{n-1} B
    let two = GroupHom::scalar(chart.group(), 2);
    let top = GroupHom::scalar(chart.group(), 1i64 << (n - 1).min(62));
    if two.kernel().0.order() != top.image().0.order() {
        return Err(Error::refused(
            "B has no 2-torsion",
            format!("level {n} ring {} has extra 2-torsion", ring.describe()),
        ));
    }
    // B/2 perfect
    let squares: BTreeSet<Vec<BigInt>> = els
        .iter()
        .map(|x| q2.apply(&chart.coords(ring.index_of(&ring.mul(x, x)))))
        .collect();
    if Some(BigInt::from(squares.len())) != b2.order() {
        return Err(Error::refused(
            "B/2 is perfect",
            format!("squaring on {}/2 is not onto", ring.describe()),
        ));
    }
    // g(x) = x + x² mod 2, additive on B
    let g_images: Vec<Vec<BigInt>> = chart
        .gens()
        .iter()
        .map(|&i| q2.apply(&chart.coords(as_idx[i])))
        .collect();
    let g = GroupHom::from_images(chart.group().clone(), b2.clone(), &g_images)?;
    for (x, &s) in as_idx.iter().enumerate() {
        if g.apply(&chart.coords(x)) != q2.apply(&chart.coords(s)) {
            return Err(Error::Internal("x + x² is not additive mod 2".into()));
        }
    }
    let on_q4 = g.induced_on_quotients(&q4, &GroupHom::identity(&b2))?;
    let k4 = on_q4.kernel().1;
    let on_b2 = g.induced_on_quotients(&q2, &GroupHom::identity(&b2))?;
    let k2 = on_b2.kernel().1;
    Ok(LevelData {
        ring,
        chart,
        q1,
        q4,
        q2,
        k4,
        k2,
    })
}

/// Transition `B_{n+1} → B_n` as a hom of additive groups.
fn transition_hom(b: &ProRing, n: usize, hi: &LevelData, lo: &LevelData) -> Result<GroupHom> {
    hi.chart.hom_from_fn(&lo.chart, |i| {
        lo.ring.index_of(&b.transition(n + 1, &hi.ring.elem_at(i)))
    })
}

/// Whether the transition induces isomorphisms on all three groups.
fn stable(b: &ProRing, n: usize, hi: &LevelData, lo: &LevelData) -> Result<bool> {
    let t = transition_hom(b, n, hi, lo)?;
    let t1 = t.induced_on_quotients(&hi.q1, &lo.q1)?;
    let t4 = t.induced_on_quotients(&hi.q4, &lo.q4)?;
    let t2 = t.induced_on_quotients(&hi.q2, &lo.q2)?;
    let Ok(k4) = t4.restrict(&hi.k4, &lo.k4) else {
        return Ok(false);
    };
    let Ok(k2) = t2.restrict(&hi.k2, &lo.k2) else {
        return Ok(false);
    };
    Ok(t1.is_iso() && k4.is_iso() && k2.is_iso())
}

/// Result of the torsion-free formula with the level where it stabilized.
#[derive(Clone, Debug)]
pub struct TorsionFree {
    pub groups: GradedGroups,
    pub level: usize,
}

/// `π_{4l−1} = B/⟨b+b²⟩`, `π_{4l} = ker(pr+pr²: B/⟨4(x+x²)⟩ → B/2)`, `π_{4l+1} = ker(id+(−)² on B/2)`,
/// `π_{4l+2} = 0`, computed at the first level `N` where levels `N` and `N+1` agree.
pub fn tcr_phi_torsionfree(b: &ProRing, window: (i64, i64), ctx: &Ctx) -> Result<TorsionFree> {
    if !b.spec.is_pro() {
        return Err(Error::Invalid(format!("{} is not a pro-ring", b.spec)));
    }
    let mut lo = level_data(b, 1, ctx)?;
    let mut found = None;
    for n in 1..ctx.depth {
        ctx.checkpoint()?;
        let hi = level_data(b, n + 1, ctx)?;
        if stable(b, n, &hi, &lo)? {
            found = Some(n);
            break;
        }
        lo = hi;
    }
    let n = found.ok_or_else(|| Error::Unstable {
        what: format!("tower of {}", b.spec),
        depth: ctx.depth,
    })?;
    let g1 = lo.q1.target().clone();
    let g4 = lo.k4.source().clone();
    let g2 = lo.k2.source().clone();
    let mut groups = GradedGroups::from_fn(window, |d| {
        Ok(if d < -1 {
            FinAbGroup::trivial()
        } else {
            match d.rem_euclid(4) {
                3 => g1.clone(),
                0 => g4.clone(),
                1 => g2.clone(),
                _ => FinAbGroup::trivial(),
            }
        })
    })?;
    groups.periodicity = Some(Periodicity {
        period: 4,
        start: -1,
        pattern: vec![g1.invariants(), g4.invariants(), g2.invariants(), vec![]],
        asserted_by: "TCR of 2-torsion free rings with perfect reduction mod 2".into(),
    });
    Ok(TorsionFree { groups, level: n })
}

/// Sum of two-cell complexes `c: Z → Z` in degrees `t + 1, t`, one per `(t, c)`.
struct Cells {
    cells: Vec<(i64, i64)>,
    /// Per cell, the index of its top and bottom generator within their degrees.
    pos: Vec<(usize, usize)>,
    complex: ChainComplex,
}

impl Cells {
    fn new(cells: Vec<(i64, i64)>, hi: i64) -> Result<Cells> {
        let mut count = vec![0usize; hi as usize + 1];
        let mut pos = Vec::new();
        for &(t, _) in &cells {
            let top = count[t as usize + 1];
            count[t as usize + 1] += 1;
            let bottom = count[t as usize];
            count[t as usize] += 1;
            pos.push((top, bottom));
        }
        let groups: Vec<FinAbGroup> = count.iter().map(|&n| FinAbGroup::from_orders(vec![0; n])).collect();
        let mut diffs = Vec::new();
        for deg in 1..=hi {
            let s = &groups[deg as usize];
            let t = &groups[deg as usize - 1];
            let mut m = IntMatrix::zeros(t.ngens(), s.ngens());
            for (k, &(b, c)) in cells.iter().enumerate() {
                if b + 1 == deg {
                    m[(pos[k].1, pos[k].0)] = BigInt::from(c);
                }
            }
            diffs.push(GroupHom::new(s.clone(), t.clone(), m)?);
        }
        let complex = ChainComplex::new(0, groups, diffs)?;
        Ok(Cells { cells, pos, complex })
    }
}

/// Chain level model of `M = ⋁_n Σ^{4n}(0 0; β 0)` from `Z/4 ∨ ΣF_2` to `F_2 ∨ ΣF_2`,
/// with `β` the Bockstein of `Z/2 → Z/8 → Z/4`; returns the homotopy of the fibre of `M`.
pub fn tcr_phi_z_oracle(window: (i64, i64), ctx: &Ctx) -> Result<GradedGroups> {
    let blocks = window.1.max(0) / 4 + 1;
    let hi = 4 * blocks + 2;
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for n in 0..blocks {
        src.push((4 * n, 4));
        src.push((4 * n + 1, 2));
        tgt.push((4 * n, 2));
        tgt.push((4 * n + 1, 2));
    }
    ctx.checkpoint()?;
    let src = Cells::new(src, hi)?;
    let tgt = Cells::new(tgt, hi)?;
    // β sends the top cell of Z/4 to the bottom cell of ΣF_2
    let mut maps = Vec::new();
    for deg in 0..=hi {
        let s = src.complex.group(deg);
        let t = tgt.complex.group(deg);
        let mut m = IntMatrix::zeros(t.ngens(), s.ngens());
        for n in 0..blocks as usize {
            let (a, b) = (2 * n, 2 * n + 1);
            if src.cells[a].0 + 1 == deg && tgt.cells[b].0 == deg {
                m[(tgt.pos[b].1, src.pos[a].0)] = BigInt::from(1);
            }
        }
        maps.push(GroupHom::new(s, t, m)?);
    }
    let phi = ChainMap::new(src.complex, tgt.complex, 0, maps)?;
    let cone = mapping_cone(&phi)?;
    let mut g = GradedGroups::from_fn(window, |d| Ok(cone.homology(d + 1)))?;
    g.periodicity = Some(Periodicity {
        period: 4,
        start: -1,
        pattern: vec![vec![2], vec![8], vec![2], vec![]],
        asserted_by: "TCR of the integers: F_2, Z/8, F_2 in degrees 4n-1, 4n, 4n+1".into(),
    });
    Ok(g)
}
