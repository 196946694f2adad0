//! Geometric fixed points of the TRR tower of a perfect field of characteristic two.

use std::collections::BTreeMap;

use crate::abelian::{FinAbGroup, GradedGroups, GradedHom, GroupHom, Periodicity};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ringkit::FinRing;

use super::field::PerfectRing;

/// Summand labels `(n, m)` with `n + m = d`, ordered by `n`.
pub fn labels(d: i64) -> Vec<(u32, u32)> {
    if d < 0 {
        return Vec::new();
    }
    (0..=d as u32).map(|n| (n, d as u32 - n)).collect()
}

/// Map `⊕_{labels} k → ⊕_{labels} k` with block `(t, s)` given by `f(t, s)`.
fn label_map(
    k: &PerfectRing,
    src: &[(u32, u32)],
    tgt: &[(u32, u32)],
    f: impl Fn((u32, u32), (u32, u32)) -> Option<GroupHom>,
) -> Result<GroupHom> {
    let g = k.group().clone();
    let srcs = vec![g.clone(); src.len()];
    let tgts = vec![g.clone(); tgt.len()];
    let blocks: Vec<Vec<GroupHom>> = tgt
        .iter()
        .map(|&t| src.iter().map(|&s| f(t, s).unwrap_or_else(|| k.zero())).collect())
        .collect();
    GroupHom::block(&srcs, &tgts, &blocks)
}

fn sum_group(k: &PerfectRing, d: i64) -> FinAbGroup {
    FinAbGroup::sum_of(&vec![k.group().clone(); labels(d).len()])
}

/// Closed form `R`: inverse Frobenius on `n = m`, zero elsewhere.
pub fn closed_r(k: &PerfectRing, d: i64) -> Result<GroupHom> {
    let l = labels(d);
    label_map(k, &l, &l, |t, s| (t == s && s.0 == s.1).then(|| k.root.clone()))
}

/// Closed form `F`: kills `m < n`, identity on `n = m`, diagonal on `n < m`.
pub fn closed_f(k: &PerfectRing, d: i64) -> Result<GroupHom> {
    let l = labels(d);
    label_map(k, &l, &l, |t, s| (s == (t.0.min(t.1), t.0.max(t.1))).then(|| k.id()))
}

/// Weyl action swapping `(n, m)` and `(m, n)`.
pub fn swap(k: &PerfectRing, d: i64) -> Result<GroupHom> {
    let l = labels(d);
    label_map(k, &l, &l, |t, s| (s == (t.1, t.0)).then(|| k.id()))
}

/// The map `r` from the genuine fixed points: inverse Frobenius on labels `n ≥ m`, zero on `n < m`.
pub fn lower_r(k: &PerfectRing, d: i64) -> Result<GroupHom> {
    let l = labels(d);
    label_map(k, &l, &l, |t, s| (t == s && s.0 >= s.1).then(|| k.root.clone()))
}

/// The map `f` from the genuine fixed points: kills `n > m`, includes `n = m`, diagonal on `n < m`.
pub fn lower_f(k: &PerfectRing, d: i64) -> Result<GroupHom> {
    closed_f(k, d)
}

/// One degree of a tower level: `r, f: upper → group`, `sigma` on `group`.
#[derive(Clone, Debug)]
pub struct TowerDegree {
    pub labels: Vec<(u32, u32)>,
    pub group: FinAbGroup,
    pub upper: FinAbGroup,
    pub r: GroupHom,
    pub f: GroupHom,
    pub sigma: GroupHom,
}

/// Level `l` of the tower with the maps `R, F` from level `l + 1` and the Weyl action `σ_l`.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub level: usize,
    pub window: (i64, i64),
    pub degrees: BTreeMap<i64, TowerDegree>,
}

impl TowerLevel {
    pub fn groups(&self) -> GradedGroups {
        let mut g = GradedGroups::new(self.window);
        for (d, t) in &self.degrees {
            g.set(*d, t.group.clone());
        }
        g
    }

    /// `σ² = 1` in every degree.
    pub fn check_involution(&self) -> Result<()> {
        for (d, t) in &self.degrees {
            if !t.sigma.compose(&t.sigma)?.equals(&GroupHom::identity(&t.group)) {
                return Err(Error::Internal(format!("σ² ≠ 1 in degree {d}")));
            }
        }
        Ok(())
    }
}

fn check_tower_args(l: usize, window: (i64, i64)) -> Result<()> {
    if l == 0 {
        return Err(Error::Invalid("tower levels start at 1".into()));
    }
    if window.0 > window.1 {
        return Err(Error::Invalid(format!("empty window {}:{}", window.0, window.1)));
    }
    Ok(())
}

/// Closed form of level `l`, built from explicit block matrices.
pub fn trr_phi_tower(k: &FinRing, l: usize, window: (i64, i64), ctx: &Ctx) -> Result<TowerLevel> {
    check_tower_args(l, window)?;
    let kf = PerfectRing::new(k, 2, true, ctx)?;
    closed_tower(&kf, l, window)
}

fn closed_tower(k: &PerfectRing, l: usize, window: (i64, i64)) -> Result<TowerLevel> {
    let mut degrees = BTreeMap::new();
    for d in window.0..=window.1 {
        let g = sum_group(k, d);
        degrees.insert(
            d,
            TowerDegree {
                labels: labels(d),
                group: g.clone(),
                upper: g,
                r: closed_r(k, d)?,
                f: closed_f(k, d)?,
                sigma: swap(k, d)?,
            },
        );
    }
    let t = TowerLevel {
        level: l,
        window,
        degrees,
    };
    t.check_involution()?;
    Ok(t)
}

/// Level data of the Mayer-Vietoris recursion in a single degree.
#[derive(Clone, Debug)]
struct Level {
    group: FinAbGroup,
    /// Into `S ⊕ S` at level two, `S ⊕ S ⊕ G_{l-1}` above, identity at level one.
    incl: GroupHom,
    /// `R, F: G_l → G_{l-1}`; absent at level one.
    r: Option<GroupHom>,
    f: Option<GroupHom>,
    sigma: GroupHom,
    /// `F^{l-1}: G_l → G_1`.
    f_base: GroupHom,
}

fn proj(parts: &[FinAbGroup], i: usize) -> Result<GroupHom> {
    let tgt = [parts[i].clone()];
    let blocks = vec![parts
        .iter()
        .enumerate()
        .map(|(j, g)| {
            if j == i {
                GroupHom::identity(g)
            } else {
                GroupHom::zero(g.clone(), parts[i].clone())
            }
        })
        .collect::<Vec<_>>()];
    GroupHom::block(parts, &tgt, &blocks)
}

struct DegreeOracle<'a> {
    k: &'a PerfectRing,
    d: i64,
    s: FinAbGroup,
    r_low: GroupHom,
    f_low: GroupHom,
    sigma1: GroupHom,
    levels: Vec<Level>,
}

impl<'a> DegreeOracle<'a> {
    fn new(k: &'a PerfectRing, d: i64) -> Result<Self> {
        let v = sum_group(k, d);
        let sigma1 = swap(k, d)?;
        let base = Level {
            group: v.clone(),
            incl: GroupHom::identity(&v),
            r: None,
            f: None,
            sigma: sigma1.clone(),
            f_base: GroupHom::identity(&v),
        };
        Ok(DegreeOracle {
            k,
            d,
            s: v,
            r_low: lower_r(k, d)?,
            f_low: lower_f(k, d)?,
            sigma1,
            levels: vec![base],
        })
    }

    /// Level two is the kernel of `(x, y) ↦ r x − σ₁ r y` on `S ⊕ S`; level `l + 1 ≥ 3` the kernel of
    /// `(x, y, z) ↦ (r x − F^{l−1} z, σ₁ r y − F^{l−1} σ_l z)` on `S ⊕ S ⊕ G_l`.
    fn push(&mut self, ctx: &Ctx) -> Result<()> {
        ctx.checkpoint()?;
        let l = self.levels.len();
        let prev = &self.levels[l - 1];
        let v = self.s.clone();
        let s_r = self.sigma1.compose(&self.r_low)?;
        let (parts, diff) = if l == 1 {
            let parts = vec![self.s.clone(), self.s.clone()];
            let diff = GroupHom::block(&parts, std::slice::from_ref(&v), &[vec![self.r_low.clone(), s_r.neg()]])?;
            (parts, diff)
        } else {
            let parts = vec![self.s.clone(), self.s.clone(), prev.group.clone()];
            let zs = GroupHom::zero(self.s.clone(), v.clone());
            let fb = prev.f_base.neg();
            let blocks = vec![
                vec![self.r_low.clone(), zs.clone(), fb.clone()],
                vec![zs, s_r, fb.compose(&prev.sigma)?],
            ];
            (
                parts.clone(),
                GroupHom::block(&parts, &[v.clone(), v.clone()], &blocks)?,
            )
        };
        if !diff.is_surjective() {
            return Err(Error::refused(
                "Mayer-Vietoris difference map is surjective",
                format!("fails in degree {} at level {}", self.d, l + 1),
            ));
        }
        let (g, incl) = diff.kernel();
        let px = proj(&parts, 0)?.compose(&incl)?;
        let py = proj(&parts, 1)?.compose(&incl)?;
        let swapped = GroupHom::pair(&py, &px)?;
        let (r, sigma, f) = if l == 1 {
            // R(x, y) = r x, F(x, y) = f x, σ(x, y) = (y, x)
            let sigma = swapped.lift_through(&incl)?;
            (self.r_low.compose(&px)?, sigma, self.f_low.compose(&px)?)
        } else {
            // R(x, y, z) = z, σ(x, y, z) = (y, x, σ z), F(x, y, z) = (x, x, F z)
            let pz = proj(&parts, 2)?.compose(&incl)?;
            let sigma = GroupHom::pair(&swapped, &prev.sigma.compose(&pz)?)?.lift_through(&incl)?;
            let xx = GroupHom::pair(&px, &px)?;
            let amb = if l == 2 {
                xx
            } else {
                let fz = prev.f.as_ref().expect("level ≥ 2 has F").compose(&pz)?;
                GroupHom::pair(&xx, &fz)?
            };
            (pz, sigma, amb.lift_through(&prev.incl)?)
        };
        let f_base = prev.f_base.compose(&f)?;
        self.levels.push(Level {
            group: g,
            incl,
            r: Some(r),
            f: Some(f),
            sigma,
            f_base,
        });
        Ok(())
    }

    fn ensure(&mut self, l: usize, ctx: &Ctx) -> Result<()> {
        while self.levels.len() < l {
            self.push(ctx)?;
        }
        Ok(())
    }

    /// Comparison `Φ_l` from the closed form `⊕ k` to `G_l`.
    fn base_change(&self, l: usize) -> Result<GroupHom> {
        let k = self.k;
        let d = self.d;
        if l == 1 {
            return Ok(GroupHom::identity(&self.s));
        }
        let lab = labels(d);
        let x = label_map(k, &lab, &lab, |t, s| (t == s && t.0 <= t.1).then(|| k.id()))?;
        let y = label_map(k, &lab, &lab, |t, s| {
            ((t.0 < t.1 && s == (t.1, t.0)) || (t.0 == t.1 && s == t)).then(|| k.id())
        })?;
        let xy = GroupHom::pair(&x, &y)?;
        let amb = if l == 2 {
            xy
        } else {
            let z = self.base_change(l - 1)?.compose(&closed_r(k, d)?)?;
            GroupHom::pair(&xy, &z)?
        };
        amb.lift_through(&self.levels[l - 1].incl)
    }
}

/// Level `l` computed from the pullback recursion, with comparison maps to the closed form.
#[derive(Clone, Debug)]
pub struct OracleTower {
    pub tower: TowerLevel,
    /// Per degree `(Φ_l, Φ_{l+1})` from the closed form groups.
    pub base_change: BTreeMap<i64, (GroupHom, GroupHom)>,
    /// Elements of `G_2` as pairs `(x, y)` in `S ⊕ S`.
    pub level_two_incl: BTreeMap<i64, GroupHom>,
}

pub fn trr_phi_oracle(k: &FinRing, l: usize, window: (i64, i64), ctx: &Ctx) -> Result<OracleTower> {
    check_tower_args(l, window)?;
    let kf = PerfectRing::new(k, 2, true, ctx)?;
    let mut degrees = BTreeMap::new();
    let mut base_change = BTreeMap::new();
    let mut level_two_incl = BTreeMap::new();
    for d in window.0..=window.1 {
        let mut o = DegreeOracle::new(&kf, d)?;
        o.ensure(l.max(1) + 1, ctx)?;
        let lower = &o.levels[l - 1];
        let upper = &o.levels[l];
        degrees.insert(
            d,
            TowerDegree {
                labels: labels(d),
                group: lower.group.clone(),
                upper: upper.group.clone(),
                r: upper.r.clone().expect("upper level has R"),
                f: upper.f.clone().expect("upper level has F"),
                sigma: lower.sigma.clone(),
            },
        );
        base_change.insert(d, (o.base_change(l)?, o.base_change(l + 1)?));
        level_two_incl.insert(d, o.levels[1].incl.clone());
    }
    let tower = TowerLevel {
        level: l,
        window,
        degrees,
    };
    tower.check_involution()?;
    Ok(OracleTower {
        tower,
        base_change,
        level_two_incl,
    })
}

/// Checks that the oracle agrees with the closed form: `Φ` isomorphisms intertwining `R`, `F`, `σ`.
pub fn oracle_matches(closed: &TowerLevel, oracle: &OracleTower) -> Result<bool> {
    if closed.window != oracle.tower.window || closed.level != oracle.tower.level {
        return Err(Error::Invalid("towers cover different levels or windows".into()));
    }
    for (d, c) in &closed.degrees {
        let o = &oracle.tower.degrees[d];
        let (phi, phi_up) = &oracle.base_change[d];
        if !phi.is_iso() || !phi_up.is_iso() {
            return Ok(false);
        }
        if !c.group.is_isomorphic(&o.group) || !c.upper.is_isomorphic(&o.upper) {
            return Ok(false);
        }
        let same = |a: &GroupHom, b: &GroupHom| -> Result<bool> { Ok(a.equals(b)) };
        if !same(&o.r.compose(phi_up)?, &phi.compose(&c.r)?)?
            || !same(&o.f.compose(phi_up)?, &phi.compose(&c.f)?)?
            || !same(&o.sigma.compose(phi)?, &phi.compose(&c.sigma)?)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Inverse limit along `R` with the induced Frobenius.
#[derive(Clone, Debug)]
pub struct TowerLimit {
    pub groups: GradedGroups,
    /// Endomorphism induced by `F`.
    pub frobenius: GradedHom,
    /// Eventual image of `R` inside `⊕ k`, identified with the limit by projecting to level one.
    pub embedding: GradedHom,
    /// Number of iterations of `R` after which the images are stable.
    pub stable_after: BTreeMap<i64, usize>,
}

pub fn trr_phi_limit(k: &FinRing, window: (i64, i64), ctx: &Ctx) -> Result<TowerLimit> {
    check_tower_args(1, window)?;
    let kf = PerfectRing::new(k, 2, true, ctx)?;
    let tower = closed_tower(&kf, 1, window)?;
    let mut groups = GradedGroups::new(window);
    let mut frobenius = GradedHom::new();
    let mut embedding = GradedHom::new();
    let mut stable_after = BTreeMap::new();
    for (d, t) in &tower.degrees {
        ctx.checkpoint()?;
        let mut power = GroupHom::identity(&t.group);
        let mut sizes = Vec::new();
        let mut found = None;
        for j in 1..=ctx.depth {
            power = t.r.compose(&power)?;
            let (img, _) = power.image();
            sizes.push(img.order());
            // three consecutive equal images
            if j >= 3 && sizes[j - 1] == sizes[j - 2] && sizes[j - 2] == sizes[j - 3] {
                found = Some(j - 2);
                break;
            }
        }
        let j = found.ok_or_else(|| Error::Unstable {
            what: format!("images of R in degree {d}"),
            depth: ctx.depth,
        })?;
        let mut p = GroupHom::identity(&t.group);
        for _ in 0..j {
            p = t.r.compose(&p)?;
        }
        let (e, incl) = p.image();
        let r_e = t.r.compose(&incl)?.lift_through(&incl)?;
        if !r_e.is_iso() {
            return Err(Error::Internal(format!(
                "R is not invertible on its eventual image in degree {d}"
            )));
        }
        let f_lim = t.f.compose(&incl)?.compose(&r_e.inverse()?)?.lift_through(&incl)?;
        groups.set(*d, e);
        frobenius.insert(*d, f_lim);
        embedding.insert(*d, incl);
        stable_after.insert(*d, j);
    }
    let kinv = kf.group().invariants();
    groups.periodicity = Some(Periodicity {
        period: 2,
        start: 0,
        pattern: vec![kinv, vec![]],
        asserted_by: "limit of the TRR tower of a perfect field of characteristic 2".into(),
    });
    Ok(TowerLimit {
        groups,
        frobenius,
        embedding,
        stable_after,
    })
}
