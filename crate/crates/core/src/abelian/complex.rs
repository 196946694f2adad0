use num_bigint::BigInt;

use super::group::FinAbGroup;
use super::hom::{is_exact_at, GroupHom};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Bounded chain complex `C_lo <- C_{lo+1} <- ... <- C_hi`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    lo: i64,
    groups: Vec<FinAbGroup>,
    /// `diffs[i]` is `d: C_{lo+i+1} -> C_{lo+i}`.
    diffs: Vec<GroupHom>,
}

/// Homology in one degree with the data needed for induced maps.
#[derive(Clone, Debug)]
pub struct HomologyData {
    pub group: FinAbGroup,
    /// Inclusion of cycles into the chain group.
    pub cycles: GroupHom,
    /// Projection from cycles onto homology.
    pub proj: GroupHom,
}

impl ChainComplex {
    pub fn new(lo: i64, groups: Vec<FinAbGroup>, diffs: Vec<GroupHom>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Invalid("chain complex needs at least one group".into()));
        }
        if diffs.len() + 1 != groups.len() {
            return Err(Error::Invalid(
                "need one differential between consecutive groups".into(),
            ));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source().orders() != groups[i + 1].orders() || d.target().orders() != groups[i].orders() {
                return Err(Error::Invalid(format!(
                    "differential out of degree {} has wrong shape",
                    lo + i as i64 + 1
                )));
            }
        }
        for i in 1..diffs.len() {
            let dd = diffs[i - 1].compose(&diffs[i])?;
            if !dd.is_zero() {
                return Err(Error::Invalid(format!("d∘d ≠ 0 out of degree {}", lo + i as i64 + 1)));
            }
        }
        Ok(ChainComplex { lo, groups, diffs })
    }

    /// Complex with zero differentials.
    pub fn from_groups(lo: i64, groups: Vec<FinAbGroup>) -> Self {
        let diffs = (1..groups.len())
            .map(|i| GroupHom::zero(groups[i].clone(), groups[i - 1].clone()))
            .collect();
        ChainComplex { lo, groups, diffs }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.groups.len() as i64 - 1
    }

    pub fn group(&self, i: i64) -> FinAbGroup {
        if i < self.lo || i > self.hi() {
            FinAbGroup::trivial()
        } else {
            self.groups[(i - self.lo) as usize].clone()
        }
    }

    /// `d_i: C_i -> C_{i-1}`, zero outside the stored range.
    pub fn d(&self, i: i64) -> GroupHom {
        if i <= self.lo || i > self.hi() {
            GroupHom::zero(self.group(i), self.group(i - 1))
        } else {
            self.diffs[(i - self.lo - 1) as usize].clone()
        }
    }

    pub fn homology(&self, i: i64) -> FinAbGroup {
        self.homology_data(i).group
    }

    pub fn homology_data(&self, i: i64) -> HomologyData {
        let (_, z) = self.d(i).kernel();
        let b = self.d(i + 1).lift_through(&z).expect("d∘d = 0 checked at construction");
        let (h, proj) = b.cokernel();
        HomologyData {
            group: h,
            cycles: z,
            proj,
        }
    }
}

/// Homology in a degree, as a free function.
pub fn homology(c: &ChainComplex, i: i64) -> FinAbGroup {
    c.homology(i)
}

/// Degreewise maps `phi_i: C_i -> D_i` commuting with differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    lo: i64,
    maps: Vec<GroupHom>,
}

impl ChainMap {
    /// `maps[k]` is the component in degree `lo + k`; missing degrees are zero.
    pub fn new(source: ChainComplex, target: ChainComplex, lo: i64, maps: Vec<GroupHom>) -> Result<Self> {
        let cm = ChainMap {
            source,
            target,
            lo,
            maps,
        };
        let (a, b) = cm.range();
        for i in a..=b {
            let f = cm.at(i);
            if f.source().orders() != cm.source.group(i).orders() || f.target().orders() != cm.target.group(i).orders()
            {
                return Err(Error::Invalid(format!(
                    "chain map component in degree {i} has wrong shape"
                )));
            }
        }
        for i in a..=b + 1 {
            let left = cm.target.d(i).compose(&cm.at(i))?;
            let right = cm.at(i - 1).compose(&cm.source.d(i))?;
            if !left.equals(&right) {
                return Err(Error::Invalid(format!(
                    "chain map does not commute with d in degree {i}"
                )));
            }
        }
        Ok(cm)
    }

    fn range(&self) -> (i64, i64) {
        (
            self.source.lo().min(self.target.lo()),
            self.source.hi().max(self.target.hi()),
        )
    }

    pub fn at(&self, i: i64) -> GroupHom {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            GroupHom::zero(self.source.group(i), self.target.group(i))
        }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let maps = (c.lo()..=c.hi()).map(|i| GroupHom::identity(&c.group(i))).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            lo: c.lo(),
            maps,
        }
    }

    pub fn zero(c: &ChainComplex, d: &ChainComplex) -> Self {
        ChainMap {
            source: c.clone(),
            target: d.clone(),
            lo: 0,
            maps: vec![],
        }
    }
}

/// Map on homology induced by degreewise maps sending cycles to cycles.
pub fn induced_on_homology(f: &GroupHom, h_src: &HomologyData, h_tgt: &HomologyData) -> Result<GroupHom> {
    let sec = h_src.proj.preimager();
    let mut images = Vec::new();
    for j in 0..h_src.group.ngens() {
        let z = sec
            .solve(&h_src.group.basis_elem(j))
            .ok_or_else(|| Error::Internal("homology projection not surjective".into()))?;
        let c = h_src.cycles.apply(&z);
        let fc = f.apply(&c);
        let zt = h_tgt
            .cycles
            .preimage(&fc)
            .ok_or_else(|| Error::Internal("map does not send cycles to cycles".into()))?;
        images.push(h_tgt.proj.apply(&zt));
    }
    GroupHom::from_images(h_src.group.clone(), h_tgt.group.clone(), &images)
}

/// Cone with `Cone_n = C_{n-1} ⊕ D_n` and `d(c, x) = (-d c, phi(c) + d x)`.
pub fn mapping_cone(phi: &ChainMap) -> Result<ChainComplex> {
    let c = &phi.source;
    let d = &phi.target;
    let lo = (c.lo() + 1).min(d.lo());
    let hi = (c.hi() + 1).max(d.hi());
    let groups: Vec<FinAbGroup> = (lo..=hi).map(|n| c.group(n - 1).direct_sum(&d.group(n))).collect();
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let dc = c.d(n - 1).neg();
        let zero = GroupHom::zero(d.group(n), c.group(n - 2));
        let top = GroupHom::copair(&dc, &zero)?;
        let bottom = GroupHom::copair(&phi.at(n - 1), &d.d(n))?;
        let m = top.matrix().vcat(bottom.matrix());
        diffs.push(GroupHom::new(
            groups[(n - lo) as usize].clone(),
            groups[(n - lo - 1) as usize].clone(),
            m,
        )?);
    }
    ChainComplex::new(lo, groups, diffs)
}

/// Checks exactness of `H(C) -> H(D) -> H(Cone) -> H(C)[-1] -> H(D)[-1]` in every degree.
pub fn check_cone_exactness(phi: &ChainMap) -> Result<bool> {
    let cone = mapping_cone(phi)?;
    let c = &phi.source;
    let d = &phi.target;
    let lo = cone.lo().min(c.lo()).min(d.lo()) - 1;
    let hi = cone.hi().max(c.hi()).max(d.hi()) + 1;
    for n in lo..=hi {
        let hc = c.homology_data(n);
        let hd = d.homology_data(n);
        let hk = cone.homology_data(n);
        let hc1 = c.homology_data(n - 1);
        let hd1 = d.homology_data(n - 1);
        let phi_n = induced_on_homology(&phi.at(n), &hc, &hd)?;
        let incl = inclusion_second(&c.group(n - 1), &d.group(n))?;
        let j = induced_on_homology(&incl, &hd, &hk)?;
        let pr = projection_first(&c.group(n - 1), &d.group(n))?;
        let del = induced_on_homology(&pr, &hk, &hc1)?;
        let phi_n1 = induced_on_homology(&phi.at(n - 1), &hc1, &hd1)?;
        if !(is_exact_at(&phi_n, &j)? && is_exact_at(&j, &del)? && is_exact_at(&del, &phi_n1)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn inclusion_second(a: &FinAbGroup, b: &FinAbGroup) -> Result<GroupHom> {
    let m = IntMatrix::zeros(a.ngens(), b.ngens()).vcat(&IntMatrix::identity(b.ngens()));
    GroupHom::new(b.clone(), a.direct_sum(b), m)
}

fn projection_first(a: &FinAbGroup, b: &FinAbGroup) -> Result<GroupHom> {
    let m = IntMatrix::identity(a.ngens()).hcat(&IntMatrix::zeros(a.ngens(), b.ngens()));
    GroupHom::new(a.direct_sum(b), a.clone(), m)
}

/// Two-term complex `Z -n-> Z` in degrees `lo+1 -> lo`, modelling `Z/n` in degree `lo`.
pub fn cyclic_resolution(lo: i64, n: i64) -> ChainComplex {
    let z = FinAbGroup::integers();
    let d = GroupHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![BigInt::from(n)]]))
        .expect("map between free groups");
    ChainComplex::new(lo, vec![z.clone(), z], vec![d]).expect("two-term complex")
}
