//! C₂-Mackey functors and Bredon homology of the representation spheres `S^{kρ}`.

use num_bigint::BigInt;

use crate::abelian::{ChainComplex, ChainMap, FinAbGroup, GradedGroups, GroupHom, IntMatrix};
use crate::error::{Error, Result};

/// Mackey functor for the group of order two.
#[derive(Clone, Debug)]
pub struct C2Mackey {
    /// Value on the free orbit.
    pub underlying: FinAbGroup,
    /// Weyl action on the underlying level.
    pub w: GroupHom,
    /// Value on the fixed orbit.
    pub fixed: FinAbGroup,
    pub res: GroupHom,
    pub tr: GroupHom,
}

impl C2Mackey {
    /// Checks `w² = 1`, `res∘tr = 1 + w`, `w∘res = res` and `tr∘w = tr`.
    pub fn new(underlying: FinAbGroup, w: GroupHom, fixed: FinAbGroup, res: GroupHom, tr: GroupHom) -> Result<Self> {
        let m = C2Mackey {
            underlying,
            w,
            fixed,
            res,
            tr,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let id = GroupHom::identity(&self.underlying);
        let bad = |what: &str| Err(Error::Invalid(format!("Mackey axiom fails: {what}")));
        if !self.w.compose(&self.w)?.equals(&id) {
            return bad("w² = 1");
        }
        if !self.res.compose(&self.tr)?.equals(&id.add(&self.w)?) {
            return bad("res∘tr = 1 + w");
        }
        if !self.w.compose(&self.res)?.equals(&self.res) {
            return bad("w∘res = res");
        }
        if !self.tr.compose(&self.w)?.equals(&self.tr) {
            return bad("tr∘w = tr");
        }
        Ok(())
    }
}

/// Constant Mackey functor: both levels `G`, `w = 1`, `res = 1`, `tr = 2`.
pub fn constant_mackey(g: &FinAbGroup) -> C2Mackey {
    C2Mackey::new(
        g.clone(),
        GroupHom::identity(g),
        g.clone(),
        GroupHom::identity(g),
        GroupHom::scalar(g, 2),
    )
    .expect("constant Mackey functor satisfies the axioms")
}

/// Fixed point Mackey functor of a group with involution.
pub fn fixedpoint_mackey(g: &FinAbGroup, w: &GroupHom) -> Result<C2Mackey> {
    let id = GroupHom::identity(g);
    if !w.compose(w)?.equals(&id) {
        return Err(Error::Invalid("w² ≠ 1".into()));
    }
    let (fixed, res) = id.sub(w)?.kernel();
    let tr = id.add(w)?.lift_through(&res)?;
    C2Mackey::new(g.clone(), w.clone(), fixed, res, tr)
}

/// `(Z ⊕ Z/2, w(a, x) = (a, [a] + x))`.
pub fn norm_pair() -> (FinAbGroup, GroupHom) {
    let g = FinAbGroup::from_orders(vec![0, 2]);
    let w = GroupHom::new(g.clone(), g.clone(), IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]])).expect("well defined");
    (g, w)
}

/// Cellular chain complex of `S^{kρ}` with coefficients in a Mackey functor.
#[derive(Clone, Debug)]
pub struct RepSphereComplex {
    pub k: i64,
    pub complex: ChainComplex,
}

fn check_weight(k: i64) -> Result<()> {
    if k < 0 || k % 2 != 0 {
        return Err(Error::Invalid(format!(
            "weight {k} is not supported, need an even k ≥ 0"
        )));
    }
    Ok(())
}

/// Degrees `k..2k`: the fixed level in degree `k`, the underlying level above;
/// `d_{k+1} = tr`, then `1 − w`, `1 + w`, ... alternating.
pub fn rep_sphere_complex(m: &C2Mackey, k: i64) -> Result<RepSphereComplex> {
    check_weight(k)?;
    let mut groups = vec![m.fixed.clone()];
    let mut diffs = Vec::new();
    let id = GroupHom::identity(&m.underlying);
    let minus = id.sub(&m.w)?;
    let plus = id.add(&m.w)?;
    for i in 1..=k {
        groups.push(m.underlying.clone());
        diffs.push(match i {
            1 => m.tr.clone(),
            _ if i % 2 == 0 => minus.clone(),
            _ => plus.clone(),
        });
    }
    let complex = ChainComplex::new(k, groups, diffs)?;
    Ok(RepSphereComplex { k, complex })
}

/// `π_*^{C₂}(Σ^{kρ} HM)` on degrees `k..2k`.
pub fn rep_sphere_homotopy(m: &C2Mackey, k: i64) -> Result<GradedGroups> {
    let c = rep_sphere_complex(m, k)?;
    GradedGroups::from_fn((k, 2 * k), |d| Ok(c.complex.homology(d)))
}

/// Chain complex whose homology is the cofibre of `(2, 0)` from the fixed point
/// functor of [`norm_pair`] to the constant functor on `Z`.
pub fn norm_cofiber_complex(k: i64) -> Result<ChainComplex> {
    let (g, w) = norm_pair();
    let src_m = fixedpoint_mackey(&g, &w)?;
    let z = FinAbGroup::integers();
    let tgt_m = constant_mackey(&z);
    let src = rep_sphere_complex(&src_m, k)?.complex;
    let tgt = rep_sphere_complex(&tgt_m, k)?.complex;
    let under = GroupHom::new(
        g.clone(),
        z.clone(),
        IntMatrix::from_rows(&[vec![BigInt::from(2), BigInt::from(0)]]),
    )?;
    let fixed = under.compose(&src_m.res)?;
    let mut maps = vec![fixed];
    for _ in 1..=k {
        maps.push(under.clone());
    }
    let phi = ChainMap::new(src, tgt, k, maps)?;
    crate::abelian::mapping_cone(&phi)
}

/// Homotopy of the norm cofibre on degrees `k..2k+1`.
pub fn norm_cofiber_homotopy(k: i64) -> Result<GradedGroups> {
    check_weight(k)?;
    let c = norm_cofiber_complex(k)?;
    GradedGroups::from_fn((k, 2 * k + 1), |d| Ok(c.homology(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_level_of_norm_pair() {
        let (g, w) = norm_pair();
        let m = fixedpoint_mackey(&g, &w).unwrap();
        assert_eq!(m.fixed.invariants(), vec![2, 0]);
        let swap_g = FinAbGroup::from_orders(vec![0, 0]);
        let swap = GroupHom::new(
            swap_g.clone(),
            swap_g.clone(),
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        let m = fixedpoint_mackey(&swap_g, &swap).unwrap();
        assert_eq!(m.fixed.invariants(), vec![0]);
    }

    #[test]
    fn odd_weight_rejected() {
        let m = constant_mackey(&FinAbGroup::integers());
        assert!(rep_sphere_homotopy(&m, 3).is_err());
        assert!(norm_cofiber_homotopy(1).is_err());
    }

    #[test]
    fn constant_z_weight_two() {
        let m = constant_mackey(&FinAbGroup::integers());
        let h = rep_sphere_homotopy(&m, 2).unwrap();
        assert_eq!(h.invariants(2), vec![2]);
        assert!(h.get(3).is_trivial());
        assert_eq!(h.invariants(4), vec![0]);
    }

    #[test]
    fn norm_pair_weight_two() {
        let (g, w) = norm_pair();
        let m = fixedpoint_mackey(&g, &w).unwrap();
        let h = rep_sphere_homotopy(&m, 2).unwrap();
        assert_eq!(h.invariants(2), vec![2]);
        assert!(h.get(3).is_trivial());
        assert_eq!(h.invariants(4), vec![2, 0]);
    }

    #[test]
    fn norm_cofiber_pattern() {
        for k in [0i64, 2, 4, 6] {
            let h = norm_cofiber_homotopy(k).unwrap();
            for d in k..2 * k {
                assert_eq!(h.invariants(d), vec![2], "k={k} d={d}");
            }
            assert_eq!(h.invariants(2 * k), vec![4]);
            assert_eq!(h.invariants(2 * k + 1), vec![2]);
        }
    }
}
