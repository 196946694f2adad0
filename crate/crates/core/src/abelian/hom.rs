use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FinAbGroup;
use super::matrix::IntMatrix;
use super::snf::Snf;
use crate::error::{Error, Result};

/// Homomorphism between presented groups; `matrix` is `target.ngens() × source.ngens()`.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMatrix,
}

fn reduce_matrix(target: &FinAbGroup, m: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let d = target.orders()[i];
        if d == 0 {
            m[(i, j)].clone()
        } else {
            m[(i, j)].mod_floor(&BigInt::from(d))
        }
    })
}

/// Relation columns of a presentation: `d_i e_i` for every finite factor.
fn relation_matrix(g: &FinAbGroup) -> IntMatrix {
    let fin: Vec<usize> = (0..g.ngens()).filter(|&i| g.orders()[i] != 0).collect();
    IntMatrix::from_fn(g.ngens(), fin.len(), |i, j| {
        if i == fin[j] {
            BigInt::from(g.orders()[i])
        } else {
            BigInt::zero()
        }
    })
}

impl GroupHom {
    /// Checks dimensions and that relations of the source map to zero.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Invalid(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        for (j, &d) in source.orders().iter().enumerate() {
            if d == 0 {
                continue;
            }
            let col: Vec<BigInt> = matrix.col(j).iter().map(|x| x * d).collect();
            if !target.is_zero_elem(&col) {
                return Err(Error::Invalid(format!(
                    "generator {j} of order {d} does not map to an element killed by {d}"
                )));
            }
        }
        let matrix = reduce_matrix(&target, &matrix);
        Ok(GroupHom { source, target, matrix })
    }

    /// Builds a hom from images of the source generators.
    pub fn from_images(source: FinAbGroup, target: FinAbGroup, images: &[Vec<BigInt>]) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::Invalid("wrong number of generator images".into()));
        }
        let m = IntMatrix::from_cols(target.ngens(), images);
        Self::new(source, target, m)
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let matrix = IntMatrix::zeros(target.ngens(), source.ngens());
        GroupHom { source, target, matrix }
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn scalar(g: &FinAbGroup, c: i64) -> Self {
        let m = IntMatrix::identity(g.ngens()).scale(&BigInt::from(c));
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: reduce_matrix(g, &m),
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target.orders() != self.source.orders() {
            return Err(Error::Invalid("composition of non-composable homs".into()));
        }
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: reduce_matrix(&self.target, &self.matrix.mul(&first.matrix)),
        })
    }

    fn check_parallel(&self, other: &GroupHom) -> Result<()> {
        if self.source.orders() != other.source.orders() || self.target.orders() != other.target.orders() {
            return Err(Error::Invalid("homs do not share source and target".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        self.check_parallel(other)?;
        Ok(GroupHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: reduce_matrix(&self.target, &self.matrix.add(&other.matrix)),
        })
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom> {
        self.check_parallel(other)?;
        Ok(GroupHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: reduce_matrix(&self.target, &self.matrix.sub(&other.matrix)),
        })
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: reduce_matrix(&self.target, &self.matrix.scale(&BigInt::from(-1))),
        }
    }

    /// Same source, target and map.
    pub fn equals(&self, other: &GroupHom) -> bool {
        self.source.orders() == other.source.orders()
            && self.target.orders() == other.target.orders()
            && self.matrix == other.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `[M | relations of target]`, whose integer kernel describes preimages.
    fn extended(&self) -> IntMatrix {
        self.matrix.hcat(&relation_matrix(&self.target))
    }

    pub fn kernel(&self) -> (FinAbGroup, GroupHom) {
        let n = self.source.ngens();
        let a = self.extended();
        let s = Snf::compute(&a);
        // generators of the preimage lattice L = {x : Mx ∈ relations}
        let mut gens: Vec<Vec<BigInt>> = (s.rank..a.cols())
            .map(|j| (0..n).map(|i| s.v[(i, j)].clone()).collect())
            .collect();
        let src_rel = relation_matrix(&self.source);
        for j in 0..src_rel.cols() {
            gens.push(src_rel.col(j));
        }
        let p = IntMatrix::from_cols(n, &gens);
        let sp = Snf::compute(&p);
        let rho = sp.rank;
        // basis of L: columns s_i * U^{-1} e_i
        let basis = IntMatrix::from_fn(n, rho, |i, j| &sp.u_inv[(i, j)] * sp.diag(j));
        // express the source relations in that basis
        let ur = sp.u.mul(&src_rel);
        let rel = IntMatrix::from_fn(rho, src_rel.cols(), |i, j| {
            let (q, r) = ur[(i, j)].div_rem(&sp.diag(i));
            debug_assert!(r.is_zero());
            q
        });
        let s3 = Snf::compute(&rel);
        let gens_mat = basis.mul(&s3.u_inv);
        let mut orders = Vec::new();
        let mut cols = Vec::new();
        for i in 0..rho {
            let d = s3.diag(i);
            if d.is_one() {
                continue;
            }
            orders.push(u64_of(&d));
            cols.push(i);
        }
        let k = FinAbGroup::from_orders(orders);
        let incl = reduce_matrix(&self.source, &gens_mat.select_cols(&cols));
        let incl = GroupHom {
            source: k.clone(),
            target: self.source.clone(),
            matrix: incl,
        };
        (k, incl)
    }

    pub fn cokernel(&self) -> (FinAbGroup, GroupHom) {
        let a = self.extended();
        let s = Snf::compute(&a);
        let m = self.target.ngens();
        let mut orders = Vec::new();
        let mut rows = Vec::new();
        for i in 0..m {
            let d = s.diag(i);
            if d.is_one() {
                continue;
            }
            orders.push(u64_of(&d));
            rows.push(i);
        }
        let q = FinAbGroup::from_orders(orders);
        let proj = reduce_matrix(&q, &s.u.select_rows(&rows));
        let proj = GroupHom {
            source: self.target.clone(),
            target: q.clone(),
            matrix: proj,
        };
        (q, proj)
    }

    /// Image as a subgroup of the target, with its inclusion.
    pub fn image(&self) -> (FinAbGroup, GroupHom) {
        let (_, proj) = self.cokernel();
        proj.kernel()
    }

    pub fn preimager(&self) -> Preimager {
        let a = self.extended();
        Preimager {
            snf: Snf::compute(&a),
            hom: self.clone(),
        }
    }

    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        self.preimager().solve(y)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Factors `self` through an injective `inj` with the same target.
    pub fn lift_through(&self, inj: &GroupHom) -> Result<GroupHom> {
        if inj.target.orders() != self.target.orders() {
            return Err(Error::Invalid("lift through a hom with another target".into()));
        }
        let pre = inj.preimager();
        let mut images = Vec::with_capacity(self.source.ngens());
        for j in 0..self.source.ngens() {
            let y = self.matrix.col(j);
            let x = pre
                .solve(&y)
                .ok_or_else(|| Error::Internal(format!("generator {j} does not lift")))?;
            images.push(x);
        }
        GroupHom::from_images(self.source.clone(), inj.source.clone(), &images)
    }

    /// Induced map `coker(a) → coker(b)` for a square `b_target ← self ← a_target`.
    pub fn induced_on_quotients(&self, from: &GroupHom, to: &GroupHom) -> Result<GroupHom> {
        // from: Q1 <- X (projection), to: Q2 <- Y (projection), self: X -> Y
        let sec = from.preimager();
        let mut images = Vec::new();
        for j in 0..from.target.ngens() {
            let e = from.target.basis_elem(j);
            let x = sec
                .solve(&e)
                .ok_or_else(|| Error::Internal("projection is not surjective".into()))?;
            images.push(to.apply(&self.apply(&x)));
        }
        GroupHom::from_images(from.target.clone(), to.target.clone(), &images)
    }

    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_iso() {
            return Err(Error::Invalid("hom is not invertible".into()));
        }
        let pre = self.preimager();
        let images: Vec<Vec<BigInt>> = (0..self.target.ngens())
            .map(|j| pre.solve(&self.target.basis_elem(j)).expect("surjective"))
            .collect();
        GroupHom::from_images(self.target.clone(), self.source.clone(), &images)
    }

    /// Restriction of both ends: `incl_src: S' -> S`, requires image inside `incl_tgt`.
    pub fn restrict(&self, incl_src: &GroupHom, incl_tgt: &GroupHom) -> Result<GroupHom> {
        self.compose(incl_src)?.lift_through(incl_tgt)
    }

    /// `[f; g]: S -> T1 ⊕ T2`
    pub fn pair(f: &GroupHom, g: &GroupHom) -> Result<GroupHom> {
        if f.source.orders() != g.source.orders() {
            return Err(Error::Invalid("pairing needs a common source".into()));
        }
        Ok(GroupHom {
            source: f.source.clone(),
            target: f.target.direct_sum(&g.target),
            matrix: f.matrix.vcat(&g.matrix),
        })
    }

    /// `[f g]: S1 ⊕ S2 -> T`
    pub fn copair(f: &GroupHom, g: &GroupHom) -> Result<GroupHom> {
        if f.target.orders() != g.target.orders() {
            return Err(Error::Invalid("copairing needs a common target".into()));
        }
        Ok(GroupHom {
            source: f.source.direct_sum(&g.source),
            target: f.target.clone(),
            matrix: f.matrix.hcat(&g.matrix),
        })
    }

    /// Block matrix between direct sums; `blocks[i][j]: S_j -> T_i`.
    pub fn block(sources: &[FinAbGroup], targets: &[FinAbGroup], blocks: &[Vec<GroupHom>]) -> Result<GroupHom> {
        let src = FinAbGroup::sum_of(sources);
        let tgt = FinAbGroup::sum_of(targets);
        let mut m = IntMatrix::zeros(tgt.ngens(), src.ngens());
        let mut r0 = 0;
        for (i, t) in targets.iter().enumerate() {
            let mut c0 = 0;
            for (j, s) in sources.iter().enumerate() {
                let b = &blocks[i][j];
                if b.source.orders() != s.orders() || b.target.orders() != t.orders() {
                    return Err(Error::Invalid(format!("block ({i},{j}) has wrong shape")));
                }
                for a in 0..t.ngens() {
                    for c in 0..s.ngens() {
                        m[(r0 + a, c0 + c)] = b.matrix[(a, c)].clone();
                    }
                }
                c0 += s.ngens();
            }
            r0 += t.ngens();
        }
        GroupHom::new(src, tgt, m)
    }

    pub fn direct_sum(f: &GroupHom, g: &GroupHom) -> GroupHom {
        GroupHom {
            source: f.source.direct_sum(&g.source),
            target: f.target.direct_sum(&g.target),
            matrix: f.matrix.block_diag(&g.matrix),
        }
    }
}

/// Reusable solver for `h(x) = y`.
pub struct Preimager {
    snf: Snf,
    hom: GroupHom,
}

impl Preimager {
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let s = &self.snf;
        let b = s.u.mul_vec(y);
        let cols = s.v.rows();
        let mut w = vec![BigInt::zero(); cols];
        for (i, bi) in b.iter().enumerate() {
            let d = s.diag(i);
            if d.is_zero() {
                if !bi.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = bi.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                w[i] = q;
            }
        }
        let x = s.v.mul_vec(&w);
        let n = self.hom.source.ngens();
        Some(self.hom.source.reduce(&x[..n]))
    }
}

fn u64_of(d: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    d.to_u64().expect("invariant factor exceeds u64")
}

/// Free function forms.
pub fn kernel(h: &GroupHom) -> (FinAbGroup, GroupHom) {
    h.kernel()
}

pub fn cokernel(h: &GroupHom) -> (FinAbGroup, GroupHom) {
    h.cokernel()
}

/// Exactness of `A -f-> B -g-> C` at `B`.
pub fn is_exact_at(f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if !g.compose(f)?.is_zero() {
        return Ok(false);
    }
    let (_, k) = g.kernel();
    let lifted = f.lift_through(&k)?;
    Ok(lifted.is_surjective())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    #[test]
    fn kernel_cokernel_small() {
        let red = GroupHom::new(z(4), z(2), IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert_eq!(red.kernel().0.invariants(), vec![2]);
        assert!(red.is_surjective());
        let two = GroupHom::new(z(0), z(0), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(two.cokernel().0.invariants(), vec![2]);
        assert!(two.kernel().0.is_trivial());
        let zero = GroupHom::zero(z(4), z(4));
        assert_eq!(zero.cokernel().0.invariants(), vec![4]);
        assert_eq!(zero.kernel().0.invariants(), vec![4]);
        // y -> y + y^2 mod 2 on Z/8 is zero
        let pr = GroupHom::new(z(8), z(2), IntMatrix::from_rows(&[vec![0]])).unwrap();
        assert_eq!(pr.kernel().0.invariants(), vec![8]);
    }

    #[test]
    fn bad_hom_rejected() {
        assert!(GroupHom::new(z(2), z(3), IntMatrix::from_rows(&[vec![1]])).is_err());
        assert!(GroupHom::new(z(0), z(3), IntMatrix::from_rows(&[vec![1]])).is_ok());
    }

    #[test]
    fn kernel_inclusion_is_kernel() {
        let g = FinAbGroup::from_orders(vec![2, 4, 0]);
        let t = FinAbGroup::from_orders(vec![4, 6]);
        let m = IntMatrix::from_rows(&[vec![2, 1, 3], vec![3, 3, 5]]);
        let h = GroupHom::new(g, t, m).unwrap();
        let (k, i) = h.kernel();
        assert!(h.compose(&i).unwrap().is_zero());
        assert!(i.is_injective());
        let (_, p) = h.cokernel();
        assert!(p.compose(&h).unwrap().is_zero());
        assert!(is_exact_at(&i, &h).unwrap());
        assert!(is_exact_at(&h, &p).unwrap());
        let _ = k;
    }
}
