use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::{FinAbGroup, GroupHom};
use crate::ctx::Ctx;
use crate::error::{Error, Result};

use super::chart::{ring_chart, Chart};
use super::involution::{InvRing, Involution};
use super::ring::{FinRing, TableRing};

/// Fixed subring `A^{Z/2}` with inclusion, transfer and norm.
#[derive(Clone, Debug)]
pub struct FixedSubring {
    pub ring: FinRing,
    /// Subring index to parent index.
    pub incl: Vec<usize>,
    /// Parent index to subring index, for fixed elements.
    pub index: HashMap<usize, usize>,
    /// Parent index to subring index of `a + w(a)`.
    pub tr: Vec<usize>,
    /// Parent index to subring index of `a · w(a)`.
    pub norm: Vec<usize>,
}

impl FixedSubring {
    pub fn contains(&self, parent_idx: usize) -> bool {
        self.index.contains_key(&parent_idx)
    }
}

pub fn fixed_subring(a: &InvRing, ctx: &Ctx) -> Result<FixedSubring> {
    let r = &a.ring;
    let n = r.checked_size(ctx)?;
    let w: Vec<usize> = (0..n).map(|i| r.index_of(&a.apply_w(&r.elem_at(i)))).collect();
    let fixed: Vec<usize> = (0..n).filter(|&i| w[i] == i).collect();
    let (ring, incl) = if fixed.len() == n && !matches!(a.w, Involution::Table(_)) {
        (r.clone(), (0..n).collect::<Vec<_>>())
    } else {
        let m = fixed.len();
        ctx.check_pairs("fixed subring tables", (m * m) as u64)?;
        let pos: HashMap<usize, usize> = fixed.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let els: Vec<_> = fixed.iter().map(|&i| r.elem_at(i)).collect();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for x in &els {
            ctx.checkpoint()?;
            for y in &els {
                let s = r.index_of(&r.add(x, y));
                let p = r.index_of(&r.mul(x, y));
                let s = *pos
                    .get(&s)
                    .ok_or_else(|| Error::Internal("fixed set not closed under +".into()))?;
                let p = *pos
                    .get(&p)
                    .ok_or_else(|| Error::Internal("fixed set not closed under ·".into()))?;
                add.push(s as u32);
                mul.push(p as u32);
            }
        }
        let zero = pos[&r.index_of(&r.zero())] as u32;
        let one = pos[&r.index_of(&r.one())] as u32;
        let names = els.iter().map(|e| r.render(e)).collect();
        let t = TableRing::new(m, add, mul, zero, one, names)?;
        (FinRing::Table(Arc::new(t)), fixed)
    };
    let index: HashMap<usize, usize> = incl.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut tr = Vec::with_capacity(n);
    let mut norm = Vec::with_capacity(n);
    for (i, &wi) in w.iter().enumerate().take(n) {
        let x = r.elem_at(i);
        let wx = r.elem_at(wi);
        let t = r.index_of(&r.add(&x, &wx));
        let nm = r.index_of(&r.mul(&x, &wx));
        tr.push(
            *index
                .get(&t)
                .ok_or_else(|| Error::Internal("a + w(a) is not fixed".into()))?,
        );
        norm.push(
            *index
                .get(&nm)
                .ok_or_else(|| Error::Internal("a·w(a) is not fixed".into()))?,
        );
    }
    Ok(FixedSubring {
        ring,
        incl,
        index,
        tr,
        norm,
    })
}

/// `(A^{Z/2} ⊗ A^{Z/2}) / ⟨1⊗a w(a) − a w(a)⊗1⟩` with the multiplication map.
#[derive(Clone, Debug)]
pub struct NormTensor {
    pub fixed: FixedSubring,
    pub fixed_chart: Chart,
    /// `F ⊗ F` on generators `e_i ⊗ e_j`, position `i * r + j`.
    pub tensor: FinAbGroup,
    pub quotient: FinAbGroup,
    pub proj: GroupHom,
    pub mu: GroupHom,
    /// `x ↦ x ⊗ 1`
    pub section: GroupHom,
}

impl NormTensor {
    fn rank(&self) -> usize {
        self.fixed_chart.group().ngens()
    }

    fn pure(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let r = self.rank();
        let mut v = vec![BigInt::zero(); r * r];
        for i in 0..r {
            for j in 0..r {
                v[i * r + j] = &x[i] * &y[j];
            }
        }
        self.tensor.reduce(&v)
    }

    /// Renders a tensor as a sum of pure tensors of named elements.
    pub fn render_tensor(&self, t: &[BigInt]) -> String {
        let r = self.rank();
        let gens = self.fixed_chart.gens();
        let name = |k: usize| self.fixed.ring.render(&self.fixed.ring.elem_at(gens[k]));
        let mut parts = Vec::new();
        for (idx, c) in self.tensor.reduce(t).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, j) = (idx / r, idx % r);
            let c = if *c == BigInt::from(1) {
                String::new()
            } else {
                format!("{c}·")
            };
            parts.push(format!("{c}({}⊗{})", name(i), name(j)));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// The quotient as a ring given by tables.
    pub fn ring(&self, ctx: &Ctx) -> Result<FinRing> {
        let els = self.quotient.elements()?;
        let m = els.len();
        ctx.check_pairs("norm tensor multiplication table", (m * m) as u64)?;
        let r = self.rank();
        let fr = &self.fixed.ring;
        let gens = self.fixed_chart.gens();
        let prod: Vec<Vec<Vec<BigInt>>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|k| {
                        let e = fr.mul(&fr.elem_at(gens[i]), &fr.elem_at(gens[k]));
                        self.fixed_chart.coords(fr.index_of(&e))
                    })
                    .collect()
            })
            .collect();
        let pre = self.proj.preimager();
        let lifts: Vec<Vec<BigInt>> = els.iter().map(|q| pre.solve(q).expect("projection is onto")).collect();
        let index_of = |q: &[BigInt]| -> usize {
            let mut idx = 0usize;
            let mut mult = 1usize;
            for (c, &d) in q.iter().zip(self.quotient.orders()) {
                idx += c.to_usize().unwrap() * mult;
                mult *= d as usize;
            }
            idx
        };
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for a in 0..m {
            ctx.checkpoint()?;
            for b in 0..m {
                add.push(index_of(&self.quotient.add(&els[a], &els[b])) as u32);
                let mut t = vec![BigInt::zero(); r * r];
                for (ij, ca) in lifts[a].iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (kl, cb) in lifts[b].iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let (i, j, k, l) = (ij / r, ij % r, kl / r, kl % r);
                        let pt = self.pure(&prod[i][k], &prod[j][l]);
                        let c = ca * cb;
                        for (x, y) in t.iter_mut().zip(pt) {
                            *x += &c * y;
                        }
                    }
                }
                mul.push(index_of(&self.proj.apply(&t)) as u32);
            }
        }
        let one_t = self.pure(
            &self.fixed_chart.coords(fr.index_of(&fr.one())),
            &self.fixed_chart.coords(fr.index_of(&fr.one())),
        );
        let one = index_of(&self.proj.apply(&one_t)) as u32;
        let zero = index_of(&self.quotient.zero_elem()) as u32;
        let names = els.iter().map(|q| self.render_tensor(&pre.solve(q).unwrap())).collect();
        Ok(FinRing::Table(Arc::new(TableRing::new(m, add, mul, zero, one, names)?)))
    }
}

pub fn norm_tensor(a: &InvRing, ctx: &Ctx) -> Result<NormTensor> {
    let fixed = fixed_subring(a, ctx)?;
    let fr = fixed.ring.clone();
    let m = fr.checked_size(ctx)? as u64;
    ctx.check_pairs("norm tensor", m.saturating_mul(m))?;
    let chart = ring_chart(&fr, ctx)?;
    let d = chart.group().orders().to_vec();
    let r = d.len();
    let tensor = FinAbGroup::from_orders((0..r * r).map(|k| d[k / r].gcd(&d[k % r])).collect::<Vec<_>>());
    debug_assert_eq!(tensor.ngens(), r * r);
    let mut nt = NormTensor {
        fixed,
        fixed_chart: chart,
        tensor: tensor.clone(),
        quotient: tensor.clone(),
        proj: GroupHom::identity(&tensor),
        mu: GroupHom::identity(&tensor),
        section: GroupHom::identity(&tensor),
    };
    let gens = nt.fixed_chart.gens().to_vec();
    let gen_el: Vec<_> = gens.iter().map(|&g| fr.elem_at(g)).collect();
    // multiplication F ⊗ F → F
    let mut mu_images = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let e = fr.mul(&gen_el[i], &gen_el[j]);
            mu_images.push(nt.fixed_chart.coords(fr.index_of(&e)));
        }
    }
    let mu_t = GroupHom::from_images(tensor.clone(), nt.fixed_chart.group().clone(), &mu_images)?;
    // ideal generators
    let norms: BTreeSet<usize> = nt.fixed.norm.iter().copied().collect();
    let basis: Vec<Vec<BigInt>> = (0..r).map(|i| nt.fixed_chart.group().basis_elem(i)).collect();
    let mut ideal = Vec::new();
    for &nv in &norms {
        ctx.checkpoint()?;
        let ne = fr.elem_at(nv);
        for k in 0..r {
            let nk = nt.fixed_chart.coords(fr.index_of(&fr.mul(&ne, &gen_el[k])));
            for l in 0..r {
                let nl = nt.fixed_chart.coords(fr.index_of(&fr.mul(&ne, &gen_el[l])));
                let a = nt.pure(&basis[k], &nl);
                let b = nt.pure(&nk, &basis[l]);
                let t = tensor.add(&a, &tensor.neg(&b));
                if !tensor.is_zero_elem(&t) {
                    ideal.push(t);
                }
            }
        }
    }
    let free = FinAbGroup::from_orders(vec![0; ideal.len()]);
    let inc = GroupHom::from_images(free, tensor.clone(), &ideal)?;
    if !mu_t.compose(&inc)?.is_zero() {
        return Err(Error::Internal("multiplication does not kill the norm ideal".into()));
    }
    let (q, proj) = inc.cokernel();
    let pre = proj.preimager();
    let images: Vec<Vec<BigInt>> = (0..q.ngens())
        .map(|j| mu_t.apply(&pre.solve(&q.basis_elem(j)).expect("projection is onto")))
        .collect();
    let mu = GroupHom::from_images(q.clone(), nt.fixed_chart.group().clone(), &images)?;
    let one = nt.fixed_chart.coords(fr.index_of(&fr.one()));
    let sec_images: Vec<Vec<BigInt>> = (0..r).map(|i| proj.apply(&nt.pure(&basis[i], &one))).collect();
    let section = GroupHom::from_images(nt.fixed_chart.group().clone(), q.clone(), &sec_images)?;
    nt.quotient = q;
    nt.proj = proj;
    nt.mu = mu;
    nt.section = section;
    Ok(nt)
}

/// Outcome of [`mu_is_iso`].
#[derive(Clone, Debug)]
pub struct MuReport {
    pub iso: bool,
    pub kernel: FinAbGroup,
    /// A nonzero kernel element written as a sum of pure tensors.
    pub witness: Option<String>,
    /// Every kernel element has 2-power order.
    pub kernel_two_power: bool,
}

pub fn mu_is_iso(a: &InvRing, ctx: &Ctx) -> Result<MuReport> {
    let nt = norm_tensor(a, ctx)?;
    if !nt
        .mu
        .compose(&nt.section)?
        .equals(&GroupHom::identity(nt.fixed_chart.group()))
    {
        return Err(Error::Internal("μ∘section is not the identity".into()));
    }
    let (k, incl) = nt.mu.kernel();
    let kernel_two_power = k.invariants().iter().all(|&d| d != 0 && d.is_power_of_two());
    let witness = if k.is_trivial() {
        None
    } else {
        let q = incl.apply(&k.basis_elem(k.ngens() - 1));
        let t = nt.proj.preimage(&q).expect("projection is onto");
        Some(nt.render_tensor(&t))
    };
    Ok(MuReport {
        iso: k.is_trivial(),
        kernel: k,
        witness,
        kernel_two_power,
    })
}
