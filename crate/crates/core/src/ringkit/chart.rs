use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::abelian::{FinAbGroup, GroupHom, IntMatrix, Snf};
use crate::ctx::Ctx;
use crate::error::{Error, Result};

/// Isomorphism between an enumerated finite abelian group and invariant factor form.
#[derive(Clone, Debug)]
pub struct Chart {
    group: FinAbGroup,
    /// Element indices of the normal form generators.
    gens: Vec<usize>,
    coords: Vec<Vec<u64>>,
    by_coords: HashMap<Vec<u64>, usize>,
}

impl Chart {
    /// `n` elements indexed `0..n` with identity `zero` and group law `add`.
    pub fn build(n: usize, zero: usize, add: impl Fn(usize, usize) -> usize, ctx: &Ctx) -> Result<Chart> {
        ctx.check_size("group", n as u64)?;
        // greedy generators with raw coordinates
        let mut raw: Vec<Option<Vec<u64>>> = vec![None; n];
        raw[zero] = Some(vec![]);
        let mut members = vec![zero];
        let mut raw_gens: Vec<usize> = Vec::new();
        let mut rel_cols: Vec<(u64, Vec<u64>)> = Vec::new();
        for x in 0..n {
            if raw[x].is_some() {
                continue;
            }
            ctx.checkpoint()?;
            let k = raw_gens.len();
            // order of x modulo the current subgroup
            let mut m = 1u64;
            let mut y = x;
            while raw[y].is_none() {
                y = add(y, x);
                m += 1;
            }
            let c = raw[y].clone().unwrap();
            rel_cols.push((m, c));
            raw_gens.push(x);
            let old = std::mem::take(&mut members);
            for v in &old {
                let mut c = raw[*v].take().unwrap();
                c.push(0);
                raw[*v] = Some(c);
            }
            let mut shift = zero;
            let mut new_members = Vec::with_capacity(old.len() * m as usize);
            for t in 0..m {
                for &h in &old {
                    let e = if t == 0 { h } else { add(h, shift) };
                    if t > 0 {
                        let mut c = raw[h].clone().unwrap();
                        c[k] = t;
                        if raw[e].is_some() {
                            return Err(Error::Internal("group law is not associative or not a group".into()));
                        }
                        raw[e] = Some(c);
                    }
                    new_members.push(e);
                }
                shift = add(shift, x);
            }
            members = new_members;
        }
        if members.len() != n {
            return Err(Error::Internal("enumeration does not form a group".into()));
        }
        let k = raw_gens.len();
        let mut rel = IntMatrix::zeros(k, k);
        for (j, (m, c)) in rel_cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                rel[(i, j)] = -BigInt::from(*v);
            }
            rel[(j, j)] = BigInt::from(*m);
        }
        let s = Snf::compute(&rel);
        let kept: Vec<usize> = (0..k).filter(|&i| s.diag(i) != BigInt::from(1)).collect();
        let orders: Vec<u64> = kept.iter().map(|&i| s.diag(i).to_u64().unwrap()).collect();
        let group = FinAbGroup::from_orders(orders.clone());
        let coords: Vec<Vec<u64>> = raw
            .into_iter()
            .map(|c| {
                let c: Vec<BigInt> = c.unwrap().into_iter().map(BigInt::from).collect();
                let y = s.u.mul_vec(&c);
                kept.iter()
                    .zip(&orders)
                    .map(|(&i, &d)| y[i].mod_floor(&BigInt::from(d)).to_u64().unwrap())
                    .collect()
            })
            .collect();
        let by_coords: HashMap<Vec<u64>, usize> = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        if by_coords.len() != n {
            return Err(Error::Internal("chart is not injective".into()));
        }
        let gens = (0..kept.len())
            .map(|j| {
                let mut e = vec![0u64; kept.len()];
                e[j] = 1;
                by_coords[&e]
            })
            .collect();
        Ok(Chart {
            group,
            gens,
            coords,
            by_coords,
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.coords.len()
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn coords_u64(&self, idx: usize) -> &[u64] {
        &self.coords[idx]
    }

    pub fn coords(&self, idx: usize) -> Vec<BigInt> {
        self.coords[idx].iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Element index with the given coordinates (reduced first).
    pub fn element(&self, c: &[BigInt]) -> usize {
        let r: Vec<u64> = self.group.reduce(c).iter().map(|x| x.to_u64().unwrap()).collect();
        self.by_coords[&r]
    }

    /// Hom from an index map, with additivity checked on every element.
    pub fn hom_from_fn(&self, target: &Chart, f: impl Fn(usize) -> usize) -> Result<GroupHom> {
        let images: Vec<Vec<BigInt>> = self.gens.iter().map(|&g| target.coords(f(g))).collect();
        let h = GroupHom::from_images(self.group.clone(), target.group.clone(), &images)
            .map_err(|e| Error::Internal(format!("map is not additive: {e}")))?;
        for x in 0..self.size() {
            let expect = h.apply(&self.coords(x));
            if target.coords(f(x)) != expect {
                return Err(Error::Invalid(format!("map is not additive (element {x})")));
            }
        }
        Ok(h)
    }

    /// Like [`Chart::hom_from_fn`] but returns `None` when the map is not additive.
    pub fn try_hom_from_fn(&self, target: &Chart, f: impl Fn(usize) -> usize) -> Option<GroupHom> {
        self.hom_from_fn(target, f).ok()
    }

    /// Subgroup generated by a set of elements, as an inclusion hom.
    pub fn span(&self, elems: &[usize]) -> Result<(FinAbGroup, GroupHom)> {
        let free = FinAbGroup::from_orders(vec![0; elems.len()]);
        let images: Vec<Vec<BigInt>> = elems.iter().map(|&e| self.coords(e)).collect();
        let h = GroupHom::from_images(free, self.group.clone(), &images)?;
        Ok(h.image())
    }
}

/// Additive chart of a finite ring, indexed like [`FinRing::elem_at`].
pub fn ring_chart(ring: &super::FinRing, ctx: &Ctx) -> Result<Chart> {
    let n = ring.checked_size(ctx)?;
    let zero = ring.index_of(&ring.zero());
    Chart::build(
        n,
        zero,
        |a, b| ring.index_of(&ring.add(&ring.elem_at(a), &ring.elem_at(b))),
        ctx,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_product() {
        // Z/4 x Z/6 enumerated as pairs
        let n = 24;
        let add = |a: usize, b: usize| {
            let (a0, a1) = (a % 4, a / 4);
            let (b0, b1) = (b % 4, b / 4);
            (a0 + b0) % 4 + 4 * ((a1 + b1) % 6)
        };
        let c = Chart::build(n, 0, add, &Ctx::default()).unwrap();
        assert_eq!(c.group().invariants(), vec![2, 12]);
        for a in 0..n {
            for b in 0..n {
                let s = c.group().add(&c.coords(a), &c.coords(b));
                assert_eq!(c.element(&s), add(a, b));
            }
        }
    }
}
