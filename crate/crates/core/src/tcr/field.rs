use num_bigint::BigInt;

use crate::abelian::{FinAbGroup, GroupHom};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ringkit::{ring_chart, Chart, FinRing};

/// A finite ring of characteristic `p` whose Frobenius is bijective, with its additive chart.
#[derive(Clone, Debug)]
pub struct PerfectRing {
    pub ring: FinRing,
    pub p: u64,
    pub chart: Chart,
    /// `x ↦ x^p` on the chart group.
    pub frob: GroupHom,
    /// Inverse Frobenius.
    pub root: GroupHom,
}

impl PerfectRing {
    /// Certifies perfectness by enumeration; `need_field` also demands a field.
    pub fn new(ring: &FinRing, p: u64, need_field: bool, ctx: &Ctx) -> Result<PerfectRing> {
        let what = if need_field {
            format!("perfect field of characteristic {p}")
        } else {
            format!("perfect F_{p}-algebra")
        };
        if ring.characteristic() != p {
            return Err(Error::refused(
                &what,
                format!("{} has characteristic {}", ring.describe(), ring.characteristic()),
            ));
        }
        if need_field && !ring.is_field(ctx)? {
            return Err(Error::refused(&what, format!("{} is not a field", ring.describe())));
        }
        let fm = ring.frobenius(p, ctx)?;
        if !fm.bijective {
            return Err(Error::refused(
                &what,
                format!("Frobenius of {} is not bijective", ring.describe()),
            ));
        }
        let chart = ring_chart(ring, ctx)?;
        let frob = chart.hom_from_fn(&chart, |i| fm.table[i])?;
        let root = frob.inverse()?;
        Ok(PerfectRing {
            ring: ring.clone(),
            p,
            chart,
            frob,
            root,
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        self.chart.group()
    }

    pub fn id(&self) -> GroupHom {
        GroupHom::identity(self.group())
    }

    pub fn zero(&self) -> GroupHom {
        GroupHom::zero(self.group().clone(), self.group().clone())
    }

    /// Chart coordinates of a ring element.
    pub fn coords(&self, a: &[u64]) -> Vec<BigInt> {
        self.chart.coords(self.ring.index_of(a))
    }

    pub fn elem(&self, c: &[BigInt]) -> Vec<u64> {
        self.ring.elem_at(self.chart.element(c))
    }
}
