use std::sync::Arc;

use super::ring::WittRing;
use crate::abelian::{FinAbGroup, GroupHom};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ringkit::{ring_chart, Chart, FinRing};

/// `W_n(A;p)` with the additive chart to invariant factor form.
#[derive(Clone, Debug)]
pub struct WittStructure {
    pub ring: FinRing,
    pub witt: Arc<WittRing>,
    pub chart: Chart,
}

/// Additive group of `W_n(A;p)` by exhaustive enumeration.
pub fn witt_structure(base: &FinRing, p: u64, n: usize, ctx: &Ctx) -> Result<WittStructure> {
    let witt = WittRing::new(base.clone(), p, n, ctx)?;
    let ring = FinRing::Witt(witt.clone());
    let chart = ring_chart(&ring, ctx)?;
    Ok(WittStructure { ring, witt, chart })
}

impl WittStructure {
    pub fn group(&self) -> &FinAbGroup {
        self.chart.group()
    }

    fn check_target(&self, target: &WittStructure, len: usize) -> Result<()> {
        if target.witt.len() != len
            || target.witt.prime() != self.witt.prime()
            || target.witt.base() != self.witt.base()
        {
            return Err(Error::Invalid(format!("target must be W_{len} of the same base")));
        }
        Ok(())
    }

    /// `F: W_n → W_{n-1}` as a hom.
    pub fn frobenius_hom(&self, target: &WittStructure) -> Result<GroupHom> {
        self.check_target(target, self.witt.len() - 1)?;
        self.chart.hom_from_fn(&target.chart, |i| {
            let x = self.ring.elem_at(i);
            target.ring.index_of(&self.witt.frobenius(&x))
        })
    }

    /// `R: W_n → W_{n-1}` as a hom.
    pub fn restriction_hom(&self, target: &WittStructure) -> Result<GroupHom> {
        self.check_target(target, self.witt.len() - 1)?;
        self.chart.hom_from_fn(&target.chart, |i| {
            let x = self.ring.elem_at(i);
            target.ring.index_of(&self.witt.restriction(&x))
        })
    }

    /// `V: W_n → W_{n+1}` as a hom.
    pub fn verschiebung_hom(&self, target: &WittStructure) -> Result<GroupHom> {
        self.check_target(target, self.witt.len() + 1)?;
        self.chart.hom_from_fn(&target.chart, |i| {
            let x = self.ring.elem_at(i);
            target.ring.index_of(&self.witt.verschiebung(&x))
        })
    }
}
