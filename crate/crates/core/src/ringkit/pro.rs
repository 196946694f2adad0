use crate::ctx::Ctx;
use crate::error::{Error, Result};

use super::involution::InvRing;
use super::parse::RingSpec;
use super::ring::Elem;

/// Tower of finite rings `B_1 ← B_2 ← ...` with surjective transitions.
#[derive(Clone, Debug)]
pub struct ProRing {
    pub spec: RingSpec,
}

impl ProRing {
    pub fn new(spec: RingSpec) -> Self {
        ProRing { spec }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(ProRing::new(RingSpec::parse(s)?))
    }

    pub fn level(&self, n: usize, ctx: &Ctx) -> Result<InvRing> {
        if n == 0 {
            return Err(Error::Invalid("levels start at 1".into()));
        }
        self.spec.instantiate(n, ctx)
    }

    /// Transition `B_n → B_{n-1}`.
    pub fn transition(&self, n: usize, a: &[u64]) -> Elem {
        self.spec.expr.transition(n, a)
    }

    /// Composite transition `B_from → B_to`.
    pub fn reduce(&self, from: usize, to: usize, a: &[u64]) -> Elem {
        let mut x = a.to_vec();
        for n in (to + 1..=from).rev() {
            x = self.transition(n, &x);
        }
        x
    }
}
