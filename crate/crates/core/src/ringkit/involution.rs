use std::fmt;
use std::sync::Arc;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::witt::WittRing;

use super::ring::{Elem, FinRing};

/// Anti-involution of a commutative ring.
#[derive(Clone, Debug, PartialEq)]
pub enum Involution {
    Trivial,
    /// Order two Galois automorphism `x ↦ x^{p^{d/2}}` on each field factor of even degree `d`.
    Galois,
    /// Exchange of the two factors of `A × A`.
    Swap,
    /// `g ↦ g⁻¹` on group rings.
    Inversion,
    /// Explicit table on element indices.
    Table(Arc<Vec<usize>>),
}

impl Involution {
    pub fn name(&self) -> &'static str {
        match self {
            Involution::Trivial => "trivial",
            Involution::Galois => "galois",
            Involution::Swap => "swap",
            Involution::Inversion => "inv",
            Involution::Table(_) => "table",
        }
    }

    /// Applies the involution; structural schemes recurse through products,
    /// group rings (coefficientwise) and Witt vectors (coordinatewise).
    pub fn apply(&self, ring: &FinRing, a: &[u64]) -> Result<Elem> {
        match self {
            Involution::Trivial => Ok(a.to_vec()),
            Involution::Table(t) => Ok(ring.elem_at(t[ring.index_of(a)])),
            Involution::Galois => match ring {
                FinRing::Zn(_) => Ok(a.to_vec()),
                FinRing::Poly(pr) => {
                    let d = pr.degree();
                    if !pr.irreducible || d % 2 != 0 {
                        return Err(Error::Invalid(format!(
                            "{ring} has no Galois automorphism of order two"
                        )));
                    }
                    Ok(ring.pow(a, pr.p.pow((d / 2) as u32)))
                }
                _ => self.recurse(ring, a),
            },
            Involution::Swap => match ring {
                FinRing::Product(x, y) => {
                    if x != y {
                        return Err(Error::Invalid(format!("swap needs equal factors, got {ring}")));
                    }
                    let k = x.width();
                    let mut v = a[k..].to_vec();
                    v.extend_from_slice(&a[..k]);
                    Ok(v)
                }
                FinRing::Witt(_) => self.recurse(ring, a),
                _ => Err(Error::Invalid(format!("swap is not defined on {ring}"))),
            },
            Involution::Inversion => match ring {
                FinRing::GroupRing(base, n) => {
                    let k = base.width();
                    let n = *n as usize;
                    let mut v = vec![0; a.len()];
                    for i in 0..n {
                        let j = (n - i) % n;
                        v[j * k..(j + 1) * k].copy_from_slice(&a[i * k..(i + 1) * k]);
                    }
                    Ok(v)
                }
                FinRing::Product(..) | FinRing::Witt(_) => self.recurse(ring, a),
                _ => Ok(a.to_vec()),
            },
        }
    }

    fn recurse(&self, ring: &FinRing, a: &[u64]) -> Result<Elem> {
        match ring {
            FinRing::Product(x, y) => {
                let k = x.width();
                let mut v = self.apply(x, &a[..k])?;
                v.extend(self.apply(y, &a[k..])?);
                Ok(v)
            }
            FinRing::GroupRing(base, _) => {
                let mut v = Vec::with_capacity(a.len());
                for c in a.chunks(base.width()) {
                    v.extend(self.apply(base, c)?);
                }
                Ok(v)
            }
            FinRing::Witt(w) => {
                let mut v = Vec::with_capacity(a.len());
                for c in w.coords(a) {
                    v.extend(self.apply(w.base(), c)?);
                }
                Ok(v)
            }
            _ => Err(Error::Invalid(format!("{} is not defined on {ring}", self.name()))),
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Finite commutative ring with anti-involution.
#[derive(Clone, Debug)]
pub struct InvRing {
    pub ring: FinRing,
    pub w: Involution,
}

impl InvRing {
    /// Builds and validates exhaustively.
    pub fn new(ring: FinRing, w: Involution, ctx: &Ctx) -> Result<InvRing> {
        let r = InvRing { ring, w };
        r.validate(ctx)?;
        Ok(r)
    }

    pub fn trivial(ring: FinRing) -> InvRing {
        InvRing {
            ring,
            w: Involution::Trivial,
        }
    }

    pub fn apply_w(&self, a: &[u64]) -> Elem {
        self.w
            .apply(&self.ring, a)
            .expect("involution validated at construction")
    }

    /// `w(1) = 1`, `w² = id`, additivity and multiplicativity on all elements or pairs.
    pub fn validate(&self, ctx: &Ctx) -> Result<()> {
        let n = self.ring.checked_size(ctx)?;
        let table: Vec<usize> = (0..n)
            .map(|i| Ok(self.ring.index_of(&self.w.apply(&self.ring, &self.ring.elem_at(i))?)))
            .collect::<Result<_>>()?;
        let one = self.ring.index_of(&self.ring.one());
        if table[one] != one {
            return Err(Error::Invalid("involution does not fix 1".into()));
        }
        for (i, &t) in table.iter().enumerate() {
            if table[t] != i {
                return Err(Error::Invalid("w∘w ≠ id".into()));
            }
        }
        if (n as u64).saturating_mul(n as u64) > ctx.max_pairs {
            return Err(Error::Bound(format!("involution check on {n} elements")));
        }
        for a in 0..n {
            ctx.checkpoint()?;
            let ea = self.ring.elem_at(a);
            for b in a..n {
                let eb = self.ring.elem_at(b);
                let s = self.ring.index_of(&self.ring.add(&ea, &eb));
                let wa = self.ring.elem_at(table[a]);
                let wb = self.ring.elem_at(table[b]);
                if table[s] != self.ring.index_of(&self.ring.add(&wa, &wb)) {
                    return Err(Error::Invalid("involution is not additive".into()));
                }
                let m = self.ring.index_of(&self.ring.mul(&ea, &eb));
                if table[m] != self.ring.index_of(&self.ring.mul(&wb, &wa)) {
                    return Err(Error::Invalid("involution is not multiplicative".into()));
                }
            }
        }
        Ok(())
    }

    /// `W_n(A;p)` with the coordinatewise involution `W(w)`.
    pub fn witt(&self, p: u64, n: usize, ctx: &Ctx) -> Result<InvRing> {
        let ring = WittRing::ring(self.ring.clone(), p, n, ctx)?;
        let w = match &self.w {
            Involution::Table(t) => {
                let base = &self.ring;
                let wr = match &ring {
                    FinRing::Witt(w) => w.clone(),
                    _ => unreachable!(),
                };
                let size = ring.checked_size(ctx)?;
                let tab: Vec<usize> = (0..size)
                    .map(|i| {
                        let x = ring.elem_at(i);
                        let y = wr.map_coords(&x, |c| base.elem_at(t[base.index_of(c)]));
                        ring.index_of(&y)
                    })
                    .collect();
                Involution::Table(Arc::new(tab))
            }
            other => other.clone(),
        };
        Ok(InvRing { ring, w })
    }
}
