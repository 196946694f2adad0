use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::poly::Poly;
use super::polyset::build_polys;
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ringkit::{Elem, FinRing};

/// Polynomial with coefficients already mapped into a base ring.
#[derive(Debug)]
struct SPoly {
    /// `(var, exponent)` pairs whose powers are needed.
    slots: Vec<(usize, u32)>,
    /// Terms as (coefficient, slot indices).
    terms: Vec<(Coef, Vec<usize>)>,
}

#[derive(Debug)]
enum Coef {
    One,
    MinusOne,
    Other(Elem),
}

impl SPoly {
    fn new(p: &Poly, base: &FinRing) -> SPoly {
        let mut slot_of: HashMap<(usize, u32), usize> = HashMap::new();
        let mut slots = Vec::new();
        let mut terms = Vec::new();
        let one = base.one();
        let minus_one = base.neg(&one);
        for (m, c) in p.terms() {
            let ce = base.from_int(c);
            if base.is_zero(&ce) {
                continue;
            }
            let coef = if ce == one {
                Coef::One
            } else if ce == minus_one {
                Coef::MinusOne
            } else {
                Coef::Other(ce)
            };
            let mut idx = Vec::new();
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let k = *slot_of.entry((v, e)).or_insert_with(|| {
                    slots.push((v, e));
                    slots.len() - 1
                });
                idx.push(k);
            }
            terms.push((coef, idx));
        }
        SPoly { slots, terms }
    }

    fn eval(&self, base: &FinRing, vars: &[&[u64]]) -> Elem {
        let powers: Vec<Elem> = self.slots.iter().map(|&(v, e)| base.pow(vars[v], e as u64)).collect();
        let mut acc = base.zero();
        for (c, idx) in &self.terms {
            let mut t = match idx.first() {
                Some(&i) => powers[i].clone(),
                None => base.one(),
            };
            for &i in idx.iter().skip(1) {
                t = base.mul(&t, &powers[i]);
            }
            acc = match c {
                Coef::One => base.add(&acc, &t),
                Coef::MinusOne => base.sub(&acc, &t),
                Coef::Other(e) => base.add(&acc, &base.mul(e, &t)),
            };
        }
        acc
    }
}

#[derive(Debug)]
struct Specialized {
    sums: Vec<SPoly>,
    prods: Vec<SPoly>,
    negs: Vec<SPoly>,
    frobs: Vec<SPoly>,
}

/// Truncated p-typical Witt vectors `W_n(A;p)`; elements are coordinate-major digit vectors.
#[derive(Debug)]
pub struct WittRing {
    base: FinRing,
    p: u64,
    n: usize,
    spec: Specialized,
}

/// Coordinates of a Witt vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector {
    pub coords: Vec<Elem>,
}

impl WittRing {
    pub fn new(base: FinRing, p: u64, n: usize, ctx: &Ctx) -> Result<Arc<WittRing>> {
        if n == 0 {
            return Err(Error::Invalid("Witt length must be at least 1".into()));
        }
        if n > ctx.max_witt_len {
            return Err(Error::Bound(format!(
                "Witt length {n} exceeds the supported bound {}",
                ctx.max_witt_len
            )));
        }
        let set = build_polys(p, n)?;
        let mk = |v: &[Poly]| v.iter().map(|q| SPoly::new(q, &base)).collect::<Vec<_>>();
        let spec = Specialized {
            sums: mk(&set.sums),
            prods: mk(&set.prods),
            negs: mk(&set.negs),
            frobs: mk(&set.frobs[..n - 1]),
        };
        Ok(Arc::new(WittRing { base, p, n, spec }))
    }

    /// The same construction as a [`FinRing`].
    pub fn ring(base: FinRing, p: u64, n: usize, ctx: &Ctx) -> Result<FinRing> {
        Ok(FinRing::Witt(Self::new(base, p, n, ctx)?))
    }

    pub fn base(&self) -> &FinRing {
        &self.base
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn coords<'a>(&self, a: &'a [u64]) -> Vec<&'a [u64]> {
        a.chunks(self.base.width()).collect()
    }

    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        assert_eq!(c.len(), self.n, "wrong number of Witt coordinates");
        c.concat()
    }

    pub fn vector(&self, a: &[u64]) -> WittVector {
        WittVector {
            coords: self.coords(a).into_iter().map(|c| c.to_vec()).collect(),
        }
    }

    /// Element names of the coordinates.
    pub fn to_json(&self, a: &[u64]) -> serde_json::Value {
        serde_json::Value::Array(
            self.coords(a)
                .into_iter()
                .map(|c| serde_json::Value::String(self.base.render(c)))
                .collect(),
        )
    }

    pub fn zero(&self) -> Elem {
        self.base.zero().repeat(self.n)
    }

    pub fn one(&self) -> Elem {
        let mut v = self.base.one();
        v.extend(self.base.zero().repeat(self.n - 1));
        v
    }

    fn pairs<'a>(&self, a: &'a [u64], b: &'a [u64]) -> Vec<&'a [u64]> {
        let ca = self.coords(a);
        let cb = self.coords(b);
        let mut v = Vec::with_capacity(2 * self.n);
        for i in 0..self.n {
            v.push(ca[i]);
            v.push(cb[i]);
        }
        v
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Elem {
        let vars = self.pairs(a, b);
        self.spec.sums.iter().flat_map(|s| s.eval(&self.base, &vars)).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Elem {
        let vars = self.pairs(a, b);
        self.spec.prods.iter().flat_map(|s| s.eval(&self.base, &vars)).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Elem {
        let vars = self.coords(a);
        self.spec.negs.iter().flat_map(|s| s.eval(&self.base, &vars)).collect()
    }

    /// `F: W_n → W_{n-1}`.
    pub fn frobenius(&self, a: &[u64]) -> Elem {
        let vars = self.coords(a);
        self.spec.frobs.iter().flat_map(|s| s.eval(&self.base, &vars)).collect()
    }

    /// `V: W_n → W_{n+1}`.
    pub fn verschiebung(&self, a: &[u64]) -> Elem {
        let mut v = self.base.zero();
        v.extend_from_slice(a);
        v
    }

    /// `R: W_n → W_{n-1}`, dropping the last coordinate.
    pub fn restriction(&self, a: &[u64]) -> Elem {
        a[..(self.n - 1) * self.base.width()].to_vec()
    }

    pub fn teichmuller(&self, x: &[u64]) -> Elem {
        let mut v = x.to_vec();
        v.extend(self.base.zero().repeat(self.n - 1));
        v
    }

    /// Ghost components `w_0, ..., w_{n-1}` in the base ring.
    pub fn ghost(&self, a: &[u64]) -> Vec<Elem> {
        let c = self.coords(a);
        (0..self.n)
            .map(|i| {
                let mut acc = self.base.zero();
                for (j, cj) in c.iter().enumerate().take(i + 1) {
                    let t = self.base.pow(cj, self.p.pow((i - j) as u32));
                    let t = self.base.times(&BigInt::from(self.p).pow(j as u32), &t);
                    acc = self.base.add(&acc, &t);
                }
                acc
            })
            .collect()
    }

    /// Coordinatewise image under a ring map of the base.
    pub fn map_coords(&self, a: &[u64], f: impl Fn(&[u64]) -> Elem) -> Elem {
        self.coords(a).into_iter().flat_map(f).collect()
    }
}

/// `x + y` in `W_n(A;p)`.
pub fn witt_add(w: &WittRing, x: &WittVector, y: &WittVector) -> WittVector {
    w.vector(&w.add(&w.from_coords(&x.coords), &w.from_coords(&y.coords)))
}

/// `x · y` in `W_n(A;p)`.
pub fn witt_mul(w: &WittRing, x: &WittVector, y: &WittVector) -> WittVector {
    w.vector(&w.mul(&w.from_coords(&x.coords), &w.from_coords(&y.coords)))
}

/// `F: W_{n+1} → W_n`, where `w` is the source ring.
pub fn frobenius_map(w: &WittRing, x: &WittVector) -> WittVector {
    WittVector {
        coords: w
            .frobenius(&w.from_coords(&x.coords))
            .chunks(w.base().width())
            .map(|c| c.to_vec())
            .collect(),
    }
}

pub fn verschiebung(x: &WittVector, base: &FinRing) -> WittVector {
    let mut coords = vec![base.zero()];
    coords.extend(x.coords.iter().cloned());
    WittVector { coords }
}

pub fn restriction(x: &WittVector) -> WittVector {
    WittVector {
        coords: x.coords[..x.coords.len() - 1].to_vec(),
    }
}

pub fn teichmuller(a: &[u64], base: &FinRing, n: usize) -> WittVector {
    let mut coords = vec![a.to_vec()];
    coords.extend(std::iter::repeat(base.zero()).take(n - 1));
    WittVector { coords }
}
