use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Monomial exponents, trailing zeros trimmed.
pub type Monomial = Vec<u32>;

/// Multivariate polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut m = long.to_vec();
    for (x, y) in m.iter_mut().zip(short) {
        *x += y;
    }
    m
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        let mut p = Poly::zero();
        p.add_term(vec![], c.into());
        p
    }

    pub fn var(i: usize) -> Poly {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        let mut p = Poly::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(trim(m)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> BigInt {
        self.terms.get(&trim(m.to_vec())).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = mono_mul(m1, m2);
                *acc.entry(m).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { terms: acc }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(Poly { terms })
    }

    /// Integer value at `vals`.
    pub fn eval_int(&self, vals: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(vals[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Renames variables by `f`.
    pub fn rename(&self, f: impl Fn(usize) -> usize) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let mut nm: Vec<u32> = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = f(i);
                if nm.len() <= j {
                    nm.resize(j + 1, 0);
                }
                nm[j] += e;
            }
            r.add_term(nm, c.clone());
        }
        r
    }
}

impl fmt::Display for Poly {
    /// Variables print as `v0, v1, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &BigInt::zero();
            let a = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("v{i}") } else { format!("v{i}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
