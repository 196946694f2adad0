use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::witt::WittRing;

/// Ring element as a flat digit vector; the layout depends on the ring.
pub type Elem = Vec<u64>;

/// Truncated polynomial ring `F_p[x]/(f)` with monic `f`; a field when `f` is irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub p: u64,
    /// Coefficients of the monic modulus, low degree first, length `deg + 1`.
    pub modulus: Vec<u64>,
    pub irreducible: bool,
}

impl PolyRing {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// Ring given by full addition and multiplication tables.
#[derive(Debug)]
pub struct TableRing {
    pub size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
    names: Vec<String>,
}

impl TableRing {
    /// Tables are indexed `a * size + b`.
    pub fn new(size: usize, add: Vec<u32>, mul: Vec<u32>, zero: u32, one: u32, names: Vec<String>) -> Result<Self> {
        if add.len() != size * size || mul.len() != size * size || names.len() != size {
            return Err(Error::Invalid("table sizes do not match".into()));
        }
        let mut neg = vec![u32::MAX; size];
        for a in 0..size {
            for b in 0..size {
                if add[a * size + b] == zero {
                    neg[a] = b as u32;
                    break;
                }
            }
            if neg[a] == u32::MAX {
                return Err(Error::Invalid(format!("element {a} has no additive inverse")));
            }
        }
        Ok(TableRing {
            size,
            add,
            mul,
            neg,
            zero,
            one,
            names,
        })
    }
}

/// Finite commutative ring.
#[derive(Clone, Debug)]
pub enum FinRing {
    Zn(u64),
    Poly(Arc<PolyRing>),
    Product(Arc<FinRing>, Arc<FinRing>),
    /// Group ring over the cyclic group of the given order.
    GroupRing(Arc<FinRing>, u64),
    Witt(Arc<WittRing>),
    Table(Arc<TableRing>),
}

impl PartialEq for FinRing {
    fn eq(&self, other: &Self) -> bool {
        use FinRing::*;
        match (self, other) {
            (Zn(a), Zn(b)) => a == b,
            (Poly(a), Poly(b)) => a == b,
            (Product(a, b), Product(c, d)) => a == c && b == d,
            (GroupRing(a, n), GroupRing(b, m)) => n == m && a == b,
            (Witt(a), Witt(b)) => a.prime() == b.prime() && a.len() == b.len() && a.base() == b.base(),
            (Table(a), Table(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    let (g, x) = {
        let e = (a as i128).extended_gcd(&(p as i128));
        (e.gcd, e.x)
    };
    if g != 1 {
        None
    } else {
        Some(x.rem_euclid(p as i128) as u64)
    }
}

fn poly_mulmod(pr: &PolyRing, a: &[u64], b: &[u64]) -> Elem {
    let p = pr.p;
    let d = pr.degree();
    let mut r = vec![0u64; 2 * d.max(1) - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    for k in (d..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for i in 0..d {
            let t = c * pr.modulus[i] % p;
            r[k - d + i] = (r[k - d + i] + p - t) % p;
        }
        r[k] = 0;
    }
    r.truncate(d);
    r
}

impl FinRing {
    pub fn zn(n: u64) -> Result<FinRing> {
        if n < 2 {
            return Err(Error::Invalid(format!("Z/{n} is not supported, need n ≥ 2")));
        }
        Ok(FinRing::Zn(n))
    }

    /// `F_p[x]/(f)`; with `require_irreducible` this is the field `GF(p, f)`.
    pub fn poly_quotient(p: u64, modulus: &[u64], require_irreducible: bool) -> Result<FinRing> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        while m.len() > 1 && *m.last().unwrap() == 0 {
            m.pop();
        }
        if m.len() < 2 {
            return Err(Error::Invalid("modulus must have degree ≥ 1".into()));
        }
        let lead = *m.last().unwrap();
        let inv = mod_inv(lead, p).expect("nonzero mod prime");
        for c in m.iter_mut() {
            *c = *c * inv % p;
        }
        let irreducible = poly_is_irreducible(p, &m);
        if require_irreducible && !irreducible {
            return Err(Error::Invalid(format!(
                "{} is not irreducible over F_{p}",
                render_poly(&m)
            )));
        }
        Ok(FinRing::Poly(Arc::new(PolyRing {
            p,
            modulus: m,
            irreducible,
        })))
    }

    pub fn gf(p: u64, modulus: &[u64]) -> Result<FinRing> {
        Self::poly_quotient(p, modulus, true)
    }

    pub fn product(a: FinRing, b: FinRing) -> FinRing {
        FinRing::Product(Arc::new(a), Arc::new(b))
    }

    pub fn group_ring(base: FinRing, order: u64) -> Result<FinRing> {
        if order < 1 {
            return Err(Error::Invalid("group order must be positive".into()));
        }
        Ok(FinRing::GroupRing(Arc::new(base), order))
    }

    /// Radix of each digit.
    pub fn radices(&self) -> Vec<u64> {
        match self {
            FinRing::Zn(n) => vec![*n],
            FinRing::Poly(pr) => vec![pr.p; pr.degree()],
            FinRing::Product(a, b) => {
                let mut r = a.radices();
                r.extend(b.radices());
                r
            }
            FinRing::GroupRing(b, n) => b.radices().repeat(*n as usize),
            FinRing::Witt(w) => w.base().radices().repeat(w.len()),
            FinRing::Table(t) => vec![t.size as u64],
        }
    }

    pub fn width(&self) -> usize {
        match self {
            FinRing::Zn(_) | FinRing::Table(_) => 1,
            FinRing::Poly(pr) => pr.degree(),
            FinRing::Product(a, b) => a.width() + b.width(),
            FinRing::GroupRing(b, n) => b.width() * *n as usize,
            FinRing::Witt(w) => w.base().width() * w.len(),
        }
    }

    /// Number of elements, saturating.
    pub fn order(&self) -> u128 {
        self.radices()
            .iter()
            .fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
    }

    /// Number of elements if it fits the enumeration bound.
    pub fn checked_size(&self, ctx: &Ctx) -> Result<usize> {
        let n = self.order();
        let n64 = u64::try_from(n).unwrap_or(u64::MAX);
        ctx.check_size(&format!("ring {self}"), n64)?;
        Ok(n64 as usize)
    }

    pub fn index_of(&self, a: &[u64]) -> usize {
        let mut idx: u128 = 0;
        let mut mult: u128 = 1;
        for (d, r) in a.iter().zip(self.radices()) {
            idx += *d as u128 * mult;
            mult *= r as u128;
        }
        idx as usize
    }

    pub fn elem_at(&self, mut idx: usize) -> Elem {
        self.radices()
            .into_iter()
            .map(|r| {
                let d = idx as u64 % r;
                idx /= r as usize;
                d
            })
            .collect()
    }

    pub fn zero(&self) -> Elem {
        match self {
            FinRing::Table(t) => vec![t.zero as u64],
            _ => vec![0; self.width()],
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            FinRing::Zn(_) => vec![1],
            FinRing::Poly(pr) => {
                let mut v = vec![0; pr.degree()];
                v[0] = 1;
                v
            }
            FinRing::Product(a, b) => {
                let mut v = a.one();
                v.extend(b.one());
                v
            }
            FinRing::GroupRing(b, n) => {
                let mut v = b.one();
                v.extend(b.zero().repeat(*n as usize - 1));
                v
            }
            FinRing::Witt(w) => w.one(),
            FinRing::Table(t) => vec![t.one as u64],
        }
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Elem {
        match self {
            FinRing::Zn(n) => vec![(a[0] + b[0]) % n],
            FinRing::Poly(pr) => a.iter().zip(b).map(|(x, y)| (x + y) % pr.p).collect(),
            FinRing::Product(x, y) => {
                let k = x.width();
                let mut v = x.add(&a[..k], &b[..k]);
                v.extend(y.add(&a[k..], &b[k..]));
                v
            }
            FinRing::GroupRing(base, _) => {
                let k = base.width();
                a.chunks(k).zip(b.chunks(k)).flat_map(|(x, y)| base.add(x, y)).collect()
            }
            FinRing::Witt(w) => w.add(a, b),
            FinRing::Table(t) => vec![t.add[a[0] as usize * t.size + b[0] as usize] as u64],
        }
    }

    pub fn neg(&self, a: &[u64]) -> Elem {
        match self {
            FinRing::Zn(n) => vec![(n - a[0] % n) % n],
            FinRing::Poly(pr) => a.iter().map(|x| (pr.p - x) % pr.p).collect(),
            FinRing::Product(x, y) => {
                let k = x.width();
                let mut v = x.neg(&a[..k]);
                v.extend(y.neg(&a[k..]));
                v
            }
            FinRing::GroupRing(base, _) => a.chunks(base.width()).flat_map(|x| base.neg(x)).collect(),
            FinRing::Witt(w) => w.neg(a),
            FinRing::Table(t) => vec![t.neg[a[0] as usize] as u64],
        }
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Elem {
        match self {
            FinRing::Zn(n) => vec![((a[0] as u128 * b[0] as u128) % *n as u128) as u64],
            FinRing::Poly(pr) => poly_mulmod(pr, a, b),
            FinRing::Product(x, y) => {
                let k = x.width();
                let mut v = x.mul(&a[..k], &b[..k]);
                v.extend(y.mul(&a[k..], &b[k..]));
                v
            }
            FinRing::GroupRing(base, n) => {
                let k = base.width();
                let n = *n as usize;
                let mut out: Vec<Elem> = vec![base.zero(); n];
                for i in 0..n {
                    let x = &a[i * k..(i + 1) * k];
                    if x.iter().all(|&d| d == 0) && !matches!(**base, FinRing::Table(_)) {
                        continue;
                    }
                    for j in 0..n {
                        let y = &b[j * k..(j + 1) * k];
                        let t = base.mul(x, y);
                        let s = (i + j) % n;
                        out[s] = base.add(&out[s], &t);
                    }
                }
                out.concat()
            }
            FinRing::Witt(w) => w.mul(a, b),
            FinRing::Table(t) => vec![t.mul[a[0] as usize * t.size + b[0] as usize] as u64],
        }
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Elem {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `c · a` for an integer `c`, by double and add.
    pub fn times(&self, c: &BigInt, a: &[u64]) -> Elem {
        let neg = c < &BigInt::zero();
        let mut c = num_traits::Signed::abs(c);
        let mut base = a.to_vec();
        let mut acc = self.zero();
        let two = BigInt::from(2);
        while !c.is_zero() {
            if c.is_odd() {
                acc = self.add(&acc, &base);
            }
            c /= &two;
            if !c.is_zero() {
                base = self.add(&base, &base);
            }
        }
        if neg {
            self.neg(&acc)
        } else {
            acc
        }
    }

    /// Image of an integer.
    pub fn from_int(&self, c: &BigInt) -> Elem {
        match self {
            FinRing::Zn(n) => vec![c.mod_floor(&BigInt::from(*n)).to_u64().unwrap()],
            FinRing::Poly(pr) => {
                let mut v = vec![0; pr.degree()];
                v[0] = c.mod_floor(&BigInt::from(pr.p)).to_u64().unwrap();
                v
            }
            FinRing::Product(a, b) => {
                let mut v = a.from_int(c);
                v.extend(b.from_int(c));
                v
            }
            FinRing::GroupRing(b, n) => {
                let mut v = b.from_int(c);
                v.extend(b.zero().repeat(*n as usize - 1));
                v
            }
            _ => self.times(c, &self.one()),
        }
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a == self.zero().as_slice()
    }

    /// Additive order of `1`.
    pub fn characteristic(&self) -> u64 {
        let one = self.one();
        let mut x = one.clone();
        let mut n = 1u64;
        while !self.is_zero(&x) {
            x = self.add(&x, &one);
            n += 1;
        }
        n
    }

    /// Prime `p` if the characteristic is a power of `p`.
    pub fn char_prime(&self) -> Option<u64> {
        let c = self.characteristic();
        let f = factor(c);
        if f.len() == 1 {
            Some(f[0].0)
        } else {
            None
        }
    }

    /// All elements in index order.
    pub fn elements(&self, ctx: &Ctx) -> Result<Vec<Elem>> {
        let n = self.checked_size(ctx)?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i % 4096 == 0 {
                ctx.checkpoint()?;
            }
            out.push(self.elem_at(i));
        }
        Ok(out)
    }

    /// `x ↦ x^p` with bijectivity and additivity decided by enumeration.
    pub fn frobenius(&self, p: u64, ctx: &Ctx) -> Result<FrobeniusMap> {
        let n = self.checked_size(ctx)?;
        ctx.check_pairs("frobenius additivity", (n as u64).saturating_mul(n as u64))?;
        let table: Vec<usize> = (0..n).map(|i| self.index_of(&self.pow(&self.elem_at(i), p))).collect();
        let mut seen = vec![false; n];
        let mut bijective = true;
        for &t in &table {
            if std::mem::replace(&mut seen[t], true) {
                bijective = false;
            }
        }
        let mut additive = true;
        'outer: for a in 0..n {
            ctx.checkpoint()?;
            let ea = self.elem_at(a);
            for b in a..n {
                let s = self.index_of(&self.add(&ea, &self.elem_at(b)));
                let rhs = self.index_of(&self.add(&self.elem_at(table[a]), &self.elem_at(table[b])));
                if table[s] != rhs {
                    additive = false;
                    break 'outer;
                }
            }
        }
        Ok(FrobeniusMap {
            p,
            table,
            bijective,
            additive,
        })
    }

    /// Checks whether every nonzero element is a unit.
    pub fn is_field(&self, ctx: &Ctx) -> Result<bool> {
        if let FinRing::Poly(pr) = self {
            return Ok(pr.irreducible);
        }
        if let FinRing::Zn(n) = self {
            return Ok(is_prime(*n));
        }
        let n = self.checked_size(ctx)?;
        let one = self.index_of(&self.one());
        let zero = self.index_of(&self.zero());
        for a in 0..n {
            if a == zero {
                continue;
            }
            ctx.checkpoint()?;
            let ea = self.elem_at(a);
            if !(0..n).any(|b| self.index_of(&self.mul(&ea, &self.elem_at(b))) == one) {
                return Ok(false);
            }
        }
        Ok(n > 1)
    }

    /// Exhaustive check of the commutative ring axioms.
    pub fn check_axioms(&self, ctx: &Ctx) -> Result<()> {
        let els = self.elements(ctx)?;
        let n = els.len() as u64;
        ctx.check_pairs("ring axioms", n.saturating_pow(3))?;
        let one = self.one();
        for a in &els {
            ctx.checkpoint()?;
            if self.mul(a, &one) != *a {
                return Err(Error::Internal(format!("1 is not a unit for {}", self.render(a))));
            }
            for b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Internal("ring is not commutative".into()));
                }
                for c in &els {
                    let l = self.mul(a, &self.add(b, c));
                    let r = self.add(&self.mul(a, b), &self.mul(a, c));
                    if l != r {
                        return Err(Error::Internal("distributivity fails".into()));
                    }
                    if self.mul(&self.mul(a, b), c) != self.mul(a, &self.mul(b, c)) {
                        return Err(Error::Internal("associativity fails".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, a: &[u64]) -> String {
        match self {
            FinRing::Zn(_) => a[0].to_string(),
            FinRing::Poly(_) => render_poly(a),
            FinRing::Product(x, y) => {
                let k = x.width();
                format!("({},{})", x.render(&a[..k]), y.render(&a[k..]))
            }
            FinRing::GroupRing(base, _) => {
                let k = base.width();
                let mut terms = Vec::new();
                for (i, c) in a.chunks(k).enumerate() {
                    if base.is_zero(c) {
                        continue;
                    }
                    let mut s = base.render(c);
                    if s.contains('+') || s.contains(',') {
                        s = format!("({s})");
                    }
                    terms.push(match (i, s.as_str()) {
                        (0, _) => s,
                        (1, "1") => "g".to_string(),
                        (1, _) => format!("{s}g"),
                        (_, "1") => format!("g^{i}"),
                        _ => format!("{s}g^{i}"),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            FinRing::Witt(w) => {
                let parts: Vec<String> = w.coords(a).iter().map(|c| w.base().render(c)).collect();
                format!("[{}]", parts.join(","))
            }
            FinRing::Table(t) => t.names[a[0] as usize].clone(),
        }
    }

    /// Canonical ring expression where one exists.
    pub fn describe(&self) -> String {
        match self {
            FinRing::Zn(n) => format!("Z/{n}"),
            FinRing::Poly(pr) if pr.irreducible => format!("GF({},{})", pr.p, render_poly(&pr.modulus)),
            FinRing::Poly(pr) => format!("F{}[x]/({})", pr.p, render_poly(&pr.modulus)),
            FinRing::Product(a, b) => {
                let r = b.describe();
                let r = if matches!(**b, FinRing::Product(..)) {
                    format!("({r})")
                } else {
                    r
                };
                format!("{}x{}", a.describe(), r)
            }
            FinRing::GroupRing(b, n) => {
                let s = b.describe();
                let s = if matches!(**b, FinRing::Product(..)) {
                    format!("({s})")
                } else {
                    s
                };
                format!("{s}[C{n}]")
            }
            FinRing::Witt(w) => format!("W{}({})", w.len(), w.base().describe()),
            FinRing::Table(t) => format!("table ring of order {}", t.size),
        }
    }
}

impl fmt::Display for FinRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Frobenius `x ↦ x^p` as a table on element indices.
#[derive(Clone, Debug)]
pub struct FrobeniusMap {
    pub p: u64,
    pub table: Vec<usize>,
    pub bijective: bool,
    pub additive: bool,
}

pub fn frobenius(ring: &FinRing, p: u64, ctx: &Ctx) -> Result<FrobeniusMap> {
    ring.frobenius(p, ctx)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Renders a coefficient list (low degree first) in the variable `x`.
pub fn render_poly(c: &[u64]) -> String {
    let mut terms = Vec::new();
    for (k, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coef = if a == 1 && k > 0 { String::new() } else { a.to_string() };
        terms.push(match k {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    // m monic
    let mut r = a.to_vec();
    let d = m.len() - 1;
    while r.len() > d {
        let c = *r.last().unwrap();
        let k = r.len() - 1 - d;
        if c != 0 {
            for i in 0..=d {
                r[k + i] = (r[k + i] + p - c * m[i] % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_is_irreducible(p: u64, m: &[u64]) -> bool {
    let d = m.len() - 1;
    for k in 1..=d / 2 {
        let count = p.pow(k as u32);
        for i in 0..count {
            let mut f = Vec::with_capacity(k + 1);
            let mut x = i;
            for _ in 0..k {
                f.push(x % p);
                x /= p;
            }
            f.push(1);
            if poly_rem(p, m, &f).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_arith() {
        let f4 = FinRing::gf(2, &[1, 1, 1]).unwrap();
        let x = vec![0, 1];
        assert_eq!(f4.mul(&x, &x), vec![1, 1]);
        assert_eq!(f4.pow(&x, 3), f4.one());
        assert_eq!(f4.render(&[1, 1]), "x+1");
        assert!(FinRing::gf(2, &[1, 0, 1]).is_err());
        assert_eq!(f4.characteristic(), 2);
        f4.check_axioms(&Ctx::default()).unwrap();
    }

    #[test]
    fn group_ring_mul() {
        let r = FinRing::group_ring(FinRing::Zn(4), 2).unwrap();
        let g = vec![0, 1];
        assert_eq!(r.mul(&g, &g), r.one());
        assert_eq!(r.render(&[1, 3]), "1+3g");
        r.check_axioms(&Ctx::default()).unwrap();
    }

    #[test]
    fn frobenius_flags() {
        let ctx = Ctx::default();
        let f4 = FinRing::gf(2, &[1, 1, 1]).unwrap();
        let fr = f4.frobenius(2, &ctx).unwrap();
        assert!(fr.bijective && fr.additive);
        let dual = FinRing::poly_quotient(2, &[0, 0, 1], false).unwrap();
        let fr = dual.frobenius(2, &ctx).unwrap();
        assert!(!fr.bijective && fr.additive);
        let z4 = FinRing::Zn(4);
        assert!(!z4.frobenius(2, &ctx).unwrap().additive);
    }
}
