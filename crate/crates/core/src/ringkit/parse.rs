use std::fmt;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::witt::WittRing;

use super::involution::{InvRing, Involution};
use super::ring::{is_prime, render_poly, Elem, FinRing};

/// Parsed ring expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    /// Pro-ring with levels `Z/2^N`.
    Z,
    Zn(u64),
    /// `F_p[x]/(f)` with `f` monic irreducible, coefficients low degree first.
    Gf {
        p: u64,
        poly: Vec<u64>,
    },
    Product(Box<RingExpr>, Box<RingExpr>),
    GroupRing(Box<RingExpr>, u64),
    /// `W_len(base)`; `len = None` is the pro-ring with levels `W_N(base)`.
    Witt {
        len: Option<usize>,
        base: Box<RingExpr>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvName {
    Trivial,
    Galois,
    Swap,
    Inv,
}

impl InvName {
    pub fn involution(self) -> Involution {
        match self {
            InvName::Trivial => Involution::Trivial,
            InvName::Galois => Involution::Galois,
            InvName::Swap => Involution::Swap,
            InvName::Inv => Involution::Inversion,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            InvName::Trivial => "trivial",
            InvName::Galois => "galois",
            InvName::Swap => "swap",
            InvName::Inv => "inv",
        }
    }
}

/// Ring expression with a named involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub expr: RingExpr,
    pub inv: InvName,
}

impl RingExpr {
    pub fn is_pro(&self) -> bool {
        match self {
            RingExpr::Z => true,
            RingExpr::Zn(_) | RingExpr::Gf { .. } => false,
            RingExpr::Product(a, b) => a.is_pro() || b.is_pro(),
            RingExpr::GroupRing(a, _) => a.is_pro(),
            RingExpr::Witt { len, base } => len.is_none() || base.is_pro(),
        }
    }

    /// The finite ring at level `n` (ignored for finite expressions).
    pub fn instantiate(&self, n: usize, ctx: &Ctx) -> Result<FinRing> {
        Ok(match self {
            RingExpr::Z => {
                if n == 0 || n > 62 {
                    return Err(Error::Invalid(format!("level {n} out of range")));
                }
                FinRing::Zn(1u64 << n)
            }
            RingExpr::Zn(m) => FinRing::zn(*m)?,
            RingExpr::Gf { p, poly } => FinRing::gf(*p, poly)?,
            RingExpr::Product(a, b) => FinRing::product(a.instantiate(n, ctx)?, b.instantiate(n, ctx)?),
            RingExpr::GroupRing(a, k) => FinRing::group_ring(a.instantiate(n, ctx)?, *k)?,
            RingExpr::Witt { len, base } => {
                let b = base.instantiate(n, ctx)?;
                let p = witt_prime(&b);
                WittRing::ring(b, p, len.unwrap_or(n), ctx)?
            }
        })
    }

    /// Digit width of the level `n` ring.
    pub fn width(&self, n: usize) -> usize {
        match self {
            RingExpr::Z | RingExpr::Zn(_) => 1,
            RingExpr::Gf { poly, .. } => poly.len() - 1,
            RingExpr::Product(a, b) => a.width(n) + b.width(n),
            RingExpr::GroupRing(a, k) => a.width(n) * *k as usize,
            RingExpr::Witt { len, base } => base.width(n) * len.unwrap_or(n),
        }
    }

    /// Transition map from level `n` to level `n - 1`.
    pub fn transition(&self, n: usize, a: &[u64]) -> Elem {
        match self {
            RingExpr::Z => vec![a[0] % (1u64 << (n - 1))],
            RingExpr::Zn(_) | RingExpr::Gf { .. } => a.to_vec(),
            RingExpr::Product(x, y) => {
                let k = x.width(n);
                let mut v = x.transition(n, &a[..k]);
                v.extend(y.transition(n, &a[k..]));
                v
            }
            RingExpr::GroupRing(x, _) => a.chunks(x.width(n)).flat_map(|c| x.transition(n, c)).collect(),
            RingExpr::Witt { len, base } => {
                let coords: Vec<&[u64]> = a.chunks(base.width(n)).collect();
                let keep = match len {
                    Some(l) => *l,
                    None => n - 1,
                };
                coords[..keep].iter().flat_map(|c| base.transition(n, c)).collect()
            }
        }
    }
}

/// Prime used for `W_n(A)`: the prime whose power is the characteristic, else 2.
pub fn witt_prime(base: &FinRing) -> u64 {
    base.char_prime().unwrap_or(2)
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Z => write!(f, "Z"),
            RingExpr::Zn(n) => write!(f, "Z/{n}"),
            RingExpr::Gf { p, poly } => write!(f, "GF({p},{})", render_poly(poly)),
            RingExpr::Product(a, b) => {
                if matches!(**b, RingExpr::Product(..)) {
                    write!(f, "{a}x({b})")
                } else {
                    write!(f, "{a}x{b}")
                }
            }
            RingExpr::GroupRing(a, k) => {
                if matches!(**a, RingExpr::Product(..)) {
                    write!(f, "({a})[C{k}]")
                } else {
                    write!(f, "{a}[C{k}]")
                }
            }
            RingExpr::Witt { len: Some(l), base } => write!(f, "W{l}({base})"),
            RingExpr::Witt { len: None, base } => write!(f, "W({base})"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)?;
        if self.inv != InvName::Trivial {
            write!(f, " with {}", self.inv.as_str())?;
        }
        Ok(())
    }
}

impl RingSpec {
    pub fn parse(s: &str) -> Result<RingSpec> {
        let s = s.trim();
        let (ring, inv) = match s.rfind(" with ") {
            Some(i) => {
                let name = s[i + 6..].trim();
                let inv = match name {
                    "trivial" => InvName::Trivial,
                    "galois" => InvName::Galois,
                    "swap" => InvName::Swap,
                    "inv" => InvName::Inv,
                    _ => return Err(Error::Parse(format!("unknown involution '{name}'"))),
                };
                (&s[..i], inv)
            }
            None => (s, InvName::Trivial),
        };
        let mut p = Parser {
            s: ring.as_bytes(),
            i: 0,
        };
        let expr = p.product()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("unexpected input at '{}'", &ring[p.i..])));
        }
        Ok(RingSpec { expr, inv })
    }

    pub fn is_pro(&self) -> bool {
        self.expr.is_pro()
    }

    /// Validated ring with involution at level `n`.
    pub fn instantiate(&self, n: usize, ctx: &Ctx) -> Result<InvRing> {
        let ring = self.expr.instantiate(n, ctx)?;
        InvRing::new(ring, self.inv.involution(), ctx)
    }

    /// The finite ring; errors for pro-rings.
    pub fn finite(&self, ctx: &Ctx) -> Result<InvRing> {
        if self.is_pro() {
            return Err(Error::Invalid(format!(
                "{self} is a pro-ring, a finite ring is required"
            )));
        }
        self.instantiate(1, ctx)
    }
}

/// Parses and validates a finite ring spec such as `GF(2,x^2+x+1) with galois`.
pub fn parse_ring(spec: &str) -> Result<InvRing> {
    RingSpec::parse(spec)?.finite(&Ctx::default())
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{}' at position {}", c as char, self.i)))
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(Error::Parse(format!("expected an integer at position {start}")));
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse("integer too large".into()))
    }

    fn product(&mut self) -> Result<RingExpr> {
        let mut left = self.postfix()?;
        while self.eat(b'x') {
            let right = self.postfix()?;
            left = RingExpr::Product(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn postfix(&mut self) -> Result<RingExpr> {
        let mut e = self.primary()?;
        while self.peek() == Some(b'[') {
            self.i += 1;
            self.expect(b'C')?;
            let k = self.int()?;
            if k == 0 {
                return Err(Error::Parse("group order must be positive".into()));
            }
            self.expect(b']')?;
            e = RingExpr::GroupRing(Box::new(e), k);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<RingExpr> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.product()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'Z') => {
                self.i += 1;
                if self.s.get(self.i) == Some(&b'/') {
                    self.i += 1;
                    let n = self.int()?;
                    if n < 2 {
                        return Err(Error::Parse(format!("Z/{n} is not allowed")));
                    }
                    Ok(RingExpr::Zn(n))
                } else {
                    Ok(RingExpr::Z)
                }
            }
            Some(b'G') => {
                if !self.s[self.i..].starts_with(b"GF(") {
                    return Err(Error::Parse("expected GF(".into()));
                }
                self.i += 3;
                let p = self.int()?;
                if !is_prime(p) {
                    return Err(Error::Parse(format!("{p} is not prime")));
                }
                self.expect(b',')?;
                self.ws();
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i] != b')' {
                    self.i += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                self.expect(b')')?;
                let poly = parse_poly(text, p)?;
                let ring = FinRing::gf(p, &poly).map_err(|e| Error::Parse(e.to_string()))?;
                let poly = match ring {
                    FinRing::Poly(pr) => pr.modulus.clone(),
                    _ => unreachable!(),
                };
                Ok(RingExpr::Gf { p, poly })
            }
            Some(b'W') => {
                self.i += 1;
                let len = if self.s.get(self.i).is_some_and(|c| c.is_ascii_digit()) {
                    let l = self.int()?;
                    if l == 0 {
                        return Err(Error::Parse("Witt length must be positive".into()));
                    }
                    Some(l as usize)
                } else {
                    None
                };
                self.expect(b'(')?;
                let base = self.product()?;
                self.expect(b')')?;
                Ok(RingExpr::Witt {
                    len,
                    base: Box::new(base),
                })
            }
            Some(c) => Err(Error::Parse(format!(
                "unexpected '{}' at position {}",
                c as char, self.i
            ))),
            None => Err(Error::Parse("unexpected end of ring spec".into())),
        }
    }
}

/// Parses a polynomial in `x` over `F_p`, returning coefficients low degree first.
pub fn parse_poly(text: &str, p: u64) -> Result<Vec<u64>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let mut rest = t.as_str();
    let mut sign = 1i64;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in '{text}'")));
        }
        let (c, k) = parse_term(term)?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        let c = (c % p) as i64 * sign;
        coeffs[k] = (coeffs[k] as i64 + c).rem_euclid(p as i64) as u64;
        if end == rest.len() {
            break;
        }
        sign = if rest.as_bytes()[end] == b'-' { -1 } else { 1 };
        rest = &rest[end + 1..];
    }
    Ok(coeffs)
}

fn parse_term(term: &str) -> Result<(u64, usize)> {
    let bad = || Error::Parse(format!("bad polynomial term '{term}'"));
    let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
    let coef: u64 = if digits == 0 {
        1
    } else {
        term[..digits].parse().map_err(|_| bad())?
    };
    let mut rest = &term[digits..];
    if rest.is_empty() {
        return if digits == 0 { Err(bad()) } else { Ok((coef, 0)) };
    }
    if let Some(r) = rest.strip_prefix('*') {
        if digits == 0 {
            return Err(bad());
        }
        rest = r;
    }
    let rest = rest.strip_prefix('x').ok_or_else(bad)?;
    if rest.is_empty() {
        return Ok((coef, 1));
    }
    let e = rest.strip_prefix('^').ok_or_else(bad)?;
    let k: usize = e.parse().map_err(|_| bad())?;
    Ok((coef, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let r = parse_ring("Z/8").unwrap();
        assert_eq!(r.ring, FinRing::Zn(8));
        assert_eq!(r.w, Involution::Trivial);
        let f4 = parse_ring("GF(2,x^2+x+1)").unwrap();
        assert_eq!(f4.ring.order(), 4);
        let g = parse_ring("GF(2,x^2+x+1) with galois").unwrap();
        assert_eq!(g.w, Involution::Galois);
        assert!(parse_ring("GF(2,x^2+1)").is_err());
        assert!(parse_ring("GF(2,x^3+x+1) with galois").is_err());
        assert!(parse_ring("Z/2xZ/4 with swap").is_err());
        assert!(parse_ring("Z/4xZ/4 with swap").is_ok());
        assert!(parse_ring("Z/4[C2] with inv").is_ok());
        assert!(parse_ring("Z").is_err());
        assert!(RingSpec::parse("Z").unwrap().is_pro());
        assert!(RingSpec::parse("Z/4 with frob").is_err());
        assert!(RingSpec::parse("Q").is_err());
    }

    #[test]
    fn render_roundtrip() {
        for s in [
            "Z",
            "Z/8",
            "GF(2,x^2+x+1)",
            "GF(3,x^2+1) with galois",
            "Z/2xGF(2,x^2+x+1)",
            "Z/2x(Z/2xZ/2)",
            "(Z/2xZ/3)[C2]",
            "W3(GF(2,x^2+x+1))",
            "W(GF(2,x^2+x+1))",
            "Z/4[C2] with inv",
        ] {
            let spec = RingSpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(RingSpec::parse("Z/2 with trivial").unwrap().to_string(), "Z/2");
        assert_eq!(parse_poly("x^2 + 2x - 1", 3).unwrap(), vec![2, 2, 1]);
    }
}
