use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::ringkit::is_prime;

/// Universal p-typical Witt structure polynomials up to a given length.
///
/// Sums and products use variables `a_i = v(2i)`, `b_i = v(2i+1)`; negation and
/// Frobenius use `a_i = v(i)`. `frobs[i]` is the i-th coordinate of `F: W_{n+1} → W_n`.
#[derive(Debug)]
pub struct WittPolySet {
    pub p: u64,
    pub n: usize,
    pub sums: Vec<Poly>,
    pub prods: Vec<Poly>,
    pub negs: Vec<Poly>,
    pub frobs: Vec<Poly>,
}

#[derive(Default)]
struct Family {
    sums: Vec<Poly>,
    sum_pows: Vec<Poly>,
    prods: Vec<Poly>,
    prod_pows: Vec<Poly>,
    negs: Vec<Poly>,
    neg_pows: Vec<Poly>,
    frobs: Vec<Poly>,
    frob_pows: Vec<Poly>,
}

struct Cache {
    families: HashMap<u64, Family>,
    sets: HashMap<(u64, usize), Arc<WittPolySet>>,
}

fn cache() -> &'static Mutex<Cache> {
    static CACHE: OnceLock<Mutex<Cache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(Cache {
            families: HashMap::new(),
            sets: HashMap::new(),
        })
    })
}

/// Ghost component `w_n = Σ_{j≤n} p^j x_j^{p^{n-j}}` with `x_j = v(var(j))`.
pub fn ghost_poly(p: u64, n: usize, var: impl Fn(usize) -> usize) -> Poly {
    let mut g = Poly::zero();
    for j in 0..=n {
        let c = BigInt::from(p).pow(j as u32);
        g = g.add(&Poly::var(var(j)).pow(p.pow((n - j) as u32)).scale(&c));
    }
    g
}

/// Solves `Σ_{j≤n} p^j X_j^{p^{n-j}} = target` for `X_n`, updating the power cache.
fn solve_step(p: u64, n: usize, target: Poly, pows: &mut Vec<Poly>) -> Result<Poly> {
    let mut num = target;
    for (j, pw) in pows.iter_mut().enumerate() {
        *pw = pw.pow(p);
        num = num.sub(&pw.scale(&BigInt::from(p).pow(j as u32)));
    }
    let d = BigInt::from(p).pow(n as u32);
    let x = num
        .div_exact(&d)
        .ok_or_else(|| Error::Internal(format!("Witt polynomial of index {n} for p={p} is not integral")))?;
    pows.push(x.clone());
    Ok(x)
}

impl Family {
    fn extend(&mut self, p: u64, n: usize) -> Result<()> {
        while self.sums.len() < n {
            let k = self.sums.len();
            let wa = ghost_poly(p, k, |j| 2 * j);
            let wb = ghost_poly(p, k, |j| 2 * j + 1);
            let s = solve_step(p, k, wa.add(&wb), &mut self.sum_pows)?;
            self.sums.push(s);
            let m = solve_step(p, k, wa.mul(&wb), &mut self.prod_pows)?;
            self.prods.push(m);
            let w = ghost_poly(p, k, |j| j);
            let ng = solve_step(p, k, w.scale(&BigInt::from(-1)), &mut self.neg_pows)?;
            self.negs.push(ng);
            let wf = ghost_poly(p, k + 1, |j| j);
            let f = solve_step(p, k, wf, &mut self.frob_pows)?;
            self.frobs.push(f);
        }
        Ok(())
    }
}

/// Memoized structure polynomials for `W_n(-;p)`.
pub fn build_polys(p: u64, n: usize) -> Result<Arc<WittPolySet>> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let mut guard = cache()
        .lock()
        .map_err(|_| Error::Internal("polynomial cache poisoned".into()))?;
    if let Some(s) = guard.sets.get(&(p, n)) {
        return Ok(s.clone());
    }
    let fam = guard.families.entry(p).or_default();
    fam.extend(p, n)?;
    let set = Arc::new(WittPolySet {
        p,
        n,
        sums: fam.sums[..n].to_vec(),
        prods: fam.prods[..n].to_vec(),
        negs: fam.negs[..n].to_vec(),
        frobs: fam.frobs[..n].to_vec(),
    });
    guard.sets.insert((p, n), set.clone());
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_two_p2() {
        let s = build_polys(2, 2).unwrap();
        // a0 = v0, b0 = v1, a1 = v2, b1 = v3
        let mut expect = Poly::var(2).add(&Poly::var(3));
        expect = expect.sub(&Poly::var(0).mul(&Poly::var(1)));
        assert_eq!(s.sums[1], expect);
        let p1 = Poly::var(0)
            .pow(2)
            .mul(&Poly::var(3))
            .add(&Poly::var(2).mul(&Poly::var(1).pow(2)))
            .add(&Poly::var(2).mul(&Poly::var(3)).scale(&BigInt::from(2)));
        assert_eq!(s.prods[1], p1);
        assert_eq!(s.sums[0], Poly::var(0).add(&Poly::var(1)));
        assert_eq!(s.prods[0], Poly::var(0).mul(&Poly::var(1)));
        // F(a0, a1) = a0^2 + 2 a1
        assert_eq!(
            s.frobs[0],
            Poly::var(0).pow(2).add(&Poly::var(1).scale(&BigInt::from(2)))
        );
    }
}
