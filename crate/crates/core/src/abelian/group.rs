use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finitely generated abelian group presented as a direct sum of cyclic groups.
///
/// `orders[i]` is the order of the i-th generator, `0` meaning infinite cyclic.
/// Results of kernels, cokernels and charts come out in invariant factor form;
/// direct sums keep their summands. Use [`FinAbGroup::invariants`] for comparison.
#[derive(Clone, Debug, Default)]
pub struct FinAbGroup {
    orders: Vec<u64>,
    labels: Vec<String>,
}

/// JSON form `{"invariants":[...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub invariants: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(vec![n])
    }

    pub fn integers() -> Self {
        Self::cyclic(0)
    }

    /// `(Z/n)^rank`
    pub fn elementary(n: u64, rank: usize) -> Self {
        Self::from_orders(vec![n; rank])
    }

    /// Direct sum of cyclic groups of the given orders; factors of order 1 are dropped.
    pub fn from_orders(orders: Vec<u64>) -> Self {
        let orders: Vec<u64> = orders.into_iter().filter(|&d| d != 1).collect();
        let labels = (0..orders.len()).map(|i| format!("g{i}")).collect();
        FinAbGroup { orders, labels }
    }

    /// Checked constructor from an invariant factor list `d1 | d2 | ... `, zeros last.
    pub fn from_invariants(inv: &[u64]) -> Result<Self> {
        for w in inv.windows(2) {
            let ok = match (w[0], w[1]) {
                (_, 0) => true,
                (0, _) => false,
                (a, b) => b % a == 0,
            };
            if !ok {
                return Err(Error::Invalid(format!("{inv:?} is not a divisibility chain")));
            }
        }
        Ok(Self::from_orders(inv.to_vec()))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.orders.len());
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Orders of the presentation generators.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of presentation generators.
    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|&d| d != 0)
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|&&d| d == 0).count()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.orders.iter().map(|&d| BigInt::from(d)).product())
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }

    /// Canonical invariant factors `d1 | d2 | ... | dr` followed by zeros.
    pub fn invariants(&self) -> Vec<u64> {
        let mut fin: Vec<u64> = self.orders.iter().copied().filter(|&d| d > 1).collect();
        // (a, b) -> (gcd, lcm) until the list is a divisibility chain
        let n = fin.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (fin[i], fin[j]);
                let g = a.gcd(&b);
                fin[i] = g;
                fin[j] = a / g * b;
            }
        }
        fin.retain(|&d| d > 1);
        fin.extend(std::iter::repeat(0).take(self.free_rank()));
        fin
    }

    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self.invariants() == other.invariants()
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            invariants: self.invariants(),
        }
    }

    pub fn from_json(j: &GroupJson) -> Result<Self> {
        Self::from_invariants(&j.invariants)
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        FinAbGroup { orders, labels }
    }

    pub fn sum_of(groups: &[FinAbGroup]) -> FinAbGroup {
        groups.iter().fold(FinAbGroup::trivial(), |acc, g| acc.direct_sum(g))
    }

    pub fn zero_elem(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.orders.len()]
    }

    pub fn basis_elem(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero_elem();
        v[i] = BigInt::from(1);
        v
    }

    /// Reduces coordinates into `[0, d)` for finite factors.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.orders.len(), "element length mismatch");
        x.iter()
            .zip(&self.orders)
            .map(|(v, &d)| {
                if d == 0 {
                    v.clone()
                } else {
                    v.mod_floor(&BigInt::from(d))
                }
            })
            .collect()
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, c: &BigInt, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| a * c).collect();
        self.reduce(&s)
    }

    pub fn is_zero_elem(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    pub fn elem_eq(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.reduce(x) == self.reduce(y)
    }

    /// Additive order of an element, `None` for elements of infinite order.
    pub fn elem_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let mut acc = BigInt::from(1);
        for (v, &d) in self.reduce(x).iter().zip(&self.orders) {
            if v.is_zero() {
                continue;
            }
            if d == 0 {
                return None;
            }
            let d = BigInt::from(d);
            let o = &d / v.gcd(&d);
            acc = acc.lcm(&o);
        }
        Some(acc)
    }

    /// All elements of a finite group in mixed radix order.
    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>> {
        let n = self
            .order_u64()
            .ok_or_else(|| Error::Invalid("cannot enumerate an infinite group".into()))?;
        let mut out = Vec::with_capacity(n as usize);
        for mut idx in 0..n {
            let mut v = Vec::with_capacity(self.orders.len());
            for &d in &self.orders {
                v.push(BigInt::from(idx % d));
                idx /= d;
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Text rendering such as `Z/2⊕Z/4⊕Z`, `0` for the trivial group.
    pub fn render(&self) -> String {
        render_invariants(&self.invariants())
    }
}

pub fn render_invariants(inv: &[u64]) -> String {
    if inv.is_empty() {
        return "0".to_string();
    }
    inv.iter()
        .map(|&d| if d == 0 { "ℤ".to_string() } else { format!("ℤ/{d}") })
        .collect::<Vec<_>>()
        .join("⊕")
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_normalize() {
        let g = FinAbGroup::from_orders(vec![4, 0, 2, 3]);
        assert_eq!(g.invariants(), vec![2, 12, 0]);
        assert_eq!(FinAbGroup::from_orders(vec![1, 1]).invariants(), Vec::<u64>::new());
        assert!(FinAbGroup::from_invariants(&[4, 2]).is_err());
        assert!(FinAbGroup::from_invariants(&[2, 4, 0]).is_ok());
        assert_eq!(g.render(), "ℤ/2⊕ℤ/12⊕ℤ");
    }

    #[test]
    fn json_roundtrip() {
        let g = FinAbGroup::from_invariants(&[2, 4, 0]).unwrap();
        let s = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(s, r#"{"invariants":[2,4,0]}"#);
        let h: GroupJson = serde_json::from_str(&s).unwrap();
        assert!(FinAbGroup::from_json(&h).unwrap().is_isomorphic(&g));
    }
}
