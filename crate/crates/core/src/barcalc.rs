//! Components of the two-sided bar construction `B(G^{Z/2}, G, G^{Z/2})` of a discrete group
//! with anti-involution, and the maps `ψ` and `τ` on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::abelian::FinAbGroup;
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ringkit::Chart;

/// Finite group by multiplication table; element `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Checks associativity, identity `0` and inverses.
    pub fn from_table(n: usize, mul: Vec<u32>, names: Vec<String>) -> Result<FiniteGroup> {
        if mul.len() != n * n || names.len() != n || n == 0 {
            return Err(Error::Invalid("malformed group table".into()));
        }
        for a in 0..n {
            if mul[a] as usize != a || mul[a * n] as usize != a {
                return Err(Error::Invalid("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mul[a * n + b] == 0)
                .ok_or_else(|| Error::Invalid(format!("element {a} has no inverse")))? as u32;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let l = mul[mul[a * n + b] as usize * n + c];
                    let r = mul[a * n + mul[b * n + c] as usize];
                    if l != r {
                        return Err(Error::Invalid("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { n, mul, inv, names })
    }

    /// `Z/n` written additively.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        FiniteGroup::from_table(n, mul, (0..n).map(|i| i.to_string()).collect())
    }

    /// Dihedral group of order `2n`, elements `r^i s^j` at index `i + n j`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n < 1 {
            return Err(Error::Invalid("dihedral group needs n ≥ 1".into()));
        }
        let idx = |i: usize, j: usize| (i % n + n * j) as u32;
        let mut mul = Vec::with_capacity(4 * n * n);
        for a in 0..2 * n {
            let (i, j) = (a % n, a / n);
            for b in 0..2 * n {
                let (k, l) = (b % n, b / n);
                // r^i s^j r^k s^l = r^{i ± k} s^{j + l}
                let e = if j == 0 { i + k } else { i + n - k };
                mul.push(idx(e, (j + l) % 2));
            }
        }
        let names = (0..2 * n)
            .map(|a| {
                let (i, j) = (a % n, a / n);
                let r = match i {
                    0 => String::new(),
                    1 => "r".into(),
                    _ => format!("r{i}"),
                };
                match (r.is_empty(), j) {
                    (true, 0) => "e".into(),
                    (_, 0) => r,
                    _ => format!("{r}s"),
                }
            })
            .collect();
        FiniteGroup::from_table(2 * n, mul, names)
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let n = a.n * b.n;
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x % a.n, x / a.n);
                let (y1, y2) = (y % a.n, y / a.n);
                mul.push(a.mul(x1, y1) as u32 + a.n as u32 * b.mul(x2, y2) as u32);
            }
        }
        let names = (0..n)
            .map(|x| format!("({},{})", a.names[x % a.n], b.names[x / a.n]))
            .collect();
        FiniteGroup::from_table(n, mul, names)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = [0].into_iter().collect();
        for g in 0..self.n {
            if span.contains(&g) {
                continue;
            }
            gens.push(g);
            let mut frontier: Vec<usize> = span.iter().copied().collect();
            while let Some(x) = frontier.pop() {
                for &h in &gens {
                    let y = self.mul(x, h);
                    if span.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }

    /// Isomorphism type of an abelian subgroup given by its elements.
    fn subgroup_invariants(&self, elems: &[usize], ctx: &Ctx) -> Result<Option<Vec<u64>>> {
        let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let commutative = elems
            .iter()
            .all(|&a| elems.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
        if !commutative {
            return Ok(None);
        }
        let chart = Chart::build(elems.len(), pos[&0], |a, b| pos[&self.mul(elems[a], elems[b])], ctx)?;
        Ok(Some(chart.group().invariants()))
    }
}

/// Which anti-involution a group spec carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupInv {
    Trivial,
    Inversion,
}

/// Finite group with anti-involution `w`, `w(gh) = w(h) w(g)`, `w² = 1`.
#[derive(Clone, Debug)]
pub struct MonoidWithAntiInv {
    pub group: FiniteGroup,
    pub w: Vec<usize>,
}

impl MonoidWithAntiInv {
    pub fn new(group: FiniteGroup, w: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if w.len() != n || w.iter().any(|&x| x >= n) {
            return Err(Error::Invalid("involution table has the wrong size".into()));
        }
        for a in 0..n {
            if w[w[a]] != a {
                return Err(Error::Invalid("w² ≠ 1".into()));
            }
            for b in 0..n {
                if w[group.mul(a, b)] != group.mul(w[b], w[a]) {
                    return Err(Error::Invalid(format!(
                        "w(gh) ≠ w(h)w(g) for g = {}, h = {}",
                        group.name(a),
                        group.name(b)
                    )));
                }
            }
        }
        Ok(MonoidWithAntiInv { group, w })
    }

    pub fn with(group: FiniteGroup, inv: GroupInv) -> Result<Self> {
        let w = match inv {
            GroupInv::Trivial => (0..group.order()).collect(),
            GroupInv::Inversion => (0..group.order()).map(|a| group.inv(a)).collect(),
        };
        Self::new(group, w)
    }

    pub fn fixed(&self) -> Vec<usize> {
        (0..self.group.order()).filter(|&a| self.w[a] == a).collect()
    }

    /// Right action `x·g = w(g) x g` on fixed points.
    pub fn right(&self, x: usize, g: usize) -> usize {
        let gr = &self.group;
        gr.mul(gr.mul(self.w[g], x), g)
    }

    /// Left action `g·y = g y w(g)` on fixed points.
    pub fn left(&self, g: usize, y: usize) -> usize {
        let gr = &self.group;
        gr.mul(gr.mul(g, y), self.w[g])
    }
}

/// Orbit representatives `[x, y]` with automorphism groups and the maps `ψ`, `τ`.
#[derive(Clone, Debug)]
pub struct ComponentDecomposition {
    pub reps: Vec<(usize, usize)>,
    /// Component of every pair of fixed elements.
    pub class_of: BTreeMap<(usize, usize), usize>,
    pub aut: Vec<Vec<usize>>,
    /// Invariant factors of `Aut` when abelian.
    pub aut_invariants: Vec<Option<Vec<u64>>>,
    pub psi: Vec<usize>,
    pub tau: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = a;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Orbits of `(x·g, y) ∼ (x, g·y)` by union-find over generators, stabilizers by enumeration.
pub fn components(m: &MonoidWithAntiInv, ctx: &Ctx) -> Result<ComponentDecomposition> {
    let fixed = m.fixed();
    let f = fixed.len();
    let n = m.group.order();
    ctx.check_size("pairs of fixed elements", (f * f) as u64)?;
    ctx.check_pairs("stabilizer enumeration", (f * f * n) as u64)?;
    let pos: BTreeMap<usize, usize> = fixed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let key = |x: usize, y: usize| pos[&x] * f + pos[&y];
    let mut uf = UnionFind((0..f * f).collect());
    let gens = m.group.generators();
    for &x in &fixed {
        ctx.checkpoint()?;
        for &y in &fixed {
            for &g in &gens {
                let xg = m.right(x, g);
                let gy = m.left(g, y);
                if !pos.contains_key(&xg) || !pos.contains_key(&gy) {
                    return Err(Error::Internal("actions leave the fixed points".into()));
                }
                uf.union(key(xg, y), key(x, gy));
            }
        }
    }
    let mut root_to_comp = BTreeMap::new();
    let mut reps = Vec::new();
    let mut class_of = BTreeMap::new();
    for &x in &fixed {
        for &y in &fixed {
            let r = uf.find(key(x, y));
            let c = *root_to_comp.entry(r).or_insert_with(|| {
                reps.push((x, y));
                reps.len() - 1
            });
            class_of.insert((x, y), c);
        }
    }
    let mut aut = Vec::new();
    let mut aut_invariants = Vec::new();
    for &(x, y) in &reps {
        let a: Vec<usize> = (0..n).filter(|&g| m.right(x, g) == x && m.left(g, y) == y).collect();
        aut_invariants.push(m.group.subgroup_invariants(&a, ctx)?);
        aut.push(a);
    }
    let mut psi = vec![usize::MAX; reps.len()];
    let mut tau = vec![usize::MAX; reps.len()];
    for (&(x, y), &c) in &class_of {
        let p = class_of[&(x, m.left(y, x))];
        let t = class_of[&(y, x)];
        for (table, v, what) in [(&mut psi, p, "ψ"), (&mut tau, t, "τ")] {
            if table[c] == usize::MAX {
                table[c] = v;
            } else if table[c] != v {
                return Err(Error::Internal(format!("{what} is not well defined on components")));
            }
        }
    }
    let d = ComponentDecomposition {
        reps,
        class_of,
        aut,
        aut_invariants,
        psi,
        tau,
    };
    d.check(m)?;
    Ok(d)
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `τ² = 1`, `ψ` induced by inclusions `Aut(x, y) ⊆ Aut(x, y·x)`, `τ` by `g ↦ w(g⁻¹)`.
    fn check(&self, m: &MonoidWithAntiInv) -> Result<()> {
        let gr = &m.group;
        for (c, &(x, y)) in self.reps.iter().enumerate() {
            if self.tau[self.tau[c]] != c {
                return Err(Error::Internal("τ² ≠ 1".into()));
            }
            let yx = m.left(y, x);
            for &g in &self.aut[c] {
                if m.right(x, g) != x || m.left(g, yx) != yx {
                    return Err(Error::Internal("ψ is not a subgroup inclusion on automorphisms".into()));
                }
                let h = m.w[gr.inv(g)];
                if m.right(y, h) != y || m.left(h, x) != x {
                    return Err(Error::Internal("τ does not map Aut(x,y) to Aut(y,x)".into()));
                }
            }
        }
        Ok(())
    }

    /// Components fixed by `τ` and the free `τ`-orbits as pairs.
    pub fn tau_orbits(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let fixed = (0..self.len()).filter(|&c| self.tau[c] == c).collect();
        let pairs = (0..self.len())
            .filter(|&c| self.tau[c] > c)
            .map(|c| (c, self.tau[c]))
            .collect();
        (fixed, pairs)
    }

    pub fn to_json(&self, m: &MonoidWithAntiInv) -> Value {
        let name = |c: usize| {
            let (x, y) = self.reps[c];
            format!("[{},{}]", m.group.name(x), m.group.name(y))
        };
        let comps: Vec<Value> = (0..self.len())
            .map(|c| {
                json!({
                    "label": name(c),
                    "aut_order": self.aut[c].len(),
                    "aut_invariants": self.aut_invariants[c],
                    "psi": name(self.psi[c]),
                    "tau": name(self.tau[c]),
                })
            })
            .collect();
        let (fixed, pairs) = self.tau_orbits();
        json!({
            "components": comps,
            "tau_fixed": fixed.into_iter().map(name).collect::<Vec<_>>(),
            "tau_free_pairs": pairs.into_iter().map(|(a, b)| [name(a), name(b)]).collect::<Vec<_>>(),
        })
    }
}

/// Cardinality of an index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Card {
    Finite(u64),
    CountablyInfinite,
}

impl Card {
    fn half(self) -> Card {
        match self {
            Card::Finite(n) => Card::Finite(n / 2),
            c => c,
        }
    }

    fn times(self, k: u64) -> Card {
        match self {
            Card::Finite(n) => Card::Finite(n * k),
            Card::CountablyInfinite if k == 0 => Card::Finite(0),
            c => c,
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Card::Finite(n) => json!(n),
            Card::CountablyInfinite => json!("countably infinite"),
        }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::Finite(n) => write!(f, "{n}"),
            Card::CountablyInfinite => write!(f, "countably infinite"),
        }
    }
}

/// Component labels `G × G/2` for an abelian group with trivial involution.
#[derive(Clone, Debug)]
pub struct AbelianLabels {
    pub group: FinAbGroup,
}

impl AbelianLabels {
    pub fn new(group: FinAbGroup) -> Self {
        AbelianLabels { group }
    }

    /// Class `[g]` in `G/2`, one bit per even or free factor.
    pub fn mod2(&self, g: &[BigInt]) -> Vec<u8> {
        self.group
            .orders()
            .iter()
            .zip(g)
            .filter(|(&d, _)| d % 2 == 0)
            .map(|(_, c)| c.mod_floor(&BigInt::from(2)).to_u8().unwrap_or(0))
            .collect()
    }

    fn add2(a: &[u8], b: &[u8]) -> Vec<u8> {
        a.iter().zip(b).map(|(x, y)| x ^ y).collect()
    }

    /// `[x, y] ↦ (x + y, [y])`.
    pub fn label(&self, x: &[BigInt], y: &[BigInt]) -> (Vec<BigInt>, Vec<u8>) {
        (self.group.add(x, y), self.mod2(y))
    }

    /// `ψ(s, z) = (2s, [s] + z)`.
    pub fn psi(&self, s: &[BigInt], z: &[u8]) -> (Vec<BigInt>, Vec<u8>) {
        (self.group.scale(&BigInt::from(2), s), Self::add2(&self.mod2(s), z))
    }

    /// `τ(s, z) = (s, [s] + z)`.
    pub fn tau(&self, s: &[BigInt], z: &[u8]) -> (Vec<BigInt>, Vec<u8>) {
        (s.to_vec(), Self::add2(&self.mod2(s), z))
    }

    /// `s ∈ 2G`.
    pub fn in_2g(&self, s: &[BigInt]) -> bool {
        self.mod2(s).iter().all(|&b| b == 0)
    }
}

/// Index set census for an abelian group with trivial involution.
#[derive(Clone, Debug)]
pub struct AbelianReport {
    pub invariants: Vec<u64>,
    /// `|G/2|`: summands `(G/2)_+ ⊗ (S ∨ RP^∞_{-1})`.
    pub type_one: Card,
    /// `((G∖2G) × G/2)/C₂`: summands of pullback type.
    pub type_two: Card,
    /// `|2G × G/2|`, the `τ`-fixed components.
    pub tau_fixed: Card,
    /// `|(2G∖4G) × G/2|`.
    pub two_g_minus_four_g: Card,
    pub two_torsion_free: bool,
}

impl AbelianReport {
    pub fn to_json(&self) -> Value {
        json!({
            "invariants": self.invariants,
            "type_one": self.type_one.to_json(),
            "type_two": self.type_two.to_json(),
            "tau_fixed": self.tau_fixed.to_json(),
            "two_g_minus_four_g": self.two_g_minus_four_g.to_json(),
            "two_torsion_free": self.two_torsion_free,
            "decomposition": "G×G/2 ≅ (2G×G/2) ⊔ (((G∖2G)×G/2)/C₂)×C₂",
        })
    }
}

/// Census of the decomposition `G × G/2 ≅ (2G × G/2) ⊔ (((G∖2G) × G/2)/C₂) × C₂`.
pub fn abelian_report(g: &FinAbGroup) -> Result<AbelianReport> {
    let inv = g.invariants();
    if let Some(&d) = inv.iter().find(|&&d| d != 0 && !d.is_power_of_two()) {
        return Err(Error::refused(
            "no element is infinitely divisible by 2",
            format!("the summand Z/{d} has elements of odd order"),
        ));
    }
    let even = inv.iter().filter(|&&d| d % 2 == 0).count() as u32;
    let g2 = 1u64 << even;
    let card = |n: Option<BigInt>| match n {
        Some(n) => Card::Finite(n.to_u64().expect("finite group order fits")),
        None => Card::CountablyInfinite,
    };
    let order = card(g.order());
    let two_g = card(g.order().map(|o| o / BigInt::from(g2)));
    // |4G| = |G| / |G/4|
    let g4: u64 = inv.iter().map(|&d| if d == 0 { 4 } else { d.min(4) }).product();
    let four_g = card(g.order().map(|o| o / BigInt::from(g4)));
    let diff = |a: Card, b: Card| match (a, b) {
        (Card::Finite(x), Card::Finite(y)) => Card::Finite(x - y),
        _ => Card::CountablyInfinite,
    };
    let not_2g = diff(order, two_g);
    Ok(AbelianReport {
        invariants: inv.clone(),
        type_one: Card::Finite(g2),
        type_two: not_2g.times(g2).half(),
        tau_fixed: two_g.times(g2),
        two_g_minus_four_g: diff(two_g, four_g).times(g2),
        two_torsion_free: inv.iter().all(|&d| d == 0),
    })
}

/// Parsed group spec: factors joined by `x`, optional ` with inv|trivial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub factors: Vec<GroupFactor>,
    pub inv: GroupInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupFactor {
    Z,
    Cyclic(u64),
    Dihedral(u64),
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let s = s.trim();
        let (body, inv) = match s.rfind(" with ") {
            Some(i) => {
                let inv = match s[i + 6..].trim() {
                    "inv" => GroupInv::Inversion,
                    "trivial" => GroupInv::Trivial,
                    other => return Err(Error::Parse(format!("unknown involution '{other}'"))),
                };
                (&s[..i], inv)
            }
            None => (s, GroupInv::Trivial),
        };
        let num = |t: &str, what: &str| -> Result<u64> {
            t.parse::<u64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Parse(format!("bad {what} '{t}'")))
        };
        let mut factors = Vec::new();
        for part in body.split('x') {
            let t = part.trim();
            let f = if t == "Z" {
                GroupFactor::Z
            } else if let Some(r) = t.strip_prefix("Z/") {
                GroupFactor::Cyclic(num(r, "order")?)
            } else if let Some(r) = t.strip_prefix('C') {
                GroupFactor::Cyclic(num(r, "order")?)
            } else if let Some(r) = t.strip_prefix('D') {
                GroupFactor::Dihedral(num(r, "dihedral index")?)
            } else if t == "S3" {
                GroupFactor::Dihedral(3)
            } else {
                return Err(Error::Parse(format!("unknown group '{t}'")));
            };
            factors.push(f);
        }
        Ok(GroupSpec { factors, inv })
    }

    pub fn is_finite(&self) -> bool {
        !self.factors.contains(&GroupFactor::Z)
    }

    pub fn is_abelian(&self) -> bool {
        self.factors
            .iter()
            .all(|f| !matches!(f, GroupFactor::Dihedral(n) if *n > 2))
    }

    /// The finite group with its anti-involution.
    pub fn finite(&self, ctx: &Ctx) -> Result<MonoidWithAntiInv> {
        if !self.is_finite() {
            return Err(Error::Invalid("group is infinite".into()));
        }
        let mut order = 1u64;
        for f in &self.factors {
            order = order.saturating_mul(match f {
                GroupFactor::Cyclic(n) => *n,
                GroupFactor::Dihedral(n) => 2 * n,
                GroupFactor::Z => unreachable!(),
            });
        }
        ctx.check_size("group", order.saturating_mul(order))?;
        let mut g: Option<FiniteGroup> = None;
        for f in &self.factors {
            let h = match f {
                GroupFactor::Cyclic(n) => FiniteGroup::cyclic(*n as usize)?,
                GroupFactor::Dihedral(n) => FiniteGroup::dihedral(*n as usize)?,
                GroupFactor::Z => unreachable!(),
            };
            g = Some(match g {
                None => h,
                Some(a) => FiniteGroup::product(&a, &h)?,
            });
        }
        MonoidWithAntiInv::with(g.expect("at least one factor"), self.inv)
    }

    /// Invariant factor form of an abelian spec.
    pub fn abelian(&self) -> Result<FinAbGroup> {
        if !self.is_abelian() {
            return Err(Error::Invalid("group is not abelian".into()));
        }
        let orders: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|f| match f {
                GroupFactor::Z => vec![0],
                GroupFactor::Cyclic(n) => vec![*n],
                GroupFactor::Dihedral(1) => vec![2],
                GroupFactor::Dihedral(_) => vec![2, 2],
            })
            .collect();
        Ok(FinAbGroup::from_orders(orders))
    }
}

/// Checks the abelian closed forms against the general formulas on representatives with
/// coordinates of absolute value at most `bound` in free factors.
pub fn check_abelian_closed_form(g: &FinAbGroup, bound: i64, ctx: &Ctx) -> Result<bool> {
    let lab = AbelianLabels::new(g.clone());
    let ranges: Vec<Vec<BigInt>> = g
        .orders()
        .iter()
        .map(|&d| {
            if d == 0 {
                (-bound..=bound).map(BigInt::from).collect()
            } else {
                (0..d as i64).map(BigInt::from).collect()
            }
        })
        .collect();
    let total: u64 = ranges.iter().map(|r| r.len() as u64).product();
    ctx.check_pairs("closed form check", total.saturating_mul(total))?;
    let mut elems: Vec<Vec<BigInt>> = vec![Vec::new()];
    for r in &ranges {
        elems = elems
            .into_iter()
            .flat_map(|e| {
                r.iter().map(move |c| {
                    let mut v = e.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    let two = BigInt::from(2);
    for x in &elems {
        ctx.checkpoint()?;
        for y in &elems {
            let l = lab.label(x, y);
            // invariance under (x + 2g, y) ∼ (x, y + 2g) for basis g
            for i in 0..g.ngens() {
                let tg = g.scale(&two, &g.basis_elem(i));
                if lab.label(&g.add(x, &tg), y) != lab.label(x, &g.add(y, &tg)) {
                    return Ok(false);
                }
            }
            // ψ[x, y] = [x, y·x] with y·x = 2y + x
            let yx = g.add(&g.scale(&two, y), x);
            if lab.label(x, &yx) != lab.psi(&l.0, &l.1) {
                return Ok(false);
            }
            if lab.label(y, x) != lab.tau(&l.0, &l.1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closed form and orbit enumeration agree for a finite abelian group with trivial involution:
/// `[x, y] ↦ (x + y, [y])` is a bijection onto `G × G/2` intertwining `ψ` and `τ`.
pub fn check_finite_abelian(g: &FinAbGroup, ctx: &Ctx) -> Result<bool> {
    if !g.is_finite() {
        return Err(Error::Invalid("group must be finite".into()));
    }
    let elems = g.elements()?;
    let index: BTreeMap<Vec<BigInt>, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elems.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            mul.push(index[&g.add(a, b)] as u32);
        }
    }
    let zero = index[&g.zero_elem()];
    if zero != 0 {
        return Err(Error::Internal("element enumeration does not start at zero".into()));
    }
    let names = elems.iter().map(|e| render_elem(e)).collect();
    let fg = FiniteGroup::from_table(n, mul, names)?;
    let m = MonoidWithAntiInv::with(fg, GroupInv::Trivial)?;
    let d = components(&m, ctx)?;
    let lab = AbelianLabels::new(g.clone());
    let label_of = |c: usize| {
        let (x, y) = d.reps[c];
        lab.label(&elems[x], &elems[y])
    };
    let labels: BTreeSet<_> = (0..d.len()).map(label_of).collect();
    let g2 = 1usize << g.orders().iter().filter(|&&o| o % 2 == 0).count();
    if labels.len() != d.len() || d.len() != n * g2 {
        return Ok(false);
    }
    for c in 0..d.len() {
        let (s, z) = label_of(c);
        if label_of(d.psi[c]) != lab.psi(&s, &z) || label_of(d.tau[c]) != lab.tau(&s, &z) {
            return Ok(false);
        }
        // τ fixes exactly the components with s ∈ 2G
        if (d.tau[c] == c) != lab.in_2g(&s) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn render_elem(e: &[BigInt]) -> String {
    if e.len() == 1 {
        e[0].to_string()
    } else {
        let parts: Vec<String> = e.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }
}
