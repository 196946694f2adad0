use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::group::{render_invariants, FinAbGroup};
use super::hom::GroupHom;
use crate::error::{Error, Result};

/// Declared periodic pattern: `pattern[i]` holds in degrees `start + i + period·k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub period: i64,
    pub start: i64,
    pub pattern: Vec<Vec<u64>>,
    /// Where the claim comes from; computed groups never set this by inference.
    pub asserted_by: String,
}

/// Degree-indexed groups over the inclusive window `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct GradedGroups {
    pub window: (i64, i64),
    pub groups: BTreeMap<i64, FinAbGroup>,
    pub periodicity: Option<Periodicity>,
}

pub type GradedHom = BTreeMap<i64, GroupHom>;

impl GradedGroups {
    pub fn new(window: (i64, i64)) -> Self {
        let groups = (window.0..=window.1).map(|d| (d, FinAbGroup::trivial())).collect();
        GradedGroups {
            window,
            groups,
            periodicity: None,
        }
    }

    pub fn from_fn(window: (i64, i64), mut f: impl FnMut(i64) -> Result<FinAbGroup>) -> Result<Self> {
        let mut g = Self::new(window);
        for d in window.0..=window.1 {
            g.groups.insert(d, f(d)?);
        }
        Ok(g)
    }

    pub fn get(&self, d: i64) -> FinAbGroup {
        self.groups.get(&d).cloned().unwrap_or_default()
    }

    pub fn invariants(&self, d: i64) -> Vec<u64> {
        self.get(d).invariants()
    }

    pub fn set(&mut self, d: i64, g: FinAbGroup) {
        self.groups.insert(d, g);
    }

    /// Shift so that degree `d` moves to `d + k`.
    pub fn shift(&self, k: i64) -> GradedGroups {
        GradedGroups {
            window: (self.window.0 + k, self.window.1 + k),
            groups: self.groups.iter().map(|(d, g)| (d + k, g.clone())).collect(),
            periodicity: self.periodicity.clone().map(|mut p| {
                p.start += k;
                p
            }),
        }
    }

    /// Degreewise isomorphism on the common window.
    pub fn same_groups(&self, other: &GradedGroups) -> bool {
        self.window == other.window && (self.window.0..=self.window.1).all(|d| self.get(d).is_isomorphic(&other.get(d)))
    }

    /// Invariant factors keyed by degree as strings.
    pub fn to_json(&self) -> serde_json::Value {
        let m: serde_json::Map<String, serde_json::Value> = self
            .groups
            .iter()
            .map(|(d, g)| (d.to_string(), serde_json::json!(g.invariants())))
            .collect();
        serde_json::Value::Object(m)
    }

    pub fn render_lines(&self) -> Vec<String> {
        self.groups
            .iter()
            .map(|(d, g)| format!("π_{d} = {}", render_invariants(&g.invariants())))
            .collect()
    }
}

/// Per degree kernel and cokernel of `a - b`.
#[derive(Clone, Debug)]
pub struct DifferenceData {
    pub kernels: BTreeMap<i64, (FinAbGroup, GroupHom)>,
    pub cokernels: BTreeMap<i64, (FinAbGroup, GroupHom)>,
}

pub fn graded_kernel_of_difference(a: &GradedHom, b: &GradedHom) -> Result<DifferenceData> {
    if a.keys().ne(b.keys()) {
        return Err(Error::Invalid("graded maps have different degree sets".into()));
    }
    let mut kernels = BTreeMap::new();
    let mut cokernels = BTreeMap::new();
    for (d, f) in a {
        let diff = f
            .sub(&b[d])
            .map_err(|_| Error::Invalid(format!("maps in degree {d} are not parallel")))?;
        kernels.insert(*d, diff.kernel());
        cokernels.insert(*d, diff.cokernel());
    }
    Ok(DifferenceData { kernels, cokernels })
}
