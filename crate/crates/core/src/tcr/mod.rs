//! Executable forms of the geometric fixed point computations for TRR and TCR.

mod char2;
mod field;
mod green;
mod odd;
mod torsionfree;
mod tower;

pub use char2::{artin_schreier_hom, char2_field_closed_form, tcr_phi_char2_field, tcr_phi_perfect_algebra};
pub use field::PerfectRing;
pub use green::{ml_check, pi0_trr_green, GreenFunctorData, MlReport};
pub use odd::{tcr_odd_perfect_field, tcr_phi_odd, OddField, OddPhi};
pub use torsionfree::{tcr_phi_torsionfree, tcr_phi_z_oracle, TorsionFree};
pub use tower::{
    closed_f, closed_r, labels, lower_f, lower_r, oracle_matches, swap, trr_phi_limit, trr_phi_oracle, trr_phi_tower,
    OracleTower, TowerDegree, TowerLevel, TowerLimit,
};

use serde_json::{json, Value};

use crate::abelian::GradedGroups;

/// Graded answer together with its provenance, serialized with sorted keys.
#[derive(Clone, Debug)]
pub struct TcrReport {
    pub input: String,
    /// Identifier of the closed form being evaluated.
    pub theorem: String,
    pub groups: GradedGroups,
    /// An independent computation agreed on every degree of the window.
    pub oracle_checked: bool,
}

impl TcrReport {
    pub fn to_json(&self) -> Value {
        json!({
            "input": self.input,
            "theorem": self.theorem,
            "window": [self.groups.window.0, self.groups.window.1],
            "groups": self.groups.to_json(),
            "periodicity": self.groups.periodicity,
            "oracle_checked": self.oracle_checked,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{} [{}]\n", self.input, self.theorem);
        for line in self.groups.render_lines() {
            out.push_str("  ");
            out.push_str(&line);
            out.push('\n');
        }
        if let Some(p) = &self.groups.periodicity {
            out.push_str(&format!(
                "  period {} from degree {} ({})\n",
                p.period, p.start, p.asserted_by
            ));
        }
        out.push_str(&format!("  oracle checked: {}\n", self.oracle_checked));
        out
    }
}
