//! JSON run configuration and the verifier dispatch shared by front ends.

use serde::{Deserialize, Serialize};

use crate::affine::{AffineWeylGroup, DEFAULT_CAP};
use crate::conjugacy::Twisted;
use crate::fixed::{map_i_and_verify, verify_fixed_subgroup, FixedSubgroup};
use crate::invariants::{
    straight_classes_in_window, verify_classification, verify_min_decomposition,
    verify_projection_bijection, verify_straight_connectivity,
};
use crate::report::VerificationReport;
use crate::root_data::{LatticeChoice, RootDatum};
use crate::twist::{GammaSubgroup, Twist};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSpec {
    pub diagram_perm: Vec<usize>,
    #[serde(default)]
    pub omega: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaSpec {
    pub generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Tsv,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub cartan_type: String,
    #[serde(default = "LatticeChoice::simply_connected")]
    pub lattice: LatticeChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaSpec>,
    #[serde(default = "default_bound")]
    pub length_bound: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_elements: Option<usize>,
}

fn default_bound() -> u32 {
    4
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn build(&self) -> Result<Setup> {
        let datum = RootDatum::build(&self.cartan_type, &self.lattice)?;
        let group = AffineWeylGroup::new(datum)?;
        let twist = match &self.twist {
            Some(t) => Twist::build(&group, &t.diagram_perm, &t.omega)?,
            None => Twist::identity(&group),
        };
        let gamma = match &self.gamma {
            Some(g) => Some(GammaSubgroup::generated(&group, &g.generators)?),
            None => None,
        };
        Ok(Setup {
            group,
            twist,
            gamma,
            bound: self.length_bound,
            cap: self.max_elements.unwrap_or(DEFAULT_CAP),
        })
    }
}

/// A configuration turned into group data.
#[derive(Debug, Clone)]
pub struct Setup {
    pub group: AffineWeylGroup,
    pub twist: Twist,
    /// Explicit subgroup of `Omega`, if the configuration named one.
    pub gamma: Option<GammaSubgroup>,
    pub bound: u32,
    pub cap: usize,
}

/// One straight class of the window, rendered for output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassRow {
    pub representative: String,
    pub kottwitz: Vec<i64>,
    /// Dominant Newton point in fundamental coweight coordinates, as `p/q`.
    pub newton: Vec<String>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassTable {
    pub cartan_type: String,
    pub bound: u32,
    pub gamma: String,
    pub coinvariant_factors: Vec<i64>,
    pub elements: usize,
    pub classes: Vec<ClassRow>,
}

impl ClassTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("representative\tkottwitz\tnewton\tsize\n");
        for r in &self.classes {
            let k: Vec<String> = r.kottwitz.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("{}\t[{}]\t({})\t{}\n", r.representative, k.join(","), r.newton.join(","), r.size));
        }
        out
    }
}

pub const THEOREM_IDS: [&str; 8] = ["gamma", "partial", "Gamma", "min1", "min2", "bij", "length-add", "inject"];

impl Setup {
    pub fn gamma_or_whole(&self) -> GammaSubgroup {
        self.gamma.clone().unwrap_or_else(|| GammaSubgroup::whole(&self.group))
    }

    pub fn straight_classes(&self, bound: u32) -> Result<(crate::conjugacy::ClassPartition, crate::invariants::CoinvariantGroup)> {
        let tw = Twisted::new(&self.group, &self.twist)?;
        straight_classes_in_window(&tw, bound, &self.gamma_or_whole(), self.cap)
    }

    pub fn class_table(&self, bound: u32) -> Result<ClassTable> {
        let (part, coinv) = self.straight_classes(bound)?;
        let g = &self.group;
        Ok(ClassTable {
            cartan_type: g.datum.cartan_type.to_string(),
            bound,
            gamma: self.gamma_or_whole().describe(),
            coinvariant_factors: coinv.factors().to_vec(),
            elements: part.elements_scanned,
            classes: part
                .records
                .iter()
                .map(|r| ClassRow {
                    representative: g.format_element(&r.representative),
                    kottwitz: r.invariant.kottwitz.clone(),
                    newton: r.invariant.newton.iter().map(|x| x.to_string()).collect(),
                    size: r.elements.len(),
                })
                .collect(),
        })
    }

    pub fn verify(&self, theorem: &str, bound: u32) -> Result<VerificationReport> {
        let (g, t, cap) = (&self.group, &self.twist, self.cap);
        match theorem {
            "gamma" => verify_classification(g, t, &GammaSubgroup::whole(g), bound, cap),
            "partial" => {
                let mut rep = verify_classification(g, t, &GammaSubgroup::trivial(g), bound, cap)?;
                let whole = verify_classification(g, t, &GammaSubgroup::whole(g), bound, cap)?;
                rep.detail("classes_for_whole_omega", whole.classes);
                for c in whole.counterexamples {
                    rep.fail(c);
                }
                Ok(rep.finish())
            }
            "Gamma" => {
                let mut rep = verify_classification(g, t, &self.gamma_or_whole(), bound, cap)?;
                rep.theorem = "Gamma".into();
                Ok(rep)
            }
            "min1" => verify_min_decomposition(g, t, bound, cap),
            "min2" => verify_straight_connectivity(g, t, bound, cap),
            "bij" => verify_projection_bijection(g, t, bound, cap),
            "length-add" => verify_fixed_subgroup(&FixedSubgroup::new(g, t)?, bound, cap),
            "inject" => {
                let fs = FixedSubgroup::new(g, t)?;
                let gamma = self.gamma.clone().unwrap_or_else(|| GammaSubgroup::trivial(g));
                map_i_and_verify(&fs, t, &gamma, bound, cap)
            }
            other => Err(Error::Config(format!(
                "unknown theorem id `{other}`; expected one of {}",
                THEOREM_IDS.join(", ")
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let text = r#"{"cartan_type": "A2", "lattice": "adjoint",
            "twist": {"diagram_perm": [1, 0], "omega": [2]},
            "gamma": {"generators": [[1]]}, "length_bound": 3}"#;
        let c = RunConfig::from_json(text).unwrap();
        assert_eq!(c.lattice, LatticeChoice::adjoint());
        let s = c.build().unwrap();
        assert_eq!(s.twist.order(), 2);
        assert_eq!(s.gamma.unwrap().elements().len(), 3);
    }

    #[test]
    fn explicit_basis_and_defaults() {
        let c = RunConfig::from_json(r#"{"cartan_type": "A1", "lattice": {"basis": [[1]]}}"#).unwrap();
        assert_eq!(c.length_bound, 4);
        assert_eq!(c.build().unwrap().group.omega_order(), 2);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(matches!(RunConfig::from_json(r#"{"cartan_type": "A1", "colour": 1}"#), Err(Error::Config(_))));
        let c = RunConfig::from_json(r#"{"cartan_type": "A1"}"#).unwrap();
        assert!(c.build().unwrap().verify("nope", 1).is_err());
    }
}
