//! JSON run reports. Field order is fixed by the struct layout and floats
//! serialize through their shortest round-trip form, so identical inputs
//! produce byte-identical documents. `wall_time_ms` is omitted from file
//! output to keep written reports reproducible.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::criteria::SupReport;
use crate::loewner::ChainReport;
use crate::qcext::EvidenceReport;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CxJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for CxJson {
    fn from(z: Complex64) -> Self {
        CxJson { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridEcho {
    pub n_radii: usize,
    pub n_angles: usize,
    pub r_min: f64,
    pub r_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecEcho {
    pub f: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    pub alpha: CxJson,
    pub beta: CxJson,
    pub m: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    pub variant: String,
    pub first_center: String,
    pub grid: GridEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionReport {
    pub sup: f64,
    pub bound: f64,
    pub strict: bool,
    pub satisfied: bool,
    pub margin: f64,
    pub argmax: CxJson,
    pub samples: usize,
    pub refinement_rounds: usize,
}

impl From<&SupReport> for ConditionReport {
    fn from(r: &SupReport) -> Self {
        ConditionReport {
            sup: r.sup_estimate,
            bound: r.bound,
            strict: r.strict,
            satisfied: r.satisfied,
            margin: r.margin,
            argmax: r.argmax.into(),
            samples: r.samples,
            refinement_rounds: r.refinement_rounds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorstSample {
    pub z: CxJson,
    pub t: f64,
    pub w: CxJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSection {
    pub t_grid: Vec<f64>,
    pub sup_w_abs: f64,
    pub min_re_p: f64,
    pub samples: usize,
    pub pass: bool,
    pub worst: WorstSample,
}

impl ChainSection {
    pub fn from_report(r: &ChainReport, t_grid: Vec<f64>) -> Self {
        ChainSection {
            t_grid,
            sup_w_abs: r.sup_w_abs,
            min_re_p: r.min_re_p,
            samples: r.samples,
            pass: r.pass,
            worst: WorstSample {
                z: r.worst_z.into(),
                t: r.worst_t,
                w: r.worst_w.into(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSection {
    pub r_in: f64,
    pub r_out: f64,
    pub n_radii: usize,
    pub n_angles: usize,
    pub estimated_k: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_k: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceSection {
    pub min_abs_deriv: f64,
    pub min_deriv_at: CxJson,
    pub critical_ok: bool,
    pub circles: Vec<f64>,
    pub probes: usize,
    pub windings_checked: usize,
    pub winding_ok: bool,
    pub pass: bool,
}

impl From<&EvidenceReport> for EvidenceSection {
    fn from(r: &EvidenceReport) -> Self {
        EvidenceSection {
            min_abs_deriv: r.min_abs_deriv,
            min_deriv_at: r.min_deriv_at.into(),
            critical_ok: r.critical_ok,
            circles: r.circles.clone(),
            probes: r.probes,
            windings_checked: r.windings_checked,
            winding_ok: r.winding_ok,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub tool_version: String,
    pub command: String,
    pub spec: SpecEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition1: Option<ConditionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition2: Option<ConditionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overall: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<EvidenceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// Copy without timing, for file output that must be byte-stable.
    pub fn without_timing(&self) -> RunReport {
        RunReport {
            wall_time_ms: None,
            ..self.clone()
        }
    }
}

pub fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}
