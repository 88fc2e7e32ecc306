//! JSON shapes of the library results. Field order is fixed, so the output
//! is byte-stable for fixed inputs.

use std::collections::BTreeMap;

use serde::Serialize;
use spread_core::closed_form::{Cell, ConjectureProbe};
use spread_core::gadgets::{Certified, GprimeCertificate, GstarCertificate};
use spread_core::tree::{ExtremalBound, Partition, PnpCertificate, PnpStep, PropertyPnpReport};
use spread_core::{Graph, Limit, SigmaResult, SpreadTrace, VertexSet};

use crate::edgelist;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum QJson {
    Finite(usize),
    Infinite(&'static str),
}

impl From<Limit> for QJson {
    fn from(q: Limit) -> Self {
        match q {
            Limit::Finite(q) => QJson::Finite(q),
            Limit::Infinite => QJson::Infinite("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceJson {
    pub initial: Vec<usize>,
    pub steps: Vec<[usize; 2]>,
    #[serde(rename = "final")]
    pub final_set: Vec<usize>,
}

impl From<&SpreadTrace> for TraceJson {
    fn from(t: &SpreadTrace) -> Self {
        TraceJson {
            initial: t.initial.to_vec(),
            steps: t.steps.iter().map(|s| [s.forcer, s.forced]).collect(),
            final_set: t.final_set.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceJson>,
}

impl From<&SigmaResult> for SigmaJson {
    fn from(r: &SigmaResult) -> Self {
        SigmaJson {
            value: r.value,
            status: r.status.as_str(),
            witness: r.witness.as_ref().map(VertexSet::to_vec),
            trace: r.trace.as_ref().map(TraceJson::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckJson {
    pub spreading: bool,
    pub size: usize,
    pub blue: usize,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence_valid: Option<bool>,
    pub trace: TraceJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetJson {
    pub status: &'static str,
    pub lower: usize,
    pub upper: usize,
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionJson {
    pub q: usize,
    pub size: usize,
    pub parts: Vec<Vec<usize>>,
}

impl PartitionJson {
    pub fn new(q: usize, partition: &Partition) -> Self {
        PartitionJson { q, size: partition.len(), parts: partition.parts.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeJson {
    pub n: usize,
    pub p: usize,
    pub q: QJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<ExtremalJson>,
    pub sigma: SigmaJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalJson {
    pub bound: usize,
    pub attained: bool,
    pub reason: String,
}

impl From<&ExtremalBound> for ExtremalJson {
    fn from(b: &ExtremalBound) -> Self {
        ExtremalJson { bound: b.bound, attained: b.attained, reason: b.reason.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PnpStepJson {
    pub vertex: usize,
    pub absorbed: Vec<usize>,
    pub forest_order: usize,
    pub forest_neighbors: usize,
    pub seed_edges: usize,
    pub components: usize,
    pub balance_holds: bool,
}

impl From<&PnpStep> for PnpStepJson {
    fn from(s: &PnpStep) -> Self {
        PnpStepJson {
            vertex: s.vertex,
            absorbed: s.absorbed.clone(),
            forest_order: s.forest_order,
            forest_neighbors: s.forest_neighbors,
            seed_edges: s.seed_edges,
            components: s.components,
            balance_holds: s.balance_holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PnpReportJson {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub n: usize,
    pub p: usize,
    pub target_size: usize,
    pub set: Vec<usize>,
    pub ordering: Vec<usize>,
    pub steps: Vec<PnpStepJson>,
    pub remainder: usize,
    pub excess: i64,
    pub set_edges: usize,
    pub required_set_edges: i64,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub condition_iii: bool,
    pub identity_holds: bool,
}

impl From<&PropertyPnpReport> for PnpReportJson {
    fn from(r: &PropertyPnpReport) -> Self {
        PnpReportJson {
            holds: r.holds,
            reason: r.reason.clone(),
            n: r.n,
            p: r.p,
            target_size: r.target_size,
            set: r.set.clone(),
            ordering: r.ordering.clone(),
            steps: r.steps.iter().map(PnpStepJson::from).collect(),
            remainder: r.remainder,
            excess: r.excess,
            set_edges: r.set_edges,
            required_set_edges: r.required_set_edges,
            condition_i: r.condition_i,
            condition_ii: r.condition_ii,
            condition_iii: r.condition_iii,
            identity_holds: r.identity_holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PnpSearchJson {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<PnpReportJson>,
}

impl From<Option<&PnpCertificate>> for PnpSearchJson {
    fn from(c: Option<&PnpCertificate>) -> Self {
        PnpSearchJson { found: c.is_some(), certificate: c.map(|c| PnpReportJson::from(&c.report)) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerimeterJson {
    pub m: usize,
    pub n: usize,
    pub cells: usize,
    pub perimeter: usize,
}

pub fn cells_json(cells: &[Cell]) -> Vec<[usize; 2]> {
    cells.iter().map(|&(c, r)| [c, r]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetJson {
    pub n: usize,
    pub edge_list: String,
    pub labels: BTreeMap<usize, String>,
}

impl From<&Graph> for GadgetJson {
    fn from(g: &Graph) -> Self {
        GadgetJson { n: g.order(), edge_list: edgelist::serialize(g), labels: g.labels().clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CertifiedJson {
    Value(usize),
    Bounds { lower: usize, upper: usize },
}

impl From<Certified> for CertifiedJson {
    fn from(c: Certified) -> Self {
        match c {
            Certified::Value(v) => CertifiedJson::Value(v),
            Certified::Bounds { lower, upper } => CertifiedJson::Bounds { lower, upper },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GstarJson {
    pub zg: CertifiedJson,
    pub fq_gstar: CertifiedJson,
    pub equal: Option<bool>,
    pub lift_valid: bool,
    pub lifts_checked: usize,
}

impl From<&GstarCertificate> for GstarJson {
    fn from(c: &GstarCertificate) -> Self {
        GstarJson {
            zg: c.zg.into(),
            fq_gstar: c.fq_gstar.into(),
            equal: c.equal,
            lift_valid: c.lift_valid,
            lifts_checked: c.lifts_checked,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GprimeJson {
    pub fq: CertifiedJson,
    pub sigma_gprime: CertifiedJson,
    pub offset: usize,
    pub equal: Option<bool>,
    pub lift_valid: bool,
    pub lifts_checked: usize,
}

impl From<&GprimeCertificate> for GprimeJson {
    fn from(c: &GprimeCertificate) -> Self {
        GprimeJson {
            fq: c.fq.into(),
            sigma_gprime: c.sigma_gprime.into(),
            offset: c.offset,
            equal: c.equal,
            lift_valid: c.lift_valid,
            lifts_checked: c.lifts_checked,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeJson {
    pub m: usize,
    pub n: usize,
    pub sigma_33: Option<usize>,
    pub sigma_34: Option<usize>,
    pub equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds_33: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds_34: Option<[usize; 2]>,
}

impl From<&ConjectureProbe> for ProbeJson {
    fn from(p: &ConjectureProbe) -> Self {
        ProbeJson {
            m: p.m,
            n: p.n,
            sigma_33: p.sigma_33,
            sigma_34: p.sigma_34,
            equal: p.equal,
            bounds_33: p.bounds_33.map(|(a, b)| [a, b]),
            bounds_34: p.bounds_34.map(|(a, b)| [a, b]),
        }
    }
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data always serializes")
}
