//! Serializable run reports.

use serde::{Deserialize, Serialize};

use folty::{Certificate, GraphStats, QuerySpec, SolutionSet, VertexSolution};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryEcho {
    pub kind: String,
    pub delta_s: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tau1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tau2: Option<String>,
    pub universe: String,
    pub engine: String,
}

impl QueryEcho {
    pub fn new(spec: &QuerySpec, engine: &str) -> Self {
        let (tau, tau1, tau2) = match *spec {
            QuerySpec::Eea { tau, .. } | QuerySpec::Eae { tau, .. } => (Some(tau.to_string()), None, None),
            QuerySpec::Eaa { tau1, tau2, .. } => (None, Some(tau1.to_string()), Some(tau2.to_string())),
        };
        QueryEcho {
            kind: spec.kind().to_string(),
            delta_s: spec.delta(),
            tau,
            tau1,
            tau2,
            universe: spec.universe().to_string(),
            engine: engine.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub src: u64,
    pub dst: u64,
    pub t: i64,
    pub eid: u32,
    pub count: u32,
    pub universe_size: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRow {
    pub vertex: u64,
    pub satisfied_neighbors: u32,
    pub degree: u32,
}

impl From<&Certificate> for CertificateRow {
    fn from(c: &Certificate) -> Self {
        CertificateRow { src: c.src, dst: c.dst, t: c.t, eid: c.eid, count: c.count, universe_size: c.universe_size }
    }
}

impl From<&VertexSolution> for VertexRow {
    fn from(v: &VertexSolution) -> Self {
        VertexRow { vertex: v.vertex, satisfied_neighbors: v.satisfied_neighbors, degree: v.degree }
    }
}

/// Certificates sorted by `(t, eid)`, vertices ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "items", rename_all = "snake_case")]
pub enum SolutionsPayload {
    Certificates(Vec<CertificateRow>),
    Vertices(Vec<VertexRow>),
}

impl SolutionsPayload {
    pub fn len(&self) -> usize {
        match self {
            SolutionsPayload::Certificates(c) => c.len(),
            SolutionsPayload::Vertices(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<&SolutionSet> for SolutionsPayload {
    fn from(s: &SolutionSet) -> Self {
        match s {
            SolutionSet::Certificates(c) => SolutionsPayload::Certificates(c.iter().map(Into::into).collect()),
            SolutionSet::Vertices(v) => SolutionsPayload::Vertices(v.iter().map(Into::into).collect()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsReport {
    pub n: usize,
    pub m: usize,
    pub static_edges: usize,
    pub alpha: u32,
    pub sigma_max: usize,
    pub sum_edge_degree: u64,
    pub self_loops_dropped: usize,
}

impl From<GraphStats> for StatsReport {
    fn from(s: GraphStats) -> Self {
        StatsReport {
            n: s.n,
            m: s.m,
            static_edges: s.static_edges,
            alpha: s.alpha,
            sigma_max: s.sigma_max,
            sum_edge_degree: s.sum_edge_degree,
            self_loops_dropped: s.self_loops_dropped,
        }
    }
}

/// Wall-clock milliseconds per phase. The baseline and brute-force engines
/// report all counting under `out_pass`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub load: f64,
    pub orient: f64,
    pub out_pass: f64,
    pub in_pass: f64,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub query: Option<QueryEcho>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub num_solutions: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solutions: Option<SolutionsPayload>,
    pub stats: StatsReport,
    pub timings_ms: Timings,
}
