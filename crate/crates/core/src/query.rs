//! Thresholded first-order queries evaluated from per-edge counts.
//!
//! * `EEA`: temporal edges `(u, v, t)` closing triangles with at least a
//!   `tau` fraction of the universe (`N(v)` or `N(u) ∩ N(v)`).
//! * `EAE`: vertices `u` where at least `tau |N(u)|` neighbors `v` receive
//!   an edge `u -> v` that closes any triangle.
//! * `EAA`: like `EAE`, but the edge must be an `EEA(tau2)` certificate.

use std::fmt;
use std::str::FromStr;

use crate::engine::{compute_counts, CountTable};
use crate::error::QueryError;
use crate::exec::Execution;
use crate::graph::{EdgeId, PreparedGraph, Timestamp};
use crate::practical::practical_counts;

/// An exact fraction in `(0, 1]`, stored in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Threshold {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Threshold {
    pub fn new(num: u64, den: u64) -> Result<Self, QueryError> {
        if den == 0 || num == 0 || num > den {
            return Err(QueryError::ThresholdOutOfRange(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Threshold { num: num / g, den: den / g })
    }

    pub const ONE: Threshold = Threshold { num: 1, den: 1 };

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// `count >= tau * size`, in exact integer arithmetic.
    pub fn admits(&self, count: u64, size: u64) -> bool {
        count as u128 * self.den as u128 >= self.num as u128 * size as u128
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn parse_uint(s: &str, whole: &str) -> Result<u64, QueryError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(QueryError::BadThreshold(whole.to_string()));
    }
    s.parse().map_err(|_| QueryError::BadThreshold(whole.to_string()))
}

// "12.5" -> 125/10
fn parse_decimal(s: &str, whole: &str) -> Result<(u64, u64), QueryError> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(QueryError::BadThreshold(whole.to_string()));
    }
    let digits = format!("{int}{frac}");
    let den = 10u64.checked_pow(frac.len() as u32).ok_or_else(|| QueryError::BadThreshold(whole.to_string()))?;
    Ok((parse_uint(&digits, whole)?, den))
}

impl FromStr for Threshold {
    type Err = QueryError;

    /// Accepts `0.25`, `25%`, `12.5%` and `1/4`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s = text.trim();
        let (num, den) = if let Some(pct) = s.strip_suffix('%') {
            let (n, d) = parse_decimal(pct.trim(), text)?;
            (n, d.checked_mul(100).ok_or_else(|| QueryError::BadThreshold(text.to_string()))?)
        } else if let Some((n, d)) = s.split_once('/') {
            (parse_uint(n.trim(), text)?, parse_uint(d.trim(), text)?)
        } else {
            parse_decimal(s, text)?
        };
        Threshold::new(num, den).map_err(|_| QueryError::ThresholdOutOfRange(text.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryKind {
    Eea,
    Eae,
    Eaa,
}

impl QueryKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            QueryKind::Eea => "eea",
            QueryKind::Eae => "eae",
            QueryKind::Eaa => "eaa",
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QueryKind {
    type Err = QueryError;

    /// Accepts `eea`/`eae`/`eaa` in any case, or the quantifier form
    /// `∃∃∀`, `∃∀∃`, `∃∀∀`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let norm: String = text
            .trim()
            .chars()
            .map(|c| match c {
                '∃' => 'e',
                '∀' => 'a',
                c => c.to_ascii_lowercase(),
            })
            .collect();
        match norm.as_str() {
            "eea" => Ok(QueryKind::Eea),
            "eae" => Ok(QueryKind::Eae),
            "eaa" => Ok(QueryKind::Eaa),
            q if q.starts_with('a') && q.len() == 3 && q.chars().all(|c| c == 'a' || c == 'e') => {
                Err(QueryError::LeadingUniversal(text.to_string()))
            }
            _ => Err(QueryError::UnknownKind(text.to_string())),
        }
    }
}

/// Set quantified over by the last `∀` of an EEA query.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Universe {
    /// `N(v)` for a certificate `u -> v`.
    #[default]
    Dst,
    /// `N(u) ∩ N(v)`.
    Common,
}

impl Universe {
    pub fn as_str(&self) -> &'static str {
        match self {
            Universe::Dst => "dst",
            Universe::Common => "common",
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Universe {
    type Err = QueryError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        match text.trim().to_ascii_lowercase().as_str() {
            "dst" => Ok(Universe::Dst),
            "common" => Ok(Universe::Common),
            _ => Err(QueryError::UnknownUniverse(text.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuerySpec {
    Eea { delta: Timestamp, tau: Threshold, universe: Universe },
    Eae { delta: Timestamp, tau: Threshold },
    Eaa { delta: Timestamp, tau1: Threshold, tau2: Threshold, universe: Universe },
}

impl QuerySpec {
    /// Assembles a spec from loosely typed parts, as the CLI receives them.
    pub fn from_parts(
        kind: QueryKind,
        delta: Timestamp,
        tau: Option<Threshold>,
        tau1: Option<Threshold>,
        tau2: Option<Threshold>,
        universe: Universe,
    ) -> Result<Self, QueryError> {
        let need = |t: Option<Threshold>, kind: &'static str, what: &'static str| {
            t.ok_or(QueryError::MissingThreshold { kind, what })
        };
        Ok(match kind {
            QueryKind::Eea => QuerySpec::Eea { delta, tau: need(tau, "eea", "--tau")?, universe },
            QueryKind::Eae => QuerySpec::Eae { delta, tau: need(tau, "eae", "--tau")? },
            QueryKind::Eaa => QuerySpec::Eaa {
                delta,
                tau1: need(tau1.or(tau), "eaa", "--tau1")?,
                tau2: need(tau2, "eaa", "--tau2")?,
                universe,
            },
        })
    }

    pub fn kind(&self) -> QueryKind {
        match self {
            QuerySpec::Eea { .. } => QueryKind::Eea,
            QuerySpec::Eae { .. } => QueryKind::Eae,
            QuerySpec::Eaa { .. } => QueryKind::Eaa,
        }
    }

    pub fn delta(&self) -> Timestamp {
        match *self {
            QuerySpec::Eea { delta, .. } | QuerySpec::Eae { delta, .. } | QuerySpec::Eaa { delta, .. } => delta,
        }
    }

    /// `tau` for EEA/EAE, `tau1` for EAA.
    pub fn outer_tau(&self) -> Threshold {
        match *self {
            QuerySpec::Eea { tau, .. } | QuerySpec::Eae { tau, .. } => tau,
            QuerySpec::Eaa { tau1, .. } => tau1,
        }
    }

    pub fn universe(&self) -> Universe {
        match *self {
            QuerySpec::Eea { universe, .. } | QuerySpec::Eaa { universe, .. } => universe,
            QuerySpec::Eae { .. } => Universe::Dst,
        }
    }

    pub fn with_delta(self, delta: Timestamp) -> Self {
        match self {
            QuerySpec::Eea { tau, universe, .. } => QuerySpec::Eea { delta, tau, universe },
            QuerySpec::Eae { tau, .. } => QuerySpec::Eae { delta, tau },
            QuerySpec::Eaa { tau1, tau2, universe, .. } => QuerySpec::Eaa { delta, tau1, tau2, universe },
        }
    }
}

/// A temporal edge witnessing an EEA solution. Vertices are input labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    pub src: u64,
    pub dst: u64,
    pub t: Timestamp,
    pub eid: EdgeId,
    pub count: u32,
    pub universe_size: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSolution {
    pub vertex: u64,
    pub satisfied_neighbors: u32,
    pub degree: u32,
}

/// Certificates come sorted by `(t, eid)`, vertices by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Certificates(Vec<Certificate>),
    Vertices(Vec<VertexSolution>),
}

impl SolutionSet {
    pub fn total(&self) -> usize {
        match self {
            SolutionSet::Certificates(c) => c.len(),
            SolutionSet::Vertices(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// Edge ids of the certificates, or vertex labels of the vertex
    /// solutions, as a plain sorted key list for set comparisons.
    pub fn keys(&self) -> Vec<u64> {
        match self {
            SolutionSet::Certificates(c) => c.iter().map(|c| c.eid as u64).collect(),
            SolutionSet::Vertices(v) => v.iter().map(|v| v.vertex).collect(),
        }
    }
}

fn certificates(g: &PreparedGraph, totals: &[u32], tau: Threshold, universe: Universe) -> Vec<Certificate> {
    let s = &g.static_graph;
    g.temporal
        .edges()
        .iter()
        .filter_map(|e| {
            let count = totals[e.eid as usize];
            if count == 0 {
                return None;
            }
            let universe_size = match universe {
                Universe::Dst => s.degree(e.dst),
                Universe::Common => s.common_counts()[s.edge_id(e.src, e.dst)?],
            };
            tau.admits(count as u64, universe_size as u64).then(|| Certificate {
                src: g.temporal.label(e.src),
                dst: g.temporal.label(e.dst),
                t: e.t,
                eid: e.eid,
                count,
                universe_size,
            })
        })
        .collect()
}

// Vertices u with at least `tau |N(u)|` neighbors v such that some edge
// u -> v passes `qualifies`.
fn vertex_solutions(g: &PreparedGraph, tau: Threshold, qualifies: impl Fn(EdgeId) -> bool) -> Vec<VertexSolution> {
    let (t, s) = (&g.temporal, &g.static_graph);
    // Bit 2p holds the low-to-high direction of pair p, bit 2p+1 the other.
    let mut hit = vec![false; 2 * t.num_pairs()];
    for e in t.edges() {
        if qualifies(e.eid) {
            if let Some(p) = t.pair_id(e.src, e.dst) {
                hit[2 * p + usize::from(e.src > e.dst)] = true;
            }
        }
    }
    (0..s.num_vertices() as u32)
        .filter_map(|u| {
            let satisfied = s
                .neighbors(u)
                .iter()
                .zip(s.neighbor_edges(u))
                .filter(|&(&v, &p)| hit[2 * p as usize + usize::from(u > v)])
                .count() as u32;
            let degree = s.degree(u);
            (satisfied > 0 && tau.admits(satisfied as u64, degree as u64)).then(|| VertexSolution {
                vertex: t.label(u),
                satisfied_neighbors: satisfied,
                degree,
            })
        })
        .collect()
}

pub fn eval_eea(g: &PreparedGraph, counts: &CountTable, tau: Threshold, universe: Universe) -> SolutionSet {
    SolutionSet::Certificates(certificates(g, &counts.totals(), tau, universe))
}

pub fn eval_eae(g: &PreparedGraph, counts: &CountTable, tau: Threshold) -> SolutionSet {
    let totals = counts.totals();
    SolutionSet::Vertices(vertex_solutions(g, tau, |e| totals[e as usize] > 0))
}

pub fn eval_eaa(
    g: &PreparedGraph,
    counts: &CountTable,
    tau1: Threshold,
    tau2: Threshold,
    universe: Universe,
) -> SolutionSet {
    let mut certified = vec![false; g.temporal.num_edges()];
    for c in certificates(g, &counts.totals(), tau2, universe) {
        certified[c.eid as usize] = true;
    }
    SolutionSet::Vertices(vertex_solutions(g, tau1, |e| certified[e as usize]))
}

/// Applies `spec` to counts already computed for `spec.delta()`.
pub fn evaluate(g: &PreparedGraph, counts: &CountTable, spec: &QuerySpec) -> SolutionSet {
    debug_assert_eq!(counts.delta, spec.delta(), "counts were computed for another window");
    match *spec {
        QuerySpec::Eea { tau, universe, .. } => eval_eea(g, counts, tau, universe),
        QuerySpec::Eae { tau, .. } => eval_eae(g, counts, tau),
        QuerySpec::Eaa { tau1, tau2, universe, .. } => eval_eaa(g, counts, tau1, tau2, universe),
    }
}

/// Counts and evaluates in one go with the orientation engine.
pub fn run_query(g: &PreparedGraph, spec: &QuerySpec, exec: &Execution) -> SolutionSet {
    evaluate(g, &compute_counts(g, spec.delta(), exec), spec)
}

/// The EEA query on the baseline engine.
pub fn practical_eea(
    g: &PreparedGraph,
    delta: Timestamp,
    tau: Threshold,
    universe: Universe,
    exec: &Execution,
) -> SolutionSet {
    let totals = practical_counts(&g.temporal, &g.static_graph, delta, exec);
    SolutionSet::Certificates(certificates(g, &totals, tau, universe))
}

/// Baseline-engine counts in the same shape as [`compute_counts`]; the whole
/// tally lands in `out_count`.
pub fn practical_table(g: &PreparedGraph, delta: Timestamp, exec: &Execution) -> CountTable {
    let out_count = practical_counts(&g.temporal, &g.static_graph, delta, exec);
    CountTable { in_count: vec![0; out_count.len()], out_count, delta }
}
