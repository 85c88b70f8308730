//! Exhaustive and streamed audits of the lower bounds against exact
//! invariants.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bounds::{bound_gromov, evaluate, BoundId, BoundParams};
use crate::canon::canonical_form;
use crate::cycles::{girth, odd_girth, Length};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, to_graph6, Graph6Error};
use crate::invariants::chromatic::chromatic_number;
use crate::invariants::cover::{max_ball_size, triviality_radius};
use crate::invariants::essentiality::{essentiality, forest_essentiality};

/// Largest vertex count for exhaustive labeled enumeration.
pub const MAX_ENUMERATE: usize = 7;

/// A single audited claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Bound(BoundId),
    /// Essentiality equals `ceil(chi/2) - 1`.
    EssentialityId,
    /// Triviality radius equals `k - 1`.
    TrivRadius,
}

impl CheckId {
    pub fn all() -> Vec<CheckId> {
        let mut v: Vec<CheckId> = BoundId::ALL.into_iter().map(CheckId::Bound).collect();
        v.push(CheckId::EssentialityId);
        v.push(CheckId::TrivRadius);
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Bound(b) => b.name(),
            CheckId::EssentialityId => "ESSENTIALITY_ID",
            CheckId::TrivRadius => "TRIV_RADIUS",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown check id {0:?}")]
pub struct UnknownCheck(pub String);

impl FromStr for CheckId {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("ESSENTIALITY_ID") {
            return Ok(CheckId::EssentialityId);
        }
        if t.eq_ignore_ascii_case("TRIV_RADIUS") {
            return Ok(CheckId::TrivRadius);
        }
        t.parse::<BoundId>()
            .map(CheckId::Bound)
            .map_err(|_| UnknownCheck(s.to_string()))
    }
}

/// Parses a comma-separated list of check ids; an empty string is the empty set.
pub fn parse_check_list(s: &str) -> Result<BTreeSet<CheckId>, UnknownCheck> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub id: CheckId,
    /// Claimed lower bound (ceiling, saturated), or the expected value for
    /// identity checks.
    pub bound: u64,
    /// The compared quantity: vertex count, largest ball, or invariant.
    pub observed: u64,
    pub satisfied: bool,
    pub tight: bool,
    pub mandatory: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditRecord {
    pub graph6: String,
    pub n: usize,
    pub chi: usize,
    pub odd_girth: Length,
    pub girth: Length,
    pub k: Option<usize>,
    pub essentiality: usize,
    pub forest_essentiality: usize,
    pub checks: Vec<Check>,
}

impl AuditRecord {
    pub fn has_mandatory_violation(&self) -> bool {
        self.checks.iter().any(|c| c.mandatory && !c.satisfied)
    }

    pub fn has_report_only_violation(&self) -> bool {
        self.checks.iter().any(|c| !c.mandatory && !c.satisfied)
    }

    pub fn has_tight_check(&self) -> bool {
        self.checks.iter().any(|c| c.tight)
    }

    pub fn check(&self, id: CheckId) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Which checks run and how violations count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditConfig {
    pub mandatory: BTreeSet<CheckId>,
    pub report_only: BTreeSet<CheckId>,
    /// Cap on each listed record set in a report; counts are always exact.
    pub max_listed: usize,
}

impl AuditConfig {
    pub fn default_mandatory() -> BTreeSet<CheckId> {
        [
            CheckId::Bound(BoundId::Sys),
            CheckId::Bound(BoundId::Bb3),
            CheckId::Bound(BoundId::Mix3Recursive),
            CheckId::Bound(BoundId::BallA),
            CheckId::Bound(BoundId::BallB),
            CheckId::Bound(BoundId::Eq2),
            CheckId::EssentialityId,
            CheckId::TrivRadius,
        ]
        .into_iter()
        .collect()
    }

    pub fn default_report_only() -> BTreeSet<CheckId> {
        [
            BoundId::Bb1,
            BoundId::Bb2,
            BoundId::Mix1,
            BoundId::Mix2,
            BoundId::Mix3Printed,
            BoundId::Gromov,
        ]
        .into_iter()
        .map(CheckId::Bound)
        .collect()
    }

    pub fn new(mandatory: BTreeSet<CheckId>, report_only: BTreeSet<CheckId>) -> Self {
        let report_only = report_only.difference(&mandatory).copied().collect();
        Self {
            mandatory,
            report_only,
            max_listed: 1000,
        }
    }

    fn mode(&self, id: CheckId) -> Option<bool> {
        if self.mandatory.contains(&id) {
            Some(true)
        } else if self.report_only.contains(&id) {
            Some(false)
        } else {
            None
        }
    }
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self::new(Self::default_mandatory(), Self::default_report_only())
    }
}

fn comparison(id: CheckId, bound: u64, observed: u64, mandatory: bool) -> Check {
    Check {
        id,
        bound,
        observed,
        satisfied: bound <= observed,
        tight: bound == observed,
        mandatory,
    }
}

fn identity(id: CheckId, expected: u64, observed: u64, mandatory: bool) -> Check {
    Check {
        id,
        bound: expected,
        observed,
        satisfied: expected == observed,
        tight: false,
        mandatory,
    }
}

/// Exact invariants of `g` and every configured check. Bound checks apply to
/// non-bipartite graphs with `k = (odd girth - 1) / 2`; ball bounds compare
/// with the largest ball of the stated radius, the others with `|V|`.
pub fn audit_graph(g: &Graph, config: &AuditConfig) -> AuditRecord {
    let n = g.n();
    let chi = chromatic_number(g);
    let og = odd_girth(g);
    let gi = girth(g);
    let ess = essentiality(g).n;
    let fess = forest_essentiality(g).n;
    let k = og.finite().map(|l| (l - 1) / 2);
    let mut checks = Vec::new();

    if n >= 1 {
        if let Some(m) = config.mode(CheckId::EssentialityId) {
            checks.push(identity(CheckId::EssentialityId, (chi.div_ceil(2) - 1) as u64, ess as u64, m));
        }
    }

    if let Some(k) = k {
        let ball = |r: usize| max_ball_size(g, r).map_or(0, |(s, _)| s) as u64;
        let p = BoundParams::new(chi as u64, k as u64);
        for id in BoundId::ALL {
            let cid = CheckId::Bound(id);
            let Some(m) = config.mode(cid) else { continue };
            let value = match id {
                BoundId::Gromov => bound_gromov(fess as u64, gi),
                BoundId::BallA if k < 2 => continue,
                _ => evaluate(id, p),
            };
            let Ok(value) = value else { continue };
            let observed = match id {
                BoundId::BallA | BoundId::Eq2 => ball(k - 1),
                BoundId::BallB => ball(k),
                _ => n as u64,
            };
            checks.push(comparison(cid, value.ceil_u64(), observed, m));
        }
        if let Some(m) = config.mode(CheckId::TrivRadius) {
            let observed = match triviality_radius(g) {
                Length::Finite(r) => r as u64,
                Length::Infinite => u64::MAX,
            };
            checks.push(identity(CheckId::TrivRadius, (k - 1) as u64, observed, m));
        }
    }

    AuditRecord {
        graph6: to_graph6(g).expect("audited graphs are encodable"),
        n,
        chi,
        odd_girth: og,
        girth: gi,
        k,
        essentiality: ess,
        forest_essentiality: fess,
        checks,
    }
}

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("exhaustive enumeration supports at most {MAX_ENUMERATE} vertices, got {0}")]
    TooLarge(usize),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The labeled graph on `n` vertices whose edge set is `mask`, bit `b` being
/// the `b`-th vertex pair in graph6 order (`(0,1), (0,2), (1,2), (0,3), ...`).
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n).expect("small graph");
    let mut b = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> b & 1 == 1 {
                g.add_edge(i, j).expect("in range");
            }
            b += 1;
        }
    }
    g
}

/// Edge masks of one representative per isomorphism class (the first in mask
/// order), or of every labeled graph.
fn enumeration_masks(n: usize, dedup: bool) -> Result<Vec<u64>, AuditError> {
    if n > MAX_ENUMERATE {
        return Err(AuditError::TooLarge(n));
    }
    let total = 1u64 << pair_count(n);
    if !dedup {
        return Ok((0..total).collect());
    }
    let mut seen = HashSet::new();
    Ok((0..total)
        .filter(|&m| seen.insert(canonical_form(&graph_from_mask(n, m)).expect("n <= 7")))
        .collect())
}

/// Visits every labeled graph on `n` vertices, or one per isomorphism class
/// with `dedup`, and returns the number visited.
pub fn enumerate_labeled(n: usize, dedup: bool, mut visitor: impl FnMut(&Graph)) -> Result<u64, AuditError> {
    let masks = enumeration_masks(n, dedup)?;
    for &m in &masks {
        visitor(&graph_from_mask(n, m));
    }
    Ok(masks.len() as u64)
}

/// Counts for one check over a sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckTally {
    pub mandatory: bool,
    pub evaluated: u64,
    pub satisfied: u64,
    pub violated: u64,
    pub tight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConfigEcho {
    pub source: String,
    pub mandatory: BTreeSet<CheckId>,
    pub report_only: BTreeSet<CheckId>,
    pub max_listed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub total_graphs: u64,
    pub violation_count: u64,
    /// Records with an unsatisfied mandatory check, by graph6, capped.
    pub violations: Vec<AuditRecord>,
    pub report_only_count: u64,
    /// Records with an unsatisfied report-only check, by graph6, capped.
    pub report_only_findings: Vec<AuditRecord>,
    pub tight_count: u64,
    /// Records with a tight bound check, by graph6, capped.
    pub tight_instances: Vec<AuditRecord>,
    pub per_check: BTreeMap<String, CheckTally>,
    pub config: ConfigEcho,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// One row per check: `check,mandatory,evaluated,satisfied,violated,tight`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check", "mandatory", "evaluated", "satisfied", "violated", "tight"])
            .expect("in-memory write");
        for (id, t) in &self.per_check {
            w.write_record([
                id.clone(),
                t.mandatory.to_string(),
                t.evaluated.to_string(),
                t.satisfied.to_string(),
                t.violated.to_string(),
                t.tight.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Keeps the `cap` smallest records by graph6.
#[derive(Debug, Clone, Default)]
struct Capped {
    count: u64,
    items: BTreeMap<String, AuditRecord>,
}

impl Capped {
    fn push(&mut self, r: &AuditRecord, cap: usize) {
        self.count += 1;
        if self.items.len() < cap || self.items.last_key_value().is_some_and(|(k, _)| r.graph6 < *k) {
            self.items.insert(r.graph6.clone(), r.clone());
            while self.items.len() > cap {
                self.items.pop_last();
            }
        }
    }

    fn merge(mut self, other: Capped, cap: usize) -> Capped {
        self.count += other.count;
        self.items.extend(other.items);
        while self.items.len() > cap {
            self.items.pop_last();
        }
        self
    }
}

#[derive(Debug, Clone, Default)]
struct Acc {
    total: u64,
    violations: Capped,
    findings: Capped,
    tight: Capped,
    per_check: BTreeMap<CheckId, CheckTally>,
}

impl Acc {
    fn add(mut self, r: &AuditRecord, cap: usize) -> Acc {
        self.total += 1;
        if r.has_mandatory_violation() {
            self.violations.push(r, cap);
        }
        if r.has_report_only_violation() {
            self.findings.push(r, cap);
        }
        if r.has_tight_check() {
            self.tight.push(r, cap);
        }
        for c in &r.checks {
            let t = self.per_check.entry(c.id).or_default();
            t.mandatory = c.mandatory;
            t.evaluated += 1;
            t.satisfied += c.satisfied as u64;
            t.violated += !c.satisfied as u64;
            t.tight += c.tight as u64;
        }
        self
    }

    fn merge(mut self, other: Acc, cap: usize) -> Acc {
        self.total += other.total;
        self.violations = self.violations.merge(other.violations, cap);
        self.findings = self.findings.merge(other.findings, cap);
        self.tight = self.tight.merge(other.tight, cap);
        for (id, t) in other.per_check {
            let e = self.per_check.entry(id).or_default();
            e.mandatory = t.mandatory;
            e.evaluated += t.evaluated;
            e.satisfied += t.satisfied;
            e.violated += t.violated;
            e.tight += t.tight;
        }
        self
    }

    fn report(self, config: &AuditConfig, source: String) -> AuditReport {
        let mut per_check: BTreeMap<String, CheckTally> = BTreeMap::new();
        for id in config.mandatory.iter().chain(&config.report_only) {
            let mut t = self.per_check.get(id).cloned().unwrap_or_default();
            t.mandatory = config.mandatory.contains(id);
            per_check.insert(id.name().to_string(), t);
        }
        AuditReport {
            total_graphs: self.total,
            violation_count: self.violations.count,
            violations: self.violations.items.into_values().collect(),
            report_only_count: self.findings.count,
            report_only_findings: self.findings.items.into_values().collect(),
            tight_count: self.tight.count,
            tight_instances: self.tight.items.into_values().collect(),
            per_check,
            config: ConfigEcho {
                source,
                mandatory: config.mandatory.clone(),
                report_only: config.report_only.clone(),
                max_listed: config.max_listed,
            },
        }
    }
}

/// Graphs to audit.
#[derive(Debug, Clone)]
pub enum AuditSource {
    /// Every labeled graph (or one per class with `dedup`) for each vertex
    /// count in `min..=max`.
    Enumerate { min: usize, max: usize, dedup: bool },
    Graphs { label: String, graphs: Vec<Graph> },
}

impl AuditSource {
    /// Reads one graph6 string per line; blank lines are skipped.
    pub fn graph6_stream(label: &str, reader: impl BufRead) -> Result<Self, AuditError> {
        let mut graphs = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            graphs.push(parse_graph6(&line).map_err(|source| AuditError::Parse { line: i + 1, source })?);
        }
        Ok(AuditSource::Graphs {
            label: label.to_string(),
            graphs,
        })
    }

    fn describe(&self) -> String {
        match self {
            AuditSource::Enumerate { min, max, dedup } => {
                let kind = if *dedup { "unlabeled" } else { "labeled" };
                if min == max {
                    format!("enumerate {kind} n={min}")
                } else {
                    format!("enumerate {kind} n={min}..{max}")
                }
            }
            AuditSource::Graphs { label, graphs } => format!("{label} ({} graphs)", graphs.len()),
        }
    }
}

/// Audits every graph of `source` in parallel on the current rayon pool. The
/// report does not depend on scheduling.
pub fn audit_sweep(source: &AuditSource, config: &AuditConfig) -> Result<AuditReport, AuditError> {
    let cap = config.max_listed;
    let fold = |acc: Acc, g: &Graph| acc.add(&audit_graph(g, config), cap);
    let merge = |a: Acc, b: Acc| a.merge(b, cap);
    let acc = match source {
        AuditSource::Enumerate { min, max, dedup } => {
            let mut acc = Acc::default();
            for n in *min..=*max {
                let masks = enumeration_masks(n, *dedup)?;
                let part = masks
                    .par_iter()
                    .fold(Acc::default, |a, &m| fold(a, &graph_from_mask(n, m)))
                    .reduce(Acc::default, merge);
                acc = acc.merge(part, cap);
            }
            acc
        }
        AuditSource::Graphs { graphs, .. } => graphs
            .par_iter()
            .fold(Acc::default, |a, g| fold(a, g))
            .reduce(Acc::default, merge),
    };
    Ok(acc.report(config, source.describe()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, groetzsch, path};

    fn all_checks() -> AuditConfig {
        AuditConfig::new(CheckId::all().into_iter().collect(), BTreeSet::new())
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_labeled(3, false, |_| {}).unwrap(), 8);
        assert_eq!(enumerate_labeled(3, true, |_| {}).unwrap(), 4);
        assert_eq!(enumerate_labeled(4, false, |_| {}).unwrap(), 64);
        assert_eq!(enumerate_labeled(4, true, |_| {}).unwrap(), 11);
        assert_eq!(enumerate_labeled(0, false, |_| {}).unwrap(), 1);
        assert_eq!(enumerate_labeled(5, true, |_| {}).unwrap(), 34);
        assert!(matches!(enumerate_labeled(8, false, |_| {}), Err(AuditError::TooLarge(8))));
    }

    #[test]
    fn masks_follow_graph6_order() {
        let g = graph_from_mask(5, 0b1);
        assert!(g.has_edge(0, 1) && g.edge_count() == 1);
        let g = graph_from_mask(5, 0b100);
        assert!(g.has_edge(1, 2));
        let g = graph_from_mask(3, 0b111);
        assert_eq!(to_graph6(&g).unwrap(), "Bw");
    }

    #[test]
    fn five_cycle_record() {
        let r = audit_graph(&cycle(5), &all_checks());
        assert_eq!((r.n, r.chi, r.k, r.essentiality, r.forest_essentiality), (5, 3, Some(2), 1, 1));
        let get = |id| r.check(CheckId::Bound(id)).unwrap().clone();
        let sys = get(BoundId::Sys);
        assert_eq!((sys.bound, sys.satisfied, sys.tight), (4, true, false));
        let bb3 = get(BoundId::Bb3);
        assert_eq!((bb3.bound, bb3.satisfied, bb3.tight), (5, true, true));
        let rec = get(BoundId::Mix3Recursive);
        assert_eq!((rec.bound, rec.tight), (5, true));
        let printed = get(BoundId::Mix3Printed);
        assert_eq!((printed.bound, printed.satisfied), (9, false));
        let ball = get(BoundId::BallA);
        assert_eq!((ball.bound, ball.observed, ball.tight), (3, 3, true));
        let eq2 = get(BoundId::Eq2);
        assert_eq!((eq2.bound, eq2.observed, eq2.tight), (3, 3, true));
        assert!(r.check(CheckId::TrivRadius).unwrap().satisfied);
        assert!(r.check(CheckId::EssentialityId).unwrap().satisfied);
    }

    #[test]
    fn odd_cycles_are_tight_for_the_recursive_bound() {
        for k in 2..=6 {
            let r = audit_graph(&cycle(2 * k + 1), &AuditConfig::default());
            let c = r.check(CheckId::Bound(BoundId::Mix3Recursive)).unwrap();
            assert_eq!((c.bound, c.tight), (2 * k as u64 + 1, true));
        }
    }

    #[test]
    fn groetzsch_record() {
        let r = audit_graph(&groetzsch(), &all_checks());
        assert_eq!((r.chi, r.k), (4, Some(2)));
        let bb3 = r.check(CheckId::Bound(BoundId::Bb3)).unwrap();
        assert_eq!((bb3.bound, bb3.observed, bb3.satisfied), (9, 11, true));
        let ball = r.check(CheckId::Bound(BoundId::BallA)).unwrap();
        assert_eq!((ball.bound, ball.observed, ball.satisfied), (3, 6, true));
    }

    #[test]
    fn bipartite_record_has_only_identity_check() {
        let r = audit_graph(&path(4), &all_checks());
        assert_eq!(r.k, None);
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].id, CheckId::EssentialityId);
    }

    #[test]
    fn small_sweep_is_clean() {
        let src = AuditSource::Enumerate {
            min: 0,
            max: 5,
            dedup: false,
        };
        let report = audit_sweep(&src, &AuditConfig::default()).unwrap();
        assert_eq!(report.total_graphs, 1 + 1 + 2 + 8 + 64 + 1024);
        assert!(report.passed(), "{:?}", report.violations.first());
        assert!(report
            .report_only_findings
            .iter()
            .any(|r| r.n == 5 && r.check(CheckId::Bound(BoundId::Mix3Printed)).is_some_and(|c| !c.satisfied)));
    }

    #[test]
    fn empty_stream() {
        let src = AuditSource::graph6_stream("empty", std::io::Cursor::new("")).unwrap();
        let report = audit_sweep(&src, &AuditConfig::default()).unwrap();
        assert_eq!((report.total_graphs, report.violation_count), (0, 0));
        assert!(report.violations.is_empty());
    }

    #[test]
    fn stream_parse_errors_carry_line_numbers() {
        let err = AuditSource::graph6_stream("bad", std::io::Cursor::new("Dhc\n\n!!\n")).unwrap_err();
        assert!(matches!(err, AuditError::Parse { line: 3, .. }));
    }

    #[test]
    fn capped_lists_keep_the_smallest_keys() {
        let src = AuditSource::Enumerate {
            min: 5,
            max: 5,
            dedup: false,
        };
        let mut config = AuditConfig::default();
        config.max_listed = 3;
        let capped = audit_sweep(&src, &config).unwrap();
        config.max_listed = usize::MAX;
        let full = audit_sweep(&src, &config).unwrap();
        assert_eq!(capped.tight_count, full.tight_count);
        assert_eq!(capped.tight_instances[..], full.tight_instances[..3]);
    }

    #[test]
    fn check_lists() {
        let set = parse_check_list("SYS, bb3,ESSENTIALITY_ID").unwrap();
        assert_eq!(set.len(), 3);
        assert!(set.contains(&CheckId::EssentialityId));
        assert!(parse_check_list("").unwrap().is_empty());
        assert!(parse_check_list("SYS,NOPE").is_err());
    }
}
