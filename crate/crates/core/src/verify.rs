//! Exhaustive desk-scale verification of the bound and structure theorems
//! over every labeled graph of a given order, with counterexample
//! certificates.
//!
//! The enumeration is labeled (no isomorphism reduction): each of the
//! 2^C(n,2) upper-triangle masks is visited exactly once, in increasing
//! order, and the mask range can be sharded arbitrarily — partial reports
//! merge associatively into the same aggregate.

use crate::bits::VertexSet;
use crate::families::{generate, FamilySpec};
use crate::formats::{cells, emit_graph6};
use crate::goodness::{is_good_definitional, is_good_structural};
use crate::graph::Graph;
use crate::random::splitmix64;
use crate::solver::{alpha1_exact, alpha_k_oracle_unguarded, validate_witness, ORACLE_MAX_ORDER};
use rayon::prelude::*;
use std::str::FromStr;
use thiserror::Error;

/// Default enumeration budget; 2^21 labeled graphs at n = 7.
pub const UNIVERSE_MAX_ORDER: usize = 7;
/// Hard ceiling with the override flag (2^28 graphs).
pub const UNIVERSE_MAX_ORDER_FORCED: usize = 8;
/// Isomorphism testing guard.
pub const ISO_MAX_ORDER: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(
        "order {n} exceeds the enumeration budget of {max} \
         (2^C(n,2) labeled graphs); n = 8 needs the explicit override"
    )]
    UniverseBudget { n: usize, max: usize },
    #[error("isomorphism test guard: order {n} exceeds {limit}")]
    IsoGuard { n: usize, limit: usize },
    #[error("{theorem} is stated for orders n >= {min}, got n = {n}")]
    OrderBelowTheorem {
        theorem: TheoremId,
        n: usize,
        min: usize,
    },
    #[error("unknown theorem id '{0}'; expected T1, T2, T3 or T4")]
    UnknownTheorem(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    All,
    Connected,
}

/// All labeled graphs of a fixed order, optionally restricted to connected
/// ones, enumerated by upper-triangle mask.
#[derive(Debug, Clone, Copy)]
pub struct GraphUniverse {
    n: usize,
    filter: Filter,
}

impl GraphUniverse {
    pub fn new(n: usize, filter: Filter, allow_order_8: bool) -> Result<Self, VerifyError> {
        let max = if allow_order_8 {
            UNIVERSE_MAX_ORDER_FORCED
        } else {
            UNIVERSE_MAX_ORDER
        };
        if n > max {
            return Err(VerifyError::UniverseBudget { n, max });
        }
        Ok(GraphUniverse { n, filter })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn total_masks(&self) -> u64 {
        1u64 << (self.n * self.n.saturating_sub(1) / 2)
    }

    /// Graphs for masks in `lo..hi` that pass the filter, ascending.
    pub fn iter_range(&self, lo: u64, hi: u64) -> impl Iterator<Item = (u64, Graph)> + '_ {
        let filter = self.filter;
        let n = self.n;
        (lo..hi.min(self.total_masks())).filter_map(move |mask| {
            let g = graph_from_mask(n, mask);
            match filter {
                Filter::All => Some((mask, g)),
                Filter::Connected if g.is_connected() => Some((mask, g)),
                Filter::Connected => None,
            }
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Graph)> + '_ {
        self.iter_range(0, self.total_masks())
    }
}

/// Labeled graph for an upper-triangle edge mask (graph6 cell order).
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut adj = vec![VertexSet::empty(n); n];
    for (cell, (i, j)) in cells(n).enumerate() {
        if mask >> cell & 1 == 1 {
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    Graph::from_adjacency_unchecked(adj)
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

/// Edge-preserving bijection test: iterated degree refinement narrows the
/// candidate classes, then backtracking settles it. Guarded at
/// [`ISO_MAX_ORDER`].
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool, VerifyError> {
    if g1.order() != g2.order() {
        return Ok(false);
    }
    let n = g1.order();
    if n > ISO_MAX_ORDER {
        return Err(VerifyError::IsoGuard {
            n,
            limit: ISO_MAX_ORDER,
        });
    }
    if g1.size() != g2.size() {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }

    let (c1, c2) = match refine_colors(g1, g2) {
        Some(colors) => colors,
        None => return Ok(false),
    };

    // Map the most constrained vertices first: rarest color class, then
    // highest degree.
    let mut order: Vec<usize> = (0..n).collect();
    let class_size = |c: usize| c1.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&v| (class_size(c1[v]), usize::MAX - g1.degree(v), v));

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(backtrack(
        g1,
        g2,
        &c1,
        &c2,
        &order,
        0,
        &mut mapping,
        &mut used,
    ))
}

/// Joint 1-dimensional refinement. Colors are comparable across the two
/// graphs; returns `None` as soon as the color multisets diverge.
fn refine_colors(g1: &Graph, g2: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g1.order();
    let mut c1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut c2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    for _ in 0..n {
        let sig = |g: &Graph, c: &[usize], v: usize| {
            let mut neigh: Vec<usize> = g.neighbors(v).iter().map(|u| c[u]).collect();
            neigh.sort_unstable();
            (c[v], neigh)
        };
        let s1: Vec<_> = (0..n).map(|v| sig(g1, &c1, v)).collect();
        let s2: Vec<_> = (0..n).map(|v| sig(g2, &c2, v)).collect();
        let mut all: Vec<_> = s1.iter().chain(s2.iter()).cloned().collect();
        all.sort();
        all.dedup();
        let rank = |s: &(usize, Vec<usize>)| all.binary_search(s).expect("present");
        let n1: Vec<usize> = s1.iter().map(rank).collect();
        let n2: Vec<usize> = s2.iter().map(rank).collect();
        let mut m1 = n1.clone();
        let mut m2 = n2.clone();
        m1.sort_unstable();
        m2.sort_unstable();
        if m1 != m2 {
            return None;
        }
        let stable = n1 == c1 && n2 == c2;
        c1 = n1;
        c2 = n2;
        if stable {
            break;
        }
    }
    Some((c1, c2))
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    g1: &Graph,
    g2: &Graph,
    c1: &[usize],
    c2: &[usize],
    order: &[usize],
    depth: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'cand: for w in 0..g2.order() {
        if used[w] || c2[w] != c1[v] {
            continue;
        }
        for &u in &order[..depth] {
            if g1.has_edge(v, u) != g2.has_edge(w, mapping[u]) {
                continue 'cand;
            }
        }
        mapping[v] = w;
        used[w] = true;
        if backtrack(g1, g2, c1, c2, order, depth + 1, mapping, used) {
            return true;
        }
        used[w] = false;
        mapping[v] = usize::MAX;
    }
    false
}

// ---------------------------------------------------------------------------
// Theorem reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    T1GeneralBounds,
    T2LowerConnectedGood,
    T3StructureH,
    T4UpperConnectedExtremal,
}

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::T1GeneralBounds => "T1_general_bounds",
            TheoremId::T2LowerConnectedGood => "T2_lower_connected_good",
            TheoremId::T3StructureH => "T3_structure_H",
            TheoremId::T4UpperConnectedExtremal => "T4_upper_connected_extremal",
        }
    }

    /// Smallest order the theorem statement covers.
    pub fn min_order(&self) -> usize {
        match self {
            TheoremId::T1GeneralBounds => 1,
            TheoremId::T2LowerConnectedGood => 2,
            TheoremId::T3StructureH => 1,
            TheoremId::T4UpperConnectedExtremal => 3,
        }
    }

    pub fn filter(&self) -> Filter {
        match self {
            TheoremId::T1GeneralBounds | TheoremId::T3StructureH => Filter::All,
            _ => Filter::Connected,
        }
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<TheoremId, VerifyError> {
        match s.to_ascii_lowercase().as_str() {
            "t1" | "t1_general_bounds" => Ok(TheoremId::T1GeneralBounds),
            "t2" | "t2_lower_connected_good" => Ok(TheoremId::T2LowerConnectedGood),
            "t3" | "t3_structure_h" => Ok(TheoremId::T3StructureH),
            "t4" | "t4_upper_connected_extremal" => Ok(TheoremId::T4UpperConnectedExtremal),
            _ => Err(VerifyError::UnknownTheorem(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub graph6: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub graphs_examined: u64,
    pub violations: Vec<Violation>,
}

impl TheoremReport {
    fn empty(theorem: TheoremId, n: usize) -> Self {
        TheoremReport {
            theorem,
            n,
            graphs_examined: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Associative merge of shard reports over the same theorem and order.
    pub fn merge(mut self, other: TheoremReport) -> TheoremReport {
        assert_eq!(self.theorem, other.theorem);
        assert_eq!(self.n, other.n);
        self.graphs_examined += other.graphs_examined;
        self.violations.extend(other.violations);
        self
    }

    pub fn to_report(&self) -> serde_json::Value {
        serde_json::json!({
            "theorem": self.theorem.as_str(),
            "n": self.n,
            "graphs_examined": self.graphs_examined,
            "pass": self.passed(),
            "violations": self
                .violations
                .iter()
                .map(|v| serde_json::json!({"graph6": v.graph6, "detail": v.detail}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Spot-check and reporting knobs for the theorem scans.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOpts {
    /// Fraction of graphs whose α₁ is re-computed with the brute-force
    /// oracle. Selection is a position-independent hash, so sharding does
    /// not change which graphs are sampled.
    pub spot_rate: f64,
    pub seed: u64,
    /// Permits the order-8 universe.
    pub allow_order_8: bool,
}

impl Default for VerifyOpts {
    fn default() -> Self {
        VerifyOpts {
            spot_rate: 0.01,
            seed: 0,
            allow_order_8: false,
        }
    }
}

fn spot_selected(sel: u64, opts: &VerifyOpts) -> bool {
    if opts.spot_rate <= 0.0 {
        return false;
    }
    if opts.spot_rate >= 1.0 {
        return true;
    }
    let threshold = (opts.spot_rate * 2f64.powi(64)) as u64;
    splitmix64(sel ^ opts.seed.wrapping_mul(0xa076_1d64_78bd_642f)) < threshold
}

/// α₁ with witness validation and (sampled) oracle agreement folded into the
/// violation list.
fn alpha1_checked(g: &Graph, sel: u64, opts: &VerifyOpts, problems: &mut Vec<String>) -> usize {
    let r = alpha1_exact(g);
    if r.witness.is_some() && !validate_witness(g, &r).unwrap_or(false) {
        problems.push(format!(
            "alpha1 witness fails validation (value {})",
            r.value
        ));
    }
    if g.order() <= ORACLE_MAX_ORDER && spot_selected(sel, opts) {
        let oracle = alpha_k_oracle_unguarded(g, 1);
        if oracle.value != r.value {
            problems.push(format!(
                "spot check mismatch: alpha1_exact={} oracle={}",
                r.value, oracle.value
            ));
        }
    }
    r.value
}

/// Violations of the stated theorem on one graph. Used for both the
/// enumerated universe and external corpora.
pub fn theorem_violations(
    theorem: TheoremId,
    g: &Graph,
    sel: u64,
    opts: &VerifyOpts,
) -> Result<Vec<String>, VerifyError> {
    let n = g.order();
    let mut problems = Vec::new();
    match theorem {
        TheoremId::T1GeneralBounds => {
            let a1 = alpha1_checked(g, sel, opts, &mut problems);
            if a1 > n {
                problems.push(format!("alpha1={a1} exceeds the order bound {n}"));
            }
            if (a1 == 0) != (g.size() == 0) {
                problems.push(format!(
                    "alpha1={a1} with m={}: alpha1=0 must hold exactly for edgeless graphs",
                    g.size()
                ));
            }
            if (a1 == n) != (g.size() == 1) {
                problems.push(format!(
                    "alpha1={a1} with m={}: alpha1=n must hold exactly for one-edge graphs",
                    g.size()
                ));
            }
        }
        TheoremId::T2LowerConnectedGood => {
            let a1 = alpha1_checked(g, sel, opts, &mut problems);
            if a1 < 2 {
                problems.push(format!("connected graph with alpha1={a1} below 2"));
            }
            let good = is_good_definitional(g).is_good;
            if (a1 == 2) != good {
                problems.push(format!("alpha1={a1} but is_good={good}"));
            }
        }
        TheoremId::T3StructureH => {
            let def = is_good_definitional(g).is_good;
            let st = is_good_structural(g).is_some();
            if def != st {
                problems.push(format!(
                    "definitional recognizer says {def}, structural says {st}"
                ));
            }
        }
        TheoremId::T4UpperConnectedExtremal => {
            let a1 = alpha1_checked(g, sel, opts, &mut problems);
            if a1 > n - 1 {
                problems.push(format!(
                    "connected graph with alpha1={a1} above n-1={}",
                    n - 1
                ));
            }
            let degs = g.degree_sequence();
            let mut extremal = false;
            for spec in [
                FamilySpec::Broom { n, k: 3 },
                FamilySpec::UnicyclicStar { n },
            ] {
                let target = generate(&spec).expect("n >= 3 validated by the caller");
                if target.degree_sequence() == degs && is_isomorphic(g, &target)? {
                    extremal = true;
                    break;
                }
            }
            if (a1 == n - 1) != extremal {
                problems.push(format!(
                    "alpha1={a1} (n-1={}) but extremal-isomorphism is {extremal}",
                    n - 1
                ));
            }
        }
    }
    Ok(problems)
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

const SHARD_BITS: u64 = 14;

/// Runs a theorem over one shard `lo..hi` of the mask range.
pub fn check_theorem_range(
    theorem: TheoremId,
    n: usize,
    lo: u64,
    hi: u64,
    opts: &VerifyOpts,
) -> Result<TheoremReport, VerifyError> {
    if n < theorem.min_order() {
        return Err(VerifyError::OrderBelowTheorem {
            theorem,
            n,
            min: theorem.min_order(),
        });
    }
    let universe = GraphUniverse::new(n, theorem.filter(), opts.allow_order_8)?;
    let mut report = TheoremReport::empty(theorem, n);
    for (mask, g) in universe.iter_range(lo, hi) {
        report.graphs_examined += 1;
        let problems =
            theorem_violations(theorem, &g, mask, opts).expect("universe orders satisfy guards");
        if !problems.is_empty() {
            let graph6 = emit_graph6(&g);
            report
                .violations
                .extend(problems.into_iter().map(|detail| Violation {
                    graph6: graph6.clone(),
                    detail,
                }));
        }
    }
    Ok(report)
}

/// Runs a theorem over the whole universe of order `n`, sharding across the
/// worker pool; shard reports merge in mask order, so the aggregate is
/// identical to a serial scan.
pub fn check_theorem(
    theorem: TheoremId,
    n: usize,
    opts: &VerifyOpts,
) -> Result<TheoremReport, VerifyError> {
    if n < theorem.min_order() {
        return Err(VerifyError::OrderBelowTheorem {
            theorem,
            n,
            min: theorem.min_order(),
        });
    }
    let universe = GraphUniverse::new(n, theorem.filter(), opts.allow_order_8)?;
    let total = universe.total_masks();
    let shard = 1u64 << SHARD_BITS;
    let starts: Vec<u64> = (0..total.div_ceil(shard)).map(|i| i * shard).collect();
    let partials: Result<Vec<TheoremReport>, VerifyError> = starts
        .par_iter()
        .map(|&lo| check_theorem_range(theorem, n, lo, (lo + shard).min(total), opts))
        .collect();
    Ok(partials?
        .into_iter()
        .fold(TheoremReport::empty(theorem, n), TheoremReport::merge))
}

pub fn check_t1(n: usize, opts: &VerifyOpts) -> Result<TheoremReport, VerifyError> {
    check_theorem(TheoremId::T1GeneralBounds, n, opts)
}

pub fn check_t2(n: usize, opts: &VerifyOpts) -> Result<TheoremReport, VerifyError> {
    check_theorem(TheoremId::T2LowerConnectedGood, n, opts)
}

pub fn check_t3(n: usize, opts: &VerifyOpts) -> Result<TheoremReport, VerifyError> {
    check_theorem(TheoremId::T3StructureH, n, opts)
}

pub fn check_t4(n: usize, opts: &VerifyOpts) -> Result<TheoremReport, VerifyError> {
    check_theorem(TheoremId::T4UpperConnectedExtremal, n, opts)
}

/// Runs a theorem over an external graph list instead of the enumerated
/// universe. Graphs below the theorem's minimum order or failing its
/// connectivity requirement are skipped, not examined.
pub fn check_corpus(
    theorem: TheoremId,
    graphs: &[Graph],
    opts: &VerifyOpts,
) -> Result<TheoremReport, VerifyError> {
    let mut report = TheoremReport::empty(theorem, 0);
    for (idx, g) in graphs.iter().enumerate() {
        if g.order() < theorem.min_order() {
            continue;
        }
        if theorem.filter() == Filter::Connected && !g.is_connected() {
            continue;
        }
        report.graphs_examined += 1;
        let problems = theorem_violations(theorem, g, idx as u64, opts)?;
        if !problems.is_empty() {
            let graph6 = emit_graph6(g);
            report
                .violations
                .extend(problems.into_iter().map(|detail| Violation {
                    graph6: graph6.clone(),
                    detail,
                }));
        }
    }
    Ok(report)
}
