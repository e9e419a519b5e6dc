//! Exact solvers for the nearly-independence numbers.
//!
//! Three routes:
//! - `alpha_k_oracle`: brute force over all `2^n` subsets, any edge budget k.
//! - `alpha0_exact`: branch-and-bound maximum independent set.
//! - `alpha1_exact`: reduction of the k = 1 case to independent-set
//!   subproblems, one per edge.
//!
//! All returned witnesses are checkable with [`validate_witness`].

use crate::bits::VertexSet;
use crate::graph::Graph;
use thiserror::Error;

/// Brute-force guard: `alpha_k_oracle` refuses larger orders unless forced.
pub const ORACLE_MAX_ORDER: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error(
        "order {n} exceeds the oracle guard of {limit} vertices (2^n subsets); \
         use the unguarded entry point to force it"
    )]
    OracleGuard { n: usize, limit: usize },
    #[error("result carries no witness to validate")]
    MissingWitness,
    #[error("witness contains vertex {bit}, out of range for order {n}")]
    WitnessOutOfRange { bit: usize, n: usize },
}

/// How a result was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Oracle,
    Recursive,
    BranchAndBound,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Recursive => "recursive",
            Method::BranchAndBound => "branch_and_bound",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Value of `α_k` together with an optional certifying set.
///
/// `witness` is absent exactly when no k-nearly set exists, in which case
/// `value` is 0. For k = 0 the empty set always qualifies, so a witness is
/// always present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaResult {
    /// Edge budget of the query.
    pub k: usize,
    /// Maximum cardinality of a vertex set inducing exactly `k` edges.
    pub value: usize,
    pub witness: Option<VertexSet>,
    pub method: Method,
}

impl AlphaResult {
    pub fn to_report(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "value": self.value,
            "witness": self.witness.as_ref().map(|w| w.to_sorted_vec()),
            "method": self.method.as_str(),
        })
    }
}

/// Checks that a witness certifies its claimed value: right cardinality and
/// exactly `k` induced edges.
pub fn validate_witness(g: &Graph, r: &AlphaResult) -> Result<bool, SolverError> {
    let w = r.witness.as_ref().ok_or(SolverError::MissingWitness)?;
    let mut set = VertexSet::empty(g.order());
    for bit in w.iter() {
        if bit >= g.order() {
            return Err(SolverError::WitnessOutOfRange { bit, n: g.order() });
        }
        set.insert(bit);
    }
    Ok(set.len() == r.value && g.induced_edge_count(&set) == r.k)
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

/// Exhaustive `α_k` over all subsets. Ties go to the numerically smallest
/// subset mask. Guarded at [`ORACLE_MAX_ORDER`].
pub fn alpha_k_oracle(g: &Graph, k: usize) -> Result<AlphaResult, SolverError> {
    if g.order() > ORACLE_MAX_ORDER {
        return Err(SolverError::OracleGuard {
            n: g.order(),
            limit: ORACLE_MAX_ORDER,
        });
    }
    Ok(alpha_k_oracle_unguarded(g, k))
}

/// The oracle without the order guard. Still limited to `n < 64` by the
/// subset-mask representation; runtime is `O(2^n · n)`.
pub fn alpha_k_oracle_unguarded(g: &Graph, k: usize) -> AlphaResult {
    let n = g.order();
    assert!(n < 64, "oracle subset masks require n < 64");
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).as_single_word().expect("n < 64"))
        .collect();

    let mut best: Option<(usize, u64)> = None;
    for mask in 0u64..(1u64 << n) {
        if induced_edges_mask(&adj, mask) == k {
            let size = mask.count_ones() as usize;
            if best.is_none_or(|(bs, _)| size > bs) {
                best = Some((size, mask));
            }
        }
    }
    match best {
        Some((size, mask)) => AlphaResult {
            k,
            value: size,
            witness: Some(VertexSet::from_indices(
                n,
                (0..n).filter(|&v| mask >> v & 1 == 1),
            )),
            method: Method::Oracle,
        },
        None => AlphaResult {
            k,
            value: 0,
            witness: None,
            method: Method::Oracle,
        },
    }
}

fn induced_edges_mask(adj: &[u64], mask: u64) -> usize {
    let mut t = mask;
    let mut twice = 0usize;
    while t != 0 {
        let v = t.trailing_zeros() as usize;
        t &= t - 1;
        twice += (adj[v] & mask).count_ones() as usize;
    }
    twice / 2
}

// ---------------------------------------------------------------------------
// Exact α₀ and α₁
// ---------------------------------------------------------------------------

/// Maximum independent set size, with witness, via branch and bound.
pub fn alpha0_exact(g: &Graph) -> AlphaResult {
    let (value, witness) = if g.order() <= 64 {
        alpha0_words::<u64>(g)
    } else {
        alpha0_words::<kernel::MultiWord>(g)
    };
    AlphaResult {
        k: 0,
        value,
        witness: Some(witness),
        method: Method::BranchAndBound,
    }
}

fn alpha0_words<W: kernel::WordSet>(g: &Graph) -> (usize, VertexSet) {
    let adj = kernel::adjacency::<W>(g);
    let alive = W::full(g.order());
    let (value, set) = kernel::max_independent(&adj, alive, None)
        .expect("unconstrained search always yields a set");
    (value, kernel::to_vertex_set(&set, g.order()))
}

/// Exact `α₁` by maximizing `2 + α₀(G − N[u] ∪ N[v])` over all edges `uv`
/// in lexicographic order; the first edge attaining the maximum supplies the
/// witness. An edgeless graph has `α₁ = 0` with no witness.
pub fn alpha1_exact(g: &Graph) -> AlphaResult {
    if g.size() == 0 {
        return AlphaResult {
            k: 1,
            value: 0,
            witness: None,
            method: Method::Recursive,
        };
    }
    let (value, witness) = if g.order() <= 64 {
        alpha1_words::<u64>(g)
    } else {
        alpha1_words::<kernel::MultiWord>(g)
    };
    AlphaResult {
        k: 1,
        value,
        witness: Some(witness),
        method: Method::Recursive,
    }
}

fn alpha1_words<W: kernel::WordSet>(g: &Graph) -> (usize, VertexSet) {
    let n = g.order();
    let adj = kernel::adjacency::<W>(g);
    let full = W::full(n);
    let mut best: Option<(usize, W)> = None;
    for (u, v) in g.edges() {
        let mut alive = full.clone();
        alive.and_not_assign(&adj[u]);
        alive.and_not_assign(&adj[v]);
        alive.remove(u);
        alive.remove(v);
        // Only subproblem values strictly above the floor can improve on the
        // incumbent, which also keeps the first maximizing edge as winner.
        let floor = best.as_ref().map(|(val, _)| val - 2);
        if let Some((a0, mut set)) = kernel::max_independent(&adj, alive, floor) {
            set.insert(u);
            set.insert(v);
            best = Some((a0 + 2, set));
        }
    }
    let (value, set) = best.expect("graph has an edge");
    (value, kernel::to_vertex_set(&set, n))
}

// ---------------------------------------------------------------------------
// Branch-and-bound kernel
// ---------------------------------------------------------------------------

pub(crate) mod kernel {
    use crate::bits::{words_for, VertexSet};
    use crate::graph::Graph;
    use smallvec::{smallvec, SmallVec};

    /// Storage for one row of adjacency or one candidate set. A `u64`
    /// covers orders up to 64 without touching memory; `MultiWord` covers
    /// the rest.
    pub(crate) trait WordSet: Clone {
        fn full(n: usize) -> Self;
        fn empty_like(&self) -> Self;
        fn insert(&mut self, bit: usize);
        fn remove(&mut self, bit: usize);
        fn or_assign(&mut self, other: &Self);
        fn and_assign(&mut self, other: &Self);
        fn and_not_assign(&mut self, other: &Self);
        fn count(&self) -> usize;
        fn is_zero(&self) -> bool;
        fn first_set(&self) -> Option<usize>;
        fn and_count(&self, other: &Self) -> usize;
        fn for_each(&self, f: impl FnMut(usize));
        fn from_row(row: &VertexSet) -> Self;
    }

    impl WordSet for u64 {
        fn full(n: usize) -> u64 {
            debug_assert!(n <= 64);
            if n == 64 {
                u64::MAX
            } else {
                (1u64 << n) - 1
            }
        }
        fn empty_like(&self) -> u64 {
            0
        }
        fn insert(&mut self, bit: usize) {
            *self |= 1u64 << bit;
        }
        fn remove(&mut self, bit: usize) {
            *self &= !(1u64 << bit);
        }
        fn or_assign(&mut self, other: &u64) {
            *self |= other;
        }
        fn and_assign(&mut self, other: &u64) {
            *self &= other;
        }
        fn and_not_assign(&mut self, other: &u64) {
            *self &= !other;
        }
        fn count(&self) -> usize {
            self.count_ones() as usize
        }
        fn is_zero(&self) -> bool {
            *self == 0
        }
        fn first_set(&self) -> Option<usize> {
            if *self == 0 {
                None
            } else {
                Some(self.trailing_zeros() as usize)
            }
        }
        fn and_count(&self, other: &u64) -> usize {
            (self & other).count_ones() as usize
        }
        fn for_each(&self, mut f: impl FnMut(usize)) {
            let mut t = *self;
            while t != 0 {
                f(t.trailing_zeros() as usize);
                t &= t - 1;
            }
        }
        fn from_row(row: &VertexSet) -> u64 {
            row.as_single_word().expect("row fits in one word")
        }
    }

    #[derive(Clone, PartialEq)]
    pub(crate) struct MultiWord(SmallVec<[u64; 2]>);

    impl WordSet for MultiWord {
        fn full(n: usize) -> MultiWord {
            let mut words: SmallVec<[u64; 2]> = smallvec![u64::MAX; words_for(n)];
            let used = n % 64;
            if used != 0 {
                if let Some(last) = words.last_mut() {
                    *last = (1u64 << used) - 1;
                }
            }
            MultiWord(words)
        }
        fn empty_like(&self) -> MultiWord {
            MultiWord(smallvec![0; self.0.len()])
        }
        fn insert(&mut self, bit: usize) {
            self.0[bit / 64] |= 1u64 << (bit % 64);
        }
        fn remove(&mut self, bit: usize) {
            self.0[bit / 64] &= !(1u64 << (bit % 64));
        }
        fn or_assign(&mut self, other: &MultiWord) {
            for (a, b) in self.0.iter_mut().zip(&other.0) {
                *a |= b;
            }
        }
        fn and_assign(&mut self, other: &MultiWord) {
            for (a, b) in self.0.iter_mut().zip(&other.0) {
                *a &= b;
            }
        }
        fn and_not_assign(&mut self, other: &MultiWord) {
            for (a, b) in self.0.iter_mut().zip(&other.0) {
                *a &= !b;
            }
        }
        fn count(&self) -> usize {
            self.0.iter().map(|w| w.count_ones() as usize).sum()
        }
        fn is_zero(&self) -> bool {
            self.0.iter().all(|&w| w == 0)
        }
        fn first_set(&self) -> Option<usize> {
            self.0
                .iter()
                .position(|&w| w != 0)
                .map(|i| i * 64 + self.0[i].trailing_zeros() as usize)
        }
        fn and_count(&self, other: &MultiWord) -> usize {
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum()
        }
        fn for_each(&self, mut f: impl FnMut(usize)) {
            for (i, &w) in self.0.iter().enumerate() {
                let mut t = w;
                while t != 0 {
                    f(i * 64 + t.trailing_zeros() as usize);
                    t &= t - 1;
                }
            }
        }
        fn from_row(row: &VertexSet) -> MultiWord {
            MultiWord(SmallVec::from_slice(row.words()))
        }
    }

    pub(crate) fn adjacency<W: WordSet>(g: &Graph) -> Vec<W> {
        (0..g.order())
            .map(|v| W::from_row(g.neighbors(v)))
            .collect()
    }

    pub(crate) fn to_vertex_set<W: WordSet>(set: &W, n: usize) -> VertexSet {
        let mut out = VertexSet::empty(n);
        set.for_each(|v| out.insert(v));
        out
    }

    /// Maximum independent set within `alive`, branch and bound.
    ///
    /// Returns a set strictly larger than `floor` if one exists, else `None`.
    /// With `floor = None` it always returns the maximum (possibly empty).
    pub(crate) fn max_independent<W: WordSet>(
        adj: &[W],
        alive: W,
        floor: Option<usize>,
    ) -> Option<(usize, W)> {
        let mut search = Search {
            adj,
            floor,
            best: None,
        };
        let chosen = alive.empty_like();
        search.run(alive, chosen, 0);
        search.best
    }

    struct Search<'a, W: WordSet> {
        adj: &'a [W],
        floor: Option<usize>,
        best: Option<(usize, W)>,
    }

    impl<W: WordSet> Search<'_, W> {
        /// Current cardinality to beat (strictly).
        fn threshold(&self) -> Option<usize> {
            match (&self.best, self.floor) {
                (Some((b, _)), Some(f)) => Some((*b).max(f)),
                (Some((b, _)), None) => Some(*b),
                (None, f) => f,
            }
        }

        fn run(&mut self, mut alive: W, mut chosen: W, mut chosen_count: usize) {
            // Isolated vertices within `alive` always belong to a maximum
            // set; taking them does not change the other degrees.
            let mut isolated = alive.empty_like();
            let mut branch: Option<(usize, usize)> = None;
            alive.for_each(|v| {
                let deg = self.adj[v].and_count(&alive);
                if deg == 0 {
                    isolated.insert(v);
                } else if branch.is_none_or(|(_, d)| deg > d) {
                    branch = Some((v, deg));
                }
            });
            if !isolated.is_zero() {
                chosen_count += isolated.count();
                chosen.or_assign(&isolated);
                alive.and_not_assign(&isolated);
            }

            let Some((v, _)) = branch else {
                // alive is exhausted; `chosen` is a maximal candidate.
                if self.threshold().is_none_or(|t| chosen_count > t) {
                    self.best = Some((chosen_count, chosen));
                }
                return;
            };

            let remaining = alive.count();
            let bound = chosen_count + remaining.min(clique_cover_bound(self.adj, &alive));
            if self.threshold().is_some_and(|t| bound <= t) {
                return;
            }

            // Exclude the max-degree vertex first: repeated exclusion is the
            // greedy heuristic and reaches good incumbents early.
            let mut excl = alive.clone();
            excl.remove(v);
            self.run(excl, chosen.clone(), chosen_count);

            let mut incl = alive;
            incl.and_not_assign(&self.adj[v]);
            incl.remove(v);
            chosen.insert(v);
            self.run(incl, chosen, chosen_count + 1);
        }
    }

    /// Greedy partition of `alive` into cliques; the number of cliques bounds
    /// the independence number from above.
    fn clique_cover_bound<W: WordSet>(adj: &[W], alive: &W) -> usize {
        let mut remaining = alive.clone();
        let mut cliques = 0;
        while let Some(v) = remaining.first_set() {
            cliques += 1;
            remaining.remove(v);
            let mut cand = adj[v].clone();
            cand.and_assign(&remaining);
            while let Some(u) = cand.first_set() {
                remaining.remove(u);
                cand.remove(u);
                cand.and_assign(&adj[u]);
            }
        }
        cliques
    }
}
