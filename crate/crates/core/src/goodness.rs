//! Good-edge and good-graph recognizers, plus constructors for the family of
//! good graphs.
//!
//! An edge `uv` is good when `N[u] ∪ N[v]` covers every vertex; a good graph
//! is connected with every edge good (and `K1` counts). The family is closed
//! under joins and under joining with edgeless graphs, which yields a second,
//! structural recognizer: decompose by complement components and require each
//! factor to be edgeless or recursively good.

use crate::bits::VertexSet;
use crate::graph::{Graph, GraphError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Verdict of the definitional scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessReport {
    pub is_good: bool,
    pub connected: bool,
    /// Edges `uv` with `N[u] ∪ N[v] ≠ V`, in lexicographic order.
    pub bad_edges: Vec<(usize, usize)>,
}

impl GoodnessReport {
    pub fn to_report(&self) -> serde_json::Value {
        serde_json::json!({
            "is_good": self.is_good,
            "connected": self.connected,
            "bad_edges": self.bad_edges.iter().map(|&(u, v)| vec![u, v]).collect::<Vec<_>>(),
        })
    }
}

/// Join tree over original vertex indices. Rebuilding the leaves bottom-up
/// (joining the factors of every internal node) reproduces the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinDecomposition {
    K1 {
        vertex: usize,
    },
    Edgeless {
        vertices: Vec<usize>,
    },
    Join {
        vertices: Vec<usize>,
        factors: Vec<JoinDecomposition>,
    },
}

impl JoinDecomposition {
    pub fn to_report(&self) -> serde_json::Value {
        match self {
            JoinDecomposition::K1 { vertex } => {
                serde_json::json!({"kind": "k1", "vertex": vertex})
            }
            JoinDecomposition::Edgeless { vertices } => {
                serde_json::json!({"kind": "edgeless", "vertices": vertices})
            }
            JoinDecomposition::Join { vertices, factors } => serde_json::json!({
                "kind": "join",
                "vertices": vertices,
                "factors": factors.iter().map(|f| f.to_report()).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Whether `N[u] ∪ N[v]` covers the whole vertex set. `uv` must be an edge.
pub fn is_good_edge(g: &Graph, u: usize, v: usize) -> Result<bool, GraphError> {
    if u >= g.order() {
        return Err(GraphError::VertexOutOfRange {
            vertex: u,
            n: g.order(),
        });
    }
    if v >= g.order() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: g.order(),
        });
    }
    if !g.has_edge(u, v) {
        return Err(GraphError::NotAnEdge { u, v });
    }
    Ok(closed_union(g, u, v) == g.vertex_set())
}

fn closed_union(g: &Graph, u: usize, v: usize) -> VertexSet {
    let mut s = g.neighbors(u).clone();
    s.union_with(g.neighbors(v));
    s.insert(u);
    s.insert(v);
    s
}

/// Definitional recognizer: connected and every edge good.
pub fn is_good_definitional(g: &Graph) -> GoodnessReport {
    let connected = g.is_connected();
    let full = g.vertex_set();
    let bad_edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| closed_union(g, u, v) != full)
        .collect();
    GoodnessReport {
        is_good: connected && bad_edges.is_empty(),
        connected,
        bad_edges,
    }
}

/// Structural recognizer: `K1` is a member; otherwise the graph must split
/// as a join (complement disconnected) with every factor edgeless or
/// recursively a member. Returns the decomposition tree on membership.
pub fn is_good_structural(g: &Graph) -> Option<JoinDecomposition> {
    if g.order() == 0 {
        return None;
    }
    let orig: Vec<usize> = (0..g.order()).collect();
    structural_rec(g, &orig)
}

fn structural_rec(g: &Graph, orig: &[usize]) -> Option<JoinDecomposition> {
    if g.order() == 1 {
        return Some(JoinDecomposition::K1 { vertex: orig[0] });
    }
    let components = g.complement().connected_components();
    if components.len() <= 1 {
        return None;
    }
    let mut factors = Vec::with_capacity(components.len());
    for comp in components {
        let (sub, map) = g.induced_subgraph(&comp);
        let sub_orig: Vec<usize> = (0..sub.order()).map(|i| orig[map.new_to_old(i)]).collect();
        let node = if sub.order() == 1 {
            JoinDecomposition::K1 {
                vertex: sub_orig[0],
            }
        } else if sub.size() == 0 {
            JoinDecomposition::Edgeless { vertices: sub_orig }
        } else {
            structural_rec(&sub, &sub_orig)?
        };
        factors.push(node);
    }
    Some(JoinDecomposition::Join {
        vertices: orig.to_vec(),
        factors,
    })
}

// ---------------------------------------------------------------------------
// Recipes
// ---------------------------------------------------------------------------

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecipeError {
    #[error("recipe syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("recipe parameter must be at least 1")]
    ZeroParameter,
    #[error("edgeless({order}) alone is not a good graph; wrap it in a join")]
    EdgelessRoot { order: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Constructor expression for members of the good-graph family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    K1,
    Edgeless(usize),
    Bipartite(usize, usize),
    Join(Box<Recipe>, Box<Recipe>),
}

impl Recipe {
    /// Order of the graph the recipe builds.
    pub fn order(&self) -> usize {
        match self {
            Recipe::K1 => 1,
            Recipe::Edgeless(l) => *l,
            Recipe::Bipartite(r, s) => r + s,
            Recipe::Join(a, b) => a.order() + b.order(),
        }
    }

    /// Parses expressions like `join(bip(2,3),empty(2))`. Accepted leaves:
    /// `k1`, `empty(l)` / `edgeless(l)`, `bip(r,s)` / `bipartite(r,s)`.
    pub fn parse(text: &str) -> Result<Recipe, RecipeError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let recipe = parse_expr(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(RecipeError::Syntax {
                pos,
                message: "unexpected trailing input".into(),
            });
        }
        Ok(recipe)
    }
}

impl std::fmt::Display for Recipe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Recipe::K1 => write!(f, "k1"),
            Recipe::Edgeless(l) => write!(f, "empty({l})"),
            Recipe::Bipartite(r, s) => write!(f, "bip({r},{s})"),
            Recipe::Join(a, b) => write!(f, "join({a},{b})"),
        }
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_ident(bytes: &[u8], pos: &mut usize) -> String {
    let start = *pos;
    while *pos < bytes.len() && (bytes[*pos].is_ascii_alphanumeric() || bytes[*pos] == b'_') {
        *pos += 1;
    }
    String::from_utf8_lossy(&bytes[start..*pos]).to_ascii_lowercase()
}

fn expect(bytes: &[u8], pos: &mut usize, ch: u8) -> Result<(), RecipeError> {
    skip_ws(bytes, pos);
    if bytes.get(*pos) == Some(&ch) {
        *pos += 1;
        Ok(())
    } else {
        Err(RecipeError::Syntax {
            pos: *pos,
            message: format!("expected '{}'", ch as char),
        })
    }
}

fn parse_number(bytes: &[u8], pos: &mut usize) -> Result<usize, RecipeError> {
    skip_ws(bytes, pos);
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(RecipeError::Syntax {
            pos: *pos,
            message: "expected a number".into(),
        });
    }
    std::str::from_utf8(&bytes[start..*pos])
        .unwrap()
        .parse()
        .map_err(|_| RecipeError::Syntax {
            pos: start,
            message: "number out of range".into(),
        })
}

fn parse_expr(bytes: &[u8], pos: &mut usize) -> Result<Recipe, RecipeError> {
    skip_ws(bytes, pos);
    let at = *pos;
    let ident = parse_ident(bytes, pos);
    match ident.as_str() {
        "k1" => Ok(Recipe::K1),
        "empty" | "edgeless" => {
            expect(bytes, pos, b'(')?;
            let l = parse_number(bytes, pos)?;
            expect(bytes, pos, b')')?;
            Ok(Recipe::Edgeless(l))
        }
        "bip" | "bipartite" => {
            expect(bytes, pos, b'(')?;
            let r = parse_number(bytes, pos)?;
            expect(bytes, pos, b',')?;
            let s = parse_number(bytes, pos)?;
            expect(bytes, pos, b')')?;
            Ok(Recipe::Bipartite(r, s))
        }
        "join" => {
            expect(bytes, pos, b'(')?;
            let a = parse_expr(bytes, pos)?;
            expect(bytes, pos, b',')?;
            let b = parse_expr(bytes, pos)?;
            expect(bytes, pos, b')')?;
            Ok(Recipe::Join(Box::new(a), Box::new(b)))
        }
        _ => Err(RecipeError::Syntax {
            pos: at,
            message: format!("unknown recipe head '{ident}'"),
        }),
    }
}

/// Builds the graph a recipe denotes. The root may not be a bare
/// `edgeless(l)` with `l >= 2`, which is the one recipe shape that does not
/// produce a good graph.
pub fn build_h_member(recipe: &Recipe) -> Result<Graph, RecipeError> {
    if let Recipe::Edgeless(l) = recipe {
        if *l >= 2 {
            return Err(RecipeError::EdgelessRoot { order: *l });
        }
    }
    build_any(recipe)
}

fn build_any(recipe: &Recipe) -> Result<Graph, RecipeError> {
    match recipe {
        Recipe::K1 => Ok(Graph::complete(1)),
        Recipe::Edgeless(l) => {
            if *l == 0 {
                return Err(RecipeError::ZeroParameter);
            }
            Ok(Graph::edgeless(*l))
        }
        Recipe::Bipartite(r, s) => {
            if *r == 0 || *s == 0 {
                return Err(RecipeError::ZeroParameter);
            }
            Ok(Graph::edgeless(*r).join(&Graph::edgeless(*s))?)
        }
        Recipe::Join(a, b) => Ok(build_any(a)?.join(&build_any(b)?)?),
    }
}

/// Deterministic-for-seed random member of order at most `budget`.
pub fn sample_h_member(budget: usize, seed: u64) -> Graph {
    assert!(budget >= 1, "budget must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let recipe = random_recipe(&mut rng, budget);
    debug_assert!(recipe.order() <= budget);
    build_h_member(&recipe).expect("sampled recipes are well formed")
}

fn random_recipe(rng: &mut ChaCha8Rng, budget: usize) -> Recipe {
    if budget == 1 {
        return Recipe::K1;
    }
    match rng.random_range(0..10u32) {
        0 => Recipe::K1,
        1..=4 => {
            let r = rng.random_range(1..budget);
            let s = rng.random_range(1..=budget - r);
            Recipe::Bipartite(r, s)
        }
        5..=7 => {
            let l = rng.random_range(1..budget);
            let sub = random_recipe(rng, budget - l);
            Recipe::Join(Box::new(sub), Box::new(Recipe::Edgeless(l)))
        }
        _ => {
            let left = rng.random_range(1..budget);
            let a = random_recipe(rng, left);
            let b = random_recipe(rng, budget - left);
            Recipe::Join(Box::new(a), Box::new(b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::alpha1_exact;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    fn wheel(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((n - 2, 0));
        for v in 0..n - 1 {
            edges.push((v, n - 1));
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn graph_from_mask(n: usize, mask: u64) -> Graph {
        let mut edges = Vec::new();
        let mut cell = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> cell & 1 == 1 {
                    edges.push((i, j));
                }
                cell += 1;
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Rebuilds the graph a decomposition describes: factor edges plus all
    /// cross edges between sibling factors.
    fn rejoin(node: &JoinDecomposition, n: usize) -> Graph {
        fn collect(node: &JoinDecomposition, edges: &mut Vec<(usize, usize)>) -> Vec<usize> {
            match node {
                JoinDecomposition::K1 { vertex } => vec![*vertex],
                JoinDecomposition::Edgeless { vertices } => vertices.clone(),
                JoinDecomposition::Join { factors, .. } => {
                    let parts: Vec<Vec<usize>> =
                        factors.iter().map(|f| collect(f, edges)).collect();
                    for i in 0..parts.len() {
                        for j in i + 1..parts.len() {
                            for &u in &parts[i] {
                                for &v in &parts[j] {
                                    edges.push((u.min(v), u.max(v)));
                                }
                            }
                        }
                    }
                    parts.into_iter().flatten().collect()
                }
            }
        }
        let mut edges = Vec::new();
        collect(node, &mut edges);
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn good_edge_cases() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_good_edge(&star, 0, 1).unwrap());

        let p4 = path(4);
        assert!(!is_good_edge(&p4, 0, 1).unwrap());

        let c4 = cycle(4);
        assert!(is_good_edge(&c4, 0, 1).unwrap());

        assert!(matches!(
            is_good_edge(&p4, 0, 2),
            Err(GraphError::NotAnEdge { u: 0, v: 2 })
        ));
        assert!(matches!(
            is_good_edge(&p4, 0, 9),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn definitional_cases() {
        // K_{2,3}
        let k23 = Graph::edgeless(2).join(&Graph::edgeless(3)).unwrap();
        assert!(is_good_definitional(&k23).is_good);

        let c5 = cycle(5);
        let rep = is_good_definitional(&c5);
        assert!(!rep.is_good);
        assert!(rep.connected);
        assert_eq!(rep.bad_edges.len(), 5);

        let rep = is_good_definitional(&Graph::edgeless(3));
        assert!(!rep.is_good);
        assert!(!rep.connected);
        assert!(rep.bad_edges.is_empty());

        assert!(is_good_definitional(&Graph::complete(1)).is_good);
        assert!(!is_good_definitional(&Graph::edgeless(0)).is_good);
    }

    #[test]
    fn structural_cases() {
        let d = is_good_structural(&Graph::complete(4)).unwrap();
        match &d {
            JoinDecomposition::Join { factors, .. } => {
                assert_eq!(factors.len(), 4);
                assert!(factors
                    .iter()
                    .all(|f| matches!(f, JoinDecomposition::K1 { .. })));
            }
            other => panic!("expected join, got {other:?}"),
        }
        assert_eq!(rejoin(&d, 4), Graph::complete(4));

        let w5 = wheel(5);
        let d = is_good_structural(&w5).expect("W5 is good");
        assert_eq!(rejoin(&d, 5), w5);

        assert!(is_good_structural(&wheel(6)).is_none());
        assert!(is_good_structural(&Graph::complete(1)).is_some());
        assert!(is_good_structural(&Graph::edgeless(2)).is_none());
        assert!(is_good_structural(&Graph::edgeless(0)).is_none());
    }

    #[test]
    fn recognizers_agree_exhaustively_to_order_5() {
        for n in 1..=5usize {
            let cells = n * (n - 1) / 2;
            for mask in 0u64..(1u64 << cells) {
                let g = graph_from_mask(n, mask);
                let def = is_good_definitional(&g).is_good;
                let st = is_good_structural(&g).is_some();
                assert_eq!(def, st, "n={n} mask={mask}");
            }
        }
    }

    #[test]
    fn good_graphs_have_alpha1_two_and_nongood_connected_at_least_three() {
        for n in 2..=5usize {
            let cells = n * (n - 1) / 2;
            for mask in 0u64..(1u64 << cells) {
                let g = graph_from_mask(n, mask);
                if !g.is_connected() {
                    continue;
                }
                let a1 = alpha1_exact(&g).value;
                if is_good_definitional(&g).is_good {
                    assert_eq!(a1, 2, "n={n} mask={mask}");
                } else {
                    assert!(a1 >= 3, "n={n} mask={mask}");
                }
            }
        }
    }

    #[test]
    fn build_cases() {
        // K_{2,2} is a 4-cycle (under the labeling 0-2-1-3-0).
        let c4 = build_h_member(&Recipe::Bipartite(2, 2)).unwrap();
        assert_eq!((c4.order(), c4.size()), (4, 4));
        assert_eq!(c4.degree_sequence(), vec![2, 2, 2, 2]);
        assert!(c4.is_connected());

        let g = build_h_member(&Recipe::Join(
            Box::new(Recipe::Bipartite(1, 1)),
            Box::new(Recipe::Edgeless(3)),
        ))
        .unwrap();
        assert_eq!(g.order(), 5);
        assert!(is_good_definitional(&g).is_good);

        let k2 = build_h_member(&Recipe::Join(Box::new(Recipe::K1), Box::new(Recipe::K1))).unwrap();
        assert_eq!(k2, Graph::complete(2));

        assert_eq!(
            build_h_member(&Recipe::Edgeless(3)),
            Err(RecipeError::EdgelessRoot { order: 3 })
        );
        assert_eq!(
            build_h_member(&Recipe::Bipartite(0, 2)),
            Err(RecipeError::ZeroParameter)
        );
        assert!(build_h_member(&Recipe::Edgeless(1)).is_ok());
    }

    #[test]
    fn recipe_parsing() {
        let r = Recipe::parse("join(bip(2,3),empty(2))").unwrap();
        assert_eq!(
            r,
            Recipe::Join(
                Box::new(Recipe::Bipartite(2, 3)),
                Box::new(Recipe::Edgeless(2))
            )
        );
        assert_eq!(r.order(), 7);
        assert_eq!(Recipe::parse(&r.to_string()).unwrap(), r);

        assert_eq!(Recipe::parse(" k1 ").unwrap(), Recipe::K1);
        assert_eq!(
            Recipe::parse("join( K1 , bipartite(1, 4) )")
                .unwrap()
                .order(),
            6
        );
        assert!(matches!(
            Recipe::parse("join(k1)"),
            Err(RecipeError::Syntax { .. })
        ));
        assert!(matches!(
            Recipe::parse("ring(4)"),
            Err(RecipeError::Syntax { .. })
        ));
        assert!(matches!(
            Recipe::parse("k1 extra"),
            Err(RecipeError::Syntax { .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_good() {
        assert_eq!(sample_h_member(1, 7), Graph::complete(1));
        assert_eq!(sample_h_member(5, 1), sample_h_member(5, 1));
        for seed in 0..50u64 {
            for budget in [1, 2, 3, 6, 10] {
                let g = sample_h_member(budget, seed);
                assert!(g.order() >= 1 && g.order() <= budget);
                assert!(
                    is_good_definitional(&g).is_good,
                    "budget={budget} seed={seed}"
                );
            }
        }
    }

    #[test]
    fn join_closure_and_edgeless_extension() {
        for seed in 0..20u64 {
            let a = sample_h_member(6, seed);
            let b = sample_h_member(6, seed + 1000);
            let joined = a.join(&b).unwrap();
            assert!(is_good_definitional(&joined).is_good, "seed={seed}");
            for l in 1..=5usize {
                let ext = a.join(&Graph::edgeless(l)).unwrap();
                assert!(is_good_definitional(&ext).is_good, "seed={seed} l={l}");
            }
        }
    }

    #[test]
    fn decomposition_rejoins_sampled_members() {
        for seed in 0..30u64 {
            let g = sample_h_member(9, seed);
            let d = is_good_structural(&g).expect("sampled members are good");
            assert_eq!(rejoin(&d, g.order()), g, "seed={seed}");
        }
    }
}
