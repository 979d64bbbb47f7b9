//! Exact independence number, clique number and chromatic number at desk
//! scale, plus the verification driver that cross-checks every closed form.
//!
//! Every result carries a witness that is re-validated against the adjacency
//! before it is returned. Search order follows vertex indices, so values,
//! witnesses and node counts are reproducible.

mod search;
pub mod verify;

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::budget::{self, Budgets};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::totalgraph::{regular_graph, total_graph, TotalGraphSpec};

pub use verify::{verify_all, CheckStatus, VerifyConfig, VerifyReport, VerifyRow, DEFAULT_GRID};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Alpha,
    Omega,
    Chi,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Alpha => "alpha",
            Quantity::Omega => "omega",
            Quantity::Chi => "chi",
        })
    }
}

/// A sorted vertex set for `alpha`/`omega`, a colour per vertex for `chi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Set(Vec<usize>),
    Colouring(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub quantity: Quantity,
    pub value: usize,
    pub witness: Witness,
    pub graph: String,
    pub nodes_explored: u64,
}

impl OracleResult {
    /// Checks the witness against `graph`.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidInput(format!("invalid {} witness: {why}", self.quantity)));
        let n = graph.vertex_count();
        match (&self.witness, self.quantity) {
            (Witness::Set(set), Quantity::Alpha | Quantity::Omega) => {
                if set.len() != self.value {
                    return bad("size differs from value");
                }
                if set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&v| v >= n) {
                    return bad("not a sorted set of vertices");
                }
                let ok = match self.quantity {
                    Quantity::Alpha => graph.is_independent(set),
                    _ => graph.is_clique(set),
                };
                if !ok {
                    return bad("adjacency violated");
                }
            }
            (Witness::Colouring(colours), Quantity::Chi) => {
                if !graph.is_proper_coloring(colours) {
                    return bad("not a proper colouring");
                }
                let mut used: Vec<usize> = colours.clone();
                used.sort_unstable();
                used.dedup();
                if used.len() != self.value || used.iter().any(|&c| c >= self.value) {
                    return bad("colour count differs from value");
                }
            }
            _ => return bad("witness kind does not match quantity"),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleOptions {
    pub budgets: Budgets,
    /// Return the lexicographically smallest optimal witness.
    pub canonical_witness: bool,
}

fn search_guard(graph: &Graph, budgets: &Budgets) -> Result<()> {
    budget::check(
        "independent-set search",
        graph.vertex_count() as u64,
        budgets.search_vertices.min(128),
    )
}

fn clique_on(adj: &[search::Mask], canonical: bool) -> (Vec<usize>, u64) {
    let (best, mut nodes) = search::CliqueSearch::new(adj).maximum(search::full(adj.len()));
    if canonical && !best.is_empty() {
        let witness = search::smallest_clique(adj, best.len(), &mut nodes);
        return (witness, nodes);
    }
    (best, nodes)
}

fn finish(result: OracleResult, graph: &Graph) -> Result<OracleResult> {
    result.validate(graph)?;
    Ok(result)
}

/// Exact `alpha(graph)` by maximum-clique search in the complement.
pub fn max_independent_set(graph: &Graph, id: &str, opts: &OracleOptions) -> Result<OracleResult> {
    search_guard(graph, &opts.budgets)?;
    let adj = search::adjacency(graph, true);
    let (set, nodes) = clique_on(&adj, opts.canonical_witness);
    finish(
        OracleResult {
            quantity: Quantity::Alpha,
            value: set.len(),
            witness: Witness::Set(set),
            graph: id.to_string(),
            nodes_explored: nodes,
        },
        graph,
    )
}

/// Exact `omega(graph)`.
pub fn clique_number(graph: &Graph, id: &str, opts: &OracleOptions) -> Result<OracleResult> {
    search_guard(graph, &opts.budgets)?;
    let adj = search::adjacency(graph, false);
    let (set, nodes) = clique_on(&adj, opts.canonical_witness);
    finish(
        OracleResult {
            quantity: Quantity::Omega,
            value: set.len(),
            witness: Witness::Set(set),
            graph: id.to_string(),
            nodes_explored: nodes,
        },
        graph,
    )
}

/// Renumbers colours in order of first appearance.
fn relabel(colours: &[usize]) -> Vec<usize> {
    let mut map = Vec::<(usize, usize)>::new();
    colours
        .iter()
        .map(|&c| match map.iter().find(|(old, _)| *old == c) {
            Some(&(_, new)) => new,
            None => {
                map.push((c, map.len()));
                map.len() - 1
            }
        })
        .collect()
}

/// Exact `chi(graph)`: iterative deepening on the colour count from
/// `max(omega, ceil(v / alpha))` up to the greedy DSATUR count.
pub fn chromatic_number(graph: &Graph, id: &str, opts: &OracleOptions) -> Result<OracleResult> {
    let n = graph.vertex_count();
    budget::check("exact colouring", n as u64, opts.budgets.coloring_vertices.min(128))?;
    let adj = search::adjacency(graph, false);
    let co_adj = search::adjacency(graph, true);
    let (omega, mut nodes) = search::CliqueSearch::new(&adj).maximum(search::full(n));
    let (alpha, alpha_nodes) = search::CliqueSearch::new(&co_adj).maximum(search::full(n));
    nodes += alpha_nodes;
    let lower = if n == 0 {
        0
    } else {
        omega.len().max(n.div_ceil(alpha.len()))
    };

    let greedy = search::dsatur_greedy(&adj);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let mut value = upper;
    let mut colours = greedy;
    for k in lower..upper {
        let mut c = search::Colouring::new(&adj, k);
        let found = c.solve();
        nodes += c.nodes;
        if found {
            value = k;
            colours = c.colours();
            break;
        }
    }
    let colours = if opts.canonical_witness {
        smallest_colouring(&adj, value, &mut nodes)
    } else {
        relabel(&colours)
    };
    finish(
        OracleResult {
            quantity: Quantity::Chi,
            value,
            witness: Witness::Colouring(colours),
            graph: id.to_string(),
            nodes_explored: nodes,
        },
        graph,
    )
}

/// The lexicographically smallest colour array using at most `k` colours.
fn smallest_colouring(adj: &[search::Mask], k: usize, nodes: &mut u64) -> Vec<usize> {
    let mut prefix: Vec<usize> = Vec::with_capacity(adj.len());
    for v in 0..adj.len() {
        let next = (0..k)
            .find(|&c| {
                let mut s = search::Colouring::new(adj, k);
                let ok = prefix.iter().enumerate().all(|(w, &cw)| s.fix(w, cw)) && s.fix(v, c) && s.solve();
                *nodes += s.nodes;
                ok
            })
            .expect("a k-colourable graph");
        prefix.push(next);
    }
    prefix
}

/// Subset-exhaustive `alpha` for graphs with at most 20 vertices; an
/// independent check on the branch-and-bound.
pub fn exhaustive_alpha(graph: &Graph) -> Result<usize> {
    budget::check("exhaustive subset search", graph.vertex_count() as u64, 20)?;
    Ok(search::exhaustive_alpha(graph))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Total,
    Regular,
}

impl GraphKind {
    pub fn id(&self, n: usize, q: u64) -> String {
        match self {
            GraphKind::Total => format!("T_{n}({q})"),
            GraphKind::Regular => format!("Gamma_{n}({q})"),
        }
    }
}

/// Runs the oracle for `quantity` on `T_n(q)` or `Gamma_n(q)`. The vertex
/// count is checked against the search budget before anything is built.
pub fn oracle_on(kind: GraphKind, quantity: Quantity, n: usize, q: u64, opts: &OracleOptions) -> Result<OracleResult> {
    let spec = TotalGraphSpec::new(n, q)?;
    let vertices = match kind {
        GraphKind::Total => spec.vertex_count,
        GraphKind::Regular => spec.gl_order,
    };
    let (what, limit) = match quantity {
        Quantity::Chi => ("exact colouring", opts.budgets.coloring_vertices.min(128)),
        _ => ("independent-set search", opts.budgets.search_vertices.min(128)),
    };
    if vertices > BigUint::from(limit) {
        return Err(Error::budget(what, vertices, limit));
    }
    let graph = match kind {
        GraphKind::Total => total_graph(n, q, &opts.budgets)?.graph().clone(),
        GraphKind::Regular => regular_graph(n, q, &opts.budgets)?.graph,
    };
    let id = kind.id(n, q);
    match quantity {
        Quantity::Alpha => max_independent_set(&graph, &id, opts),
        Quantity::Omega => clique_number(&graph, &id, opts),
        Quantity::Chi => chromatic_number(&graph, &id, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn opts() -> OracleOptions {
        OracleOptions::default()
    }

    fn canonical() -> OracleOptions {
        OracleOptions {
            canonical_witness: true,
            ..OracleOptions::default()
        }
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner))
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    #[test]
    fn trivial_graphs() {
        for v in 1..10 {
            let e = Graph::empty(v);
            assert_eq!(max_independent_set(&e, "E", &opts()).unwrap().value, v);
            assert_eq!(clique_number(&e, "E", &opts()).unwrap().value, 1);
            assert_eq!(chromatic_number(&e, "E", &opts()).unwrap().value, 1);
            let k = Graph::complete(v);
            assert_eq!(max_independent_set(&k, "K", &opts()).unwrap().value, 1);
            assert_eq!(clique_number(&k, "K", &opts()).unwrap().value, v);
            assert_eq!(chromatic_number(&k, "K", &opts()).unwrap().value, v);
        }
        let none = Graph::empty(0);
        assert_eq!(chromatic_number(&none, "", &opts()).unwrap().value, 0);
        assert_eq!(max_independent_set(&none, "", &opts()).unwrap().value, 0);
    }

    #[test]
    fn known_graphs() {
        let c5 = cycle(5);
        assert_eq!(max_independent_set(&c5, "C5", &opts()).unwrap().value, 2);
        assert_eq!(chromatic_number(&c5, "C5", &opts()).unwrap().value, 3);
        assert_eq!(chromatic_number(&cycle(6), "C6", &opts()).unwrap().value, 2);
        let p = petersen();
        assert_eq!(max_independent_set(&p, "P", &opts()).unwrap().value, 4);
        assert_eq!(clique_number(&p, "P", &opts()).unwrap().value, 2);
        assert_eq!(chromatic_number(&p, "P", &opts()).unwrap().value, 3);
        // K_{3,4}
        let kb = Graph::from_edges(7, (0..3).flat_map(|a| (3..7).map(move |b| (a, b))));
        assert_eq!(chromatic_number(&kb, "K34", &opts()).unwrap().value, 2);
        assert_eq!(max_independent_set(&kb, "K34", &opts()).unwrap().value, 4);
    }

    #[test]
    fn wide_graph_uses_both_mask_words() {
        let mut g = Graph::complete(100);
        g = g.complement();
        for a in 90..100 {
            for b in a + 1..100 {
                g.add_edge(a, b);
            }
        }
        assert_eq!(clique_number(&g, "", &opts()).unwrap().value, 10);
        assert_eq!(max_independent_set(&g, "", &opts()).unwrap().value, 91);
        assert!(max_independent_set(&Graph::empty(129), "", &opts())
            .unwrap_err()
            .is_budget());
        assert!(chromatic_number(&Graph::empty(65), "", &opts())
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn branch_and_bound_matches_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..60 {
            let n = rng.gen_range(1..=16);
            let g = random_graph(&mut rng, n, [0.2, 0.5, 0.8][i % 3]);
            let alpha = max_independent_set(&g, "", &opts()).unwrap().value;
            assert_eq!(alpha, exhaustive_alpha(&g).unwrap());
            let omega = clique_number(&g, "", &opts()).unwrap().value;
            assert_eq!(omega, exhaustive_alpha(&g.complement()).unwrap());
        }
    }

    #[test]
    fn chromatic_matches_exhaustive_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let n = rng.gen_range(1..=7);
            let g = random_graph(&mut rng, n, 0.5);
            let chi = chromatic_number(&g, "", &opts()).unwrap().value;
            // smallest k such that some k^n assignment is proper
            let brute = (1..=n)
                .find(|&k| {
                    (0..k.pow(n as u32)).any(|mut code| {
                        let colours: Vec<usize> = (0..n)
                            .map(|_| {
                                let c = code % k;
                                code /= k;
                                c
                            })
                            .collect();
                        g.is_proper_coloring(&colours)
                    })
                })
                .unwrap();
            assert_eq!(chi, brute);
        }
    }

    #[test]
    fn canonical_witnesses_are_lexicographically_smallest() {
        let c5 = cycle(5);
        let r = max_independent_set(&c5, "C5", &canonical()).unwrap();
        assert_eq!(r.witness, Witness::Set(vec![0, 2]));
        let r = chromatic_number(&c5, "C5", &canonical()).unwrap();
        assert_eq!(r.witness, Witness::Colouring(vec![0, 1, 0, 1, 2]));
        let r = clique_number(&petersen(), "P", &canonical()).unwrap();
        assert_eq!(r.witness, Witness::Set(vec![0, 1]));
    }

    #[test]
    fn validation_rejects_bad_witnesses() {
        let c5 = cycle(5);
        let mut r = max_independent_set(&c5, "C5", &opts()).unwrap();
        r.witness = Witness::Set(vec![0, 1]);
        assert!(r.validate(&c5).is_err());
        r.witness = Witness::Colouring(vec![0; 5]);
        assert!(r.validate(&c5).is_err());
        let mut r = chromatic_number(&c5, "C5", &opts()).unwrap();
        r.value = 4;
        assert!(r.validate(&c5).is_err());
    }

    #[test]
    fn regular_graph_examples() {
        let a = oracle_on(GraphKind::Regular, Quantity::Alpha, 2, 2, &opts()).unwrap();
        let c = oracle_on(GraphKind::Regular, Quantity::Chi, 2, 2, &opts()).unwrap();
        assert!(a.value <= 8);
        assert!(a.value * c.value >= 6);
        let g = regular_graph(2, 2, &Budgets::default()).unwrap().graph;
        assert_eq!(a.value, exhaustive_alpha(&g).unwrap());
        let err = oracle_on(GraphKind::Total, Quantity::Alpha, 3, 3, &opts()).unwrap_err();
        assert!(err.is_budget());
        assert!(oracle_on(GraphKind::Total, Quantity::Alpha, 1, 3, &opts()).is_err());
    }

    #[test]
    fn json_shape() {
        let r = max_independent_set(&cycle(5), "C5", &canonical()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"quantity":"alpha","value":2,"witness":[0,2],"graph":"C5","nodes_explored":"#));
    }
}
