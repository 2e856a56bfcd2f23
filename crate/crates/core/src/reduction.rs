//! The reduction calculus: replacing an edge pair `(i,j), (j,k)` of a graph by
//! the three outcomes of `x_{ij} x_{jk} -> x_{ik} x_{ij} + x_{jk} x_{ik} +
//! beta x_{ik}`, reduction trees built under a pivot-selection strategy, and
//! the reduced forms read off their leaves.

use std::collections::BTreeMap;
use std::hash::Hasher;

use num_rational::BigRational;
use num_traits::One;

use crate::forest::FVector;
use crate::graph::{Edge, Graph, GraphError, Vertex};
use crate::labeled::{LabelError, LabeledGraph};
use crate::monomial::{Mode, Monomial};
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("pivot edges {0} and {1} are not both present")]
    PivotMissing(Edge, Edge),
    #[error("pivot edges {0} and {1} do not share a middle vertex i<j<k")]
    PivotShape(Edge, Edge),
    #[error("pivot labels {0} and {1} are not consecutive")]
    LabelsNotConsecutive(u32, u32),
    #[error("root of a B-reduction tree must be a good forest")]
    NotGood,
    #[error("B-mode monomials must have distinct letters")]
    RepeatedLetter,
    #[error("pivot cannot be made label-consecutive by commutations")]
    PivotBlocked,
}

/// A reducible pair `(i, j), (j, k)` with `i < j < k`.
pub type Pivot = (Edge, Edge);

fn pivot_triple(p: &Pivot) -> (Vertex, Vertex, Vertex) {
    (p.0.i(), p.0.j(), p.1.j())
}

/// Deterministic pivot selection for reduction trees.
#[derive(Debug, Clone)]
pub enum Strategy {
    /// Smallest `(i, j, k)` triple.
    LexFirst,
    /// Largest `(i, j, k)` triple.
    Rightmost,
    /// Pivot chosen by hashing the node graph together with the seed; stable
    /// across evaluation orders.
    Seeded(u64),
    /// Fixed pivot per graph, for replaying recorded reduction sequences.
    /// Falls back to lex-first when a graph is missing from the script.
    Scripted(BTreeMap<Vec<(Vertex, Vertex)>, (Vertex, Vertex, Vertex)>),
}

impl Strategy {
    /// Picks from a nonempty pivot list sorted by `(i, j, k)`.
    fn pick(&self, pivots: &[Pivot], node_key: &[Edge]) -> usize {
        match self {
            Strategy::LexFirst => 0,
            Strategy::Rightmost => pivots.len() - 1,
            Strategy::Seeded(seed) => {
                let mut h = Fnv(0xcbf29ce484222325 ^ *seed);
                for e in node_key {
                    h.write_u32(e.i());
                    h.write_u32(e.j());
                }
                (h.finish() % pivots.len() as u64) as usize
            }
            Strategy::Scripted(script) => {
                let key: Vec<(Vertex, Vertex)> = node_key.iter().map(|e| (e.i(), e.j())).collect();
                script
                    .get(&key)
                    .and_then(|want| pivots.iter().position(|p| pivot_triple(p) == *want))
                    .unwrap_or(0)
            }
        }
    }
}

struct Fnv(u64);

impl Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }
}

/// One commutative reduction step on a simple graph, by edge sets:
/// `G1 = G - (j,k) + (i,k)`, `G2 = G - (i,j) + (i,k)`, `G3 = G - both + (i,k)`.
pub fn reduce_step_s(g: &Graph, pivot: Pivot) -> Result<(Graph, Graph, Graph), ReduceError> {
    let (e1, e2) = pivot;
    if !g.contains_edge(&e1) || !g.contains_edge(&e2) {
        return Err(ReduceError::PivotMissing(e1, e2));
    }
    if e1.j() != e2.i() {
        return Err(ReduceError::PivotShape(e1, e2));
    }
    let new = Edge::new(e1.i(), e2.j())?;
    let build = |drop1: bool, drop2: bool| -> Result<Graph, ReduceError> {
        let edges = g
            .edges()
            .filter(|e| !(drop1 && e == &e1) && !(drop2 && e == &e2))
            .chain(std::iter::once(new))
            .map(|e| (e.i(), e.j()));
        let mut dedup: Vec<(Vertex, Vertex)> = edges.collect();
        dedup.sort_unstable();
        dedup.dedup();
        Ok(Graph::new(g.n_plus_1(), dedup)?)
    };
    Ok((build(false, true)?, build(true, false)?, build(true, true)?))
}

/// One noncommutative reduction step on consecutively labeled pivot edges
/// `(i,j)_a, (j,k)_{a+1}`; in the third child every label above `a` drops by 1.
pub fn reduce_step_b(
    lg: &LabeledGraph,
    pivot: Pivot,
) -> Result<(LabeledGraph, LabeledGraph, LabeledGraph), ReduceError> {
    let (e1, e2) = pivot;
    let a = lg.label_of(&e1).ok_or(ReduceError::PivotMissing(e1, e2))?;
    let b = lg.label_of(&e2).ok_or(ReduceError::PivotMissing(e1, e2))?;
    if e1.j() != e2.i() {
        return Err(ReduceError::PivotShape(e1, e2));
    }
    if b != a + 1 {
        return Err(ReduceError::LabelsNotConsecutive(a, b));
    }
    let new = Edge::new(e1.i(), e2.j())?;
    let n = lg.n_plus_1();
    let mut word1: Vec<Edge> = lg.word().to_vec();
    word1[a as usize - 1] = new;
    word1[a as usize] = e1;
    let g1 = LabeledGraph::from_word(n, &word1)?;
    let mut word2: Vec<Edge> = lg.word().to_vec();
    word2[a as usize - 1] = e2;
    word2[a as usize] = new;
    let g2 = LabeledGraph::from_word(n, &word2)?;
    let mut word3: Vec<Edge> = Vec::with_capacity(lg.edge_count() - 1);
    for (e, label) in lg.labeled_edges() {
        if label == a {
            word3.push(new);
        } else if label != a + 1 {
            word3.push(e);
        }
    }
    let g3 = LabeledGraph::from_word(n, &word3)?;
    Ok((g1, g2, g3))
}

/// Relabels so the pivot edges carry consecutive labels, using only
/// commutations of disjoint consecutively-labeled edges (possible in a good
/// forest whenever the pivot is reducible).
fn commute_pivot_adjacent(lg: &LabeledGraph, pivot: Pivot) -> Result<LabeledGraph, ReduceError> {
    let (e1, e2) = pivot;
    let a = lg.label_of(&e1).ok_or(ReduceError::PivotMissing(e1, e2))?;
    let b = lg.label_of(&e2).ok_or(ReduceError::PivotMissing(e1, e2))?;
    if b == a + 1 {
        return Ok(lg.clone());
    }
    let word = lg.word();
    let before = crate::monomial::dependence_order(word);
    let (p, q) = (a as usize - 1, b as usize - 1);
    if !before[p][q] {
        return Err(ReduceError::PivotBlocked);
    }
    if (0..word.len()).any(|r| r != p && r != q && before[p][r] && before[r][q]) {
        return Err(ReduceError::PivotBlocked);
    }
    let mut new_word = Vec::with_capacity(word.len());
    for r in 0..word.len() {
        if r != p && r != q && before[r][q] {
            new_word.push(word[r]);
        }
    }
    new_word.push(e1);
    new_word.push(e2);
    for r in 0..word.len() {
        if r != p && r != q && !before[r][q] {
            new_word.push(word[r]);
        }
    }
    Ok(LabeledGraph::from_word(lg.n_plus_1(), &new_word)?)
}

/// A node graph: edge multiset in S-mode (parallel edges can arise from
/// monomials with repeated letters), labeled graph in B-mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeGraph {
    S(Vec<Edge>),
    B(LabeledGraph),
}

impl NodeGraph {
    pub fn edge_count(&self) -> usize {
        match self {
            NodeGraph::S(bag) => bag.len(),
            NodeGraph::B(lg) => lg.edge_count(),
        }
    }

    fn edges(&self) -> Vec<Edge> {
        match self {
            NodeGraph::S(bag) => bag.clone(),
            NodeGraph::B(lg) => lg.word().to_vec(),
        }
    }
}

/// A fully expanded reduction tree. Internal B-nodes are stored after the
/// commutations that made their pivot labels consecutive.
#[derive(Debug, Clone)]
pub struct ReductionTree {
    pub mode: Mode,
    pub root: ReductionNode,
}

#[derive(Debug, Clone)]
pub struct ReductionNode {
    pub graph: NodeGraph,
    pub pivot: Option<Pivot>,
    pub children: Vec<ReductionNode>,
}

impl ReductionNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

impl ReductionTree {
    pub fn leaves(&self) -> Vec<&NodeGraph> {
        let mut out = Vec::new();
        let mut stack = vec![&self.root];
        while let Some(node) = stack.pop() {
            if node.is_leaf() {
                out.push(&node.graph);
            } else {
                stack.extend(node.children.iter());
            }
        }
        out
    }

    /// Leaves that carry exactly `k` edges.
    pub fn leaves_with_edges(&self, k: usize) -> Vec<&NodeGraph> {
        self.leaves().into_iter().filter(|g| g.edge_count() == k).collect()
    }

    pub fn leaf_fvector(&self) -> FVector {
        let sizes: Vec<usize> = self.leaves().iter().map(|g| g.edge_count()).collect();
        FVector::from_leaf_sizes(sizes, self.root.graph.edge_count())
    }
}

/// Pivots of an edge multiset: distinct pairs `(i,j), (j,k)`, sorted.
fn s_pivots(bag: &[Edge]) -> Vec<Pivot> {
    let mut out: Vec<Pivot> = Vec::new();
    for e1 in bag {
        for e2 in bag {
            if e1.j() == e2.i() {
                let p = (*e1, *e2);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by_key(pivot_triple);
    out
}

/// Reducible pivots of a good forest: for each middle vertex `j` the pair of
/// its smallest in-edge and largest out-edge. Exactly these pairs can be made
/// label-consecutive (any other pair would put a crossing of `(i, k)` in the
/// way), and every graph with a chained pair has one.
fn b_pivots(lg: &LabeledGraph) -> Vec<Pivot> {
    let base = lg.base();
    let mut out = Vec::new();
    for j in 1..=lg.n_plus_1() {
        let ins = base.in_neighbors(j);
        let outs = base.out_neighbors(j);
        if let (Some(&i), Some(&k)) = (ins.iter().min(), outs.iter().max()) {
            out.push((
                Edge::new(i, j).expect("in-edge"),
                Edge::new(j, k).expect("out-edge"),
            ));
        }
    }
    out.sort_by_key(pivot_triple);
    out
}

fn expand_s(bag: Vec<Edge>, strategy: &Strategy) -> ReductionNode {
    let pivots = s_pivots(&bag);
    if pivots.is_empty() {
        return ReductionNode { graph: NodeGraph::S(bag), pivot: None, children: Vec::new() };
    }
    let pivot = pivots[strategy.pick(&pivots, &bag)];
    let (e1, e2) = pivot;
    let new = Edge::new(e1.i(), e2.j()).expect("pivot is increasing");
    let remove_one = |bag: &[Edge], target: &Edge| -> Vec<Edge> {
        let mut out = Vec::with_capacity(bag.len() - 1);
        let mut removed = false;
        for e in bag {
            if !removed && e == target {
                removed = true;
            } else {
                out.push(*e);
            }
        }
        out
    };
    let sorted = |mut bag: Vec<Edge>| {
        bag.sort();
        bag
    };
    let child1 = sorted([remove_one(&bag, &e2), vec![new]].concat());
    let child2 = sorted([remove_one(&bag, &e1), vec![new]].concat());
    let child3 = sorted([remove_one(&remove_one(&bag, &e1), &e2), vec![new]].concat());
    ReductionNode {
        graph: NodeGraph::S(bag),
        pivot: Some(pivot),
        children: vec![
            expand_s(child1, strategy),
            expand_s(child2, strategy),
            expand_s(child3, strategy),
        ],
    }
}

fn expand_b(lg: LabeledGraph, strategy: &Strategy) -> Result<ReductionNode, ReduceError> {
    let pivots = b_pivots(&lg);
    if pivots.is_empty() {
        return Ok(ReductionNode { graph: NodeGraph::B(lg), pivot: None, children: Vec::new() });
    }
    let pivot = pivots[strategy.pick(&pivots, lg.word())];
    let ready = commute_pivot_adjacent(&lg, pivot)?;
    debug_assert!(ready.is_good());
    let (g1, g2, g3) = reduce_step_b(&ready, pivot)?;
    debug_assert!(g1.is_good() && g2.is_good() && g3.is_good());
    Ok(ReductionNode {
        graph: NodeGraph::B(ready),
        pivot: Some(pivot),
        children: vec![
            expand_b(g1, strategy)?,
            expand_b(g2, strategy)?,
            expand_b(g3, strategy)?,
        ],
    })
}

/// Expands the full reduction tree over a graph root.
pub fn build_reduction_tree_s(root: &Graph, strategy: &Strategy) -> ReductionTree {
    let bag: Vec<Edge> = root.edges().collect();
    ReductionTree { mode: Mode::Commutative, root: expand_s(bag, strategy) }
}

/// Expands the full B-reduction tree; the root must be a good forest.
pub fn build_reduction_tree_b(
    root: &LabeledGraph,
    strategy: &Strategy,
) -> Result<ReductionTree, ReduceError> {
    if !root.is_good() {
        return Err(ReduceError::NotGood);
    }
    Ok(ReductionTree { mode: Mode::Noncommutative, root: expand_b(root.clone(), strategy)? })
}

/// The reduced form of a monomial: over the leaves of a reduction tree, the
/// sum of `beta^(root edges - leaf edges) x^leaf`.
pub fn reduced_form(m: &Monomial, mode: Mode, strategy: &Strategy) -> Result<Polynomial, ReduceError> {
    let root_edges = m.degree();
    let leaves: Vec<(usize, Monomial)> = match mode {
        Mode::Commutative => {
            let mut bag: Vec<Edge> = m.word().to_vec();
            bag.sort();
            let tree = ReductionTree { mode, root: expand_s(bag, strategy) };
            tree.leaves()
                .into_iter()
                .map(|g| {
                    let edges = g.edges();
                    (edges.len(), Monomial::commutative(0, edges))
                })
                .collect()
        }
        Mode::Noncommutative => {
            let n = m.min_vertex_count();
            let lg = m
                .labeled_graph(n)
                .map_err(|_| ReduceError::RepeatedLetter)?;
            let tree = build_reduction_tree_b(&lg, strategy)?;
            tree.leaves()
                .into_iter()
                .map(|g| {
                    let edges = g.edges();
                    (edges.len(), Monomial::noncommutative(0, edges))
                })
                .collect()
        }
    };
    let mut poly = Polynomial::zero();
    for (k, leaf) in leaves {
        let beta = m.beta_exp() + (root_edges - k) as u32;
        poly.add_term(leaf.with_extra_beta(beta), BigRational::one());
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: Vertex, j: Vertex) -> Edge {
        Edge::new(i, j).unwrap()
    }

    fn g(n: Vertex, edges: &[(Vertex, Vertex)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn s_step_on_two_edge_path() {
        let (g1, g2, g3) = reduce_step_s(&g(3, &[(1, 2), (2, 3)]), (e(1, 2), e(2, 3))).unwrap();
        assert_eq!(g1, g(3, &[(1, 2), (1, 3)]));
        assert_eq!(g2, g(3, &[(2, 3), (1, 3)]));
        assert_eq!(g3, g(3, &[(1, 3)]));
    }

    #[test]
    fn s_step_matches_first_arrow_of_the_worked_reduction() {
        let (g1, g2, g3) = reduce_step_s(&Graph::path(4), (e(2, 3), e(3, 4))).unwrap();
        assert_eq!(g1, g(4, &[(1, 2), (2, 3), (2, 4)]));
        assert_eq!(g2, g(4, &[(1, 2), (3, 4), (2, 4)]));
        assert_eq!(g3, g(4, &[(1, 2), (2, 4)]));
    }

    #[test]
    fn s_step_edge_counts() {
        let p = Graph::path(4);
        let (g1, g2, g3) = reduce_step_s(&p, (e(1, 2), e(2, 3))).unwrap();
        assert_eq!(g1.edge_count(), 3);
        assert_eq!(g2.edge_count(), 3);
        assert_eq!(g3.edge_count(), 2);
    }

    #[test]
    fn s_step_rejects_bad_pivots() {
        let p = Graph::path(4);
        assert!(reduce_step_s(&p, (e(1, 2), e(3, 4))).is_err());
        assert!(reduce_step_s(&p, (e(1, 3), e(3, 4))).is_err());
    }

    #[test]
    fn b_step_on_two_edge_path() {
        let lg = LabeledGraph::new(3, [(1, 2, 1), (2, 3, 2)]).unwrap();
        let (g1, g2, g3) = reduce_step_b(&lg, (e(1, 2), e(2, 3))).unwrap();
        assert_eq!(g1, LabeledGraph::new(3, [(1, 3, 1), (1, 2, 2)]).unwrap());
        assert_eq!(g2, LabeledGraph::new(3, [(2, 3, 1), (1, 3, 2)]).unwrap());
        assert_eq!(g3, LabeledGraph::new(3, [(1, 3, 1)]).unwrap());
    }

    #[test]
    fn b_step_compacts_labels() {
        let lg = LabeledGraph::new(5, [(1, 2, 1), (2, 3, 2), (4, 5, 3)]).unwrap();
        let (_, _, g3) = reduce_step_b(&lg, (e(1, 2), e(2, 3))).unwrap();
        assert_eq!(g3, LabeledGraph::new(5, [(1, 3, 1), (4, 5, 2)]).unwrap());
    }

    #[test]
    fn b_step_requires_consecutive_labels() {
        let lg = LabeledGraph::new(4, [(1, 2, 1), (3, 4, 2), (2, 3, 3)]).unwrap();
        assert_eq!(
            reduce_step_b(&lg, (e(1, 2), e(2, 3))),
            Err(ReduceError::LabelsNotConsecutive(1, 3))
        );
    }

    #[test]
    fn alternating_root_is_a_single_leaf() {
        let star = g(4, &[(1, 4), (2, 4), (3, 4)]);
        let tree = build_reduction_tree_s(&star, &Strategy::LexFirst);
        assert_eq!(tree.leaves().len(), 1);
        assert!(tree.root.is_leaf());
    }

    #[test]
    fn s_tree_leaf_counts_are_strategy_independent() {
        let p = Graph::path(4);
        let lex = build_reduction_tree_s(&p, &Strategy::LexFirst).leaf_fvector();
        let right = build_reduction_tree_s(&p, &Strategy::Rightmost).leaf_fvector();
        let seeded = build_reduction_tree_s(&p, &Strategy::Seeded(7)).leaf_fvector();
        assert_eq!(lex.counts, vec![0, 1, 5, 5]);
        assert_eq!(lex, right);
        assert_eq!(lex, seeded);
    }

    #[test]
    fn s_leaves_are_pairwise_distinct_for_forest_roots() {
        for strategy in [Strategy::LexFirst, Strategy::Rightmost, Strategy::Seeded(3)] {
            let tree = build_reduction_tree_s(&Graph::path(5), &strategy);
            let mut seen = std::collections::BTreeSet::new();
            for leaf in tree.leaves() {
                assert!(seen.insert(leaf.edges()), "repeated leaf {leaf:?}");
            }
        }
    }

    #[test]
    fn reduced_form_of_two_letter_word() {
        let m = Monomial::commutative(0, [e(1, 2), e(2, 3)]);
        let p = reduced_form(&m, Mode::Commutative, &Strategy::LexFirst).unwrap();
        assert_eq!(p.render_text(), "x13 x12 + x23 x13 + b x13");
    }

    #[test]
    fn b_reduction_of_path_matches_the_eleven_term_form() {
        let m = Monomial::noncommutative(0, [e(1, 2), e(2, 3), e(3, 4)]);
        for strategy in [Strategy::LexFirst, Strategy::Rightmost, Strategy::Seeded(42)] {
            let p = reduced_form(&m, Mode::Noncommutative, &strategy).unwrap();
            assert_eq!(p.len(), 11);
            let expected: Vec<(u32, Vec<Edge>)> = vec![
                (0, vec![e(1, 4), e(1, 3), e(1, 2)]),
                (0, vec![e(1, 4), e(2, 3), e(1, 3)]),
                (1, vec![e(1, 4), e(1, 3)]),
                (0, vec![e(2, 4), e(1, 4), e(2, 3)]),
                (1, vec![e(1, 4), e(2, 3)]),
                (0, vec![e(3, 4), e(1, 4), e(1, 2)]),
                (0, vec![e(3, 4), e(2, 4), e(1, 4)]),
                (1, vec![e(3, 4), e(1, 4)]),
                (1, vec![e(1, 4), e(1, 2)]),
                (1, vec![e(2, 4), e(1, 4)]),
                (2, vec![e(1, 4)]),
            ];
            for (beta, word) in expected {
                let m = Monomial::noncommutative(beta, word);
                assert!(p.coefficient(&m).is_one(), "missing term {m:?}");
            }
        }
    }

    #[test]
    fn b_mode_rejects_non_good_roots() {
        let lg = LabeledGraph::new(3, [(1, 2, 2), (2, 3, 1)]).unwrap();
        assert_eq!(
            build_reduction_tree_b(&lg, &Strategy::LexFirst).err(),
            Some(ReduceError::NotGood)
        );
    }

    #[test]
    fn multigraph_words_reduce_in_s_mode() {
        let m = Monomial::commutative(0, [e(1, 2), e(1, 2), e(2, 3)]);
        let p = reduced_form(&m, Mode::Commutative, &Strategy::LexFirst).unwrap();
        let total: BigRational = p.specialize_x_to_one().iter().sum();
        assert!(!p.is_zero());
        assert!(total > BigRational::one());
    }
}
