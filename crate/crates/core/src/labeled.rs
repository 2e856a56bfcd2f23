//! Edge-labeled graphs: the good-forest conditions, the labeling that makes any
//! noncrossing forest good, and lexicographic edge-labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{Edge, Graph, GraphError, Vertex};

/// A graph whose edges carry a bijective labeling by `1..=k`. Stored as the
/// edge sequence indexed by label, which is also the word of the corresponding
/// noncommutative monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledGraph {
    n_plus_1: Vertex,
    by_label: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no edge labeled {0}")]
    NoSuchLabel(u32),
    #[error("edges labeled {0} and {1} share a vertex; they do not commute")]
    NotDisjoint(u32, u32),
    #[error("graph is not a noncrossing forest")]
    NotNoncrossingForest,
    #[error("precedence relation is cyclic; input cannot be made good")]
    CyclicPrecedence,
}

impl LabeledGraph {
    /// Builds from `(i, j, label)` triples; labels must be a permutation of `1..=k`.
    pub fn new<I>(n_plus_1: Vertex, labeled_edges: I) -> Result<Self, LabelError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u32)>,
    {
        let triples: Vec<(Vertex, Vertex, u32)> = labeled_edges.into_iter().collect();
        let k = triples.len() as u32;
        let mut by_label: Vec<Option<Edge>> = vec![None; k as usize];
        for (i, j, label) in triples {
            let e = Edge::new(i, j)?;
            if e.j() > n_plus_1 {
                return Err(GraphError::EdgeOutOfRange { edge: e, n_plus_1 }.into());
            }
            if label == 0 || label > k || by_label[label as usize - 1].is_some() {
                return Err(LabelError::NoSuchLabel(label));
            }
            by_label[label as usize - 1] = Some(e);
        }
        let by_label: Vec<Edge> = by_label.into_iter().map(|e| e.expect("all labels set")).collect();
        // duplicate edges are rejected by the Graph constructor
        Graph::new(n_plus_1, by_label.iter().map(|e| (e.i(), e.j())))?;
        Ok(LabeledGraph { n_plus_1, by_label })
    }

    /// Labels the word `edges[0], edges[1], ...` as `1, 2, ...`.
    pub fn from_word(n_plus_1: Vertex, word: &[Edge]) -> Result<Self, LabelError> {
        Self::new(
            n_plus_1,
            word.iter().enumerate().map(|(idx, e)| (e.i(), e.j(), idx as u32 + 1)),
        )
    }

    pub fn n_plus_1(&self) -> Vertex {
        self.n_plus_1
    }

    pub fn edge_count(&self) -> usize {
        self.by_label.len()
    }

    /// The edge labeled `a` (labels start at 1).
    pub fn edge(&self, a: u32) -> Option<Edge> {
        self.by_label.get(a as usize - 1).copied()
    }

    pub fn label_of(&self, e: &Edge) -> Option<u32> {
        self.by_label.iter().position(|f| f == e).map(|p| p as u32 + 1)
    }

    /// Edges in label order: the word of the monomial `m^B`.
    pub fn word(&self) -> &[Edge] {
        &self.by_label
    }

    pub fn labeled_edges(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.by_label.iter().enumerate().map(|(idx, e)| (*e, idx as u32 + 1))
    }

    pub fn base(&self) -> Graph {
        Graph::new(self.n_plus_1, self.by_label.iter().map(|e| (e.i(), e.j())))
            .expect("validated at construction")
    }

    /// The good-forest conditions:
    /// (i)   `(i,j)_a`, `(j,k)_b`, `i<j<k`  implies `a < b`;
    /// (ii)  `(i,j)_a`, `(i,k)_b`, `j<k`    implies `a > b`;
    /// (iii) `(i,j)_a`, `(k,j)_b`, `i<k`    implies `a > b`;
    /// (iv)  the graph is noncrossing.
    /// Cyclic graphs can never satisfy all four.
    pub fn is_good(&self) -> bool {
        for (e, a) in self.labeled_edges() {
            for (f, b) in self.labeled_edges() {
                if e == f {
                    continue;
                }
                if e.j() == f.i() && a >= b {
                    return false; // (i)
                }
                if e.i() == f.i() && e.j() < f.j() && a <= b {
                    return false; // (ii)
                }
                if e.j() == f.j() && e.i() < f.i() && a <= b {
                    return false; // (iii)
                }
            }
        }
        self.base().is_noncrossing()
    }

    /// Swaps the labels `a` and `a+1`; refused unless the two edges are
    /// vertex-disjoint. Involutive.
    pub fn commute(&self, a: u32) -> Result<LabeledGraph, LabelError> {
        let e = self.edge(a).ok_or(LabelError::NoSuchLabel(a))?;
        let f = self.edge(a + 1).ok_or(LabelError::NoSuchLabel(a + 1))?;
        if !e.disjoint(&f) {
            return Err(LabelError::NotDisjoint(a, a + 1));
        }
        let mut by_label = self.by_label.clone();
        by_label.swap(a as usize - 1, a as usize);
        Ok(LabeledGraph { n_plus_1: self.n_plus_1, by_label })
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph[n={};", self.n_plus_1)?;
        for (e, a) in self.labeled_edges() {
            write!(f, " {e:?}_{a}")?;
        }
        write!(f, "]")
    }
}

/// Compares edges in the order used for lexicographic labels: `(i1, j1)` is
/// smaller than `(i2, j2)` iff `j1 > j2`, or `j1 = j2` and `i1 > i2`.
pub fn lex_label_cmp(a: &Edge, b: &Edge) -> std::cmp::Ordering {
    b.j().cmp(&a.j()).then(b.i().cmp(&a.i()))
}

/// The unique labeling in which smaller edges (in the order of `lex_label_cmp`)
/// receive smaller labels.
pub fn lexicographic_labels(f: &Graph) -> LabeledGraph {
    let mut edges: Vec<Edge> = f.edges().collect();
    edges.sort_by(lex_label_cmp);
    LabeledGraph::from_word(f.n_plus_1(), &edges).expect("relabeling a valid graph")
}

/// An edge-labeling that makes the noncrossing forest good, by topologically
/// sorting the precedence relation forced by conditions (i)-(iii). Smallest
/// available edge first, so the output is deterministic.
pub fn good_labeling(f: &Graph) -> Result<LabeledGraph, LabelError> {
    if !f.is_forest() || !f.is_noncrossing() {
        return Err(LabelError::NotNoncrossingForest);
    }
    let edges: Vec<Edge> = f.edges().collect();
    let mut preds: BTreeMap<Edge, BTreeSet<Edge>> = edges.iter().map(|e| (*e, BTreeSet::new())).collect();
    for e in &edges {
        for g in &edges {
            if e == g {
                continue;
            }
            // (i): (i,j) before (j,k)
            if e.j() == g.i() {
                preds.get_mut(g).expect("known edge").insert(*e);
            }
            // (ii): (i,k) before (i,j) when j < k
            if e.i() == g.i() && e.j() > g.j() {
                preds.get_mut(g).expect("known edge").insert(*e);
            }
            // (iii): (k,j) before (i,j) when i < k
            if e.j() == g.j() && e.i() > g.i() {
                preds.get_mut(g).expect("known edge").insert(*e);
            }
        }
    }
    let mut word = Vec::with_capacity(edges.len());
    let mut remaining: BTreeSet<Edge> = edges.iter().copied().collect();
    while !remaining.is_empty() {
        let next = remaining
            .iter()
            .find(|e| preds[e].iter().all(|p| !remaining.contains(p)))
            .copied()
            .ok_or(LabelError::CyclicPrecedence)?;
        remaining.remove(&next);
        word.push(next);
    }
    let labeled = LabeledGraph::from_word(f.n_plus_1(), &word)?;
    debug_assert!(labeled.is_good());
    Ok(labeled)
}

/// True when the two labelings of the same graph agree on the relative order of
/// every pair of vertex-sharing edges, i.e. are connected by commutations of
/// disjoint consecutively-labeled edges.
pub fn labels_commutation_equivalent(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    let ea: BTreeSet<Edge> = a.word().iter().copied().collect();
    let eb: BTreeSet<Edge> = b.word().iter().copied().collect();
    if ea != eb || a.n_plus_1() != b.n_plus_1() {
        return false;
    }
    for e in &ea {
        for f in &ea {
            if e < f && !e.disjoint(f) {
                let (la, lb) = (a.label_of(e).unwrap(), a.label_of(f).unwrap());
                let (ma, mb) = (b.label_of(e).unwrap(), b.label_of(f).unwrap());
                if (la < lb) != (ma < mb) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: Vertex, edges: &[(Vertex, Vertex)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn path_in_order_is_good() {
        let lg = LabeledGraph::new(4, [(1, 2, 1), (2, 3, 2), (3, 4, 3)]).unwrap();
        assert!(lg.is_good());
        let rev = LabeledGraph::new(4, [(1, 2, 3), (2, 3, 2), (3, 4, 1)]).unwrap();
        assert!(!rev.is_good());
    }

    #[test]
    fn condition_iii_ordering() {
        let bad = LabeledGraph::new(3, [(1, 3, 1), (2, 3, 2)]).unwrap();
        assert!(!bad.is_good());
        let good = LabeledGraph::new(3, [(1, 3, 2), (2, 3, 1)]).unwrap();
        assert!(good.is_good());
    }

    #[test]
    fn good_labeling_examples() {
        let p = good_labeling(&Graph::path(4)).unwrap();
        assert_eq!(p.word(), &[e(1, 2), e(2, 3), e(3, 4)]);

        let shared_head = good_labeling(&g(3, &[(1, 3), (2, 3)])).unwrap();
        assert_eq!(shared_head.word(), &[e(2, 3), e(1, 3)]);

        let mixed = good_labeling(&g(4, &[(1, 2), (1, 3), (3, 4)])).unwrap();
        assert!(mixed.is_good());
    }

    #[test]
    fn good_labeling_rejects_cycles_and_crossings() {
        assert!(good_labeling(&g(3, &[(1, 2), (2, 3), (1, 3)])).is_err());
        assert!(good_labeling(&g(4, &[(1, 3), (2, 4)])).is_err());
    }

    #[test]
    fn lexicographic_label_examples() {
        let star = lexicographic_labels(&g(4, &[(1, 4), (2, 4), (3, 4)]));
        assert_eq!(star.label_of(&e(1, 4)), Some(3));
        assert_eq!(star.label_of(&e(2, 4)), Some(2));
        assert_eq!(star.label_of(&e(3, 4)), Some(1));

        let fan = lexicographic_labels(&g(4, &[(1, 4), (1, 3)]));
        assert_eq!(fan.label_of(&e(1, 4)), Some(1));
        assert_eq!(fan.label_of(&e(1, 3)), Some(2));

        let single = lexicographic_labels(&g(2, &[(1, 2)]));
        assert_eq!(single.label_of(&e(1, 2)), Some(1));
    }

    #[test]
    fn commute_swaps_disjoint_labels() {
        let lg = LabeledGraph::new(4, [(1, 2, 1), (3, 4, 2)]).unwrap();
        let swapped = lg.commute(1).unwrap();
        assert_eq!(swapped.label_of(&e(1, 2)), Some(2));
        assert_eq!(swapped.label_of(&e(3, 4)), Some(1));
        assert_eq!(swapped.commute(1).unwrap(), lg);
    }

    #[test]
    fn commute_refuses_shared_vertex() {
        let lg = LabeledGraph::new(3, [(1, 2, 1), (2, 3, 2)]).unwrap();
        assert_eq!(lg.commute(1), Err(LabelError::NotDisjoint(1, 2)));
    }

    fn e(i: Vertex, j: Vertex) -> Edge {
        Edge::new(i, j).unwrap()
    }
}
