//! Directed graphs on the vertex set `[n+1]` with all edges oriented from the
//! smaller to the larger endpoint, together with the structural predicates
//! (noncrossing, alternating, forest), transitive closure, playable routes and
//! the uncrossing relabeling.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Vertices are numbered `1..=n+1`.
pub type Vertex = u32;

/// An edge `(i, j)` with `i < j`, always stored in that orientation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    i: Vertex,
    j: Vertex,
}

impl Edge {
    pub fn new(i: Vertex, j: Vertex) -> Result<Self, GraphError> {
        if i == 0 || i >= j {
            return Err(GraphError::BadEdge { i, j });
        }
        Ok(Edge { i, j })
    }

    pub fn i(&self) -> Vertex {
        self.i
    }

    pub fn j(&self) -> Vertex {
        self.j
    }

    /// True when the two edges have no endpoint in common.
    pub fn disjoint(&self, other: &Edge) -> bool {
        self.i != other.i && self.i != other.j && self.j != other.i && self.j != other.j
    }

    /// True for the pattern `i < k < j < l` on edges `(i, j)`, `(k, l)`:
    /// the edges cross when drawn as arcs over the number line.
    pub fn crosses(&self, other: &Edge) -> bool {
        let (a, b) = (*self, *other);
        (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({i},{j}) is not of the form 1 <= i < j")]
    BadEdge { i: Vertex, j: Vertex },
    #[error("edge {0} repeated; graphs are simple")]
    DuplicateEdge(Edge),
    #[error("edge {edge} has endpoint beyond the vertex count {n_plus_1}")]
    EdgeOutOfRange { edge: Edge, n_plus_1: Vertex },
    #[error("vertex count must be at least 1")]
    EmptyVertexSet,
    #[error("graph is not acyclic")]
    NotAcyclic,
    #[error("edges do not form a tree")]
    NotATree,
    #[error("graph is crossing")]
    Crossing,
    #[error("graph is not a spanning tree on [n+1]")]
    NotSpanningTree,
    #[error("tree does not contain vertex {0}")]
    MissingVertex(Vertex),
}

/// A simple graph on the vertex set `[n+1]` whose edges `(i, j)` satisfy `i < j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n_plus_1: Vertex,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new<I>(n_plus_1: Vertex, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n_plus_1 == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            let e = Edge::new(i, j)?;
            if e.j > n_plus_1 {
                return Err(GraphError::EdgeOutOfRange { edge: e, n_plus_1 });
            }
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
        }
        Ok(Graph { n_plus_1, edges: set })
    }

    pub fn from_edge_set(n_plus_1: Vertex, edges: BTreeSet<Edge>) -> Result<Self, GraphError> {
        Self::new(n_plus_1, edges.into_iter().map(|e| (e.i, e.j)))
    }

    /// The path `1-2-...-(n+1)`; its root polytope is the full polytope of all
    /// positive roots.
    pub fn path(n_plus_1: Vertex) -> Self {
        Graph::new(n_plus_1, (1..n_plus_1).map(|i| (i, i + 1))).expect("path is a valid graph")
    }

    pub fn n_plus_1(&self) -> Vertex {
        self.n_plus_1
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Vertices incident to at least one edge.
    pub fn support(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(|e| [e.i, e.j]).collect()
    }

    /// No two edges `(i, k)`, `(j, l)` with `i < j < k < l`.
    pub fn is_noncrossing(&self) -> bool {
        let edges: Vec<Edge> = self.edges().collect();
        for (idx, a) in edges.iter().enumerate() {
            for b in &edges[idx + 1..] {
                if a.crosses(b) {
                    return false;
                }
            }
        }
        true
    }

    /// No pair `(i, j)`, `(j, k)` with `i < j < k`: no vertex is both the head
    /// of one edge and the tail of another.
    pub fn is_alternating(&self) -> bool {
        let heads: BTreeSet<Vertex> = self.edges.iter().map(|e| e.j).collect();
        !self.edges.iter().any(|e| heads.contains(&e.i))
    }

    /// The underlying undirected graph has no cycle.
    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.n_plus_1 as usize + 1);
        for e in &self.edges {
            if !uf.union(e.i as usize, e.j as usize) {
                return false;
            }
        }
        true
    }

    /// The edges form a single tree (connected and acyclic on their support).
    pub fn is_tree(&self) -> bool {
        if self.edges.is_empty() {
            return false;
        }
        self.is_forest() && self.support().len() == self.edges.len() + 1
    }

    /// A tree covering every vertex of `[n+1]`.
    pub fn is_spanning_tree(&self) -> bool {
        self.is_tree() && self.support().len() == self.n_plus_1 as usize
    }

    /// Adjacency over the undirected edges, as sorted neighbor lists.
    pub fn adjacency(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.i).or_default().push(e.j);
            adj.entry(e.j).or_default().push(e.i);
        }
        adj
    }

    /// In-neighbors of `v`: tails `i` of edges `(i, v)`.
    pub fn in_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.edges.iter().filter(|e| e.j == v).map(|e| e.i).collect()
    }

    /// Out-neighbors of `v`: heads `j` of edges `(v, j)`.
    pub fn out_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.edges.iter().filter(|e| e.i == v).map(|e| e.j).collect()
    }

    /// The graph `Ḡ` whose edges are all pairs `(i, j)` joined by an
    /// increasing chain `i < i_1 < ... < i_k < j` of edges of `self`.
    pub fn transitive_closure(&self) -> Graph {
        // closed[v] = set of endpoints reachable from v along increasing chains
        let mut reach: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        // process tails in decreasing order so reach[j] is complete before any (i, j)
        for e in self.edges.iter().rev() {
            let via: BTreeSet<Vertex> = reach.get(&e.j).cloned().unwrap_or_default();
            let entry = reach.entry(e.i).or_default();
            entry.insert(e.j);
            entry.extend(via);
        }
        let mut edges = BTreeSet::new();
        for (&i, js) in &reach {
            for &j in js {
                edges.insert(Edge::new(i, j).expect("closure edges are increasing"));
            }
        }
        Graph { n_plus_1: self.n_plus_1, edges }
    }

    /// All ordered edge sequences `(i_1, j_1), ..., (i_l, j_l)` with
    /// `i_1 < j_1 = i_2 < ... = i_l < j_l`.
    pub fn playable_routes(&self) -> Vec<Vec<Edge>> {
        let mut routes = Vec::new();
        let mut stack: Vec<Vec<Edge>> = self.edges.iter().map(|e| vec![*e]).collect();
        while let Some(route) = stack.pop() {
            let last = route.last().expect("routes are nonempty");
            for e in &self.edges {
                if e.i == last.j {
                    let mut longer = route.clone();
                    longer.push(*e);
                    stack.push(longer);
                }
            }
            routes.push(route);
        }
        routes.sort();
        routes
    }

    /// The roots `e_i - e_j` spanned by playable routes, as pairs `(i, j)`:
    /// the vertex set of the root polytope `P(self)`.
    pub fn vertex_set(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.playable_routes()
            .iter()
            .map(|r| (r[0].i, r.last().expect("nonempty").j))
            .collect()
    }

    /// The unique simple path between `a` and `b` in a forest, as the list of
    /// traversed edges, or `None` when `a` and `b` are not connected.
    pub fn tree_path(&self, a: Vertex, b: Vertex) -> Option<Vec<Edge>> {
        if a == b {
            return Some(Vec::new());
        }
        let adj = self.adjacency();
        let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut queue = VecDeque::from([a]);
        prev.insert(a, a);
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for &w in adj.get(&v).into_iter().flatten() {
                if !prev.contains_key(&w) {
                    prev.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        if !prev.contains_key(&b) {
            return None;
        }
        let mut path = Vec::new();
        let mut v = b;
        while v != a {
            let p = prev[&v];
            path.push(Edge::new(p.min(v), p.max(v)).expect("path edges are valid"));
            v = p;
        }
        path.reverse();
        Some(path)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph[n={}; {:?}]", self.n_plus_1, self.edges)
    }
}

/// Uncrossing: a vertex relabeling `phi` with `phi(i) < phi(j)` for every edge
/// `(i, j)` such that the image graph is noncrossing. Identity when the input
/// already is. Only defined for acyclic graphs.
pub fn uncross(g: &Graph) -> Result<(Graph, Vec<Vertex>), GraphError> {
    if !g.is_forest() {
        return Err(GraphError::NotAcyclic);
    }
    let n = g.n_plus_1;
    if g.is_noncrossing() {
        return Ok((g.clone(), (0..=n).collect()));
    }

    // Lay the forest out left to right so that every edge points rightward and
    // each subtree occupies a contiguous interval: children whose edge comes in
    // from below go left of v, the others right. Arcs then only nest.
    let adj = g.adjacency();
    let mut order: Vec<Vertex> = Vec::new();
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    fn layout(
        v: Vertex,
        parent: Option<Vertex>,
        adj: &BTreeMap<Vertex, Vec<Vertex>>,
        order: &mut Vec<Vertex>,
    ) {
        let children: Vec<Vertex> = adj
            .get(&v)
            .into_iter()
            .flatten()
            .copied()
            .filter(|&w| Some(w) != parent)
            .collect();
        for &c in children.iter().filter(|&&c| c < v) {
            layout(c, Some(v), adj, order);
        }
        order.push(v);
        for &c in children.iter().filter(|&&c| c > v) {
            layout(c, Some(v), adj, order);
        }
    }
    for v in 1..=n {
        if adj.contains_key(&v) && seen.insert(v) {
            let before = order.len();
            layout(v, None, &adj, &mut order);
            seen.extend(order[before..].iter().copied());
        }
    }
    for v in 1..=n {
        if !adj.contains_key(&v) {
            order.push(v);
        }
    }

    let mut phi = vec![0; n as usize + 1];
    for (pos, &v) in order.iter().enumerate() {
        phi[v as usize] = pos as Vertex + 1;
    }
    let image = Graph::new(
        n,
        g.edges().map(|e| (phi[e.i as usize], phi[e.j as usize])),
    )?;
    debug_assert!(image.is_noncrossing());
    Ok((image, phi))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
