//! Enumeration of the noncrossing alternating spanning forests that index
//! reduction-tree leaves, Catalan and Schroeder numbers, and the bijection
//! with polygon diagonals.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::{Edge, Graph, GraphError, Vertex};
use crate::polynomial::binomial_int;
use crate::pseudo::{pseudo_components, PseudoComponent};

/// Counts of reduction-tree leaves (equivalently admissible forests) by edge
/// count: `counts[k] = f_{G,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    pub counts: Vec<u64>,
}

impl FVector {
    pub fn from_leaf_sizes<I: IntoIterator<Item = usize>>(sizes: I, max_edges: usize) -> Self {
        let mut counts = vec![0u64; max_edges + 1];
        for s in sizes {
            counts[s] += 1;
        }
        FVector { counts }
    }

    /// `f_{G,k}`, zero beyond the stored range.
    pub fn get(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("k = {k} out of range {lo}..={hi}")]
    OutOfRange { k: i64, lo: i64, hi: i64 },
    #[error("forest does not satisfy the bijection preconditions")]
    NotAdmissible,
    #[error("diagonal set is not noncrossing or out of range")]
    BadDiagonals,
}

/// Catalan number `C_n`.
pub fn catalan(n: u32) -> BigInt {
    binomial_int(2 * n as i64, n as i64) / BigInt::from(n + 1)
}

/// Schroeder number `s_{n,k} = C(n+k+1, n) C(n-1, k) / (n+1)`: the ways to
/// draw `k` noncrossing diagonals of a convex `(n+2)`-gon.
pub fn schroeder(n: u32, k: u32) -> Result<BigInt, EnumError> {
    if n == 0 || k > n - 1 {
        return Err(EnumError::OutOfRange { k: k as i64, lo: 0, hi: n as i64 - 1 });
    }
    let num = binomial_int((n + k + 1) as i64, n as i64) * binomial_int(n as i64 - 1, k as i64);
    let den = BigInt::from(n + 1);
    debug_assert!((num.clone() % den.clone()).is_zero());
    Ok(num / den)
}

/// The constraints a forest must satisfy to label a reduction-tree leaf over
/// the tree `t`: derived once, checked per candidate.
struct Admissibility {
    long_edge: Edge,
    components: Vec<PseudoComponent>,
}

impl Admissibility {
    fn new(t: &Graph) -> Result<Self, EnumError> {
        let components = pseudo_components(t)?;
        let long_edge = Edge::new(1, t.n_plus_1()).map_err(GraphError::from)?;
        Ok(Admissibility { long_edge, components })
    }

    fn admits(&self, edges: &BTreeSet<Edge>) -> bool {
        if !edges.contains(&self.long_edge) {
            return false;
        }
        for c in &self.components {
            let (lo, hi) = c.span;
            if c.is_right && !edges.iter().any(|e| e.j() == hi && e.i() <= lo) {
                return false;
            }
            if c.is_left && !edges.iter().any(|e| e.i() == lo && e.j() >= hi) {
                return false;
            }
        }
        true
    }
}

/// All noncrossing alternating spanning forests of the transitive closure of
/// `t` with `k` edges that contain the edge `(1, n+1)` and, for every
/// right/left pseudo-component of `t` on `[i, j]`, an edge `(i1, j)` with
/// `i1 <= i` resp. `(i, j1)` with `j1 >= j`.
pub fn enumerate_admissible_forests(t: &Graph, k: usize) -> Result<Vec<Graph>, EnumError> {
    let admissibility = Admissibility::new(t)?;
    let closure = t.transitive_closure();
    let pool: Vec<Edge> = closure.edges().collect();
    if k > pool.len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Edge> = Vec::with_capacity(k);
    backtrack(&pool, 0, k, t.n_plus_1(), &mut chosen, &admissibility, &mut out);
    Ok(out)
}

fn backtrack(
    pool: &[Edge],
    from: usize,
    k: usize,
    n_plus_1: Vertex,
    chosen: &mut Vec<Edge>,
    admissibility: &Admissibility,
    out: &mut Vec<Graph>,
) {
    if chosen.len() == k {
        let edges: BTreeSet<Edge> = chosen.iter().copied().collect();
        if admissibility.admits(&edges) {
            out.push(Graph::from_edge_set(n_plus_1, edges).expect("edges validated"));
        }
        return;
    }
    if pool.len() - from < k - chosen.len() {
        return;
    }
    for idx in from..pool.len() {
        let e = pool[idx];
        let compatible = chosen.iter().all(|f| {
            !e.crosses(f) && e.j() != f.i() && e.i() != f.j()
        });
        if !compatible {
            continue;
        }
        chosen.push(e);
        let still_forest = Graph::new(n_plus_1, chosen.iter().map(|f| (f.i(), f.j())))
            .map(|g| g.is_forest())
            .unwrap_or(false);
        if still_forest {
            backtrack(pool, idx + 1, k, n_plus_1, chosen, admissibility, out);
        }
        chosen.pop();
    }
}

/// All noncrossing alternating spanning trees of the transitive closure of a
/// noncrossing spanning tree: the facets of the canonical triangulation.
pub fn noncrossing_alternating_spanning_trees(closure: &Graph) -> Vec<Graph> {
    let n = closure.n_plus_1() as usize - 1;
    let pool: Vec<Edge> = closure.edges().collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    trees_backtrack(&pool, 0, n, closure.n_plus_1(), &mut chosen, &mut out);
    out
}

fn trees_backtrack(
    pool: &[Edge],
    from: usize,
    n: usize,
    n_plus_1: Vertex,
    chosen: &mut Vec<Edge>,
    out: &mut Vec<Graph>,
) {
    if chosen.len() == n {
        let g = Graph::new(n_plus_1, chosen.iter().map(|f| (f.i(), f.j()))).expect("valid edges");
        if g.is_spanning_tree() {
            out.push(g);
        }
        return;
    }
    if pool.len() - from < n - chosen.len() {
        return;
    }
    for idx in from..pool.len() {
        let e = pool[idx];
        if !chosen.iter().all(|f| !e.crosses(f) && e.j() != f.i() && e.i() != f.j()) {
            continue;
        }
        chosen.push(e);
        let still_forest = Graph::new(n_plus_1, chosen.iter().map(|f| (f.i(), f.j())))
            .map(|g| g.is_forest())
            .unwrap_or(false);
        if still_forest {
            trees_backtrack(pool, idx + 1, n, n_plus_1, chosen, out);
        }
        chosen.pop();
    }
}

/// All noncrossing spanning trees on `[n+1]`.
pub fn noncrossing_spanning_trees(n_plus_1: Vertex) -> Vec<Graph> {
    let mut pool = Vec::new();
    for i in 1..=n_plus_1 {
        for j in i + 1..=n_plus_1 {
            pool.push(Edge::new(i, j).expect("increasing pair"));
        }
    }
    let n = n_plus_1 as usize - 1;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    fn go(
        pool: &[Edge],
        from: usize,
        n: usize,
        n_plus_1: Vertex,
        chosen: &mut Vec<Edge>,
        out: &mut Vec<Graph>,
    ) {
        if chosen.len() == n {
            let g = Graph::new(n_plus_1, chosen.iter().map(|f| (f.i(), f.j()))).expect("valid");
            if g.is_spanning_tree() {
                out.push(g);
            }
            return;
        }
        if pool.len() - from < n - chosen.len() {
            return;
        }
        for idx in from..pool.len() {
            if !chosen.iter().all(|f| !pool[idx].crosses(f)) {
                continue;
            }
            chosen.push(pool[idx]);
            let still_forest = Graph::new(n_plus_1, chosen.iter().map(|f| (f.i(), f.j())))
                .map(|g| g.is_forest())
                .unwrap_or(false);
            if still_forest {
                go(pool, idx + 1, n, n_plus_1, chosen, out);
            }
            chosen.pop();
        }
    }
    go(&pool, 0, n, n_plus_1, &mut chosen, &mut out);
    out
}

/// A diagonal `(a, b)` of the convex `(n+2)`-gon with vertices `1..=n+2`
/// clockwise; not a side.
pub type Diagonal = (Vertex, Vertex);

/// Maps a noncrossing alternating forest on `[n+1]` with `k+1` edges
/// containing `(1, n+1)` to `k` noncrossing diagonals of the `(n+2)`-gon:
/// every edge `(i, j)` other than `(1, n+1)` becomes the diagonal `(i, j+1)`.
pub fn forest_to_diagonals(f: &Graph) -> Result<Vec<Diagonal>, EnumError> {
    let n_plus_1 = f.n_plus_1();
    let long = Edge::new(1, n_plus_1).map_err(GraphError::from)?;
    if !f.contains_edge(&long)
        || !f.is_noncrossing()
        || !f.is_alternating()
        || !f.is_forest()
    {
        return Err(EnumError::NotAdmissible);
    }
    Ok(f.edges()
        .filter(|e| *e != long)
        .map(|e| (e.i(), e.j() + 1))
        .collect())
}

/// Inverse of [`forest_to_diagonals`]: diagonals `(a, b)` with `a < b` of the
/// `(n+2)`-gon back to the forest with edges `(a, b-1)` plus `(1, n+1)`.
pub fn diagonals_to_forest(n_plus_1: Vertex, diagonals: &[Diagonal]) -> Result<Graph, EnumError> {
    let gon = n_plus_1 + 1;
    for &(a, b) in diagonals {
        let valid = a >= 1 && a < b && b <= gon && b - a >= 2 && !(a == 1 && b == gon);
        if !valid {
            return Err(EnumError::BadDiagonals);
        }
    }
    for (idx, &(a, b)) in diagonals.iter().enumerate() {
        for &(c, d) in &diagonals[idx + 1..] {
            let crossing = (a < c && c < b && b < d) || (c < a && a < d && d < b);
            if crossing {
                return Err(EnumError::BadDiagonals);
            }
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = diagonals.iter().map(|&(a, b)| (a, b - 1)).collect();
    edges.push((1, n_plus_1));
    let g = Graph::new(n_plus_1, edges)?;
    if !g.is_noncrossing() || !g.is_alternating() || !g.is_forest() {
        return Err(EnumError::NotAdmissible);
    }
    Ok(g)
}
