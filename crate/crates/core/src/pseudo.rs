//! The recursive pseudo-component decomposition of a noncrossing tree: the
//! `1 -> n+1` path, then the pieces of the remainder split at path vertices,
//! each flagged left/right by which edges of the host tree are absent.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Edge, Graph, GraphError, Vertex};

/// One piece of the decomposition: a path with endpoints `span = [lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoComponent {
    pub edge_set: BTreeSet<Edge>,
    pub span: (Vertex, Vertex),
    /// No edge `(s, lo)` with `s < lo` in the host tree.
    pub is_left: bool,
    /// No edge `(hi, s)` with `hi < s` in the host tree.
    pub is_right: bool,
}

/// Decomposes a noncrossing tree containing the vertices `1` and `n+1`.
/// The edge sets of the result partition the edge set of the tree.
pub fn pseudo_components(t: &Graph) -> Result<Vec<PseudoComponent>, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    if !t.is_noncrossing() {
        return Err(GraphError::Crossing);
    }
    let support = t.support();
    for v in [1, t.n_plus_1()] {
        if !support.contains(&v) {
            return Err(GraphError::MissingVertex(v));
        }
    }
    let mut out = Vec::new();
    decompose(t.edge_set().clone(), 1, t.n_plus_1(), t, &mut out)?;
    Ok(out)
}

fn decompose(
    edges: BTreeSet<Edge>,
    lo: Vertex,
    hi: Vertex,
    host: &Graph,
    out: &mut Vec<PseudoComponent>,
) -> Result<(), GraphError> {
    let piece = Graph::from_edge_set(host.n_plus_1(), edges.clone())?;
    let path: BTreeSet<Edge> = piece
        .tree_path(lo, hi)
        .ok_or(GraphError::NotATree)?
        .into_iter()
        .collect();
    let path_vertices: BTreeSet<Vertex> = path.iter().flat_map(|e| [e.i(), e.j()]).collect();
    out.push(PseudoComponent {
        edge_set: path.clone(),
        span: (lo, hi),
        is_left: !host.edges().any(|e| e.j() == lo),
        is_right: !host.edges().any(|e| e.i() == hi),
    });

    let rest: BTreeSet<Edge> = edges.difference(&path).copied().collect();
    for component in undirected_components(&rest) {
        let vertices: BTreeSet<Vertex> = component.iter().flat_map(|e| [e.i(), e.j()]).collect();
        let on_path: Vec<Vertex> = vertices.intersection(&path_vertices).copied().collect();
        // in a tree each residual component meets the path in exactly one vertex
        debug_assert_eq!(on_path.len(), 1);
        let v = on_path[0];
        if v == *vertices.first().expect("nonempty") || v == *vertices.last().expect("nonempty") {
            let (min, max) = (*vertices.first().unwrap(), *vertices.last().unwrap());
            decompose(component, min, max, host, out)?;
            continue;
        }
        // v lies strictly inside: split at v, merging the branches below v into
        // one tree (v maximal) and the branches above into another (v minimal)
        let mut below: BTreeSet<Edge> = BTreeSet::new();
        let mut above: BTreeSet<Edge> = BTreeSet::new();
        for branch in branches_at(&component, v) {
            let others: BTreeSet<Vertex> = branch
                .iter()
                .flat_map(|e| [e.i(), e.j()])
                .filter(|&w| w != v)
                .collect();
            if others.iter().all(|&w| w < v) {
                below.extend(branch);
            } else if others.iter().all(|&w| w > v) {
                above.extend(branch);
            } else {
                // impossible for noncrossing trees
                return Err(GraphError::Crossing);
            }
        }
        for part in [below, above] {
            if part.is_empty() {
                continue;
            }
            let vs: BTreeSet<Vertex> = part.iter().flat_map(|e| [e.i(), e.j()]).collect();
            decompose(part, *vs.first().unwrap(), *vs.last().unwrap(), host, out)?;
        }
    }
    Ok(())
}

/// Connected components of an undirected edge set, as edge sets.
fn undirected_components(edges: &BTreeSet<Edge>) -> Vec<BTreeSet<Edge>> {
    let mut adj: BTreeMap<Vertex, Vec<Edge>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.i()).or_default().push(*e);
        adj.entry(e.j()).or_default().push(*e);
    }
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut components = Vec::new();
    for &start in adj.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut component = BTreeSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for e in adj.get(&v).into_iter().flatten() {
                component.insert(*e);
                let w = if e.i() == v { e.j() } else { e.i() };
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        components.push(component);
    }
    components
}

/// The subtrees of `edges` hanging at `v`: one per component of `edges - v`,
/// with the edges back to `v` included.
fn branches_at(edges: &BTreeSet<Edge>, v: Vertex) -> Vec<BTreeSet<Edge>> {
    let without_v: BTreeSet<Edge> = edges
        .iter()
        .filter(|e| e.i() != v && e.j() != v)
        .copied()
        .collect();
    let mut branches = undirected_components(&without_v);
    let mut lone: Vec<BTreeSet<Edge>> = Vec::new();
    for e in edges.iter().filter(|e| e.i() == v || e.j() == v) {
        let w = if e.i() == v { e.j() } else { e.i() };
        if let Some(branch) = branches.iter_mut().find(|b| {
            b.iter().any(|f| f.i() == w || f.j() == w)
        }) {
            branch.insert(*e);
        } else {
            lone.push(BTreeSet::from([*e]));
        }
    }
    branches.extend(lone);
    branches.retain(|b| !b.is_empty());
    branches
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: Vertex, edges: &[(Vertex, Vertex)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    fn set(edges: &[(Vertex, Vertex)]) -> BTreeSet<Edge> {
        edges.iter().map(|&(i, j)| Edge::new(i, j).unwrap()).collect()
    }

    #[test]
    fn figure_tree_decomposition() {
        let t = g(8, &[(1, 5), (5, 8), (2, 5), (3, 4), (4, 5), (5, 6), (6, 7)]);
        let ps = pseudo_components(&t).unwrap();
        let find = |edges: &[(Vertex, Vertex)]| {
            ps.iter()
                .find(|c| c.edge_set == set(edges))
                .unwrap_or_else(|| panic!("missing component {edges:?}"))
        };

        assert_eq!(ps.len(), 4);
        let top = find(&[(1, 5), (5, 8)]);
        assert_eq!(top.span, (1, 8));
        assert!(top.is_left && top.is_right);

        let two_five = find(&[(2, 5)]);
        assert_eq!(two_five.span, (2, 5));
        assert!(two_five.is_left && !two_five.is_right);

        let three_five = find(&[(3, 4), (4, 5)]);
        assert_eq!(three_five.span, (3, 5));
        assert!(three_five.is_left && !three_five.is_right);

        let five_seven = find(&[(5, 6), (6, 7)]);
        assert_eq!(five_seven.span, (5, 7));
        assert!(!five_seven.is_left && five_seven.is_right);
    }

    #[test]
    fn path_is_its_own_component() {
        let p = Graph::path(5);
        let ps = pseudo_components(&p).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].edge_set, p.edge_set().clone());
        assert!(ps[0].is_left && ps[0].is_right);
    }

    #[test]
    fn star_decomposition() {
        let star = g(4, &[(1, 4), (2, 4), (3, 4)]);
        let ps = pseudo_components(&star).unwrap();
        let edge_sets: Vec<BTreeSet<Edge>> = ps.iter().map(|c| c.edge_set.clone()).collect();
        assert_eq!(ps.len(), 3);
        assert!(edge_sets.contains(&set(&[(1, 4)])));
        assert!(edge_sets.contains(&set(&[(2, 4)])));
        assert!(edge_sets.contains(&set(&[(3, 4)])));
        // every component of the star is both left and right: the host has no
        // edge into a span minimum nor out of a span maximum (all heads are 4)
        for c in &ps {
            assert!(c.is_left, "{c:?}");
            assert!(c.is_right, "{c:?}");
        }
    }

    #[test]
    fn edge_sets_partition_the_tree() {
        for t in [
            g(8, &[(1, 5), (5, 8), (2, 5), (3, 4), (4, 5), (5, 6), (6, 7)]),
            Graph::path(6),
            g(4, &[(1, 4), (2, 4), (3, 4)]),
            g(5, &[(1, 2), (2, 5), (3, 4), (4, 5)]),
        ] {
            let ps = pseudo_components(&t).unwrap();
            let mut all = BTreeSet::new();
            let mut total = 0;
            for c in &ps {
                total += c.edge_set.len();
                all.extend(c.edge_set.iter().copied());
            }
            assert_eq!(total, t.edge_count());
            assert_eq!(all, t.edge_set().clone());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(pseudo_components(&g(3, &[(1, 2), (2, 3), (1, 3)])).is_err());
        assert!(pseudo_components(&g(4, &[(1, 3), (2, 4), (1, 2)])).is_err());
        assert!(pseudo_components(&g(4, &[(2, 3), (3, 4)])).is_err());
    }
}
