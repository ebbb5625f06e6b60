//! Oriented graphs and their substructures.
//!
//! A substructure pairs a vertex subset with an edge subset whose edges may
//! point outside the vertex subset. Vertices and edges are addressed
//! internally by their position in the parent graph, which fixes the matrix
//! layout used elsewhere.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

/// Externally supplied vertex label.
pub type VertexId = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: usize,
    pub tail: VertexId,
    pub head: VertexId,
}

/// A loopless directed graph without multiple arcs or digons.
#[derive(Debug, Clone)]
pub struct OrientedGraph {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    edges: Vec<Edge>,
    ends: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl OrientedGraph {
    /// Builds a graph from an explicit vertex list and arcs `(tail, head)`.
    /// Edge ids are the positions in `arcs`.
    pub fn new(vertices: &[VertexId], arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            if index.insert(v, i).is_some() {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(arcs.len());
        let mut ends = Vec::with_capacity(arcs.len());
        let mut incident = vec![Vec::new(); vertices.len()];
        for (id, &(tail, head)) in arcs.iter().enumerate() {
            if tail == head {
                return Err(Error::Loop { tail, head });
            }
            let t = *index.get(&tail).ok_or(Error::UnknownVertex(tail))?;
            let h = *index.get(&head).ok_or(Error::UnknownVertex(head))?;
            if seen.contains(&(head, tail)) {
                return Err(Error::Digon { tail, head });
            }
            if !seen.insert((tail, head)) {
                return Err(Error::MultipleArc { tail, head });
            }
            edges.push(Edge { id, tail, head });
            ends.push((t, h));
            incident[t].push(id);
            incident[h].push(id);
        }
        Ok(Self {
            vertices: vertices.to_vec(),
            index,
            edges,
            ends,
            incident,
        })
    }

    /// Builds a graph whose vertices are the arc endpoints in order of first
    /// appearance.
    pub fn from_arcs(arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut seen = HashSet::new();
        for &(u, v) in arcs {
            for w in [u, v] {
                if seen.insert(w) {
                    vertices.push(w);
                }
            }
        }
        Self::new(&vertices, arcs)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, index: usize) -> VertexId {
        self.vertices[index]
    }

    pub fn index_of(&self, v: VertexId) -> Result<usize> {
        self.index.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    /// Positions of the given vertices, sorted and deduplicated.
    pub fn vertex_indices(&self, ids: &[VertexId]) -> Result<Vec<usize>> {
        let mut out = ids
            .iter()
            .map(|&v| self.index_of(v))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `(tail, head)` positions of an edge.
    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.ends[edge]
    }

    pub fn incident_edges(&self, vertex: usize) -> &[usize] {
        &self.incident[vertex]
    }

    /// Degree in the underlying undirected graph.
    pub fn degree(&self, vertex: usize) -> usize {
        self.incident[vertex].len()
    }
}

/// `(V', E')` with `V'` a vertex subset and `E'` an edge subset of the
/// parent graph; edges of `E'` need not have their endpoints in `V'`.
#[derive(Debug, Clone)]
pub struct Substructure<'g> {
    graph: &'g OrientedGraph,
    vset: Vec<usize>,
    eset: Vec<usize>,
}

impl<'g> Substructure<'g> {
    /// From vertex ids and edge ids.
    pub fn new(graph: &'g OrientedGraph, vertices: &[VertexId], edges: &[usize]) -> Result<Self> {
        let vset = graph.vertex_indices(vertices)?;
        if let Some(&bad) = edges.iter().find(|&&e| e >= graph.edge_count()) {
            return Err(Error::UnknownEdge(bad));
        }
        Ok(Self::from_indices(graph, vset, edges.to_vec()))
    }

    /// From vertex positions and edge ids. Both are sorted and deduplicated.
    pub fn from_indices(graph: &'g OrientedGraph, mut vset: Vec<usize>, mut eset: Vec<usize>) -> Self {
        vset.sort_unstable();
        vset.dedup();
        eset.sort_unstable();
        eset.dedup();
        debug_assert!(vset.iter().all(|&v| v < graph.vertex_count()));
        debug_assert!(eset.iter().all(|&e| e < graph.edge_count()));
        Self { graph, vset, eset }
    }

    /// The whole graph `(V, E)`.
    pub fn whole(graph: &'g OrientedGraph) -> Self {
        Self::from_indices(
            graph,
            (0..graph.vertex_count()).collect(),
            (0..graph.edge_count()).collect(),
        )
    }

    pub fn graph(&self) -> &'g OrientedGraph {
        self.graph
    }

    pub fn vertex_indices(&self) -> &[usize] {
        &self.vset
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        self.vset.iter().map(|&v| self.graph.vertex_id(v)).collect()
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.eset
    }

    pub fn is_regular(&self) -> bool {
        self.vset.len() == self.eset.len()
    }

    fn membership(&self) -> Vec<bool> {
        let mut inside = vec![false; self.graph.vertex_count()];
        for &v in &self.vset {
            inside[v] = true;
        }
        inside
    }

    /// Number of edges of `E'` touching `vertex` (a position).
    pub fn degree(&self, vertex: usize) -> usize {
        self.eset
            .iter()
            .filter(|&&e| {
                let (t, h) = self.graph.endpoints(e);
                t == vertex || h == vertex
            })
            .count()
    }

    /// Partitions `V'` by connectivity over edges with both endpoints in
    /// `V'`. Edges with one endpoint in `V'` join that endpoint's component;
    /// edges with no endpoint in `V'` become degenerate pseudo-components,
    /// listed last.
    pub fn components(&self) -> Vec<Component<'g>> {
        let inside = self.membership();
        let n = self.graph.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &e in &self.eset {
            let (t, h) = self.graph.endpoints(e);
            if inside[t] && inside[h] {
                let (a, b) = (find(&mut parent, t), find(&mut parent, h));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut comps: Vec<Component<'g>> = Vec::new();
        for &v in &self.vset {
            let root = find(&mut parent, v);
            let i = *slot.entry(root).or_insert_with(|| {
                comps.push(Component {
                    graph: self.graph,
                    vertices: Vec::new(),
                    edges: Vec::new(),
                });
                comps.len() - 1
            });
            comps[i].vertices.push(v);
        }
        let mut degenerate = Vec::new();
        for &e in &self.eset {
            let (t, h) = self.graph.endpoints(e);
            let anchor = if inside[t] {
                Some(t)
            } else if inside[h] {
                Some(h)
            } else {
                None
            };
            match anchor {
                Some(v) => {
                    let root = find(&mut parent, v);
                    comps[slot[&root]].edges.push(e);
                }
                None => degenerate.push(Component {
                    graph: self.graph,
                    vertices: Vec::new(),
                    edges: vec![e],
                }),
            }
        }
        comps.extend(degenerate);
        comps
    }

    /// Every component is a rootless tree or unicyclic, and no edge misses
    /// `V'` entirely.
    pub fn is_all_regular(&self) -> bool {
        self.components().iter().all(|c| {
            matches!(
                c.classify(),
                ComponentClass::RootlessTree | ComponentClass::Unicyclic { .. }
            )
        })
    }

    /// Repeatedly strips a pendant vertex together with its only edge, as
    /// long as that edge leads to another vertex of `V'`.
    pub fn pendant_reduce(&self) -> Substructure<'g> {
        let mut inside = self.membership();
        let mut alive_edge: HashSet<usize> = self.eset.iter().copied().collect();
        let mut degree = vec![0usize; self.graph.vertex_count()];
        for &e in &self.eset {
            let (t, h) = self.graph.endpoints(e);
            degree[t] += 1;
            degree[h] += 1;
        }
        let mut stack: Vec<usize> = self.vset.iter().copied().filter(|&v| degree[v] == 1).collect();
        while let Some(v) = stack.pop() {
            if !inside[v] || degree[v] != 1 {
                continue;
            }
            let e = *self
                .graph
                .incident_edges(v)
                .iter()
                .find(|e| alive_edge.contains(e))
                .expect("degree-1 vertex has a live edge");
            let (t, h) = self.graph.endpoints(e);
            let other = if t == v { h } else { t };
            if !inside[other] {
                continue;
            }
            inside[v] = false;
            alive_edge.remove(&e);
            degree[v] -= 1;
            degree[other] -= 1;
            if degree[other] == 1 {
                stack.push(other);
            }
        }
        Substructure::from_indices(
            self.graph,
            self.vset.iter().copied().filter(|&v| inside[v]).collect(),
            alive_edge.into_iter().collect(),
        )
    }
}

/// What a connected component of a substructure looks like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentClass {
    /// `|V_i| = |E_i|` with an edge leaving `V_i`.
    RootlessTree,
    /// A connected subgraph with exactly one cycle, of length `k` with `g`
    /// edges against its majority direction.
    Unicyclic { k: usize, g: usize },
    /// An ordinary tree, `|V_i| = |E_i| + 1`.
    NormalTree,
    /// Any other vertex/edge balance.
    Irregular,
    /// An edge with neither endpoint in `V'`.
    DegenerateEdge,
}

/// The unique cycle of a unicyclic component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleInfo {
    /// Cycle vertices in traversal order, starting from the earliest one.
    pub vertices: Vec<VertexId>,
    pub k: usize,
    pub g: usize,
}

#[derive(Debug, Clone)]
pub struct Component<'g> {
    graph: &'g OrientedGraph,
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl<'g> Component<'g> {
    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        self.vertices.iter().map(|&v| self.graph.vertex_id(v)).collect()
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edges
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.is_empty()
    }

    fn has_leaving_edge(&self) -> bool {
        self.edges.iter().any(|&e| {
            let (t, h) = self.graph.endpoints(e);
            !(self.vertices.contains(&t) && self.vertices.contains(&h))
        })
    }

    pub fn classify(&self) -> ComponentClass {
        if self.is_degenerate() {
            return ComponentClass::DegenerateEdge;
        }
        let (nv, ne) = (self.vertices.len(), self.edges.len());
        if nv != ne {
            return if nv == ne + 1 {
                ComponentClass::NormalTree
            } else {
                ComponentClass::Irregular
            };
        }
        if self.has_leaving_edge() {
            return ComponentClass::RootlessTree;
        }
        match self.find_cycle() {
            Ok(c) => ComponentClass::Unicyclic { k: c.k, g: c.g },
            Err(_) => ComponentClass::Irregular,
        }
    }

    /// Peels degree-1 vertices until only the cycle is left, then walks it
    /// once and counts edges against the walk. `g` is reported as the
    /// minority count.
    pub fn find_cycle(&self) -> Result<CycleInfo> {
        if self.is_degenerate() || self.has_leaving_edge() {
            return Err(Error::NoCycle);
        }
        let mut degree: HashMap<usize, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &e in &self.edges {
            let (t, h) = self.graph.endpoints(e);
            *degree.get_mut(&t).unwrap() += 1;
            *degree.get_mut(&h).unwrap() += 1;
        }
        let mut alive: HashSet<usize> = self.edges.iter().copied().collect();
        let mut stack: Vec<usize> = self.vertices.iter().copied().filter(|v| degree[v] == 1).collect();
        while let Some(v) = stack.pop() {
            if degree[&v] != 1 {
                continue;
            }
            let e = *self
                .graph
                .incident_edges(v)
                .iter()
                .find(|e| alive.contains(e))
                .expect("degree-1 vertex has a live edge");
            alive.remove(&e);
            let (t, h) = self.graph.endpoints(e);
            let other = if t == v { h } else { t };
            *degree.get_mut(&v).unwrap() -= 1;
            let d = degree.get_mut(&other).unwrap();
            *d -= 1;
            if *d == 1 {
                stack.push(other);
            }
        }
        let mut remaining: Vec<usize> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| degree[v] > 0)
            .collect();
        remaining.sort_unstable();
        if remaining.len() < 3 || remaining.iter().any(|v| degree[v] != 2) {
            return Err(Error::NoCycle);
        }
        let start = remaining[0];
        let mut order = vec![start];
        let mut against = 0usize;
        let mut current = start;
        let mut came_by: Option<usize> = None;
        loop {
            let e = *self
                .graph
                .incident_edges(current)
                .iter()
                .find(|&&e| alive.contains(&e) && Some(e) != came_by)
                .ok_or(Error::NoCycle)?;
            let (t, h) = self.graph.endpoints(e);
            let next = if t == current {
                h
            } else {
                against += 1;
                t
            };
            came_by = Some(e);
            current = next;
            if current == start {
                break;
            }
            order.push(current);
            if order.len() > remaining.len() {
                return Err(Error::NoCycle);
            }
        }
        if order.len() != remaining.len() {
            return Err(Error::NoCycle);
        }
        let k = order.len();
        Ok(CycleInfo {
            vertices: order.iter().map(|&v| self.graph.vertex_id(v)).collect(),
            k,
            g: against.min(k - against),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The five-vertex example graph with edges 1->2, 1->3, 2->4, 3->4,
    /// 4->5, 2->5.
    fn example() -> OrientedGraph {
        OrientedGraph::from_arcs(&[(1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (2, 5)]).unwrap()
    }

    fn edge(g: &OrientedGraph, t: VertexId, h: VertexId) -> usize {
        g.edges().iter().find(|e| e.tail == t && e.head == h).unwrap().id
    }

    #[test]
    fn rejects_invalid_graphs() {
        assert!(matches!(OrientedGraph::from_arcs(&[(1, 1)]), Err(Error::Loop { .. })));
        assert!(matches!(
            OrientedGraph::from_arcs(&[(1, 2), (1, 2)]),
            Err(Error::MultipleArc { .. })
        ));
        assert!(matches!(
            OrientedGraph::from_arcs(&[(1, 2), (2, 1)]),
            Err(Error::Digon { .. })
        ));
        assert!(matches!(
            OrientedGraph::new(&[1, 2], &[(1, 3)]),
            Err(Error::UnknownVertex(3))
        ));
        assert!(matches!(OrientedGraph::new(&[1, 1], &[]), Err(Error::DuplicateVertex(1))));
    }

    #[test]
    fn edge_leaving_vertex_set_joins_its_component() {
        let g = example();
        let sub = Substructure::new(&g, &[2, 4], &[edge(&g, 2, 4), edge(&g, 4, 5)]).unwrap();
        let comps = sub.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].vertex_ids(), vec![2, 4]);
        assert_eq!(comps[0].edge_ids().len(), 2);
        assert_eq!(comps[0].classify(), ComponentClass::RootlessTree);
    }

    #[test]
    fn empty_vertex_set_has_no_components() {
        let g = example();
        assert!(Substructure::new(&g, &[], &[]).unwrap().components().is_empty());
    }

    #[test]
    fn edge_outside_vertex_set_is_degenerate() {
        let g = example();
        let sub = Substructure::new(&g, &[1, 3], &[edge(&g, 4, 5)]).unwrap();
        let comps = sub.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].vertex_ids(), vec![1]);
        assert_eq!(comps[1].vertex_ids(), vec![3]);
        assert!(comps[2].is_degenerate());
        assert_eq!(comps[2].classify(), ComponentClass::DegenerateEdge);
        assert!(!sub.is_all_regular());
    }

    #[test]
    fn subgraph_edge_is_normal_tree_and_pair_with_outside_edge_is_rootless() {
        let g = example();
        let e13 = edge(&g, 1, 3);
        let sub = Substructure::new(&g, &[1, 3], &[e13]).unwrap();
        assert_eq!(sub.components()[0].classify(), ComponentClass::NormalTree);
        let sub = Substructure::new(&g, &[1], &[e13]).unwrap();
        assert_eq!(sub.components()[0].classify(), ComponentClass::RootlessTree);
        assert!(sub.is_all_regular());
    }

    #[test]
    fn classification() {
        let tri = OrientedGraph::from_arcs(&[(1, 2), (2, 3), (3, 1)]).unwrap();
        let whole = Substructure::whole(&tri);
        assert_eq!(whole.components()[0].classify(), ComponentClass::Unicyclic { k: 3, g: 0 });
        let path = OrientedGraph::from_arcs(&[(1, 2), (2, 3)]).unwrap();
        assert_eq!(
            Substructure::whole(&path).components()[0].classify(),
            ComponentClass::NormalTree
        );
        let two_cycles =
            OrientedGraph::from_arcs(&[(1, 2), (2, 3), (3, 1), (1, 4), (4, 3)]).unwrap();
        assert_eq!(
            Substructure::whole(&two_cycles).components()[0].classify(),
            ComponentClass::Irregular
        );
    }

    #[test]
    fn cycle_orientation_counts() {
        let tri = OrientedGraph::from_arcs(&[(1, 2), (2, 3), (3, 1)]).unwrap();
        let c = Substructure::whole(&tri).components()[0].find_cycle().unwrap();
        assert_eq!((c.k, c.g), (3, 0));
        assert_eq!(c.vertices, vec![1, 2, 3]);

        let tri = OrientedGraph::from_arcs(&[(1, 2), (2, 3), (1, 3)]).unwrap();
        let c = Substructure::whole(&tri).components()[0].find_cycle().unwrap();
        assert_eq!((c.k, c.g), (3, 1));

        // walking 1,2,3,4 only 4->3 runs backwards
        let sq = OrientedGraph::from_arcs(&[(1, 2), (2, 3), (4, 3), (4, 1)]).unwrap();
        let c = Substructure::whole(&sq).components()[0].find_cycle().unwrap();
        assert_eq!((c.k, c.g), (4, 1));

        let sq = OrientedGraph::from_arcs(&[(1, 2), (3, 2), (3, 4), (1, 4)]).unwrap();
        let c = Substructure::whole(&sq).components()[0].find_cycle().unwrap();
        assert_eq!((c.k, c.g), (4, 2));
    }

    #[test]
    fn cycle_with_tails() {
        let g = OrientedGraph::from_arcs(&[(1, 2), (2, 3), (3, 1), (3, 4), (5, 4), (6, 1)]).unwrap();
        let sub = Substructure::whole(&g);
        let comps = sub.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].classify(), ComponentClass::Unicyclic { k: 3, g: 0 });
        let bare = sub.pendant_reduce();
        assert_eq!(bare.vertex_ids(), vec![1, 2, 3]);
        assert_eq!(bare.edge_ids(), &[0, 1, 2]);
        assert_eq!(bare.pendant_reduce().edge_ids(), bare.edge_ids());
    }

    #[test]
    fn find_cycle_rejects_trees() {
        let path = OrientedGraph::from_arcs(&[(1, 2), (2, 3)]).unwrap();
        let sub = Substructure::from_indices(&path, vec![0, 1], vec![0, 1]);
        assert!(matches!(sub.components()[0].find_cycle(), Err(Error::NoCycle)));
    }

    #[test]
    fn rootless_tree_reduces_to_one_dangling_edge() {
        let g = OrientedGraph::from_arcs(&[(1, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let sub = Substructure::new(&g, &[1, 2, 3, 4], &[0, 1, 2, 3]).unwrap();
        assert_eq!(sub.components()[0].classify(), ComponentClass::RootlessTree);
        let reduced = sub.pendant_reduce();
        assert_eq!(reduced.vertex_ids(), vec![4]);
        assert_eq!(reduced.edge_ids(), &[3]);
    }

    #[test]
    fn all_regular_predicate() {
        let g = OrientedGraph::from_arcs(&[(1, 2), (2, 3), (3, 1), (4, 5)]).unwrap();
        // triangle plus rootless tree {4} with edge 4->5
        let sub = Substructure::new(&g, &[1, 2, 3, 4], &[0, 1, 2, 3]).unwrap();
        assert!(sub.is_all_regular());
        // triangle plus isolated 4 and 5 joined: normal tree
        let sub = Substructure::new(&g, &[1, 2, 3, 4, 5], &[0, 1, 2, 3]).unwrap();
        assert!(!sub.is_all_regular());
    }
}
