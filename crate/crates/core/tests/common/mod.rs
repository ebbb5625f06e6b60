//! Seeded graph and substructure generators shared by the integration tests.

#![allow(dead_code)]

use cyclograph::{OrientedGraph, RootParam, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(order: u32) -> RootParam {
    RootParam::primitive(order).unwrap()
}

pub fn param(order: u32, power: u32) -> RootParam {
    RootParam::new(order, power).unwrap()
}

/// Parameters the oracle tests rotate through.
pub fn params() -> Vec<RootParam> {
    vec![
        RootParam::ONE,
        w(2),
        w(3),
        w(4),
        w(5),
        param(5, 2),
        w(6),
        w(7),
        param(8, 3),
        w(12),
    ]
}

/// Random oriented graph on `1..=n` with at most `max_edges` arcs.
pub fn random_graph(rng: &mut impl Rng, n: usize, max_edges: usize) -> OrientedGraph {
    let mut pairs: Vec<(VertexId, VertexId)> = (1..=n as VertexId)
        .flat_map(|a| (a + 1..=n as VertexId).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    let m = rng.random_range(0..=max_edges.min(pairs.len()));
    let arcs: Vec<_> = pairs
        .into_iter()
        .take(m)
        .map(|(a, b)| if rng.random_bool(0.5) { (a, b) } else { (b, a) })
        .collect();
    let vertices: Vec<VertexId> = (1..=n as VertexId).collect();
    OrientedGraph::new(&vertices, &arcs).unwrap()
}

/// `count` graphs with 4 to 7 vertices and at most 10 edges.
pub fn corpus(count: usize, seed: u64) -> Vec<OrientedGraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.random_range(4..=7);
            random_graph(&mut r, n, 10)
        })
        .collect()
}

/// Every subset of `0..n` with at most `max` elements, smallest first.
pub fn subsets_up_to(items: &[VertexId], max: usize) -> Vec<Vec<VertexId>> {
    use itertools::Itertools;
    (0..=max.min(items.len()))
        .flat_map(|k| items.iter().copied().combinations(k))
        .collect()
}

/// A substructure described by arcs, the vertex set `V'` and all arcs used
/// as `E'`.
pub struct Built {
    pub graph: OrientedGraph,
    pub vset: Vec<VertexId>,
    pub eset: Vec<usize>,
}

/// Grows one connected piece. Arcs get random directions.
struct Builder {
    arcs: Vec<(VertexId, VertexId)>,
    vset: Vec<VertexId>,
    next: VertexId,
}

impl Builder {
    fn new() -> Self {
        Self {
            arcs: Vec::new(),
            vset: Vec::new(),
            next: 1,
        }
    }

    fn fresh(&mut self) -> VertexId {
        let v = self.next;
        self.next += 1;
        v
    }

    fn arc(&mut self, rng: &mut impl Rng, a: VertexId, b: VertexId) {
        self.arcs.push(if rng.random_bool(0.5) { (a, b) } else { (b, a) });
    }

    /// A `k`-cycle with exactly `g` edges against the walk (positions
    /// shuffled), then `pendants` random tree vertices hung off it.
    fn unicyclic(&mut self, rng: &mut impl Rng, k: usize, g: usize, pendants: usize) {
        let ring: Vec<VertexId> = (0..k).map(|_| self.fresh()).collect();
        let mut against = vec![true; g];
        against.extend(vec![false; k - g]);
        against.shuffle(rng);
        for i in 0..k {
            let (a, b) = (ring[i], ring[(i + 1) % k]);
            self.arcs.push(if against[i] { (b, a) } else { (a, b) });
        }
        let mut piece = ring;
        for _ in 0..pendants {
            let anchor = piece[rng.random_range(0..piece.len())];
            let v = self.fresh();
            self.arc(rng, anchor, v);
            piece.push(v);
        }
        self.vset.extend(piece);
    }

    /// A random tree on `size` vertices of `V'` plus one edge to a vertex
    /// outside `V'`.
    fn rootless_tree(&mut self, rng: &mut impl Rng, size: usize) {
        let mut piece = vec![self.fresh()];
        for _ in 1..size {
            let anchor = piece[rng.random_range(0..piece.len())];
            let v = self.fresh();
            self.arc(rng, anchor, v);
            piece.push(v);
        }
        let anchor = piece[rng.random_range(0..piece.len())];
        let root = self.fresh();
        self.arc(rng, anchor, root);
        self.vset.extend(piece);
    }

    fn finish(self) -> Built {
        let graph = OrientedGraph::from_arcs(&self.arcs).unwrap();
        let mut vset = self.vset;
        vset.sort_unstable();
        let eset = (0..graph.edge_count()).collect();
        Built { graph, vset, eset }
    }
}

/// Disjoint unicyclic components with the given `(k, g)` (random pendant
/// trees attached) next to `forests` random rootless trees.
pub fn all_regular(rng: &mut impl Rng, cycles: &[(usize, usize)], forests: usize) -> Built {
    let mut b = Builder::new();
    for &(k, g) in cycles {
        let pendants = rng.random_range(0..=2);
        b.unicyclic(rng, k, g, pendants);
    }
    for _ in 0..forests {
        let size = rng.random_range(1..=3);
        b.rootless_tree(rng, size);
    }
    b.finish()
}

/// A random tree on `1..=n` as arcs with random directions.
pub fn random_tree_arcs(rng: &mut impl Rng, n: usize) -> Vec<(VertexId, VertexId)> {
    (2..=n as VertexId)
        .map(|v| {
            let u = rng.random_range(1..v);
            if rng.random_bool(0.5) {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect()
}
