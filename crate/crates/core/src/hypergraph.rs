//! Hypergraph data model: validated construction, connectivity, induced
//! subhypergraphs, the edge intersection graph and the JSON document format.
//!
//! Vertices are the dense indices `0..n`, and `n` is limited to 64 so that a
//! vertex subset fits in a single `u64` mask. Edge subsets are also `u64`
//! masks over edge indices; every operation that enumerates edge subsets is
//! capped far below 64 edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bitmask over vertex indices.
pub type VertexSet = u64;
/// Bitmask over edge indices.
pub type EdgeSet = u64;

pub const MAX_VERTICES: usize = 64;

#[inline]
pub fn full_set(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the indices of the set bits of `mask`, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn set_from_indices(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// A finite simple hypergraph on the vertices `0..n`.
///
/// Edges are stored canonically: every edge is a strictly increasing list of
/// at least two vertices, and the edge list is sorted lexicographically with
/// no repeats. Edge indices used throughout the crate refer to this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    masks: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for mut edge in edges {
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange {
                    vertex,
                    num_vertices: n,
                });
            }
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!(
                    "edge {edge:?} repeats a vertex"
                )));
            }
            if edge.len() < 2 {
                return Err(Error::EdgeTooSmall(edge));
            }
            canonical.push(edge);
        }
        canonical.sort();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].clone()));
        }
        let masks = canonical.iter().map(|e| set_from_indices(e)).collect();
        Ok(Self {
            n,
            edges: canonical,
            masks,
        })
    }

    /// The hypergraph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Self {
            n,
            edges: Vec::new(),
            masks: Vec::new(),
        }
    }

    /// Builds from vertex masks that are already known to be valid edges.
    pub(crate) fn from_masks(n: usize, masks: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut edges: Vec<Vec<usize>> = masks.into_iter().map(|m| bits(m).collect()).collect();
        edges.sort();
        edges.dedup();
        let masks = edges.iter().map(|e| set_from_indices(e)).collect();
        Self { n, edges, masks }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_masks(&self) -> &[VertexSet] {
        &self.masks
    }

    pub fn vertex_set(&self) -> VertexSet {
        full_set(self.n)
    }

    /// Mask with every edge index set.
    pub fn all_edges(&self) -> EdgeSet {
        full_set(self.edges.len())
    }

    /// `Some(t)` iff there is at least one edge and all edges have size `t`.
    pub fn uniformity(&self) -> Option<usize> {
        let t = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == t).then_some(t)
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.masks.iter().filter(|&&m| m >> v & 1 == 1).count()
    }

    /// Maximum vertex degree `D`; zero for an edgeless hypergraph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// The spanning subhypergraph `(V, L)` keeping the edges selected by `subset`.
    pub fn spanning_subgraph(&self, subset: EdgeSet) -> Hypergraph {
        let keep: Vec<usize> = bits(subset).filter(|&i| i < self.edges.len()).collect();
        Self {
            n: self.n,
            edges: keep.iter().map(|&i| self.edges[i].clone()).collect(),
            masks: keep.iter().map(|&i| self.masks[i]).collect(),
        }
    }

    /// Edge mask of the edges contained in the vertex set `s`.
    pub fn edges_within(&self, s: VertexSet) -> EdgeSet {
        self.masks
            .iter()
            .enumerate()
            .filter(|(_, &m)| m & !s == 0)
            .fold(0, |acc, (i, _)| acc | (1u64 << i))
    }

    /// Induced subhypergraph on the vertex mask `s`, re-indexed to `0..|s|`.
    pub fn induced_by_mask(&self, s: VertexSet) -> Hypergraph {
        let index_map: Vec<usize> = bits(s & self.vertex_set()).collect();
        let mut position = [usize::MAX; MAX_VERTICES];
        for (new, &old) in index_map.iter().enumerate() {
            position[old] = new;
        }
        let masks = self.masks.iter().filter(|&&m| m & !s == 0).map(|&m| {
            bits(m).fold(0u64, |acc, v| acc | (1u64 << position[v]))
        });
        Hypergraph::from_masks(index_map.len(), masks)
    }
}

/// Induced subhypergraph on `s` together with the map from new to old vertex indices.
pub fn induced(h: &Hypergraph, s: &[usize]) -> (Hypergraph, Vec<usize>) {
    let mask = set_from_indices(s) & h.vertex_set();
    (h.induced_by_mask(mask), bits(mask).collect())
}

/// Minimal union-find over vertex indices with path halving.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<u8>,
    count: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u8).collect(),
            count: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb) as u8;
        self.count -= 1;
        true
    }

    /// Merges every vertex of `edge` into one class.
    pub fn union_mask(&mut self, edge: VertexSet) {
        let mut it = bits(edge);
        if let Some(first) = it.next() {
            for v in it {
                self.union(first, v);
            }
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

/// `c(E')` for an edge subset, together with its size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeSubset {
    pub mask: EdgeSet,
    pub size: usize,
    pub component_count: usize,
}

pub fn connected_components(h: &Hypergraph, mask: EdgeSet) -> EdgeSubset {
    let mut dsu = DisjointSets::new(h.n);
    for i in bits(mask) {
        dsu.union_mask(h.masks[i]);
    }
    EdgeSubset {
        mask,
        size: mask.count_ones() as usize,
        component_count: dsu.count(),
    }
}

/// Vertex sets of the components of `(V, E')`, ordered by smallest vertex.
pub fn component_sets(h: &Hypergraph, mask: EdgeSet) -> Vec<VertexSet> {
    let mut dsu = DisjointSets::new(h.n);
    for i in bits(mask) {
        dsu.union_mask(h.masks[i]);
    }
    let mut by_root = vec![0u64; h.n];
    for v in 0..h.n {
        by_root[dsu.find(v)] |= 1 << v;
    }
    by_root.into_iter().filter(|&m| m != 0).collect()
}

/// Whether the edge masks connect all of `vertices` (a single vertex is connected).
pub fn connects(vertices: VertexSet, edges: impl IntoIterator<Item = VertexSet>) -> bool {
    if vertices == 0 {
        return false;
    }
    let mut reached = 1u64 << vertices.trailing_zeros();
    let pending: Vec<VertexSet> = edges.into_iter().collect();
    let mut used = vec![false; pending.len()];
    loop {
        let mut grew = false;
        for (i, &e) in pending.iter().enumerate() {
            if !used[i] && e & reached != 0 {
                used[i] = true;
                if e & !reached != 0 {
                    reached |= e;
                    grew = true;
                }
            }
        }
        if !grew {
            return reached & vertices == vertices;
        }
    }
}

/// The graph on edge indices where two nodes are adjacent iff their edges meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    pub node_count: usize,
    pub adjacency: Vec<(usize, usize)>,
}

impl IntersectionGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.adjacency
            .iter()
            .filter(|&&(a, b)| a == node || b == node)
            .count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.node_count];
        for &(a, b) in &self.adjacency {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }
}

pub fn intersection_graph(h: &Hypergraph) -> IntersectionGraph {
    let m = h.masks.len();
    let mut adjacency = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if h.masks[i] & h.masks[j] != 0 {
                adjacency.push((i, j));
            }
        }
    }
    IntersectionGraph {
        node_count: m,
        adjacency,
    }
}

/// Wire form of a hypergraph.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphDoc {
    pub num_vertices: usize,
    pub edges: Vec<Vec<usize>>,
}

impl From<&Hypergraph> for HypergraphDoc {
    fn from(h: &Hypergraph) -> Self {
        Self {
            num_vertices: h.n,
            edges: h.edges.clone(),
        }
    }
}

impl TryFrom<HypergraphDoc> for Hypergraph {
    type Error = Error;

    fn try_from(doc: HypergraphDoc) -> Result<Self> {
        Hypergraph::new(doc.num_vertices, doc.edges)
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = HypergraphDoc::deserialize(d)?;
        Hypergraph::try_from(doc).map_err(serde::de::Error::custom)
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let doc: HypergraphDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    Hypergraph::try_from(doc)
}

/// Canonical compact JSON.
pub fn to_json(h: &Hypergraph) -> String {
    serde_json::to_string(&HypergraphDoc::from(h)).expect("hypergraph documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triples() -> Hypergraph {
        Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let h = parse_hypergraph(r#"{"num_vertices":3,"edges":[[0,1,2]]}"#).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges(), h.uniformity()), (3, 1, Some(3)));
        let g = parse_hypergraph(r#"{"num_vertices":2,"edges":[[0,1]]}"#).unwrap();
        assert_eq!(g.uniformity(), Some(2));
        let err = parse_hypergraph(r#"{"num_vertices":3,"edges":[[0,1],[0,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge(_)));
    }

    #[test]
    fn parse_rejects_bad_documents() {
        assert!(matches!(
            parse_hypergraph(r#"{"num_vertices":3,"edges":[[0,3]]}"#),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(
            parse_hypergraph(r#"{"num_vertices":3,"edges":[[1]]}"#),
            Err(Error::EdgeTooSmall(_))
        ));
        assert!(matches!(
            parse_hypergraph(r#"{"num_vertices":3,"edges":[[1,0],[0,1]]}"#),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(parse_hypergraph("[1,2]"), Err(Error::Malformed(_))));
        assert!(matches!(
            parse_hypergraph(r#"{"num_vertices":3}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_hypergraph(r#"{"num_vertices":3,"edges":[[1,1,2]]}"#),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn canonical_serialization() {
        let h = parse_hypergraph(r#"{"num_vertices":4,"edges":[[3,2,1],[1,0]]}"#).unwrap();
        assert_eq!(to_json(&h), r#"{"num_vertices":4,"edges":[[0,1],[1,2,3]]}"#);
    }

    #[test]
    fn components_examples() {
        let single = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(connected_components(&single, 0).component_count, 3);
        let h = two_triples();
        assert_eq!(connected_components(&h, 0b11).component_count, 1);
        assert_eq!(connected_components(&h, 0b01).component_count, 3);
        assert_eq!(component_sets(&h, 0b01), vec![0b00111, 0b01000, 0b10000]);
    }

    #[test]
    fn induced_examples() {
        let k3 = Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let (sub, map) = induced(&k3, &[0, 1]);
        assert_eq!(sub.edges(), &[vec![0, 1]]);
        assert_eq!(map, vec![0, 1]);

        let single = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(induced(&single, &[0, 1]).0.num_edges(), 0);

        let (sub, _) = induced(&two_triples(), &[0, 1, 2, 3]);
        assert_eq!(sub.edges(), &[vec![0, 1, 2]]);

        let (sub, map) = induced(&two_triples(), &[2, 3, 4]);
        assert_eq!(sub.edges(), &[vec![0, 1, 2]]);
        assert_eq!(map, vec![2, 3, 4]);

        let (empty, _) = induced(&two_triples(), &[]);
        assert_eq!((empty.num_vertices(), empty.num_edges()), (0, 0));
    }

    #[test]
    fn intersection_graph_examples() {
        let g = intersection_graph(&two_triples());
        assert_eq!(g.adjacency, vec![(0, 1)]);

        let cycle = Hypergraph::new(
            4,
            vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 0], vec![3, 0, 1]],
        )
        .unwrap();
        let g = intersection_graph(&cycle);
        assert_eq!(g.adjacency.len(), 6);
        assert_eq!(g.max_degree(), 3);

        assert!(intersection_graph(&Hypergraph::empty(4)).adjacency.is_empty());
    }

    #[test]
    fn degrees_and_uniformity() {
        let h = two_triples();
        assert_eq!(h.max_degree(), 2);
        assert_eq!(h.degree(0), 1);
        assert_eq!(Hypergraph::empty(3).uniformity(), None);
        let mixed = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2, 3]]).unwrap();
        assert_eq!(mixed.uniformity(), None);
    }

    #[test]
    fn connects_handles_isolated_vertices() {
        assert!(connects(0b1, std::iter::empty()));
        assert!(!connects(0b11, std::iter::empty()));
        assert!(connects(0b111, [0b011, 0b110]));
        assert!(!connects(0b1111, [0b0011, 0b0110]));
    }

    #[test]
    fn too_many_vertices_rejected() {
        assert!(matches!(Hypergraph::new(65, vec![]), Err(Error::TooManyVertices(65))));
    }
}
