//! The hypergraphic (circuit) matroid on the edge set of a hypergraph.
//!
//! Independence is defined combinatorially: an edge set is a hyperforest when
//! no nonempty subset `E''` forms a hypercircuit on the vertices it covers.
//! The rank is computed from the partition formula
//! `r(Z) = min_P |V| - |P| + e_Z(P)`; [`rank_oracle_bruteforce`] recomputes it
//! from the hyperforest definition so the two can be compared.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_cap, Error, Result};
use crate::hypergraph::{bits, connects, full_set, EdgeSet, Hypergraph, VertexSet};
use crate::partition::{crossing_count, crosses, for_each_partition};
use crate::Caps;

/// `Γ(X)`: the edges meeting `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutQuery {
    pub x: VertexSet,
    pub gamma: EdgeSet,
}

pub fn gamma(h: &Hypergraph, x: VertexSet) -> CutQuery {
    let gamma = h
        .edge_masks()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e & x != 0)
        .fold(0, |acc, (i, _)| acc | 1u64 << i);
    CutQuery { x, gamma }
}

/// Hypercircuit test for the hypergraph with vertex mask `vertices` and the
/// given edges: `|V'| = |E'|` and every nonempty proper `X` meets at least
/// `|X| + 1` edges.
pub fn is_hypercircuit_on(vertices: VertexSet, edges: &[VertexSet]) -> bool {
    if vertices == 0 || vertices.count_ones() as usize != edges.len() {
        return false;
    }
    let mut x = (vertices - 1) & vertices;
    while x != 0 {
        let met = edges.iter().filter(|&&e| e & x != 0).count();
        if met < x.count_ones() as usize + 1 {
            return false;
        }
        x = (x - 1) & vertices;
    }
    true
}

pub fn is_hypercircuit(h: &Hypergraph) -> bool {
    is_hypercircuit_on(h.vertex_set(), h.edge_masks())
}

fn ensure_edge_enumeration(count: usize, caps: &Caps) -> Result<()> {
    ensure_cap("edge count for subset enumeration", count as u128, caps.edges.min(40) as u128)
}

/// Independence flags for every subset of the listed edges, indexed by the
/// compressed mask over `edges`.
///
/// `S` is a hyperforest iff every `S \ {e}` is one and `(∪S, S)` is not itself
/// a hypercircuit, since every proper subset of `S` lies below some `S \ {e}`.
fn hyperforest_flags(edges: &[VertexSet]) -> Vec<bool> {
    let k = edges.len();
    let mut flags = vec![false; 1 << k];
    let mut cover = vec![0u64; 1 << k];
    flags[0] = true;
    for s in 1usize..1 << k {
        let low = s.trailing_zeros() as usize;
        cover[s] = cover[s & (s - 1)] | edges[low];
        let children_ok = bits(s as u64).all(|i| flags[s & !(1 << i)]);
        if !children_ok {
            continue;
        }
        if cover[s].count_ones() == s.count_ones() {
            let members: Vec<VertexSet> = bits(s as u64).map(|i| edges[i]).collect();
            if is_hypercircuit_on(cover[s], &members) {
                continue;
            }
        }
        flags[s] = true;
    }
    flags
}

/// Hyperforest flags for every edge subset of `h`, indexed by edge mask.
pub fn hyperforest_table(h: &Hypergraph, caps: &Caps) -> Result<Vec<bool>> {
    ensure_edge_enumeration(h.num_edges(), caps)?;
    Ok(hyperforest_flags(h.edge_masks()))
}

fn select(h: &Hypergraph, subset: EdgeSet) -> Vec<VertexSet> {
    bits(subset).map(|i| h.edge_masks()[i]).collect()
}

pub fn is_hyperforest(h: &Hypergraph, f: EdgeSet, caps: &Caps) -> Result<bool> {
    let edges = select(h, f);
    ensure_edge_enumeration(edges.len(), caps)?;
    Ok(*hyperforest_flags(&edges).last().unwrap())
}

fn parts_of(blocks: &[VertexSet]) -> Vec<Vec<usize>> {
    blocks.iter().map(|&b| bits(b).collect()).collect()
}

/// `r_H(Z)` with a minimizing partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankQuery {
    pub z: EdgeSet,
    pub rank: usize,
    pub witness: Vec<Vec<usize>>,
}

fn ensure_partition_cap(n: usize, caps: &Caps) -> Result<()> {
    ensure_cap("vertex count for partition enumeration", n as u128, caps.partition as u128)
}

/// Rank by the partition formula; the witness is the first minimizer in
/// restricted-growth order.
pub fn rank(h: &Hypergraph, z: EdgeSet, caps: &Caps) -> Result<RankQuery> {
    let n = h.num_vertices();
    ensure_partition_cap(n, caps)?;
    let edges = select(h, z);
    let mut best: Option<(usize, Vec<VertexSet>)> = None;
    for_each_partition(n, |labels, blocks| {
        let value = n - blocks.len() + crossing_count(labels, blocks, &edges);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, blocks.to_vec()));
        }
    });
    let (rank, witness) = best.expect("at least one partition exists");
    Ok(RankQuery {
        z,
        rank,
        witness: parts_of(&witness),
    })
}

/// Rank oracle for many queries on one hypergraph.
///
/// Every partition contributes the pair (block count, mask of crossing edges);
/// for each distinct crossing mask only the largest block count matters, so
/// the partition scan happens once and each query is a short minimum.
#[derive(Clone, Debug)]
pub struct RankOracle {
    n: usize,
    num_edges: usize,
    candidates: Vec<(usize, EdgeSet)>,
}

impl RankOracle {
    pub fn new(h: &Hypergraph, caps: &Caps) -> Result<Self> {
        let n = h.num_vertices();
        ensure_partition_cap(n, caps)?;
        let masks = h.edge_masks();
        let mut best: std::collections::HashMap<EdgeSet, usize> = Default::default();
        for_each_partition(n, |labels, blocks| {
            let crossing = masks
                .iter()
                .enumerate()
                .filter(|(_, &e)| crosses(labels, blocks, e))
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            let slot = best.entry(crossing).or_insert(0);
            *slot = (*slot).max(blocks.len());
        });
        let mut candidates: Vec<(usize, EdgeSet)> = best.into_iter().map(|(m, k)| (k, m)).collect();
        candidates.sort_unstable();
        Ok(Self {
            n,
            num_edges: h.num_edges(),
            candidates,
        })
    }

    pub fn rank(&self, z: EdgeSet) -> usize {
        self.candidates
            .iter()
            .map(|&(k, crossing)| self.n - k + (z & crossing).count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    pub fn ground_size(&self) -> usize {
        self.num_edges
    }

    /// Rank function of the dual matroid, `r*(S) = |S| + r(E \ S) - r(E)`.
    pub fn dual_rank(&self, s: EdgeSet) -> usize {
        let all = full_set(self.num_edges);
        s.count_ones() as usize + self.rank(all & !s) - self.rank(all)
    }
}

/// Largest hyperforest inside `Z`, by enumeration of all subsets of `Z`.
pub fn rank_oracle_bruteforce(h: &Hypergraph, z: EdgeSet, caps: &Caps) -> Result<usize> {
    let edges = select(h, z);
    ensure_edge_enumeration(edges.len(), caps)?;
    let flags = hyperforest_flags(&edges);
    Ok(flags
        .iter()
        .enumerate()
        .filter(|(_, &ok)| ok)
        .map(|(s, _)| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Whether every partition `P` of `V` has `N(P) >= |P| - 1`.
pub fn is_partition_connected(h: &Hypergraph, caps: &Caps) -> Result<bool> {
    ensure_partition_cap(h.num_vertices(), caps)?;
    Ok(partition_connected_masks(h.vertex_set(), h.edge_masks()))
}

/// Partition connectivity of the hypergraph induced on `vertices` by `edges`
/// (edges not inside `vertices` are ignored).
fn partition_connected_masks(vertices: VertexSet, all_edges: &[VertexSet]) -> bool {
    let k = vertices.count_ones() as usize;
    if k <= 1 {
        return true;
    }
    let inside: Vec<VertexSet> = all_edges.iter().copied().filter(|&e| e & !vertices == 0).collect();
    // Cheap necessary conditions: the singleton partition and the component
    // partition must both be good.
    if inside.len() + 1 < k || !connects(vertices, inside.iter().copied()) {
        return false;
    }
    let relabel: Vec<usize> = bits(vertices).collect();
    let local: Vec<VertexSet> = inside
        .iter()
        .map(|&e| {
            relabel
                .iter()
                .enumerate()
                .filter(|(_, &v)| e >> v & 1 == 1)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut good = true;
    for_each_partition(k, |labels, blocks| {
        if good && crossing_count(labels, blocks, &local) + 1 < blocks.len() {
            good = false;
        }
    });
    good
}

/// A partition of `V` with its crossing count and score
/// `f(P) = |P|(|V| - 1)/|V| - N(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionRecord {
    pub parts: Vec<Vec<usize>>,
    pub crossing_count: usize,
    pub score: Ratio<i64>,
    pub is_bad: bool,
}

#[derive(Serialize)]
struct PartitionRecordDoc<'a> {
    parts: &'a [Vec<usize>],
    crossing_count: usize,
    score: String,
    is_bad: bool,
}

impl Serialize for PartitionRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionRecordDoc {
            parts: &self.parts,
            crossing_count: self.crossing_count,
            score: self.score.to_string(),
            is_bad: self.is_bad,
        }
        .serialize(s)
    }
}

impl PartitionRecord {
    pub fn new(n: usize, blocks: &[VertexSet], crossing_count: usize) -> Self {
        let k = blocks.len() as i64;
        let n = n.max(1) as i64;
        Self {
            parts: parts_of(blocks),
            crossing_count,
            score: Ratio::new(k * (n - 1) - crossing_count as i64 * n, n),
            is_bad: crossing_count + 1 < blocks.len(),
        }
    }

    pub fn block_masks(&self) -> Vec<VertexSet> {
        self.parts
            .iter()
            .map(|p| p.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect()
    }
}

/// The unique bad partition maximizing `f`, found by exhaustive enumeration,
/// or `None` when every partition is good. Ties are reported as a theorem
/// violation instead of being broken.
pub fn max_score_bad_partition(
    n: usize,
    edges: &[VertexSet],
    caps: &Caps,
) -> Result<Option<PartitionRecord>> {
    ensure_partition_cap(n, caps)?;
    // Scores compared through the numerator over the common denominator n.
    let mut best: Option<(i64, Vec<VertexSet>, usize)> = None;
    let mut ties = 0usize;
    let nn = n.max(1) as i64;
    for_each_partition(n, |labels, blocks| {
        let crossing = crossing_count(labels, blocks, edges);
        if crossing + 1 >= blocks.len() {
            return;
        }
        let numer = blocks.len() as i64 * (nn - 1) - crossing as i64 * nn;
        match &best {
            Some((b, _, _)) if numer < *b => {}
            Some((b, _, _)) if numer == *b => ties += 1,
            _ => {
                best = Some((numer, blocks.to_vec(), crossing));
                ties = 0;
            }
        }
    });
    if ties > 0 {
        return Err(Error::TheoremViolation(format!(
            "{} bad partitions share the maximal score",
            ties + 1
        )));
    }
    Ok(best.map(|(_, blocks, crossing)| PartitionRecord::new(n, &blocks, crossing)))
}

/// The maximal bad partition, checked against the decomposition into maximal
/// partition-connected pieces.
pub fn maximal_bad_partition(h: &Hypergraph, caps: &Caps) -> Result<Option<PartitionRecord>> {
    let record = max_score_bad_partition(h.num_vertices(), h.edge_masks(), caps)?;
    if let Some(rec) = &record {
        let pieces = partition_connected_decomposition(h, caps)?;
        if pieces != rec.parts {
            return Err(Error::TheoremViolation(format!(
                "maximal bad partition {:?} differs from partition-connected pieces {:?}",
                rec.parts, pieces
            )));
        }
    }
    Ok(record)
}

/// Partition-connectivity of every induced subhypergraph, indexed by vertex mask.
fn partition_connected_table(h: &Hypergraph) -> Vec<bool> {
    let n = h.num_vertices();
    (0u64..1 << n)
        .map(|s| s != 0 && partition_connected_masks(s, h.edge_masks()))
        .collect()
}

/// Vertex sets of the maximal partition-connected induced subhypergraphs,
/// ordered by smallest vertex.
///
/// Partition-connected sets through a common vertex are closed under union,
/// so the piece containing `v` is the union of every partition-connected set
/// containing `v`. Both the connectivity of each piece and the disjointness
/// of the pieces are re-checked.
pub fn partition_connected_decomposition(h: &Hypergraph, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let n = h.num_vertices();
    ensure_partition_cap(n, caps)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let table = partition_connected_table(h);
    let mut pieces: Vec<VertexSet> = Vec::new();
    let mut covered = 0u64;
    for v in 0..n {
        if covered >> v & 1 == 1 {
            continue;
        }
        let piece = (0u64..1 << n)
            .filter(|&s| s >> v & 1 == 1 && table[s as usize])
            .fold(0u64, |acc, s| acc | s);
        if !table[piece as usize] {
            return Err(Error::TheoremViolation(format!(
                "union of partition-connected sets through vertex {v} is not partition connected"
            )));
        }
        if piece & covered != 0 {
            return Err(Error::TheoremViolation(format!(
                "maximal partition-connected pieces overlap at {:?}",
                bits(piece & covered).collect::<Vec<_>>()
            )));
        }
        covered |= piece;
        pieces.push(piece);
    }
    Ok(parts_of(&pieces))
}

/// Result of the matroid Euler inequality `|sum_{I independent} (-1)^{|I|}| <= #bases`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub lhs: u64,
    pub basis_count: u64,
    pub ok: bool,
}

/// Enumerates independent sets of the matroid with the given rank function on
/// `ground` elements (independent iff `rank(S) = |S|`).
pub fn euler_inequality_check<F>(rank: F, ground: usize, caps: &Caps) -> Result<EulerCheck>
where
    F: Fn(EdgeSet) -> usize,
{
    ensure_edge_enumeration(ground, caps)?;
    let full_rank = rank(full_set(ground));
    let mut alternating = 0i64;
    let mut basis_count = 0u64;
    for s in 0u64..1 << ground {
        let size = s.count_ones() as usize;
        if rank(s) != size {
            continue;
        }
        alternating += if size % 2 == 0 { 1 } else { -1 };
        if size == full_rank {
            basis_count += 1;
        }
    }
    let lhs = alternating.unsigned_abs();
    Ok(EulerCheck {
        lhs,
        basis_count,
        ok: lhs <= basis_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    fn k3() -> Hypergraph {
        h(3, &[&[0, 1], &[0, 2], &[1, 2]])
    }

    fn tight4() -> Hypergraph {
        generate(&Family::TightCycle { n: 4, t: 3 }).unwrap()
    }

    fn two_triples() -> Hypergraph {
        h(5, &[&[0, 1, 2], &[2, 3, 4]])
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&tight4(), 0b1).gamma.count_ones(), 3);
        assert_eq!(gamma(&tight4(), 0).gamma, 0);
        let t = tight4();
        assert_eq!(gamma(&t, t.vertex_set()).gamma, t.all_edges());
    }

    #[test]
    fn hypercircuit_examples() {
        assert!(is_hypercircuit(&k3()));
        assert!(is_hypercircuit(&tight4()));
        assert!(!is_hypercircuit(&h(3, &[&[0, 1, 2]])));
        // A 4-cycle graph is a circuit, a path is not.
        assert!(is_hypercircuit(&h(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])));
        assert!(!is_hypercircuit(&h(3, &[&[0, 1], &[1, 2]])));
    }

    #[test]
    fn hyperforest_examples() {
        let c = Caps::default();
        assert!(is_hyperforest(&two_triples(), 0b11, &c).unwrap());
        assert!(!is_hyperforest(&k3(), 0b111, &c).unwrap());
        assert!(is_hyperforest(&k3(), 0, &c).unwrap());
        assert!(is_hyperforest(&k3(), 0b011, &c).unwrap());
        // tight cycle: any three edges are independent, all four are a circuit.
        let t = tight4();
        assert!(!is_hyperforest(&t, 0b1111, &c).unwrap());
        for drop in 0..4 {
            assert!(is_hyperforest(&t, 0b1111 & !(1 << drop), &c).unwrap());
        }
    }

    #[test]
    fn rank_examples() {
        let c = Caps::default();
        let q = rank(&k3(), 0b111, &c).unwrap();
        assert_eq!(q.rank, 2);
        assert_eq!(q.witness, vec![vec![0, 1, 2]]);
        let q = rank(&k3(), 0, &c).unwrap();
        assert_eq!(q.rank, 0);
        assert_eq!(q.witness, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(rank(&tight4(), 0b1111, &c).unwrap().rank, 3);
        assert_eq!(rank(&two_triples(), 0b11, &c).unwrap().rank, 2);
    }

    #[test]
    fn bruteforce_rank_examples() {
        let c = Caps::default();
        assert_eq!(rank_oracle_bruteforce(&k3(), 0b111, &c).unwrap(), 2);
        assert_eq!(rank_oracle_bruteforce(&k3(), 0, &c).unwrap(), 0);
        assert_eq!(rank_oracle_bruteforce(&tight4(), 0b1111, &c).unwrap(), 3);
    }

    #[test]
    fn oracle_matches_direct_rank() {
        let c = Caps::default();
        for hg in [k3(), tight4(), two_triples()] {
            let oracle = RankOracle::new(&hg, &c).unwrap();
            for z in 0..1u64 << hg.num_edges() {
                assert_eq!(oracle.rank(z), rank(&hg, z, &c).unwrap().rank);
            }
        }
    }

    #[test]
    fn partition_connectivity_examples() {
        let c = Caps::default();
        assert!(is_partition_connected(&h(3, &[&[0, 1], &[1, 2]]), &c).unwrap());
        assert!(!is_partition_connected(&h(4, &[&[0, 1], &[2, 3]]), &c).unwrap());
        assert!(is_partition_connected(&tight4(), &c).unwrap());
        // Singletons give N = 2 < 4, so the two overlapping triples are not.
        assert!(!is_partition_connected(&two_triples(), &c).unwrap());
    }

    #[test]
    fn maximal_bad_partition_examples() {
        let c = Caps::default();
        let rec = maximal_bad_partition(&h(4, &[&[0, 1], &[2, 3]]), &c).unwrap().unwrap();
        assert_eq!(rec.parts, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(rec.crossing_count, 0);
        assert_eq!(rec.score, Ratio::new(3, 2));
        assert!(rec.is_bad);

        assert!(maximal_bad_partition(&h(3, &[&[0, 1], &[1, 2]]), &c).unwrap().is_none());

        let rec = maximal_bad_partition(&two_triples(), &c).unwrap().unwrap();
        assert_eq!(rec.parts.len(), 5);
        assert_eq!(rec.crossing_count, 2);
        assert_eq!(rec.score, Ratio::from_integer(2));
    }

    #[test]
    fn runner_up_score_for_disjoint_edges() {
        // The second-best bad partition of two disjoint edges scores 5/4.
        let hg = h(4, &[&[0, 1], &[2, 3]]);
        let mut scores = Vec::new();
        for_each_partition(4, |labels, blocks| {
            let rec = PartitionRecord::new(4, blocks, crossing_count(labels, blocks, hg.edge_masks()));
            if rec.is_bad {
                scores.push(rec.score);
            }
        });
        scores.sort();
        scores.dedup();
        assert_eq!(scores.iter().rev().nth(1), Some(&Ratio::new(5, 4)));
    }

    #[test]
    fn decomposition_examples() {
        let c = Caps::default();
        assert_eq!(
            partition_connected_decomposition(&h(4, &[&[0, 1], &[2, 3]]), &c).unwrap(),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert_eq!(
            partition_connected_decomposition(&k3(), &c).unwrap(),
            vec![vec![0, 1, 2]]
        );
        assert_eq!(
            partition_connected_decomposition(&h(3, &[&[1, 2]]), &c).unwrap(),
            vec![vec![0], vec![1, 2]]
        );
    }

    #[test]
    fn euler_examples() {
        let c = Caps::default();
        let oracle = RankOracle::new(&k3(), &c).unwrap();
        let e = euler_inequality_check(|s| oracle.rank(s), 3, &c).unwrap();
        assert_eq!((e.lhs, e.basis_count, e.ok), (1, 3, true));

        let empty = RankOracle::new(&Hypergraph::empty(3), &c).unwrap();
        let e = euler_inequality_check(|s| empty.rank(s), 0, &c).unwrap();
        assert_eq!((e.lhs, e.basis_count, e.ok), (1, 1, true));

        let oracle = RankOracle::new(&tight4(), &c).unwrap();
        let e = euler_inequality_check(|s| oracle.rank(s), 4, &c).unwrap();
        assert_eq!((e.lhs, e.basis_count, e.ok), (1, 4, true));
        let dual = euler_inequality_check(|s| oracle.dual_rank(s), 4, &c).unwrap();
        // Dual of U(3,4) is U(1,4): 1 - 4 = -3, four bases.
        assert_eq!((dual.lhs, dual.basis_count, dual.ok), (3, 4, true));
    }

    #[test]
    fn partition_record_json() {
        let rec = PartitionRecord::new(4, &[0b0011, 0b1100], 0);
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"parts":[[0,1],[2,3]],"crossing_count":0,"score":"3/2","is_bad":true}"#
        );
    }
}
