//! Bounds on `a_1`: the inequality `|a_1(H)| <= N(H)` with its equivalence-class
//! refinement, spanning-tree sums, and the bounded-exponential-type bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bounds::{compare_with_e_power, BoundComparison};
use crate::chromatic::induced_a1_table;
use crate::error::{ensure_cap, Error, Result};
use crate::hypergraph::{bits, connects, EdgeSet, Hypergraph, VertexSet};
use crate::matroid::{hyperforest_table, max_score_bad_partition, EulerCheck, RankOracle};
use crate::partition::crosses;
use crate::poly::decimal;
use crate::Caps;

fn ensure_edge_enumeration(h: &Hypergraph, caps: &Caps) -> Result<()> {
    ensure_cap(
        "edge count for subset enumeration",
        h.num_edges() as u128,
        caps.edges.min(40) as u128,
    )
}

fn selected(h: &Hypergraph, subset: EdgeSet) -> impl Iterator<Item = VertexSet> + '_ {
    bits(subset).map(|i| h.edge_masks()[i])
}

fn spans_connected(h: &Hypergraph, subset: EdgeSet) -> bool {
    connects(h.vertex_set(), selected(h, subset))
}

/// `sum (-1)^{|E'|}` over edge subsets `E'` with `(V, E')` connected.
pub fn a1_signed_sum(h: &Hypergraph, caps: &Caps) -> Result<BigInt> {
    ensure_edge_enumeration(h, caps)?;
    let total: i64 = (0u64..1 << h.num_edges())
        .filter(|&s| spans_connected(h, s))
        .map(|s| if s.count_ones() % 2 == 0 { 1 } else { -1 })
        .sum();
    Ok(BigInt::from(total))
}

/// `N(H)`: edge subsets that are hyperforests and connect all of `V`.
pub fn count_connected_spanning_hyperforests(h: &Hypergraph, caps: &Caps) -> Result<BigInt> {
    let forests = hyperforest_table(h, caps)?;
    let count = forests
        .iter()
        .enumerate()
        .filter(|&(s, &f)| f && spans_connected(h, s as EdgeSet))
        .count();
    Ok(BigInt::from(count))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauValue {
    pub subset: Vec<usize>,
    #[serde(with = "decimal")]
    pub tau: BigInt,
}

/// Outcome of one inequality check on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub check: &'static str,
    #[serde(with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub a1_value: Option<BigInt>,
    #[serde(with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub n_forests: Option<BigInt>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tau_values: Vec<TauValue>,
    /// Left-hand side of the compared inequality.
    #[serde(with = "decimal")]
    pub lhs: BigInt,
    /// High-precision right-hand side when the bound involves `e`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_rhs: Option<BoundComparison>,
    pub ok: bool,
}

pub fn penrose_check(h: &Hypergraph, caps: &Caps) -> Result<BoundReport> {
    let a1 = a1_signed_sum(h, caps)?;
    let forests = count_connected_spanning_hyperforests(h, caps)?;
    Ok(BoundReport {
        check: "penrose",
        ok: a1.abs() <= forests,
        lhs: a1.abs(),
        a1_value: Some(a1),
        n_forests: Some(forests),
        tau_values: Vec::new(),
        bound_rhs: None,
    })
}

fn require_graph(g: &Hypergraph) -> Result<()> {
    if g.is_graph() {
        Ok(())
    } else {
        Err(Error::NotAGraph)
    }
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Spanning-tree count of a graph by the matrix-tree theorem. A single vertex
/// has one spanning tree, a disconnected graph none, and so does the empty graph.
pub fn tau(g: &Hypergraph) -> Result<BigInt> {
    require_graph(g)?;
    let n = g.num_vertices();
    if n == 0 {
        return Ok(BigInt::zero());
    }
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges() {
        let (a, b) = (e[0], e[1]);
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    let reduced: Vec<Vec<BigInt>> = lap.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    Ok(bareiss_determinant(reduced))
}

/// `sum_{S ∋ v} τ(G[S])` against `(e D)^{n-1}`.
pub fn sokal_tree_sum_check(g: &Hypergraph, v: usize, caps: &Caps) -> Result<BoundReport> {
    require_graph(g)?;
    let n = g.num_vertices();
    if v >= n {
        return Err(Error::InvalidParams(format!("vertex {v} out of range")));
    }
    ensure_cap("vertex count for subset enumeration", n as u128, caps.edges as u128)?;
    let mut tau_values = Vec::new();
    let mut sum = BigInt::zero();
    for s in (0u64..1 << n).filter(|s| s >> v & 1 == 1) {
        let t = tau(&g.induced_by_mask(s))?;
        sum += &t;
        tau_values.push(TauValue {
            subset: bits(s).collect(),
            tau: t,
        });
    }
    let bound = compare_with_e_power(&sum, g.max_degree() as u64, (n - 1) as u32);
    Ok(BoundReport {
        check: "sokal",
        a1_value: None,
        n_forests: None,
        tau_values,
        ok: bound.ok,
        lhs: sum,
        bound_rhs: Some(bound),
    })
}

/// Edge size used in the `e t D` bounds; an edgeless hypergraph has `D = 0`,
/// which makes the edge size irrelevant.
pub(crate) fn bound_edge_size(h: &Hypergraph) -> Result<usize> {
    if h.num_edges() == 0 {
        return Ok(0);
    }
    h.uniformity().ok_or(Error::NotUniform)
}

/// `sum_{v ∈ S, |S| = s} |a_1(H[S])|` against `(e t D)^{s-1}`.
pub fn bounded_expo_check(h: &Hypergraph, v: usize, s: usize, caps: &Caps) -> Result<BoundReport> {
    let table = induced_a1_table(h, caps)?;
    bounded_expo_check_with(h, &table, v, s)
}

/// As [`bounded_expo_check`], reusing a precomputed `a_1` table indexed by vertex mask.
pub fn bounded_expo_check_with(
    h: &Hypergraph,
    a1_by_subset: &[BigInt],
    v: usize,
    s: usize,
) -> Result<BoundReport> {
    let n = h.num_vertices();
    if v >= n || s == 0 || s > n {
        return Err(Error::InvalidParams(format!(
            "need vertex < {n} and 1 <= s <= {n}, got v = {v}, s = {s}"
        )));
    }
    let t = bound_edge_size(h)?;
    let lhs: BigInt = (0u64..1 << n)
        .filter(|&m| m >> v & 1 == 1 && m.count_ones() as usize == s)
        .map(|m| a1_by_subset[m as usize].abs())
        .sum();
    let bound = compare_with_e_power(&lhs, (t * h.max_degree()) as u64, (s - 1) as u32);
    Ok(BoundReport {
        check: "bounded_expo",
        a1_value: None,
        n_forests: None,
        tau_values: Vec::new(),
        ok: bound.ok,
        lhs,
        bound_rhs: Some(bound),
    })
}

/// Key of the equivalence relation on spanning subhypergraphs: the maximal bad
/// partition (or the one-part partition when partition connected) and the
/// edges crossing it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassKey {
    pub partition: Vec<Vec<usize>>,
    pub bad_edges: EdgeSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceClass {
    pub key: ClassKey,
    /// Edge masks of the members, increasing.
    pub members: Vec<EdgeSet>,
    /// `L'`: union of all members.
    pub union_subhypergraph: EdgeSet,
    /// Members that are inclusion-maximal hyperforests of `L'`.
    pub basis_members: Vec<EdgeSet>,
    /// Members that are inclusion-maximal hyperforests of `H` itself.
    pub basis_members_of_h: Vec<EdgeSet>,
}

impl EquivalenceClass {
    /// `sum_{S ∈ [L]} (-1)^{|S|}`.
    pub fn alternating_sum(&self) -> i64 {
        self.members
            .iter()
            .map(|s| if s.count_ones() % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

fn ensure_structure_caps(h: &Hypergraph, caps: &Caps) -> Result<()> {
    ensure_cap(
        "edge count for equivalence classes",
        h.num_edges() as u128,
        caps.structure_edges.min(caps.edges) as u128,
    )?;
    ensure_cap(
        "vertex count for equivalence classes",
        h.num_vertices() as u128,
        caps.partition.min(10) as u128,
    )
}

fn key_of(h: &Hypergraph, subset: EdgeSet, caps: &Caps) -> Result<ClassKey> {
    let edges: Vec<VertexSet> = selected(h, subset).collect();
    let n = h.num_vertices();
    Ok(match max_score_bad_partition(n, &edges, caps)? {
        None => ClassKey {
            partition: vec![(0..n).collect()],
            bad_edges: 0,
        },
        Some(rec) => {
            let blocks = rec.block_masks();
            let mut labels = vec![0u8; n];
            for (b, &m) in blocks.iter().enumerate() {
                for v in bits(m) {
                    labels[v] = b as u8;
                }
            }
            let bad = bits(subset)
                .filter(|&i| crosses(&labels, &blocks, h.edge_masks()[i]))
                .fold(0u64, |acc, i| acc | 1 << i);
            ClassKey {
                partition: rec.parts,
                bad_edges: bad,
            }
        }
    })
}

/// Inclusion-maximal hyperforests among the subsets of `within`.
fn maximal_forests(forests: &[bool], within: EdgeSet) -> Vec<EdgeSet> {
    submasks(within)
        .filter(|&t| {
            forests[t as usize] && bits(within & !t).all(|e| !forests[(t | 1 << e) as usize])
        })
        .collect()
}

/// All submasks of `mask` in increasing order.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

/// Splits every edge subset `L ⊆ E` (as the spanning subhypergraph `(V, L)`)
/// into classes with a common key, ordered by key.
pub fn equivalence_classes(h: &Hypergraph, caps: &Caps) -> Result<Vec<EquivalenceClass>> {
    ensure_structure_caps(h, caps)?;
    let forests = hyperforest_table(h, caps)?;
    let bases_of_h: std::collections::HashSet<EdgeSet> =
        maximal_forests(&forests, h.all_edges()).into_iter().collect();
    let mut groups: BTreeMap<ClassKey, Vec<EdgeSet>> = BTreeMap::new();
    for l in 0u64..1 << h.num_edges() {
        groups.entry(key_of(h, l, caps)?).or_default().push(l);
    }
    Ok(groups
        .into_iter()
        .map(|(key, members)| {
            let union = members.iter().fold(0, |a, &m| a | m);
            let bases_of_union: std::collections::HashSet<EdgeSet> =
                maximal_forests(&forests, union).into_iter().collect();
            EquivalenceClass {
                basis_members: members.iter().copied().filter(|m| bases_of_union.contains(m)).collect(),
                basis_members_of_h: members.iter().copied().filter(|m| bases_of_h.contains(m)).collect(),
                key,
                members,
                union_subhypergraph: union,
            }
        })
        .collect())
}

/// Per-class findings of [`verify_structure_theorem`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassReport {
    pub key: ClassKey,
    pub member_count: usize,
    pub union_subhypergraph: EdgeSet,
    pub connected: bool,
    pub alternating_sum: i64,
    pub basis_member_count: usize,
    pub basis_member_of_h_count: usize,
    /// Every maximal hyperforest of `L'` is the bad edges plus one maximal
    /// hyperforest per partition-connected piece, and every such combination
    /// is a maximal hyperforest of `L'`.
    pub structure_ok: bool,
    /// Members are exactly the subsets of `L'` containing a maximal hyperforest of `L'`.
    pub cohypergraphic_ok: bool,
    /// `|alternating sum| <= |basis members|`.
    pub inequality_ok: bool,
    /// The same inequality with basis members taken as maximal hyperforests of `H`.
    pub inequality_of_h_ok: bool,
    /// Euler check of the dual matroid of `L'`, whose independent sets are the
    /// complements of the members.
    pub dual_euler: EulerCheck,
    pub dual_euler_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub classes: Vec<ClassReport>,
    #[serde(with = "decimal")]
    pub a1: BigInt,
    #[serde(with = "decimal")]
    pub n_forests: BigInt,
    /// Sum of alternating sums over classes of connected members; equals `a_1`.
    pub connected_alternating_total: i64,
    /// Sum of `|alternating sum|` over classes of connected members; at least `|a_1|`.
    pub connected_abs_total: u64,
    /// Sum of basis-member counts over classes of connected members; at most `N(H)`.
    pub connected_basis_total: u64,
    /// Classes where the two readings of the basis-member set differ in size.
    pub basis_reading_divergences: usize,
    pub ok: bool,
}

/// Checks the structure of every equivalence class; see [`ClassReport`].
pub fn verify_structure_theorem(h: &Hypergraph, caps: &Caps) -> Result<StructureReport> {
    let classes = equivalence_classes(h, caps)?;
    let forests = hyperforest_table(h, caps)?;
    let n = h.num_vertices();
    let mut reports = Vec::with_capacity(classes.len());
    for class in &classes {
        let union = class.union_subhypergraph;
        let union_key = key_of(h, union, caps)?;
        let blocks: Vec<VertexSet> = union_key
            .partition
            .iter()
            .map(|p| p.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let pieces: Vec<EdgeSet> = blocks
            .iter()
            .map(|&b| h.edges_within(b) & union)
            .collect();
        let bases = maximal_forests(&forests, union);
        let piece_bases: Vec<std::collections::HashSet<EdgeSet>> = pieces
            .iter()
            .map(|&p| maximal_forests(&forests, p).into_iter().collect())
            .collect();
        let each_basis_decomposes = bases.iter().all(|&t| {
            t & union_key.bad_edges == union_key.bad_edges
                && pieces
                    .iter()
                    .zip(&piece_bases)
                    .all(|(&p, pb)| pb.contains(&(t & p)))
        });
        let combinations: usize = piece_bases.iter().map(|pb| pb.len()).product();
        let structure_ok = each_basis_decomposes && combinations == bases.len();

        let expected_members: Vec<EdgeSet> = submasks(union)
            .filter(|&s| bases.iter().any(|&t| t & s == t))
            .collect();
        let cohypergraphic_ok = expected_members == class.members;

        let alt = class.alternating_sum();
        let sub = h.spanning_subgraph(union);
        let oracle = RankOracle::new(&sub, caps)?;
        let dual_euler =
            crate::matroid::euler_inequality_check(|s| oracle.dual_rank(s), sub.num_edges(), caps)?;
        let connected = spans_connected(h, class.members[0]);

        reports.push(ClassReport {
            key: class.key.clone(),
            member_count: class.members.len(),
            union_subhypergraph: union,
            connected,
            alternating_sum: alt,
            basis_member_count: class.basis_members.len(),
            basis_member_of_h_count: class.basis_members_of_h.len(),
            structure_ok,
            cohypergraphic_ok,
            inequality_ok: alt.unsigned_abs() <= class.basis_members.len() as u64,
            inequality_of_h_ok: alt.unsigned_abs() <= class.basis_members_of_h.len() as u64,
            dual_euler_consistent: dual_euler.lhs == alt.unsigned_abs(),
            dual_euler,
        });
    }
    let a1 = a1_signed_sum(h, caps)?;
    let n_forests = count_connected_spanning_hyperforests(h, caps)?;
    let connected: Vec<&ClassReport> = reports.iter().filter(|r| r.connected).collect();
    let connected_alternating_total: i64 = connected.iter().map(|r| r.alternating_sum).sum();
    let connected_abs_total: u64 = connected.iter().map(|r| r.alternating_sum.unsigned_abs()).sum();
    let connected_basis_total: u64 = connected.iter().map(|r| r.basis_member_count as u64).sum();
    let basis_reading_divergences = reports
        .iter()
        .filter(|r| r.basis_member_count != r.basis_member_of_h_count)
        .count();
    let ok = reports.iter().all(|r| {
        r.structure_ok && r.cohypergraphic_ok && r.inequality_ok && r.dual_euler.ok && r.dual_euler_consistent
    }) && BigInt::from(connected_alternating_total) == a1
        && BigInt::from(connected_abs_total) >= a1.abs()
        && BigInt::from(connected_basis_total) <= n_forests
        && (n > 0 || reports.len() == 1);
    Ok(StructureReport {
        classes: reports,
        a1,
        n_forests,
        connected_alternating_total,
        connected_abs_total,
        connected_basis_total,
        basis_reading_divergences,
        ok,
    })
}
