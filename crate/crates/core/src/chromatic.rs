//! Exact hypergraph chromatic polynomials.
//!
//! The primary route is the signed sum over edge subsets,
//! `P_H(x) = sum_{E' ⊆ E} (-1)^{|E'|} x^{c(E')}`. Two independent routes are
//! provided for cross-checking: the falling-factorial form built from vertex
//! partitions in which no block contains an edge, and the reconstruction from
//! `b = a_1` over induced subhypergraphs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{ensure_cap, Error, Result};
use crate::hypergraph::{bits, DisjointSets, Hypergraph, VertexSet};
use crate::partition::for_each_partition;
use crate::poly::IntPolynomial;
use crate::Caps;

/// Largest edge count the subset sum accepts regardless of configuration; the
/// per-power accumulators are `i64`, which holds `2^62` exactly.
pub const HARD_EDGE_LIMIT: usize = 62;

/// Number of leading edges whose include/exclude choices are fanned out as
/// independent work items.
#[cfg(feature = "parallel")]
const SPLIT_DEPTH: usize = 8;

/// Adds the contribution of all subsets of `masks[idx..]` to `counts`.
///
/// An edge already inside a single component contributes nothing: including
/// or excluding it leaves every later component count unchanged while
/// flipping the sign, so the two subtrees cancel exactly.
fn accumulate(masks: &[VertexSet], idx: usize, dsu: DisjointSets, odd: bool, counts: &mut [i64]) {
    if idx == masks.len() {
        counts[dsu.count()] += if odd { -1 } else { 1 };
        return;
    }
    let edge = masks[idx];
    let mut merged = dsu.clone();
    merged.union_mask(edge);
    if merged.count() == dsu.count() {
        return;
    }
    accumulate(masks, idx + 1, dsu, odd, counts);
    accumulate(masks, idx + 1, merged, !odd, counts);
}

fn subset_sum_counts(h: &Hypergraph) -> Vec<i64> {
    let n = h.num_vertices();
    let masks = h.edge_masks();

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let depth = SPLIT_DEPTH.min(masks.len());
        if depth >= 4 {
            return (0u64..1 << depth)
                .into_par_iter()
                .map(|prefix| {
                    let mut dsu = DisjointSets::new(n);
                    for i in bits(prefix) {
                        dsu.union_mask(masks[i]);
                    }
                    let mut counts = vec![0i64; n + 1];
                    let odd = prefix.count_ones() % 2 == 1;
                    accumulate(masks, depth, dsu, odd, &mut counts);
                    counts
                })
                .reduce(
                    || vec![0i64; n + 1],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                );
        }
    }

    let mut counts = vec![0i64; n + 1];
    accumulate(masks, 0, DisjointSets::new(n), false, &mut counts);
    counts
}

/// `P_H` by inclusion–exclusion over edge subsets.
pub fn chromatic_polynomial(h: &Hypergraph, caps: &Caps) -> Result<IntPolynomial> {
    ensure_cap(
        "edge count for subset enumeration",
        h.num_edges() as u128,
        caps.edges.min(HARD_EDGE_LIMIT) as u128,
    )?;
    let counts = subset_sum_counts(h);
    Ok(IntPolynomial::new(counts.into_iter().map(BigInt::from).collect()))
}

/// `P_H` by whichever exact route fits within the caps: the edge-subset sum
/// when the edge count allows it, otherwise the partition form.
pub fn chromatic_polynomial_auto(h: &Hypergraph, caps: &Caps) -> Result<IntPolynomial> {
    if h.num_edges() <= caps.edges.min(HARD_EDGE_LIMIT) {
        chromatic_polynomial(h, caps)
    } else {
        chromatic_polynomial_via_partitions(h, caps)
    }
}

/// Number of colorings with `q` colors in which no edge is monochromatic,
/// by exhaustive backtracking over all `q^n` assignments.
pub fn count_proper_colorings(h: &Hypergraph, q: u64, caps: &Caps) -> Result<BigInt> {
    let n = h.num_vertices();
    let work = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    ensure_cap("coloring enumeration q^n", work, caps.colorings)?;
    // Edges are checked once their largest vertex has been colored.
    let mut closing: Vec<Vec<VertexSet>> = vec![Vec::new(); n];
    for &m in h.edge_masks() {
        closing[63 - m.leading_zeros() as usize].push(m);
    }
    fn rec(v: usize, q: u64, colors: &mut [u64], closing: &[Vec<VertexSet>]) -> u128 {
        if v == colors.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..q {
            colors[v] = c;
            let mono = closing[v]
                .iter()
                .any(|&e| bits(e).all(|u| colors[u] == c));
            if !mono {
                total += rec(v + 1, q, colors, closing);
            }
        }
        total
    }
    let mut colors = vec![0u64; n];
    Ok(BigInt::from(rec(0, q, &mut colors, &closing)))
}

/// Coefficient of `x^1` of the chromatic polynomial.
pub fn a1(h: &Hypergraph, caps: &Caps) -> Result<BigInt> {
    Ok(chromatic_polynomial(h, caps)?.coefficient(1))
}

/// `counts[j]` = number of partitions of `V` into exactly `j` blocks such that
/// no edge lies inside a block. `counts[0]` is 1 only for the empty vertex set.
pub fn admissible_partition_form(h: &Hypergraph, caps: &Caps) -> Result<Vec<BigInt>> {
    let n = h.num_vertices();
    ensure_cap("vertex count for partition enumeration", n as u128, caps.partition as u128)?;
    let mut closing: Vec<Vec<VertexSet>> = vec![Vec::new(); n];
    for &m in h.edge_masks() {
        closing[63 - m.leading_zeros() as usize].push(m);
    }
    let mut counts = vec![0u64; n + 1];
    if n == 0 {
        counts[0] = 1;
    } else {
        fn rec(
            v: usize,
            used: usize,
            blocks: &mut [VertexSet],
            closing: &[Vec<VertexSet>],
            counts: &mut [u64],
        ) {
            if v == blocks.len() {
                counts[used] += 1;
                return;
            }
            for b in 0..=used {
                let grown = blocks[b] | 1 << v;
                if closing[v].iter().any(|&e| e & grown == e) {
                    continue;
                }
                let saved = blocks[b];
                blocks[b] = grown;
                rec(v + 1, used.max(b + 1), blocks, closing, counts);
                blocks[b] = saved;
            }
        }
        let mut blocks = vec![0u64; n];
        rec(0, 0, &mut blocks, &closing, &mut counts);
    }
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// `P_H` from the falling-factorial form.
pub fn chromatic_polynomial_via_partitions(h: &Hypergraph, caps: &Caps) -> Result<IntPolynomial> {
    Ok(IntPolynomial::from_falling_factorial(&admissible_partition_form(h, caps)?))
}

/// Chromatic polynomials of every induced subhypergraph, indexed by vertex
/// mask. The empty set maps to the constant polynomial 1.
pub fn induced_polynomials(h: &Hypergraph, caps: &Caps) -> Result<Vec<IntPolynomial>> {
    let n = h.num_vertices();
    ensure_cap("vertex count for induced-subset tables", n as u128, caps.partition as u128)?;
    (0u64..1 << n)
        .map(|s| chromatic_polynomial(&h.induced_by_mask(s), caps))
        .collect()
}

/// Whether `sum_{S ⊆ V} P(H[S], x) P(H[V \ S], y) = P(H, x + y)` holds exactly.
pub fn check_exponential_identity(h: &Hypergraph, x: i64, y: i64, caps: &Caps) -> Result<bool> {
    let table = induced_polynomials(h, caps)?;
    Ok(exponential_identity_with(&table, h.vertex_set(), x, y))
}

pub(crate) fn exponential_identity_with(
    table: &[IntPolynomial],
    full: VertexSet,
    x: i64,
    y: i64,
) -> bool {
    let (bx, by) = (BigInt::from(x), BigInt::from(y));
    let lhs: BigInt = (0..=full)
        .filter(|s| s & !full == 0)
        .map(|s| table[s as usize].eval(&bx) * table[(full & !s) as usize].eval(&by))
        .sum();
    lhs == table[full as usize].eval(&(bx + by))
}

/// `b(G) = a_1(G)` for every induced subhypergraph with at least one vertex,
/// keyed by the sorted vertex subset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BFunctionTable {
    values: BTreeMap<Vec<usize>, BigInt>,
}

impl BFunctionTable {
    pub fn get(&self, subset: &[usize]) -> Option<&BigInt> {
        self.values.get(subset)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.values.iter()
    }
}

/// `a_1` of every induced subhypergraph, indexed by vertex mask (entry 0 is 0).
pub fn induced_a1_table(h: &Hypergraph, caps: &Caps) -> Result<Vec<BigInt>> {
    let n = h.num_vertices();
    ensure_cap("vertex count for induced-subset tables", n as u128, caps.partition as u128)?;
    (0u64..1 << n)
        .map(|s| {
            if s == 0 {
                Ok(BigInt::zero())
            } else {
                a1(&h.induced_by_mask(s), caps)
            }
        })
        .collect()
}

/// Rebuilds `P_H` as `sum_k x^k sum_{partitions into k blocks} prod b(block)`.
pub fn reconstruct_via_b(h: &Hypergraph, caps: &Caps) -> Result<(IntPolynomial, BFunctionTable)> {
    let n = h.num_vertices();
    let b = induced_a1_table(h, caps)?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    if n == 0 {
        coeffs[0] = BigInt::one();
    } else {
        for_each_partition(n, |_, blocks| {
            let product = blocks
                .iter()
                .try_fold(BigInt::one(), |acc, &blk| {
                    let v = &b[blk as usize];
                    (!v.is_zero()).then(|| acc * v)
                });
            if let Some(p) = product {
                coeffs[blocks.len()] += p;
            }
        });
    }
    let table = BFunctionTable {
        values: b
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(s, v)| (bits(s as u64).collect(), v))
            .collect(),
    };
    Ok((IntPolynomial::new(coeffs), table))
}

/// Checks monicity, `a_0 = 0` and the leading form
/// `x^n - e(H) x^{n-t+1} + (lower terms)` for a uniform hypergraph.
pub fn check_leading_form(h: &Hypergraph, p: &IntPolynomial) -> Result<()> {
    let n = h.num_vertices();
    let fail = |msg: String| Err(Error::TheoremViolation(msg));
    if p.degree() != Some(n) || !p.leading_coefficient().is_one() {
        return fail(format!("chromatic polynomial {p} is not monic of degree {n}"));
    }
    if n > 0 && !p.coefficient(0).is_zero() {
        return fail(format!("chromatic polynomial {p} has nonzero constant term"));
    }
    if let Some(t) = h.uniformity() {
        let k = n + 1 - t;
        if p.coefficient(k) != BigInt::from(-(h.num_edges() as i64)) {
            return fail(format!("coefficient of x^{k} in {p} is not -e(H)"));
        }
        if (k + 1..n).any(|i| !p.coefficient(i).is_zero()) {
            return fail(format!("{p} has terms strictly between x^{k} and x^{n}"));
        }
    }
    Ok(())
}
