//! Set partitions as restricted-growth strings, and the Stirling/Bell tables
//! used for basis changes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::hypergraph::VertexSet;

/// Calls `visit(labels, blocks)` once for every partition of `{0..n}`.
///
/// `labels[v]` is the block of vertex `v` as a restricted-growth string and
/// `blocks[b]` is the vertex mask of block `b`. Partitions arrive in
/// lexicographic order of their restricted-growth strings, so blocks are
/// ordered by their smallest element. For `n == 0` the empty partition is
/// visited once.
pub fn for_each_partition<F>(n: usize, mut visit: F)
where
    F: FnMut(&[u8], &[VertexSet]),
{
    let mut labels = vec![0u8; n];
    let mut blocks = vec![0u64; n];
    if n == 0 {
        visit(&labels, &blocks);
        return;
    }
    fn rec<F: FnMut(&[u8], &[VertexSet])>(
        i: usize,
        used: usize,
        labels: &mut [u8],
        blocks: &mut [VertexSet],
        visit: &mut F,
    ) {
        if i == labels.len() {
            visit(labels, &blocks[..used]);
            return;
        }
        for b in 0..=used.min(labels.len() - 1) {
            labels[i] = b as u8;
            blocks[b] |= 1 << i;
            rec(i + 1, used.max(b + 1), labels, blocks, visit);
            blocks[b] &= !(1 << i);
        }
    }
    labels[0] = 0;
    blocks[0] = 1;
    rec(1, 1, &mut labels, &mut blocks, &mut visit);
}

/// Number of partition blocks that `edge` meets, capped at 2.
#[inline]
pub fn crosses(labels: &[u8], blocks: &[VertexSet], edge: VertexSet) -> bool {
    let first = edge.trailing_zeros() as usize;
    blocks[labels[first] as usize] & edge != edge
}

/// Number of edges meeting at least two blocks.
#[inline]
pub fn crossing_count(labels: &[u8], blocks: &[VertexSet], edges: &[VertexSet]) -> usize {
    edges.iter().filter(|&&e| crosses(labels, blocks, e)).count()
}

/// Bell number `B(n)`.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let prev = *next.last().unwrap();
            next.push(prev.saturating_add(x));
        }
        row = next;
    }
    row[0]
}

/// Stirling numbers of the second kind, `table[n][k] = S(n, k)` for `n, k <= max`.
pub fn stirling_second(max: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); max + 1]; max + 1];
    t[0][0] = BigInt::one();
    for n in 1..=max {
        for k in 1..=n {
            t[n][k] = &t[n - 1][k - 1] + BigInt::from(k) * &t[n - 1][k];
        }
    }
    t
}

/// Signed Stirling numbers of the first kind, `table[j][k] = s(j, k)`, so that
/// the falling factorial `x(x-1)...(x-j+1)` equals `sum_k s(j, k) x^k`.
pub fn stirling_first_signed(max: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); max + 1]; max + 1];
    t[0][0] = BigInt::one();
    for j in 1..=max {
        for k in 1..=j {
            t[j][k] = &t[j - 1][k - 1] - BigInt::from(j - 1) * &t[j - 1][k];
        }
    }
    t
}
