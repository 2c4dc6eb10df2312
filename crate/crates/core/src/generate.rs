//! Deterministic hypergraph families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    SingleEdge { t: usize },
    CompleteUniform { n: usize, t: usize },
    TightCycle { n: usize, t: usize },
    LoosePath { k: usize, t: usize },
    RandomUniform { n: usize, t: usize, p: f64, seed: u64 },
    /// Small mixed-size instance: `t` in {2, 3, 4}, `t <= n <= 7` and at most
    /// 10 distinct `t`-edges, all drawn from `seed`.
    RandomInstance { seed: u64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::SingleEdge { .. } => "single_edge",
            Family::CompleteUniform { .. } => "complete_uniform",
            Family::TightCycle { .. } => "tight_cycle",
            Family::LoosePath { .. } => "loose_path",
            Family::RandomUniform { .. } => "random_uniform",
            Family::RandomInstance { .. } => "random_instance",
        }
    }
}

fn check_uniform_params(n: usize, t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidParams(format!("edge size t = {t} must be at least 2")));
    }
    if t > n {
        return Err(Error::InvalidParams(format!("t = {t} exceeds n = {n}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    Ok(())
}

/// All `t`-subsets of `0..n` as masks, in lexicographic order of their sorted
/// vertex lists.
pub fn t_subsets(n: usize, t: usize) -> Vec<VertexSet> {
    fn rec(start: usize, n: usize, left: usize, acc: VertexSet, out: &mut Vec<VertexSet>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for v in start..=n - left {
            rec(v + 1, n, left - 1, acc | (1 << v), out);
        }
    }
    let mut out = Vec::new();
    if t <= n {
        rec(0, n, t, 0, &mut out);
    }
    out
}

pub fn generate(family: &Family) -> Result<Hypergraph> {
    match *family {
        Family::SingleEdge { t } => {
            check_uniform_params(t, t)?;
            Hypergraph::new(t, vec![(0..t).collect()])
        }
        Family::CompleteUniform { n, t } => {
            check_uniform_params(n, t)?;
            Ok(Hypergraph::from_masks(n, t_subsets(n, t)))
        }
        Family::TightCycle { n, t } => {
            check_uniform_params(n, t)?;
            if n == t {
                return Err(Error::InvalidParams(
                    "tight cycle needs n > t, otherwise all edges coincide".into(),
                ));
            }
            let edges = (0..n).map(|i| (0..t).map(|j| (i + j) % n).collect()).collect();
            Hypergraph::new(n, edges)
        }
        Family::LoosePath { k, t } => {
            if t < 2 {
                return Err(Error::InvalidParams(format!("edge size t = {t} must be at least 2")));
            }
            let n = k * (t - 1) + 1;
            if n > MAX_VERTICES {
                return Err(Error::TooManyVertices(n));
            }
            let edges = (0..k)
                .map(|i| (i * (t - 1)..i * (t - 1) + t).collect())
                .collect();
            Hypergraph::new(n, edges)
        }
        Family::RandomUniform { n, t, p, seed } => {
            check_uniform_params(n, t)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParams(format!("probability p = {p} outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let chosen: Vec<VertexSet> = t_subsets(n, t)
                .into_iter()
                .filter(|_| rng.gen_bool(p))
                .collect();
            Ok(Hypergraph::from_masks(n, chosen))
        }
        Family::RandomInstance { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = rng.gen_range(2..=4usize);
            let n = rng.gen_range(t.max(2)..=RANDOM_INSTANCE_MAX_N);
            let mut pool = t_subsets(n, t);
            let m = rng.gen_range(0..=pool.len().min(RANDOM_INSTANCE_MAX_EDGES));
            for i in 0..m {
                let j = rng.gen_range(i..pool.len());
                pool.swap(i, j);
            }
            pool.truncate(m);
            Ok(Hypergraph::from_masks(n, pool))
        }
    }
}

const RANDOM_INSTANCE_MAX_N: usize = 7;
const RANDOM_INSTANCE_MAX_EDGES: usize = 10;

/// Every `t`-uniform hypergraph on `n` labelled vertices (including the
/// edgeless one), indexed by a mask over the lexicographic list of `t`-sets.
pub fn exhaustive_uniform(n: usize, t: usize) -> Result<Vec<Hypergraph>> {
    check_uniform_params(n, t)?;
    let candidates = t_subsets(n, t);
    if candidates.len() > 20 {
        return Err(Error::CapExceeded {
            what: "exhaustive family size 2^C(n,t)",
            requested: 1u128 << candidates.len().min(127),
            limit: 1 << 20,
        });
    }
    Ok((0u64..1 << candidates.len())
        .map(|mask| {
            Hypergraph::from_masks(
                n,
                candidates
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &m)| m),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_examples() {
        assert_eq!(generate(&Family::CompleteUniform { n: 4, t: 3 }).unwrap().num_edges(), 4);
        let cycle = generate(&Family::TightCycle { n: 4, t: 3 }).unwrap();
        let expected = Hypergraph::new(
            4,
            vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 0], vec![3, 0, 1]],
        )
        .unwrap();
        assert_eq!(cycle, expected);
        for seed in 0..20 {
            let h = generate(&Family::RandomUniform { n: 6, t: 3, p: 0.0, seed }).unwrap();
            assert_eq!(h.num_edges(), 0);
        }
    }

    #[test]
    fn random_is_deterministic_and_full_at_p_one() {
        let f = Family::RandomUniform { n: 7, t: 3, p: 0.4, seed: 99 };
        assert_eq!(generate(&f).unwrap(), generate(&f).unwrap());
        let full = generate(&Family::RandomUniform { n: 6, t: 3, p: 1.0, seed: 5 }).unwrap();
        assert_eq!(full.num_edges(), 20);
    }

    #[test]
    fn loose_path_shape() {
        let h = generate(&Family::LoosePath { k: 3, t: 3 }).unwrap();
        assert_eq!(h.num_vertices(), 7);
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]]);
    }

    #[test]
    fn invalid_params() {
        assert!(generate(&Family::CompleteUniform { n: 2, t: 3 }).is_err());
        assert!(generate(&Family::RandomUniform { n: 5, t: 3, p: 1.5, seed: 0 }).is_err());
        assert!(generate(&Family::RandomUniform { n: 5, t: 3, p: -0.1, seed: 0 }).is_err());
        assert!(generate(&Family::SingleEdge { t: 1 }).is_err());
    }

    #[test]
    fn exhaustive_counts() {
        assert_eq!(exhaustive_uniform(5, 3).unwrap().len(), 1024);
        assert_eq!(exhaustive_uniform(4, 2).unwrap().len(), 64);
    }
}
