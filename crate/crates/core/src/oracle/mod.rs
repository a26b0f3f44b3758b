//! Ground truth by exhaustive search, independent of the diagram machinery.
//!
//! Edge subsets of a host are `u64` masks with bit `i` standing for edge `i`.

mod homeo;
mod planarity;

pub use homeo::is_homeomorphic;
pub use planarity::is_planar;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mdd::FamilyCount;

/// Largest host accepted by [`brute_tm_embeddings`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Edge indices of a mask, ascending.
pub fn mask_edges(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn mask_of(edges: &[usize]) -> u64 {
    edges.iter().fold(0, |m, &i| m | 1 << i)
}

/// Outcome of [`backtrack_enumerate`].
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub count: FamilyCount,
    /// Members as masks in visiting order, when requested.
    pub members: Option<Vec<u64>>,
}

/// Visits every edge subset satisfying a hereditary predicate by the
/// two-branch recursion: skip `e_i`, or add it if the predicate still holds.
pub fn backtrack_enumerate(
    g: &Graph,
    mut predicate: impl FnMut(u64) -> bool,
    collect: bool,
) -> Result<Enumeration> {
    let m = g.edge_count();
    if m > 64 {
        return Err(Error::TooLarge { edges: m, limit: 64 });
    }
    let mut count = 0u128;
    let mut members = collect.then(Vec::new);
    rec(m, 0, 0, &mut predicate, &mut count, &mut members);
    Ok(Enumeration {
        count: FamilyCount::from(num_bigint::BigUint::from(count)),
        members,
    })
}

fn rec(m: usize, i: usize, set: u64, pred: &mut impl FnMut(u64) -> bool, count: &mut u128, out: &mut Option<Vec<u64>>) {
    if i == m {
        *count += 1;
        if let Some(v) = out {
            v.push(set);
        }
        return;
    }
    rec(m, i + 1, set, pred, count, out);
    let with = set | 1 << i;
    if pred(with) {
        rec(m, i + 1, with, pred, count, out);
    }
}

/// Predicate "the subgraph is planar".
pub fn planar_predicate(g: &Graph) -> impl FnMut(u64) -> bool + '_ {
    move |mask| is_planar(&g.edge_subgraph(mask_edges(mask)))
}

/// Every edge subset of `g` whose edge-induced subgraph is a subdivision of
/// `h`, as masks in increasing numeric order.
pub fn brute_tm_embeddings(g: &Graph, h: &Graph) -> Result<Vec<u64>> {
    let m = g.edge_count();
    if m > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            edges: m,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let hm = h.edge_count() as u32;
    Ok((0..1u64 << m)
        .filter(|mask| mask.count_ones() >= hm && is_homeomorphic(&g.edge_subgraph(mask_edges(*mask)), h))
        .collect())
}

/// Predicate "contains no subdivision of any graph in `forbidden`", by
/// checking the precomputed embeddings for containment.
pub fn tm_free_predicate(g: &Graph, forbidden: &[Graph]) -> Result<impl Fn(u64) -> bool> {
    let mut masks = Vec::new();
    for h in forbidden {
        masks.extend(brute_tm_embeddings(g, h)?);
    }
    Ok(move |set: u64| masks.iter().all(|&e| e & !set != 0))
}
