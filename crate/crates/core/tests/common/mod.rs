#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tmdd::graph::{complete_bipartite_graph, complete_graph, cycle_graph, Graph};
use tmdd::oracle::mask_edges;

/// `count` random simple graphs with `n` in `vertices` and `m` in `edges`
/// (capped by `n(n-1)/2`), reproducible from `seed`.
pub fn random_hosts(
    seed: u64,
    count: usize,
    vertices: std::ops::RangeInclusive<usize>,
    edges: std::ops::RangeInclusive<usize>,
) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(vertices.clone());
            let mut pairs: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
                .collect();
            pairs.shuffle(&mut rng);
            let hi = (*edges.end()).min(pairs.len());
            let lo = (*edges.start()).min(hi);
            let m = rng.gen_range(lo..=hi);
            pairs.truncate(m);
            Graph::new(n, pairs).unwrap()
        })
        .collect()
}

/// Every connected labelled simple graph on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs.len() {
        let edges: Vec<(u32, u32)> = mask_edges(mask).into_iter().map(|i| pairs[i]).collect();
        let g = Graph::new(n, edges).unwrap();
        if is_connected(&g) {
            out.push(g);
        }
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let adj = g.adjacency();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v as usize] {
                seen[v as usize] = true;
                stack.push(v as usize);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

pub fn wheel(rim: usize) -> Graph {
    let mut e: Vec<(u32, u32)> = cycle_graph(rim).edges().to_vec();
    e.extend((0..rim as u32).map(|i| (i, rim as u32)));
    Graph::new(rim + 1, e).unwrap()
}

pub fn prism() -> Graph {
    Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
}

/// Named small hosts with at most `max_edges` edges.
pub fn named_hosts(max_edges: usize) -> Vec<(String, Graph)> {
    let mut v = vec![
        ("K4".to_string(), complete_graph(4)),
        ("K5".to_string(), complete_graph(5)),
        ("K6".to_string(), complete_graph(6)),
        ("K2,3".to_string(), complete_bipartite_graph(2, 3)),
        ("K3,3".to_string(), complete_bipartite_graph(3, 3)),
        ("K3,4".to_string(), complete_bipartite_graph(3, 4)),
        ("K3,5".to_string(), complete_bipartite_graph(3, 5)),
        ("W5".to_string(), wheel(5)),
        ("W6".to_string(), wheel(6)),
        ("prism".to_string(), prism()),
        ("petersen".to_string(), petersen()),
        ("C7".to_string(), cycle_graph(7)),
    ];
    v.retain(|(_, g)| g.edge_count() <= max_edges);
    v
}

/// Sorted list of sorted edge-index sets from masks.
pub fn sets_of_masks(masks: impl IntoIterator<Item = u64>) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = masks.into_iter().map(mask_edges).collect();
    v.sort();
    v
}

pub fn sorted(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    v.sort();
    v
}
