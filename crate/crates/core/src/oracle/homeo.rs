//! Deciding whether a graph is a subdivision of a query graph.
//!
//! Only the query is subdivided: every vertex of `f` whose degree is not 2 is
//! a branch vertex, and exactly as many degree-2 vertices of `f` as `h` has
//! degree-2 vertices are branch vertices too. For each such choice the
//! threads between branch vertices are traced, and the resulting reduced
//! graph is tested for isomorphism with `h`.

use crate::graph::Graph;

/// True iff the edge-induced graph of `f` (isolated vertices ignored) is
/// isomorphic to a subdivision of `h`.
pub fn is_homeomorphic(f: &Graph, h: &Graph) -> bool {
    let hdeg = h.degrees();
    if hdeg.contains(&0) || h.edge_count() == 0 {
        return false;
    }
    let fdeg = f.degrees();
    let f_vertices = fdeg.iter().filter(|&&d| d > 0).count();
    // subdividing preserves |E| - |V|
    if f.edge_count() + h.vertex_count() != h.edge_count() + f_vertices {
        return false;
    }
    let mut hd: Vec<usize> = hdeg.iter().copied().filter(|&d| d != 2).collect();
    let mut fd: Vec<usize> = fdeg.iter().copied().filter(|&d| d != 2 && d != 0).collect();
    hd.sort_unstable();
    fd.sort_unstable();
    if hd != fd {
        return false;
    }
    let need2 = hdeg.iter().filter(|&&d| d == 2).count();
    let twos: Vec<usize> = (0..fdeg.len()).filter(|&v| fdeg[v] == 2).collect();
    if twos.len() < need2 {
        return false;
    }
    let adj = f.adjacency();
    let hadj = h.adjacency();
    let mut branch: Vec<bool> = fdeg.iter().map(|&d| d != 0 && d != 2).collect();
    let mut chosen = Vec::new();
    choose(&twos, need2, 0, &mut chosen, &mut |pick| {
        for &v in pick {
            branch[v] = true;
        }
        let ok = reduce(f, &adj, &branch).is_some_and(|r| isomorphic(&r, &hadj));
        for &v in pick {
            branch[v] = false;
        }
        ok
    })
}

/// Calls `f` on every `k`-subset of `items` until it returns true.
fn choose(items: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == k {
        return f(cur);
    }
    for i in from..items.len() {
        if items.len() - i < k - cur.len() {
            break;
        }
        cur.push(items[i]);
        if choose(items, k, i + 1, cur, f) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Adjacency lists of the graph on branch vertices obtained by smoothing
/// every other vertex. `None` when a thread closes into a loop, two threads
/// join the same pair, or a cycle avoids all branch vertices.
fn reduce(f: &Graph, adj: &[Vec<u32>], branch: &[bool]) -> Option<Vec<Vec<usize>>> {
    let ids: Vec<usize> = (0..branch.len()).filter(|&v| branch[v]).collect();
    let mut local = vec![usize::MAX; branch.len()];
    for (i, &v) in ids.iter().enumerate() {
        local[v] = i;
    }
    let mut radj = vec![Vec::new(); ids.len()];
    let mut covered = 0usize;
    for &b in &ids {
        for &first in &adj[b] {
            let (mut prev, mut cur) = (b, first as usize);
            let mut len = 1;
            while !branch[cur] {
                let next = adj[cur].iter().map(|&x| x as usize).find(|&x| x != prev)?;
                prev = cur;
                cur = next;
                len += 1;
            }
            if cur == b {
                return None;
            }
            if b < cur {
                if radj[local[b]].contains(&local[cur]) {
                    return None;
                }
                radj[local[b]].push(local[cur]);
                radj[local[cur]].push(local[b]);
                covered += len;
            }
        }
    }
    (covered == f.edge_count()).then_some(radj)
}

/// Brute-force isomorphism of two simple graphs with equal edge counts.
fn isomorphic(r: &[Vec<usize>], h: &[Vec<u32>]) -> bool {
    let n = h.len();
    if r.len() != n || r.iter().map(Vec::len).sum::<usize>() != h.iter().map(Vec::len).sum::<usize>() {
        return false;
    }
    // map h vertices in BFS-ish order so adjacency constrains early
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h[v].len()));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, &order, r, h, &mut map, &mut used)
}

fn extend(k: usize, order: &[usize], r: &[Vec<usize>], h: &[Vec<u32>], map: &mut [usize], used: &mut [bool]) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    for x in 0..r.len() {
        if used[x] || r[x].len() != h[v].len() {
            continue;
        }
        let consistent = h[v].iter().all(|&w| {
            let img = map[w as usize];
            img == usize::MAX || r[x].contains(&img)
        });
        if !consistent {
            continue;
        }
        map[v] = x;
        used[x] = true;
        if extend(k + 1, order, r, h, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[x] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite_graph, complete_graph, cycle_graph};
    use crate::profiles::diamond_graph;

    /// Replaces each edge `i` of `h` by a path with `splits[i]` inner vertices.
    fn subdivide(h: &Graph, splits: &[usize]) -> Graph {
        let mut n = h.vertex_count() as u32;
        let mut edges = Vec::new();
        for (&(u, v), &k) in h.edges().iter().zip(splits) {
            let mut prev = u;
            for _ in 0..k {
                edges.push((prev, n));
                prev = n;
                n += 1;
            }
            edges.push((prev, v));
        }
        Graph::new(n as usize, edges).unwrap()
    }

    #[test]
    fn cycles_are_triangles() {
        assert!(is_homeomorphic(&cycle_graph(4), &complete_graph(3)));
        assert!(is_homeomorphic(&complete_graph(3), &complete_graph(3)));
        assert!(!is_homeomorphic(&complete_graph(4), &complete_graph(3)));
    }

    #[test]
    fn exact_decomposition_required() {
        assert!(!is_homeomorphic(&complete_graph(4), &diamond_graph()));
        assert!(is_homeomorphic(&diamond_graph(), &diamond_graph()));
        assert!(is_homeomorphic(&subdivide(&diamond_graph(), &[0, 2, 0, 1, 0]), &diamond_graph()));
    }

    #[test]
    fn many_subdivisions_of_k5() {
        // eleven subdividing vertices spread over the ten edges
        let g = subdivide(&complete_graph(5), &[1, 2, 0, 1, 1, 0, 2, 1, 2, 1]);
        assert_eq!(g.vertex_count(), 16);
        assert!(is_homeomorphic(&g, &complete_graph(5)));
        assert!(!is_homeomorphic(&g, &complete_bipartite_graph(3, 3)));
    }

    #[test]
    fn degree_two_branch_vertices() {
        // theta graph with three paths of length 2 is K_{2,3}
        assert!(is_homeomorphic(&complete_bipartite_graph(2, 3), &complete_bipartite_graph(2, 3)));
        // a 4-cycle with a chord is the diamond; the cycle alone is not
        assert!(!is_homeomorphic(&cycle_graph(4), &diamond_graph()));
        // two disjoint triangles are not one
        let two = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_homeomorphic(&two, &complete_graph(3)));
    }

    #[test]
    fn isolated_vertices_of_f_are_ignored() {
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_homeomorphic(&g, &complete_graph(3)));
    }

    #[test]
    fn k4_plus_separate_cycle_is_rejected() {
        // a 4-cycle hidden among degree-2 vertices next to a K_4
        let mut e = complete_graph(4).edges().to_vec();
        e.extend([(4, 5), (5, 6), (6, 7), (7, 4)]);
        assert!(!is_homeomorphic(&Graph::new(8, e).unwrap(), &complete_graph(4)));
    }
}
