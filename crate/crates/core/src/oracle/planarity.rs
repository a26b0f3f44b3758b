//! Planarity by path addition on each biconnected block.
//!
//! A block is embedded starting from a cycle. Each round computes the
//! fragments (bridges) of the block relative to the embedded part, and the
//! faces each fragment could go into. A fragment with no admissible face
//! proves non-planarity; otherwise a path through the most constrained
//! fragment is drawn into one of its faces, splitting that face in two.

use std::collections::{HashSet, VecDeque};

use crate::graph::Graph;

pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    blocks(g).iter().all(block_is_planar)
}

/// A block as a local graph: vertex count and edges over `0..n`.
struct Block {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Biconnected components with at least one cycle, by Tarjan's edge stack.
fn blocks(g: &Graph) -> Vec<Block> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut dfs: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent, ref mut next)) = dfs.last_mut() {
            if *next < adj[u].len() {
                let v = adj[u][*next] as usize;
                *next += 1;
                if disc[v] == usize::MAX {
                    stack.push((u, v));
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    dfs.push((v, u, 0));
                } else if v != parent && disc[v] < disc[u] {
                    stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                dfs.pop();
                if let Some(&(p, _, _)) = dfs.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = stack.pop() {
                            comp.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        if comp.len() >= 3 {
                            out.push(localize(&comp));
                        }
                    }
                }
            }
        }
    }
    out
}

fn localize(edges: &[(usize, usize)]) -> Block {
    let mut ids: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let local = |x: usize| ids.binary_search(&x).expect("vertex in block");
    Block {
        n: ids.len(),
        edges: edges.iter().map(|&(a, b)| (local(a), local(b))).collect(),
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn block_is_planar(b: &Block) -> bool {
    let n = b.n;
    if b.edges.len() > 3 * n - 6 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &b.edges {
        adj[u].push(v);
        adj[v].push(u);
    }

    // initial cycle: an edge plus a path avoiding it
    let (u0, v0) = b.edges[0];
    let path = bfs_path(&adj, u0, v0, |a, c| key(a, c) != key(u0, v0))
        .expect("a block edge lies on a cycle");
    let mut embedded_v = vec![false; n];
    let mut embedded_e: HashSet<(usize, usize)> = HashSet::new();
    for w in path.windows(2) {
        embedded_e.insert(key(w[0], w[1]));
    }
    embedded_e.insert(key(u0, v0));
    for &x in &path {
        embedded_v[x] = true;
    }
    let mut faces: Vec<Vec<usize>> = vec![path.clone(), path.iter().rev().copied().collect()];

    while embedded_e.len() < b.edges.len() {
        let frags = fragments(&adj, &embedded_v, &embedded_e);
        let mut choice: Option<(usize, usize)> = None;
        let mut best = usize::MAX;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            if admissible.is_empty() {
                return false;
            }
            if admissible.len() < best {
                best = admissible.len();
                choice = Some((fi, admissible[0]));
            }
        }
        let (fi, face) = choice.expect("some fragment remains");
        let p = fragment_path(&adj, &embedded_v, &frags[fi]);
        for w in p.windows(2) {
            embedded_e.insert(key(w[0], w[1]));
        }
        for &x in &p {
            embedded_v[x] = true;
        }
        let (f1, f2) = split_face(&faces[face], &p);
        faces[face] = f1;
        faces.push(f2);
    }
    true
}

struct Fragment {
    /// Embedded vertices the fragment touches.
    attachments: Vec<usize>,
    /// Either a single chord or the unembedded vertices of one component.
    chord: Option<(usize, usize)>,
    inner: Vec<usize>,
}

fn fragments(adj: &[Vec<usize>], emb_v: &[bool], emb_e: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        if !emb_v[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && emb_v[v] && !emb_e.contains(&key(u, v)) {
                out.push(Fragment {
                    attachments: vec![u, v],
                    chord: Some((u, v)),
                    inner: Vec::new(),
                });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if emb_v[s] || seen[s] {
            continue;
        }
        let mut inner = vec![s];
        let mut att = Vec::new();
        seen[s] = true;
        let mut i = 0;
        while i < inner.len() {
            let x = inner[i];
            i += 1;
            for &y in &adj[x] {
                if emb_v[y] {
                    att.push(y);
                } else if !seen[y] {
                    seen[y] = true;
                    inner.push(y);
                }
            }
        }
        att.sort_unstable();
        att.dedup();
        out.push(Fragment {
            attachments: att,
            chord: None,
            inner,
        });
    }
    out
}

/// A path through the fragment between two distinct attachments.
fn fragment_path(adj: &[Vec<usize>], emb_v: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = frag.attachments[0];
    let target: HashSet<usize> = frag.attachments[1..].iter().copied().collect();
    let inner: HashSet<usize> = frag.inner.iter().copied().collect();
    // a -> inner vertices -> another attachment
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for &x in &adj[a] {
        if inner.contains(&x) && parent[x] == usize::MAX {
            parent[x] = a;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if emb_v[y] {
                if target.contains(&y) {
                    let mut p = vec![y, x];
                    let mut cur = x;
                    while parent[cur] != a {
                        cur = parent[cur];
                        p.push(cur);
                    }
                    p.push(a);
                    p.reverse();
                    return p;
                }
            } else if parent[y] == usize::MAX && inner.contains(&y) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragment of a block has two attachments")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().expect("nonempty path");
    let k = face.len();
    let i = face.iter().position(|&x| x == a).expect("attachment on face");
    let j = face.iter().position(|&x| x == b).expect("attachment on face");
    let inner = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut t = i;
    loop {
        f1.push(face[t]);
        if t == j {
            break;
        }
        t = (t + 1) % k;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut t = j;
    loop {
        f2.push(face[t]);
        if t == i {
            break;
        }
        t = (t + 1) % k;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

fn bfs_path(
    adj: &[Vec<usize>],
    from: usize,
    to: usize,
    edge_ok: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut p = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                p.push(cur);
            }
            p.reverse();
            return Some(p);
        }
        for &y in &adj[x] {
            if parent[y] == usize::MAX && edge_ok(x, y) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}
