//! Extended profiles of query graphs.
//!
//! A profile colours the edges of a query `H` so that every colour class is
//! connected and the coloured degree multiset pins `H` down up to
//! isomorphism. Adding the subdividing degrees `Δ^c` as the free part `t`
//! turns it into a description of every subdivision of `H`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cfbs::{ColoredDegree, DegreeConstraint};
use crate::error::{Error, Result};
use crate::graph::{complete_bipartite_graph, complete_graph, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedProfile {
    pub constraint: DegreeConstraint,
    pub query_name: String,
}

impl ExtendedProfile {
    fn new(query_name: impl Into<String>, colors: usize, s: Vec<ColoredDegree>) -> Result<Self> {
        let constraint = DegreeConstraint::from_multiset(colors, s, DegreeConstraint::delta_two(colors))?;
        Ok(Self {
            constraint,
            query_name: query_name.into(),
        })
    }

    pub fn colors(&self) -> usize {
        self.constraint.colors()
    }

    /// `s` as a sorted list with repetitions.
    pub fn s_list(&self) -> Vec<ColoredDegree> {
        self.constraint
            .s()
            .iter()
            .flat_map(|(d, &k)| std::iter::repeat_n(d.clone(), k))
            .collect()
    }

    /// `s` with colours permuted into a canonical order, for comparing
    /// profiles that differ only by colour naming.
    pub fn canonical_s(&self) -> Vec<ColoredDegree> {
        let c = self.colors();
        let list = self.s_list();
        let mut best: Option<Vec<ColoredDegree>> = None;
        let mut perm: Vec<usize> = (0..c).collect();
        permute(&mut perm, 0, &mut |p| {
            let mut v: Vec<ColoredDegree> = list
                .iter()
                .map(|d| ColoredDegree(p.iter().map(|&i| d.0[i]).collect()))
                .collect();
            v.sort();
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        });
        best.unwrap_or_default()
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

impl fmt::Display for ExtendedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: c={} s={{", self.query_name, self.colors())?;
        for (i, (d, k)) in self.constraint.s().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if *k == 1 {
                write!(f, "{d}")?;
            } else {
                write!(f, "{d}^{k}")?;
            }
        }
        write!(f, "}}")
    }
}

fn reject_isolated(h: &Graph) -> Result<()> {
    if h.edge_count() == 0 {
        return Err(Error::InvalidProfile("query has no edges".into()));
    }
    if let Some(v) = h.degrees().iter().position(|&d| d == 0) {
        return Err(Error::InvalidProfile(format!("query vertex {} is isolated", v + 1)));
    }
    Ok(())
}

/// Minimum vertex cover by exhaustive search; among minimum covers the
/// lexicographically smallest sorted vertex list wins.
pub fn min_vertex_cover(h: &Graph) -> Vec<Vertex> {
    let n = h.vertex_count();
    assert!(n <= 24, "query too large for exhaustive cover search");
    let covers = |set: &[Vertex]| h.edges().iter().all(|(u, v)| set.contains(u) || set.contains(v));
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let set: Vec<Vertex> = idx.iter().map(|&i| i as Vertex).collect();
            if covers(&set) {
                return set;
            }
            // next k-combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    (0..n as Vertex).collect()
}

/// Coloured degree multiset of `h` under `color_of[edge]` (0-based colours).
fn degree_multiset(h: &Graph, colors: usize, color_of: &[usize]) -> Vec<ColoredDegree> {
    let mut deg = vec![vec![0u8; colors]; h.vertex_count()];
    for (&(u, v), &j) in h.edges().iter().zip(color_of) {
        deg[u as usize][j] += 1;
        deg[v as usize][j] += 1;
    }
    deg.into_iter().map(ColoredDegree).collect()
}

/// One colour per edge.
pub fn edge_profile(h: &Graph) -> Result<ExtendedProfile> {
    reject_isolated(h)?;
    let m = h.edge_count();
    let color_of: Vec<usize> = (0..m).collect();
    ExtendedProfile::new("edge", m, degree_multiset(h, m, &color_of))
}

/// One colour per vertex of a minimum cover; each edge joins the star of its
/// first cover endpoint.
pub fn vertex_cover_profile(h: &Graph) -> Result<ExtendedProfile> {
    reject_isolated(h)?;
    let cover = min_vertex_cover(h);
    let mut color_of: Vec<usize> = h
        .edges()
        .iter()
        .map(|(u, v)| {
            cover
                .iter()
                .position(|x| x == u || x == v)
                .expect("cover touches every edge")
        })
        .collect();
    // drop colours that received no edge
    let mut used = color_of.clone();
    used.sort_unstable();
    used.dedup();
    let rank: BTreeMap<usize, usize> = used.iter().enumerate().map(|(r, &j)| (j, r)).collect();
    for j in &mut color_of {
        *j = rank[j];
    }
    let c = used.len();
    ExtendedProfile::new("vertex", c, degree_multiset(h, c, &color_of))
}

/// Profile of subdivisions of `K_a` with `a - 2` colours.
pub fn complete_profile(a: usize) -> Result<ExtendedProfile> {
    if a < 3 {
        return Err(Error::InvalidProfile(format!("K_{a}: need a >= 3")));
    }
    let c = a - 2;
    let mut s = Vec::with_capacity(a);
    let mut first = vec![1u8; c];
    first[0] = 2;
    for _ in 0..3 {
        s.push(ColoredDegree(first.clone()));
    }
    for i in 2..=c {
        let d = (1..=c)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => (i + 1) as u8,
                std::cmp::Ordering::Greater => 1,
            })
            .collect();
        s.push(ColoredDegree(d));
    }
    ExtendedProfile::new(format!("K{a}"), c, s)
}

/// Profile of subdivisions of `K_{a,b}` with `a` colours.
pub fn complete_bipartite_profile(a: usize, b: usize) -> Result<ExtendedProfile> {
    if a == 0 || a > b {
        return Err(Error::InvalidProfile(format!("K_{{{a},{b}}}: need 1 <= a <= b")));
    }
    let mut s = Vec::with_capacity(a + b);
    for i in 0..a {
        let mut d = vec![0u8; a];
        d[i] = b as u8;
        s.push(ColoredDegree(d));
    }
    for _ in 0..b {
        s.push(ColoredDegree(vec![1; a]));
    }
    ExtendedProfile::new(format!("K{a},{b}"), a, s)
}

/// Profile of subdivisions of `K_4 - e`.
pub fn diamond_profile() -> ExtendedProfile {
    let s = [[3, 0], [1, 2], [1, 1], [1, 1]]
        .iter()
        .map(|d| ColoredDegree(d.to_vec()))
        .collect();
    ExtendedProfile::new("K4-e", 2, s).expect("fixed profile is well formed")
}

/// `K_4` minus one edge, with vertices `a, b, c, d` as `0..4` and `bd` missing.
pub fn diamond_graph() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (0, 3), (2, 1), (2, 3)]).expect("fixed graph")
}

/// The specialised profile when `h` is a complete graph, a complete
/// bipartite graph or `K_4 - e`.
pub fn special_profile(h: &Graph) -> Option<ExtendedProfile> {
    let n = h.vertex_count();
    let m = h.edge_count();
    if reject_isolated(h).is_err() {
        return None;
    }
    if n >= 3 && m == n * (n - 1) / 2 {
        return complete_profile(n).ok();
    }
    if n == 4 && m == 5 {
        return Some(diamond_profile());
    }
    let side = bipartition(h)?;
    let a = side.iter().filter(|&&x| x).count();
    let (a, b) = (a.min(n - a), a.max(n - a));
    if a * b == m {
        return complete_bipartite_profile(a, b).ok();
    }
    None
}

fn bipartition(h: &Graph) -> Option<Vec<bool>> {
    let adj = h.adjacency();
    let n = h.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let su = side[u].expect("visited");
            for &v in &adj[u] {
                match side[v as usize] {
                    None => {
                        side[v as usize] = Some(!su);
                        stack.push(v as usize);
                    }
                    Some(sv) if sv == su => return None,
                    _ => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|x| x.expect("all visited")).collect())
}

/// Named query graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedQuery {
    K3,
    K4,
    K4e,
    K5,
    K23,
    K33,
}

impl NamedQuery {
    pub const ALL: [NamedQuery; 6] = [Self::K3, Self::K4, Self::K4e, Self::K5, Self::K23, Self::K33];

    pub fn graph(self) -> Graph {
        match self {
            Self::K3 => complete_graph(3),
            Self::K4 => complete_graph(4),
            Self::K4e => diamond_graph(),
            Self::K5 => complete_graph(5),
            Self::K23 => complete_bipartite_graph(2, 3),
            Self::K33 => complete_bipartite_graph(3, 3),
        }
    }

    pub fn special_profile(self) -> ExtendedProfile {
        match self {
            Self::K3 => complete_profile(3),
            Self::K4 => complete_profile(4),
            Self::K4e => Ok(diamond_profile()),
            Self::K5 => complete_profile(5),
            Self::K23 => complete_bipartite_profile(2, 3),
            Self::K33 => complete_bipartite_profile(3, 3),
        }
        .expect("fixed parameters are valid")
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::K3 => "k3",
            Self::K4 => "k4",
            Self::K4e => "k4e",
            Self::K5 => "k5",
            Self::K23 => "k23",
            Self::K33 => "k33",
        }
    }
}

impl FromStr for NamedQuery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|q| q.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidProfile(format!("unknown query `{s}`")))
    }
}

impl fmt::Display for NamedQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degs(list: &[&[u8]]) -> Vec<ColoredDegree> {
        let mut v: Vec<ColoredDegree> = list.iter().map(|d| ColoredDegree(d.to_vec())).collect();
        v.sort();
        v
    }

    fn single_edge() -> Graph {
        Graph::new(2, [(0, 1)]).unwrap()
    }

    fn handshake(p: &ExtendedProfile, h: &Graph) {
        assert_eq!(p.constraint.s_size(), h.vertex_count());
        let total: usize = p.s_list().iter().map(|d| d.total()).sum();
        assert_eq!(total, 2 * h.edge_count());
        assert_eq!(p.constraint.t(), &DegreeConstraint::delta_two(p.colors()));
    }

    #[test]
    fn covers() {
        assert_eq!(min_vertex_cover(&complete_graph(5)).len(), 4);
        assert_eq!(min_vertex_cover(&complete_bipartite_graph(3, 3)), vec![0, 1, 2]);
        assert_eq!(min_vertex_cover(&diamond_graph()), vec![0, 2]);
    }

    #[test]
    fn edge_profiles() {
        let p = edge_profile(&single_edge()).unwrap();
        assert_eq!(p.colors(), 1);
        assert_eq!(p.s_list(), degs(&[&[1], &[1]]));
        assert_eq!(p.constraint.t(), &DegreeConstraint::delta_two(1));
        let p = edge_profile(&complete_graph(3)).unwrap();
        assert_eq!(p.s_list(), degs(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(edge_profile(&complete_graph(5)).unwrap().colors(), 10);
    }

    #[test]
    fn vertex_cover_profiles() {
        let p = vertex_cover_profile(&complete_bipartite_graph(2, 3)).unwrap();
        assert_eq!(p.colors(), 2);
        assert_eq!(p.s_list(), degs(&[&[3, 0], &[0, 3], &[1, 1], &[1, 1], &[1, 1]]));
        let p = vertex_cover_profile(&diamond_graph()).unwrap();
        assert_eq!(p.s_list(), degs(&[&[3, 0], &[1, 2], &[1, 1], &[1, 1]]));
        let p = vertex_cover_profile(&single_edge()).unwrap();
        assert_eq!(p.s_list(), degs(&[&[1], &[1]]));
    }

    #[test]
    fn vertex_cover_colours_are_nonempty() {
        // every vertex of a minimum cover owns an edge to a non-cover vertex
        let h = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(min_vertex_cover(&h), vec![1, 3]);
        assert_eq!(vertex_cover_profile(&h).unwrap().colors(), 2);
        let p = vertex_cover_profile(&complete_graph(3)).unwrap();
        assert_eq!(p.colors(), 2);
        handshake(&p, &complete_graph(3));
    }

    #[test]
    fn complete_profiles() {
        let p = complete_profile(5).unwrap();
        assert_eq!(p.colors(), 3);
        assert_eq!(p.s_list(), degs(&[&[2, 1, 1], &[2, 1, 1], &[2, 1, 1], &[0, 3, 1], &[0, 0, 4]]));
        assert_eq!(complete_profile(3).unwrap().s_list(), degs(&[&[2], &[2], &[2]]));
        assert_eq!(complete_profile(4).unwrap().s_list(), degs(&[&[2, 1], &[2, 1], &[2, 1], &[0, 3]]));
        assert!(complete_profile(2).is_err());
    }

    #[test]
    fn complete_bipartite_profiles() {
        let p = complete_bipartite_profile(3, 3).unwrap();
        assert_eq!(
            p.s_list(),
            degs(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3], &[1, 1, 1], &[1, 1, 1], &[1, 1, 1]])
        );
        let p = complete_bipartite_profile(2, 3).unwrap();
        assert_eq!(p.s_list(), degs(&[&[3, 0], &[0, 3], &[1, 1], &[1, 1], &[1, 1]]));
        assert_eq!(complete_bipartite_profile(1, 1).unwrap().s_list(), degs(&[&[1], &[1]]));
        assert!(complete_bipartite_profile(3, 2).is_err());
    }

    #[test]
    fn diamond() {
        let p = diamond_profile();
        assert_eq!(p.constraint.s_size(), 4);
        assert_eq!(p.canonical_s(), vertex_cover_profile(&diamond_graph()).unwrap().canonical_s());
        assert_eq!(p.constraint.t(), &DegreeConstraint::delta_two(2));
        assert_eq!(p.constraint.t().len(), 2);
    }

    #[test]
    fn handshake_holds_for_every_builder() {
        for a in 3..=7 {
            handshake(&complete_profile(a).unwrap(), &complete_graph(a));
            handshake(&vertex_cover_profile(&complete_graph(a)).unwrap(), &complete_graph(a));
            handshake(&edge_profile(&complete_graph(a)).unwrap(), &complete_graph(a));
        }
        for a in 1..=3 {
            for b in a..=4 {
                let h = complete_bipartite_graph(a, b);
                handshake(&complete_bipartite_profile(a, b).unwrap(), &h);
                handshake(&vertex_cover_profile(&h).unwrap(), &h);
            }
        }
        handshake(&diamond_profile(), &diamond_graph());
    }

    #[test]
    fn colour_savings() {
        for a in 3..=7 {
            assert_eq!(complete_profile(a).unwrap().colors(), a - 2);
            assert_eq!(vertex_cover_profile(&complete_graph(a)).unwrap().colors(), a - 1);
        }
        assert_eq!(complete_bipartite_profile(3, 4).unwrap().colors(), 3);
    }

    #[test]
    fn isolated_vertices_rejected() {
        let h = Graph::new(3, [(0, 1)]).unwrap();
        assert!(vertex_cover_profile(&h).is_err());
        assert!(edge_profile(&h).is_err());
        assert!(special_profile(&h).is_none());
    }

    #[test]
    fn special_recognition() {
        for q in NamedQuery::ALL {
            assert_eq!(special_profile(&q.graph()).unwrap().canonical_s(), q.special_profile().canonical_s());
        }
        assert!(special_profile(&crate::graph::cycle_graph(5)).is_none());
        assert_eq!("K33".parse::<NamedQuery>().unwrap(), NamedQuery::K33);
        assert!("k7".parse::<NamedQuery>().is_err());
    }
}
