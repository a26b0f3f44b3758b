//! End-to-end constructions: TM-embeddings of one query, and the subgraphs
//! of a host that avoid every forbidden topological minor of a class.

use std::fmt;
use std::str::FromStr;

use crate::cfbs::{construct_into, ConstructOptions};
use crate::ddops::{decolorize_into, nonsupset_in, Union};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mdd::{FamilyCount, Mdd, MddStore, NodeId};
use crate::profiles::{edge_profile, special_profile, vertex_cover_profile, ExtendedProfile, NamedQuery};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileChoice {
    Vertex,
    Edge,
    Special,
}

impl FromStr for ProfileChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(Self::Vertex),
            "edge" => Ok(Self::Edge),
            "special" => Ok(Self::Special),
            _ => Err(Error::InvalidProfile(format!("unknown profile `{s}`"))),
        }
    }
}

/// A query graph, named or given explicitly.
#[derive(Clone, Debug)]
pub enum Query {
    Named(NamedQuery),
    Graph(Graph),
}

impl Query {
    pub fn graph(&self) -> Graph {
        match self {
            Self::Named(q) => q.graph(),
            Self::Graph(g) => g.clone(),
        }
    }

    pub fn profile(&self, choice: ProfileChoice) -> Result<ExtendedProfile> {
        let h = self.graph();
        match (choice, self) {
            (ProfileChoice::Vertex, _) => vertex_cover_profile(&h),
            (ProfileChoice::Edge, _) => edge_profile(&h),
            (ProfileChoice::Special, Self::Named(q)) => Ok(q.special_profile()),
            (ProfileChoice::Special, Self::Graph(g)) => special_profile(g)
                .ok_or_else(|| Error::InvalidProfile("no specialised profile for this query".into())),
        }
    }
}

/// Per-query construction statistics.
#[derive(Clone, Debug)]
pub struct EmbeddingStats {
    pub query: String,
    pub colors: usize,
    pub s_len: usize,
    pub t_len: usize,
    pub frontier_width: usize,
    /// Size of the `(c+1)`-diagram.
    pub colored_size: usize,
    /// Largest number of configurations on one level.
    pub max_states: usize,
    pub embeddings: FamilyCount,
}

/// TM-embeddings of `profile`'s query into `g`, built into the arity-2 `dst`.
pub fn tm_embeddings_in(g: &Graph, profile: &ExtendedProfile, dst: &mut MddStore) -> (NodeId, EmbeddingStats) {
    let con = &profile.constraint;
    let mut colored = MddStore::new(con.colors() + 1, g.edge_count());
    let (root, cstats) = construct_into(g, con, ConstructOptions::default(), &mut colored);
    let plain = decolorize_into(&colored, root, dst);
    let stats = EmbeddingStats {
        query: profile.query_name.clone(),
        colors: con.colors(),
        s_len: con.s_size(),
        t_len: con.t().len(),
        frontier_width: cstats.frontier_width,
        colored_size: colored.size(root),
        max_states: cstats.states_per_level.iter().copied().max().unwrap_or(0),
        embeddings: dst.count(plain),
    };
    (plain, stats)
}

/// All edge subsets of `g` forming a subdivision of the query.
pub fn tm_embeddings(g: &Graph, query: &Query, choice: ProfileChoice) -> Result<Mdd> {
    let profile = query.profile(choice)?;
    let mut store = MddStore::new(2, g.edge_count());
    let (root, _) = tm_embeddings_in(g, &profile, &mut store);
    Ok(Mdd::new(store, root))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    Planar,
    Outerplanar,
    SeriesParallel,
    Cactus,
}

impl GraphClass {
    pub const ALL: [GraphClass; 4] = [Self::Planar, Self::Outerplanar, Self::SeriesParallel, Self::Cactus];

    pub fn forbidden(self) -> &'static [NamedQuery] {
        match self {
            Self::Planar => &[NamedQuery::K5, NamedQuery::K33],
            Self::Outerplanar => &[NamedQuery::K4, NamedQuery::K23],
            Self::SeriesParallel => &[NamedQuery::K4],
            Self::Cactus => &[NamedQuery::K4e],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Planar => "planar",
            Self::Outerplanar => "outerplanar",
            Self::SeriesParallel => "series-parallel",
            Self::Cactus => "cactus",
        }
    }

    /// The class with profiles chosen per `choice`.
    pub fn spec(self, choice: ProfileChoice) -> GraphClassSpec {
        let forbidden = self
            .forbidden()
            .iter()
            .map(|&q| {
                let profile = Query::Named(q).profile(choice).expect("named queries have every profile");
                (q.graph(), profile)
            })
            .collect();
        GraphClassSpec {
            name: self.name().to_string(),
            forbidden,
        }
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidProfile(format!("unknown graph class `{s}`")))
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A class given by forbidden topological minors, each with its profile.
#[derive(Clone, Debug)]
pub struct GraphClassSpec {
    pub name: String,
    pub forbidden: Vec<(Graph, ExtendedProfile)>,
}

impl From<GraphClass> for GraphClassSpec {
    fn from(c: GraphClass) -> Self {
        c.spec(ProfileChoice::Special)
    }
}

/// All subgraphs of `g` in the class.
pub fn ftm_subgraphs(g: &Graph, cls: &GraphClassSpec) -> Mdd {
    ftm_subgraphs_with_stats(g, cls).0
}

pub fn ftm_subgraphs_with_stats(g: &Graph, cls: &GraphClassSpec) -> (Mdd, Vec<EmbeddingStats>) {
    let mut store = MddStore::new(2, g.edge_count());
    let mut subd = NodeId::BOTTOM;
    let mut union = Union::new();
    let mut stats = Vec::with_capacity(cls.forbidden.len());
    for (_, profile) in &cls.forbidden {
        let (z, st) = tm_embeddings_in(g, profile, &mut store);
        subd = union.apply(&mut store, subd, z);
        stats.push(st);
    }
    let root = nonsupset_in(&mut store, subd);
    (Mdd::new(store, root), stats)
}
