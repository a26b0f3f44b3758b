//! Colourful frontier-based search.
//!
//! Builds the `(c+1)`-diagram of all `c`-coloured edge subsets of a host
//! graph whose coloured degree multiset is `s` plus any number of degrees from
//! `t`, and whose colour classes are each connected. Nodes are processed one
//! edge at a time; two nodes at the same level merge when their
//! configurations restricted to the frontier agree.
//!
//! A configuration holds, for the current frontier,
//!
//! * `deg`: the coloured degree of every frontier vertex,
//! * `dn`: how many retired vertices were attributed to each `δ ∈ s`,
//! * `comp`: per unfinished colour, the connected components among frontier
//!   vertices that already touch that colour,
//! * `done`: which colours have closed their single connected component.
//!
//! Vertices that leave the frontier untouched are simply absent from the
//! subgraph. On the hot path a configuration lives as a packed byte key;
//! [`Configuration`] is the readable form used by the public API and tests.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::build::{expand, LevelSpec, Step};
use crate::error::{Error, Result};
use crate::graph::{compute_frontiers, FrontierSchedule, Graph, Vertex};
use crate::mdd::{Mdd, MddStore};

/// Per-colour degree tuple `(δ_1, .., δ_c)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredDegree(pub Vec<u8>);

impl ColoredDegree {
    pub fn zero(colors: usize) -> Self {
        Self(vec![0; colors])
    }

    /// The subdividing-vertex degree: 2 in colour `color` (0-based), 0 elsewhere.
    pub fn two_in(colors: usize, color: usize) -> Self {
        let mut d = vec![0; colors];
        d[color] = 2;
        Self(d)
    }

    pub fn colors(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &ColoredDegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for ColoredDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<&[u8]> for ColoredDegree {
    fn from(v: &[u8]) -> Self {
        Self(v.to_vec())
    }
}

/// The constraint `C_s^t`: exactly `s(δ)` vertices of each degree `δ ∈ s`,
/// any number of vertices with a degree in `t`, nothing else, and every
/// colour class connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeConstraint {
    colors: usize,
    s: BTreeMap<ColoredDegree, usize>,
    t: BTreeSet<ColoredDegree>,
}

impl DegreeConstraint {
    pub fn new(
        colors: usize,
        s: impl IntoIterator<Item = (ColoredDegree, usize)>,
        t: impl IntoIterator<Item = ColoredDegree>,
    ) -> Result<Self> {
        if colors == 0 || colors > 64 {
            return Err(Error::InvalidProfile(format!("{colors} colours (supported: 1..=64)")));
        }
        let mut sm: BTreeMap<ColoredDegree, usize> = BTreeMap::new();
        for (d, k) in s {
            *sm.entry(d).or_default() += k;
        }
        sm.retain(|_, k| *k > 0);
        let t: BTreeSet<ColoredDegree> = t.into_iter().collect();
        for d in sm.keys().chain(t.iter()) {
            if d.colors() != colors {
                return Err(Error::InvalidProfile(format!("degree {d} does not have {colors} colours")));
            }
            if d.is_zero() {
                return Err(Error::InvalidProfile("the all-zero degree is implicit".into()));
            }
        }
        if let Some((d, k)) = sm.iter().find(|(_, &k)| k > u8::MAX as usize) {
            return Err(Error::InvalidProfile(format!("multiplicity {k} of {d} too large")));
        }
        Ok(Self { colors, s: sm, t })
    }

    /// Builds `s` from a list with repetitions.
    pub fn from_multiset(
        colors: usize,
        s: impl IntoIterator<Item = ColoredDegree>,
        t: impl IntoIterator<Item = ColoredDegree>,
    ) -> Result<Self> {
        Self::new(colors, s.into_iter().map(|d| (d, 1)), t)
    }

    /// `Δ^c`: the `c` subdividing-vertex degrees.
    pub fn delta_two(colors: usize) -> BTreeSet<ColoredDegree> {
        (0..colors).map(|i| ColoredDegree::two_in(colors, i)).collect()
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn s(&self) -> &BTreeMap<ColoredDegree, usize> {
        &self.s
    }

    pub fn t(&self) -> &BTreeSet<ColoredDegree> {
        &self.t
    }

    /// Total multiplicity of `s`.
    pub fn s_size(&self) -> usize {
        self.s.values().sum()
    }

    /// Distinct tuples of `s ∪ t`.
    pub fn union(&self) -> BTreeSet<ColoredDegree> {
        self.s.keys().chain(self.t.iter()).cloned().collect()
    }

    /// `down(s ∪ t)`: every tuple dominated by a member of `s ∪ t`.
    pub fn down_set(&self) -> BTreeSet<ColoredDegree> {
        let mut out = BTreeSet::new();
        for top in self.union() {
            let mut cur = vec![0u8; self.colors];
            loop {
                out.insert(ColoredDegree(cur.clone()));
                // odometer over the box below `top`
                let mut i = 0;
                while i < self.colors {
                    if cur[i] < top.0[i] {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = 0;
                    i += 1;
                }
                if i == self.colors {
                    break;
                }
            }
        }
        out
    }
}

/// Readable form of a frontier configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    /// Frontier vertices in ascending order with their coloured degrees.
    pub deg: Vec<(Vertex, ColoredDegree)>,
    /// Retired-vertex counts, one per tuple of `s` in ascending tuple order.
    pub dn: Vec<usize>,
    /// Per colour, the components among frontier vertices of positive degree
    /// in that colour. Block order and vertex order are not significant.
    pub comp: Vec<Vec<Vec<Vertex>>>,
    pub done: Vec<bool>,
}

impl Configuration {
    /// The configuration of the root node.
    pub fn root(con: &DegreeConstraint) -> Self {
        Self {
            deg: Vec::new(),
            dn: vec![0; con.s.len()],
            comp: vec![Vec::new(); con.colors],
            done: vec![false; con.colors],
        }
    }

    /// Checks the configuration invariants against the constraint.
    pub fn check(&self, con: &DegreeConstraint) -> std::result::Result<(), String> {
        for ((d, &k), &got) in con.s.iter().zip(&self.dn) {
            if got > k {
                return Err(format!("dn[{d}] = {got} exceeds {k}"));
            }
        }
        let union = con.union();
        for (v, d) in &self.deg {
            if !union.iter().any(|top| d.dominated_by(top)) {
                return Err(format!("degree {d} of vertex {v} not dominated"));
            }
        }
        for j in 0..con.colors {
            let tracked: BTreeSet<Vertex> = self
                .deg
                .iter()
                .filter(|(_, d)| d.0[j] > 0)
                .map(|&(v, _)| v)
                .collect();
            if self.done[j] && !tracked.is_empty() {
                return Err(format!("colour {} done but still present", j + 1));
            }
            let mut in_blocks = BTreeSet::new();
            for block in &self.comp[j] {
                for &v in block {
                    if !in_blocks.insert(v) {
                        return Err(format!("vertex {v} in two blocks of colour {}", j + 1));
                    }
                }
            }
            if in_blocks != tracked {
                return Err(format!("components of colour {} do not match degrees", j + 1));
            }
        }
        Ok(())
    }
}

/// Serialises a configuration so that configurations equal up to the naming
/// of component blocks get equal keys.
///
/// Layout: done bitmask bytes, `dn` bytes, then for each frontier vertex in
/// ascending order its `c` degree bytes followed by its `c` component labels,
/// where labels are renamed per colour in order of first occurrence and 0
/// means untracked.
pub fn canonical_key(cfg: &Configuration) -> Vec<u8> {
    let c = cfg.done.len();
    let mut key = Vec::new();
    let mut mask = 0u64;
    for (j, &d) in cfg.done.iter().enumerate() {
        if d {
            mask |= 1 << j;
        }
    }
    key.extend_from_slice(&mask.to_le_bytes()[..mask_bytes(c)]);
    key.extend(cfg.dn.iter().map(|&x| x as u8));
    let mut deg = cfg.deg.clone();
    deg.sort_by_key(|&(v, _)| v);
    let mut labels = vec![vec![0u8; c]; deg.len()];
    for (j, blocks) in cfg.comp.iter().enumerate().take(c) {
        let mut next = 1u8;
        let mut naming: BTreeMap<usize, u8> = BTreeMap::new();
        for (p, (v, _)) in deg.iter().enumerate() {
            if let Some(b) = blocks.iter().position(|blk| blk.contains(v)) {
                labels[p][j] = *naming.entry(b).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
            }
        }
    }
    for (p, (_, d)) in deg.iter().enumerate() {
        key.extend_from_slice(&d.0);
        key.extend_from_slice(&labels[p]);
    }
    key
}

fn mask_bytes(colors: usize) -> usize {
    colors.div_ceil(8)
}

/// Result of following one arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transition {
    Bottom,
    Top,
    Next(Configuration),
}

/// Precomputed per-edge bookkeeping.
#[derive(Clone, Debug)]
struct LevelPlan {
    /// `|F_i|`.
    before: usize,
    /// Working positions of the endpoints; `F_i` occupies `0..before`, newly
    /// entering vertices follow.
    ends: [usize; 2],
    /// Working set size.
    working: usize,
    /// Working positions of vertices leaving after this edge.
    leaving: Vec<usize>,
    /// For each vertex of `F_{i+1}`, its working position.
    next_from: Vec<usize>,
}

/// Options for [`construct_with`].
#[derive(Clone, Copy, Debug)]
pub struct ConstructOptions {
    /// Merge nodes with equal configurations. Disabling this builds the full
    /// decision tree and exists for testing.
    pub merge: bool,
    /// Check configuration invariants on every transition.
    pub check_invariants: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self {
            merge: true,
            check_invariants: false,
        }
    }
}

/// Construction statistics.
#[derive(Clone, Debug, Default)]
pub struct ConstructStats {
    /// Distinct configurations per level before reduction.
    pub states_per_level: Vec<usize>,
    /// Frontier width of the host under its edge order.
    pub frontier_width: usize,
}

/// The search machine for one host graph and one constraint.
pub struct Cfbs<'a> {
    graph: &'a Graph,
    con: &'a DegreeConstraint,
    schedule: FrontierSchedule,
    plans: Vec<LevelPlan>,
    colors: usize,
    /// `s` tuples flattened, in `BTreeMap` order.
    s_tuples: Vec<u8>,
    s_mult: Vec<u8>,
    t_tuples: Vec<u8>,
    /// `s ∪ t` flattened, for the domination check.
    caps: Vec<u8>,
    header: usize,
}

impl<'a> Cfbs<'a> {
    pub fn new(graph: &'a Graph, con: &'a DegreeConstraint) -> Self {
        let schedule = compute_frontiers(graph);
        assert!(schedule.width < 250, "frontier too wide");
        let mut plans = Vec::with_capacity(graph.edge_count());
        for (i, &(u, v)) in graph.edges().iter().enumerate() {
            let before_f = &schedule.frontiers[i];
            let after_f = &schedule.frontiers[i + 1];
            let mut working: Vec<Vertex> = before_f.clone();
            for &x in &schedule.entering[i] {
                working.push(x);
            }
            let pos = |x: Vertex| working.iter().position(|&y| y == x).expect("endpoint in working set");
            let leaving = schedule.leaving[i].iter().map(|&x| pos(x)).collect();
            let next_from = after_f.iter().map(|&x| pos(x)).collect();
            plans.push(LevelPlan {
                before: before_f.len(),
                ends: [pos(u), pos(v)],
                working: working.len(),
                leaving,
                next_from,
            });
        }
        let colors = con.colors;
        let s_tuples = con.s.keys().flat_map(|d| d.0.iter().copied()).collect();
        let s_mult = con.s.values().map(|&k| k as u8).collect();
        let t_tuples = con.t.iter().flat_map(|d| d.0.iter().copied()).collect();
        let caps = con.union().iter().flat_map(|d| d.0.iter().copied()).collect();
        let header = mask_bytes(colors) + con.s.len();
        Self {
            graph,
            con,
            schedule,
            plans,
            colors,
            s_tuples,
            s_mult,
            t_tuples,
            caps,
            header,
        }
    }

    pub fn schedule(&self) -> &FrontierSchedule {
        &self.schedule
    }

    fn root_key(&self) -> Vec<u8> {
        vec![0; self.header]
    }

    fn done_mask(&self, key: &[u8]) -> u64 {
        let mut buf = [0u8; 8];
        let nb = mask_bytes(self.colors);
        buf[..nb].copy_from_slice(&key[..nb]);
        u64::from_le_bytes(buf)
    }

    fn all_done(&self) -> u64 {
        if self.colors == 64 {
            u64::MAX
        } else {
            (1u64 << self.colors) - 1
        }
    }

    /// Packed transition from `key` at level `level` (1-based) along `branch`.
    /// `scratch` receives the working arrays; the child key is written to `out`.
    fn child_packed(&self, level: usize, key: &[u8], branch: usize, scratch: &mut Scratch, out: &mut Vec<u8>) -> Step<()> {
        let c = self.colors;
        let plan = &self.plans[level - 1];
        let nb = mask_bytes(c);
        let mut done = self.done_mask(key);
        let dn = &mut scratch.dn;
        dn.clear();
        dn.extend_from_slice(&key[nb..self.header]);

        // working records mirror the key body: per position, `c` degrees
        // then `c` component labels
        let r = 2 * c;
        let w = &mut scratch.rec;
        w.clear();
        w.extend_from_slice(&key[self.header..self.header + plan.before * r]);
        w.resize(plan.working * r, 0);
        let deg = |p: usize| p * r;
        let comp = |p: usize, j: usize| p * r + c + j;

        if branch > 0 {
            let j = branch - 1;
            if done >> j & 1 == 1 {
                return Step::Bottom;
            }
            for &p in &plan.ends {
                w[deg(p) + j] += 1;
                let d = &w[deg(p)..deg(p) + c];
                let ok = self
                    .caps
                    .chunks_exact(c)
                    .any(|cap| d.iter().zip(cap).all(|(a, b)| a <= b));
                if !ok {
                    return Step::Bottom;
                }
            }
            // adopt untracked endpoints as singletons, then merge their blocks
            let [p1, p2] = plan.ends;
            let fresh = (0..plan.working).map(|p| w[comp(p, j)]).max().unwrap_or(0) + 1;
            if w[comp(p1, j)] == 0 {
                w[comp(p1, j)] = fresh;
            }
            let b1 = w[comp(p1, j)];
            let b2 = w[comp(p2, j)];
            if b2 == 0 {
                w[comp(p2, j)] = b1;
            } else if b1 != b2 {
                for p in 0..plan.working {
                    if w[comp(p, j)] == b2 {
                        w[comp(p, j)] = b1;
                    }
                }
            }
        }

        // completion: a component with no vertex left on the next frontier
        // closes its colour, and must be the colour's only component
        for j in 0..c {
            if done >> j & 1 == 1 {
                continue;
            }
            let mut closing: Option<u8> = None;
            for &p in &plan.leaving {
                let b = w[comp(p, j)];
                if b == 0 {
                    continue;
                }
                let stays = plan.next_from.iter().any(|&q| w[comp(q, j)] == b);
                if stays {
                    continue;
                }
                match closing {
                    None => closing = Some(b),
                    Some(x) if x == b => {}
                    Some(_) => return Step::Bottom,
                }
            }
            if let Some(b) = closing {
                let others = plan.next_from.iter().any(|&q| {
                    let x = w[comp(q, j)];
                    x != 0 && x != b
                });
                if others {
                    return Step::Bottom;
                }
                done |= 1 << j;
            }
        }

        // retire leaving vertices
        for &p in &plan.leaving {
            let d = &w[deg(p)..deg(p) + c];
            if d.iter().all(|&x| x == 0) {
                continue;
            }
            let in_s = self.s_tuples.chunks_exact(c).position(|x| x == d);
            let absorbed = match in_s {
                Some(k) if dn[k] < self.s_mult[k] => {
                    dn[k] += 1;
                    true
                }
                _ => false,
            };
            if !absorbed && !self.t_tuples.chunks_exact(c).any(|x| x == d) {
                return Step::Bottom;
            }
        }

        if done == self.all_done() {
            return if dn[..] == self.s_mult[..] {
                Step::Top
            } else {
                Step::Bottom
            };
        }
        if level == self.plans.len() {
            return Step::Bottom;
        }

        // pack the child over F_{i+1}, renaming blocks by first occurrence
        out.clear();
        out.extend_from_slice(&done.to_le_bytes()[..nb]);
        out.extend_from_slice(dn);
        let rename = &mut scratch.rename;
        if rename.len() < c * 256 {
            rename.resize(c * 256, 0);
        }
        let next_label = &mut scratch.next_label;
        next_label.clear();
        next_label.resize(c, 1);
        let touched = &mut scratch.touched;
        for &q in &plan.next_from {
            let base = out.len();
            out.extend_from_slice(&w[q * r..(q + 1) * r]);
            for j in 0..c {
                let b = out[base + c + j];
                if b != 0 {
                    let at = j * 256 + b as usize;
                    if rename[at] == 0 {
                        rename[at] = next_label[j];
                        next_label[j] += 1;
                        touched.push(at);
                    }
                    out[base + c + j] = rename[at];
                }
            }
        }
        for at in touched.drain(..) {
            rename[at] = 0;
        }
        Step::Next(())
    }

    /// Packs a readable configuration at level `level` (1-based). Fails when
    /// its vertices are not exactly `F_level`.
    pub fn encode(&self, level: usize, cfg: &Configuration) -> Result<Vec<u8>> {
        let frontier = &self.schedule.frontiers[level - 1];
        let mut verts: Vec<Vertex> = cfg.deg.iter().map(|&(v, _)| v).collect();
        verts.sort_unstable();
        if &verts != frontier || cfg.done.len() != self.colors || cfg.dn.len() != self.con.s.len() {
            return Err(Error::InvalidProfile("configuration does not fit this level".into()));
        }
        Ok(canonical_key(cfg))
    }

    /// Unpacks a key at level `level` (1-based).
    pub fn decode(&self, level: usize, key: &[u8]) -> Configuration {
        let c = self.colors;
        let frontier = &self.schedule.frontiers[level - 1];
        let done_mask = self.done_mask(key);
        let done = (0..c).map(|j| done_mask >> j & 1 == 1).collect();
        let dn = key[mask_bytes(c)..self.header].iter().map(|&x| x as usize).collect();
        let body = &key[self.header..];
        let mut deg = Vec::with_capacity(frontier.len());
        let mut comp: Vec<BTreeMap<u8, Vec<Vertex>>> = vec![BTreeMap::new(); c];
        for (p, &v) in frontier.iter().enumerate() {
            let rec = &body[p * 2 * c..(p + 1) * 2 * c];
            deg.push((v, ColoredDegree(rec[..c].to_vec())));
            for j in 0..c {
                if rec[c + j] != 0 {
                    comp[j].entry(rec[c + j]).or_default().push(v);
                }
            }
        }
        Configuration {
            deg,
            dn,
            comp: comp.into_iter().map(|m| m.into_values().collect()).collect(),
            done,
        }
    }

    /// Follows arc `branch` out of a node at label `level` (1-based, the node
    /// deciding edge `e_level`) whose configuration is `cfg`.
    pub fn child(&self, level: usize, cfg: &Configuration, branch: usize) -> Result<Transition> {
        let key = self.encode(level, cfg)?;
        let mut scratch = Scratch::default();
        let mut out = Vec::new();
        Ok(match self.child_packed(level, &key, branch, &mut scratch, &mut out) {
            Step::Bottom => Transition::Bottom,
            Step::Top => Transition::Top,
            Step::Next(()) => Transition::Next(self.decode(level + 1, &out)),
        })
    }
}

#[derive(Default)]
struct Scratch {
    dn: Vec<u8>,
    rec: Vec<u8>,
    rename: Vec<u8>,
    touched: Vec<usize>,
    next_label: Vec<u8>,
}

struct Search<'m, 'a> {
    machine: &'m Cfbs<'a>,
    options: ConstructOptions,
    scratch: Scratch,
    out: Vec<u8>,
    serial: u32,
}

impl LevelSpec for Search<'_, '_> {
    type State = Box<[u8]>;

    fn arity(&self) -> usize {
        self.machine.colors + 1
    }

    fn levels(&self) -> usize {
        self.machine.graph.edge_count()
    }

    fn root(&mut self) -> Step<Box<[u8]>> {
        let mut key = self.machine.root_key();
        if !self.options.merge {
            key.extend_from_slice(&self.serial.to_le_bytes());
            self.serial += 1;
        }
        Step::Next(key.into_boxed_slice())
    }

    fn child(&mut self, level: usize, state: &Box<[u8]>, branch: usize) -> Step<Box<[u8]>> {
        let step = self
            .machine
            .child_packed(level, state, branch, &mut self.scratch, &mut self.out);
        match step {
            Step::Bottom => Step::Bottom,
            Step::Top => Step::Top,
            Step::Next(()) => {
                if self.options.check_invariants {
                    let cfg = self.machine.decode(level + 1, &self.out);
                    if let Err(msg) = cfg.check(self.machine.con) {
                        panic!("invariant violated at level {}: {msg}", level + 1);
                    }
                }
                let mut key = self.out.clone();
                if !self.options.merge {
                    key.extend_from_slice(&self.serial.to_le_bytes());
                    self.serial += 1;
                }
                Step::Next(key.into_boxed_slice())
            }
        }
    }

    fn finish(&mut self, _state: &Box<[u8]>) -> bool {
        // the root at m = 0: no colour can be complete
        false
    }
}

/// Builds the `(c+1)`-diagram of `G^c(C_s^t)`.
pub fn construct(g: &Graph, con: &DegreeConstraint) -> Mdd {
    construct_with(g, con, ConstructOptions::default()).0
}

pub fn construct_with(g: &Graph, con: &DegreeConstraint, options: ConstructOptions) -> (Mdd, ConstructStats) {
    let mut store = MddStore::new(con.colors + 1, g.edge_count());
    let (root, stats) = construct_into(g, con, options, &mut store);
    (Mdd::new(store, root), stats)
}

/// Builds into an existing store of arity `c + 1` over `g`'s edges.
pub fn construct_into(
    g: &Graph,
    con: &DegreeConstraint,
    options: ConstructOptions,
    store: &mut MddStore,
) -> (crate::mdd::NodeId, ConstructStats) {
    let machine = Cfbs::new(g, con);
    let mut search = Search {
        machine: &machine,
        options,
        scratch: Scratch::default(),
        out: Vec::new(),
        serial: 0,
    };
    let raw = expand(&mut search);
    let stats = ConstructStats {
        states_per_level: raw.level_sizes.clone(),
        frontier_width: machine.schedule.width,
    };
    (raw.reduce_into(store), stats)
}
