//! Multi-valued decision diagrams over an ordered ground set `e_1..e_m`.
//!
//! A `(c+1)`-diagram has non-terminal nodes with a label in `1..=m` and `c+1`
//! outgoing arcs. Arc 0 excludes `e_label`, arc `j >= 1` includes it with
//! colour `j`. Every root-to-⊤ path spells one `c`-coloured subset.
//!
//! Diagrams are kept quasi-reduced: a non-terminal child of a node labelled
//! `l` is labelled `l + 1`, arcs may jump to ⊥ from any level, and ⊤ is only
//! entered from level `m`. Together with hash-consing and the all-⊥ collapse
//! this makes the representation canonical: two roots in one store denote the
//! same family iff they are the same [`NodeId`].

mod count;

use std::fmt::Write as _;
use std::hash::{BuildHasher, Hash, Hasher};

use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;

pub use count::FamilyCount;

use crate::error::{Error, Result};

/// Reference to a node in an [`MddStore`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const BOTTOM: NodeId = NodeId(0);
    pub const TOP: NodeId = NodeId(1);

    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A coloured subset `(B_1, .., B_c)`; `classes[j]` lists the 0-based element
/// indices of colour `j + 1` in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredSubset {
    pub classes: Vec<Vec<usize>>,
}

impl ColoredSubset {
    pub fn new(classes: Vec<Vec<usize>>) -> Self {
        Self { classes }
    }

    /// All elements regardless of colour, ascending.
    pub fn union(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.classes.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

/// Append-only arena of hash-consed nodes sharing one arity and ground set.
#[derive(Clone)]
pub struct MddStore {
    arity: usize,
    ground_size: usize,
    labels: Vec<u32>,
    children: Vec<NodeId>,
    unique: HashTable<NodeId>,
    /// `zero_chain[l]` is the node for `{∅}` over `e_l..e_m`.
    zero_chain: Vec<NodeId>,
}

impl std::fmt::Debug for MddStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MddStore")
            .field("arity", &self.arity)
            .field("ground_size", &self.ground_size)
            .field("nodes", &self.labels.len())
            .finish()
    }
}

fn hash_node(label: u32, children: &[NodeId]) -> u64 {
    let mut h = FxBuildHasher.build_hasher();
    label.hash(&mut h);
    children.hash(&mut h);
    h.finish()
}

impl MddStore {
    /// An empty store for `(arity - 1)`-coloured subsets of `ground_size` elements.
    pub fn new(arity: usize, ground_size: usize) -> Self {
        assert!(arity >= 2, "a decision diagram needs at least two arcs per node");
        assert!(ground_size < u32::MAX as usize - 1);
        let terminal = ground_size as u32 + 1;
        let mut store = Self {
            arity,
            ground_size,
            labels: vec![terminal, terminal],
            children: Vec::new(),
            unique: HashTable::new(),
            zero_chain: vec![NodeId::BOTTOM; ground_size + 2],
        };
        store.zero_chain[ground_size + 1] = NodeId::TOP;
        for l in (1..=ground_size).rev() {
            let mut ch = vec![NodeId::BOTTOM; arity];
            ch[0] = store.zero_chain[l + 1];
            store.zero_chain[l] = store.intern(l as u32, &ch);
        }
        store
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of colours `c`.
    pub fn colors(&self) -> usize {
        self.arity - 1
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Total nodes in the arena, terminals included.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn terminal_label(&self) -> u32 {
        self.ground_size as u32 + 1
    }

    pub fn label(&self, id: NodeId) -> u32 {
        self.labels[id.index()]
    }

    /// Children of a non-terminal node.
    pub fn children(&self, id: NodeId) -> &[NodeId] {
        debug_assert!(!id.is_terminal());
        let start = (id.index() - 2) * self.arity;
        &self.children[start..start + self.arity]
    }

    pub fn child(&self, id: NodeId, branch: usize) -> NodeId {
        self.children(id)[branch]
    }

    /// The node denoting `{∅}` over `e_label..e_m`; ⊤ for `label = m + 1`.
    pub fn empty_set_node(&self, label: u32) -> NodeId {
        self.zero_chain[label as usize]
    }

    /// Returns the canonical node with the given label and children.
    ///
    /// A ⊤ child below level `m` is rewritten to the explicit chain of
    /// exclude-arcs it stands for, and a node whose children are all ⊥ is ⊥.
    pub fn make_node(&mut self, label: u32, children: &[NodeId]) -> Result<NodeId> {
        if label == 0 || label as usize > self.ground_size {
            return Err(Error::LabelOutOfRange {
                label,
                max: self.ground_size as u32,
            });
        }
        if children.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: children.len(),
            });
        }
        for &ch in children {
            if ch.index() >= self.labels.len() {
                return Err(Error::ChildLabel {
                    label,
                    child: ch.0,
                    child_label: 0,
                });
            }
            let cl = self.label(ch);
            if !ch.is_terminal() && cl != label + 1 {
                return Err(Error::ChildLabel {
                    label,
                    child: ch.0,
                    child_label: cl,
                });
            }
        }
        Ok(self.make_node_unchecked(label, children))
    }

    /// [`make_node`](Self::make_node) without argument validation.
    pub(crate) fn make_node_unchecked(&mut self, label: u32, children: &[NodeId]) -> NodeId {
        debug_assert_eq!(children.len(), self.arity);
        if children.iter().all(|&c| c == NodeId::BOTTOM) {
            return NodeId::BOTTOM;
        }
        if label as usize != self.ground_size && children.contains(&NodeId::TOP) {
            let chain = self.zero_chain[label as usize + 1];
            let fixed: Vec<NodeId> = children
                .iter()
                .map(|&c| if c == NodeId::TOP { chain } else { c })
                .collect();
            return self.intern(label, &fixed);
        }
        self.intern(label, children)
    }

    fn intern(&mut self, label: u32, children: &[NodeId]) -> NodeId {
        let hash = hash_node(label, children);
        let arity = self.arity;
        let labels = &self.labels;
        let flat = &self.children;
        if let Some(&id) = self.unique.find(hash, |&id| {
            let start = (id.index() - 2) * arity;
            labels[id.index()] == label && &flat[start..start + arity] == children
        }) {
            return id;
        }
        let id = NodeId(self.labels.len() as u32);
        self.labels.push(label);
        self.children.extend_from_slice(children);
        let arity = self.arity;
        let labels = &self.labels;
        let flat = &self.children;
        self.unique.insert_unique(hash, id, |&id| {
            let start = (id.index() - 2) * arity;
            hash_node(labels[id.index()], &flat[start..start + arity])
        });
        id
    }

    /// Non-terminal nodes reachable from `root`, in ascending id order, which
    /// is a children-before-parents order.
    pub fn reachable(&self, root: NodeId) -> Vec<NodeId> {
        if root.is_terminal() {
            return Vec::new();
        }
        let mut seen = vec![false; self.labels.len()];
        let mut stack = vec![root];
        seen[root.index()] = true;
        let mut out = Vec::new();
        while let Some(id) = stack.pop() {
            out.push(id);
            for &ch in self.children(id) {
                if !ch.is_terminal() && !seen[ch.index()] {
                    seen[ch.index()] = true;
                    stack.push(ch);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of root-to-⊤ paths, computed in one bottom-up pass.
    pub fn count(&self, root: NodeId) -> FamilyCount {
        match root {
            NodeId::BOTTOM => return FamilyCount::zero(),
            NodeId::TOP => return FamilyCount::one(),
            _ => {}
        }
        let nodes = self.reachable(root);
        let mut memo: Vec<FamilyCount> = vec![FamilyCount::zero(); self.labels.len()];
        memo[NodeId::TOP.index()] = FamilyCount::one();
        for &id in &nodes {
            let mut total = FamilyCount::zero();
            for &ch in self.children(id) {
                if ch != NodeId::BOTTOM {
                    total += &memo[ch.index()];
                }
            }
            memo[id.index()] = total;
        }
        std::mem::take(&mut memo[root.index()])
    }

    /// Members in depth-first order, arc 0 before arc 1 before ... arc c,
    /// stopping after `limit` members.
    pub fn enumerate(&self, root: NodeId, limit: usize) -> Vec<ColoredSubset> {
        let mut out = Vec::new();
        if limit == 0 || root == NodeId::BOTTOM {
            return out;
        }
        // (node, next branch to try); `path` holds the branch taken at each frame
        let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
        let mut path: Vec<(u32, usize)> = Vec::new();
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if node == NodeId::TOP {
                let mut classes = vec![Vec::new(); self.colors()];
                for &(label, branch) in &path {
                    if branch > 0 {
                        classes[branch - 1].push(label as usize - 1);
                    }
                }
                out.push(ColoredSubset::new(classes));
                if out.len() >= limit {
                    break;
                }
                stack.pop();
                path.pop();
                continue;
            }
            if *next == self.arity {
                stack.pop();
                path.pop();
                continue;
            }
            let branch = *next;
            *next += 1;
            let ch = self.child(node, branch);
            if ch != NodeId::BOTTOM {
                path.push((self.label(node), branch));
                stack.push((ch, 0));
            }
        }
        out
    }

    /// Membership test by walking one arc per element.
    pub fn contains(&self, root: NodeId, x: &ColoredSubset) -> Result<bool> {
        let branches = self.branch_vector(x)?;
        let mut node = root;
        while !node.is_terminal() {
            let l = self.label(node) as usize;
            node = self.child(node, branches[l - 1]);
            if node == NodeId::TOP {
                return Ok(branches[l..].iter().all(|&b| b == 0));
            }
        }
        Ok(node == NodeId::TOP && branches.iter().all(|&b| b == 0))
    }

    fn branch_vector(&self, x: &ColoredSubset) -> Result<Vec<usize>> {
        if x.classes.len() != self.colors() {
            return Err(Error::ArityMismatch {
                expected: self.colors(),
                got: x.classes.len(),
            });
        }
        let mut branches = vec![0usize; self.ground_size];
        for (j, class) in x.classes.iter().enumerate() {
            for &e in class {
                if e >= self.ground_size {
                    return Err(Error::ElementOutOfRange {
                        element: e,
                        size: self.ground_size,
                    });
                }
                if branches[e] != 0 {
                    return Err(Error::OverlappingColors(e));
                }
                branches[e] = j + 1;
            }
        }
        Ok(branches)
    }

    /// Number of reachable non-terminal nodes at each label `1..=m`
    /// (`result[l - 1]` for label `l`).
    pub fn level_counts(&self, root: NodeId) -> Vec<usize> {
        let mut counts = vec![0; self.ground_size];
        for id in self.reachable(root) {
            counts[self.label(id) as usize - 1] += 1;
        }
        counts
    }

    /// Maximum number of reachable nodes sharing a label.
    pub fn width(&self, root: NodeId) -> usize {
        self.level_counts(root).into_iter().max().unwrap_or(0)
    }

    /// Reachable non-terminal node count.
    pub fn size(&self, root: NodeId) -> usize {
        self.reachable(root).len()
    }

    /// Copies the diagram rooted at `root` in `other` into this store.
    pub fn import(&mut self, other: &MddStore, root: NodeId) -> Result<NodeId> {
        if other.arity != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        if other.ground_size != self.ground_size {
            return Err(Error::GroundSetMismatch(self.ground_size, other.ground_size));
        }
        if root.is_terminal() {
            return Ok(root);
        }
        let mut map = rustc_hash::FxHashMap::default();
        map.insert(NodeId::BOTTOM, NodeId::BOTTOM);
        map.insert(NodeId::TOP, NodeId::TOP);
        let mut buf = Vec::with_capacity(self.arity);
        for id in other.reachable(root) {
            buf.clear();
            buf.extend(other.children(id).iter().map(|c| map[c]));
            let new = self.make_node_unchecked(other.label(id), &buf);
            map.insert(id, new);
        }
        Ok(map[&root])
    }

    /// Text export: a header comment, then one `id label child_0 .. child_c`
    /// line per reachable node with ids `0 = ⊥`, `1 = ⊤` and fresh ids from 2
    /// in depth-first post-order, so the root comes last. A terminal root is
    /// written as its single line `id m+1`.
    pub fn export(&self, root: NodeId) -> String {
        let mut out = format!("# mdd arity {} ground {}\n", self.arity, self.ground_size);
        if root.is_terminal() {
            writeln!(out, "{} {}", root.0, self.terminal_label()).unwrap();
            return out;
        }
        let mut ids = rustc_hash::FxHashMap::default();
        ids.insert(NodeId::BOTTOM, 0u32);
        ids.insert(NodeId::TOP, 1u32);
        let mut next = 2u32;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (node, ref mut i)) = stack.last_mut() {
            if *i < self.arity {
                let ch = self.child(node, *i);
                *i += 1;
                if !ids.contains_key(&ch) {
                    stack.push((ch, 0));
                }
                continue;
            }
            stack.pop();
            if ids.contains_key(&node) {
                continue;
            }
            ids.insert(node, next);
            write!(out, "{} {}", next, self.label(node)).unwrap();
            for ch in self.children(node) {
                write!(out, " {}", ids[ch]).unwrap();
            }
            out.push('\n');
            next += 1;
        }
        out
    }

    /// Parses [`export`](Self::export) output into a fresh store.
    pub fn parse_export(text: &str) -> Result<(MddStore, NodeId)> {
        let bad = |line: usize, reason: &str| Error::Export {
            line,
            reason: reason.to_string(),
        };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| bad(1, "empty input"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 6 || h[0] != "#" || h[1] != "mdd" || h[2] != "arity" || h[4] != "ground" {
            return Err(bad(1, "expected '# mdd arity <a> ground <m>'"));
        }
        let arity: usize = h[3].parse().map_err(|_| bad(1, "bad arity"))?;
        let ground: usize = h[5].parse().map_err(|_| bad(1, "bad ground size"))?;
        if arity < 2 {
            return Err(bad(1, "arity must be at least 2"));
        }
        let mut store = MddStore::new(arity, ground);
        let mut ids: rustc_hash::FxHashMap<u32, NodeId> = rustc_hash::FxHashMap::default();
        ids.insert(0, NodeId::BOTTOM);
        ids.insert(1, NodeId::TOP);
        let mut root = None;
        for (idx, line) in lines {
            let n = idx + 1;
            if root.is_some_and(|r: NodeId| r.is_terminal()) {
                return Err(bad(n, "terminal root must be the only node line"));
            }
            let nums: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(n, "expected integers"))?;
            if nums.len() == 2 && nums[0] < 2 {
                if nums[1] != store.terminal_label() || root.is_some() {
                    return Err(bad(n, "misplaced terminal line"));
                }
                root = Some(NodeId(nums[0]));
                continue;
            }
            if nums.len() != arity + 2 {
                return Err(bad(n, "wrong number of fields"));
            }
            if nums[0] < 2 || ids.contains_key(&nums[0]) {
                return Err(bad(n, "duplicate or reserved id"));
            }
            let children: Vec<NodeId> = nums[2..]
                .iter()
                .map(|c| ids.get(c).copied().ok_or_else(|| bad(n, "unknown child id")))
                .collect::<Result<_>>()?;
            let id = store.make_node(nums[1], &children).map_err(|e| bad(n, &e.to_string()))?;
            ids.insert(nums[0], id);
            root = Some(id);
        }
        let root = root.ok_or_else(|| bad(1, "no nodes"))?;
        Ok((store, root))
    }
}

/// A diagram together with the store that owns its nodes.
#[derive(Clone, Debug)]
pub struct Mdd {
    pub store: MddStore,
    pub root: NodeId,
}

impl Mdd {
    pub fn new(store: MddStore, root: NodeId) -> Self {
        Self { store, root }
    }

    /// The empty family.
    pub fn empty(arity: usize, ground_size: usize) -> Self {
        Self::new(MddStore::new(arity, ground_size), NodeId::BOTTOM)
    }

    /// The family `{∅}`.
    pub fn unit(arity: usize, ground_size: usize) -> Self {
        let store = MddStore::new(arity, ground_size);
        let root = store.empty_set_node(1);
        Self::new(store, root)
    }

    pub fn arity(&self) -> usize {
        self.store.arity()
    }

    pub fn ground_size(&self) -> usize {
        self.store.ground_size()
    }

    pub fn count(&self) -> FamilyCount {
        self.store.count(self.root)
    }

    pub fn enumerate(&self, limit: usize) -> Vec<ColoredSubset> {
        self.store.enumerate(self.root, limit)
    }

    /// Members of a 2-diagram as plain sorted element lists.
    pub fn enumerate_sets(&self, limit: usize) -> Vec<Vec<usize>> {
        self.enumerate(limit).into_iter().map(|x| x.union()).collect()
    }

    pub fn contains(&self, x: &ColoredSubset) -> Result<bool> {
        self.store.contains(self.root, x)
    }

    /// Membership of a plain set in a 2-diagram.
    pub fn contains_set(&self, set: &[usize]) -> Result<bool> {
        self.contains(&ColoredSubset::new(vec![set.to_vec()]))
    }

    pub fn width(&self) -> usize {
        self.store.width(self.root)
    }

    pub fn size(&self) -> usize {
        self.store.size(self.root)
    }

    pub fn level_counts(&self) -> Vec<usize> {
        self.store.level_counts(self.root)
    }

    pub fn export(&self) -> String {
        self.store.export(self.root)
    }

    pub fn parse_export(text: &str) -> Result<Self> {
        let (store, root) = MddStore::parse_export(text)?;
        Ok(Self::new(store, root))
    }

    /// Builds a 2-diagram containing exactly the given sets.
    pub fn from_sets(ground_size: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let members: Vec<ColoredSubset> = sets
            .iter()
            .map(|s| ColoredSubset::new(vec![s.clone()]))
            .collect();
        Self::from_members(2, ground_size, &members)
    }

    /// Builds a diagram containing exactly the given coloured subsets.
    pub fn from_members(arity: usize, ground_size: usize, members: &[ColoredSubset]) -> Result<Self> {
        let mut store = MddStore::new(arity, ground_size);
        let mut root = NodeId::BOTTOM;
        for x in members {
            let branches = store.branch_vector(x)?;
            root = insert_path(&mut store, root, &branches, 1);
        }
        Ok(Self::new(store, root))
    }
}

/// Adds the member spelled by `branches[label - 1..]` to the family at `node`.
fn insert_path(store: &mut MddStore, node: NodeId, branches: &[usize], label: u32) -> NodeId {
    if label as usize > store.ground_size() {
        return NodeId::TOP;
    }
    let mut children = if node == NodeId::BOTTOM {
        vec![NodeId::BOTTOM; store.arity()]
    } else {
        store.children(node).to_vec()
    };
    let b = branches[label as usize - 1];
    children[b] = insert_path(store, children[b], branches, label + 1);
    store.make_node_unchecked(label, &children)
}
