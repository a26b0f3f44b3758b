//! Family algebra on decision diagrams: decolorization, union and the
//! non-superset operation.
//!
//! All three work on the quasi-reduced form, where the nodes of a diagram line
//! up level by level, so every recursion advances one ground element at a time.

use rustc_hash::FxHashMap;

use crate::build::{build, LevelSpec, Step};
use crate::error::{Error, Result};
use crate::mdd::{Mdd, MddStore, NodeId};

/// Forgets colours: the result holds `B_1 ∪ .. ∪ B_c` for every member of
/// the input.
pub fn decolorize(d: &Mdd) -> Mdd {
    let mut dst = MddStore::new(2, d.ground_size());
    let root = decolorize_into(&d.store, d.root, &mut dst);
    Mdd::new(dst, root)
}

/// Decolorizes the diagram at `root` in `src` into the 2-ary store `dst`.
///
/// This is the subset construction: a result node at level `i` stands for
/// the set of source nodes reachable under one decolorized prefix.
pub fn decolorize_into(src: &MddStore, root: NodeId, dst: &mut MddStore) -> NodeId {
    assert_eq!(dst.arity(), 2, "decolorization targets a 2-diagram");
    assert_eq!(src.ground_size(), dst.ground_size());
    let mut spec = Decolorize { src, root };
    build(&mut spec, dst)
}

struct Decolorize<'a> {
    src: &'a MddStore,
    root: NodeId,
}

impl Decolorize<'_> {
    fn close(set: &mut Vec<NodeId>) -> Step<Vec<NodeId>> {
        set.retain(|&n| n != NodeId::BOTTOM);
        if set.is_empty() {
            return Step::Bottom;
        }
        if set.contains(&NodeId::TOP) {
            return Step::Top;
        }
        set.sort_unstable();
        set.dedup();
        Step::Next(std::mem::take(set))
    }
}

impl LevelSpec for Decolorize<'_> {
    type State = Vec<NodeId>;

    fn arity(&self) -> usize {
        2
    }

    fn levels(&self) -> usize {
        self.src.ground_size()
    }

    fn root(&mut self) -> Step<Vec<NodeId>> {
        if self.root == NodeId::TOP {
            return Step::Top;
        }
        Self::close(&mut vec![self.root])
    }

    fn child(&mut self, _level: usize, state: &Vec<NodeId>, branch: usize) -> Step<Vec<NodeId>> {
        let mut next = Vec::with_capacity(state.len() * if branch == 0 { 1 } else { self.src.colors() });
        for &node in state {
            let ch = self.src.children(node);
            if branch == 0 {
                next.push(ch[0]);
            } else {
                next.extend_from_slice(&ch[1..]);
            }
        }
        Self::close(&mut next)
    }

    fn finish(&mut self, _state: &Vec<NodeId>) -> bool {
        // every source path ends in a terminal at or before level m
        false
    }
}

/// Memoised union within one 2-ary store.
#[derive(Default)]
pub struct Union {
    memo: FxHashMap<(NodeId, NodeId), NodeId>,
}

impl Union {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn apply(&mut self, store: &mut MddStore, a: NodeId, b: NodeId) -> NodeId {
        if a == b || b == NodeId::BOTTOM {
            return a;
        }
        if a == NodeId::BOTTOM {
            return b;
        }
        let (a, b) = (a.min(b), a.max(b));
        // a bare ⊤ next to a node means {∅} at that node's level
        if a == NodeId::TOP {
            let chain = store.empty_set_node(store.label(b));
            return self.apply(store, chain, b);
        }
        if let Some(&r) = self.memo.get(&(a, b)) {
            return r;
        }
        let label = store.label(a);
        debug_assert_eq!(label, store.label(b));
        let arity = store.arity();
        let mut children = Vec::with_capacity(arity);
        for j in 0..arity {
            let (ca, cb) = (store.child(a, j), store.child(b, j));
            children.push(self.apply(store, ca, cb));
        }
        let r = store.make_node_unchecked(label, &children);
        self.memo.insert((a, b), r);
        r
    }
}

/// Union of two diagrams over the same ground set, in `a`'s store.
pub fn union_in(store: &mut MddStore, a: NodeId, b: NodeId) -> NodeId {
    Union::new().apply(store, a, b)
}

/// Union of two 2-diagrams.
pub fn union(a: &Mdd, b: &Mdd) -> Result<Mdd> {
    check_binary(a)?;
    check_binary(b)?;
    if a.ground_size() != b.ground_size() {
        return Err(Error::GroundSetMismatch(a.ground_size(), b.ground_size()));
    }
    let mut store = a.store.clone();
    let rb = store.import(&b.store, b.root)?;
    let root = union_in(&mut store, a.root, rb);
    Ok(Mdd::new(store, root))
}

fn check_binary(d: &Mdd) -> Result<()> {
    if d.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: d.arity(),
        });
    }
    Ok(())
}

/// All subsets of the ground set that include no member of `z`.
pub fn nonsupset(z: &Mdd) -> Result<Mdd> {
    check_binary(z)?;
    let mut store = z.store.clone();
    let root = nonsupset_in(&mut store, z.root);
    Ok(Mdd::new(store, root))
}

/// [`nonsupset`] within one store.
///
/// The state at level `i` is the family of "still forbidden" remainders over
/// `e_i..e_m`. Excluding `e_i` keeps the members avoiding `e_i`; including it
/// also turns every member containing `e_i` into its remainder, hence the
/// union of both children. A state containing `∅` forbids everything, and the
/// empty state leaves the rest of the power set free.
pub fn nonsupset_in(store: &mut MddStore, z: NodeId) -> NodeId {
    let mut spec = NonSupset {
        store,
        root: z,
        union: Union::new(),
    };
    let raw = crate::build::expand(&mut spec);
    raw.reduce_into(spec.store)
}

struct NonSupset<'a> {
    store: &'a mut MddStore,
    root: NodeId,
    union: Union,
}

impl LevelSpec for NonSupset<'_> {
    type State = NodeId;

    fn arity(&self) -> usize {
        2
    }

    fn levels(&self) -> usize {
        self.store.ground_size()
    }

    fn root(&mut self) -> Step<NodeId> {
        if self.root.is_terminal() {
            return match self.root {
                NodeId::TOP => Step::Bottom,
                _ => Step::Next(NodeId::BOTTOM),
            };
        }
        Step::Next(self.root)
    }

    fn child(&mut self, _level: usize, &z: &NodeId, branch: usize) -> Step<NodeId> {
        let next = if z == NodeId::BOTTOM {
            NodeId::BOTTOM
        } else if branch == 0 {
            self.store.child(z, 0)
        } else {
            let (z0, z1) = (self.store.child(z, 0), self.store.child(z, 1));
            self.union.apply(self.store, z0, z1)
        };
        if next == NodeId::TOP {
            Step::Bottom
        } else {
            Step::Next(next)
        }
    }

    fn finish(&mut self, &z: &NodeId) -> bool {
        z == NodeId::BOTTOM
    }
}
