//! Breadth-first, level-by-level diagram construction.
//!
//! A [`LevelSpec`] describes a diagram implicitly: a root state and a
//! transition from a state at level `i` along each arc. States reaching the
//! same level with the same key are merged. Only the state table of the level
//! being expanded is alive at any time; the recorded child arrays are reduced
//! bottom-up into an [`MddStore`] at the end.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::mdd::{MddStore, NodeId};

/// Outcome of following an arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step<S> {
    Bottom,
    Top,
    Next(S),
}

pub trait LevelSpec {
    type State: Clone + Eq + Hash;

    fn arity(&self) -> usize;

    /// Ground set size `m`.
    fn levels(&self) -> usize;

    fn root(&mut self) -> Step<Self::State>;

    /// Follows arc `branch` from `state` at level `level` (1-based).
    fn child(&mut self, level: usize, state: &Self::State, branch: usize) -> Step<Self::State>;

    /// Resolves a state that survives past the last level.
    fn finish(&mut self, state: &Self::State) -> bool;
}

/// Child references recorded during expansion, before reduction.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Bottom,
    Top,
    /// Index into the next level's node list.
    Node(u32),
}

/// Expanded but unreduced diagram.
pub struct RawDiagram {
    arity: usize,
    root: Slot,
    /// `levels[i]` holds `arity` slots per node at label `i + 1`.
    levels: Vec<Vec<Slot>>,
    /// Per-level count of distinct states, i.e. the merged width before reduction.
    pub level_sizes: Vec<usize>,
}

/// Expands `spec` breadth-first.
pub fn expand<S: LevelSpec>(spec: &mut S) -> RawDiagram {
    let arity = spec.arity();
    let m = spec.levels();
    let mut levels = Vec::with_capacity(m);
    let mut level_sizes = Vec::with_capacity(m);

    let root_step = spec.root();
    let mut current: Vec<S::State> = Vec::new();
    let root = match root_step {
        Step::Bottom => Slot::Bottom,
        Step::Top => Slot::Top,
        Step::Next(s) => {
            if m == 0 {
                if spec.finish(&s) {
                    Slot::Top
                } else {
                    Slot::Bottom
                }
            } else {
                current.push(s);
                Slot::Node(0)
            }
        }
    };

    for level in 1..=m {
        if current.is_empty() {
            break;
        }
        level_sizes.push(current.len());
        let mut next: Vec<S::State> = Vec::new();
        let mut index: FxHashMap<S::State, u32> = FxHashMap::default();
        let mut slots = Vec::with_capacity(current.len() * arity);
        for state in &current {
            for branch in 0..arity {
                let slot = match spec.child(level, state, branch) {
                    Step::Bottom => Slot::Bottom,
                    Step::Top => Slot::Top,
                    Step::Next(s) if level == m => {
                        if spec.finish(&s) {
                            Slot::Top
                        } else {
                            Slot::Bottom
                        }
                    }
                    Step::Next(s) => {
                        let len = next.len() as u32;
                        let id = *index.entry(s).or_insert_with_key(|k| {
                            next.push(k.clone());
                            len
                        });
                        Slot::Node(id)
                    }
                };
                slots.push(slot);
            }
        }
        levels.push(slots);
        drop(index);
        current = next;
    }
    RawDiagram {
        arity,
        root,
        levels,
        level_sizes,
    }
}

impl RawDiagram {
    /// Reduces bottom-up into `store`, returning the canonical root.
    pub fn reduce_into(self, store: &mut MddStore) -> NodeId {
        assert_eq!(store.arity(), self.arity);
        let mut below: Vec<NodeId> = Vec::new();
        let mut buf = vec![NodeId::BOTTOM; self.arity];
        for (i, slots) in self.levels.iter().enumerate().rev() {
            let label = i as u32 + 1;
            let mut here = Vec::with_capacity(slots.len() / self.arity);
            for node in slots.chunks_exact(self.arity) {
                for (b, s) in node.iter().enumerate() {
                    buf[b] = match *s {
                        Slot::Bottom => NodeId::BOTTOM,
                        Slot::Top => NodeId::TOP,
                        Slot::Node(k) => below[k as usize],
                    };
                }
                here.push(store.make_node_unchecked(label, &buf));
            }
            below = here;
        }
        match self.root {
            Slot::Bottom => NodeId::BOTTOM,
            Slot::Top => store.empty_set_node(1),
            Slot::Node(k) => below[k as usize],
        }
    }
}

/// Expands and reduces in one go.
pub fn build<S: LevelSpec>(spec: &mut S, store: &mut MddStore) -> NodeId {
    expand(spec).reduce_into(store)
}
