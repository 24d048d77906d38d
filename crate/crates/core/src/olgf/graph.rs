use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::tree_group::{Engine, Equality, Word};

/// Candidate nodes are bucketed by the images of a few fixed deep vertices
/// before running the equality test.
const SAMPLE_DEPTH: u32 = 48;
const SAMPLE_COUNT: u64 = 24;

/// First-descendant edge of a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    /// `w = (u, v)`
    Pair(usize, usize),
    /// `w = (u, v) sigma`, child `uv`
    Product(usize),
}

impl Edge {
    pub fn children(&self) -> Vec<usize> {
        match *self {
            Edge::Pair(a, b) => vec![a, b],
            Edge::Product(a) => vec![a],
        }
    }
}

/// `{w} ∪ Desc(w)` with one node per distinct element; the root is node 0.
#[derive(Clone, Debug)]
pub struct DescendantGraph {
    pub nodes: Vec<Word>,
    /// `None` for nodes that were not expanded before the budget ran out.
    pub edges: Vec<Option<Edge>>,
    pub complete: bool,
    /// Some merge test ended in `Unknown`, so duplicate nodes may exist.
    pub unknown_merges: bool,
}

impl DescendantGraph {
    pub const ROOT: usize = 0;

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    PhiFinite { irreducible: bool },
    NotPhiFiniteWithinBudget,
}

struct Index {
    exact: BTreeMap<Word, usize>,
    buckets: BTreeMap<u64, Vec<usize>>,
}

/// Breadth-first closure of `w` under first descendants, merging nodes that
/// are equal as tree automorphisms.
pub fn descendant_graph(eng: &mut Engine<'_>, w: &Word, node_cap: usize) -> DescendantGraph {
    let sys = eng.system();
    let root = sys.normalize(w);
    let mut g = DescendantGraph {
        nodes: vec![root.clone()],
        edges: vec![None],
        complete: true,
        unknown_merges: false,
    };
    let mut idx = Index {
        exact: BTreeMap::new(),
        buckets: BTreeMap::new(),
    };
    idx.exact.insert(root.clone(), 0);
    let fp = fingerprint(eng, &root);
    idx.buckets.entry(fp).or_default().push(0);

    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let s = sys.section_of(&g.nodes[i]);
        let children: Vec<Word> = if s.flip {
            vec![sys.product(&s.left, &s.right)]
        } else {
            vec![s.left, s.right]
        };
        let mut ids = Vec::with_capacity(2);
        for c in children {
            match find_or_insert(eng, &mut g, &mut idx, c, node_cap) {
                Some((j, fresh)) => {
                    if fresh {
                        queue.push_back(j);
                    }
                    ids.push(j);
                }
                None => {
                    g.complete = false;
                    return g;
                }
            }
        }
        g.edges[i] = Some(if s.flip {
            Edge::Product(ids[0])
        } else {
            Edge::Pair(ids[0], ids[1])
        });
    }
    g
}

fn fingerprint(eng: &Engine<'_>, w: &Word) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut v: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..SAMPLE_COUNT {
        v = v
            .wrapping_mul(0x5851_f42d_4c95_7f2d)
            .wrapping_add(0x1405_7b7e_f767_814f);
        let t = v >> (64 - SAMPLE_DEPTH);
        h ^= eng.vertex_image(w, t, SAMPLE_DEPTH);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn find_or_insert(
    eng: &mut Engine<'_>,
    g: &mut DescendantGraph,
    idx: &mut Index,
    w: Word,
    cap: usize,
) -> Option<(usize, bool)> {
    if let Some(&j) = idx.exact.get(&w) {
        return Some((j, false));
    }
    let fp = fingerprint(eng, &w);
    if let Some(cands) = idx.buckets.get(&fp) {
        for &j in cands {
            match eng.elements_equal(&w, &g.nodes[j]) {
                Equality::Equal => {
                    idx.exact.insert(w, j);
                    return Some((j, false));
                }
                Equality::Unknown => g.unknown_merges = true,
                Equality::NotEqual { .. } => {}
            }
        }
    }
    if g.nodes.len() >= cap {
        return None;
    }
    let j = g.nodes.len();
    g.nodes.push(w.clone());
    g.edges.push(None);
    idx.exact.insert(w, j);
    idx.buckets.entry(fp).or_default().push(j);
    Some((j, true))
}

/// Phi-finite iff the closure completed; irreducible iff the root is a
/// descendant of itself.
pub fn classify(g: &DescendantGraph) -> Classification {
    if !g.complete {
        return Classification::NotPhiFiniteWithinBudget;
    }
    let mut seen = vec![false; g.len()];
    let mut stack: Vec<usize> = match g.edges[DescendantGraph::ROOT] {
        Some(e) => e.children(),
        None => Vec::new(),
    };
    while let Some(i) = stack.pop() {
        if i == DescendantGraph::ROOT {
            return Classification::PhiFinite { irreducible: true };
        }
        if seen[i] {
            continue;
        }
        seen[i] = true;
        if let Some(e) = g.edges[i] {
            stack.extend(e.children());
        }
    }
    Classification::PhiFinite { irreducible: false }
}
