//! Nice tree decompositions: rooted binary normal form with leaf, introduce,
//! forget and join nodes. The DP engine walks these bottom-up.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::treedecomp::TreeDecomposition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceKind {
    /// Empty bag, no children.
    Leaf,
    /// Bag = child's bag plus `vertex`.
    Introduce { vertex: usize, child: usize },
    /// Bag = child's bag minus `vertex`.
    Forget { vertex: usize, child: usize },
    /// Both children carry an identical bag.
    Join { left: usize, right: usize },
}

#[derive(Debug, Clone)]
pub struct NiceNode {
    pub bag: Vec<usize>, // sorted
    pub kind: NiceKind,
}

#[derive(Debug, Clone)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
    pub n_graph: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Children before parents; the root comes last.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                order.push(x);
                continue;
            }
            stack.push((x, true));
            match self.nodes[x].kind {
                NiceKind::Leaf => {}
                NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => {
                    stack.push((child, false));
                }
                NiceKind::Join { left, right } => {
                    stack.push((left, false));
                    stack.push((right, false));
                }
            }
        }
        order
    }

    /// Structural invariants of the normal form.
    pub fn check(&self) -> Result<()> {
        if !self.nodes[self.root].bag.is_empty() {
            return Err(Error::Invalid("root bag not empty".into()));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            match &node.kind {
                NiceKind::Leaf => {
                    if !node.bag.is_empty() {
                        return Err(Error::Invalid(format!("leaf {i} has nonempty bag")));
                    }
                }
                NiceKind::Introduce { vertex, child } => {
                    let mut expect = self.nodes[*child].bag.clone();
                    expect.push(*vertex);
                    expect.sort_unstable();
                    if self.nodes[*child].bag.contains(vertex) || node.bag != expect {
                        return Err(Error::Invalid(format!(
                            "introduce node {i} does not add exactly vertex {vertex}"
                        )));
                    }
                }
                NiceKind::Forget { vertex, child } => {
                    let expect: Vec<usize> = self.nodes[*child]
                        .bag
                        .iter()
                        .cloned()
                        .filter(|v| v != vertex)
                        .collect();
                    if !self.nodes[*child].bag.contains(vertex) || node.bag != expect {
                        return Err(Error::Invalid(format!(
                            "forget node {i} does not remove exactly vertex {vertex}"
                        )));
                    }
                }
                NiceKind::Join { left, right } => {
                    if self.nodes[*left].bag != node.bag || self.nodes[*right].bag != node.bag {
                        return Err(Error::Invalid(format!(
                            "join node {i} children bags differ from its bag"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reinterprets the nice tree as a plain decomposition (for revalidation).
    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            match node.kind {
                NiceKind::Leaf => {}
                NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => {
                    edges.push((i, child));
                }
                NiceKind::Join { left, right } => {
                    edges.push((i, left));
                    edges.push((i, right));
                }
            }
        }
        TreeDecomposition {
            n_graph: self.n_graph,
            bags: self
                .nodes
                .iter()
                .map(|n| n.bag.iter().cloned().collect::<BTreeSet<usize>>())
                .collect(),
            tree_edges: edges,
        }
    }
}

/// Normalizes a validated tree decomposition into nice form of the same
/// width. The input must already validate for the target graph.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    if td.bags.is_empty() {
        return Err(Error::Invalid("no bags".into()));
    }
    let (_, children) = td.rooted_at_zero();
    let mut nodes: Vec<NiceNode> = Vec::new();

    fn push(nodes: &mut Vec<NiceNode>, bag: Vec<usize>, kind: NiceKind) -> usize {
        nodes.push(NiceNode { bag, kind });
        nodes.len() - 1
    }

    /// Morphs the subtree result (whose top bag is `from`) into bag `to` by
    /// forgetting surplus vertices then introducing missing ones.
    fn morph(nodes: &mut Vec<NiceNode>, mut top: usize, to: &BTreeSet<usize>) -> usize {
        let from: BTreeSet<usize> = nodes[top].bag.iter().cloned().collect();
        let mut current = from.clone();
        for &v in from.difference(to) {
            current.remove(&v);
            top = push(
                nodes,
                current.iter().cloned().collect(),
                NiceKind::Forget { vertex: v, child: top },
            );
        }
        for &v in to.difference(&from) {
            current.insert(v);
            top = push(
                nodes,
                current.iter().cloned().collect(),
                NiceKind::Introduce { vertex: v, child: top },
            );
        }
        top
    }

    /// Builds a leaf-up chain introducing all of `bag`.
    fn build_from_empty(nodes: &mut Vec<NiceNode>, bag: &BTreeSet<usize>) -> usize {
        let mut top = push(nodes, Vec::new(), NiceKind::Leaf);
        let mut current = BTreeSet::new();
        for &v in bag {
            current.insert(v);
            top = push(
                nodes,
                current.iter().cloned().collect(),
                NiceKind::Introduce { vertex: v, child: top },
            );
        }
        top
    }

    fn build(
        nodes: &mut Vec<NiceNode>,
        td: &TreeDecomposition,
        children: &Vec<Vec<usize>>,
        bag_idx: usize,
    ) -> usize {
        let bag = &td.bags[bag_idx];
        let kids = &children[bag_idx];
        if kids.is_empty() {
            return build_from_empty(nodes, bag);
        }
        let mut tops: Vec<usize> = Vec::with_capacity(kids.len());
        for &k in kids {
            let sub = build(nodes, td, children, k);
            tops.push(morph(nodes, sub, bag));
        }
        // Fold multiple children with joins (left-leaning chain).
        let mut acc = tops[0];
        for &t in &tops[1..] {
            acc = push(
                nodes,
                bag.iter().cloned().collect(),
                NiceKind::Join { left: acc, right: t },
            );
        }
        acc
    }

    let top = build(&mut nodes, td, &children, 0);
    let root = morph(&mut nodes, top, &BTreeSet::new());
    let nice = NiceTreeDecomposition {
        nodes,
        root,
        n_graph: td.n_graph,
    };
    nice.check()?;
    Ok(nice)
}
