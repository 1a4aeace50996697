//! Weighted digraphs and bipartite graphs.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A digraph with nonzero rational arc weights. Self-loops are allowed,
/// parallel arcs are not (at most one arc per ordered pair).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: BTreeMap<(usize, usize), Rational>,
}

impl WeightedDigraph {
    pub fn new(n: usize) -> Self {
        WeightedDigraph {
            n,
            arcs: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn add_arc(&mut self, u: usize, v: usize, w: Rational) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Invalid(format!(
                "arc ({u},{v}) out of range for {} vertices",
                self.n
            )));
        }
        if w.is_zero() {
            return Err(Error::Invalid(format!("zero weight on arc ({u},{v})")));
        }
        self.arcs.insert((u, v), w);
        Ok(())
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Rational> {
        self.arcs.get(&(u, v)).cloned()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains_key(&(u, v))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.arcs.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn arc_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs.keys().cloned().collect()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.arcs.keys().filter(|&&(a, _)| a == u).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.keys().filter(|&&(_, b)| b == v).count()
    }

    /// Undirected support edges (symmetrized, self-loops dropped).
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        for &(u, v) in self.arcs.keys() {
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
        set.into_iter().collect()
    }

    /// The split graph: vertices `v_in = v` and `v_out = n + v`; an edge
    /// `(u_out, v_in)` per arc `(u, v)` and an edge `(v_in, v_out)` per
    /// vertex.
    pub fn split_graph(&self) -> BipartiteGraph {
        let mut b = BipartiteGraph::new(self.n, self.n);
        for v in 0..self.n {
            // left side holds v_in, right side holds v_out
            b.add_edge(v, v, Rational::from_integer(1.into()))
                .expect("in range");
        }
        for (u, v, w) in self.arcs() {
            b.add_edge(v, u, w.clone()).expect("in range");
        }
        b
    }
}

/// An undirected bipartite graph with rational edge weights; edges connect
/// the left side to the right side only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: BTreeMap<(usize, usize), Rational>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            edges: BTreeMap::new(),
        }
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adds edge between left vertex `l` and right vertex `r`.
    pub fn add_edge(&mut self, l: usize, r: usize, w: Rational) -> Result<()> {
        if l >= self.left || r >= self.right {
            return Err(Error::Invalid(format!(
                "edge ({l},{r}) out of range for {}+{} bipartite graph",
                self.left, self.right
            )));
        }
        if w.is_zero() {
            return Err(Error::Invalid(format!("zero weight on edge ({l},{r})")));
        }
        self.edges.insert((l, r), w);
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.edges.iter().map(|(&(l, r), w)| (l, r, w))
    }

    /// Edges as pairs over the combined vertex set `0..left+right`, with
    /// right vertices shifted by `left`.
    pub fn combined_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .keys()
            .map(|&(l, r)| (l, self.left + r))
            .collect()
    }
}
