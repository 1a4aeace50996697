//! Tree decompositions: validation, construction, normalization helpers.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A tree decomposition of a graph on `n_graph` vertices: a list of bags and
/// tree edges between bag indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub n_graph: usize,
    pub bags: Vec<BTreeSet<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// The first violated validity clause, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// (d) bag indices or tree shape broken.
    NotATree(String),
    /// (a) some graph vertex occurs in no bag.
    VertexNotCovered(usize),
    /// (b) some graph edge has no bag containing both endpoints.
    EdgeNotCovered(usize, usize),
    /// (c) the bags containing a vertex do not induce a connected subtree.
    OccurrenceDisconnected(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(why) => write!(f, "clause (d): tree edges invalid: {why}"),
            Violation::VertexNotCovered(v) => {
                write!(f, "clause (a): vertex {v} occurs in no bag")
            }
            Violation::EdgeNotCovered(u, v) => {
                write!(f, "clause (b): edge ({u},{v}) not covered by any bag")
            }
            Violation::OccurrenceDisconnected(v) => {
                write!(f, "clause (c): occurrences of vertex {v} are disconnected")
            }
        }
    }
}

/// Decomposition construction strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Branch and bound over elimination orders; minimum width, n <= cap.
    Exact,
    /// Greedy minimum fill-in, ties broken by lowest vertex index.
    MinFill,
    /// Greedy minimum degree, ties broken by lowest vertex index.
    MinDegree,
}

pub const DEFAULT_EXACT_CAP: usize = 32;

impl TreeDecomposition {
    pub fn single_bag(n_graph: usize) -> Self {
        TreeDecomposition {
            n_graph,
            bags: vec![(0..n_graph).collect()],
            tree_edges: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Checks clauses (a)-(d) against the given edge set; `Ok(())` or the
    /// first violated clause. Checking order: (d), (a), (b), (c) — the
    /// connectivity clause is meaningless on a non-tree.
    pub fn validate(&self, edges: &[(usize, usize)]) -> std::result::Result<(), Violation> {
        let nb = self.bags.len();
        if nb == 0 {
            return Err(Violation::NotATree("no bags".into()));
        }
        for &(a, b) in &self.tree_edges {
            if a >= nb || b >= nb {
                return Err(Violation::NotATree(format!(
                    "tree edge ({a},{b}) out of range"
                )));
            }
            if a == b {
                return Err(Violation::NotATree(format!("self-loop on bag {a}")));
            }
        }
        if self.tree_edges.len() + 1 != nb {
            return Err(Violation::NotATree(format!(
                "{} bags need {} tree edges, found {}",
                nb,
                nb - 1,
                self.tree_edges.len()
            )));
        }
        // Connectivity of the bag tree.
        let adj = self.tree_adjacency();
        let mut seen = vec![false; nb];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Violation::NotATree("bag tree is disconnected".into()));
        }
        for bag in &self.bags {
            if let Some(&v) = bag.iter().find(|&&v| v >= self.n_graph) {
                return Err(Violation::NotATree(format!(
                    "bag vertex {v} out of range for graph on {}",
                    self.n_graph
                )));
            }
        }

        for v in 0..self.n_graph {
            if !self.bags.iter().any(|b| b.contains(&v)) {
                return Err(Violation::VertexNotCovered(v));
            }
        }
        for &(u, v) in edges {
            if u == v {
                continue; // vertex presence covers self-loops
            }
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(Violation::EdgeNotCovered(u, v));
            }
        }
        // (c): bags containing v must induce a connected subtree.
        for v in 0..self.n_graph {
            let holders: Vec<usize> = (0..nb).filter(|&i| self.bags[i].contains(&v)).collect();
            if holders.len() <= 1 {
                continue;
            }
            let mut seen = vec![false; nb];
            let mut queue = VecDeque::from([holders[0]]);
            seen[holders[0]] = true;
            let mut reached = 1;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] && self.bags[y].contains(&v) {
                        seen[y] = true;
                        reached += 1;
                        queue.push_back(y);
                    }
                }
            }
            if reached != holders.len() {
                return Err(Violation::OccurrenceDisconnected(v));
            }
        }
        Ok(())
    }

    pub fn validate_or_err(&self, edges: &[(usize, usize)]) -> Result<()> {
        self.validate(edges).map_err(Error::InvalidDecomposition)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        adj
    }

    /// Rooted parent/children arrays with bag 0 as the root.
    pub fn rooted_at_zero(&self) -> (Vec<Option<usize>>, Vec<Vec<usize>>) {
        let adj = self.tree_adjacency();
        let nb = self.bags.len();
        let mut parent: Vec<Option<usize>> = vec![None; nb];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); nb];
        let mut seen = vec![false; nb];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    children[x].push(y);
                    queue.push_back(y);
                }
            }
        }
        (parent, children)
    }

    /// Index of the bag containing all of `vs` that is closest to the root
    /// (bag 0), if any bag contains them.
    pub fn highest_bag_containing(&self, vs: &[usize]) -> Option<usize> {
        let (parent, _) = self.rooted_at_zero();
        let mut depth = vec![0usize; self.bags.len()];
        // BFS order from root gives nondecreasing depth.
        for i in 0..self.bags.len() {
            if let Some(p) = parent[i] {
                depth[i] = depth[p] + 1;
            }
        }
        (0..self.bags.len())
            .filter(|&i| vs.iter().all(|v| self.bags[i].contains(v)))
            .min_by_key(|&i| (depth[i], i))
    }

    /// Doubles every bag vertex `v` into `{v, n + v}`; a valid decomposition
    /// of the split graph (and of the symmetric embedding's support), of
    /// width `2*(w+1) - 1`.
    pub fn split_doubled(&self) -> TreeDecomposition {
        let n = self.n_graph;
        TreeDecomposition {
            n_graph: 2 * n,
            bags: self
                .bags
                .iter()
                .map(|b| b.iter().flat_map(|&v| [v, n + v]).collect())
                .collect(),
            tree_edges: self.tree_edges.clone(),
        }
    }
}

/// Constructs a tree decomposition of the graph given by `n` and `edges`
/// (undirected; self-loops ignored).
pub fn decompose(n: usize, edges: &[(usize, usize)], strategy: Strategy) -> Result<TreeDecomposition> {
    decompose_capped(n, edges, strategy, DEFAULT_EXACT_CAP)
}

pub fn decompose_capped(
    n: usize,
    edges: &[(usize, usize)],
    strategy: Strategy,
    exact_cap: usize,
) -> Result<TreeDecomposition> {
    if n == 0 {
        return Ok(TreeDecomposition {
            n_graph: 0,
            bags: vec![BTreeSet::new()],
            tree_edges: Vec::new(),
        });
    }
    let adj = build_adjacency(n, edges);
    let order = match strategy {
        Strategy::MinFill => greedy_order(&adj, true),
        Strategy::MinDegree => greedy_order(&adj, false),
        Strategy::Exact => {
            if n > exact_cap {
                return Err(Error::ExactCapExceeded { n, cap: exact_cap });
            }
            exact_order(&adj)
        }
    };
    let td = decomposition_from_order(&adj, &order);
    debug_assert!(td.validate(edges).is_ok());
    Ok(td)
}

/// The exact treewidth of the graph. Width only, no decomposition; safe
/// reductions (simplicial vertices, degree <= 2 once the lower bound allows)
/// shrink the graph before a branch-and-bound over elimination orders, so
/// this handles structured graphs well beyond the `decompose` exact cap.
pub fn exact_treewidth(n: usize, edges: &[(usize, usize)], cap: usize) -> Result<usize> {
    if n > cap {
        return Err(Error::ExactCapExceeded { n, cap });
    }
    let mut adj = build_adjacency(n, edges);
    let mut alive = vec![true; n];
    let mut forced_width = 0usize;

    // Reduction loop. Simplicial elimination is always safe; eliminating a
    // degree-<=2 vertex is safe once the treewidth is known to be >= 2.
    loop {
        let lb = forced_width.max(degeneracy_alive(&adj, &alive));
        let mut progressed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let nbrs: Vec<usize> = adj[v].iter().cloned().filter(|&u| alive[u]).collect();
            let simplicial = nbrs
                .iter()
                .enumerate()
                .all(|(i, &a)| nbrs[i + 1..].iter().all(|b| adj[a].contains(b)));
            if simplicial || (nbrs.len() <= 2 && lb >= 2) {
                forced_width = forced_width.max(nbrs.len());
                eliminate(&mut adj, &mut alive, v);
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }

    let remaining: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if remaining.is_empty() {
        return Ok(forced_width);
    }
    // Compact the remainder and search.
    let mut index = vec![usize::MAX; n];
    for (i, &v) in remaining.iter().enumerate() {
        index[v] = i;
    }
    let mut sub = vec![BTreeSet::new(); remaining.len()];
    for &v in &remaining {
        for &u in adj[v].iter().filter(|&&u| alive[u]) {
            sub[index[v]].insert(index[u]);
        }
    }
    let ub_order = greedy_order(&sub, true);
    let mut ub = width_of_order(&sub, &ub_order);
    let lb = degeneracy_lower_bound(&sub);
    if lb.max(forced_width) >= ub.max(forced_width) {
        return Ok(ub.max(forced_width));
    }

    fn search(
        adj: &mut Vec<BTreeSet<usize>>,
        alive: &mut Vec<bool>,
        left: usize,
        width_so_far: usize,
        ub: &mut usize,
    ) {
        if left == 0 {
            *ub = (*ub).min(width_so_far);
            return;
        }
        if width_so_far >= *ub {
            return;
        }
        let n = adj.len();
        if width_so_far.max(degeneracy_alive(adj, alive)) >= *ub {
            return;
        }
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let deg = adj[v].iter().filter(|&&u| alive[u]).count();
            let w = width_so_far.max(deg);
            if w >= *ub {
                continue;
            }
            let saved = adj.clone();
            eliminate(adj, alive, v);
            search(adj, alive, left - 1, w, ub);
            *adj = saved;
            alive[v] = true;
        }
    }
    let mut sub_alive = vec![true; remaining.len()];
    let count = remaining.len();
    search(&mut sub, &mut sub_alive, count, 0, &mut ub);
    Ok(ub.max(forced_width))
}

fn degeneracy_alive(adj: &[BTreeSet<usize>], alive: &[bool]) -> usize {
    let n = adj.len();
    let mut my_alive = alive.to_vec();
    let mut deg: Vec<usize> = (0..n)
        .map(|v| {
            if my_alive[v] {
                adj[v].iter().filter(|&&u| my_alive[u]).count()
            } else {
                0
            }
        })
        .collect();
    let mut degen = 0;
    let total = my_alive.iter().filter(|&&a| a).count();
    for _ in 0..total {
        let v = (0..n)
            .filter(|&v| my_alive[v])
            .min_by_key(|&v| deg[v])
            .unwrap();
        degen = degen.max(deg[v]);
        my_alive[v] = false;
        for &u in adj[v].iter() {
            if my_alive[u] {
                deg[u] -= 1;
            }
        }
    }
    degen
}

fn build_adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    adj
}

fn fill_in(adj: &[BTreeSet<usize>], alive: &[bool], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().cloned().filter(|&u| alive[u]).collect();
    let mut fill = 0;
    for i in 0..nbrs.len() {
        for j in i + 1..nbrs.len() {
            if !adj[nbrs[i]].contains(&nbrs[j]) {
                fill += 1;
            }
        }
    }
    fill
}

fn eliminate(adj: &mut Vec<BTreeSet<usize>>, alive: &mut Vec<bool>, v: usize) {
    let nbrs: Vec<usize> = adj[v].iter().cloned().filter(|&u| alive[u]).collect();
    for i in 0..nbrs.len() {
        for j in i + 1..nbrs.len() {
            adj[nbrs[i]].insert(nbrs[j]);
            adj[nbrs[j]].insert(nbrs[i]);
        }
    }
    alive[v] = false;
}

fn greedy_order(adj0: &[BTreeSet<usize>], min_fill: bool) -> Vec<usize> {
    let n = adj0.len();
    let mut adj = adj0.to_vec();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None; // (score, vertex)
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let score = if min_fill {
                fill_in(&adj, &alive, v)
            } else {
                adj[v].iter().filter(|&&u| alive[u]).count()
            };
            // ties broken by lowest vertex index
            if best.map_or(true, |(s, _)| score < s) {
                best = Some((score, v));
            }
        }
        let (_, v) = best.unwrap();
        order.push(v);
        eliminate(&mut adj, &mut alive, v);
    }
    order
}

/// Lexicographic depth-first branch and bound over elimination orders.
/// Only strictly better widths replace the incumbent, so the returned order
/// is the lexicographically least one of minimum width.
fn exact_order(adj0: &[BTreeSet<usize>]) -> Vec<usize> {
    let n = adj0.len();
    let seed = greedy_order(adj0, true);
    let seed_width = width_of_order(adj0, &seed);
    let mut best_order = seed;

    struct Search {
        n: usize,
        best_width: usize,
        best_order: Vec<usize>,
        found_at_best: bool,
    }
    impl Search {
        fn run(
            &mut self,
            adj: &mut Vec<BTreeSet<usize>>,
            alive: &mut Vec<bool>,
            order: &mut Vec<usize>,
            width_so_far: usize,
        ) {
            if order.len() == self.n {
                if width_so_far < self.best_width || !self.found_at_best {
                    self.best_width = width_so_far;
                    self.best_order = order.clone();
                    self.found_at_best = true;
                }
                return;
            }
            for v in 0..self.n {
                if !alive[v] {
                    continue;
                }
                let deg = adj[v].iter().filter(|&&u| alive[u]).count();
                let w = width_so_far.max(deg);
                // prune: cannot strictly improve (or tie when nothing found yet)
                if w > self.best_width || (w == self.best_width && self.found_at_best) {
                    continue;
                }
                let saved_adj = adj.clone();
                eliminate(adj, alive, v);
                order.push(v);
                self.run(adj, alive, order, w);
                order.pop();
                *adj = saved_adj;
                alive[v] = true;
            }
        }
    }

    let mut s = Search {
        n,
        best_width: seed_width,
        best_order: best_order.clone(),
        found_at_best: false,
    };
    let mut adj = adj0.to_vec();
    let mut alive = vec![true; n];
    let mut order = Vec::new();
    s.run(&mut adj, &mut alive, &mut order, 0);
    if s.found_at_best {
        best_order = s.best_order;
    }
    best_order
}

fn width_of_order(adj0: &[BTreeSet<usize>], order: &[usize]) -> usize {
    let mut adj = adj0.to_vec();
    let mut alive = vec![true; adj0.len()];
    let mut w = 0;
    for &v in order {
        let deg = adj[v].iter().filter(|&&u| alive[u]).count();
        w = w.max(deg);
        eliminate(&mut adj, &mut alive, v);
    }
    w
}

fn degeneracy_lower_bound(adj0: &[BTreeSet<usize>]) -> usize {
    let n = adj0.len();
    let mut adj = adj0.to_vec();
    let mut alive = vec![true; n];
    let mut degen = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| adj[v].iter().filter(|&&u| alive[u]).count())
            .unwrap();
        degen = degen.max(adj[v].iter().filter(|&&u| alive[u]).count());
        // plain removal, no fill
        alive[v] = false;
        let nbrs: Vec<usize> = adj[v].iter().cloned().collect();
        for u in nbrs {
            adj[u].remove(&v);
        }
    }
    degen
}

/// Standard bag construction from an elimination order: bag of `v` is `v`
/// plus its not-yet-eliminated neighborhood at elimination time; the bag
/// attaches to the bag of the earliest-eliminated remaining neighbor.
fn decomposition_from_order(adj0: &[BTreeSet<usize>], order: &[usize]) -> TreeDecomposition {
    let n = adj0.len();
    let mut adj = adj0.to_vec();
    let mut alive = vec![true; n];
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut bags: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    let mut attach_to: Vec<Option<usize>> = Vec::with_capacity(n); // vertex whose bag we attach to
    for &v in order {
        let nbrs: Vec<usize> = adj[v].iter().cloned().filter(|&u| alive[u]).collect();
        let mut bag: BTreeSet<usize> = nbrs.iter().cloned().collect();
        bag.insert(v);
        bags.push(bag);
        attach_to.push(nbrs.iter().min_by_key(|&&u| position[u]).cloned());
        eliminate(&mut adj, &mut alive, v);
    }
    let mut bag_of_vertex = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        bag_of_vertex[v] = i;
    }
    let mut tree_edges = Vec::new();
    for (i, att) in attach_to.iter().enumerate() {
        match att {
            Some(u) => tree_edges.push((i, bag_of_vertex[*u])),
            None => {
                // isolated component: attach to the next bag in order, if any
                if i + 1 < n {
                    tree_edges.push((i, i + 1));
                }
            }
        }
    }
    TreeDecomposition {
        n_graph: n,
        bags,
        tree_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path_edges(n: usize) -> Vec<(usize, usize)> {
        (0..n - 1).map(|i| (i, i + 1)).collect()
    }

    #[test]
    fn validate_path_decomposition() {
        // a-b-c with bags {a,b},{b,c}
        let td = TreeDecomposition {
            n_graph: 3,
            bags: vec![[0, 1].into_iter().collect(), [1, 2].into_iter().collect()],
            tree_edges: vec![(0, 1)],
        };
        assert!(td.validate(&path_edges(3)).is_ok());
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn validate_detects_uncovered_edge() {
        let td = TreeDecomposition {
            n_graph: 3,
            bags: vec![[0, 1].into_iter().collect(), [1, 2].into_iter().collect()],
            tree_edges: vec![(0, 1)],
        };
        let mut edges = path_edges(3);
        edges.push((0, 2));
        assert_eq!(td.validate(&edges), Err(Violation::EdgeNotCovered(0, 2)));
    }

    #[test]
    fn validate_detects_disconnected_occurrence() {
        // bags {a,b},{c},{a,d} in a path: occurrences of a disconnected
        let td = TreeDecomposition {
            n_graph: 4,
            bags: vec![
                [0, 1].into_iter().collect(),
                [2].into_iter().collect(),
                [0, 3].into_iter().collect(),
            ],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(
            td.validate(&[(0, 1)]),
            Err(Violation::OccurrenceDisconnected(0))
        );
    }

    #[test]
    fn trees_have_width_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(2..=10);
            // random tree: attach i to a random earlier vertex
            let edges: Vec<(usize, usize)> =
                (1..n).map(|i| (i, rng.gen_range(0..i))).collect();
            for strat in [Strategy::Exact, Strategy::MinFill, Strategy::MinDegree] {
                let td = decompose(n, &edges, strat).unwrap();
                assert!(td.validate(&edges).is_ok());
                if strat == Strategy::Exact {
                    assert_eq!(td.width(), 1);
                } else {
                    assert!(td.width() >= 1);
                }
            }
        }
    }

    #[test]
    fn cycle_five_width_two() {
        let edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let td = decompose(5, &edges, Strategy::Exact).unwrap();
        assert!(td.validate(&edges).is_ok());
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn clique_four_width_three() {
        let edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let td = decompose(4, &edges, Strategy::Exact).unwrap();
        assert_eq!(td.width(), 3);
    }

    #[test]
    fn heuristic_never_beats_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(3..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let exact = decompose(n, &edges, Strategy::Exact).unwrap().width();
            for strat in [Strategy::MinFill, Strategy::MinDegree] {
                let w = decompose(n, &edges, strat).unwrap().width();
                assert!(w >= exact);
            }
        }
    }

    #[test]
    fn exact_refuses_large() {
        let edges: Vec<(usize, usize)> = path_edges(40);
        assert!(matches!(
            decompose(40, &edges, Strategy::Exact),
            Err(Error::ExactCapExceeded { .. })
        ));
    }

    #[test]
    fn split_doubled_validates_with_bounded_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let n = rng.gen_range(2..=8);
            let mut g = crate::graph::WeightedDigraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if rng.gen_bool(0.3) {
                        g.add_arc(u, v, crate::rational::rat_int(1)).unwrap();
                    }
                }
            }
            let edges = g.undirected_edges();
            let td = decompose(n, &edges, Strategy::Exact).unwrap();
            let split = g.split_graph();
            let doubled = td.split_doubled();
            let split_edges: Vec<(usize, usize)> = split.combined_edges();
            assert!(doubled.validate(&split_edges).is_ok());
            assert!(doubled.width() <= 2 * (td.width() + 1) - 1);
        }
    }

    #[test]
    fn highest_bag_is_rootmost() {
        let td = TreeDecomposition {
            n_graph: 4,
            bags: vec![
                [0, 1].into_iter().collect(),
                [1, 2].into_iter().collect(),
                [1, 2, 3].into_iter().collect(),
            ],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(td.highest_bag_containing(&[1, 2]), Some(1));
        assert_eq!(td.highest_bag_containing(&[0, 3]), None);
    }
}
