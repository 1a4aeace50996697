//! Spanning arborescences via the Laplacian cofactor and directed Euler
//! tours via the tour-count formula `t(K) * prod (deg(v)-1)!`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::linalg::{determinant_with, DetConfig};
use crate::matrix::RationalMatrix;
use crate::rational::{rat_int, Rational};

/// Out-degree Laplacian `L = D - Adj` of the (unweighted) support digraph.
#[derive(Debug, Clone)]
pub struct LaplacianView {
    pub out_degrees: Vec<usize>,
    pub adjacency: RationalMatrix,
    pub laplacian: RationalMatrix,
}

impl LaplacianView {
    pub fn new(g: &WeightedDigraph) -> Self {
        let n = g.vertex_count();
        let mut adjacency = RationalMatrix::zero(n, n);
        let mut out_degrees = vec![0usize; n];
        for (u, v, _) in g.arcs() {
            adjacency.set(u, v, Rational::one()).unwrap();
            out_degrees[u] += 1;
        }
        let mut laplacian = RationalMatrix::zero(n, n);
        for u in 0..n {
            let mut diag = rat_int(out_degrees[u] as i64);
            diag -= adjacency.get(u, u);
            laplacian.set(u, u, diag).unwrap();
            for v in 0..n {
                if u != v {
                    let a = adjacency.get(u, v);
                    if !a.is_zero() {
                        laplacian.set(u, v, -a).unwrap();
                    }
                }
            }
        }
        LaplacianView {
            out_degrees,
            adjacency,
            laplacian,
        }
    }

    /// Row sums of a Laplacian vanish (self-loops cancel against the degree).
    pub fn check(&self) -> Result<()> {
        let n = self.adjacency.rows();
        for i in 0..n {
            let sum: Rational = (0..n).map(|j| self.laplacian.get(i, j)).sum();
            if !sum.is_zero() {
                return Err(Error::Invalid(format!("Laplacian row {i} sums to {sum}")));
            }
        }
        Ok(())
    }
}

fn reversed(g: &WeightedDigraph) -> WeightedDigraph {
    let mut out = WeightedDigraph::new(g.vertex_count());
    for (u, v, w) in g.arcs() {
        out.add_arc(v, u, w.clone()).expect("reverse arc");
    }
    out
}

/// Number of spanning arborescences diverging from `root` (every other
/// vertex reached by exactly one chosen arc): the `(root,root)` minor
/// determinant of the reversed graph's out-degree Laplacian.
pub fn count_arborescences(g: &WeightedDigraph, root: usize) -> Result<BigInt> {
    count_arborescences_with(g, root, &DetConfig::default())
}

pub fn count_arborescences_with(
    g: &WeightedDigraph,
    root: usize,
    cfg: &DetConfig,
) -> Result<BigInt> {
    let n = g.vertex_count();
    if root >= n {
        return Err(Error::Invalid(format!("root {root} out of range")));
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let lap = LaplacianView::new(&reversed(g));
    let minor = lap.laplacian.minor(root, root)?;
    let (det, _) = determinant_with(&minor, None, cfg)?;
    debug_assert!(det.denom().is_one());
    debug_assert!(!det.is_negative());
    Ok(det.numer().clone())
}

/// The tour-count report: arborescence count at the chosen root, per-vertex
/// degrees, the factorial product, and the resulting tour count.
#[derive(Debug, Clone, Serialize)]
pub struct EulerTourReport {
    pub arborescences: String,
    pub degrees: Vec<usize>,
    pub factorial_product: String,
    pub tours: String,
}

/// Counts directed Euler tours (arc sequences up to rotation). The graph
/// must have equal in- and out-degree everywhere, at least one arc, and all
/// arcs in one weakly connected component; isolated vertices are excluded
/// from the formula.
pub fn count_euler_tours(g: &WeightedDigraph) -> Result<(BigInt, EulerTourReport)> {
    count_euler_tours_with(g, &DetConfig::default())
}

pub fn count_euler_tours_with(
    g: &WeightedDigraph,
    cfg: &DetConfig,
) -> Result<(BigInt, EulerTourReport)> {
    let n = g.vertex_count();
    if g.arc_count() == 0 {
        return Err(Error::NonEulerian("graph has no arcs".into()));
    }
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    for (u, v, _) in g.arcs() {
        outdeg[u] += 1;
        indeg[v] += 1;
    }
    for v in 0..n {
        if indeg[v] != outdeg[v] {
            return Err(Error::NonEulerian(format!(
                "vertex {v} has in-degree {} but out-degree {}",
                indeg[v], outdeg[v]
            )));
        }
    }
    let active: Vec<usize> = (0..n).filter(|&v| outdeg[v] > 0).collect();
    // weak connectivity over active vertices
    let mut comp = vec![usize::MAX; n];
    let mut stack = vec![active[0]];
    comp[active[0]] = 0;
    while let Some(x) = stack.pop() {
        for (u, v, _) in g.arcs() {
            for (a, b) in [(u, v), (v, u)] {
                if a == x && comp[b] == usize::MAX {
                    comp[b] = 0;
                    stack.push(b);
                }
            }
        }
    }
    if let Some(&v) = active.iter().find(|&&v| comp[v] == usize::MAX) {
        return Err(Error::NonEulerian(format!(
            "arcs are disconnected: vertex {v} unreachable"
        )));
    }

    // relabel the active induced subgraph
    let mut index = vec![usize::MAX; n];
    for (i, &v) in active.iter().enumerate() {
        index[v] = i;
    }
    let mut k = WeightedDigraph::new(active.len());
    for (u, v, w) in g.arcs() {
        k.add_arc(index[u], index[v], w.clone())?;
    }

    // t(K) rooted anywhere; root independence is checked, not assumed.
    let mut t_all = Vec::with_capacity(active.len());
    for root in 0..active.len() {
        t_all.push(count_arborescences_with(&k, root, cfg)?);
    }
    let t = t_all[0].clone();
    if t_all.iter().any(|x| *x != t) {
        return Err(Error::Invalid(
            "arborescence count varies with the root on an Eulerian graph".into(),
        ));
    }

    let degrees: Vec<usize> = active.iter().map(|&v| outdeg[v]).collect();
    let mut factorial_product = BigInt::one();
    for &d in &degrees {
        for f in 1..d {
            factorial_product *= BigInt::from(f);
        }
    }
    let tours = t.clone() * &factorial_product;
    let report = EulerTourReport {
        arborescences: t.to_string(),
        degrees,
        factorial_product: factorial_product.to_string(),
        tours: tours.to_string(),
    };
    Ok((tours, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_arborescences, brute_euler_tours};
    use crate::rational::rat_int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> WeightedDigraph {
        let mut g = WeightedDigraph::new(n);
        for &(u, v) in arcs {
            g.add_arc(u, v, rat_int(1)).unwrap();
        }
        g
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = digraph(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]);
        let lap = LaplacianView::new(&g);
        lap.check().unwrap();
        assert_eq!(lap.out_degrees, vec![2, 1, 1]);
    }

    #[test]
    fn arborescences_three_cycle() {
        let g = digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        for root in 0..3 {
            assert_eq!(count_arborescences(&g, root).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn arborescences_out_star() {
        let g = digraph(3, &[(0, 1), (0, 2)]);
        assert_eq!(count_arborescences(&g, 0).unwrap(), BigInt::one());
        assert_eq!(count_arborescences(&g, 1).unwrap(), BigInt::zero());
        assert_eq!(count_arborescences(&g, 2).unwrap(), BigInt::zero());
    }

    #[test]
    fn arborescences_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..60 {
            let n = rng.gen_range(2..=5);
            let mut g = WeightedDigraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.45) {
                        g.add_arc(u, v, rat_int(1)).unwrap();
                    }
                }
            }
            for root in 0..n {
                let want = brute_arborescences(&g, root).unwrap();
                let got = count_arborescences(&g, root).unwrap();
                assert_eq!(got, want, "root {root} of {g:?}");
            }
        }
    }

    #[test]
    fn euler_tours_small_cycles() {
        let g = digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(count_euler_tours(&g).unwrap().0, BigInt::one());
        let g = digraph(2, &[(0, 1), (1, 0)]);
        assert_eq!(count_euler_tours(&g).unwrap().0, BigInt::one());
    }

    #[test]
    fn euler_tours_bidirected_triangle_matches_brute() {
        let g = digraph(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]);
        let (tours, report) = count_euler_tours(&g).unwrap();
        assert_eq!(tours, brute_euler_tours(&g).unwrap());
        assert_eq!(report.degrees, vec![2, 2, 2]);
    }

    #[test]
    fn euler_rejects_unbalanced_and_disconnected() {
        let g = digraph(2, &[(0, 1)]);
        assert!(matches!(
            count_euler_tours(&g),
            Err(Error::NonEulerian(_))
        ));
        let g = digraph(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert!(matches!(
            count_euler_tours(&g),
            Err(Error::NonEulerian(_))
        ));
    }

    #[test]
    fn isolated_vertices_are_tolerated() {
        let g = digraph(4, &[(1, 2), (2, 3), (3, 1)]);
        assert_eq!(count_euler_tours(&g).unwrap().0, BigInt::one());
    }

    #[test]
    fn undirected_spanning_trees_via_bidirection() {
        // bidirected triangle: 3 spanning trees of the underlying triangle
        let g = digraph(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]);
        for root in 0..3 {
            assert_eq!(count_arborescences(&g, root).unwrap(), BigInt::from(3));
        }
    }
}
