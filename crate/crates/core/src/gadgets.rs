//! Weight gadgets: rewrites that reduce arbitrary integer arc weights to
//! {0,1} while preserving the signed cycle-cover sum, plus the
//! characteristic-polynomial graph with its designated loop class.
//!
//! An arc of weight `w` becomes a bundle of parallel branches between its
//! endpoints, one branch per set bit of `|w|`; the branch for bit `i` chains
//! `i` doubling diamonds, so the bundle carries exactly `|w|` distinct
//! paths. Branches are padded so every path runs through the same number of
//! interior vertices, all of which carry self-loops; the shared merge vertex
//! fixes the parity of that count (even keeps the cover sign, odd flips it,
//! which is how negative weights are realized).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::matrix::RationalMatrix;
use crate::rational::{format_rational, to_bigint, Rational};
use crate::treedecomp::TreeDecomposition;

/// Partition of arcs into value classes. Class values are distinct nonzero
/// rationals; at most one class is the designated symbolic loop class used
/// for characteristic polynomials (its arcs are self-loops standing for the
/// indeterminate, stored with placeholder weight 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassMap {
    values: Vec<Rational>,
    arc_class: BTreeMap<(usize, usize), usize>,
    x_class: Option<usize>,
}

impl EdgeClassMap {
    /// One class per distinct arc weight.
    pub fn from_weights(g: &WeightedDigraph) -> Self {
        let mut values: Vec<Rational> = g.arcs().map(|(_, _, w)| w.clone()).collect();
        values.sort();
        values.dedup();
        let index = |w: &Rational| values.binary_search(w).expect("value present");
        let arc_class = g
            .arcs()
            .map(|(u, v, w)| ((u, v), index(w)))
            .collect();
        EdgeClassMap {
            values,
            arc_class,
            x_class: None,
        }
    }

    pub fn new(
        values: Vec<Rational>,
        arc_class: BTreeMap<(usize, usize), usize>,
        x_class: Option<usize>,
    ) -> Result<Self> {
        let mut sorted = values.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != values.len() {
            return Err(Error::Invalid("duplicate class values".into()));
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::Invalid("zero class value".into()));
        }
        if let Some(x) = x_class {
            if x >= values.len() {
                return Err(Error::Invalid("x-class index out of range".into()));
            }
        }
        if arc_class.values().any(|&c| c >= values.len()) {
            return Err(Error::Invalid("arc class index out of range".into()));
        }
        Ok(EdgeClassMap {
            values,
            arc_class,
            x_class,
        })
    }

    pub fn class_count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Rational {
        &self.values[class]
    }

    pub fn x_class(&self) -> Option<usize> {
        self.x_class
    }

    pub fn class_of(&self, u: usize, v: usize) -> Option<usize> {
        self.arc_class.get(&(u, v)).cloned()
    }

    pub fn arcs_in_class(&self, class: usize) -> usize {
        self.arc_class.values().filter(|&&c| c == class).count()
    }

    /// Every arc classed exactly once; class value equals arc weight except
    /// for the symbolic loop class, whose arcs must be self-loops.
    pub fn check_against(&self, g: &WeightedDigraph) -> Result<()> {
        if self.arc_class.len() != g.arc_count() {
            return Err(Error::Invalid(format!(
                "class map covers {} arcs, graph has {}",
                self.arc_class.len(),
                g.arc_count()
            )));
        }
        for (u, v, w) in g.arcs() {
            let c = self
                .class_of(u, v)
                .ok_or_else(|| Error::Invalid(format!("arc ({u},{v}) unclassed")))?;
            if Some(c) == self.x_class {
                if u != v {
                    return Err(Error::Invalid(format!(
                        "x-class arc ({u},{v}) is not a self-loop"
                    )));
                }
            } else if self.values[c] != *w {
                return Err(Error::Invalid(format!(
                    "arc ({u},{v}) weight {} mismatches class value {}",
                    format_rational(w),
                    format_rational(&self.values[c])
                )));
            }
        }
        Ok(())
    }
}

/// Result of rewriting all non-unit weights into {0,1} gadget subgraphs.
#[derive(Debug, Clone)]
pub struct GadgetExpansion {
    /// All arc weights are 1.
    pub graph: WeightedDigraph,
    /// Valid decomposition of `graph`, surgically extended from the input.
    pub decomposition: TreeDecomposition,
    /// Internal vertices created for each rewritten original arc.
    pub arc_gadgets: BTreeMap<(usize, usize), Vec<usize>>,
    /// The per-gadget merge vertex that fixes path-length parity.
    pub parity_vertices: Vec<usize>,
}

struct GadgetBuilder {
    graph: WeightedDigraph,
    bags: Vec<std::collections::BTreeSet<usize>>,
    tree_edges: Vec<(usize, usize)>,
}

impl GadgetBuilder {
    fn fresh_vertex(&mut self) -> usize {
        let v = self.graph.vertex_count();
        self.graph = grow(&self.graph, 1);
        v
    }

    fn unit_arc(&mut self, u: usize, v: usize) {
        self.graph
            .add_arc(u, v, Rational::one())
            .expect("gadget arc");
    }

    fn bag(&mut self, parent: usize, vs: &[usize]) -> usize {
        self.bags.push(vs.iter().cloned().collect());
        let idx = self.bags.len() - 1;
        self.tree_edges.push((parent, idx));
        idx
    }
}

fn grow(g: &WeightedDigraph, extra: usize) -> WeightedDigraph {
    let mut out = WeightedDigraph::new(g.vertex_count() + extra);
    for (u, v, w) in g.arcs() {
        out.add_arc(u, v, w.clone()).expect("copy arc");
    }
    out
}

/// Rewrites every integer-weight arc of `g` into a {0,1} bundle, extending
/// `td` with one child bag per arc (the paper's surgery: a `{u,v}` bag under
/// the highest bag containing the arc, with the gadget's own bags below it).
/// The signed cycle-cover sum, hence the determinant, is preserved.
pub fn expand_weights(g: &WeightedDigraph, td: &TreeDecomposition) -> Result<GadgetExpansion> {
    for (u, v, w) in g.arcs() {
        if !w.denom().is_one() {
            return Err(Error::NonIntegerWeight(format!(
                "arc ({u},{v}) has weight {}",
                format_rational(w)
            )));
        }
    }
    td.validate_or_err(&g.undirected_edges())?;
    if td.n_graph != g.vertex_count() {
        return Err(Error::Invalid(
            "decomposition does not match graph size".into(),
        ));
    }

    let mut b = GadgetBuilder {
        graph: WeightedDigraph::new(g.vertex_count()),
        bags: td.bags.clone(),
        tree_edges: td.tree_edges.clone(),
    };
    let mut arc_gadgets = BTreeMap::new();
    let mut parity_vertices = Vec::new();

    for (u, v, w) in g.arcs() {
        let w: BigInt = to_bigint(w).expect("checked integer");
        if w.is_one() {
            b.unit_arc(u, v);
            arc_gadgets.insert((u, v), Vec::new());
            continue;
        }
        let host = if u == v {
            td.highest_bag_containing(&[u])
        } else {
            td.highest_bag_containing(&[u, v])
        }
        .expect("validated decomposition covers the arc");
        let b_uv = b.bag(host, &[u, v]);

        let magnitude = w.abs();
        let negative = w.is_negative();
        let mut internal = Vec::new();

        // Shared merge vertex; padding after it sets the parity.
        let merge = b.fresh_vertex();
        internal.push(merge);
        parity_vertices.push(merge);
        let g0 = b.bag(b_uv, &[u, merge, v]);

        let bits: Vec<usize> = (0..magnitude.bits())
            .filter(|&i| magnitude.bit(i))
            .map(|i| i as usize)
            .collect();
        let top_bit = *bits.last().expect("magnitude >= 1");

        for &bit in &bits {
            // Branch for 2^bit: entry, `bit` doubling diamonds, then padding
            // to equalize interior length across branches.
            let entry = b.fresh_vertex();
            internal.push(entry);
            let mut last_bag = b.bag(g0, &[u, entry, merge]);
            b.unit_arc(u, entry);
            let mut tail = entry;
            for _ in 0..bit {
                let m1 = b.fresh_vertex();
                let m2 = b.fresh_vertex();
                let junction = b.fresh_vertex();
                internal.extend([m1, m2, junction]);
                b.unit_arc(tail, m1);
                b.unit_arc(tail, m2);
                b.unit_arc(m1, junction);
                b.unit_arc(m2, junction);
                last_bag = b.bag(last_bag, &[tail, m1, junction, merge]);
                last_bag = b.bag(last_bag, &[tail, m2, junction, merge]);
                tail = junction;
            }
            for _ in 0..2 * (top_bit - bit) {
                let pad = b.fresh_vertex();
                internal.push(pad);
                b.unit_arc(tail, pad);
                last_bag = b.bag(last_bag, &[tail, pad, merge]);
                tail = pad;
            }
            b.unit_arc(tail, merge);
        }

        // Interior length so far on every path: 1 (entry) + 2*top_bit
        // (diamonds or padding) + 1 (merge); even. One more subdivision
        // after the merge makes it odd, flipping the sign for negative
        // weights.
        if negative {
            let flip = b.fresh_vertex();
            internal.push(flip);
            b.unit_arc(merge, flip);
            b.unit_arc(flip, v);
            b.bag(g0, &[merge, flip, v]);
        } else {
            b.unit_arc(merge, v);
        }

        for &x in &internal {
            b.unit_arc(x, x);
        }
        arc_gadgets.insert((u, v), internal);
    }

    let decomposition = TreeDecomposition {
        n_graph: b.graph.vertex_count(),
        bags: b.bags,
        tree_edges: b.tree_edges,
    };
    debug_assert!(decomposition
        .validate(&b.graph.undirected_edges())
        .is_ok());
    Ok(GadgetExpansion {
        graph: b.graph,
        decomposition,
        arc_gadgets,
        parity_vertices,
    })
}

/// The graph of `xI - A` with the diagonal realized combinatorially: every
/// original vertex carries a designated-class self-loop standing for `x`; a
/// nonzero diagonal entry `d` adds a parallel weight `-d` three-cycle
/// through two auxiliary loop vertices (a plain two-cycle would flip the
/// cover sign); off-diagonal entries become arcs of weight `-a_ij`.
#[derive(Debug, Clone)]
pub struct CharPolyGraph {
    pub graph: WeightedDigraph,
    pub classes: EdgeClassMap,
    /// Auxiliary pair per original vertex with a nonzero diagonal.
    pub diagonal_aux: BTreeMap<usize, (usize, usize)>,
}

pub fn charpoly_graph(a: &RationalMatrix) -> Result<CharPolyGraph> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let diag_count = (0..n).filter(|&v| !a.get(v, v).is_zero()).count();
    let mut g = WeightedDigraph::new(n + 2 * diag_count);
    let mut weighted_arcs: Vec<((usize, usize), Rational)> = Vec::new();
    let mut x_arcs: Vec<(usize, usize)> = Vec::new();
    let mut diagonal_aux = BTreeMap::new();

    for v in 0..n {
        x_arcs.push((v, v));
    }
    let mut next = n;
    for (i, j, w) in a.iter() {
        if i != j {
            weighted_arcs.push(((i, j), -w.clone()));
        } else {
            let z1 = next;
            let z2 = next + 1;
            next += 2;
            diagonal_aux.insert(i, (z1, z2));
            weighted_arcs.push(((i, z1), -w.clone()));
            weighted_arcs.push(((z1, z2), Rational::one()));
            weighted_arcs.push(((z2, i), Rational::one()));
            weighted_arcs.push(((z1, z1), Rational::one()));
            weighted_arcs.push(((z2, z2), Rational::one()));
        }
    }

    let mut values: Vec<Rational> = weighted_arcs.iter().map(|(_, w)| w.clone()).collect();
    values.sort();
    values.dedup();
    // the symbolic class sits at the end; its placeholder weight is 1
    let x_class = values.len();
    let mut class_values = values.clone();
    class_values.push(find_placeholder(&values));

    let mut arc_class = BTreeMap::new();
    for ((u, v), w) in &weighted_arcs {
        g.add_arc(*u, *v, w.clone())?;
        let c = values.binary_search(w).expect("value present");
        arc_class.insert((*u, *v), c);
    }
    for &(u, v) in &x_arcs {
        g.add_arc(u, v, Rational::one())?;
        arc_class.insert((u, v), x_class);
    }
    let classes = EdgeClassMap::new(class_values, arc_class, Some(x_class))?;
    Ok(CharPolyGraph {
        graph: g,
        classes,
        diagonal_aux,
    })
}

/// A nonzero rational distinct from every concrete class value, to serve as
/// the symbolic class placeholder.
fn find_placeholder(values: &[Rational]) -> Rational {
    let mut candidate = Rational::one();
    while values.contains(&candidate) {
        candidate += Rational::one();
    }
    candidate
}

/// Extends `td` (a decomposition of the original support) to cover the
/// charpoly graph: one `{v, z1, z2}` bag per diagonal auxiliary pair.
pub fn charpoly_decomposition(
    td: &TreeDecomposition,
    cg: &CharPolyGraph,
) -> TreeDecomposition {
    let mut bags = td.bags.clone();
    let mut tree_edges = td.tree_edges.clone();
    for (&v, &(z1, z2)) in &cg.diagonal_aux {
        let host = td
            .highest_bag_containing(&[v])
            .expect("vertex covered by decomposition");
        bags.push([v, z1, z2].into_iter().collect());
        tree_edges.push((host, bags.len() - 1));
    }
    TreeDecomposition {
        n_graph: cg.graph.vertex_count(),
        bags,
        tree_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccdp::{cycle_cover_histogram, signed_sum};
    use crate::nice::make_nice;
    use crate::rational::rat_int;
    use crate::treedecomp::{decompose, Strategy};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn det_via_expansion(g: &WeightedDigraph) -> Rational {
        let td = decompose(
            g.vertex_count(),
            &g.undirected_edges(),
            Strategy::MinFill,
        )
        .unwrap();
        let ex = expand_weights(g, &td).unwrap();
        ex.decomposition
            .validate(&ex.graph.undirected_edges())
            .unwrap();
        let classes = EdgeClassMap::from_weights(&ex.graph);
        let nice = make_nice(&ex.decomposition).unwrap();
        let folded = crate::ccdp::run_signed(&ex.graph, &classes, &nice).unwrap();
        if ex.graph.vertex_count() % 2 == 0 {
            folded
        } else {
            -folded
        }
    }

    #[test]
    fn small_expansion_histogram_matches_signed_route() {
        // cross-check the folded route against the literal histogram sum
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[-3, 1]]);
        let g = m.support_digraph().unwrap();
        let td = TreeDecomposition::single_bag(2);
        let ex = expand_weights(&g, &td).unwrap();
        let classes = EdgeClassMap::from_weights(&ex.graph);
        let nice = make_nice(&ex.decomposition).unwrap();
        let hist = crate::ccdp::cycle_cover_histogram_budgeted(
            &ex.graph, &classes, &nice, 1 << 60,
        )
        .unwrap();
        let via_hist = signed_sum(&hist, &classes).unwrap();
        assert_eq!(via_hist, crate::oracle::det_bareiss(&m).unwrap());
        assert_eq!(via_hist, det_via_expansion(&g));
    }

    #[test]
    fn weight_one_arc_is_kept_verbatim() {
        let mut g = WeightedDigraph::new(2);
        g.add_arc(0, 1, rat_int(1)).unwrap();
        g.add_arc(1, 0, rat_int(1)).unwrap();
        let td = TreeDecomposition::single_bag(2);
        let ex = expand_weights(&g, &td).unwrap();
        assert_eq!(ex.graph, g);
        assert!(ex.arc_gadgets.values().all(|v| v.is_empty()));
    }

    #[test]
    fn two_by_two_weighted() {
        // det [[0,3],[1,0]] = -3
        let m = RationalMatrix::from_i64_rows(&[&[0, 3], &[1, 0]]);
        let g = m.support_digraph().unwrap();
        assert_eq!(det_via_expansion(&g), rat_int(-3));
        assert_eq!(
            crate::oracle::det_bareiss(&m).unwrap(),
            rat_int(-3)
        );
    }

    #[test]
    fn negative_unit_arc_flips_sign_once() {
        // det [[0,-1],[1,0]] = 1
        let m = RationalMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let g = m.support_digraph().unwrap();
        assert_eq!(det_via_expansion(&g), rat_int(1));
    }

    #[test]
    fn expansion_preserves_det_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..120 {
            let n = rng.gen_range(1..=5);
            let mut m = RationalMatrix::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    if rng.gen_bool(0.5) {
                        let w = rng.gen_range(-15..=15i64);
                        m.set(i, j, rat_int(w)).unwrap();
                    }
                }
            }
            let g = m.support_digraph().unwrap();
            let got = det_via_expansion(&g);
            let want = crate::oracle::det_bareiss(&m).unwrap();
            assert_eq!(got, want, "matrix {m:?}");
        }
    }

    #[test]
    fn gadget_parity_even_outside_paths() {
        // Brute-force covers of a small expansion: for each cover, the
        // self-loops outside the used gadget paths must come in even count
        // per positive gadget.
        let mut g = WeightedDigraph::new(2);
        g.add_arc(0, 1, rat_int(3)).unwrap();
        g.add_arc(1, 0, rat_int(1)).unwrap();
        let td = TreeDecomposition::single_bag(2);
        let ex = expand_weights(&g, &td).unwrap();
        let covers = crate::msocheck::enumerate_cycle_covers(&ex.graph).unwrap();
        assert!(!covers.is_empty());
        let gadget = &ex.arc_gadgets[&(0, 1)];
        for cover in &covers {
            let loops_outside = gadget
                .iter()
                .filter(|&&v| cover.contains(&(v, v)))
                .count();
            let used: usize = gadget.len() - loops_outside;
            // every cover either skips the gadget entirely or uses one full
            // path; either way the skipped-loop count is even
            assert!(loops_outside % 2 == 0, "cover {cover:?}");
            assert!(used % 2 == 0);
        }
    }

    #[test]
    fn expansion_rejects_non_integer() {
        let mut g = WeightedDigraph::new(1);
        g.add_arc(0, 0, crate::rational::rat(1, 2)).unwrap();
        let td = TreeDecomposition::single_bag(1);
        assert!(matches!(
            expand_weights(&g, &td),
            Err(Error::NonIntegerWeight(_))
        ));
    }

    #[test]
    fn gadget_map_covers_every_new_vertex_once() {
        let m = RationalMatrix::from_i64_rows(&[&[5, -7], &[2, 11]]);
        let g = m.support_digraph().unwrap();
        let td = TreeDecomposition::single_bag(2);
        let ex = expand_weights(&g, &td).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for vs in ex.arc_gadgets.values() {
            for &v in vs {
                assert!(v >= 2);
                assert!(seen.insert(v), "vertex {v} in two gadgets");
            }
        }
        assert_eq!(seen.len(), ex.graph.vertex_count() - 2);
    }

    #[test]
    fn charpoly_graph_shapes() {
        // zero matrix: only x-loops
        let cg = charpoly_graph(&RationalMatrix::zero(3, 3)).unwrap();
        assert_eq!(cg.graph.vertex_count(), 3);
        assert_eq!(cg.graph.arc_count(), 3);
        assert!(cg.diagonal_aux.is_empty());

        // identity: x-loops plus one aux three-cycle per vertex
        let cg = charpoly_graph(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(cg.graph.vertex_count(), 2 + 4);
        assert_eq!(cg.diagonal_aux.len(), 2);
        let x = cg.classes.x_class().unwrap();
        assert_eq!(cg.classes.arcs_in_class(x), 2);
        cg.classes.check_against(&cg.graph).unwrap();
    }
}
