//! Generators for structured ground-truth instances: the path-order
//! determinant gadget, path-reachability powering instances, and the
//! constant-width walk gadget for iterated products.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::matrix::RationalMatrix;
use crate::rational::{rat_int, Rational};
use crate::treedecomp::{decompose, Strategy, TreeDecomposition};

/// A rewired directed path whose determinant is zero exactly when `s`
/// precedes `t`.
#[derive(Debug, Clone)]
pub struct OrdInstance {
    pub n: usize,
    pub path: WeightedDigraph,
    pub p_prime: WeightedDigraph,
    pub s: usize,
    pub t: usize,
    pub s_prime: usize,
    pub t_prime: usize,
    pub s_first: bool,
    pub decomposition: TreeDecomposition,
}

impl OrdInstance {
    /// The determinant value the construction guarantees.
    pub fn expected_determinant(&self) -> Rational {
        if self.s_first {
            rat_int(0)
        } else if (self.n + 1) % 2 == 0 {
            rat_int(1)
        } else {
            rat_int(-1)
        }
    }
}

/// Builds the rewired path. Endpoints are `a = 0` and `b = n-1`; `s'` and
/// `t'` are the inner neighbors of `s` and `t` (the neighbors on the
/// segment between them).
///
/// When `s` comes first, the two-cover cancellation needs the inner segment
/// to be the single edge `(s', t')`, so the construction places `t = s+3`;
/// the rewiring then admits exactly two covers, with 3 and 2 cycles, whose
/// signs cancel. When `t` comes first the marked vertices are free and the
/// rewiring admits exactly one spanning cycle.
pub fn gen_ord_instance(n: usize, s_first: bool, seed: u64) -> Result<OrdInstance> {
    if n < 6 {
        return Err(Error::InstanceTooSmall(format!(
            "ord instance needs n >= 6, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = 0usize;
    let b = n - 1;

    let mut path = WeightedDigraph::new(n);
    for i in 0..n - 1 {
        path.add_arc(i, i + 1, rat_int(1))?;
    }

    let (s, t, s_prime, t_prime, removed, added): (
        usize,
        usize,
        usize,
        usize,
        Vec<(usize, usize)>,
        Vec<(usize, usize)>,
    ) = if s_first {
        let s = rng.gen_range(1..=n - 5);
        let t = s + 3;
        let s_prime = s + 1; // inner neighbor of s
        let t_prime = t - 1; // inner neighbor of t
        (
            s,
            t,
            s_prime,
            t_prime,
            vec![(s, s_prime), (t_prime, t)],
            vec![
                (s, a),
                (s_prime, a),
                (t_prime, s_prime),
                (s, t_prime),
                (b, t),
            ],
        )
    } else {
        // Jump arcs only: the figure's two extra chords are unusable in any
        // cover (their heads' in-arcs are forced by path interiors) but push
        // the support treewidth to 3; without them the contracted shape is a
        // single 6-cycle of width 2 and the unique spanning cycle survives.
        let t = rng.gen_range(1..=n - 5);
        let s = rng.gen_range(t + 3..=n - 2);
        let t_prime = t + 1;
        let s_prime = s - 1;
        (
            s,
            t,
            s_prime,
            t_prime,
            vec![(t, t_prime), (s_prime, s)],
            vec![(s_prime, a), (t, s), (b, t_prime)],
        )
    };

    let mut p_prime = WeightedDigraph::new(n);
    for i in 0..n - 1 {
        if !removed.contains(&(i, i + 1)) {
            p_prime.add_arc(i, i + 1, rat_int(1))?;
        }
    }
    for &(u, v) in &added {
        p_prime.add_arc(u, v, rat_int(1))?;
    }

    let edges = p_prime.undirected_edges();
    let decomposition = decompose(n, &edges, Strategy::MinFill)?;
    decomposition.validate_or_err(&edges)?;
    if decomposition.width() > 2 {
        return Err(Error::Invalid(format!(
            "ord instance decomposition has width {}",
            decomposition.width()
        )));
    }
    Ok(OrdInstance {
        n,
        path,
        p_prime,
        s,
        t,
        s_prime,
        t_prime,
        s_first,
        decomposition,
    })
}

/// Path adjacency plus two marked vertices; reachability is decided by
/// whether `((I + A_P)^n)_{s,t}` is nonzero.
#[derive(Debug, Clone)]
pub struct PoweringInstance {
    pub n: usize,
    pub a_path: RationalMatrix,
    pub s: usize,
    pub t: usize,
    pub reachable: bool,
}

pub fn gen_powering_instance(n: usize, seed: u64) -> Result<PoweringInstance> {
    if n < 2 {
        return Err(Error::InstanceTooSmall(format!(
            "powering instance needs n >= 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a_path = RationalMatrix::zero(n, n);
    for i in 0..n - 1 {
        a_path.set(i, i + 1, rat_int(1))?;
    }
    let s = rng.gen_range(0..n);
    let t = rng.gen_range(0..n);
    Ok(PoweringInstance {
        n,
        a_path,
        s,
        t,
        reachable: s <= t,
    })
}

/// The alternating two-layer walk gadget: `m` copies of a `2 n^2`-vertex
/// block plus an exit column. Length-`m` walks in the input graph biject
/// with entry-to-exit paths: the identity track of a token is cut at its
/// diagonal vertex, so every block transit takes exactly one input arc.
#[derive(Debug, Clone)]
pub struct ImmGadget {
    pub graph: WeightedDigraph,
    pub n: usize,
    pub m: usize,
    /// Entry vertex per input vertex.
    pub entries: Vec<usize>,
    /// Exit vertex per input vertex.
    pub exits: Vec<usize>,
}

impl ImmGadget {
    /// Number of entry-to-exit paths per vertex pair, by DAG counting.
    pub fn path_counts(&self) -> Vec<Vec<num_bigint::BigInt>> {
        use num_bigint::BigInt;
        let nv = self.graph.vertex_count();
        let mut out = vec![vec![BigInt::from(0); self.n]; self.n];
        for (i, &src) in self.entries.iter().enumerate() {
            // vertices are numbered topologically by construction
            let mut ways = vec![BigInt::from(0); nv];
            ways[src] = BigInt::from(1);
            for (u, v, _) in self.graph.arcs() {
                debug_assert!(u < v, "gadget is a forward DAG");
                let w = ways[u].clone();
                if !num_traits::Zero::is_zero(&w) {
                    ways[v] += w;
                }
            }
            for (j, &dst) in self.exits.iter().enumerate() {
                out[i][j] = ways[dst].clone();
            }
        }
        out
    }
}

pub fn gen_imm_gadget(a: &RationalMatrix, m: usize) -> Result<ImmGadget> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if m == 0 {
        return Err(Error::InstanceTooSmall("need m >= 1".into()));
    }
    for (i, j, v) in a.iter() {
        if !v.is_one() {
            return Err(Error::Invalid(format!(
                "entry ({i},{j}) is not 0/1"
            )));
        }
    }
    let n = a.rows();
    if n == 0 {
        return Err(Error::InstanceTooSmall("need n >= 1".into()));
    }
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| a.get(i, j).is_one()).collect())
        .collect();

    // id(gadget, side, block, vertex); side 0 = the gadget's diagonal side.
    // The numbering is topological: arcs only increase it.
    let id = |g: usize, side: usize, block: usize, v: usize| -> usize {
        g * 2 * n * n + block * 2 * n + side * n + v
    };
    let exit_base = m * 2 * n * n;
    let total = exit_base + n;
    let mut w = WeightedDigraph::new(total);
    let one = Rational::one;

    for g in 0..m {
        for block in 0..n.saturating_sub(1) {
            for v in 0..n {
                // diagonal side: the identity out of the diagonal vertex is
                // cut, forcing an input arc there
                if v != block {
                    w.add_arc(id(g, 0, block, v), id(g, 0, block + 1, v), one())?;
                }
                w.add_arc(id(g, 1, block, v), id(g, 1, block + 1, v), one())?;
            }
        }
        for block in 0..n {
            let c = block; // diagonal vertex of this block
            for &k in &succ[c] {
                if block + 1 < n {
                    w.add_arc(id(g, 0, block, c), id(g, 1, block + 1, k), one())?;
                } else if g + 1 < m {
                    w.add_arc(id(g, 0, block, c), id(g + 1, 0, 0, k), one())?;
                } else {
                    w.add_arc(id(g, 0, block, c), exit_base + k, one())?;
                }
            }
        }
        // bridge the post-switch side to the next stage
        for v in 0..n {
            if g + 1 < m {
                w.add_arc(id(g, 1, n - 1, v), id(g + 1, 0, 0, v), one())?;
            } else {
                w.add_arc(id(g, 1, n - 1, v), exit_base + v, one())?;
            }
        }
    }

    let entries = (0..n).map(|v| id(0, 0, 0, v)).collect();
    let exits = (0..n).map(|v| exit_base + v).collect();
    Ok(ImmGadget {
        graph: w,
        n,
        m,
        entries,
        exits,
    })
}
