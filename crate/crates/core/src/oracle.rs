//! Independent brute-force reference implementations.
//!
//! Nothing here shares code with the tree-decomposition pipeline; these
//! functions are the ground truth the pipeline is tested against.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::matrix::RationalMatrix;
use crate::rational::Rational;

/// Exact determinant. Laplace expansion for n <= 4, fraction-free Bareiss
/// elimination with pivot search above that.
pub fn det_bareiss(a: &RationalMatrix) -> Result<Rational> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() <= 4 {
        return Ok(det_laplace(a));
    }
    Ok(det_bareiss_elimination(a))
}

/// Cofactor expansion along the first row. Exponential; small inputs only.
pub fn det_laplace(a: &RationalMatrix) -> Rational {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return a.get(0, 0);
    }
    let mut det = Rational::zero();
    for j in 0..n {
        let v = a.get(0, j);
        if v.is_zero() {
            continue;
        }
        let sub = a.minor(0, j).expect("in range");
        let term = v * det_laplace(&sub);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Fraction-free elimination over the integers after clearing denominators
/// row by row. Pivots are searched over the whole remaining submatrix.
pub fn det_bareiss_elimination(a: &RationalMatrix) -> Rational {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return Rational::one();
    }
    // Clear denominators per row; remember the scale to divide back out.
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row: Vec<Rational> = (0..n).map(|j| a.get(i, j)).collect();
        let l = crate::rational::denominator_lcm(row.iter());
        scale *= &l;
        m.push(
            row.into_iter()
                .map(|x| {
                    let scaled = x * Rational::from_integer(l.clone());
                    debug_assert!(scaled.denom().is_one());
                    scaled.numer().clone()
                })
                .collect(),
        );
    }

    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        // Full pivot search.
        let mut pivot = None;
        'outer: for i in k..n {
            for j in k..n {
                if !m[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pi != k {
            m.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in m.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
        }
        for i in k + 1..n {
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det_int = m[n - 1][n - 1].clone() * BigInt::from(sign);
    Rational::new(det_int, scale)
}

/// Exact `A^m` by repeated multiplication.
pub fn power_direct(a: &RationalMatrix, m: usize) -> Result<RationalMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut acc = RationalMatrix::identity(a.rows());
    for _ in 0..m {
        acc = acc.mul(a)?;
    }
    Ok(acc)
}

/// Rank as the pivot count of exact rational row echelon form.
pub fn rank_elimination(a: &RationalMatrix) -> usize {
    let rows = a.rows();
    let cols = a.cols();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| (0..cols).map(|j| a.get(i, j)).collect())
        .collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&i| !m[i][col].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => continue,
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for i in row + 1..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone() / inv.clone();
            for j in col..cols {
                let delta = factor.clone() * m[row][j].clone();
                m[i][j] -= delta;
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Number of spanning out-arborescences of `g` rooted at `root` (every
/// non-root vertex has exactly one incoming chosen arc and the chosen arcs
/// reach everything from the root).
pub fn brute_arborescences(g: &WeightedDigraph, root: usize) -> Result<BigInt> {
    let n = g.vertex_count();
    if n > 7 {
        return Err(Error::CapExceeded(format!(
            "brute_arborescences supports n <= 7, got {n}"
        )));
    }
    if root >= n {
        return Err(Error::Invalid(format!("root {root} out of range")));
    }
    if n == 0 {
        return Ok(BigInt::zero());
    }
    // Choices: for each non-root vertex pick its incoming tree arc.
    let mut in_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v, _) in g.arcs() {
        if u != v && v != root {
            in_arcs[v].push(u);
        }
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let mut count = BigInt::zero();
    let mut choice = vec![0usize; others.len()];
    fn rec(
        idx: usize,
        others: &[usize],
        in_arcs: &[Vec<usize>],
        choice: &mut Vec<usize>,
        root: usize,
        count: &mut BigInt,
    ) {
        if idx == others.len() {
            // Acyclic and rooted: walking parents from each vertex must reach root.
            let n = in_arcs.len();
            let mut parent = vec![usize::MAX; n];
            for (k, &v) in others.iter().enumerate() {
                parent[v] = in_arcs[v][choice[k]];
            }
            for &v in others {
                let mut cur = v;
                let mut steps = 0;
                while cur != root {
                    cur = parent[cur];
                    steps += 1;
                    if steps > n {
                        return;
                    }
                }
            }
            *count += 1;
            return;
        }
        let v = others[idx];
        for c in 0..in_arcs[v].len() {
            choice[idx] = c;
            rec(idx + 1, others, in_arcs, choice, root, count);
        }
    }
    // Any vertex with no available in-arc kills all assignments.
    if others.iter().any(|&v| in_arcs[v].is_empty()) {
        return Ok(BigInt::zero());
    }
    rec(0, &others, &in_arcs, &mut choice, root, &mut count);
    Ok(count)
}

/// Number of Euler tours counted as arc sequences starting at a fixed arc
/// (the lexicographically least one), i.e. rotation-normalized.
pub fn brute_euler_tours(g: &WeightedDigraph) -> Result<BigInt> {
    let arcs = g.arc_pairs();
    if arcs.len() > 12 {
        return Err(Error::CapExceeded(format!(
            "brute_euler_tours supports <= 12 arcs, got {}",
            arcs.len()
        )));
    }
    if arcs.is_empty() {
        return Err(Error::NonEulerian("graph has no arcs".into()));
    }
    let first = arcs[0];
    let mut used = vec![false; arcs.len()];
    used[0] = true;
    let mut count = BigInt::zero();
    fn rec(
        arcs: &[(usize, usize)],
        used: &mut Vec<bool>,
        at: usize,
        start: usize,
        remaining: usize,
        count: &mut BigInt,
    ) {
        if remaining == 0 {
            if at == start {
                *count += 1;
            }
            return;
        }
        for i in 0..arcs.len() {
            if !used[i] && arcs[i].0 == at {
                used[i] = true;
                rec(arcs, used, arcs[i].1, start, remaining - 1, count);
                used[i] = false;
            }
        }
    }
    rec(
        &arcs,
        &mut used,
        first.1,
        first.0,
        arcs.len() - 1,
        &mut count,
    );
    Ok(count)
}

/// Permanent by expansion over permutations; used by tests to cross-check
/// total cycle-cover counts. n <= 8.
pub fn permanent_support(a: &RationalMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n > 8 {
        return Err(Error::CapExceeded(format!(
            "permanent_support supports n <= 8, got {n}"
        )));
    }
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j, _) in a.iter() {
        rows[i].push(j);
    }
    let mut used = vec![false; n];
    let mut count = BigInt::zero();
    fn rec(i: usize, rows: &[Vec<usize>], used: &mut Vec<bool>, count: &mut BigInt) {
        if i == rows.len() {
            *count += 1;
            return;
        }
        for &j in &rows[i] {
            if !used[j] {
                used[j] = true;
                rec(i + 1, rows, used, count);
                used[j] = false;
            }
        }
    }
    rec(0, &rows, &mut used, &mut count);
    Ok(count)
}
