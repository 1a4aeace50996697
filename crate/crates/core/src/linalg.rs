//! Matrix invariants assembled from the cycle-cover engine: determinant,
//! characteristic polynomial, rank, inverse, powering, and linear-system
//! feasibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ccdp::{run_poly, run_signed};
use crate::error::{Error, Result};
use crate::gadgets::{charpoly_decomposition, charpoly_graph, expand_weights, EdgeClassMap};
use crate::matrix::RationalMatrix;
use crate::nice::make_nice;
use crate::rational::{denominator_lcm, Rational};
use crate::treedecomp::{decompose, Strategy, TreeDecomposition};

/// Pipeline knobs. The class route is used while the number of distinct
/// nonzero values stays within `class_threshold`; beyond that, weights are
/// rewritten into {0,1} gadgets.
#[derive(Debug, Clone)]
pub struct DetConfig {
    pub class_threshold: usize,
    pub strategy: Strategy,
}

impl Default for DetConfig {
    fn default() -> Self {
        DetConfig {
            class_threshold: 6,
            strategy: Strategy::MinFill,
        }
    }
}

/// Which evaluation route produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetRoute {
    /// Small value set: per-value edge classes, no graph rewriting.
    ClassDp,
    /// Integer row scaling plus {0,1} weight gadgets.
    GadgetDp,
}

impl DetRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            DetRoute::ClassDp => "detsup-class",
            DetRoute::GadgetDp => "ratdet-gadget",
        }
    }
}

fn decomposition_for(
    a_support_edges: &[(usize, usize)],
    n: usize,
    td: Option<&TreeDecomposition>,
    strategy: Strategy,
) -> Result<TreeDecomposition> {
    match td {
        Some(t) => {
            t.validate_or_err(a_support_edges)?;
            if t.n_graph != n {
                return Err(Error::Invalid(format!(
                    "decomposition is for {} vertices, need {n}",
                    t.n_graph
                )));
            }
            Ok(t.clone())
        }
        None => decompose(n, a_support_edges, strategy),
    }
}

/// Multiplies each row by the least common multiple of its denominators.
/// Returns the integer matrix and the product of the row scalars.
pub fn row_scale_to_integers(a: &RationalMatrix) -> (RationalMatrix, Rational) {
    let mut out = RationalMatrix::zero(a.rows(), a.cols());
    let mut product = Rational::one();
    for i in 0..a.rows() {
        let row: Vec<Rational> = (0..a.cols())
            .filter_map(|j| {
                let v = a.get(i, j);
                (!v.is_zero()).then_some(v)
            })
            .collect();
        if row.is_empty() {
            continue;
        }
        let l = denominator_lcm(row.iter());
        product *= Rational::from_integer(l.clone());
        for j in 0..a.cols() {
            let v = a.get(i, j);
            if !v.is_zero() {
                out.set(i, j, v * Rational::from_integer(l.clone())).unwrap();
            }
        }
    }
    (out, product)
}

pub fn determinant(a: &RationalMatrix, td: Option<&TreeDecomposition>) -> Result<Rational> {
    determinant_with(a, td, &DetConfig::default()).map(|(d, _)| d)
}

pub fn determinant_with(
    a: &RationalMatrix,
    td: Option<&TreeDecomposition>,
    cfg: &DetConfig,
) -> Result<(Rational, DetRoute)> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok((Rational::one(), DetRoute::ClassDp));
    }
    let g = a.support_digraph()?;
    let edges = g.undirected_edges();
    let td = decomposition_for(&edges, n, td, cfg.strategy)?;

    let sign = if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };

    if a.distinct_values().len() <= cfg.class_threshold {
        let classes = EdgeClassMap::from_weights(&g);
        let nice = make_nice(&td)?;
        match run_signed(&g, &classes, &nice) {
            Ok(folded) => return Ok((sign * folded, DetRoute::ClassDp)),
            Err(Error::BudgetExceeded { .. }) => {} // fall through to gadgets
            Err(e) => return Err(e),
        }
    }

    // Gadget route over the row-scaled integer matrix; the support, hence
    // the decomposition, is unchanged by row scaling.
    let (a_int, scale) = row_scale_to_integers(a);
    let g_int = a_int.support_digraph()?;
    let expansion = expand_weights(&g_int, &td)?;
    let classes = EdgeClassMap::from_weights(&expansion.graph);
    let nice = make_nice(&expansion.decomposition)?;
    let folded = run_signed(&expansion.graph, &classes, &nice)?;
    let sign_expanded = if expansion.graph.vertex_count() % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(((sign_expanded * folded) / scale, DetRoute::GadgetDp))
}

/// Coefficients `c_0..c_n` of `det(xI - A)`, exact; monic of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolynomial {
    pub coeffs: Vec<Rational>,
}

impl CharPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiplicity of the root 0: index of the first nonzero coefficient.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }
}

pub fn char_poly(a: &RationalMatrix) -> Result<CharPolynomial> {
    char_poly_with(a, None, &DetConfig::default())
}

pub fn char_poly_with(
    a: &RationalMatrix,
    td: Option<&TreeDecomposition>,
    cfg: &DetConfig,
) -> Result<CharPolynomial> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(CharPolynomial {
            coeffs: vec![Rational::one()],
        });
    }
    let g = a.support_digraph()?;
    let td = decomposition_for(&g.undirected_edges(), n, td, cfg.strategy)?;
    let cg = charpoly_graph(a)?;
    let cpd = charpoly_decomposition(&td, &cg);
    let nice = make_nice(&cpd)?;
    let folded = run_poly(&cg.graph, &cg.classes, &nice, n)?;
    // coefficient r of det(xI - A) = (-1)^(vertices of the charpoly graph)
    // times the folded coefficient
    let flip = cg.graph.vertex_count() % 2 == 1;
    let coeffs: Vec<Rational> = folded
        .into_iter()
        .map(|c| if flip { -c } else { c })
        .collect();
    let poly = CharPolynomial { coeffs };
    debug_assert_eq!(poly.degree(), n);
    debug_assert!(poly.coeffs[n].is_one(), "characteristic polynomial is monic");
    Ok(poly)
}

/// Rank via the symmetric embedding `B = [[0,A],[A^T,0]]`: `B` is symmetric,
/// hence diagonalizable, so its rank is its dimension minus the multiplicity
/// of the root 0 of its characteristic polynomial, and `rank(B) = 2 rank(A)`.
pub fn rank(a: &RationalMatrix) -> Result<usize> {
    rank_with(a, &DetConfig::default())
}

pub fn rank_with(a: &RationalMatrix, cfg: &DetConfig) -> Result<usize> {
    let b = a.symmetric_embedding();
    let chi = char_poly_with(&b, None, cfg)?;
    let dim = a.rows() + a.cols();
    let rank_b = dim - chi.zero_root_multiplicity();
    debug_assert_eq!(rank_b % 2, 0);
    Ok(rank_b / 2)
}

/// Direct reading of rank from the characteristic polynomial of `A` itself.
/// Only valid for diagonalizable matrices; kept as a diagnostic, not used by
/// [`rank`] (a nilpotent matrix breaks it).
pub fn rank_charpoly_direct(a: &RationalMatrix) -> Result<usize> {
    let chi = char_poly(a)?;
    Ok(a.rows() - chi.zero_root_multiplicity())
}

pub fn inverse(a: &RationalMatrix, td: Option<&TreeDecomposition>) -> Result<RationalMatrix> {
    inverse_with(a, td, &DetConfig::default())
}

pub fn inverse_with(
    a: &RationalMatrix,
    td: Option<&TreeDecomposition>,
    cfg: &DetConfig,
) -> Result<RationalMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let (det, _) = determinant_with(a, td, cfg)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let mut inv = RationalMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            // cofactor C_ij as a bounded-treewidth determinant of the
            // vertex-deleted graph (row i and column j removed)
            let minor = a.minor(i, j)?;
            let (d, _) = determinant_with(&minor, None, cfg)?;
            if d.is_zero() {
                continue;
            }
            let sign = if (i + j) % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            // adjugate transposes the cofactor matrix
            inv.set(j, i, sign * d / det.clone())?;
        }
    }
    Ok(inv)
}

/// Scale exponent and read-out windows for the resolvent powering route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerPlan {
    /// `t = 2^-p`.
    pub p: usize,
    /// Series terms that must fit below the target window.
    pub truncation_order: usize,
    /// Bits per entry window.
    pub window_bits: usize,
}

/// Builds a plan for reading `A^m` out of `(I - 2^-p A)^-1`: `2^p` strictly
/// exceeds the infinity norm raised to the window height, so consecutive
/// windows cannot overlap and the tail beyond `A^m` stays below one.
pub fn power_plan(a: &RationalMatrix, m: usize) -> Result<PowerPlan> {
    check_nonnegative_integer(a)?;
    let n = a.rows();
    let mut norm = BigInt::zero();
    for i in 0..n {
        let row_sum: BigInt = (0..n).map(|j| a.get(i, j).numer().clone()).sum();
        norm = norm.max(row_sum);
    }
    let window_bits = (norm.bits() as usize).max(1);
    let p = (m + 1) * window_bits + 1;
    Ok(PowerPlan {
        p,
        truncation_order: m,
        window_bits,
    })
}

fn check_nonnegative_integer(a: &RationalMatrix) -> Result<()> {
    for (i, j, v) in a.iter() {
        if !v.denom().is_one() {
            return Err(Error::NonIntegerWeight(format!("entry ({i},{j})")));
        }
        if v.is_negative() {
            return Err(Error::NegativeEntry(format!("entry ({i},{j})")));
        }
    }
    Ok(())
}

/// `A^m` read out of the exact resolvent `(I - tA)^{-1} = sum_j t^j A^j`
/// with `t = 2^-p`: entry `(i,j)` of `A^m` occupies its own bit window of
/// the resolvent entry.
pub fn power_resolvent(a: &RationalMatrix, m: usize, plan: &PowerPlan) -> Result<RationalMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    check_nonnegative_integer(a)?;
    let minimal = power_plan(a, m)?;
    if plan.p < minimal.p || plan.truncation_order < m {
        return Err(Error::Invalid(format!(
            "power plan too small: p={} < required {}",
            plan.p, minimal.p
        )));
    }
    let n = a.rows();
    let p = plan.p;
    let t = Rational::new(BigInt::one(), BigInt::one() << p);
    let mut m_resolvent = RationalMatrix::identity(n);
    for (i, j, v) in a.iter() {
        let cur = m_resolvent.get(i, j) - t.clone() * v;
        m_resolvent.set(i, j, cur)?;
    }
    // Values of the scaled matrix are many and huge; the class route folds
    // them exactly, so force it.
    let cfg = DetConfig {
        class_threshold: usize::MAX,
        strategy: Strategy::MinFill,
    };
    let inv = inverse_with(&m_resolvent, None, &cfg)?;
    let mut out = RationalMatrix::zero(n, n);
    let window = BigInt::one() << p;
    for i in 0..n {
        for j in 0..n {
            let v = inv.get(i, j);
            // floor(v * 2^(p m)) mod 2^p
            let shifted = v * Rational::from_integer(BigInt::one() << (p * m));
            let floored = shifted.numer().div_floor(shifted.denom());
            let entry = floored.mod_floor(&window);
            out.set(i, j, Rational::from_integer(entry))?;
        }
    }
    Ok(out)
}

/// A linear system `Az = b`; only feasibility is decided.
#[derive(Debug, Clone)]
pub struct FsleInstance {
    pub a: RationalMatrix,
    pub b: Vec<Rational>,
}

impl FsleInstance {
    pub fn new(a: RationalMatrix, b: Vec<Rational>) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, vector has {}",
                a.rows(),
                b.len()
            )));
        }
        Ok(FsleInstance { a, b })
    }

    pub fn augmented(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.a.rows(), self.a.cols() + 1);
        for (i, j, v) in self.a.iter() {
            out.set(i, j, v.clone()).unwrap();
        }
        for (i, v) in self.b.iter().enumerate() {
            if !v.is_zero() {
                out.set(i, self.a.cols(), v.clone()).unwrap();
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible,
}

/// Feasible exactly when `rank(A) = rank([A | b])`.
pub fn fsle(inst: &FsleInstance) -> Result<Feasibility> {
    fsle_with(inst, &DetConfig::default())
}

pub fn fsle_with(inst: &FsleInstance, cfg: &DetConfig) -> Result<Feasibility> {
    let ra = rank_with(&inst.a, cfg)?;
    let raug = rank_with(&inst.augmented(), cfg)?;
    Ok(if ra == raug {
        Feasibility::Feasible
    } else {
        Feasibility::Infeasible
    })
}
