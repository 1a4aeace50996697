//! Cycle-cover counting by dynamic programming over a nice tree
//! decomposition.
//!
//! A partial solution at a bag is described by a [`BagState`]: each bag
//! vertex is untouched, done (in- and out-arc chosen), or an endpoint of an
//! open path, and open paths are tracked as ordered pairs (start still needs
//! an incoming arc, end still needs an outgoing arc). All arcs incident to a
//! vertex and its remaining bag partners are decided at that vertex's forget
//! node, which is the unique point where both endpoints are guaranteed
//! present; every arc is therefore decided exactly once, joins included.
//!
//! The engine is generic over a commutative semiring describing what is
//! accumulated per partial cover: the full `(cycle count, class counts)`
//! histogram, a sign-folded rational (determinants), or a polynomial in the
//! designated loop class (characteristic polynomials). All three agree by
//! construction; the tests cross-check them anyway.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gadgets::EdgeClassMap;
use crate::graph::WeightedDigraph;
use crate::nice::{NiceKind, NiceTreeDecomposition};
use crate::rational::{format_rational, pow_rational, Rational};

pub const DEFAULT_BUDGET: u128 = 100_000_000;
const MAX_BAG: usize = 18;

/// Budget actually in force: `TWDET_DP_BUDGET` overrides the default.
pub fn effective_budget() -> u128 {
    std::env::var("TWDET_DP_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Per-bag-vertex status.
const ST_UNTOUCHED: u8 = 0;
const ST_DONE: u8 = 1;
const ST_NEEDS_IN: u8 = 2; // start of an open path: out-arc chosen
const ST_NEEDS_OUT: u8 = 3; // end of an open path: in-arc chosen

const NO_PARTNER: u8 = 0x1f;

/// DP state over one bag: statuses in bag order plus the open-path pairing.
/// `partner[i]` holds the end position of the path starting at position `i`
/// (only meaningful when `status[i] == ST_NEEDS_IN`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BagState {
    status: Vec<u8>,
    partner: Vec<u8>,
}

impl BagState {
    fn empty() -> Self {
        BagState {
            status: Vec::new(),
            partner: Vec::new(),
        }
    }

    fn pack(&self) -> u128 {
        let mut key: u128 = 0;
        for i in 0..self.status.len() {
            let part = if self.status[i] == ST_NEEDS_IN {
                self.partner[i]
            } else {
                NO_PARTNER
            };
            let field = (self.status[i] as u128) | ((part as u128) << 2);
            key |= field << (7 * i);
        }
        key | (1u128 << (7 * self.status.len())) // length marker
    }

    fn unpack(key: u128, len: usize) -> Self {
        let mut status = vec![0u8; len];
        let mut partner = vec![NO_PARTNER; len];
        for i in 0..len {
            let field = (key >> (7 * i)) & 0x7f;
            status[i] = (field & 0b11) as u8;
            partner[i] = ((field >> 2) & 0x1f) as u8;
        }
        BagState { status, partner }
    }

    fn insert_at(&self, p: usize) -> BagState {
        let mut status = self.status.clone();
        let mut partner = self.partner.clone();
        status.insert(p, ST_UNTOUCHED);
        partner.insert(p, NO_PARTNER);
        for q in partner.iter_mut() {
            if *q != NO_PARTNER && *q as usize >= p {
                *q += 1;
            }
        }
        BagState { status, partner }
    }

    fn remove_at(&self, p: usize) -> BagState {
        debug_assert_eq!(self.status[p], ST_DONE);
        let mut status = self.status.clone();
        let mut partner = self.partner.clone();
        status.remove(p);
        partner.remove(p);
        for q in partner.iter_mut() {
            if *q != NO_PARTNER {
                debug_assert_ne!(*q as usize, p);
                if *q as usize > p {
                    *q -= 1;
                }
            }
        }
        BagState { status, partner }
    }

    fn in_free(&self, p: usize) -> bool {
        matches!(self.status[p], ST_UNTOUCHED | ST_NEEDS_IN)
    }

    fn out_free(&self, p: usize) -> bool {
        matches!(self.status[p], ST_UNTOUCHED | ST_NEEDS_OUT)
    }

    fn start_of_path_ending_at(&self, end: usize) -> Option<usize> {
        (0..self.status.len())
            .find(|&s| self.status[s] == ST_NEEDS_IN && self.partner[s] as usize == end)
    }

    /// Chooses arc `tail -> head` (distinct positions). Returns the number
    /// of cycles closed (0 or 1), or `None` when a degree slot is occupied.
    fn apply_arc(&mut self, tail: usize, head: usize) -> Option<u32> {
        debug_assert_ne!(tail, head);
        if !self.out_free(tail) || !self.in_free(head) {
            return None;
        }
        match (self.status[tail], self.status[head]) {
            (ST_UNTOUCHED, ST_UNTOUCHED) => {
                self.status[tail] = ST_NEEDS_IN;
                self.partner[tail] = head as u8;
                self.status[head] = ST_NEEDS_OUT;
                Some(0)
            }
            (ST_UNTOUCHED, ST_NEEDS_IN) => {
                let end = self.partner[head];
                self.status[head] = ST_DONE;
                self.partner[head] = NO_PARTNER;
                self.status[tail] = ST_NEEDS_IN;
                self.partner[tail] = end;
                Some(0)
            }
            (ST_NEEDS_OUT, ST_UNTOUCHED) => {
                let start = self.start_of_path_ending_at(tail).expect("dangling end");
                self.partner[start] = head as u8;
                self.status[tail] = ST_DONE;
                self.status[head] = ST_NEEDS_OUT;
                Some(0)
            }
            (ST_NEEDS_OUT, ST_NEEDS_IN) => {
                if self.partner[head] as usize == tail {
                    // the arc closes the path head -> ... -> tail into a cycle
                    self.status[head] = ST_DONE;
                    self.partner[head] = NO_PARTNER;
                    self.status[tail] = ST_DONE;
                    Some(1)
                } else {
                    let start = self.start_of_path_ending_at(tail).expect("dangling end");
                    let end = self.partner[head];
                    self.partner[start] = end;
                    self.status[head] = ST_DONE;
                    self.partner[head] = NO_PARTNER;
                    self.status[tail] = ST_DONE;
                    Some(0)
                }
            }
            _ => unreachable!(),
        }
    }

    /// Takes the self-loop at position `p` (must be untouched): the vertex
    /// becomes a 1-cycle.
    fn apply_loop(&mut self, p: usize) -> Option<u32> {
        if self.status[p] != ST_UNTOUCHED {
            return None;
        }
        self.status[p] = ST_DONE;
        Some(1)
    }
}

/// What the DP accumulates per partial cover.
pub trait CycleSemiring {
    type Value: Clone;
    fn one(&self) -> Self::Value;
    fn add_assign(&self, a: &mut Self::Value, b: Self::Value);
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn close_cycle(&self, a: &mut Self::Value);
    fn take_arc(&self, a: &mut Self::Value, class: usize);
    /// Histogram cell bound used by the budget formula; folded rings are 1.
    fn cell_bound(&self, _n: usize, _classes: &EdgeClassMap) -> u128 {
        1
    }
}

/// Full histogram: cycle count plus per-class arc counts, exact big counts.
pub struct HistogramRing {
    pub n_classes: usize,
}

pub type HistKey = (u32, Vec<u16>);

impl CycleSemiring for HistogramRing {
    type Value = BTreeMap<HistKey, BigUint>;

    fn one(&self) -> Self::Value {
        BTreeMap::from([((0u32, vec![0u16; self.n_classes]), BigUint::one())])
    }

    fn add_assign(&self, a: &mut Self::Value, b: Self::Value) {
        for (k, v) in b {
            *a.entry(k).or_insert_with(BigUint::zero) += v;
        }
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        let mut out = BTreeMap::new();
        for ((ka, ya), ca) in a {
            for ((kb, yb), cb) in b {
                let y: Vec<u16> = ya.iter().zip(yb).map(|(x, y)| x + y).collect();
                *out.entry((ka + kb, y)).or_insert_with(BigUint::zero) += ca * cb;
            }
        }
        out
    }

    fn close_cycle(&self, a: &mut Self::Value) {
        *a = a.iter().map(|((k, y), c)| ((k + 1, y.clone()), c.clone())).collect();
    }

    fn take_arc(&self, a: &mut Self::Value, class: usize) {
        *a = a
            .iter()
            .map(|((k, y), c)| {
                let mut y = y.clone();
                y[class] += 1;
                ((*k, y), c.clone())
            })
            .collect();
    }

    fn cell_bound(&self, n: usize, classes: &EdgeClassMap) -> u128 {
        let mut cells: u128 = 1;
        for i in 0..classes.class_count() {
            let range = classes.arcs_in_class(i).min(n) as u128 + 1;
            cells = cells.saturating_mul(range);
        }
        cells.saturating_mul(n as u128 + 1)
    }
}

/// Sign- and weight-folded ring: the root value is
/// `sum over covers of (-1)^k * prod(class values)`.
pub struct SignedRing {
    pub values: Vec<Rational>,
}

impl CycleSemiring for SignedRing {
    type Value = Rational;

    fn one(&self) -> Self::Value {
        Rational::one()
    }

    fn add_assign(&self, a: &mut Self::Value, b: Self::Value) {
        *a += b;
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        a * b
    }

    fn close_cycle(&self, a: &mut Self::Value) {
        *a = -a.clone();
    }

    fn take_arc(&self, a: &mut Self::Value, class: usize) {
        let v = &self.values[class];
        if !v.is_one() {
            *a *= v;
        }
    }
}

/// Polynomial-folded ring: coefficients indexed by the number of arcs taken
/// in the designated loop class; other classes fold into the coefficients.
/// The root value is `sum over covers of (-1)^k * prod(concrete values) *
/// x^(loop-class arcs)`.
pub struct PolyRing {
    pub values: Vec<Rational>,
    pub x_class: usize,
    pub degree_cap: usize,
}

impl CycleSemiring for PolyRing {
    type Value = Vec<Rational>;

    fn one(&self) -> Self::Value {
        let mut v = vec![Rational::zero(); self.degree_cap + 1];
        v[0] = Rational::one();
        v
    }

    fn add_assign(&self, a: &mut Self::Value, b: Self::Value) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        let mut out = vec![Rational::zero(); self.degree_cap + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                debug_assert!(i + j <= self.degree_cap, "loop-class degree overflow");
                out[i + j] += x * y;
            }
        }
        out
    }

    fn close_cycle(&self, a: &mut Self::Value) {
        for x in a.iter_mut() {
            *x = -x.clone();
        }
    }

    fn take_arc(&self, a: &mut Self::Value, class: usize) {
        if class == self.x_class {
            debug_assert!(a.last().map_or(true, Rational::is_zero));
            a.rotate_right(1);
            a[0] = Rational::zero();
        } else {
            let v = &self.values[class];
            if !v.is_one() {
                for x in a.iter_mut() {
                    if !x.is_zero() {
                        *x *= v;
                    }
                }
            }
        }
    }
}

/// The cycle-cover histogram: exact counts indexed by cycle count `k` and by
/// the vector `y` of per-class arc counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCoverHistogram {
    pub n: usize,
    pub n_classes: usize,
    pub entries: BTreeMap<HistKey, BigUint>,
}

#[derive(Serialize)]
struct HistEntryJson {
    k: u32,
    y: Vec<u16>,
    count: String,
}

#[derive(Serialize)]
struct HistJson {
    n: usize,
    entries: Vec<HistEntryJson>,
}

impl CycleCoverHistogram {
    /// Structural invariants: every cover has exactly `n` arcs and between 1
    /// and `n` cycles (nonempty graphs).
    pub fn check(&self) -> Result<()> {
        for ((k, y), _) in &self.entries {
            let total: usize = y.iter().map(|&c| c as usize).sum();
            if total != self.n {
                return Err(Error::Invalid(format!(
                    "histogram entry with {total} arcs on {} vertices",
                    self.n
                )));
            }
            if self.n > 0 && (*k == 0 || *k as usize > self.n) {
                return Err(Error::Invalid(format!("cycle count {k} out of range")));
            }
        }
        Ok(())
    }

    pub fn total_covers(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn to_json(&self) -> String {
        let doc = HistJson {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|((k, y), c)| HistEntryJson {
                    k: *k,
                    y: y.clone(),
                    count: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("histogram serializes")
    }
}

/// The estimate guarded by the budget: `(w+1)! * 4^(w+1) * cells`.
fn budget_estimate(width: usize, cells: u128) -> u128 {
    let mut est: u128 = 1;
    for i in 1..=width as u128 + 1 {
        est = est.saturating_mul(i);
    }
    est = est.saturating_mul(4u128.saturating_pow(width as u32 + 1));
    est.saturating_mul(cells)
}

fn check_budget(
    width: usize,
    n_classes: usize,
    cells: u128,
    budget: u128,
) -> Result<()> {
    let estimate = budget_estimate(width, cells);
    if estimate > budget || width + 1 > MAX_BAG {
        return Err(Error::BudgetExceeded {
            width,
            classes: n_classes,
            estimate,
            budget,
        });
    }
    Ok(())
}

type Table<V> = HashMap<u128, V>;

/// Runs the DP; returns the root accumulation over all cycle covers, or
/// `None` when the graph has no cycle cover.
pub fn run_dp<R: CycleSemiring>(
    ring: &R,
    classes: &EdgeClassMap,
    nice: &NiceTreeDecomposition,
) -> Result<Option<R::Value>> {
    let order = nice.postorder();
    let mut tables: Vec<Option<Table<R::Value>>> = (0..nice.nodes.len()).map(|_| None).collect();

    for &idx in &order {
        let node = &nice.nodes[idx];
        let bag = &node.bag;
        if bag.len() > MAX_BAG {
            return Err(Error::BudgetExceeded {
                width: bag.len() - 1,
                classes: classes.class_count(),
                estimate: u128::MAX,
                budget: effective_budget(),
            });
        }
        let table: Table<R::Value> = match &node.kind {
            NiceKind::Leaf => {
                let mut t = Table::default();
                t.insert(BagState::empty().pack(), ring.one());
                t
            }
            NiceKind::Introduce { vertex, child } => {
                let child_bag_len = nice.nodes[*child].bag.len();
                let p = bag.binary_search(vertex).expect("introduced vertex in bag");
                let child_table = tables[*child].take().expect("child computed");
                let mut t = Table::with_capacity(child_table.len());
                for (key, val) in child_table {
                    let st = BagState::unpack(key, child_bag_len).insert_at(p);
                    t.insert(st.pack(), val);
                }
                t
            }
            NiceKind::Forget { vertex, child } => {
                let child_bag = &nice.nodes[*child].bag;
                let p = child_bag.binary_search(vertex).expect("vertex in child bag");
                // Arcs between the forgotten vertex and its bag partners are
                // decided here, exactly once over the whole tree.
                let mut in_cands: Vec<(usize, usize)> = Vec::new(); // (position, class)
                let mut out_cands: Vec<(usize, usize)> = Vec::new();
                for (q, &w) in child_bag.iter().enumerate() {
                    if q == p {
                        continue;
                    }
                    if let Some(c) = classes.class_of(w, *vertex) {
                        in_cands.push((q, c));
                    }
                    if let Some(c) = classes.class_of(*vertex, w) {
                        out_cands.push((q, c));
                    }
                }
                let loop_class = classes.class_of(*vertex, *vertex);

                let child_table = tables[*child].take().expect("child computed");
                let mut t: Table<R::Value> = Table::default();
                for (key, val) in child_table {
                    let st = BagState::unpack(key, child_bag.len());
                    // self-loop option
                    if let Some(lc) = loop_class {
                        let mut s2 = st.clone();
                        if s2.apply_loop(p).is_some() {
                            let mut v2 = val.clone();
                            ring.take_arc(&mut v2, lc);
                            ring.close_cycle(&mut v2);
                            let out = s2.remove_at(p);
                            merge(ring, &mut t, out.pack(), v2);
                        }
                    }
                    // in/out arc combinations (None = not taken)
                    for in_choice in std::iter::once(None).chain(in_cands.iter().map(Some)) {
                        for out_choice in std::iter::once(None).chain(out_cands.iter().map(Some)) {
                            let mut s2 = st.clone();
                            let mut closed = 0u32;
                            let mut ok = true;
                            let mut v2 = val.clone();
                            if let Some(&(q, c)) = in_choice {
                                match s2.apply_arc(q, p) {
                                    Some(cl) => {
                                        closed += cl;
                                        ring.take_arc(&mut v2, c);
                                    }
                                    None => ok = false,
                                }
                            }
                            if ok {
                                if let Some(&(q, c)) = out_choice {
                                    match s2.apply_arc(p, q) {
                                        Some(cl) => {
                                            closed += cl;
                                            ring.take_arc(&mut v2, c);
                                        }
                                        None => ok = false,
                                    }
                                }
                            }
                            if !ok || s2.status[p] != ST_DONE {
                                continue;
                            }
                            for _ in 0..closed {
                                ring.close_cycle(&mut v2);
                            }
                            let out = s2.remove_at(p);
                            merge(ring, &mut t, out.pack(), v2);
                        }
                    }
                }
                t
            }
            NiceKind::Join { left, right } => {
                let bag_len = bag.len();
                let lt = tables[*left].take().expect("left computed");
                let rt = tables[*right].take().expect("right computed");
                let mut t: Table<R::Value> = Table::default();
                for (lk, lv) in &lt {
                    let ls = BagState::unpack(*lk, bag_len);
                    for (rk, rv) in &rt {
                        let rs = BagState::unpack(*rk, bag_len);
                        if let Some((merged, closed)) = merge_states(&ls, &rs) {
                            let mut v = ring.mul(lv, rv);
                            for _ in 0..closed {
                                ring.close_cycle(&mut v);
                            }
                            merge(ring, &mut t, merged.pack(), v);
                        }
                    }
                }
                t
            }
        };
        tables[idx] = Some(table);
    }

    let root_table = tables[nice.root].take().expect("root computed");
    debug_assert!(root_table.len() <= 1);
    Ok(root_table
        .into_iter()
        .next()
        .map(|(_, v)| v))
}

fn merge<R: CycleSemiring>(ring: &R, t: &mut Table<R::Value>, key: u128, val: R::Value) {
    match t.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => ring.add_assign(e.get_mut(), val),
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(val);
        }
    }
}

/// Combines two partial solutions over the same bag whose arc sets are
/// disjoint. Per vertex, each degree slot may be filled by at most one side;
/// open paths concatenate across sides and may close cycles.
fn merge_states(l: &BagState, r: &BagState) -> Option<(BagState, u32)> {
    let n = l.status.len();
    let filled_in = |st: &BagState, i: usize| matches!(st.status[i], ST_DONE | ST_NEEDS_OUT);
    let filled_out = |st: &BagState, i: usize| matches!(st.status[i], ST_DONE | ST_NEEDS_IN);
    for i in 0..n {
        if filled_in(l, i) && filled_in(r, i) {
            return None;
        }
        if filled_out(l, i) && filled_out(r, i) {
            return None;
        }
    }
    // Pairs as (start, end) per side.
    let side_pairs = |st: &BagState| -> Vec<(usize, usize)> {
        (0..n)
            .filter(|&i| st.status[i] == ST_NEEDS_IN)
            .map(|i| (i, st.partner[i] as usize))
            .collect()
    };
    let lp = side_pairs(l);
    let rp = side_pairs(r);
    let mut l_start: Vec<Option<usize>> = vec![None; n];
    let mut r_start: Vec<Option<usize>> = vec![None; n];
    let mut l_end: Vec<bool> = vec![false; n];
    let mut r_end: Vec<bool> = vec![false; n];
    for &(s, e) in &lp {
        l_start[s] = Some(e);
        l_end[e] = true;
    }
    for &(s, e) in &rp {
        r_start[s] = Some(e);
        r_end[e] = true;
    }

    let mut visited_l = vec![false; n];
    let mut visited_r = vec![false; n];
    let mut new_pairs: Vec<(usize, usize)> = Vec::new();
    let mut closed = 0u32;

    // Chains: heads are pairs whose start is not the end of an
    // opposite-side pair. Walk alternating sides until no continuation.
    let walk = |s0: usize, left_side: bool,
                    visited_l: &mut Vec<bool>,
                    visited_r: &mut Vec<bool>|
     -> (usize, usize) {
        let mut side_left = left_side;
        let mut cur = s0;
        loop {
            let (vis, start) = if side_left {
                (&mut *visited_l, &l_start)
            } else {
                (&mut *visited_r, &r_start)
            };
            vis[cur] = true;
            let e = start[cur].expect("walk follows existing pairs");
            let next_exists = if side_left {
                r_start[e].is_some() && !visited_r[e]
            } else {
                l_start[e].is_some() && !visited_l[e]
            };
            if next_exists {
                cur = e;
                side_left = !side_left;
            } else {
                return (s0, e);
            }
        }
    };

    for &(s, _) in &lp {
        if !r_end[s] {
            let (a, b) = walk(s, true, &mut visited_l, &mut visited_r);
            new_pairs.push((a, b));
        }
    }
    for &(s, _) in &rp {
        if !l_end[s] {
            let (a, b) = walk(s, false, &mut visited_l, &mut visited_r);
            new_pairs.push((a, b));
        }
    }
    // Anything unvisited sits on an alternating cycle.
    for &(s, _) in &lp {
        if !visited_l[s] {
            // traverse the cycle, marking both sides
            let mut cur = s;
            let mut side_left = true;
            loop {
                let e = if side_left {
                    visited_l[cur] = true;
                    l_start[cur].unwrap()
                } else {
                    visited_r[cur] = true;
                    r_start[cur].unwrap()
                };
                cur = e;
                side_left = !side_left;
                if cur == s && side_left {
                    break;
                }
            }
            closed += 1;
        }
    }

    let mut out = BagState {
        status: vec![ST_UNTOUCHED; n],
        partner: vec![NO_PARTNER; n],
    };
    for i in 0..n {
        let fin = filled_in(l, i) || filled_in(r, i);
        let fout = filled_out(l, i) || filled_out(r, i);
        out.status[i] = match (fin, fout) {
            (true, true) => ST_DONE,
            (true, false) => ST_NEEDS_OUT,
            (false, true) => ST_NEEDS_IN,
            (false, false) => ST_UNTOUCHED,
        };
    }
    for &(s, e) in &new_pairs {
        debug_assert_eq!(out.status[s], ST_NEEDS_IN);
        debug_assert_eq!(out.status[e], ST_NEEDS_OUT);
        out.partner[s] = e as u8;
    }
    Some((out, closed))
}

fn validate_inputs(
    g: &WeightedDigraph,
    classes: &EdgeClassMap,
    nice: &NiceTreeDecomposition,
) -> Result<()> {
    if nice.n_graph != g.vertex_count() {
        return Err(Error::Invalid(format!(
            "decomposition is for {} vertices, graph has {}",
            nice.n_graph,
            g.vertex_count()
        )));
    }
    nice.check()?;
    nice.as_tree_decomposition()
        .validate_or_err(&g.undirected_edges())?;
    classes.check_against(g)?;
    Ok(())
}

/// The number of cycle covers of `g` for every (cycle count, per-class arc
/// counts) cell, computed over the nice decomposition.
pub fn cycle_cover_histogram(
    g: &WeightedDigraph,
    classes: &EdgeClassMap,
    nice: &NiceTreeDecomposition,
) -> Result<CycleCoverHistogram> {
    cycle_cover_histogram_budgeted(g, classes, nice, effective_budget())
}

/// Same with an explicit state budget.
pub fn cycle_cover_histogram_budgeted(
    g: &WeightedDigraph,
    classes: &EdgeClassMap,
    nice: &NiceTreeDecomposition,
    budget: u128,
) -> Result<CycleCoverHistogram> {
    validate_inputs(g, classes, nice)?;
    let ring = HistogramRing {
        n_classes: classes.class_count(),
    };
    check_budget(
        nice.width(),
        classes.class_count(),
        ring.cell_bound(g.vertex_count(), classes),
        budget,
    )?;
    let value = run_dp(&ring, classes, nice)?;
    let hist = CycleCoverHistogram {
        n: g.vertex_count(),
        n_classes: classes.class_count(),
        entries: value.unwrap_or_default(),
    };
    hist.check()?;
    Ok(hist)
}

/// `sum over entries of (-1)^(n+k) * count * prod(class value ^ y_i)`.
/// Requires every class value to be concrete.
pub fn signed_sum(hist: &CycleCoverHistogram, classes: &EdgeClassMap) -> Result<Rational> {
    if classes.x_class().is_some() {
        return Err(Error::SymbolicClass);
    }
    let mut total = Rational::zero();
    for ((k, y), count) in &hist.entries {
        let mut term = Rational::from_integer(num_bigint::BigInt::from(count.clone()));
        if (hist.n + *k as usize) % 2 == 1 {
            term = -term;
        }
        for (i, &yi) in y.iter().enumerate() {
            term *= pow_rational(classes.value(i), yi as usize);
        }
        total += term;
    }
    Ok(total)
}

/// Sign-folded run: returns `sum over covers of (-1)^k * prod(values)`;
/// multiply by `(-1)^n` for the determinant.
pub fn run_signed(
    g: &WeightedDigraph,
    classes: &EdgeClassMap,
    nice: &NiceTreeDecomposition,
) -> Result<Rational> {
    validate_inputs(g, classes, nice)?;
    if classes.x_class().is_some() {
        return Err(Error::SymbolicClass);
    }
    check_budget(nice.width(), classes.class_count(), 1, effective_budget())?;
    let ring = SignedRing {
        values: classes.values().to_vec(),
    };
    Ok(run_dp(&ring, classes, nice)?.unwrap_or_else(Rational::zero))
}

/// Polynomial-folded run in the designated loop class: coefficient `r` of
/// the result is `sum over covers with r loop-class arcs of
/// (-1)^k * prod(concrete values)`.
pub fn run_poly(
    g: &WeightedDigraph,
    classes: &EdgeClassMap,
    nice: &NiceTreeDecomposition,
    degree_cap: usize,
) -> Result<Vec<Rational>> {
    validate_inputs(g, classes, nice)?;
    let x_class = classes.x_class().ok_or(Error::SymbolicClass)?;
    check_budget(nice.width(), classes.class_count(), 1, effective_budget())?;
    let ring = PolyRing {
        values: classes.values().to_vec(),
        x_class,
        degree_cap,
    };
    Ok(run_dp(&ring, classes, nice)?
        .unwrap_or_else(|| vec![Rational::zero(); degree_cap + 1]))
}

/// Convenience: histogram of a plain weighted digraph with classes derived
/// from its distinct weights and a fresh min-fill decomposition.
pub fn histogram_auto(g: &WeightedDigraph) -> Result<(CycleCoverHistogram, EdgeClassMap)> {
    let classes = EdgeClassMap::from_weights(g);
    let td = crate::treedecomp::decompose(
        g.vertex_count(),
        &g.undirected_edges(),
        crate::treedecomp::Strategy::MinFill,
    )?;
    let nice = crate::nice::make_nice(&td)?;
    let hist = cycle_cover_histogram(g, &classes, &nice)?;
    Ok((hist, classes))
}

pub fn format_signed_sum(x: &Rational) -> String {
    format_rational(x)
}
