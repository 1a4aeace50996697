//! PACE-2017 graph and decomposition files, plus the weighted digraph
//! extension `p dgw`.
//!
//! `.gr`:  `c` comments, one `p tw <n> <m>` header, `u v` edge lines, 1-based.
//! `.td`:  `s td <#bags> <maxbagsize> <n>`, `b <id> <v...>` bag lines, then
//!         bag-tree edges `i j`, all 1-based.
//! `.dgw`: `p dgw <n> <m>` header, arc lines `u v <num>[/<den>]`, 1-based.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::rational::{parse_rational, Rational};
use crate::treedecomp::TreeDecomposition;

/// An undirected graph as plain edge list; what `.gr` files carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn parse_gr(text: &str) -> Result<GrGraph> {
    let mut n = None;
    let mut m_decl = 0usize;
    let mut edges = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("p ") {
            if n.is_some() {
                return Err(Error::Parse(format!("line {}: second p line", no + 1)));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "tw" {
                return Err(Error::Parse(format!(
                    "line {}: expected `p tw <n> <m>`",
                    no + 1
                )));
            }
            n = Some(
                parts[1]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: bad n", no + 1)))?,
            );
            m_decl = parts[2]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad m", no + 1)))?;
            continue;
        }
        let n_known = n.ok_or_else(|| Error::Parse(format!("line {}: edge before p line", no + 1)))?;
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("line {}: expected `u v`", no + 1)));
        }
        let u: usize = parts[0]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad vertex", no + 1)))?;
        let v: usize = parts[1]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad vertex", no + 1)))?;
        if u == 0 || v == 0 || u > n_known || v > n_known {
            return Err(Error::Parse(format!(
                "line {}: vertex out of range (1-based)",
                no + 1
            )));
        }
        edges.push((u - 1, v - 1));
    }
    let n = n.ok_or_else(|| Error::Parse("missing p line".into()))?;
    if edges.len() != m_decl {
        return Err(Error::Parse(format!(
            "edge count {} does not match declared m {}",
            edges.len(),
            m_decl
        )));
    }
    Ok(GrGraph { n, edges })
}

pub fn write_gr(g: &GrGraph) -> String {
    let mut out = format!("p tw {} {}\n", g.n, g.edges.len());
    for &(u, v) in &g.edges {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<BTreeSet<usize>>> = Vec::new();
    let mut tree_edges = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("s ") {
            if header.is_some() {
                return Err(Error::Parse(format!("line {}: second s line", no + 1)));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "td" {
                return Err(Error::Parse(format!(
                    "line {}: expected `s td <#bags> <maxbagsize> <n>`",
                    no + 1
                )));
            }
            let nb: usize = parts[1]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad bag count", no + 1)))?;
            let mb: usize = parts[2]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad max bag size", no + 1)))?;
            let n: usize = parts[3]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad n", no + 1)))?;
            header = Some((nb, mb, n));
            bags = vec![None; nb];
            continue;
        }
        let (nb, _, n) =
            header.ok_or_else(|| Error::Parse(format!("line {}: data before s line", no + 1)))?;
        if let Some(rest) = t.strip_prefix("b ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.is_empty() {
                return Err(Error::Parse(format!("line {}: empty bag line", no + 1)));
            }
            let id: usize = parts[0]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad bag id", no + 1)))?;
            if id == 0 || id > nb {
                return Err(Error::Parse(format!("line {}: bag id out of range", no + 1)));
            }
            let mut bag = BTreeSet::new();
            for p in &parts[1..] {
                let v: usize = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad bag vertex", no + 1)))?;
                if v == 0 || v > n {
                    return Err(Error::Parse(format!(
                        "line {}: bag vertex out of range",
                        no + 1
                    )));
                }
                bag.insert(v - 1);
            }
            if bags[id - 1].replace(bag).is_some() {
                return Err(Error::Parse(format!("line {}: duplicate bag {id}", no + 1)));
            }
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!(
                "line {}: expected bag tree edge `i j`",
                no + 1
            )));
        }
        let a: usize = parts[0]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad bag index", no + 1)))?;
        let b: usize = parts[1]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad bag index", no + 1)))?;
        if a == 0 || b == 0 || a > nb || b > nb {
            return Err(Error::Parse(format!(
                "line {}: bag index out of range",
                no + 1
            )));
        }
        tree_edges.push((a - 1, b - 1));
    }
    let (nb, mb, n) = header.ok_or_else(|| Error::Parse("missing s line".into()))?;
    let bags: Vec<BTreeSet<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Parse(format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    if let Some(oversize) = bags.iter().find(|b| b.len() > mb) {
        return Err(Error::Parse(format!(
            "bag {:?} exceeds declared max bag size {mb}",
            oversize
        )));
    }
    let _ = nb;
    Ok(TreeDecomposition {
        n_graph: n,
        bags,
        tree_edges,
    })
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let maxbag = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags.len(), maxbag, td.n_graph);
    for (i, bag) in td.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &(a, b) in &td.tree_edges {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

pub fn parse_dgw(text: &str) -> Result<WeightedDigraph> {
    let mut g: Option<WeightedDigraph> = None;
    let mut m_decl = 0usize;
    let mut m_seen = 0usize;
    for (no, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("p ") {
            if g.is_some() {
                return Err(Error::Parse(format!("line {}: second p line", no + 1)));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "dgw" {
                return Err(Error::Parse(format!(
                    "line {}: expected `p dgw <n> <m>`",
                    no + 1
                )));
            }
            let n: usize = parts[1]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad n", no + 1)))?;
            m_decl = parts[2]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad m", no + 1)))?;
            g = Some(WeightedDigraph::new(n));
            continue;
        }
        let gr = g
            .as_mut()
            .ok_or_else(|| Error::Parse(format!("line {}: arc before p line", no + 1)))?;
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "line {}: expected `u v <weight>`",
                no + 1
            )));
        }
        let u: usize = parts[0]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad vertex", no + 1)))?;
        let v: usize = parts[1]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad vertex", no + 1)))?;
        let w: Rational = parse_rational(parts[2])
            .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
        if u == 0 || v == 0 || u > gr.vertex_count() || v > gr.vertex_count() {
            return Err(Error::Parse(format!(
                "line {}: vertex out of range (1-based)",
                no + 1
            )));
        }
        gr.add_arc(u - 1, v - 1, w)
            .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
        m_seen += 1;
    }
    let g = g.ok_or_else(|| Error::Parse("missing p line".into()))?;
    if m_seen != m_decl {
        return Err(Error::Parse(format!(
            "arc count {m_seen} does not match declared m {m_decl}"
        )));
    }
    Ok(g)
}

pub fn write_dgw(g: &WeightedDigraph) -> String {
    let mut out = format!("p dgw {} {}\n", g.vertex_count(), g.arc_count());
    for (u, v, w) in g.arcs() {
        if num_traits::One::is_one(w.denom()) {
            out.push_str(&format!("{} {} {}\n", u + 1, v + 1, w.numer()));
        } else {
            out.push_str(&format!("{} {} {}/{}\n", u + 1, v + 1, w.numer(), w.denom()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn gr_round_trip() {
        let g = GrGraph {
            n: 4,
            edges: vec![(0, 1), (1, 2), (2, 3)],
        };
        let text = write_gr(&g);
        assert_eq!(text, "p tw 4 3\n1 2\n2 3\n3 4\n");
        assert_eq!(parse_gr(&text).unwrap(), g);
    }

    #[test]
    fn gr_accepts_comments() {
        let text = "c a comment\np tw 2 1\nc another\n1 2\n";
        assert_eq!(parse_gr(text).unwrap().edges, vec![(0, 1)]);
    }

    #[test]
    fn td_round_trip() {
        let td = TreeDecomposition {
            n_graph: 3,
            bags: vec![[0, 1].into_iter().collect(), [1, 2].into_iter().collect()],
            tree_edges: vec![(0, 1)],
        };
        let text = write_td(&td);
        assert_eq!(text, "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        assert_eq!(parse_td(&text).unwrap(), td);
    }

    #[test]
    fn dgw_round_trip_with_rational_weights() {
        let mut g = WeightedDigraph::new(3);
        g.add_arc(0, 1, rat_int(3)).unwrap();
        g.add_arc(2, 2, rat(-1, 2)).unwrap();
        let text = write_dgw(&g);
        assert_eq!(text, "p dgw 3 2\n1 2 3\n3 3 -1/2\n");
        assert_eq!(parse_dgw(&text).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_gr("p tw 2 1\n1 3\n").is_err());
        assert!(parse_td("s td 1 1 1\n").is_err()); // bag missing
        assert!(parse_dgw("p dgw 1 1\n1 1 0\n").is_err()); // zero weight
    }
}
