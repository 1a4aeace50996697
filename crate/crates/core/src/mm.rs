//! Matrix Market coordinate files, extended with a `rational` field whose
//! entries are written `num/den`. `integer` is accepted as-is; `real` is
//! accepted only when the token is an exact decimal and is parsed as the
//! rational it denotes.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::{format_rational, parse_rational, Rational};

pub fn parse_matrix_market(text: &str) -> Result<RationalMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix market file".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() < 5 || !head[0].eq_ignore_ascii_case("%%MatrixMarket") {
        return Err(Error::Parse("missing %%MatrixMarket header".into()));
    }
    if !head[1].eq_ignore_ascii_case("matrix") || !head[2].eq_ignore_ascii_case("coordinate") {
        return Err(Error::Parse(
            "only `matrix coordinate` files are supported".into(),
        ));
    }
    let field = head[3].to_ascii_lowercase();
    match field.as_str() {
        "rational" | "integer" | "real" => {}
        other => {
            return Err(Error::Parse(format!("unsupported field `{other}`")));
        }
    }
    let symmetry = head[4].to_ascii_lowercase();
    let symmetric = match symmetry.as_str() {
        "general" => false,
        "symmetric" => true,
        other => {
            return Err(Error::Parse(format!("unsupported symmetry `{other}`")));
        }
    };

    let mut size_line = None;
    for (no, line) in lines.by_ref() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        size_line = Some((no, t.to_string()));
        break;
    }
    let (no, size) = size_line.ok_or_else(|| Error::Parse("missing size line".into()))?;
    let parts: Vec<&str> = size.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "line {}: size line needs `rows cols nnz`",
            no + 1
        )));
    }
    let rows: usize = parts[0]
        .parse()
        .map_err(|_| Error::Parse(format!("line {}: bad row count", no + 1)))?;
    let cols: usize = parts[1]
        .parse()
        .map_err(|_| Error::Parse(format!("line {}: bad col count", no + 1)))?;
    let nnz: usize = parts[2]
        .parse()
        .map_err(|_| Error::Parse(format!("line {}: bad nnz", no + 1)))?;

    let mut m = RationalMatrix::zero(rows, cols);
    let mut seen = std::collections::BTreeSet::new();
    let mut count = 0usize;
    for (no, line) in lines {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "line {}: entry needs `row col value`",
                no + 1
            )));
        }
        let i: usize = parts[0]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad row index", no + 1)))?;
        let j: usize = parts[1]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad col index", no + 1)))?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(Error::Parse(format!(
                "line {}: index ({i},{j}) out of range (1-based)",
                no + 1
            )));
        }
        let v = parse_rational(parts[2])
            .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
        if !seen.insert((i, j)) {
            return Err(Error::Parse(format!(
                "line {}: duplicate entry ({i},{j})",
                no + 1
            )));
        }
        count += 1;
        if v.is_zero() {
            continue; // explicit zeros are dropped
        }
        m.set(i - 1, j - 1, v.clone())?;
        if symmetric && i != j {
            m.set(j - 1, i - 1, v)?;
        }
    }
    if count != nnz {
        return Err(Error::Parse(format!(
            "entry count {count} does not match declared nnz {nnz}"
        )));
    }
    Ok(m)
}

/// Writes the `rational general` form; entries appear as `num/den` in
/// row-major order with 1-based indices.
pub fn write_matrix_market(m: &RationalMatrix) -> String {
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix coordinate rational general\n");
    out.push_str(&format!("{} {} {}\n", m.rows(), m.cols(), m.nnz()));
    for (i, j, v) in m.iter() {
        out.push_str(&format!("{} {} {}/{}\n", i + 1, j + 1, v.numer(), v.denom()));
    }
    out
}

/// Parses a column vector stored as an `m x 1` coordinate file.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    let m = parse_matrix_market(text)?;
    if m.cols() != 1 {
        return Err(Error::Parse(format!(
            "expected a column vector, found {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok((0..m.rows()).map(|i| m.get(i, 0)).collect())
}

pub fn format_entry(v: &Rational) -> String {
    format_rational(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn round_trip() {
        let mut m = RationalMatrix::zero(3, 2);
        m.set(0, 1, rat(2, 3)).unwrap();
        m.set(2, 0, rat_int(-4)).unwrap();
        let text = write_matrix_market(&m);
        let back = parse_matrix_market(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn parses_integer_and_exact_real() {
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 0.5\n2 2 -3\n";
        let m = parse_matrix_market(text).unwrap();
        assert_eq!(m.get(0, 0), rat(1, 2));
        assert_eq!(m.get(1, 1), rat_int(-3));
    }

    #[test]
    fn rejects_inexact_real() {
        let text = "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 inf\n";
        assert!(parse_matrix_market(text).is_err());
    }

    #[test]
    fn symmetric_expansion() {
        let text = "%%MatrixMarket matrix coordinate rational symmetric\n2 2 2\n1 1 1\n2 1 5/2\n";
        let m = parse_matrix_market(text).unwrap();
        assert_eq!(m.get(0, 1), rat(5, 2));
        assert_eq!(m.get(1, 0), rat(5, 2));
    }

    #[test]
    fn rejects_duplicates_and_bad_counts() {
        let dup = "%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 1\n1 1 2\n";
        assert!(parse_matrix_market(dup).is_err());
        let bad = "%%MatrixMarket matrix coordinate integer general\n2 2 3\n1 1 1\n";
        assert!(parse_matrix_market(bad).is_err());
    }

    #[test]
    fn drops_explicit_zeros() {
        let text = "%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 0\n2 2 7\n";
        let m = parse_matrix_market(text).unwrap();
        assert_eq!(m.nnz(), 1);
    }
}
