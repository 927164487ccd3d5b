//! Text formats for matrices, block sets, and schemes.
//!
//! Matrix files are human-diffable: a one-line header
//! `minor-designs matrix v=<n> symmetry=<tag>` followed by n rows of n
//! scalar tokens. Block files carry the header `v=<n> k=<k|mixed>` and
//! one block per line as sorted 1-based indices. Schemes serialize to
//! JSON with one digit string per row of the class table.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::designs::BlockSet;
use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Symmetry};
use crate::scalar::{parse_scalar, render_scalar};
use crate::schemes::AssociationScheme;

pub fn matrix_to_string(m: &ExactMatrix) -> String {
    let n = m.order();
    let mut out = format!("minor-designs matrix v={n} symmetry={}\n", m.symmetry());
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| render_scalar(m.at(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn matrix_from_str(text: &str) -> Result<ExactMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::parse("empty matrix file"))?;
    let mut v: Option<usize> = None;
    let mut symmetry = Symmetry::None;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("minor-designs") || fields.next() != Some("matrix") {
        return Err(Error::parse("matrix header must start with `minor-designs matrix`"));
    }
    for field in fields {
        if let Some(value) = field.strip_prefix("v=") {
            v = Some(
                value
                    .parse()
                    .map_err(|_| Error::parse(format!("bad order `{value}`")))?,
            );
        } else if let Some(value) = field.strip_prefix("symmetry=") {
            symmetry = Symmetry::from_tag(value)?;
        } else {
            return Err(Error::parse(format!("unknown header field `{field}`")));
        }
    }
    let n = v.ok_or_else(|| Error::parse("matrix header is missing v="))?;
    let mut entries = Vec::with_capacity(n * n);
    for (row, line) in lines.enumerate() {
        if row >= n {
            return Err(Error::parse("too many matrix rows"));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(Error::parse(format!(
                "row {} has {} entries, expected {n}",
                row + 1,
                tokens.len()
            )));
        }
        for token in tokens {
            entries.push(parse_scalar(token)?);
        }
    }
    if entries.len() != n * n {
        return Err(Error::parse(format!(
            "expected {n} rows, found {}",
            entries.len() / n
        )));
    }
    // The declared symmetry is a claim; loading checks it.
    ExactMatrix::new(n, entries)?.with_symmetry(symmetry)
}

pub fn save_matrix(m: &ExactMatrix, path: &Path) -> Result<()> {
    std::fs::write(path, matrix_to_string(m))?;
    Ok(())
}

pub fn load_matrix(path: &Path) -> Result<ExactMatrix> {
    let text = std::fs::read_to_string(path)?;
    matrix_from_str(&text)
}

pub fn blocks_to_string(bs: &BlockSet) -> String {
    let k_field = match bs.uniform_k() {
        Some(k) => k.to_string(),
        None => "mixed".to_string(),
    };
    let mut out = format!("v={} k={}\n", bs.v(), k_field);
    for block in bs.iter() {
        let line: Vec<String> = block.iter().map(|&p| (p + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn blocks_from_str(text: &str) -> Result<BlockSet> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::parse("empty block file"))?;
    let mut v: Option<usize> = None;
    let mut k: Option<usize> = None;
    for field in header.split_whitespace() {
        if let Some(value) = field.strip_prefix("v=") {
            v = Some(
                value
                    .parse()
                    .map_err(|_| Error::parse(format!("bad point count `{value}`")))?,
            );
        } else if let Some(value) = field.strip_prefix("k=") {
            if value != "mixed" {
                k = Some(
                    value
                        .parse()
                        .map_err(|_| Error::parse(format!("bad block size `{value}`")))?,
                );
            }
        } else {
            return Err(Error::parse(format!("unknown header field `{field}`")));
        }
    }
    let v = v.ok_or_else(|| Error::parse("block header is missing v="))?;
    let mut blocks = Vec::new();
    for line in lines {
        let mut block = Vec::new();
        for token in line.split_whitespace() {
            let point: usize = token
                .parse()
                .map_err(|_| Error::parse(format!("bad point `{token}`")))?;
            if point == 0 {
                return Err(Error::parse("points are 1-based"));
            }
            block.push(point - 1);
        }
        blocks.push(block);
    }
    BlockSet::from_blocks(v, k, &blocks)
}

pub fn save_blocks(bs: &BlockSet, path: &Path) -> Result<()> {
    std::fs::write(path, blocks_to_string(bs))?;
    Ok(())
}

pub fn load_blocks(path: &Path) -> Result<BlockSet> {
    let text = std::fs::read_to_string(path)?;
    blocks_from_str(&text)
}

#[derive(Serialize, Deserialize)]
struct SchemeFile {
    v: usize,
    labels: Vec<String>,
    /// One digit string per point: the class of each ordered pair.
    rows: Vec<String>,
}

pub fn scheme_to_json(scheme: &AssociationScheme) -> Result<String> {
    if scheme.classes() > 9 {
        return Err(Error::invalid("scheme files support at most 9 classes"));
    }
    let v = scheme.points();
    let table = scheme.class_table();
    let rows = (0..v)
        .map(|x| {
            (0..v)
                .map(|y| char::from(b'0' + table[x * v + y]))
                .collect::<String>()
        })
        .collect();
    let file = SchemeFile {
        v,
        labels: scheme.labels().to_vec(),
        rows,
    };
    serde_json::to_string_pretty(&file).map_err(|e| Error::parse(e.to_string()))
}

pub fn scheme_from_json(text: &str) -> Result<AssociationScheme> {
    let file: SchemeFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("scheme json: {e}")))?;
    let v = file.v;
    if file.rows.len() != v {
        return Err(Error::parse("scheme row count mismatch"));
    }
    let mut class = Vec::with_capacity(v * v);
    for row in &file.rows {
        if row.len() != v {
            return Err(Error::parse("scheme row length mismatch"));
        }
        for ch in row.chars() {
            let digit = ch
                .to_digit(10)
                .ok_or_else(|| Error::parse(format!("bad class digit `{ch}`")))?;
            class.push(digit as u8);
        }
    }
    let scheme = AssociationScheme::from_class_table(v, class, file.labels)?;
    let report = scheme.validate();
    if !report.ok() {
        return Err(Error::validator(format!(
            "loaded scheme fails the axioms: {}",
            report.violations.join("; ")
        )));
    }
    Ok(scheme)
}

pub fn save_scheme(scheme: &AssociationScheme, path: &Path) -> Result<()> {
    std::fs::write(path, scheme_to_json(scheme)?)?;
    Ok(())
}

pub fn load_scheme(path: &Path) -> Result<AssociationScheme> {
    let text = std::fs::read_to_string(path)?;
    scheme_from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn matrix_round_trip() {
        let m = ExactMatrix::from_fn(3, |i, j| {
            if i == j {
                Scalar::zero()
            } else if i < j {
                Scalar::i()
            } else {
                -Scalar::i()
            }
        })
        .with_symmetry(Symmetry::Hermitian)
        .unwrap();
        let text = matrix_to_string(&m);
        let back = matrix_from_str(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.symmetry(), Symmetry::Hermitian);
    }

    #[test]
    fn wrong_symmetry_claim_is_rejected() {
        let text = "minor-designs matrix v=2 symmetry=symmetric\n0 1\n-1 0\n";
        let err = matrix_from_str(text).unwrap_err();
        assert!(matches!(err, Error::SymmetryMismatch { .. }));
        let text = "minor-designs matrix v=2 symmetry=skew-symmetric\n0 1\n-1 0\n";
        assert!(matrix_from_str(text).is_ok());
    }

    #[test]
    fn blocks_round_trip_uniform_and_mixed() {
        let uniform =
            BlockSet::from_blocks(6, Some(3), &[vec![0, 1, 2], vec![1, 3, 5]]).unwrap();
        let back = blocks_from_str(&blocks_to_string(&uniform)).unwrap();
        assert_eq!(back, uniform);
        let mixed =
            BlockSet::from_blocks(6, None, &[vec![0, 1], vec![1, 3, 5]]).unwrap();
        let text = blocks_to_string(&mixed);
        assert!(text.starts_with("v=6 k=mixed"));
        assert_eq!(blocks_from_str(&text).unwrap(), mixed);
        // Empty uniform set keeps its block size through the header.
        let empty = BlockSet::empty_uniform(5, 4);
        assert_eq!(blocks_from_str(&blocks_to_string(&empty)).unwrap(), empty);
    }

    #[test]
    fn scheme_round_trip() {
        let scheme = crate::schemes::hamming(3).unwrap();
        let json = scheme_to_json(&scheme).unwrap();
        let back = scheme_from_json(&json).unwrap();
        assert_eq!(back.points(), 8);
        assert_eq!(back.classes(), 3);
        assert_eq!(back.class_table(), scheme.class_table());
    }
}
