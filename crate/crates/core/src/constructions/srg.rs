//! Strongly regular graph catalog. Every entry is certified against its
//! advertised parameters by the defining identity
//! `A^2 = kappa*I + a*A + c*(J - I - A)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Fq;
use crate::matrix::{ExactMatrix, Symmetry};
use crate::scalar::Scalar;
use crate::subsets::binomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SrgName {
    /// Quadratic-residue graph on F_q, q = 1 mod 4.
    Paley { q: u64 },
    /// n x n grid, adjacent within a row or a column.
    Rook { n: usize },
    /// 2-subsets of [n], adjacent when intersecting.
    Triangular { n: usize },
    /// 2-subsets of [5], adjacent when disjoint.
    Petersen,
    /// Folded 5-cube on the even-weight words, adjacent at distance 4.
    Clebsch,
    /// Complement of the 27-line intersection graph.
    Schlafli,
    Complement(Box<SrgName>),
}

impl fmt::Display for SrgName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrgName::Paley { q } => write!(f, "paley({q})"),
            SrgName::Rook { n } => write!(f, "rook({n})"),
            SrgName::Triangular { n } => write!(f, "triangular({n})"),
            SrgName::Petersen => write!(f, "petersen"),
            SrgName::Clebsch => write!(f, "clebsch"),
            SrgName::Schlafli => write!(f, "schlafli"),
            SrgName::Complement(inner) => write!(f, "complement({inner})"),
        }
    }
}

impl SrgName {
    /// Parse names like `rook(4)`, `paley(9)`, `complement(rook(4))`.
    pub fn parse(text: &str) -> Result<SrgName> {
        let text = text.trim();
        let bad = || Error::UnknownName(format!("srg name `{text}`"));
        if let Some(rest) = text.strip_prefix("complement(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            return Ok(SrgName::Complement(Box::new(SrgName::parse(inner)?)));
        }
        match text {
            "petersen" => return Ok(SrgName::Petersen),
            "clebsch" => return Ok(SrgName::Clebsch),
            "schlafli" => return Ok(SrgName::Schlafli),
            _ => {}
        }
        let (head, rest) = text.split_once('(').ok_or_else(bad)?;
        let arg = rest.strip_suffix(')').ok_or_else(bad)?;
        let value: u64 = arg.trim().parse().map_err(|_| bad())?;
        match head {
            "paley" => Ok(SrgName::Paley { q: value }),
            "rook" => Ok(SrgName::Rook { n: value as usize }),
            "triangular" => Ok(SrgName::Triangular { n: value as usize }),
            _ => Err(bad()),
        }
    }

    /// Advertised parameters (v, kappa, a, c).
    pub fn parameters(&self) -> Result<(usize, i64, i64, i64)> {
        match self {
            SrgName::Paley { q } => {
                if q % 4 != 1 {
                    return Err(Error::invalid(format!(
                        "paley graph needs q = 1 mod 4, got {q}"
                    )));
                }
                let q = *q as i64;
                Ok((q as usize, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4))
            }
            SrgName::Rook { n } => {
                let n = *n as i64;
                if n < 2 {
                    return Err(Error::invalid("rook graph needs n >= 2"));
                }
                Ok(((n * n) as usize, 2 * (n - 1), n - 2, 2))
            }
            SrgName::Triangular { n } => {
                let v = binomial(*n, 2) as usize;
                let n = *n as i64;
                if n < 4 {
                    return Err(Error::invalid("triangular graph needs n >= 4"));
                }
                Ok((v, 2 * (n - 2), n - 2, 4))
            }
            SrgName::Petersen => Ok((10, 3, 0, 1)),
            SrgName::Clebsch => Ok((16, 5, 0, 2)),
            SrgName::Schlafli => Ok((27, 16, 10, 8)),
            SrgName::Complement(inner) => {
                let (v, k, a, c) = inner.parameters()?;
                let vi = v as i64;
                Ok((v, vi - k - 1, vi - 2 - 2 * k + c, vi - 2 * k + a))
            }
        }
    }
}

/// Build the named graph and certify it against its parameters.
pub fn srg_catalog(name: &SrgName) -> Result<ExactMatrix> {
    let a = build(name)?;
    let (v, kappa, lam, mu) = name.parameters()?;
    if a.order() != v {
        return Err(Error::validator(format!(
            "{name}: order {} != advertised {v}",
            a.order()
        )));
    }
    // A^2 = kappa*I + a*A + c*(J - I - A)
    let square = a.matmul(&a);
    let j = ExactMatrix::ones(v);
    let i = ExactMatrix::identity(v);
    let co = j.sub(&i).sub(&a);
    let expect = i
        .scale(&Scalar::from_int(kappa))
        .add(&a.scale(&Scalar::from_int(lam)))
        .add(&co.scale(&Scalar::from_int(mu)));
    if square != expect {
        return Err(Error::validator(format!(
            "{name}: A^2 != {kappa}I + {lam}A + {mu}(J-I-A)"
        )));
    }
    a.with_symmetry(Symmetry::Symmetric)
        .map_err(|e| Error::validator(format!("{name}: {e}")))
}

fn build(name: &SrgName) -> Result<ExactMatrix> {
    match name {
        SrgName::Paley { q } => {
            if q % 4 != 1 {
                return Err(Error::invalid(format!(
                    "paley graph needs q = 1 mod 4, got {q}"
                )));
            }
            let field = Fq::new(*q)?;
            Ok(ExactMatrix::from_int_fn(*q as usize, |i, j| {
                if i == j {
                    return 0;
                }
                let diff = field.sub(&field.element(i as u64), &field.element(j as u64));
                i64::from(field.is_nonzero_square(&diff))
            }))
        }
        SrgName::Rook { n } => Ok(ExactMatrix::from_int_fn(n * n, |x, y| {
            let (r1, c1) = (x / n, x % n);
            let (r2, c2) = (y / n, y % n);
            i64::from(x != y && (r1 == r2 || c1 == c2))
        })),
        SrgName::Triangular { n } => {
            let pairs = two_subsets(*n);
            Ok(adjacency_on_pairs(&pairs, |a, b| {
                a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
            }))
        }
        SrgName::Petersen => {
            let pairs = two_subsets(5);
            Ok(adjacency_on_pairs(&pairs, |a, b| {
                a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
            }))
        }
        SrgName::Clebsch => {
            // Even-weight length-5 words; distance 4 means the words agree
            // in exactly one coordinate, i.e. folded adjacency.
            let words: Vec<u32> = (0u32..32).filter(|w| w.count_ones() % 2 == 0).collect();
            Ok(ExactMatrix::from_int_fn(16, |i, j| {
                i64::from((words[i] ^ words[j]).count_ones() == 4)
            }))
        }
        SrgName::Schlafli => Ok(schlafli()),
        SrgName::Complement(inner) => {
            let a = build(inner)?;
            let v = a.order();
            Ok(ExactMatrix::from_fn(v, |i, j| {
                if i == j {
                    Scalar::zero()
                } else {
                    &Scalar::one() - a.at(i, j)
                }
            }))
        }
    }
}

fn two_subsets(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

fn adjacency_on_pairs(
    pairs: &[(usize, usize)],
    adjacent: impl Fn((usize, usize), (usize, usize)) -> bool,
) -> ExactMatrix {
    ExactMatrix::from_int_fn(pairs.len(), |i, j| {
        i64::from(i != j && adjacent(pairs[i], pairs[j]))
    })
}

/// Complement of the intersection graph of the 27 lines with the classical
/// double-six labels a_1..a_6, b_1..b_6, c_{ij}.
fn schlafli() -> ExactMatrix {
    #[derive(Clone, Copy, PartialEq)]
    enum Line {
        A(usize),
        B(usize),
        C(usize, usize),
    }
    let mut lines = Vec::with_capacity(27);
    for i in 0..6 {
        lines.push(Line::A(i));
    }
    for i in 0..6 {
        lines.push(Line::B(i));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            lines.push(Line::C(i, j));
        }
    }
    let meets = |x: Line, y: Line| -> bool {
        match (x, y) {
            (Line::A(_), Line::A(_)) | (Line::B(_), Line::B(_)) => false,
            (Line::A(i), Line::B(j)) | (Line::B(j), Line::A(i)) => i != j,
            (Line::A(i), Line::C(j, k))
            | (Line::C(j, k), Line::A(i))
            | (Line::B(i), Line::C(j, k))
            | (Line::C(j, k), Line::B(i)) => i == j || i == k,
            (Line::C(i, j), Line::C(k, l)) => i != k && i != l && j != k && j != l,
        }
    };
    ExactMatrix::from_int_fn(27, |x, y| i64::from(x != y && !meets(lines[x], lines[y])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_parameters() {
        let cases = [
            ("rook(4)", (16, 6, 2, 2)),
            ("rook(5)", (25, 8, 3, 2)),
            ("triangular(6)", (15, 8, 4, 4)),
            ("triangular(7)", (21, 10, 5, 4)),
            ("petersen", (10, 3, 0, 1)),
            ("clebsch", (16, 5, 0, 2)),
            ("schlafli", (27, 16, 10, 8)),
            ("paley(9)", (9, 4, 1, 2)),
            ("paley(13)", (13, 6, 2, 3)),
            ("paley(17)", (17, 8, 3, 4)),
            ("paley(25)", (25, 12, 5, 6)),
            ("complement(rook(4))", (16, 9, 4, 6)),
            ("complement(rook(5))", (25, 16, 9, 12)),
            ("complement(clebsch)", (16, 10, 6, 6)),
            ("complement(triangular(7))", (21, 10, 3, 6)),
        ];
        for (text, expect) in cases {
            let name = SrgName::parse(text).unwrap();
            assert_eq!(name.parameters().unwrap(), expect, "{text}");
            // The validator inside srg_catalog certifies the identity.
            let a = srg_catalog(&name).unwrap();
            assert_eq!(a.order(), expect.0, "{text}");
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(SrgName::parse("heawood").is_err());
        assert!(SrgName::parse("rook").is_err());
        assert!(SrgName::parse("complement(").is_err());
        assert!(srg_catalog(&SrgName::Paley { q: 7 }).is_err());
    }
}
