//! Symmetric association schemes: representation, axiom validation, and
//! the catalog of schemes the verification suites run on.
//!
//! A scheme on `v` points is stored as a dense v-by-v table of class
//! indices (class 0 is the identity relation) plus one bit-row matrix per
//! class for the closure check. Axiom validation checks, exactly:
//! identity, disjointness (implicit in the table), symmetry, and closure
//! of the products `A_i * A_j` under the span, expressed as constancy of
//! the product entries over each relation class.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct AssociationScheme {
    v: usize,
    d: usize,
    /// Row-major class table; `class[x*v+y]` in `0..=d`, with 0 exactly on
    /// the diagonal.
    class: Vec<u8>,
    /// Nonidentity class labels, index 1-based: `labels[j-1]` names class j.
    labels: Vec<String>,
}

/// Outcome of the axiom validator. Violations are reported, not thrown.
#[derive(Clone, Debug, Default)]
pub struct SchemeValidation {
    pub violations: Vec<String>,
}

impl SchemeValidation {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl AssociationScheme {
    /// Build from a class table without validating the axioms.
    pub fn from_class_table(v: usize, class: Vec<u8>, labels: Vec<String>) -> Result<Self> {
        if class.len() != v * v {
            return Err(Error::invalid("class table size mismatch"));
        }
        let d = class.iter().copied().max().unwrap_or(0) as usize;
        if labels.len() != d {
            return Err(Error::invalid(format!(
                "expected {d} class labels, got {}",
                labels.len()
            )));
        }
        Ok(AssociationScheme { v, d, class, labels })
    }

    pub fn points(&self) -> usize {
        self.v
    }

    pub fn classes(&self) -> usize {
        self.d
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The unique class of an unordered pair of distinct points (1-based
    /// class index; 0 is reserved for the diagonal).
    pub fn classify_pair(&self, x: usize, y: usize) -> usize {
        debug_assert!(x != y, "classify_pair needs distinct points");
        self.class[x * self.v + y] as usize
    }

    pub fn class_table(&self) -> &[u8] {
        &self.class
    }

    /// Number of unordered pairs in each nonidentity class.
    pub fn pair_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.d];
        for x in 0..self.v {
            for y in x + 1..self.v {
                let c = self.class[x * self.v + y] as usize;
                if c >= 1 {
                    counts[c - 1] += 1;
                }
            }
        }
        counts
    }

    /// A representative pair for each nonidentity class, when one exists.
    pub fn class_representatives(&self) -> Vec<Option<(usize, usize)>> {
        let mut reps = vec![None; self.d];
        for x in 0..self.v {
            for y in x + 1..self.v {
                let c = self.class[x * self.v + y] as usize;
                if c >= 1 && reps[c - 1].is_none() {
                    reps[c - 1] = Some((x, y));
                }
            }
        }
        reps
    }

    /// Check the scheme axioms exactly.
    pub fn validate(&self) -> SchemeValidation {
        let mut report = SchemeValidation::default();
        let v = self.v;
        for x in 0..v {
            if self.class[x * v + x] != 0 {
                report
                    .violations
                    .push(format!("diagonal entry at point {} is not class 0", x + 1));
            }
        }
        for x in 0..v {
            for y in 0..v {
                if x != y && self.class[x * v + y] == 0 {
                    report.violations.push(format!(
                        "off-diagonal pair ({},{}) assigned to the identity class",
                        x + 1,
                        y + 1
                    ));
                }
                if self.class[x * v + y] != self.class[y * v + x] {
                    report.violations.push(format!(
                        "class table not symmetric at ({},{})",
                        x + 1,
                        y + 1
                    ));
                }
            }
        }
        for j in 1..=self.d {
            if !self.class.iter().any(|&c| c as usize == j) {
                report.violations.push(format!("class {j} is empty"));
            }
        }
        if !report.ok() {
            return report;
        }
        // Closure: (A_i A_j)_{xy} must be constant over each class.
        let words = v.div_ceil(64);
        let mut rows = vec![vec![0u64; v * words]; self.d + 1];
        for x in 0..v {
            for y in 0..v {
                let c = self.class[x * v + y] as usize;
                rows[c][x * words + y / 64] |= 1 << (y % 64);
            }
        }
        for i in 0..=self.d {
            for j in i..=self.d {
                // value per class; usize::MAX = unseen
                let mut seen = vec![None; self.d + 1];
                for x in 0..v {
                    for y in 0..v {
                        let mut prod = 0u32;
                        for w in 0..words {
                            prod += (rows[i][x * words + w] & rows[j][y * words + w]).count_ones();
                        }
                        let c = self.class[x * v + y] as usize;
                        match seen[c] {
                            None => seen[c] = Some(prod),
                            Some(existing) if existing != prod => {
                                report.violations.push(format!(
                                    "product of classes {i} and {j} is not constant on class {c}: \
                                     {existing} at one pair, {prod} at ({},{})",
                                    x + 1,
                                    y + 1
                                ));
                                return report;
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        report
    }

    fn validated(self, what: &str) -> Result<Self> {
        let report = self.validate();
        if report.ok() {
            Ok(self)
        } else {
            Err(Error::validator(format!(
                "{what}: {}",
                report.violations.join("; ")
            )))
        }
    }
}

/// Binary Hamming scheme on 2^d points; class = Hamming distance.
pub fn hamming(d: usize) -> Result<AssociationScheme> {
    if d == 0 || d > 9 {
        return Err(Error::invalid("hamming scheme needs 1 <= d <= 9"));
    }
    let v = 1usize << d;
    let mut class = vec![0u8; v * v];
    for x in 0..v {
        for y in 0..v {
            class[x * v + y] = (x ^ y).count_ones() as u8;
        }
    }
    let labels = (1..=d).map(|i| format!("distance-{i}")).collect();
    AssociationScheme::from_class_table(v, class, labels)?.validated("hamming scheme")
}

/// Two-class scheme {I, A, J-I-A} of a strongly regular graph.
pub fn srg_2class(adjacency: &ExactMatrix) -> Result<AssociationScheme> {
    let v = adjacency.order();
    let one = Scalar::one();
    let mut class = vec![0u8; v * v];
    for x in 0..v {
        for y in 0..v {
            if x == y {
                continue;
            }
            class[x * v + y] = if *adjacency.at(x, y) == one { 1 } else { 2 };
        }
    }
    let labels = vec!["adjacent".to_string(), "non-adjacent".to_string()];
    AssociationScheme::from_class_table(v, class, labels)?.validated("srg 2-class scheme")
}

/// Group divisible scheme on n^2 points: class 1 within a group of n
/// consecutive points, class 2 across groups.
pub fn group_divisible(n: usize) -> Result<AssociationScheme> {
    if n < 2 {
        return Err(Error::invalid("group divisible scheme needs n >= 2"));
    }
    let v = n * n;
    let mut class = vec![0u8; v * v];
    for x in 0..v {
        for y in 0..v {
            if x == y {
                continue;
            }
            class[x * v + y] = if x / n == y / n { 1 } else { 2 };
        }
    }
    let labels = vec!["same-group".to_string(), "other-group".to_string()];
    AssociationScheme::from_class_table(v, class, labels)?.validated("group divisible scheme")
}

/// Three-class scheme on 2v points attached to a weighing matrix with
/// symmetric-design support: class 1 joins cross pairs on the support,
/// class 2 joins same-half pairs, class 3 the remaining cross pairs.
pub fn bgw_3class(w: &ExactMatrix) -> Result<AssociationScheme> {
    let v = w.order();
    let n = 2 * v;
    let mut class = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let c = if (x < v) == (y < v) {
                2
            } else {
                let (row, col) = if x < v { (x, y - v) } else { (y, x - v) };
                if w.at(row, col).is_zero() {
                    3
                } else {
                    1
                }
            };
            class[x * n + y] = c;
        }
    }
    let labels = vec![
        "cross-support".to_string(),
        "same-half".to_string(),
        "cross-zero".to_string(),
    ];
    AssociationScheme::from_class_table(n, class, labels)?.validated("weighing 3-class scheme")
}

/// Two-class scheme on 2v points used with bordered Hadamard matrices:
/// class 1 within each half, class 2 across halves.
pub fn hadamard_3class(v: usize) -> Result<AssociationScheme> {
    if v < 2 {
        return Err(Error::invalid("bordered scheme needs v >= 2"));
    }
    let n = 2 * v;
    let mut class = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            class[x * n + y] = if (x < v) == (y < v) { 1 } else { 2 };
        }
    }
    let labels = vec!["same-half".to_string(), "cross-half".to_string()];
    AssociationScheme::from_class_table(n, class, labels)?.validated("bordered-halves scheme")
}

/// Scheme whose class j collects the pairs whose Gram entry lies in the
/// j-th value list. Every off-diagonal entry must be covered.
pub fn gram_value(
    gram: &ExactMatrix,
    value_classes: &[Vec<Scalar>],
    labels: Vec<String>,
) -> Result<AssociationScheme> {
    let v = gram.order();
    if value_classes.len() != labels.len() {
        return Err(Error::invalid("one label per value class required"));
    }
    let mut class = vec![0u8; v * v];
    for x in 0..v {
        for y in 0..v {
            if x == y {
                continue;
            }
            let entry = gram.at(x, y);
            let found = value_classes
                .iter()
                .position(|values| values.contains(entry))
                .ok_or_else(|| {
                    Error::ValueNotCovered(format!(
                        "entry {} at pair ({},{})",
                        entry,
                        x + 1,
                        y + 1
                    ))
                })?;
            class[x * v + y] = (found + 1) as u8;
        }
    }
    AssociationScheme::from_class_table(v, class, labels)?.validated("gram value scheme")
}

/// The 4-class scheme attached to the order-9 symmetric Butson matrix:
/// class 4 is the within-block relation `I_3 (x) (J_3 - I_3)`, classes
/// 1..3 split the remaining pairs by entry value, ordered (w2, 1, w) to
/// match the positional class vectors of the registered tables.
pub fn bh9_scheme(h: &ExactMatrix) -> Result<AssociationScheme> {
    if h.order() != 9 {
        return Err(Error::invalid("bh9 scheme needs an order-9 matrix"));
    }
    let v = 9;
    let one = Scalar::one();
    let w = Scalar::omega();
    let w2 = Scalar::omega2();
    let mut class = vec![0u8; v * v];
    for x in 0..v {
        for y in 0..v {
            if x == y {
                continue;
            }
            let c = if x / 3 == y / 3 {
                4
            } else {
                let entry = h.at(x, y);
                if *entry == w2 {
                    1
                } else if *entry == one {
                    2
                } else if *entry == w {
                    3
                } else {
                    return Err(Error::ValueNotCovered(format!(
                        "entry {} at pair ({},{})",
                        entry,
                        x + 1,
                        y + 1
                    )));
                }
            };
            class[x * v + y] = c;
        }
    }
    let labels = vec![
        "value-w2".to_string(),
        "value-1".to_string(),
        "value-w".to_string(),
        "same-block".to_string(),
    ];
    AssociationScheme::from_class_table(v, class, labels)?.validated("bh9 scheme")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_three() {
        let h = hamming(3).unwrap();
        assert_eq!(h.points(), 8);
        assert_eq!(h.classes(), 3);
        // Valencies (1,3,3,1): pair counts are v*k_i/2.
        assert_eq!(h.pair_counts(), vec![12, 12, 4]);
        // Vertices at distance 2.
        assert_eq!(h.classify_pair(0, 3), 2);
        assert_eq!(h.classify_pair(0, 7), 3);
    }

    #[test]
    fn pair_classification_is_total_and_symmetric() {
        let h = hamming(4).unwrap();
        let mut total = 0u64;
        for x in 0..16 {
            for y in (x + 1)..16 {
                let c = h.classify_pair(x, y);
                assert_eq!(c, h.classify_pair(y, x));
                assert!(c >= 1 && c <= 4);
                total += 1;
            }
        }
        assert_eq!(total, 120);
        assert_eq!(h.pair_counts().iter().sum::<u64>(), 120);
    }

    #[test]
    fn group_divisible_classes() {
        let g = group_divisible(4).unwrap();
        assert_eq!(g.points(), 16);
        // Points 0 and 1 share a group of 4.
        assert_eq!(g.classify_pair(0, 1), 1);
        assert_eq!(g.classify_pair(0, 4), 2);
    }

    #[test]
    fn bordered_halves_classes() {
        let s = hadamard_3class(4).unwrap();
        // Point 1 and point 5 (1-based) sit across the two halves.
        assert_eq!(s.classify_pair(0, 4), 2);
        assert_eq!(s.classify_pair(0, 1), 1);
    }

    #[test]
    fn path_graph_violates_closure() {
        // {I, A, J-I-A} for the path on 4 vertices is not a scheme: the
        // number of common neighbours of adjacent pairs is not constant.
        let path = ExactMatrix::from_int_fn(4, |i, j| {
            i64::from(i.abs_diff(j) == 1)
        });
        let v = 4;
        let mut class = vec![0u8; v * v];
        for x in 0..v {
            for y in 0..v {
                if x != y {
                    class[x * v + y] = if x.abs_diff(y) == 1 { 1 } else { 2 };
                }
            }
        }
        let raw = AssociationScheme::from_class_table(
            v,
            class,
            vec!["adj".into(), "non".into()],
        )
        .unwrap();
        assert!(!raw.validate().ok());
        assert!(srg_2class(&path).is_err());
    }

    #[test]
    fn complete_bipartite_is_a_scheme() {
        // K_{3,3} is strongly regular; its 2-class partition validates.
        let a = ExactMatrix::from_int_fn(6, |i, j| i64::from((i < 3) != (j < 3)));
        let s = srg_2class(&a).unwrap();
        assert_eq!(s.classes(), 2);
        assert_eq!(s.pair_counts(), vec![9, 6]);
    }

    #[test]
    fn gram_value_rejects_uncovered_entries() {
        let g = ExactMatrix::from_int_fn(3, |i, j| if i == j { 2 } else { 1 });
        let err = gram_value(&g, &[vec![Scalar::zero()]], vec!["zero".into()]);
        assert!(matches!(err, Err(Error::ValueNotCovered(_))));
    }
}
