//! Dense square matrices over Q(zeta_12).
//!
//! Matrices are immutable after construction and carry advisory symmetry
//! metadata that is validated on demand, never assumed. Determinants use
//! cofactor expansion up to order 5 and fraction-free Bareiss elimination
//! with exact division above that.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Advisory symmetry tag carried by a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    SkewSymmetric,
    Hermitian,
    None,
}

impl Symmetry {
    pub fn tag(self) -> &'static str {
        match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::SkewSymmetric => "skew-symmetric",
            Symmetry::Hermitian => "hermitian",
            Symmetry::None => "none",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "symmetric" => Ok(Symmetry::Symmetric),
            "skew-symmetric" => Ok(Symmetry::SkewSymmetric),
            "hermitian" => Ok(Symmetry::Hermitian),
            "none" => Ok(Symmetry::None),
            other => Err(Error::parse(format!("unknown symmetry tag `{other}`"))),
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A dense n-by-n matrix of [`Scalar`]s.
#[derive(Clone)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<Scalar>,
    symmetry: Symmetry,
}

/// Equality compares order and entries; the symmetry tag is advisory.
impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for ExactMatrix {}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix(n={}, symmetry={})", self.n, self.symmetry)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn new(n: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            n,
            entries,
            symmetry: Symmetry::None,
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            n,
            entries,
            symmetry: Symmetry::None,
        }
    }

    /// Integer shortcut used heavily by the construction catalog.
    pub fn from_int_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        Self::from_fn(n, |i, j| Scalar::from_int(f(i, j)))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_int_fn(n, |i, j| i64::from(i == j))
    }

    pub fn ones(n: usize) -> Self {
        Self::from_int_fn(n, |_, _| 1)
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_int_fn(n, |_, _| 0)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Tag the matrix with a symmetry claim after checking it holds.
    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Result<Self> {
        self.check_symmetry(symmetry)?;
        self.symmetry = symmetry;
        Ok(self)
    }

    /// Verify a symmetry claim entrywise.
    pub fn check_symmetry(&self, symmetry: Symmetry) -> Result<()> {
        let fail = |i, j| Error::SymmetryMismatch {
            declared: symmetry.tag().to_string(),
            row: i + 1,
            col: j + 1,
        };
        for i in 0..self.n {
            for j in i..self.n {
                let a = self.at(i, j);
                let b = self.at(j, i);
                let ok = match symmetry {
                    Symmetry::Symmetric => a == b,
                    Symmetry::SkewSymmetric => *a == -b,
                    Symmetry::Hermitian => *a == b.conj(),
                    Symmetry::None => true,
                };
                if !ok {
                    return Err(fail(i, j));
                }
            }
        }
        Ok(())
    }

    /// The strongest symmetry tag the entries satisfy.
    pub fn detect_symmetry(&self) -> Symmetry {
        for s in [Symmetry::Symmetric, Symmetry::SkewSymmetric, Symmetry::Hermitian] {
            if self.check_symmetry(s).is_ok() {
                return s;
            }
        }
        Symmetry::None
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Principal submatrix on a strictly increasing, 0-based index set.
    pub fn submatrix(&self, indices: &[usize]) -> Result<ExactMatrix> {
        if indices.is_empty() {
            return Err(Error::IndexOutOfRange("empty index set".into()));
        }
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::IndexOutOfRange(
                    "index set must be strictly increasing".into(),
                ));
            }
        }
        if *indices.last().unwrap() >= self.n {
            return Err(Error::IndexOutOfRange(format!(
                "index {} exceeds order {}",
                indices.last().unwrap() + 1,
                self.n
            )));
        }
        let k = indices.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                entries.push(self.at(i, j).clone());
            }
        }
        Ok(ExactMatrix {
            n: k,
            entries,
            symmetry: self.symmetry,
        })
    }

    /// Principal submatrix on the complement of `indices`.
    pub fn submatrix_complement(&self, indices: &[usize]) -> Result<ExactMatrix> {
        let mut keep: Vec<usize> = (0..self.n).collect();
        keep.retain(|i| !indices.contains(i));
        self.submatrix(&keep)
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, |i, j| self.at(j, i).clone())
    }

    pub fn conj_transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, |i, j| self.at(j, i).conj())
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, rhs.n, "order mismatch");
        ExactMatrix::from_fn(self.n, |i, j| self.at(i, j) + rhs.at(i, j))
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, rhs.n, "order mismatch");
        ExactMatrix::from_fn(self.n, |i, j| self.at(i, j) - rhs.at(i, j))
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, |i, j| self.at(i, j) * c)
    }

    /// `self + c*I`.
    pub fn add_scalar_diag(&self, c: &Scalar) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, |i, j| {
            if i == j {
                self.at(i, j) + c
            } else {
                self.at(i, j).clone()
            }
        })
    }

    pub fn matmul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, rhs.n, "order mismatch");
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero();
                for k in 0..n {
                    let a = self.at(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                entries.push(acc);
            }
        }
        ExactMatrix {
            n,
            entries,
            symmetry: Symmetry::None,
        }
    }

    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let (a, b) = (self.n, rhs.n);
        ExactMatrix::from_fn(a * b, |i, j| self.at(i / b, j / b) * rhs.at(i % b, j % b))
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.n {
            acc = &acc + self.at(i, i);
        }
        acc
    }

    /// Exact determinant. Cofactor expansion for order <= 5, fraction-free
    /// Bareiss elimination with exact division otherwise.
    pub fn det(&self) -> Scalar {
        if self.n <= 5 {
            let idx: Vec<usize> = (0..self.n).collect();
            det_on_indices(self, &idx)
        } else {
            bareiss_det(self)
        }
    }

    /// Determinant of the principal submatrix on `indices` without
    /// materializing it (for small index sets).
    pub fn principal_minor(&self, indices: &[usize]) -> Result<Scalar> {
        if indices.is_empty() {
            return Err(Error::IndexOutOfRange("empty index set".into()));
        }
        if indices.iter().any(|&i| i >= self.n) {
            return Err(Error::IndexOutOfRange(format!(
                "index exceeds order {}",
                self.n
            )));
        }
        if indices.len() <= 5 {
            Ok(det_on_indices(self, indices))
        } else {
            Ok(self.submatrix(indices)?.det())
        }
    }

    /// Solve `self * X = I` exactly; errors when singular.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        let n = self.n;
        let mut work: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row: Vec<Scalar> = (0..n).map(|j| self.at(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            work.swap(col, pivot);
            let inv = work[col][col].inv()?;
            for j in col..2 * n {
                work[col][j] = &work[col][j] * &inv;
            }
            for r in 0..n {
                if r == col || work[r][col].is_zero() {
                    continue;
                }
                let factor = work[r][col].clone();
                for j in col..2 * n {
                    work[r][j] = &work[r][j] - &(&factor * &work[col][j]);
                }
            }
        }
        Ok(ExactMatrix::from_fn(n, |i, j| work[i][n + j].clone()))
    }
}

/// Cofactor determinant over an index selection, order <= 5.
fn det_on_indices(m: &ExactMatrix, idx: &[usize]) -> Scalar {
    match idx.len() {
        1 => m.at(idx[0], idx[0]).clone(),
        2 => {
            let (a, b) = (idx[0], idx[1]);
            &(m.at(a, a) * m.at(b, b)) - &(m.at(a, b) * m.at(b, a))
        }
        k => {
            // Expand along the first selected row.
            let mut acc = Scalar::zero();
            let mut sign_flip = false;
            for drop in 0..k {
                let lead = m.at(idx[0], idx[drop]);
                if !lead.is_zero() {
                    let rest: Vec<usize> = idx[1..].to_vec();
                    let cols: Vec<usize> = (0..k).filter(|&c| c != drop).map(|c| idx[c]).collect();
                    let sub = det_rect(m, &rest, &cols);
                    let term = lead * &sub;
                    acc = if sign_flip { &acc - &term } else { &acc + &term };
                }
                sign_flip = !sign_flip;
            }
            acc
        }
    }
}

/// Determinant of the square selection rows x cols (equal lengths <= 4).
fn det_rect(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> Scalar {
    match rows.len() {
        1 => m.at(rows[0], cols[0]).clone(),
        2 => {
            &(m.at(rows[0], cols[0]) * m.at(rows[1], cols[1]))
                - &(m.at(rows[0], cols[1]) * m.at(rows[1], cols[0]))
        }
        k => {
            let mut acc = Scalar::zero();
            let mut sign_flip = false;
            for drop in 0..k {
                let lead = m.at(rows[0], cols[drop]);
                if !lead.is_zero() {
                    let sub_rows: Vec<usize> = rows[1..].to_vec();
                    let sub_cols: Vec<usize> =
                        (0..k).filter(|&c| c != drop).map(|c| cols[c]).collect();
                    let sub = det_rect(m, &sub_rows, &sub_cols);
                    let term = lead * &sub;
                    acc = if sign_flip { &acc - &term } else { &acc + &term };
                }
                sign_flip = !sign_flip;
            }
            acc
        }
    }
}

/// Fraction-free Bareiss elimination. Row swaps use the first nonzero
/// pivot in column order and are tracked by sign.
fn bareiss_det(m: &ExactMatrix) -> Scalar {
    let n = m.order();
    let mut work: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j).clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = Scalar::one();
    for k in 0..n - 1 {
        if work[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !work[r][k].is_zero()) else {
                return Scalar::zero();
            };
            work.swap(k, swap);
            negate = !negate;
        }
        let prev_inv = prev.inv().expect("previous pivot is nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&work[k][k] * &work[i][j]) - &(&work[i][k] * &work[k][j]);
                work[i][j] = &num * &prev_inv;
            }
            work[i][k] = Scalar::zero();
        }
        prev = work[k][k].clone();
    }
    let det = work[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
