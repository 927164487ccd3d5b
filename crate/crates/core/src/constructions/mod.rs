//! Catalog of matrix families, each certified by a post-construction
//! validator. A constructor never returns an unvalidated matrix: if the
//! defining identity fails, the call errors out.

mod skew_bush;
mod sporadic;
mod srg;

pub use skew_bush::skew_bush_search;
pub use sporadic::{bh9_figure1, e7_gram, e8_gram, hermitian_bh9, hoggar_seidel, mub_gram};
pub use srg::{srg_catalog, SrgName};

use crate::error::{Error, Result};
use crate::gf::Fq;
use crate::matrix::{ExactMatrix, Symmetry};
use crate::scalar::Scalar;

/// Check `A * A^T == c*I + d*J` entrywise.
pub(crate) fn gram_is(a: &ExactMatrix, c: i64, d: i64) -> bool {
    let product = a.matmul(&a.transpose());
    let c = Scalar::from_int(c);
    let d = Scalar::from_int(d);
    let diag = &c + &d;
    for i in 0..a.order() {
        for j in 0..a.order() {
            let expect = if i == j { &diag } else { &d };
            if product.at(i, j) != expect {
                return false;
            }
        }
    }
    true
}

/// Conference matrix of order q+1 from the quadratic residues of F_q:
/// symmetric when q = 1 mod 4, skew-symmetric when q = 3 mod 4.
pub fn paley_conference(q: u64) -> Result<ExactMatrix> {
    if q % 2 == 0 {
        return Err(Error::invalid(format!("q = {q} must be an odd prime power")));
    }
    let field = Fq::new(q)?;
    let n = (q + 1) as usize;
    let last = n - 1;
    let m = ExactMatrix::from_int_fn(n, |i, j| {
        if i == j {
            0
        } else if i == last {
            -1
        } else if j == last {
            // Arcs run back from the graph only when -1 is a square.
            if q % 4 == 1 {
                -1
            } else {
                1
            }
        } else {
            let diff = field.sub(&field.element(i as u64), &field.element(j as u64));
            if field.is_nonzero_square(&diff) {
                -1
            } else {
                1
            }
        }
    });
    if !gram_is(&m, q as i64, 0) {
        return Err(Error::validator(format!(
            "paley_conference({q}): S*S^T != {q}I"
        )));
    }
    let expected = if q % 4 == 1 {
        Symmetry::Symmetric
    } else {
        Symmetry::SkewSymmetric
    };
    m.with_symmetry(expected)
        .map_err(|e| Error::validator(format!("paley_conference({q}): {e}")))
}

/// 0/1 adjacency matrix of the Paley tournament on q points, q = 3 mod 4:
/// arc from u to v when u - v is a nonzero square.
pub fn paley_tournament(q: u64) -> Result<ExactMatrix> {
    if q % 4 != 3 {
        return Err(Error::invalid(format!(
            "q = {q} must be a prime power congruent to 3 mod 4"
        )));
    }
    let field = Fq::new(q)?;
    let n = q as usize;
    let m = ExactMatrix::from_int_fn(n, |i, j| {
        if i == j {
            return 0;
        }
        let diff = field.sub(&field.element(i as u64), &field.element(j as u64));
        i64::from(field.is_nonzero_square(&diff))
    });
    // Doubly regular: A*A^T = t*J + (t+1)*I with t = (q-3)/4.
    let t = (q as i64 - 3) / 4;
    if !gram_is(&m, t + 1, t) {
        return Err(Error::validator(format!(
            "paley_tournament({q}): A*A^T != {t}J + {}I",
            t + 1
        )));
    }
    // Tournament condition A + A^T = J - I.
    let sum = m.add(&m.transpose());
    let expect = ExactMatrix::ones(n).sub(&ExactMatrix::identity(n));
    if sum != expect {
        return Err(Error::validator(format!(
            "paley_tournament({q}): not a tournament"
        )));
    }
    Ok(m)
}

/// m-fold Kronecker power of the order-4 symmetric Hadamard matrix with
/// diagonal -1; a graphical Hadamard matrix of order 4^m.
pub fn graphical_hadamard(m: u32) -> Result<ExactMatrix> {
    if m == 0 || m > 4 {
        return Err(Error::invalid("graphical_hadamard needs 1 <= m <= 4"));
    }
    let base = ExactMatrix::from_int_fn(4, |i, j| if i == j { -1 } else { 1 });
    let mut h = base.clone();
    for _ in 1..m {
        h = h.kron(&base);
    }
    let n = h.order();
    if !gram_is(&h, n as i64, 0) {
        return Err(Error::validator(format!(
            "graphical_hadamard({m}): H*H^T != {n}I"
        )));
    }
    let eps = if m % 2 == 0 { 1 } else { -1 };
    let diag_ok = (0..n).all(|i| *h.at(i, i) == Scalar::from_int(eps));
    if !diag_ok {
        return Err(Error::validator(format!(
            "graphical_hadamard({m}): diagonal is not constant {eps}"
        )));
    }
    h.with_symmetry(Symmetry::Symmetric)
        .map_err(|e| Error::validator(format!("graphical_hadamard({m}): {e}")))
}

/// Signed adjacency matrix of the d-cube, built by the doubling recursion
/// from the 1-by-1 zero matrix; satisfies S_d^2 = d*I.
pub fn signed_hypercube(d: u32) -> Result<ExactMatrix> {
    if d == 0 || d > 8 {
        return Err(Error::invalid("signed_hypercube needs 1 <= d <= 8"));
    }
    let mut s = ExactMatrix::zeros(1);
    for _ in 0..d {
        let half = s.order();
        let next = ExactMatrix::from_fn(2 * half, |i, j| {
            let (bi, bj) = (i >= half, j >= half);
            match (bi, bj) {
                (false, false) => s.at(i, j).clone(),
                (true, true) => -s.at(i - half, j - half),
                _ => {
                    if i % half == j % half {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }
            }
        });
        s = next;
    }
    let n = s.order();
    let square = s.matmul(&s);
    if square != ExactMatrix::identity(n).scale(&Scalar::from_int(d as i64)) {
        return Err(Error::validator(format!(
            "signed_hypercube({d}): S^2 != {d}I"
        )));
    }
    s.with_symmetry(Symmetry::Symmetric)
        .map_err(|e| Error::validator(format!("signed_hypercube({d}): {e}")))
}

/// A conference matrix of order q+1 read as a balanced weighing matrix
/// BGW(q+1, q, q-1): the validator checks the weighing identity and that
/// the support is exactly J - I.
pub fn bgw_from_conference(q: u64) -> Result<ExactMatrix> {
    let w = paley_conference(q)?;
    let n = w.order();
    for i in 0..n {
        for j in 0..n {
            let zero = w.at(i, j).is_zero();
            if zero != (i == j) {
                return Err(Error::validator(format!(
                    "bgw_from_conference({q}): support is not J - I"
                )));
            }
        }
    }
    Ok(w)
}

/// Block matrix [[O, W], [W^T, O]] of a weighing matrix with W*W^T = d*I;
/// the validator checks A^2 = d*I.
pub fn bgw_block(w: &ExactMatrix) -> Result<ExactMatrix> {
    let v = w.order();
    let a = ExactMatrix::from_fn(2 * v, |i, j| {
        let (bi, bj) = (i >= v, j >= v);
        match (bi, bj) {
            (false, true) => w.at(i, j - v).clone(),
            (true, false) => w.at(j, i - v).clone(),
            _ => Scalar::zero(),
        }
    });
    // Weight = row norm of W.
    let mut weight = Scalar::zero();
    for j in 0..v {
        weight = &weight + &(w.at(0, j) * &w.at(0, j).conj());
    }
    let square = a.matmul(&a);
    if square != ExactMatrix::identity(2 * v).scale(&weight) {
        return Err(Error::validator("bgw_block: A^2 != weight * I"));
    }
    a.with_symmetry(Symmetry::Symmetric)
        .map_err(|e| Error::validator(format!("bgw_block: {e}")))
}

/// Sylvester Hadamard matrix of order v = 2^m.
pub fn sylvester_hadamard(v: u64) -> Result<ExactMatrix> {
    if v < 1 || (v & (v - 1)) != 0 {
        return Err(Error::invalid(format!(
            "sylvester order {v} must be a power of two"
        )));
    }
    let base = ExactMatrix::from_int_fn(2, |i, j| if i == 1 && j == 1 { -1 } else { 1 });
    let mut h = ExactMatrix::identity(1);
    let mut size = 1;
    while size < v {
        h = h.kron(&base);
        size *= 2;
    }
    if !gram_is(&h, v as i64, 0) {
        return Err(Error::validator(format!("sylvester({v}): H*H^T != {v}I")));
    }
    Ok(h)
}

/// Bordered matrix [[I, H], [H^T, I]] of a Hadamard matrix of order v;
/// the validator checks A^2 - 2A - (v-1)I = O.
pub fn hadamard_bordered(h: &ExactMatrix) -> Result<ExactMatrix> {
    let v = h.order();
    if !gram_is(h, v as i64, 0) {
        return Err(Error::invalid("hadamard_bordered needs H*H^T = vI"));
    }
    let a = ExactMatrix::from_fn(2 * v, |i, j| {
        let (bi, bj) = (i >= v, j >= v);
        match (bi, bj) {
            (false, false) | (true, true) => {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }
            (false, true) => h.at(i, j - v).clone(),
            (true, false) => h.at(j, i - v).clone(),
        }
    });
    let square = a.matmul(&a);
    let expect = a
        .scale(&Scalar::from_int(2))
        .add(&ExactMatrix::identity(2 * v).scale(&Scalar::from_int(v as i64 - 1)));
    if square != expect {
        return Err(Error::validator(
            "hadamard_bordered: A^2 - 2A - (v-1)I != O",
        ));
    }
    a.with_symmetry(Symmetry::Symmetric)
        .map_err(|e| Error::validator(format!("hadamard_bordered: {e}")))
}

/// Construction dispatch used by the command-line surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    PaleyConference { q: u64 },
    PaleyTournament { q: u64 },
    GraphicalHadamard { m: u32 },
    SignedHypercube { d: u32 },
    BgwFromConference { q: u64 },
    /// Block matrix of the conference BGW for the same q.
    BgwBlock { q: u64 },
    /// Bordered Sylvester Hadamard matrix of order v.
    HadamardBordered { v: u64 },
    Srg { name: SrgName },
    E7Gram,
    E8Gram,
    MubGram,
    Bh9Figure1,
    HermitianBh9,
    HoggarSeidel,
    SkewBush { n: usize },
}

impl Family {
    pub fn construct(&self) -> Result<ExactMatrix> {
        match self {
            Family::PaleyConference { q } => paley_conference(*q),
            Family::PaleyTournament { q } => paley_tournament(*q),
            Family::GraphicalHadamard { m } => graphical_hadamard(*m),
            Family::SignedHypercube { d } => signed_hypercube(*d),
            Family::BgwFromConference { q } => bgw_from_conference(*q),
            Family::BgwBlock { q } => bgw_block(&bgw_from_conference(*q)?),
            Family::HadamardBordered { v } => hadamard_bordered(&sylvester_hadamard(*v)?),
            Family::Srg { name } => srg_catalog(name),
            Family::E7Gram => e7_gram(),
            Family::E8Gram => e8_gram(),
            Family::MubGram => mub_gram(),
            Family::Bh9Figure1 => bh9_figure1(),
            Family::HermitianBh9 => hermitian_bh9(),
            Family::HoggarSeidel => hoggar_seidel(),
            Family::SkewBush { n } => skew_bush_search(*n),
        }
    }
}
