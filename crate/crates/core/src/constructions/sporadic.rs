//! Sporadic catalog: root-system Gram matrices, the unbiased-bases Gram,
//! the two order-9 Butson matrices, and the Seidel matrix of Hoggar's
//! lines. Each is pinned by an explicit validator.

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Symmetry};
use crate::poly::{charpoly, Poly};
use crate::scalar::Scalar;
use crate::spectrum::minor_spectrum;

/// The 240 roots of the even unimodular rank-8 lattice, in doubled
/// coordinates so all arithmetic stays integral: the integer roots carry
/// two entries +-2, the half-integer roots are +-1 vectors with an even
/// number of minus signs.
fn e8_roots_doubled() -> Vec<[i64; 8]> {
    let mut roots = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut r = [0i64; 8];
                r[i] = si;
                r[j] = sj;
                roots.push(r);
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let mut r = [1i64; 8];
        for (bit, slot) in r.iter_mut().enumerate() {
            if mask >> bit & 1 == 1 {
                *slot = -1;
            }
        }
        roots.push(r);
    }
    roots.sort_unstable();
    roots
}

fn dot(a: &[i64; 8], b: &[i64; 8]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn root_gram(roots: &[[i64; 8]]) -> ExactMatrix {
    ExactMatrix::from_int_fn(roots.len(), |i, j| dot(&roots[i], &roots[j]) / 4)
}

/// Gram matrix of the 240 roots; entries 2 on the diagonal and
/// 0, +-1, +-2 off it.
pub fn e8_gram() -> Result<ExactMatrix> {
    let roots = e8_roots_doubled();
    if roots.len() != 240 {
        return Err(Error::validator(format!(
            "e8_gram: {} roots instead of 240",
            roots.len()
        )));
    }
    let g = root_gram(&roots);
    validate_root_gram(&g, "e8_gram", 2)?;
    g.with_symmetry(Symmetry::Symmetric)
        .map_err(|e| Error::validator(format!("e8_gram: {e}")))
}

/// Gram matrix of the 126 roots orthogonal to one fixed root; pinned to
/// the point count and the 3-by-3 minor value set {0, 4, 6, 8}.
pub fn e7_gram() -> Result<ExactMatrix> {
    let fixed: [i64; 8] = [0, 0, 0, 0, 0, 0, 2, 2];
    let roots: Vec<[i64; 8]> = e8_roots_doubled()
        .into_iter()
        .filter(|r| dot(r, &fixed) == 0)
        .collect();
    if roots.len() != 126 {
        return Err(Error::validator(format!(
            "e7_gram: {} roots instead of 126",
            roots.len()
        )));
    }
    let g = root_gram(&roots);
    validate_root_gram(&g, "e7_gram", 2)?;
    let spectrum = minor_spectrum(&g, 3)?;
    let keys: Vec<Scalar> = spectrum.values();
    let expect: Vec<Scalar> = [0, 4, 6, 8].iter().map(|&v| Scalar::from_int(v)).collect();
    if keys != expect {
        return Err(Error::validator(
            "e7_gram: 3x3 minor values are not {0,4,6,8}",
        ));
    }
    g.with_symmetry(Symmetry::Symmetric)
        .map_err(|e| Error::validator(format!("e7_gram: {e}")))
}

fn validate_root_gram(g: &ExactMatrix, what: &str, diag: i64) -> Result<()> {
    let allowed: Vec<Scalar> = [-2i64, -1, 0, 1, 2].iter().map(|&v| Scalar::from_int(v)).collect();
    for i in 0..g.order() {
        if *g.at(i, i) != Scalar::from_int(diag) {
            return Err(Error::validator(format!("{what}: diagonal is not {diag}")));
        }
        for j in 0..g.order() {
            if i != j && !allowed.contains(g.at(i, j)) {
                return Err(Error::validator(format!(
                    "{what}: entry {} out of range at ({},{})",
                    g.at(i, j),
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Gram matrix of the 80 vectors s*m (s in {1, -1, i, -i}) over the five
/// maximal mutually unbiased bases of C^4. The base vectors are stored
/// doubled so all components are Gaussian integers.
pub fn mub_gram() -> Result<ExactMatrix> {
    let one = Scalar::from_int(1);
    let neg = Scalar::from_int(-1);
    let i = Scalar::i();
    let ni = -Scalar::i();
    let two = Scalar::from_int(2);
    let zero = Scalar::zero();
    // Doubled basis vectors, listed in source order.
    let bases: [[[Scalar; 4]; 4]; 5] = [
        [
            [two.clone(), zero.clone(), zero.clone(), zero.clone()],
            [zero.clone(), two.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), two.clone(), zero.clone()],
            [zero.clone(), zero.clone(), zero.clone(), two.clone()],
        ],
        [
            [one.clone(), one.clone(), one.clone(), one.clone()],
            [one.clone(), one.clone(), neg.clone(), neg.clone()],
            [one.clone(), neg.clone(), neg.clone(), one.clone()],
            [one.clone(), neg.clone(), one.clone(), neg.clone()],
        ],
        [
            [one.clone(), neg.clone(), ni.clone(), ni.clone()],
            [one.clone(), neg.clone(), i.clone(), i.clone()],
            [one.clone(), one.clone(), ni.clone(), i.clone()],
            [one.clone(), one.clone(), i.clone(), ni.clone()],
        ],
        [
            [one.clone(), ni.clone(), ni.clone(), neg.clone()],
            [one.clone(), ni.clone(), i.clone(), one.clone()],
            [one.clone(), i.clone(), ni.clone(), one.clone()],
            [one.clone(), i.clone(), i.clone(), neg.clone()],
        ],
        [
            [one.clone(), ni.clone(), neg.clone(), ni.clone()],
            [one.clone(), ni.clone(), one.clone(), i.clone()],
            [one.clone(), i.clone(), neg.clone(), i.clone()],
            [one.clone(), i.clone(), one.clone(), ni.clone()],
        ],
    ];
    let scalars = [one.clone(), neg.clone(), i.clone(), ni.clone()];
    let mut vectors: Vec<[Scalar; 4]> = Vec::with_capacity(80);
    for basis in &bases {
        for s in &scalars {
            for vector in basis {
                let mut scaled = vector.clone();
                for slot in &mut scaled {
                    *slot = &*slot * s;
                }
                vectors.push(scaled);
            }
        }
    }
    let quarter = Scalar::rational(1, 4);
    let g = ExactMatrix::from_fn(80, |x, y| {
        let mut acc = Scalar::zero();
        for (a, b) in vectors[x].iter().zip(&vectors[y]) {
            acc = &acc + &(a * &b.conj());
        }
        &acc * &quarter
    });
    let mut allowed = vec![Scalar::zero()];
    for unit in [Scalar::one(), Scalar::i()] {
        for den in [1u64, 2] {
            let base = &unit * &Scalar::rational(1, den);
            allowed.push(base.clone());
            allowed.push(-&base);
        }
    }
    for x in 0..80 {
        if !g.at(x, x).is_one() {
            return Err(Error::validator("mub_gram: diagonal is not 1"));
        }
        for y in 0..80 {
            if !allowed.contains(g.at(x, y)) {
                return Err(Error::validator(format!(
                    "mub_gram: unexpected entry {} at ({},{})",
                    g.at(x, y),
                    x + 1,
                    y + 1
                )));
            }
        }
    }
    g.with_symmetry(Symmetry::Hermitian)
        .map_err(|e| Error::validator(format!("mub_gram: {e}")))
}

/// The literal order-9 symmetric Butson matrix over the cube roots of
/// unity used by the 4-class scheme rows.
pub fn bh9_figure1() -> Result<ExactMatrix> {
    const ROWS: [[&str; 9]; 9] = [
        ["1", "1", "1", "w2", "1", "w", "w2", "w", "1"],
        ["1", "1", "1", "w", "w2", "1", "1", "w2", "w"],
        ["1", "1", "1", "1", "w", "w2", "w", "1", "w2"],
        ["w2", "w", "1", "1", "1", "1", "w2", "1", "w"],
        ["1", "w2", "w", "1", "1", "1", "w", "w2", "1"],
        ["w", "1", "w2", "1", "1", "1", "1", "w", "w2"],
        ["w2", "1", "w", "w2", "w", "1", "1", "1", "1"],
        ["w", "w2", "1", "1", "w2", "w", "1", "1", "1"],
        ["1", "w", "w2", "w", "1", "w2", "1", "1", "1"],
    ];
    let h = ExactMatrix::from_fn(9, |i, j| {
        crate::scalar::parse_scalar(ROWS[i][j]).expect("fixed tokens parse")
    });
    validate_butson(&h, "bh9_figure1")?;
    h.check_symmetry(Symmetry::Symmetric)
        .map_err(|e| Error::validator(format!("bh9_figure1: {e}")))?;
    h.with_symmetry(Symmetry::Symmetric)
        .map_err(|e| Error::validator(format!("bh9_figure1: {e}")))
}

/// Hermitian order-9 Butson matrix over the cube roots of unity, with
/// rows and columns indexed by pairs (a,b) over Z/3 and entry
/// w^((a-c)(b+d)). Pinned to the spectrum (x-3)^6 (x+3)^3.
pub fn hermitian_bh9() -> Result<ExactMatrix> {
    let w = Scalar::omega();
    let h = ExactMatrix::from_fn(9, |row, col| {
        let (a, b) = ((row / 3) as i64, (row % 3) as i64);
        let (c, d) = ((col / 3) as i64, (col % 3) as i64);
        let e = ((a - c) * (b + d)).rem_euclid(3);
        w.pow(e as u32)
    });
    validate_butson(&h, "hermitian_bh9")?;
    h.check_symmetry(Symmetry::Hermitian)
        .map_err(|e| Error::validator(format!("hermitian_bh9: {e}")))?;
    let three = Scalar::from_int(3);
    let expect = Poly::x_minus(&three)
        .pow(6)
        .mul(&Poly::x_minus(&(-three)).pow(3));
    if charpoly(&h) != expect {
        return Err(Error::validator(
            "hermitian_bh9: spectrum is not (x-3)^6 (x+3)^3",
        ));
    }
    h.with_symmetry(Symmetry::Hermitian)
        .map_err(|e| Error::validator(format!("hermitian_bh9: {e}")))
}

fn validate_butson(h: &ExactMatrix, what: &str) -> Result<()> {
    let n = h.order();
    let allowed = [Scalar::one(), Scalar::omega(), Scalar::omega2()];
    for i in 0..n {
        for j in 0..n {
            if !allowed.contains(h.at(i, j)) {
                return Err(Error::validator(format!(
                    "{what}: entry {} is not a cube root of unity",
                    h.at(i, j)
                )));
            }
        }
    }
    let product = h.matmul(&h.conj_transpose());
    if product != ExactMatrix::identity(n).scale(&Scalar::from_int(n as i64)) {
        return Err(Error::validator(format!("{what}: H*H^* != {n}I")));
    }
    Ok(())
}

/// Seidel matrix of the 64 Hoggar lines. The fiducial is kept as the
/// Gaussian-integer vector (-1+2i, 1, .., 1) (the radical of the usual
/// normalization cancels in every inner product), transported by the
/// tensor products of the two real Pauli involutions; the Seidel entry is
/// the quarter inner product.
pub fn hoggar_seidel() -> Result<ExactMatrix> {
    let x = [[0i64, 1], [1, 0]];
    let y = [[1i64, 0], [0, -1]];
    let id = [[1i64, 0], [0, 1]];
    let mul2 = |a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]| {
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    };
    let factor = |bits: (bool, bool)| {
        let mut m = id;
        if bits.0 {
            m = mul2(&m, &x);
        }
        if bits.1 {
            m = mul2(&m, &y);
        }
        m
    };
    // Fiducial with components (re, im).
    let mut vectors: Vec<[(i64, i64); 8]> = Vec::with_capacity(64);
    let fiducial: [(i64, i64); 8] = [
        (-1, 2),
        (1, 0),
        (1, 0),
        (1, 0),
        (1, 0),
        (1, 0),
        (1, 0),
        (1, 0),
    ];
    for k in 0u32..64 {
        let bit = |b: u32| k >> (5 - b) & 1 == 1;
        let f1 = factor((bit(0), bit(1)));
        let f2 = factor((bit(2), bit(3)));
        let f3 = factor((bit(4), bit(5)));
        // Row vector times the triple tensor product.
        let mut out = [(0i64, 0i64); 8];
        for (col, slot) in out.iter_mut().enumerate() {
            let (c1, c2, c3) = (col >> 2 & 1, col >> 1 & 1, col & 1);
            for (row, &(re, im)) in fiducial.iter().enumerate() {
                let (r1, r2, r3) = (row >> 2 & 1, row >> 1 & 1, row & 1);
                let coeff = f1[r1][c1] * f2[r2][c2] * f3[r3][c3];
                if coeff != 0 {
                    slot.0 += coeff * re;
                    slot.1 += coeff * im;
                }
            }
        }
        vectors.push(out);
    }
    // Quarter Hermitian inner products. Diagonal dots must equal 12.
    for (k, v) in vectors.iter().enumerate() {
        let norm: i64 = v.iter().map(|&(re, im)| re * re + im * im).sum();
        if norm != 12 {
            return Err(Error::validator(format!(
                "hoggar_seidel: vector {k} has squared length {norm}, expected 12"
            )));
        }
    }
    let s = ExactMatrix::from_fn(64, |k, l| {
        if k == l {
            return Scalar::zero();
        }
        let (mut re, mut im) = (0i64, 0i64);
        for (&(ar, ai), &(br, bi)) in vectors[k].iter().zip(&vectors[l]) {
            // a * conj(b)
            re += ar * br + ai * bi;
            im += ai * br - ar * bi;
        }
        debug_assert!(re % 4 == 0 && im % 4 == 0);
        &Scalar::from_int(re / 4) + &(&Scalar::from_int(im / 4) * &Scalar::i())
    });
    let mut allowed = vec![Scalar::zero()];
    for unit in [Scalar::one(), Scalar::i()] {
        allowed.push(unit.clone());
        allowed.push(-&unit);
    }
    for k in 0..64 {
        for l in 0..64 {
            if !allowed.contains(s.at(k, l)) {
                return Err(Error::validator(format!(
                    "hoggar_seidel: entry {} out of range at ({},{})",
                    s.at(k, l),
                    k + 1,
                    l + 1
                )));
            }
        }
    }
    s.with_symmetry(Symmetry::Hermitian)
        .map_err(|e| Error::validator(format!("hoggar_seidel: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_has_240_roots_with_small_gram_entries() {
        let g = e8_gram().unwrap();
        assert_eq!(g.order(), 240);
        assert_eq!(*g.at(0, 0), Scalar::from_int(2));
    }

    #[test]
    fn butson_matrices_validate() {
        let h = bh9_figure1().unwrap();
        assert_eq!(h.order(), 9);
        let hh = hermitian_bh9().unwrap();
        assert_eq!(hh.order(), 9);
        // The two order-9 matrices are genuinely different objects.
        assert!(h != hh);
    }

    #[test]
    fn mub_gram_diagonal_and_order() {
        let g = mub_gram().unwrap();
        assert_eq!(g.order(), 80);
        assert!(g.at(5, 5).is_one());
    }

    #[test]
    fn hoggar_entries_are_fourth_roots_or_zero() {
        let s = hoggar_seidel().unwrap();
        assert_eq!(s.order(), 64);
        assert!(s.at(0, 0).is_zero());
    }
}
