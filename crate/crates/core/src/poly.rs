//! Polynomials over Q(zeta_12) and exact characteristic polynomials.
//!
//! `charpoly` runs Faddeev-LeVerrier over the field; the divisions by the
//! step index are exact in characteristic zero. `charpoly_prefix` computes
//! only the leading coefficients from power-sum traces via the Newton
//! identities, which is what the coefficient functionals need on large
//! matrices where the full O(n^4) recursion would be wasteful. Both routes
//! are pinned against each other and against explicit minor sums in tests.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

/// Dense polynomial, coefficients ascending by power. The zero polynomial
/// has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly { coeffs: vec![c] }.trimmed()
    }

    /// The monomial `x - c`.
    pub fn x_minus(c: &Scalar) -> Self {
        Poly {
            coeffs: vec![-c, Scalar::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        Poly { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> Scalar {
        self.coeffs.get(j).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect();
        Poly { coeffs }.trimmed()
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly { coeffs }.trimmed()
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::constant(Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `p(a*x + b)`.
    pub fn compose_linear(&self, a: &Scalar, b: &Scalar) -> Poly {
        let inner = Poly::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&Poly::constant(c.clone()));
        }
        acc
    }
}

/// Exact characteristic polynomial `det(xI - A)`, monic of degree n, by
/// the Faddeev-LeVerrier recursion.
pub fn charpoly(a: &ExactMatrix) -> Poly {
    let n = a.order();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    if n == 0 {
        return Poly::from_coeffs(coeffs);
    }
    let mut m = a.clone();
    let mut c = -m.trace();
    coeffs[n - 1] = c.clone();
    for k in 2..=n {
        m = a.matmul(&m.add_scalar_diag(&c));
        c = (-m.trace())
            .div(&Scalar::from_int(k as i64))
            .expect("k is nonzero");
        coeffs[n - k] = c.clone();
    }
    Poly::from_coeffs(coeffs)
}

/// The first `k+1` coefficients of `det(xI - A)`: entry `j` is the
/// coefficient of `x^(n-j)`, for `j` in `0..=k`. Computed from traces of
/// matrix powers with the Newton identities.
pub fn charpoly_prefix(a: &ExactMatrix, k: usize) -> Result<Vec<Scalar>> {
    let n = a.order();
    if k > n {
        return Err(Error::invalid(format!(
            "requested {k} leading coefficients of a degree {n} polynomial"
        )));
    }
    if k > 5 {
        // Rare path; fall back to the full recursion.
        let p = charpoly(a);
        return Ok((0..=k).map(|j| p.coeff(n - j)).collect());
    }
    let power_sums = power_traces(a, k);
    // Newton: j*e_j = sum_{i=1..j} (-1)^(i-1) e_{j-i} p_i.
    let mut elem = vec![Scalar::one()];
    for j in 1..=k {
        let mut acc = Scalar::zero();
        for i in 1..=j {
            let term = &elem[j - i] * &power_sums[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        elem.push(acc.div(&Scalar::from_int(j as i64)).expect("j is nonzero"));
    }
    Ok(elem
        .into_iter()
        .enumerate()
        .map(|(j, e)| if j % 2 == 0 { e } else { -e })
        .collect())
}

/// Traces of A^1 .. A^k for k <= 5 using at most two matrix products.
fn power_traces(a: &ExactMatrix, k: usize) -> Vec<Scalar> {
    let n = a.order();
    let mut out = Vec::with_capacity(k);
    if k == 0 {
        return out;
    }
    out.push(a.trace());
    if k == 1 {
        return out;
    }
    let mut tr2 = Scalar::zero();
    for i in 0..n {
        for j in 0..n {
            let x = a.at(i, j);
            if x.is_zero() {
                continue;
            }
            tr2 = &tr2 + &(x * a.at(j, i));
        }
    }
    out.push(tr2);
    if k == 2 {
        return out;
    }
    let a2 = a.matmul(a);
    let mut tr3 = Scalar::zero();
    for i in 0..n {
        for j in 0..n {
            let x = a2.at(i, j);
            if x.is_zero() {
                continue;
            }
            tr3 = &tr3 + &(x * a.at(j, i));
        }
    }
    out.push(tr3);
    if k == 3 {
        return out;
    }
    let mut tr4 = Scalar::zero();
    for i in 0..n {
        for j in 0..n {
            let x = a2.at(i, j);
            if x.is_zero() {
                continue;
            }
            tr4 = &tr4 + &(x * a2.at(j, i));
        }
    }
    out.push(tr4);
    if k == 4 {
        return out;
    }
    let a3 = a2.matmul(a);
    let mut tr5 = Scalar::zero();
    for i in 0..n {
        for j in 0..n {
            let x = a2.at(i, j);
            if x.is_zero() {
                continue;
            }
            tr5 = &tr5 + &(x * a3.at(j, i));
        }
    }
    out.push(tr5);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_identity() {
        let p = charpoly(&ExactMatrix::identity(3));
        // (x-1)^3
        let expect = Poly::x_minus(&Scalar::one()).pow(3);
        assert_eq!(p, expect);
    }

    #[test]
    fn charpoly_rotation() {
        let m = ExactMatrix::from_int_fn(2, |i, j| match (i, j) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        });
        // x^2 + 1
        assert_eq!(
            charpoly(&m),
            Poly::from_coeffs(vec![Scalar::one(), Scalar::zero(), Scalar::one()])
        );
    }

    #[test]
    fn constant_term_is_signed_determinant() {
        let mut state = 12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) % 5) as i64 - 2
        };
        for n in 2..=6 {
            let m = ExactMatrix::from_int_fn(n, |_, _| next());
            let p = charpoly(&m);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(p.coeff(0), &Scalar::from_int(sign) * &m.det());
            assert_eq!(p.coeff(n), Scalar::one());
        }
    }

    #[test]
    fn prefix_agrees_with_full_recursion() {
        let mut state = 98765u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) % 3) as i64 - 1
        };
        for n in [5usize, 8, 12] {
            let m = ExactMatrix::from_int_fn(n, |_, _| next());
            let p = charpoly(&m);
            let prefix = charpoly_prefix(&m, 5).unwrap();
            for (j, c) in prefix.iter().enumerate() {
                assert_eq!(*c, p.coeff(n - j), "coefficient {j} of order {n}");
            }
        }
    }

    #[test]
    fn compose_linear_shifts() {
        // p = x^2, p(x - 3) = x^2 - 6x + 9.
        let p = Poly::from_coeffs(vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        let shifted = p.compose_linear(&Scalar::one(), &Scalar::from_int(-3));
        assert_eq!(
            shifted,
            Poly::from_coeffs(vec![
                Scalar::from_int(9),
                Scalar::from_int(-6),
                Scalar::one()
            ])
        );
        assert_eq!(shifted.eval(&Scalar::from_int(3)), Scalar::zero());
    }
}
