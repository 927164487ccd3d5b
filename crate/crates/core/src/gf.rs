//! Finite fields F_q for odd prime powers q, realized as F_p[x]/(f) with
//! a fixed table of irreducible polynomials for q <= 128.

use crate::error::{Error, Result};

/// `q = p^m` factored, when `q` is a prime power.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0u64;
    let mut n = q;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1));
    }
    let mut m = 0u32;
    while n % p == 0 {
        n /= p;
        m += 1;
    }
    if n == 1 {
        Some((p, m))
    } else {
        None
    }
}

pub fn is_prime(q: u64) -> bool {
    matches!(factor_prime_power(q), Some((_, 1)))
}

/// Monic irreducible moduli (ascending coefficients) for the prime powers
/// the Paley catalog needs.
const IRREDUCIBLES: &[(u64, u32, &[u64])] = &[
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
];

const MAX_DEG: usize = 4;

/// Arithmetic in F_q. Elements are coefficient vectors of length `m`
/// packed into a fixed array, enumerated by index as base-p digit strings.
#[derive(Clone, Debug)]
pub struct Fq {
    pub q: u64,
    p: u64,
    m: usize,
    modulus: [u64; MAX_DEG + 1],
}

pub type Elem = [u64; MAX_DEG];

impl Fq {
    pub fn new(q: u64) -> Result<Fq> {
        let (p, m) = factor_prime_power(q)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        let mut modulus = [0u64; MAX_DEG + 1];
        if m == 1 {
            modulus[1] = 1;
            return Ok(Fq { q, p, m: 1, modulus });
        }
        let coeffs = IRREDUCIBLES
            .iter()
            .find(|&&(tp, tm, _)| tp == p && tm == m)
            .map(|&(_, _, c)| c)
            .ok_or_else(|| {
                Error::invalid(format!("no modulus tabulated for q = {p}^{m}"))
            })?;
        for (slot, &c) in modulus.iter_mut().zip(coeffs) {
            *slot = c;
        }
        Ok(Fq {
            q,
            p,
            m: m as usize,
            modulus,
        })
    }

    pub fn zero(&self) -> Elem {
        [0; MAX_DEG]
    }

    pub fn element(&self, index: u64) -> Elem {
        debug_assert!(index < self.q);
        let mut e = [0u64; MAX_DEG];
        let mut rest = index;
        for slot in e.iter_mut().take(self.m) {
            *slot = rest % self.p;
            rest /= self.p;
        }
        e
    }

    pub fn index(&self, e: &Elem) -> u64 {
        let mut acc = 0u64;
        for d in (0..self.m).rev() {
            acc = acc * self.p + e[d];
        }
        acc
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        e[..self.m].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = [0u64; MAX_DEG];
        for i in 0..self.m {
            out[i] = (a[i] + b[i]) % self.p;
        }
        out
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = [0u64; MAX_DEG];
        for i in 0..self.m {
            out[i] = (a[i] + self.p - b[i]) % self.p;
        }
        out
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        // Schoolbook product then reduction by the monic modulus.
        let mut raw = [0u64; 2 * MAX_DEG];
        for i in 0..self.m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.m {
                raw[i + j] = (raw[i + j] + a[i] * b[j]) % self.p;
            }
        }
        for d in (self.m..2 * self.m - 1).rev() {
            let lead = raw[d];
            if lead == 0 {
                continue;
            }
            raw[d] = 0;
            let shift = d - self.m;
            for i in 0..self.m {
                let sub = lead * self.modulus[i] % self.p;
                raw[shift + i] = (raw[shift + i] + self.p - sub) % self.p;
            }
        }
        let mut out = [0u64; MAX_DEG];
        out[..self.m].copy_from_slice(&raw[..self.m]);
        out
    }

    pub fn pow(&self, base: &Elem, mut e: u64) -> Elem {
        let mut acc = self.element(1);
        let mut b = *base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Euler criterion; zero is not a square here.
    pub fn is_nonzero_square(&self, e: &Elem) -> bool {
        if self.is_zero(e) {
            return false;
        }
        let power = self.pow(e, (self.q - 1) / 2);
        self.index(&power) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_factoring() {
        assert_eq!(factor_prime_power(9), Some((3, 2)));
        assert_eq!(factor_prime_power(27), Some((3, 3)));
        assert_eq!(factor_prime_power(7), Some((7, 1)));
        assert_eq!(factor_prime_power(12), None);
        assert_eq!(factor_prime_power(1), None);
        assert!(is_prime(23));
        assert!(!is_prime(25));
    }

    #[test]
    fn tabulated_fields_have_no_zero_divisors() {
        for q in [9u64, 25, 27, 49, 81, 121] {
            let f = Fq::new(q).unwrap();
            for i in 1..q {
                let a = f.element(i);
                for j in 1..q {
                    let b = f.element(j);
                    assert!(
                        !f.is_zero(&f.mul(&a, &b)),
                        "zero divisor in F_{q}: {i} * {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn multiplicative_order_divides_q_minus_one() {
        for q in [9u64, 27, 25, 49] {
            let f = Fq::new(q).unwrap();
            for i in 1..q {
                let a = f.element(i);
                let power = f.pow(&a, q - 1);
                assert_eq!(f.index(&power), 1, "x^(q-1) != 1 in F_{q} at {i}");
            }
        }
    }

    #[test]
    fn square_counts() {
        for q in [7u64, 9, 11, 13, 25, 27] {
            let f = Fq::new(q).unwrap();
            let squares = (1..q).filter(|&i| f.is_nonzero_square(&f.element(i))).count();
            assert_eq!(squares as u64, (q - 1) / 2, "square count in F_{q}");
        }
    }

    #[test]
    fn minus_one_square_iff_q_mod_4_is_1() {
        for q in [5u64, 9, 13, 25, 7, 11, 27, 23] {
            let f = Fq::new(q).unwrap();
            let minus_one = f.sub(&f.zero(), &f.element(1));
            assert_eq!(f.is_nonzero_square(&minus_one), q % 4 == 1, "q={q}");
        }
    }

    #[test]
    fn unknown_prime_power_is_rejected() {
        assert!(Fq::new(128).is_err());
        assert!(Fq::new(12).is_err());
    }
}
