//! Exact arithmetic in the cyclotomic field Q(zeta_12).
//!
//! Every scalar the library touches lives in one field: the rationals,
//! the Gaussian rationals (through `i`), and the Eisenstein rationals
//! (through `w`, a primitive cube root of unity) all embed in Q(zeta),
//! where `zeta` is a primitive 12th root of unity with minimal polynomial
//! zeta^4 = zeta^2 - 1.
//!
//! A [`Scalar`] stores four arbitrary-precision integer coordinates
//! `(c0, c1, c2, c3)` for `c0 + c1*zeta + c2*zeta^2 + c3*zeta^3` over a
//! positive denominator, kept in canonical reduced form: the denominator
//! is positive and coprime to the gcd of the coordinates. Canonical form
//! makes structural equality agree with field equality, so scalars can be
//! used directly as map keys.
//!
//! The embeddings used throughout are `i = zeta^3` and `w = zeta^2 - 1`,
//! which satisfy `i^2 = -1` and `w^2 + w + 1 = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An element of Q(zeta_12) in canonical reduced form.
#[derive(Clone, Debug)]
pub struct Scalar {
    /// Coordinates of `c0 + c1*zeta + c2*zeta^2 + c3*zeta^3`.
    num: [BigInt; 4],
    /// Positive denominator, coprime to gcd(c0, c1, c2, c3).
    den: BigUint,
}

impl Scalar {
    fn make(num: [BigInt; 4], den: BigUint) -> Self {
        let mut s = Scalar { num, den };
        s.reduce();
        s
    }

    /// Divide through by gcd(den, c0, ..., c3) to restore canonical form.
    fn reduce(&mut self) {
        debug_assert!(!self.den.is_zero());
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c.magnitude());
        }
        if !g.is_one() {
            let gi = BigInt::from(g.clone());
            for c in &mut self.num {
                *c /= &gi;
            }
            self.den /= &g;
        }
    }

    pub fn zero() -> Self {
        Scalar {
            num: [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            den: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit `i = zeta^3`.
    pub fn i() -> Self {
        Scalar {
            num: [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::one()],
            den: BigUint::one(),
        }
    }

    /// The primitive cube root of unity `w = zeta^2 - 1`.
    pub fn omega() -> Self {
        Scalar {
            num: [BigInt::from(-1), BigInt::zero(), BigInt::one(), BigInt::zero()],
            den: BigUint::one(),
        }
    }

    /// The other primitive cube root of unity `w^2 = -zeta^2`.
    pub fn omega2() -> Self {
        Scalar {
            num: [BigInt::zero(), BigInt::zero(), BigInt::from(-1), BigInt::zero()],
            den: BigUint::one(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar {
            num: [BigInt::from(v), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            den: BigUint::one(),
        }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Scalar {
            num: [v, BigInt::zero(), BigInt::zero(), BigInt::zero()],
            den: BigUint::one(),
        }
    }

    pub fn from_biguint(v: BigUint) -> Self {
        Scalar::from_bigint(BigInt::from(v))
    }

    /// The rational `p / q`. Panics if `q == 0`.
    pub fn rational(p: i64, q: u64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::make(
            [BigInt::from(p), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            BigUint::from(q),
        )
    }

    /// Build from raw basis coordinates and a denominator.
    pub fn from_parts(num: [BigInt; 4], den: BigUint) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::make(num, den))
    }

    pub fn coordinates(&self) -> (&[BigInt; 4], &BigUint) {
        (&self.num, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(BigInt::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.num[0].is_one()
            && self.num[1].is_zero()
            && self.num[2].is_zero()
            && self.num[3].is_zero()
    }

    /// True when the value lies in Q (no zeta component).
    pub fn is_rational(&self) -> bool {
        self.num[1].is_zero() && self.num[2].is_zero() && self.num[3].is_zero()
    }

    /// The value as a ratio `(numerator, denominator)` when rational.
    pub fn as_rational(&self) -> Option<(&BigInt, &BigUint)> {
        if self.is_rational() {
            Some((&self.num[0], &self.den))
        } else {
            None
        }
    }

    /// The value as an integer when it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.is_rational() && self.den.is_one() {
            Some(&self.num[0])
        } else {
            None
        }
    }

    /// True when the value is fixed by complex conjugation, i.e. lies in
    /// the real subfield Q(sqrt 3).
    pub fn is_real(&self) -> bool {
        // conj fixes exactly the elements with c2 = 0 and c1 = -2*c3.
        self.num[2].is_zero() && self.num[1] == -(&self.num[3]) * 2
    }

    /// True for real values `>= 0`. Real values have the form
    /// `(r - t*sqrt(3)) / den` with `r = c0`, `t = c3`.
    pub fn is_nonneg_real(&self) -> bool {
        if !self.is_real() {
            return false;
        }
        let r = &self.num[0];
        let t = &self.num[3];
        // r >= t*sqrt(3), decided by sign analysis and squaring.
        match (r.sign(), t.sign()) {
            (Sign::NoSign, Sign::NoSign) => true,
            (Sign::Minus, Sign::Plus) | (Sign::Minus, Sign::NoSign) => false,
            (Sign::Plus, Sign::Minus) | (Sign::Plus, Sign::NoSign) | (Sign::NoSign, Sign::Minus) => true,
            (Sign::Plus, Sign::Plus) => r * r >= t * t * 3,
            (Sign::Minus, Sign::Minus) => r * r <= t * t * 3,
            (Sign::NoSign, Sign::Plus) => false,
        }
    }

    /// Complex conjugation, the automorphism `zeta -> 1/zeta`.
    pub fn conj(&self) -> Self {
        let [a0, a1, a2, a3] = &self.num;
        Scalar {
            num: [a0 + a2, a1.clone(), -a2, -a1 - a3],
            den: self.den.clone(),
        }
    }

    /// The automorphism `zeta -> zeta^5`.
    fn sigma5(&self) -> Self {
        let [a0, a1, a2, a3] = &self.num;
        Scalar {
            num: [a0 + a2, -a1, -a2, a1 + a3],
            den: self.den.clone(),
        }
    }

    /// The automorphism `zeta -> zeta^7 = -zeta`.
    fn sigma7(&self) -> Self {
        let [a0, a1, a2, a3] = &self.num;
        Scalar {
            num: [a0.clone(), -a1, a2.clone(), -a3],
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut lead = BigInt::from(self.den.clone());
            if self.num[0].is_negative() {
                lead = -lead;
            }
            let den = self.num[0].magnitude().clone();
            let num = [lead, BigInt::zero(), BigInt::zero(), BigInt::zero()];
            return Ok(Scalar::make(num, den));
        }
        // 1/x = (product of the three other Galois conjugates) / norm.
        let y = mul_raw(&mul_raw(&self.sigma5().num, &self.sigma7().num), &self.conj().num);
        let norm = mul_raw(&self.num, &y);
        debug_assert!(
            norm[1].is_zero() && norm[2].is_zero() && norm[3].is_zero(),
            "field norm must be rational"
        );
        // x = u/d with u integral, so 1/x = d * conj-product(u) / N(u).
        let d = BigInt::from(self.den.clone());
        let mut num = y.map(|c| c * &d);
        let den = norm[0].magnitude().clone();
        if norm[0].is_negative() {
            for c in &mut num {
                *c = -std::mem::take(c);
            }
        }
        Ok(Scalar::make(num, den))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Self, Error> {
        Ok(self * &rhs.inv()?)
    }

    /// `x * conj(x)`, the squared modulus; always a nonnegative real value.
    pub fn norm_sq(&self) -> Scalar {
        self * &self.conj()
    }

    /// Integer power with nonnegative exponent.
    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

/// Multiply two coordinate vectors, reducing powers by zeta^4 = zeta^2 - 1.
fn mul_raw(a: &[BigInt; 4], b: &[BigInt; 4]) -> [BigInt; 4] {
    let mut d = [
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
    ];
    for i in 0..4 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            if b[j].is_zero() {
                continue;
            }
            d[i + j] += &a[i] * &b[j];
        }
    }
    // zeta^4 = zeta^2 - 1, zeta^5 = zeta^3 - zeta, zeta^6 = -1.
    let [d0, d1, d2, d3, d4, d5, d6] = d;
    [d0 - &d4 - d6, d1 - &d5, d2 + d4, d3 + d5]
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.den == rhs.den {
            let num = [
                &self.num[0] + &rhs.num[0],
                &self.num[1] + &rhs.num[1],
                &self.num[2] + &rhs.num[2],
                &self.num[3] + &rhs.num[3],
            ];
            return Scalar::make(num, self.den.clone());
        }
        let ld = BigInt::from(self.den.clone());
        let rd = BigInt::from(rhs.den.clone());
        let num = [
            &self.num[0] * &rd + &rhs.num[0] * &ld,
            &self.num[1] * &rd + &rhs.num[1] * &ld,
            &self.num[2] * &rd + &rhs.num[2] * &ld,
            &self.num[3] * &rd + &rhs.num[3] * &ld,
        ];
        Scalar::make(num, &self.den * &rhs.den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let den = &self.den * &rhs.den;
        if self.is_rational() {
            let num = rhs.num.clone().map(|c| c * &self.num[0]);
            return Scalar::make(num, den);
        }
        if rhs.is_rational() {
            let num = self.num.clone().map(|c| c * &rhs.num[0]);
            return Scalar::make(num, den);
        }
        Scalar::make(mul_raw(&self.num, &rhs.num), den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: [-&self.num[0], -&self.num[1], -&self.num[2], -&self.num[3]],
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.map(|c| -c),
            den: self.den,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        (&self).add(&rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        (&self).sub(&rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        (&self).mul(&rhs)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

/// A deterministic total order: rationals first in numeric order, then
/// the remaining values lexicographically by coordinates. Used to key
/// spectrum maps and to sort report rows reproducibly.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => {
                let lhs = &self.num[0] * BigInt::from(other.den.clone());
                let rhs = &other.num[0] * BigInt::from(self.den.clone());
                lhs.cmp(&rhs)
            }
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => (&self.num, &self.den).cmp(&(&other.num, &other.den)),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_scalar(self))
    }
}

/// Render a scalar as the shortest token that parses back to it.
///
/// Rationals print as `n` or `n/d`; pure multiples of `i`, `w`, `w2` use
/// those suffixes (`i/2`, `-3w`, `9w2`); everything else falls back to the
/// explicit basis form `poly:(c0,c1,c2,c3)/d`.
pub fn render_scalar(x: &Scalar) -> String {
    let (num, den) = (&x.num, &x.den);
    let with_den = |body: String| -> String {
        if den.is_one() {
            body
        } else {
            format!("{body}/{den}")
        }
    };
    let coeff_body = |c: &BigInt, unit: &str| -> String {
        if c.is_one() {
            unit.to_string()
        } else if (-c).is_one() {
            format!("-{unit}")
        } else {
            format!("{c}{unit}")
        }
    };
    if x.is_rational() {
        return with_den(num[0].to_string());
    }
    if num[0].is_zero() && num[1].is_zero() && num[2].is_zero() {
        return with_den(coeff_body(&num[3], "i"));
    }
    if num[1].is_zero() && num[3].is_zero() {
        if num[2] == -(&num[0]) {
            // c*w with w = (-1, 0, 1, 0)
            return with_den(coeff_body(&num[2], "w"));
        }
        if num[0].is_zero() {
            // c*w2 with w2 = (0, 0, -1, 0)
            return with_den(coeff_body(&(-&num[2]), "w2"));
        }
    }
    format!("poly:({},{},{},{})/{}", num[0], num[1], num[2], num[3], den)
}

/// Parse a scalar token. Accepts everything `render_scalar` produces.
pub fn parse_scalar(token: &str) -> Result<Scalar, Error> {
    let token = token.trim();
    if token.is_empty() {
        return Err(Error::parse("empty scalar token"));
    }
    if let Some(rest) = token.strip_prefix("poly:") {
        return parse_poly(rest, token);
    }
    let (negate, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let (mantissa, den) = match body.split_once('/') {
        Some((m, d)) => {
            let den: BigUint = d
                .parse()
                .map_err(|_| Error::parse(format!("bad denominator in `{token}`")))?;
            if den.is_zero() {
                return Err(Error::parse(format!("zero denominator in `{token}`")));
            }
            (m, den)
        }
        None => (body, BigUint::one()),
    };
    // Split a digit prefix from a unit suffix: "", "i", "w", "w2".
    let split = mantissa
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(mantissa.len());
    let (digits, unit) = mantissa.split_at(split);
    let coeff: BigInt = if digits.is_empty() {
        if unit.is_empty() {
            return Err(Error::parse(format!("malformed scalar token `{token}`")));
        }
        BigInt::one()
    } else {
        digits
            .parse()
            .map_err(|_| Error::parse(format!("bad number in `{token}`")))?
    };
    let num = match unit {
        "" => [coeff, BigInt::zero(), BigInt::zero(), BigInt::zero()],
        "i" => [BigInt::zero(), BigInt::zero(), BigInt::zero(), coeff],
        "w" => [-&coeff, BigInt::zero(), coeff, BigInt::zero()],
        "w2" => [BigInt::zero(), BigInt::zero(), -coeff, BigInt::zero()],
        other => {
            return Err(Error::parse(format!(
                "unknown unit `{other}` in scalar token `{token}`"
            )))
        }
    };
    let value = Scalar::make(num, den);
    Ok(if negate { -value } else { value })
}

fn parse_poly(rest: &str, token: &str) -> Result<Scalar, Error> {
    let bad = || Error::parse(format!("malformed poly token `{token}`"));
    let rest = rest.strip_prefix('(').ok_or_else(bad)?;
    let (coeffs, tail) = rest.split_once(')').ok_or_else(bad)?;
    let parts: Vec<&str> = coeffs.split(',').collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let mut num = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (slot, part) in num.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| bad())?;
    }
    let den: BigUint = match tail.strip_prefix('/') {
        Some(d) => {
            let den = d.parse().map_err(|_| bad())?;
            if den == BigUint::zero() {
                return Err(Error::parse(format!("zero denominator in `{token}`")));
            }
            den
        }
        None if tail.is_empty() => BigUint::one(),
        None => return Err(bad()),
    };
    Ok(Scalar::make(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(token: &str) -> Scalar {
        parse_scalar(token).unwrap()
    }

    #[test]
    fn defining_relations() {
        let i = Scalar::i();
        let w = Scalar::omega();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        assert_eq!(&w * &Scalar::omega2(), Scalar::one());
        assert_eq!(&(&w * &w) + &(&w + &Scalar::one()), Scalar::zero());
    }

    #[test]
    fn conjugation_on_roots_of_unity() {
        assert_eq!(Scalar::omega().conj(), Scalar::omega2());
        assert_eq!(Scalar::i().conj(), -Scalar::i());
        let x = s("poly:(2,3,-1,5)/7");
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn inverse_round_trips() {
        for tok in ["2", "-1/2", "i", "w", "w2", "poly:(1,2,3,4)/5", "poly:(0,1,0,-1)/3"] {
            let x = s(tok);
            let y = x.inv().unwrap();
            assert_eq!(&x * &y, Scalar::one(), "inv failed for {tok}");
        }
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn canonical_reduction() {
        let x = Scalar::from_parts(
            [BigInt::from(2), BigInt::from(4), BigInt::from(-6), BigInt::zero()],
            BigUint::from(8u32),
        )
        .unwrap();
        let (num, den) = x.coordinates();
        assert_eq!(num[0], BigInt::from(1));
        assert_eq!(num[1], BigInt::from(2));
        assert_eq!(num[2], BigInt::from(-3));
        assert_eq!(*den, BigUint::from(4u32));
    }

    #[test]
    fn render_shorthands() {
        assert_eq!(render_scalar(&Scalar::zero()), "0");
        assert_eq!(render_scalar(&Scalar::from_int(-2)), "-2");
        assert_eq!(render_scalar(&Scalar::rational(1, 2)), "1/2");
        assert_eq!(render_scalar(&Scalar::i()), "i");
        assert_eq!(render_scalar(&(-Scalar::i())), "-i");
        assert_eq!(render_scalar(&Scalar::rational(1, 2).mul(Scalar::i())), "i/2");
        assert_eq!(render_scalar(&Scalar::omega()), "w");
        assert_eq!(render_scalar(&Scalar::omega2()), "w2");
        assert_eq!(render_scalar(&(-Scalar::omega2())), "-w2");
        assert_eq!(
            render_scalar(&(Scalar::from_int(3) * Scalar::omega())),
            "3w"
        );
        assert_eq!(render_scalar(&s("poly:(0,0,0,1)/1")), "i");
        let mixed = &Scalar::one() + &Scalar::i();
        assert_eq!(render_scalar(&mixed), "poly:(1,0,0,1)/1");
    }

    #[test]
    fn parse_accepts_spec_tokens() {
        for tok in ["0", "1", "-1", "2", "-2", "1/2", "-1/2", "i", "-i", "i/2", "-i/2", "w", "w2", "-w", "-w2"] {
            let x = s(tok);
            assert_eq!(render_scalar(&x), tok, "round trip of shorthand {tok}");
        }
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("x7").is_err());
        assert!(parse_scalar("poly:(1,2)/3").is_err());
        assert!(parse_scalar("1/0").is_err());
    }

    #[test]
    fn w2_equals_conj_w() {
        assert_eq!(s("w2"), Scalar::omega().conj());
        assert_eq!(s("w2"), &(-Scalar::one()) - &Scalar::omega());
    }

    #[test]
    fn ordering_is_numeric_on_rationals() {
        let mut vals = [s("5"), s("-3"), s("1/2"), s("0"), s("-9/2")];
        vals.sort();
        let rendered: Vec<String> = vals.iter().map(render_scalar).collect();
        assert_eq!(rendered, ["-9/2", "-3", "0", "1/2", "5"]);
    }

    #[test]
    fn real_subfield_detection() {
        // 2*zeta - zeta^3 = sqrt(3) is real and positive.
        let sqrt3 = Scalar::make(
            [BigInt::zero(), BigInt::from(2), BigInt::zero(), BigInt::from(-1)],
            BigUint::one(),
        );
        assert!(sqrt3.is_real());
        assert!(sqrt3.is_nonneg_real());
        assert_eq!(&sqrt3 * &sqrt3, Scalar::from_int(3));
        assert!((-&sqrt3).is_real());
        assert!(!(-&sqrt3).is_nonneg_real());
        // 2 - sqrt(3) > 0 > 1 - sqrt(3).
        assert!((&Scalar::from_int(2) - &sqrt3).is_nonneg_real());
        assert!(!(&Scalar::from_int(1) - &sqrt3).is_nonneg_real());
        assert!(!Scalar::i().is_real());
    }

    #[test]
    fn norms_are_nonneg_real() {
        for tok in ["0", "-7/3", "i", "w", "poly:(1,-2,3,4)/5"] {
            let x = s(tok);
            assert!(x.norm_sq().is_nonneg_real(), "norm of {tok}");
        }
        // Norms are rational on the Gaussian and Eisenstein subfields.
        let g = &Scalar::from_int(3) + &(Scalar::from_int(2) * Scalar::i());
        assert_eq!(g.norm_sq(), Scalar::from_int(13));
        let e = &Scalar::from_int(1) - &Scalar::omega();
        assert_eq!(e.norm_sq(), Scalar::from_int(3));
    }
}
