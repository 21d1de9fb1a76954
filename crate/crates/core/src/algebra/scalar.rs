//! Exact coefficients: arbitrary-precision rationals (characteristic 0) or
//! residues mod p (characteristic p). All arithmetic goes through a
//! [`CoeffField`] context so zero/one and modular reduction always know the
//! characteristic.

use super::AlgebraError;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// Coefficient field context: ℚ when `char_p == 0`, 𝔽_p otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CoeffField {
    char_p: u64,
}

/// A single exact coefficient. `Fp` values are kept reduced: `0 <= v < p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffField {
    pub fn rationals() -> Self {
        CoeffField { char_p: 0 }
    }

    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::BadCharacteristic(p));
        }
        Ok(CoeffField { char_p: p })
    }

    /// 0 for ℚ, p for 𝔽_p. Only `of_char` validates, so construct through
    /// `rationals`/`prime`/`of_char`.
    pub fn of_char(char_p: u64) -> Result<Self, AlgebraError> {
        if char_p == 0 {
            Ok(Self::rationals())
        } else {
            Self::prime(char_p)
        }
    }

    pub fn char_p(&self) -> u64 {
        self.char_p
    }

    pub fn zero(&self) -> Scalar {
        match self.char_p {
            0 => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.char_p {
            0 => Scalar::Rat(BigRational::one()),
            _ => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.char_p {
            0 => Scalar::Rat(BigRational::from(BigInt::from(n))),
            p => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Fp(m % p)
            }
        }
    }

    pub fn from_u64(&self, n: u64) -> Scalar {
        match self.char_p {
            0 => Scalar::Rat(BigRational::from(BigInt::from(n))),
            p => Scalar::Fp(n % p),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % self.char_p),
            _ => panic!("mixed scalar variants"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp((x + self.char_p - y) % self.char_p)
            }
            _ => panic!("mixed scalar variants"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % self.char_p as u128) as u64)
            }
            _ => panic!("mixed scalar variants"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Fp(0) => Scalar::Fp(0),
            Scalar::Fp(x) => Scalar::Fp(self.char_p - x),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match a {
            Scalar::Rat(x) => Scalar::Rat(x.recip()),
            Scalar::Fp(x) => Scalar::Fp(mod_inv(*x, self.char_p)),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, AlgebraError> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, &bi))
    }

    /// p-th power; the Frobenius fixes 𝔽_p pointwise, and the operation is
    /// meaningless over ℚ here.
    pub fn frobenius(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fp(_) => a.clone(),
            Scalar::Rat(_) => panic!("frobenius in characteristic 0"),
        }
    }

    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v) => format!("{v}"),
        }
    }

    /// True when the scalar is negative (only possible over ℚ); used by the
    /// renderer to place minus signs between terms.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Fp(_) => false,
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid over i128
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "inverse of non-unit mod {p}");
    (t.rem_euclid(p as i128)) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fp(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let f = CoeffField::prime(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), f.from_i64(2));
        assert_eq!(f.mul(&a, &b), f.from_i64(6));
        assert_eq!(f.sub(&b, &a), f.from_i64(6));
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
    }

    #[test]
    fn from_i64_negative() {
        let f = CoeffField::prime(5).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.from_i64(-7), f.from_i64(3));
    }

    #[test]
    fn rational_inverse() {
        let f = CoeffField::rationals();
        let a = f.from_i64(-3);
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(CoeffField::of_char(6).is_err());
        assert!(CoeffField::of_char(1).is_err());
        assert!(CoeffField::of_char(2).is_ok());
    }
}
