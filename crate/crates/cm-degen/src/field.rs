//! Exact coefficient fields.  The default is Q(i), which suffices for every
//! computation in scope since only a square root of -1 is ever needed.  An
//! optional prime-field backend F_p with p = 1 mod 4 is available for speed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact field with a distinguished square root of -1.
pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// The distinguished square root of -1.
    fn imag_unit(&self) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// The field Q(i): pairs (re, im) of exact rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct QiField;

/// An element a + b*i of Q(i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qi {
    pub re: BigRational,
    pub im: BigRational,
}

impl Field for QiField {
    type Elem = Qi;

    fn zero(&self) -> Qi {
        Qi { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn one(&self) -> Qi {
        Qi { re: BigRational::one(), im: BigRational::zero() }
    }

    fn imag_unit(&self) -> Qi {
        Qi { re: BigRational::zero(), im: BigRational::one() }
    }

    fn from_int(&self, v: i64) -> Qi {
        Qi { re: BigRational::from(BigInt::from(v)), im: BigRational::zero() }
    }

    fn is_zero(&self, a: &Qi) -> bool {
        a.re.is_zero() && a.im.is_zero()
    }

    fn add(&self, a: &Qi, b: &Qi) -> Qi {
        Qi { re: &a.re + &b.re, im: &a.im + &b.im }
    }

    fn sub(&self, a: &Qi, b: &Qi) -> Qi {
        Qi { re: &a.re - &b.re, im: &a.im - &b.im }
    }

    fn mul(&self, a: &Qi, b: &Qi) -> Qi {
        Qi {
            re: &a.re * &b.re - &a.im * &b.im,
            im: &a.re * &b.im + &a.im * &b.re,
        }
    }

    fn neg(&self, a: &Qi) -> Qi {
        Qi { re: -a.re.clone(), im: -a.im.clone() }
    }

    fn inv(&self, a: &Qi) -> Qi {
        let norm = &a.re * &a.re + &a.im * &a.im;
        assert!(!norm.is_zero(), "division by zero in Q(i)");
        Qi { re: &a.re / &norm, im: -(&a.im / &norm) }
    }
}

/// The prime field F_p for p = 1 mod 4, with a fixed square root of -1.
#[derive(Debug, Clone, Copy)]
pub struct FpField {
    p: u64,
    sqrt_m1: u64,
}

impl FpField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 || p % 4 != 1 || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        // -1 is a QR mod p since p = 1 mod 4; find a root by exponentiation.
        let mut sqrt_m1 = 0;
        for g in 2..p {
            let c = pow_mod(g, (p - 1) / 4, p);
            if mul_mod(c, c, p) == p - 1 {
                sqrt_m1 = c;
                break;
            }
        }
        debug_assert!(sqrt_m1 != 0);
        Ok(FpField { p, sqrt_m1 })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for FpField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn imag_unit(&self) -> u64 {
        self.sqrt_m1
    }

    fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 { 0 } else { self.p - a }
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "division by zero in F_p");
        pow_mod(*a, self.p - 2, self.p)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact rational shorthand used by the artinian oracle and tests.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign-normalized check used in tests.
pub fn is_negative(q: &BigRational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qi_axioms_spot_check() {
        let f = QiField;
        let i = f.imag_unit();
        assert_eq!(f.mul(&i, &i), f.from_int(-1));
        let a = f.add(&f.from_int(3), &f.mul(&f.from_int(2), &i)); // 3 + 2i
        let inv = f.inv(&a);
        assert_eq!(f.mul(&a, &inv), f.one());
        assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
    }

    #[test]
    fn fp_requires_one_mod_four() {
        assert!(FpField::new(7).is_err());
        assert!(FpField::new(9).is_err());
        let f = FpField::new(13).unwrap();
        let i = f.imag_unit();
        assert_eq!(f.mul(&i, &i), f.from_int(-1));
        for a in 1..13 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn qi_strategy() -> impl Strategy<Value = Qi> {
        (-20i64..20, 1i64..10, -20i64..20, 1i64..10).prop_map(|(a, b, c, d)| Qi {
            re: rational(a, b),
            im: rational(c, d),
        })
    }

    proptest! {
        #[test]
        fn qi_field_axioms(a in qi_strategy(), b in qi_strategy(), c in qi_strategy()) {
            let f = QiField;
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            prop_assert_eq!(
                f.mul(&f.mul(&a, &b), &c),
                f.mul(&a, &f.mul(&b, &c))
            );
            if !f.is_zero(&a) {
                prop_assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
            }
        }
    }
}
