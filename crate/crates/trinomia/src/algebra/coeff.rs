//! Coefficient fields for the polynomial engine.
//!
//! The polynomial types are generic over [`Field`]; the two instances used in
//! this crate are `BigRational` (exact characteristic-zero arithmetic) and
//! [`Fp`] (a prime field with runtime modulus, used for smoothness
//! certification and modular root finding).

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact field operations needed by the polynomial engine.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for BigRational {}

/// Element of F_p with the modulus carried alongside the value.
///
/// `Zero::zero()` and `One::one()` cannot know a modulus, so elements they
/// produce carry `p = 0` and act as plain integers until combined with a
/// genuine F_p element; arithmetic unifies moduli, taking the nonzero one.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
    pub v: u64,
}

impl Fp {
    pub fn new(p: u64, v: i64) -> Self {
        debug_assert!(p > 1);
        let r = v.rem_euclid(p as i64) as u64;
        Fp { p, v: r }
    }

    pub fn from_u64(p: u64, v: u64) -> Self {
        Fp { p, v: v % p }
    }

    fn unify(a: Fp, b: Fp) -> (u64, u64, u64) {
        match (a.p, b.p) {
            (0, 0) => (0, a.v, b.v),
            (0, p) => (p, a.v % p, b.v),
            (p, 0) => (p, a.v, b.v % p),
            (p, q) => {
                assert_eq!(p, q, "mixed moduli {} and {}", p, q);
                (p, a.v, b.v)
            }
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { p: self.p, v: 1 % self.p.max(2) };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by extended Euclid; panics on non-invertible input.
fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{} not invertible mod {}", a, p);
    t.rem_euclid(p as i128) as u64
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let (p, a, b) = Fp::unify(*self, *other);
        if p == 0 {
            a == b
        } else {
            a % p == b % p
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (p, a, b) = Fp::unify(self, rhs);
        if p == 0 {
            Fp { p: 0, v: a + b }
        } else {
            Fp { p, v: (a + b) % p }
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.p == 0 {
            assert_eq!(self.v, 0, "cannot negate modulus-free nonzero Fp");
            self
        } else {
            Fp { p: self.p, v: (self.p - self.v) % self.p }
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (p, a, b) = Fp::unify(self, rhs);
        if p == 0 {
            Fp { p: 0, v: a * b }
        } else {
            Fp { p, v: mul_mod(a, b, p) }
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        let (p, a, b) = Fp::unify(self, rhs);
        assert!(p != 0, "division needs a modulus");
        Fp { p, v: mul_mod(a, inv_mod(b, p), p) }
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp { p: 0, v: 0 }
    }
    fn is_zero(&self) -> bool {
        if self.p == 0 {
            self.v == 0
        } else {
            self.v % self.p == 0
        }
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp { p: 0, v: 1 }
    }
    fn is_one(&self) -> bool {
        if self.p == 0 {
            self.v == 1
        } else {
            self.v % self.p == 1
        }
    }
}

impl Field for Fp {}
