//! Exact arithmetic in the degree-8 extension Q(i)(r) with r^4 = 2,
//! represented as a tower: Gaussian rationals below, polynomials in r of
//! degree < 4 above. This field contains i, sqrt(2) = r^2 and 2^{1/4} = r,
//! which is everything the quartic equivalence witness needs.

use crate::algebra::{Field, UPoly};
use crate::Rat;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Gaussian rational a + b i.
#[derive(Clone, PartialEq, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, o: GaussRat) -> GaussRat {
        let n = o.norm();
        let c = o.conj();
        let p = self * c;
        GaussRat { re: p.re / &n, im: p.im / &n }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat { re: Rat::one(), im: Rat::zero() }
    }
}

impl Field for GaussRat {}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else {
            write!(f, "({} + {}*i)", self.re, self.im)
        }
    }
}

/// Element of Q(i)[r]/(r^4 - 2): coefficients c0 + c1 r + c2 r^2 + c3 r^3.
#[derive(Clone, PartialEq, Debug)]
pub struct Ext {
    pub c: [GaussRat; 4],
}

impl Ext {
    pub fn from_gauss(g: GaussRat) -> Self {
        Ext { c: [g, GaussRat::zero(), GaussRat::zero(), GaussRat::zero()] }
    }

    pub fn from_rat(r: Rat) -> Self {
        Ext::from_gauss(GaussRat::from_rat(r))
    }

    pub fn from_i64(n: i64) -> Self {
        Ext::from_rat(Rat::from_integer(n.into()))
    }

    /// The generator r = 2^{1/4}.
    pub fn r() -> Self {
        let mut c = [GaussRat::zero(), GaussRat::zero(), GaussRat::zero(), GaussRat::zero()];
        c[1] = GaussRat::one();
        Ext { c }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Ext::from_gauss(GaussRat::i())
    }

    pub fn pow(&self, n: u32) -> Ext {
        let mut acc = Ext::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    fn reduce(mut v: Vec<GaussRat>) -> Ext {
        // r^4 = 2
        while v.len() > 4 {
            let top = v.pop().unwrap();
            let k = v.len() - 4;
            let two = GaussRat::from_rat(Rat::from_integer(2.into()));
            v[k] = v[k].clone() + top * two;
        }
        while v.len() < 4 {
            v.push(GaussRat::zero());
        }
        Ext { c: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()] }
    }

    fn to_upoly(&self) -> UPoly<GaussRat> {
        UPoly::new(self.c.to_vec())
    }

    fn modulus() -> UPoly<GaussRat> {
        // r^4 - 2
        UPoly::new(vec![
            GaussRat::from_rat(Rat::from_integer((-2).into())),
            GaussRat::zero(),
            GaussRat::zero(),
            GaussRat::zero(),
            GaussRat::one(),
        ])
    }

    pub fn inverse(&self) -> Ext {
        assert!(!self.is_zero(), "inverse of zero in extension field");
        // extended Euclid in Q(i)[x] against x^4 - 2
        let a = self.to_upoly();
        let m = Ext::modulus();
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (UPoly::zero_poly(), UPoly::constant(GaussRat::one()));
        while !r1.is_zero() && r1.degree() != Some(0) {
            let (q, r2) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        assert!(!r1.is_zero(), "modulus is irreducible, gcd must be a unit");
        let unit_inv = r1.coeffs[0].clone().inv();
        let inv = s1.scale(&unit_inv);
        Ext::reduce(inv.coeffs)
    }
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, o: Ext) -> Ext {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c) {
            *a = a.clone() + b;
        }
        Ext { c }
    }
}

impl Sub for Ext {
    type Output = Ext;
    fn sub(self, o: Ext) -> Ext {
        self + (-o)
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        let mut c = self.c;
        for a in c.iter_mut() {
            *a = -a.clone();
        }
        Ext { c }
    }
}

impl Mul for Ext {
    type Output = Ext;
    fn mul(self, o: Ext) -> Ext {
        let mut v = vec![GaussRat::zero(); 7];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ext::reduce(v)
    }
}

impl Div for Ext {
    type Output = Ext;
    fn div(self, o: Ext) -> Ext {
        self * o.inverse()
    }
}

impl Zero for Ext {
    fn zero() -> Self {
        Ext::from_gauss(GaussRat::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl One for Ext {
    fn one() -> Self {
        Ext::from_gauss(GaussRat::one())
    }
}

impl Field for Ext {}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let head = match k {
                0 => format!("{}", c),
                1 => format!("{}*r", c),
                _ => format!("{}*r^{}", c, k),
            };
            parts.push(head);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_fourth_is_two() {
        let r = Ext::r();
        assert_eq!(r.pow(4), Ext::from_i64(2));
        assert_eq!(r.pow(8), Ext::from_i64(4));
    }

    #[test]
    fn i_squared() {
        assert_eq!(Ext::i() * Ext::i(), -Ext::one());
    }

    #[test]
    fn inverse_round_trip() {
        let x = Ext::r() + Ext::i() * Ext::from_i64(3) + Ext::from_i64(7);
        let inv = x.inverse();
        assert_eq!(x * inv, Ext::one());
    }

    #[test]
    fn eighth_root_of_unity() {
        // omega = (1+i) r^2 / 2 satisfies omega^2 = i, omega^4 = -1
        let omega = (Ext::one() + Ext::i()) * Ext::r().pow(2) / Ext::from_i64(2);
        assert_eq!(omega.pow(2), Ext::i());
        assert_eq!(omega.pow(4), -Ext::one());
        assert_eq!(omega.pow(8), Ext::one());
    }
}
