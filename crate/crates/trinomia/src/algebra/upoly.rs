//! Dense univariate polynomials over an exact field: Euclidean arithmetic,
//! gcd, Yun squarefree decomposition, resultants, Lagrange interpolation.

use super::coeff::Field;

use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial; `coeffs[i]` multiplies x^i, trailing zeros
/// are trimmed so the last coefficient of a nonzero polynomial is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<C: Field> {
    pub coeffs: Vec<C>,
}

impl<C: Field> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero_poly() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn constant(c: C) -> Self {
        UPoly::new(vec![c])
    }

    pub fn x() -> Self {
        UPoly::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lc(&self) -> &C {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> UPoly<C> {
        if self.coeffs.len() <= 1 {
            return UPoly::zero_poly();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut k = C::zero();
            for _ in 0..i {
                k = k + C::one();
            }
            out.push(c.clone() * k);
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &C) -> UPoly<C> {
        UPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> UPoly<C> {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divrem(&self, d: &UPoly<C>) -> (UPoly<C>, UPoly<C>) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let dd = d.deg();
        let dlc_inv = d.lc().inv();
        let mut q = vec![C::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let f = r.lc().clone() * dlc_inv.clone();
            let shift = rd - dd;
            q[shift] = f.clone();
            let mut coeffs = r.coeffs;
            for (i, c) in d.coeffs.iter().enumerate() {
                let idx = i + shift;
                coeffs[idx] = coeffs[idx].clone() - f.clone() * c.clone();
            }
            r = UPoly::new(coeffs);
        }
        (UPoly::new(q), r)
    }

    pub fn exact_div(&self, d: &UPoly<C>) -> Option<UPoly<C>> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &UPoly<C>) -> UPoly<C> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Squarefree part (poly divided by gcd with its derivative).
    pub fn squarefree_part(&self) -> UPoly<C> {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) || g.is_zero() {
            self.monic()
        } else {
            self.exact_div(&g).expect("gcd divides").monic()
        }
    }

    /// Yun squarefree decomposition: returns [(S_i, i)] with
    /// poly = lc * prod S_i^i, the S_i squarefree, pairwise coprime, monic.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly<C>, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.deg() == 0 {
            return vec![];
        }
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.exact_div(&a).unwrap();
        let mut c = fp.exact_div(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() != Some(0) {
            let s = b.gcd(&d);
            if s.degree() != Some(0) {
                out.push((s.clone(), i));
            }
            b = b.exact_div(&s).unwrap();
            c = d.exact_div(&s).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Resultant of two univariate polynomials over a field, by the
    /// remainder-sequence recurrence.
    pub fn resultant(&self, other: &UPoly<C>) -> C {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() || b.is_zero() {
            return C::zero();
        }
        let mut acc = C::one();
        let mut sign_flip = false;
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                // res(a, c) = c^{deg a}
                let mut p = C::one();
                for _ in 0..da {
                    p = p * b.coeffs[0].clone();
                }
                let r = acc * p;
                return if sign_flip { -r } else { r };
            }
            if da < db {
                if da % 2 == 1 && db % 2 == 1 {
                    sign_flip = !sign_flip;
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let (_, r) = a.divrem(&b);
            if r.is_zero() {
                return C::zero();
            }
            // res(a, b) = lc(b)^{deg a - deg r} * (-1)^{da*db} * res(b, r)
            let mut p = C::one();
            for _ in 0..(da - r.deg()) {
                p = p * b.lc().clone();
            }
            acc = acc * p;
            if da % 2 == 1 && db % 2 == 1 {
                sign_flip = !sign_flip;
            }
            a = b;
            b = r;
        }
    }

    /// Interpolation through (x_i, y_i) in Newton form (divided
    /// differences); nodes must be distinct.
    pub fn interpolate(nodes: &[(C, C)]) -> UPoly<C> {
        if nodes.is_empty() {
            return UPoly::zero_poly();
        }
        let n = nodes.len();
        // divided difference table, computed in place
        let mut dd: Vec<C> = nodes.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = dd[i].clone() - dd[i - 1].clone();
                let den = nodes[i].0.clone() - nodes[i - level].0.clone();
                dd[i] = num / den;
            }
        }
        // Horner assembly of the Newton form
        let mut acc = UPoly::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            let lin = UPoly::new(vec![-nodes[i].0.clone(), C::one()]);
            acc = &(&acc * &lin) + &UPoly::constant(dd[i].clone());
        }
        acc
    }

    pub fn pow(&self, n: usize) -> UPoly<C> {
        let mut acc = UPoly::constant(C::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Remainder of self modulo m (convenience wrapper).
    pub fn rem(&self, m: &UPoly<C>) -> UPoly<C> {
        self.divrem(m).1
    }

    /// Modular exponentiation: self^e mod m.
    pub fn powmod(&self, mut e: u64, m: &UPoly<C>) -> UPoly<C> {
        let mut base = self.rem(m);
        let mut acc = UPoly::constant(C::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::new(self.coeffs.iter().map(|c| f(c)).collect())
    }
}

impl<C: Field> Add for &UPoly<C> {
    type Output = UPoly<C>;
    fn add(self, rhs: &UPoly<C>) -> UPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(C::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(C::zero);
            out.push(a + b);
        }
        UPoly::new(out)
    }
}

impl<C: Field> Sub for &UPoly<C> {
    type Output = UPoly<C>;
    fn sub(self, rhs: &UPoly<C>) -> UPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Field> Neg for &UPoly<C> {
    type Output = UPoly<C>;
    fn neg(self) -> UPoly<C> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<C: Field> Mul for &UPoly<C> {
    type Output = UPoly<C>;
    fn mul(self, rhs: &UPoly<C>) -> UPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero_poly();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Signed;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn p(cs: &[i64]) -> UPoly<BigRational> {
        UPoly::new(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn divrem_basic() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[-1, 1]); // x - 1
        let (quo, rem) = a.divrem(&b);
        assert_eq!(quo, p(&[1, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        // f = x^2 (x-1)^3
        let f = &p(&[0, 0, 1]) * &p(&[-1, 1]).pow(3);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (p(&[0, 1]), 2));
        assert_eq!(dec[1], (p(&[-1, 1]), 3));
        assert_eq!(f.squarefree_part(), &p(&[0, 1]) * &p(&[-1, 1]));
    }

    #[test]
    fn resultant_values() {
        // res(x^2+1, x^2-1) = 4
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 0, 1]);
        assert_eq!(a.resultant(&b), q(4));
        // res(x-2, x-3) = f(3)... = (3-2) up to convention: product formula
        let c = p(&[-2, 1]);
        let d = p(&[-3, 1]);
        assert_eq!(c.resultant(&d).abs(), q(1).abs());
    }

    #[test]
    fn interpolation_round_trip() {
        let f = p(&[3, -2, 0, 5]);
        let nodes: Vec<_> = (0..6).map(|i| (q(i), f.eval(&q(i)))).collect();
        assert_eq!(UPoly::interpolate(&nodes), f);
    }
}
