//! Sparse multivariate polynomials over an exact coefficient field.
//!
//! Arity is at most four (curve variables plus a parameter and a shear
//! coordinate). Exponent vectors are fixed-width arrays; the `BTreeMap`
//! ordering is lexicographic on those arrays, which is a valid monomial
//! order, so the map's maximal key is the leading term.

use super::coeff::Field;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

pub const MAX_ARITY: usize = 4;

pub type Exp = [u16; MAX_ARITY];

/// Multivariate polynomial: map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C: Field> {
    arity: usize,
    terms: BTreeMap<Exp, C>,
}

impl<C: Field> Poly<C> {
    pub fn zero_poly(arity: usize) -> Self {
        assert!(arity >= 1 && arity <= MAX_ARITY);
        Poly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: C) -> Self {
        let mut p = Poly::zero_poly(arity);
        if !c.is_zero() {
            p.terms.insert([0; MAX_ARITY], c);
        }
        p
    }

    pub fn var(arity: usize, idx: usize) -> Self
    where
        C: num_traits::One,
    {
        assert!(idx < arity);
        let mut e = [0u16; MAX_ARITY];
        e[idx] = 1;
        Poly::from_terms(arity, vec![(e, C::one())])
    }

    pub fn monomial(arity: usize, exps: &[u16], c: C) -> Self {
        let mut e = [0u16; MAX_ARITY];
        e[..exps.len()].copy_from_slice(exps);
        Poly::from_terms(arity, vec![(e, c)])
    }

    pub fn from_terms(arity: usize, terms: Vec<(Exp, C)>) -> Self {
        let mut p = Poly::zero_poly(arity);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<&C> {
        if self.is_zero() {
            None
        } else if self.is_constant() {
            self.terms.values().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, e: Exp, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    pub fn deg_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// True iff all terms share the same total degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    pub fn leading(&self) -> Option<(&Exp, &C)> {
        self.terms.iter().next_back()
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero_poly(self.arity);
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    pub fn scale(&self, c: &C) -> Poly<C> {
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    /// Formal partial derivative in the given variable.
    pub fn partial_derivative(&self, var: usize) -> Poly<C> {
        assert!(var < self.arity, "variable index out of range");
        let mut out = Poly::zero_poly(self.arity);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[var] -= 1;
            let mut k = C::zero();
            for _ in 0..e[var] {
                k = k + num_traits::One::one();
            }
            out.add_term(ne, c.clone() * k);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly<C> {
        let mut acc = Poly::constant(self.arity, num_traits::One::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a point given by one value per variable.
    pub fn eval(&self, point: &[C]) -> C {
        assert!(point.len() >= self.arity);
        let mut total = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in point.iter().enumerate().take(self.arity) {
                for _ in 0..e[i] {
                    t = t * p.clone();
                }
            }
            total = total + t;
        }
        total
    }

    /// Substitute a constant for one variable (the variable slot stays, with
    /// exponent zero everywhere).
    pub fn specialize(&self, var: usize, value: &C) -> Poly<C> {
        let mut out = Poly::zero_poly(self.arity);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e[var] {
                t = t * value.clone();
            }
            let mut ne = *e;
            ne[var] = 0;
            out.add_term(ne, t);
        }
        out
    }

    /// Substitute a polynomial for one variable, by Horner evaluation in that
    /// variable.
    pub fn subst_var(&self, var: usize, repl: &Poly<C>) -> Poly<C> {
        assert_eq!(self.arity, repl.arity);
        let coeffs = self.coeffs_in(var);
        let mut acc = Poly::zero_poly(self.arity);
        for c in coeffs.into_iter().rev() {
            acc = &(&acc * repl) + &c;
        }
        acc
    }

    /// Full substitution: variable i is replaced by `images[i]`.
    pub fn compose(&self, images: &[Poly<C>]) -> Poly<C> {
        assert_eq!(images.len(), self.arity);
        let out_arity = images[0].arity;
        let mut total = Poly::zero_poly(out_arity);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(out_arity, c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..e[i] {
                    t = &t * img;
                }
            }
            total = &total + &t;
        }
        total
    }

    /// Coefficients of the polynomial viewed as univariate in `var`, dense by
    /// exponent from 0 up to the degree; coefficients are polynomials with the
    /// same arity (exponent of `var` set to zero).
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly<C>> {
        let d = self.deg_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero_poly(self.arity); d + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut ne = *e;
            ne[var] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    /// Rebuild from dense coefficients in `var`.
    pub fn from_coeffs_in(arity: usize, var: usize, coeffs: &[Poly<C>]) -> Poly<C> {
        let mut out = Poly::zero_poly(arity);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut ne = *e;
                ne[var] += k as u16;
                out.add_term(ne, v.clone());
            }
        }
        out
    }

    /// Exact division; returns `None` if the divisor does not divide exactly.
    /// Standard leading-term cancellation under the lex order.
    pub fn exact_div(&self, divisor: &Poly<C>) -> Option<Poly<C>> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = Poly::zero_poly(self.arity);
        let (dl_e, dl_c) = {
            let (e, c) = divisor.leading().unwrap();
            (*e, c.clone())
        };
        while !rem.is_zero() {
            let (rl_e, rl_c) = {
                let (e, c) = rem.leading().unwrap();
                (*e, c.clone())
            };
            let mut qe = [0u16; MAX_ARITY];
            for i in 0..MAX_ARITY {
                if rl_e[i] < dl_e[i] {
                    return None;
                }
                qe[i] = rl_e[i] - dl_e[i];
            }
            let qc = rl_c / dl_c.clone();
            let qterm = Poly::from_terms(self.arity, vec![(qe, qc)]);
            rem = &rem - &(&qterm * divisor);
            quo = &quo + &qterm;
        }
        Some(quo)
    }

    /// Swap two variable slots.
    pub fn swap_vars(&self, a: usize, b: usize) -> Poly<C> {
        let mut out = Poly::zero_poly(self.arity);
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne.swap(a, b);
            out.add_term(ne, c.clone());
        }
        out
    }
}

impl<C: Field> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<C: Field> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<C: Field> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Field> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.arity, rhs.arity);
        let mut out = Poly::zero_poly(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = [0u16; MAX_ARITY];
                for i in 0..MAX_ARITY {
                    e[i] = e1[i] + e2[i];
                }
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    type QP = Poly<BigRational>;

    #[test]
    fn derivative_power_rule() {
        // d/dx (x^4 + y^4 + z^4) = 4 x^3
        let one = || BigRational::one();
        let f = QP::from_terms(
            3,
            vec![
                ([4, 0, 0, 0], one()),
                ([0, 4, 0, 0], one()),
                ([0, 0, 4, 0], one()),
            ],
        );
        let fx = f.partial_derivative(0);
        assert_eq!(fx.num_terms(), 1);
        let (e, c) = fx.leading().unwrap();
        assert_eq!(e[0], 3);
        assert_eq!(*c, BigRational::from_integer(4.into()));
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let f = QP::constant(3, BigRational::from_integer(5.into()));
        assert!(f.partial_derivative(2).is_zero());
    }

    #[test]
    fn exact_div_round_trip() {
        let x = QP::var(2, 0);
        let y = QP::var(2, 1);
        let a = &(&x * &x) - &(&y * &y);
        let b = &x - &y;
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, &x + &y);
        assert!(a.exact_div(&(&x + &QP::constant(2, BigRational::one()))).is_none());
    }

    #[test]
    fn homogeneous_flag() {
        let x = QP::var(3, 0);
        let y = QP::var(3, 1);
        let h = &(&x * &x) + &(&x * &y);
        assert!(h.is_homogeneous());
        let nh = &h + &x;
        assert!(!nh.is_homogeneous());
    }
}
