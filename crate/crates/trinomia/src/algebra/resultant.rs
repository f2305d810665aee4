//! Resultants of multivariate polynomials with respect to one variable,
//! via the Sylvester matrix and Bareiss fraction-free elimination over the
//! polynomial ring, plus the discriminant with a fixed sign convention.

use super::coeff::Field;
use super::multipoly::Poly;
use crate::TrinomiaError;


/// Determinant of a square matrix of polynomials by Bareiss elimination.
/// All interior divisions are exact in the polynomial ring.
pub fn poly_det<C: Field>(mut m: Vec<Vec<Poly<C>>>) -> Poly<C> {
    let n = m.len();
    if n == 0 {
        return Poly::constant(1, C::one());
    }
    let arity = m[0][0].arity();
    let mut sign = false;
    let mut prev = Poly::constant(arity, C::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                None => return Poly::zero_poly(arity),
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact");
            }
        }
        for row in m.iter_mut().skip(k + 1) {
            row[k] = Poly::zero_poly(arity);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Sylvester-matrix resultant of `f` and `g` with respect to variable `var`.
/// The result no longer involves `var`.
///
/// When exactly one input is constant in `var` the convention
/// `res(f, c) = c^{deg f}` applies; when both are constant there is nothing
/// to eliminate and an error is returned.
pub fn resultant<C: Field>(f: &Poly<C>, g: &Poly<C>, var: usize) -> Result<Poly<C>, TrinomiaError> {
    if f.is_zero() || g.is_zero() {
        return Err(TrinomiaError::ZeroInput("resultant of zero polynomial".into()));
    }
    let df = f.deg_in(var).unwrap_or(0) as usize;
    let dg = g.deg_in(var).unwrap_or(0) as usize;
    if df == 0 && dg == 0 {
        return Err(TrinomiaError::NothingToEliminate);
    }
    if df == 0 {
        return Ok(f.pow(dg as u32));
    }
    if dg == 0 {
        return Ok(g.pow(df as u32));
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let n = df + dg;
    let arity = f.arity();
    let mut m = vec![vec![Poly::zero_poly(arity); n]; n];
    for i in 0..dg {
        for (j, c) in fc.iter().enumerate() {
            // row holds coefficients of x^{df-j} ... descending powers
            m[i][i + (df - j)] = c.clone();
        }
    }
    for i in 0..df {
        for (j, c) in gc.iter().enumerate() {
            m[dg + i][i + (dg - j)] = c.clone();
        }
    }
    Ok(poly_det(m))
}

/// Discriminant of `f` with respect to `var`:
/// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f), with n = deg f.
/// The division by the leading coefficient is exact.
pub fn discriminant<C: Field>(f: &Poly<C>, var: usize) -> Result<Poly<C>, TrinomiaError> {
    if f.is_zero() {
        return Err(TrinomiaError::ZeroInput("discriminant of zero polynomial".into()));
    }
    let n = f.deg_in(var).unwrap_or(0) as usize;
    if n == 0 {
        return Err(TrinomiaError::ZeroInput("discriminant needs positive degree".into()));
    }
    let fp = f.partial_derivative(var);
    let lc = f.coeffs_in(var).pop().unwrap();
    let res = if fp.is_zero() {
        Poly::zero_poly(f.arity())
    } else {
        resultant(f, &fp, var)?
    };
    let quotient = if res.is_zero() {
        res
    } else {
        res.exact_div(&lc)
            .expect("leading coefficient divides res(f, f')")
    };
    let sign_neg = (n * (n - 1) / 2) % 2 == 1;
    Ok(if sign_neg { -&quotient } else { quotient })
}
