//! Smoothness decisions for trinomial curves: exact singular-point checks at
//! the coordinate points, exhaustive singular-point scans over P^2(F_p), and
//! a finite-field certificate of smoothness over the algebraic closure.
//!
//! Certification logic: for a valid prime p (p prime to d and to every
//! coefficient numerator and denominator), the plane-curve discriminant of F
//! reduces compatibly mod p. If the reduction has no singular point over the
//! closure of F_p — decided exactly by resultant elimination in each chart —
//! that discriminant is nonzero mod p, hence nonzero, hence the
//! characteristic-zero curve is smooth.

use crate::algebra::{resultant, Fp, Poly, UPoly};
use crate::curve::TrinomialCurve;
use crate::{MultiPoly, PrimeFieldPoly, Rat, TrinomiaError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    SmoothCertified { prime: u64 },
    Singular { witness: [Rat; 3] },
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct SmoothnessVerdict {
    pub status: Verdict,
    pub primes_tried: Vec<u64>,
}

impl SmoothnessVerdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self.status, Verdict::SmoothCertified { .. })
    }
    pub fn is_singular(&self) -> bool {
        matches!(self.status, Verdict::Singular { .. })
    }
}

/// Gradient of F: the three partial derivatives.
pub fn gradient(f: &MultiPoly) -> [MultiPoly; 3] {
    [
        f.partial_derivative(0),
        f.partial_derivative(1),
        f.partial_derivative(2),
    ]
}

/// Exact evaluation of F and all three partials at the coordinate points;
/// returns the points where all four vanish.
pub fn coordinate_point_check(c: &TrinomialCurve) -> Vec<[Rat; 3]> {
    let f = c.polynomial();
    let grad = gradient(&f);
    let pts = [
        [Rat::one(), Rat::zero(), Rat::zero()],
        [Rat::zero(), Rat::one(), Rat::zero()],
        [Rat::zero(), Rat::zero(), Rat::one()],
    ];
    let mut out = Vec::new();
    for p in pts {
        let all_zero = f.eval(&p).is_zero() && grad.iter().all(|g| g.eval(&p).is_zero());
        if all_zero {
            out.push(p);
        }
    }
    out
}

/// Reduce a rational polynomial mod p. Errors when p divides a denominator.
pub fn reduce_mod_p(f: &MultiPoly, p: u64) -> Result<PrimeFieldPoly, TrinomiaError> {
    let pm = BigInt::from(p);
    let mut terms = Vec::new();
    for (e, c) in f.terms() {
        if (c.denom() % &pm).is_zero() {
            return Err(TrinomiaError::BadReduction(p));
        }
        let num = c.numer().mod_floor(&pm);
        let den = c.denom().mod_floor(&pm);
        let num64 = u64::try_from(num).unwrap();
        let den64 = u64::try_from(den).unwrap();
        let v = Fp::from_u64(p, num64) / Fp::from_u64(p, den64);
        terms.push((*e, v));
    }
    Ok(Poly::from_terms(f.arity(), terms))
}

/// Exhaustive scan of all p^2 + p + 1 points of P^2(F_p); returns the points
/// where F and all three partials vanish, as normalized homogeneous triples.
pub fn singular_points_mod_p(
    c: &TrinomialCurve,
    p: u64,
) -> Result<Vec<[u64; 3]>, TrinomiaError> {
    let f = c.polynomial();
    let grad = gradient(&f);
    let fp = reduce_mod_p(&f, p)?;
    let gp = [
        reduce_mod_p(&grad[0], p)?,
        reduce_mod_p(&grad[1], p)?,
        reduce_mod_p(&grad[2], p)?,
    ];
    let mut out = Vec::new();
    let mut check = |pt: [u64; 3]| {
        let point = [
            Fp::from_u64(p, pt[0]),
            Fp::from_u64(p, pt[1]),
            Fp::from_u64(p, pt[2]),
        ];
        if fp.eval(&point).is_zero() && gp.iter().all(|g| g.eval(&point).is_zero()) {
            out.push(pt);
        }
    };
    for a in 0..p {
        for b in 0..p {
            check([1, a, b]);
        }
    }
    for b in 0..p {
        check([0, 1, b]);
    }
    check([0, 0, 1]);
    Ok(out)
}

/// Binary form (involving `vkeep` and `vother` only) as a dense univariate
/// polynomial in vkeep with vother set to one.
fn dehomogenize(form: &PrimeFieldPoly, vkeep: usize) -> UPoly<Fp> {
    let deg = form.deg_in(vkeep).unwrap_or(0) as usize;
    let mut coeffs = vec![Fp::zero(); deg + 1];
    for (e, c) in form.terms() {
        coeffs[e[vkeep] as usize] = coeffs[e[vkeep] as usize] + *c;
    }
    UPoly::new(coeffs)
}

/// Certificate that the reduction of the curve mod p has no singular point
/// over the algebraic closure of F_p. `Ok(true)` is a proof; `Ok(false)`
/// means this prime is inconclusive (degenerate elimination or an actual
/// singular reduction), not a disproof.
pub fn smooth_over_closure_mod_p(c: &TrinomialCurve, p: u64) -> Result<bool, TrinomiaError> {
    let d = c.degree() as u64;
    if p < 2 || d % p == 0 {
        return Ok(false);
    }
    let f = c.polynomial();
    let fp3 = reduce_mod_p(&f, p)?;
    if fp3.is_zero() {
        return Ok(false);
    }
    // affine chart z = 1: by the Euler relation (p does not divide d),
    // singular points satisfy f = f_x = f_y = 0
    let fa = fp3.specialize(2, &Fp::from_u64(p, 1));
    let fx = fa.partial_derivative(0);
    let fy = fa.partial_derivative(1);
    if fx.is_zero() && fy.is_zero() {
        return Ok(false);
    }
    // any affine singular point (x0, y0) forces both resultants to vanish at
    // y0, so a trivial gcd proves the affine chart clean
    let clean_affine = {
        let ra = elim_resultant(&fa, &fx)?;
        let rb = elim_resultant(&fa, &fy)?;
        match (ra, rb) {
            (Some(a), Some(b)) => a.gcd(&b).degree() == Some(0),
            _ => false,
        }
    };
    if !clean_affine {
        return Ok(false);
    }
    // line z = 0: common projective zero of F and the gradient restrictions
    let grad = gradient(&f);
    let z0 = Fp::from_u64(p, 0);
    let mut restrictions = vec![fp3.specialize(2, &z0)];
    for g in &grad {
        restrictions.push(reduce_mod_p(g, p)?.specialize(2, &z0));
    }
    let one = Fp::from_u64(p, 1);
    let at_100 = restrictions
        .iter()
        .all(|r| r.eval(&[one, z0, z0]).is_zero());
    if at_100 {
        return Ok(false);
    }
    // remaining points (x : 1 : 0): common root of the dehomogenizations
    let mut g: Option<UPoly<Fp>> = None;
    for r in &restrictions {
        if r.is_zero() {
            continue;
        }
        let u = dehomogenize(r, 0);
        if u.is_zero() {
            continue;
        }
        g = Some(match g {
            None => u,
            Some(prev) => prev.gcd(&u),
        });
    }
    match g {
        None => Ok(false),
        Some(g) => Ok(g.degree() == Some(0)),
    }
}

fn elim_resultant(
    f: &PrimeFieldPoly,
    g: &PrimeFieldPoly,
) -> Result<Option<UPoly<Fp>>, TrinomiaError> {
    if g.is_zero() {
        return Ok(None);
    }
    let r = match resultant(f, g, 0) {
        Ok(r) => r,
        Err(TrinomiaError::NothingToEliminate) => return Ok(None),
        Err(e) => return Err(e),
    };
    if r.is_zero() {
        return Ok(None);
    }
    Ok(Some(dehomogenize(&r, 1)))
}

/// Default prime budget: the three smallest primes greater than d that do
/// not divide d or any coefficient numerator or denominator.
pub fn default_prime_budget(c: &TrinomialCurve) -> Vec<u64> {
    let d = c.degree() as u64;
    let mut out = Vec::new();
    let mut p = d;
    while out.len() < 3 {
        p = crate::algebra::primes::next_prime(p);
        if prime_valid(c, p) {
            out.push(p);
        }
    }
    out
}

fn prime_valid(c: &TrinomialCurve, p: u64) -> bool {
    let d = c.degree() as u64;
    if p < 2 || d % p == 0 {
        return false;
    }
    let pm = BigInt::from(p);
    c.coeffs
        .iter()
        .all(|a| !(a.numer().abs() % &pm).is_zero() && !(a.denom().abs() % &pm).is_zero())
}

/// Decide smoothness: exact coordinate-point witnesses first, then one clean
/// prime certifies smoothness over the closure of Q.
pub fn certify_smooth(
    c: &TrinomialCurve,
    prime_budget: &[u64],
) -> Result<SmoothnessVerdict, TrinomiaError> {
    if prime_budget.is_empty() {
        return Err(TrinomiaError::EmptyPrimeBudget);
    }
    let witnesses = coordinate_point_check(c);
    if let Some(w) = witnesses.into_iter().next() {
        return Ok(SmoothnessVerdict {
            status: Verdict::Singular { witness: w },
            primes_tried: vec![],
        });
    }
    let mut tried = Vec::new();
    for &p in prime_budget {
        if !prime_valid(c, p) {
            continue;
        }
        tried.push(p);
        if smooth_over_closure_mod_p(c, p)? {
            return Ok(SmoothnessVerdict {
                status: Verdict::SmoothCertified { prime: p },
                primes_tried: tried,
            });
        }
    }
    Ok(SmoothnessVerdict {
        status: Verdict::Undetermined,
        primes_tried: tried,
    })
}

/// Convenience wrapper using the default budget.
pub fn certify_smooth_default(c: &TrinomialCurve) -> Result<SmoothnessVerdict, TrinomiaError> {
    certify_smooth(c, &default_prime_budget(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{
        canonical_curve, small_jordan_printed_variant, CurveType, PowerMatrix, ALL_TYPES,
    };

    fn unit(m: PowerMatrix) -> TrinomialCurve {
        TrinomialCurve::with_unit_coeffs(m)
    }

    #[test]
    fn printed_small_jordan_singular_at_100() {
        for d in 3..=8 {
            let c = unit(small_jordan_printed_variant(d).unwrap());
            let w = coordinate_point_check(&c);
            assert_eq!(w.len(), 1, "d={}", d);
            assert_eq!(w[0], [Rat::one(), Rat::zero(), Rat::zero()]);
            let v = certify_smooth_default(&c).unwrap();
            assert!(v.is_singular());
        }
    }

    #[test]
    fn excluded_type_singular_at_001() {
        // y^2 z + 2 x^3: the two-term curve from the excluded orbit at d = 3
        let m = PowerMatrix::new([[0, 2, 1], [3, 0, 0], [3, 0, 0]]).unwrap();
        let c = unit(m);
        let w = coordinate_point_check(&c);
        assert!(w.contains(&[Rat::zero(), Rat::zero(), Rat::one()]));
    }

    #[test]
    fn fermat_coordinate_points_clean() {
        let c = canonical_curve(CurveType::Fermat, 5).unwrap();
        assert!(coordinate_point_check(&c).is_empty());
    }

    #[test]
    fn fermat_scan_no_singular_points() {
        let c = canonical_curve(CurveType::Fermat, 4).unwrap();
        let pts = singular_points_mod_p(&c, 5).unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn printed_small_jordan_witness_reduces_mod_p() {
        let c = unit(small_jordan_printed_variant(3).unwrap());
        let pts = singular_points_mod_p(&c, 7).unwrap();
        assert!(pts.contains(&[1, 0, 0]));
    }

    #[test]
    fn triple_line_degenerate_input() {
        // merged terms give 3x^3: every point of the line x = 0 is singular
        let m = PowerMatrix::new([[3, 0, 0], [3, 0, 0], [3, 0, 0]]).unwrap();
        let c = unit(m);
        let pts = singular_points_mod_p(&c, 5).unwrap();
        assert_eq!(pts.len(), 6); // p + 1 points on the line x = 0
        assert!(pts.iter().all(|pt| pt[0] == 0));
    }

    #[test]
    fn all_canonical_types_certified_smooth() {
        for ty in ALL_TYPES {
            for d in 3..=8 {
                let c = canonical_curve(ty, d).unwrap();
                let v = certify_smooth_default(&c).unwrap();
                assert!(
                    v.is_smooth(),
                    "{:?} d={} should certify smooth, got {:?}",
                    ty,
                    d,
                    v.status
                );
            }
        }
    }

    #[test]
    fn budget_skips_invalid_primes() {
        // Fermat d = 5 with a budget containing 5 (divides d): 5 is skipped
        let c = canonical_curve(CurveType::Fermat, 5).unwrap();
        let v = certify_smooth(&c, &[5, 7, 11]).unwrap();
        match v.status {
            Verdict::SmoothCertified { prime } => assert_ne!(prime, 5),
            other => panic!("expected certification, got {:?}", other),
        }
        assert!(!v.primes_tried.contains(&5));
    }

    #[test]
    fn reduction_homomorphism() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for p in [101u64, 257] {
            for _ in 0..10 {
                let mut rand_poly = || {
                    let mut terms = Vec::new();
                    for _ in 0..4 {
                        let e = [
                            rng.gen_range(0..3u16),
                            rng.gen_range(0..3u16),
                            rng.gen_range(0..3u16),
                            0,
                        ];
                        terms.push((e, Rat::from_integer(rng.gen_range(-20i64..=20).into())));
                    }
                    MultiPoly::from_terms(3, terms)
                };
                let f = rand_poly();
                let g = rand_poly();
                let lhs = reduce_mod_p(&(&f * &g), p).unwrap();
                let rhs = &reduce_mod_p(&f, p).unwrap() * &reduce_mod_p(&g, p).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
