//! Complete rational-root extraction for univariate polynomials over Q.
//!
//! Roots are located modulo a large prime (via gcd with x^p - x and
//! equal-degree splitting), lifted p-adically past the rational-root size
//! bound from the rational root theorem, and recovered by rational
//! reconstruction. Every candidate is then verified by exact division, so
//! the returned factorization `f = c * prod (x - r_i)^{m_i} * residual` is
//! certified: the residual has no rational roots.

use super::coeff::Fp;
use super::primes;
use super::upoly::UPoly;
use crate::TrinomiaError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Rat = BigRational;
type QU = UPoly<Rat>;

/// `f = content * prod (x - root_i)^{mult_i} * residual`, residual monic with
/// no rational roots; the exact division is verified during construction.
#[derive(Clone, Debug)]
pub struct LinearFactors {
    pub content: Rat,
    pub roots: Vec<(Rat, usize)>,
    pub residual: QU,
}

/// Primitive integer coefficient vector of a monic-scaled rational polynomial.
fn primitive_integer(f: &QU) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in &f.coeffs {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    ints
}

fn to_fp(ints: &[BigInt], p: u64) -> UPoly<Fp> {
    let pm = BigInt::from(p);
    UPoly::new(
        ints.iter()
            .map(|c| {
                let r = c.mod_floor(&pm);
                Fp::from_u64(p, u64::try_from(r).unwrap())
            })
            .collect(),
    )
}

/// Roots in F_p of a polynomial over F_p (p odd), via gcd with x^p - x and
/// equal-degree splitting.
pub fn fp_roots(f: &UPoly<Fp>, p: u64) -> Vec<u64> {
    // linear-root part: gcd(x^p - x, f)
    let x = UPoly::new(vec![Fp::from_u64(p, 0), Fp::from_u64(p, 1)]);
    let xp = x.powmod(p, f);
    let lin = (&xp - &x).gcd(f);
    let mut out = Vec::new();
    split_linear(&lin, p, 0, &mut out);
    out.sort_unstable();
    out
}

/// Equal-degree splitting of a product of distinct linear factors.
fn split_linear(h: &UPoly<Fp>, p: u64, shift: u64, out: &mut Vec<u64>) {
    match h.degree() {
        None | Some(0) => {}
        Some(1) => {
            // root = -c0 / c1
            let r = -(h.coeffs[0].clone() / h.coeffs[1].clone());
            out.push(r.v % p);
        }
        Some(_) => {
            let mut a = shift;
            loop {
                // w = (x + a)^{(p-1)/2} - 1 mod h
                let xa = UPoly::new(vec![Fp::from_u64(p, a), Fp::from_u64(p, 1)]);
                let w = xa.powmod((p - 1) / 2, h);
                let w1 = &w - &UPoly::constant(Fp::from_u64(p, 1));
                let g = w1.gcd(h);
                if let Some(dg) = g.degree() {
                    if dg > 0 && dg < h.deg() {
                        let rest = h.exact_div(&g).unwrap();
                        split_linear(&g, p, a + 1, out);
                        split_linear(&rest, p, a + 1, out);
                        return;
                    }
                }
                a += 1;
            }
        }
    }
}

fn eval_mod(ints: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in ints.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

/// Rational reconstruction: find a/b with r ≡ a * b^{-1} (mod m),
/// |a| <= num_bound, 0 < b <= den_bound. Returns None if no such pair exists
/// within the bounds.
fn rational_reconstruct(
    r: &BigInt,
    m: &BigInt,
    num_bound: &BigInt,
    den_bound: &BigInt,
) -> Option<Rat> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > num_bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let (a, b) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if &b > den_bound || b.is_zero() {
        return None;
    }
    if a.gcd(&b).is_one() {
        Some(Rat::new(a, b))
    } else {
        None
    }
}

/// All rational roots of the squarefree primitive integer polynomial `ints`.
fn rational_roots_of_squarefree(ints: &[BigInt]) -> Vec<Rat> {
    let deg = ints.len() - 1;
    if deg == 0 {
        return vec![];
    }
    let lc = ints.last().unwrap().clone();
    let tc = ints[0].clone();
    debug_assert!(!tc.is_zero(), "strip zero roots before calling");
    // rational root theorem bounds: den | lc, num | tc
    let num_bound = tc.abs();
    let den_bound = lc.abs();
    let target: BigInt = BigInt::from(2) * &num_bound * &den_bound;

    // pick a prime where the reduction stays squarefree and lc nonzero
    let mut p = 1u64 << 62;
    let (p, fp) = loop {
        p = primes::next_prime(p);
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(ints, p);
        if fp.degree() != Some(deg) {
            continue;
        }
        let g = fp.gcd(&fp.derivative());
        if g.degree() == Some(0) {
            break (p, fp);
        }
    };

    let dints: Vec<BigInt> = (1..ints.len())
        .map(|i| &ints[i] * BigInt::from(i))
        .collect();

    let mut out = Vec::new();
    for r0 in fp_roots(&fp, p) {
        // Newton lift the simple root past the reconstruction target
        let mut modulus = BigInt::from(p);
        let mut root = BigInt::from(r0);
        let d0 = eval_mod(&dints, &root, &modulus);
        let Some(mut inv) = mod_inverse(&d0, &modulus) else {
            continue;
        };
        while modulus <= target {
            let m2 = &modulus * &modulus;
            let fval = eval_mod(ints, &root, &m2);
            root = (&root - &fval * &inv).mod_floor(&m2);
            let dval = eval_mod(&dints, &root, &m2);
            // inv <- inv (2 - f'(root) inv) mod m^2
            inv = (&inv * ((BigInt::from(2) - &dval * &inv).mod_floor(&m2))).mod_floor(&m2);
            modulus = m2;
        }
        if let Some(cand) = rational_reconstruct(&root, &modulus, &num_bound, &den_bound) {
            // exact verification
            let fv: Rat = ints
                .iter()
                .rev()
                .fold(Rat::zero(), |acc, c| acc * &cand + Rat::from_integer(c.clone()));
            if fv.is_zero() {
                out.push(cand);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Factor out every rational linear factor of `f`, with exact division
/// checks; see [`LinearFactors`].
pub fn rational_root_and_linear_factors(f: &QU) -> Result<LinearFactors, TrinomiaError> {
    if f.is_zero() {
        return Err(TrinomiaError::ZeroInput(
            "rational root extraction of zero polynomial".into(),
        ));
    }
    let content = f.lc().clone();
    let mut rem = f.monic();
    let mut roots: Vec<(Rat, usize)> = Vec::new();

    // strip roots at zero
    let k = rem.coeffs.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        rem = UPoly::new(rem.coeffs[k..].to_vec());
        roots.push((Rat::zero(), k));
    }
    if rem.deg() > 0 {
        let square_free = rem.squarefree_part();
        let ints = primitive_integer(&square_free);
        for r in rational_roots_of_squarefree(&ints) {
            let lin = UPoly::new(vec![-r.clone(), Rat::one()]);
            let mut mult = 0;
            while let Some(q) = rem.exact_div(&lin) {
                mult += 1;
                rem = q;
            }
            assert!(mult > 0, "verified root must divide");
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    // verify the factorization exactly
    let mut check = UPoly::constant(content.clone());
    for (r, m) in &roots {
        let lin = UPoly::new(vec![-r.clone(), Rat::one()]);
        check = &check * &lin.pow(*m);
    }
    check = &check * &rem;
    assert_eq!(&check, f, "linear factor extraction must reconstruct input");
    Ok(LinearFactors {
        content,
        roots,
        residual: rem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn qq(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn p(cs: &[i64]) -> QU {
        UPoly::new(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn already_factored() {
        // t^2 (t-1)^3 -> roots {0 x2, 1 x3}, residual 1
        let f = &p(&[0, 0, 1]) * &p(&[-1, 1]).pow(3);
        let lf = rational_root_and_linear_factors(&f).unwrap();
        assert_eq!(lf.roots, vec![(q(0), 2), (q(1), 3)]);
        assert_eq!(lf.residual.degree(), Some(0));
        assert_eq!(lf.content, q(1));
    }

    #[test]
    fn irreducible_quadratic() {
        let f = p(&[1, 0, 1]); // t^2 + 1
        let lf = rational_root_and_linear_factors(&f).unwrap();
        assert!(lf.roots.is_empty());
        assert_eq!(lf.residual, f);
    }

    #[test]
    fn with_content() {
        // 2t^3 - 2t^2 = 2 t^2 (t - 1)
        let f = p(&[0, 0, -2, 2]);
        let lf = rational_root_and_linear_factors(&f).unwrap();
        assert_eq!(lf.content, q(2));
        assert_eq!(lf.roots, vec![(q(0), 2), (q(1), 1)]);
        assert_eq!(lf.residual.degree(), Some(0));
    }

    #[test]
    fn fractional_roots_and_residual() {
        // (2t - 3)^2 (3t + 1) (t^2 + t + 1) has roots 3/2 (twice), -1/3
        let f = &(&p(&[-3, 2]).pow(2) * &p(&[1, 3])) * &p(&[1, 1, 1]);
        let lf = rational_root_and_linear_factors(&f).unwrap();
        assert_eq!(
            lf.roots,
            vec![(qq(-1, 3), 1), (qq(3, 2), 2)]
        );
        assert_eq!(lf.residual, p(&[1, 1, 1]).monic());
    }

    #[test]
    fn big_coefficient_roots() {
        // roots at 1 and -2 buried in a sizable cofactor
        let big = p(&[123456789, 0, 0, 987654321, 1]);
        let f = &(&p(&[-1, 1]) * &p(&[2, 1])) * &big;
        let lf = rational_root_and_linear_factors(&f).unwrap();
        let roots: Vec<Rat> = lf.roots.iter().map(|(r, _)| r.clone()).collect();
        assert!(roots.contains(&q(1)));
        assert!(roots.contains(&q(-2)));
    }
}
