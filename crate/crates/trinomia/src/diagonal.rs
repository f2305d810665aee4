//! The finite group of diagonal projective automorphisms of a trinomial
//! curve: structure (invariant factors), order, and explicit generators,
//! plus an independent brute-force counting oracle.
//!
//! A diagonal map (x:y:z) -> (r^a x : r^b y : r^c z), r a primitive n-th
//! root of unity, preserves the curve exactly when all three monomials pick
//! up the same power of r, i.e. the congruences (P v)_1 = (P v)_2 = (P v)_3
//! mod n hold. The group is computed in (Q/Z)^3 modulo the diagonal line:
//! solutions v of M v = 0 mod Z^2 for the row-difference matrix M, whose
//! Smith normal form yields the invariant factors and generators. Working
//! mod d alone does not reproduce the order Delta/d (the Klein quartic is a
//! counterexample), so the projective condition above is the one used; the
//! order statement itself is kept as the tested claim.

use crate::algebra::snf::{smith_normal_form, SnfResult};
use crate::curve::{PowerMatrix, TrinomialCurve};
use crate::TrinomiaError;

/// Generator of a cyclic factor: the map scales coordinate i by
/// zeta^{numerators[i]} with zeta a primitive `order`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalGenerator {
    pub numerators: [i64; 3],
    pub order: i64,
}

/// Structure of the diagonal automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupInvariants {
    /// Invariant factors (n1, n2) with n1 | n2; n1 = 1 means cyclic.
    pub factors: (i64, i64),
    pub order: i64,
    pub generators: Vec<DiagonalGenerator>,
    /// Set when the group is trivial (order 1), which the order formula
    /// admits only outside the classified families.
    pub trivial: bool,
}

/// Row-difference matrix: rows are row1(P) - row2(P) and row2(P) - row3(P).
/// The all-ones vector is always in the kernel.
pub fn difference_matrix(p: &PowerMatrix) -> [[i64; 3]; 2] {
    let m = p.as_i64();
    [
        [m[0][0] - m[1][0], m[0][1] - m[1][1], m[0][2] - m[1][2]],
        [m[1][0] - m[2][0], m[1][1] - m[2][1], m[1][2] - m[2][2]],
    ]
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact congruence check: does the exponent triple (numerators / n) define
/// a diagonal automorphism? True iff (P a)_1 = (P a)_2 = (P a)_3 mod n.
pub fn verify_automorphism(c: &TrinomialCurve, numerators: [i64; 3], n: i64) -> bool {
    assert!(n >= 1);
    let m = c.matrix.as_i64();
    let pv: Vec<i64> = (0..3)
        .map(|i| (0..3).map(|j| m[i][j] * numerators[j]).sum())
        .collect();
    (pv[0] - pv[1]).rem_euclid(n) == 0 && (pv[1] - pv[2]).rem_euclid(n) == 0
}

/// Lex-least representative of the generator among its unit multiples at the
/// same level.
fn canonical_generator(mut nums: [i64; 3], n: i64) -> [i64; 3] {
    for v in nums.iter_mut() {
        *v = v.rem_euclid(n);
    }
    let mut best = None;
    for u in 1..n.max(2) {
        if gcd64(u, n) != 1 {
            continue;
        }
        let cand = [
            (nums[0] * u).rem_euclid(n),
            (nums[1] * u).rem_euclid(n),
            (nums[2] * u).rem_euclid(n),
        ];
        if best.is_none() || Some(cand) < best {
            best = Some(cand);
        }
    }
    best.unwrap_or(nums)
}

/// Structure of the diagonal automorphism group via the Smith normal form of
/// the difference matrix. The order equals |det P| / d for the classified
/// curves; each generator is verified against the congruence condition.
pub fn diagonal_automorphism_group(
    c: &TrinomialCurve,
) -> Result<AbelianGroupInvariants, TrinomiaError> {
    let delta = c.matrix.determinant();
    if delta == 0 {
        return Err(TrinomiaError::DegeneratePowerMatrix);
    }
    let m = difference_matrix(&c.matrix);
    let snf: SnfResult = smith_normal_form(&[m[0].to_vec(), m[1].to_vec()]);
    let n1 = snf.factors[0];
    let n2 = snf.factors[1];
    assert!(n1 > 0 && n2 > 0, "nondegenerate P gives rank-2 differences");
    // solutions of M v in Z^2 modulo Z^3 and the diagonal: v = V (w1/n1, w2/n2, *)
    let mut generators = Vec::new();
    for (j, nj) in [(0usize, n1), (1usize, n2)] {
        if nj == 1 {
            continue;
        }
        let col = [snf.right[0][j], snf.right[1][j], snf.right[2][j]];
        let nums = canonical_generator(col, nj);
        debug_assert!(verify_automorphism(c, nums, nj));
        generators.push(DiagonalGenerator {
            numerators: nums,
            order: nj,
        });
    }
    let order = n1 * n2;
    Ok(AbelianGroupInvariants {
        factors: (n1, n2),
        order,
        generators,
        trivial: order == 1,
    })
}

/// Independent counting oracle: with N = |det P|, count exponent triples v
/// in (Z/N)^3 whose three monomial factors agree mod N, then divide by N for
/// the diagonal scalars. Every diagonal automorphism has order dividing N,
/// so level N sees the whole group.
pub fn brute_force_group_order(c: &TrinomialCurve) -> Result<i64, TrinomiaError> {
    let delta = c.matrix.determinant();
    if delta == 0 {
        return Err(TrinomiaError::DegeneratePowerMatrix);
    }
    let nn = delta.unsigned_abs();
    if nn > 10_000 {
        return Err(TrinomiaError::EnumerationBound(format!(
            "|det P| = {} exceeds 10^4",
            nn
        )));
    }
    let n = nn as i64;
    let m = c.matrix.as_i64();
    let mut count: i64 = 0;
    for a in 0..n {
        for b in 0..n {
            // row values depend linearly on the third coordinate; count c
            // directly all the same to stay a plain enumeration
            for cc in 0..n {
                let r0 = m[0][0] * a + m[0][1] * b + m[0][2] * cc;
                let r1 = m[1][0] * a + m[1][1] * b + m[1][2] * cc;
                let r2 = m[2][0] * a + m[2][1] * b + m[2][2] * cc;
                if (r0 - r1).rem_euclid(n) == 0 && (r1 - r2).rem_euclid(n) == 0 {
                    count += 1;
                }
            }
        }
    }
    assert_eq!(count % n, 0);
    Ok(count / n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{canonical_curve, CurveType, ALL_TYPES};

    #[test]
    fn difference_matrix_examples() {
        let f = CurveType::Fermat.canonical_matrix(4).unwrap();
        assert_eq!(difference_matrix(&f), [[4, -4, 0], [0, 4, -4]]);
        let k = CurveType::Klein.canonical_matrix(4).unwrap();
        assert_eq!(difference_matrix(&k), [[1, 2, -3], [-3, 1, 2]]);
        let b = CurveType::Block.canonical_matrix(4).unwrap();
        assert_eq!(difference_matrix(&b), [[4, -3, -1], [0, 2, -2]]);
    }

    #[test]
    fn group_examples() {
        // Fermat d=3: invariants (3,3), order 9
        let f = canonical_curve(CurveType::Fermat, 3).unwrap();
        let g = diagonal_automorphism_group(&f).unwrap();
        assert_eq!(g.factors, (3, 3));
        assert_eq!(g.order, 9);
        assert_eq!(g.generators.len(), 2);
        // Klein d=4: invariants (1,7), order 7
        let k = canonical_curve(CurveType::Klein, 4).unwrap();
        let g = diagonal_automorphism_group(&k).unwrap();
        assert_eq!(g.factors, (1, 7));
        assert_eq!(g.order, 7);
        assert_eq!(g.generators.len(), 1);
        // Block d=4: invariants (1,8), order 8
        let b = canonical_curve(CurveType::Block, 4).unwrap();
        let g = diagonal_automorphism_group(&b).unwrap();
        assert_eq!(g.factors, (1, 8));
        assert_eq!(g.order, 8);
    }

    #[test]
    fn order_identity_all_types() {
        for ty in ALL_TYPES {
            for d in 3..=12 {
                let c = canonical_curve(ty, d).unwrap();
                let g = diagonal_automorphism_group(&c).unwrap();
                let delta = ty.determinant_formula(d);
                assert_eq!(
                    g.order,
                    delta / d as i64,
                    "{:?} d={}: SNF order vs Delta/d",
                    ty,
                    d
                );
                assert!(!g.trivial, "{:?} d={} must have nontrivial group", ty, d);
                assert!(g.order >= 2);
                // divisibility n1 | n2
                assert_eq!(g.factors.1 % g.factors.0, 0);
                for gen in &g.generators {
                    assert!(verify_automorphism(&c, gen.numerators, gen.order));
                }
            }
        }
    }

    #[test]
    fn oracle_agreement_small() {
        for ty in ALL_TYPES {
            for d in [3u32, 4] {
                let c = canonical_curve(ty, d).unwrap();
                let bf = brute_force_group_order(&c).unwrap();
                let g = diagonal_automorphism_group(&c).unwrap();
                assert_eq!(bf, g.order, "{:?} d={}", ty, d);
            }
        }
    }

    #[test]
    fn klein_d3_oracle_value() {
        let c = canonical_curve(CurveType::Klein, 3).unwrap();
        assert_eq!(brute_force_group_order(&c).unwrap(), 3);
    }

    #[test]
    fn verify_examples() {
        // the diagonal triple acts as a scalar at any level
        let c = canonical_curve(CurveType::Block, 5).unwrap();
        assert!(verify_automorphism(&c, [1, 1, 1], 4));
        // Fermat d=3, (1,0,0)/2: factors differ mod 2
        let f = canonical_curve(CurveType::Fermat, 3).unwrap();
        assert!(!verify_automorphism(&f, [1, 0, 0], 2));
        // Klein d=4 canonical generator
        let k = canonical_curve(CurveType::Klein, 4).unwrap();
        let g = diagonal_automorphism_group(&k).unwrap();
        assert_eq!(g.generators[0].order, 7);
        assert!(verify_automorphism(&k, g.generators[0].numerators, 7));
    }

    #[test]
    fn enumeration_bound_respected() {
        // Fermat d = 22 has determinant 10648 > 10^4
        let c = canonical_curve(CurveType::Fermat, 22).unwrap();
        assert!(matches!(
            brute_force_group_order(&c),
            Err(TrinomiaError::EnumerationBound(_))
        ));
    }

    #[test]
    fn generator_canonical_form_is_lex_min() {
        let k = canonical_curve(CurveType::Klein, 4).unwrap();
        let g = diagonal_automorphism_group(&k).unwrap();
        let gen = &g.generators[0];
        // among unit multiples, the reported lift is the smallest
        for u in 1..gen.order {
            if gcd64(u, gen.order) != 1 {
                continue;
            }
            let cand = [
                (gen.numerators[0] * u).rem_euclid(gen.order),
                (gen.numerators[1] * u).rem_euclid(gen.order),
                (gen.numerators[2] * u).rem_euclid(gen.order),
            ];
            assert!(cand >= gen.numerators);
        }
    }
}
