//! Low-degree specials: j-invariants of the five cubics via the classical
//! degree-4 and degree-6 invariants of a ternary cubic, and the explicit
//! projective equivalence between the Fermat quartic and the block quartic,
//! including the degeneracy check of the printed transformation matrix.

mod numfield;
mod tables;

pub use numfield::{Ext, GaussRat};

use crate::algebra::Poly;
use crate::curve::{CurveType, TrinomialCurve};
use crate::{MultiPoly, Rat, TrinomiaError};
use num_traits::{One, Zero};

/// Classical invariants of a ternary cubic, in the normalization calibrated
/// on y^2 z - x^3 - a x z^2 - b z^3 (where S = a and T = b exactly), so the
/// j-invariant is 1728 * 4 S^3 / (4 S^3 + 27 T^2) and the discriminant-like
/// combination 4 S^3 + 27 T^2 vanishes exactly on the singular cubics.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryCubicInvariants {
    pub s: Rat,
    pub t: Rat,
    pub disc_comb: Rat,
    pub j: Option<Rat>,
}

/// Evaluate the invariants of an arbitrary homogeneous ternary cubic.
pub fn ternary_cubic_invariants(f: &MultiPoly) -> Result<TernaryCubicInvariants, TrinomiaError> {
    if f.is_zero() || f.total_degree() != Some(3) || !f.is_homogeneous() {
        return Err(TrinomiaError::NotCubic(
            f.total_degree().unwrap_or(0),
        ));
    }
    // collect the ten coefficients in the fixed monomial order
    let mut coeffs = vec![Rat::zero(); 10];
    'terms: for (e, c) in f.terms() {
        for (slot, m) in tables::CUBIC_MONOMIALS.iter().enumerate() {
            if e[0] == m[0] as u16 && e[1] == m[1] as u16 && e[2] == m[2] as u16 {
                coeffs[slot] = c.clone();
                continue 'terms;
            }
        }
        return Err(TrinomiaError::NotCubic(3));
    }
    let eval_table = |rows: &[([u8; 10], i64)]| -> Rat {
        let mut total = Rat::zero();
        for (exps, k) in rows {
            let mut term = Rat::from_integer((*k).into());
            for (slot, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term *= &coeffs[slot];
                }
            }
            total += term;
        }
        total
    };
    let s_raw = eval_table(&tables::S_TERMS);
    let t_raw = eval_table(&tables::T_TERMS);
    let s = s_raw / Rat::from_integer((-48).into());
    let t = t_raw / Rat::from_integer((-864).into());
    let four = Rat::from_integer(4.into());
    let twenty_seven = Rat::from_integer(27.into());
    let s3 = &s * &s * &s;
    let disc_comb = &four * &s3 + &twenty_seven * &t * &t;
    let j = if disc_comb.is_zero() {
        None
    } else {
        Some(Rat::from_integer(1728.into()) * &four * &s3 / &disc_comb)
    };
    Ok(TernaryCubicInvariants { s, t, disc_comb, j })
}

/// j-invariant of a trinomial cubic; `None` marks a singular cubic.
pub fn j_invariant_cubic(c: &TrinomialCurve) -> Result<TernaryCubicInvariants, TrinomiaError> {
    if c.degree() != 3 {
        return Err(TrinomiaError::NotCubic(c.degree()));
    }
    ternary_cubic_invariants(&c.polynomial())
}

/// Partition of the five cubic types by j-invariant. Exactly two classes:
/// j = 0 holds for all but the big Jordan cubic, which sits at j = 1728.
pub fn birational_census_cubics() -> Result<Vec<(Rat, Vec<CurveType>)>, TrinomiaError> {
    let mut classes: Vec<(Rat, Vec<CurveType>)> = Vec::new();
    for ty in crate::curve::ALL_TYPES {
        let c = crate::curve::canonical_curve(ty, 3)?;
        let inv = j_invariant_cubic(&c)?;
        let j = inv.j.ok_or_else(|| {
            TrinomiaError::Undetermined(format!("canonical {:?} cubic is singular", ty))
        })?;
        match classes.iter_mut().find(|(jj, _)| *jj == j) {
            Some((_, list)) => list.push(ty),
            None => classes.push((j, vec![ty])),
        }
    }
    classes.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(classes)
}

/// Verdict on the printed quartic-equivalence matrix.
#[derive(Clone, Debug)]
pub struct PaperMatrixVerdict {
    pub determinant: Ext,
    pub rank: usize,
    pub degenerate: bool,
}

fn ext_matrix_det(m: &[[Ext; 3]; 3]) -> Ext {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        m[a][c].clone() * m[b][d].clone() - m[a][d].clone() * m[b][c].clone()
    };
    m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2)
        + m[0][2].clone() * minor(1, 2, 0, 1)
}

fn ext_matrix_rank(m: &[[Ext; 3]; 3]) -> usize {
    let mut rows: Vec<Vec<Ext>> = m.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..3).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone().inverse();
        for i in 0..3 {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone() * inv.clone();
            for j in 0..3 {
                rows[i][j] = rows[i][j].clone() - f.clone() * rows[rank][j].clone();
            }
        }
        rank += 1;
    }
    rank
}

/// Exact evaluation of the transformation matrix printed alongside the
/// quartic-equivalence claim. Its second and third rows coincide, so the
/// determinant is exactly zero: the printed matrix cannot witness a
/// projective equivalence.
pub fn paper_quartic_matrix_check() -> PaperMatrixVerdict {
    let half = Ext::from_rat(Rat::new(1.into(), 2.into()));
    let quarter = Ext::from_rat(Rat::new(1.into(), 4.into()));
    let r = Ext::r();
    // row entries: 2^{1/4}/2 and 2^{3/4}/4 + i 2^{3/4}/4
    let e1 = r.clone() * half;
    let e2 = (Ext::one() + Ext::i()) * r.pow(3) * quarter;
    let m = [
        [Ext::one(), Ext::zero(), Ext::zero()],
        [Ext::zero(), e1.clone(), e2.clone()],
        [Ext::zero(), e1, e2],
    ];
    let determinant = ext_matrix_det(&m);
    let rank = ext_matrix_rank(&m);
    PaperMatrixVerdict {
        degenerate: determinant.is_zero(),
        determinant,
        rank,
    }
}

/// A verified projective-equivalence witness between the Fermat quartic
/// x^4 + y^4 + z^4 and the block quartic u^4 + w v^3 + v w^3, over
/// Q(i)(r), r^4 = 2.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    /// (x, y, z)^T = matrix * (u, v, w)^T.
    pub matrix: [[Ext; 3]; 3],
    /// F_fermat(T(u,v,w)) = scalar * F_block(u,v,w), exactly.
    pub scalar: Ext,
    pub source: MultiPoly,
    pub target: MultiPoly,
}

fn fermat_quartic() -> MultiPoly {
    let one = Rat::one;
    MultiPoly::from_terms(
        3,
        vec![
            ([4, 0, 0, 0], one()),
            ([0, 4, 0, 0], one()),
            ([0, 0, 4, 0], one()),
        ],
    )
}

fn block_quartic_uvw() -> MultiPoly {
    let one = Rat::one;
    MultiPoly::from_terms(
        3,
        vec![
            ([4, 0, 0, 0], one()),
            ([0, 3, 1, 0], one()),
            ([0, 1, 3, 0], one()),
        ],
    )
}

/// Construct the corrected witness: x = 2^{3/4} u, (y, z) = M (v, w) with
/// M = [[omega, -omega], [1, 1]] for omega a primitive eighth root of unity.
/// Both binary quartics y^4 + z^4 and v w (v^2 + w^2) have harmonic root
/// quadruples, which is what makes a 2x2 transformation possible; the
/// substitution identity is then checked exactly in the extension field.
pub fn construct_quartic_equivalence() -> Result<EquivalenceWitness, TrinomiaError> {
    let omega = (Ext::one() + Ext::i()) * Ext::r().pow(2) / Ext::from_i64(2);
    let matrix = [
        [Ext::r().pow(3), Ext::zero(), Ext::zero()],
        [Ext::zero(), omega.clone(), -omega.clone()],
        [Ext::zero(), Ext::one(), Ext::one()],
    ];
    let scalar = Ext::from_i64(8);
    // lift the source to Ext coefficients and substitute
    let source = fermat_quartic();
    let target = block_quartic_uvw();
    let src_ext: Poly<Ext> = source.map_coeffs(|c| Ext::from_rat(c.clone()));
    let tgt_ext: Poly<Ext> = target.map_coeffs(|c| Ext::from_rat(c.clone()));
    let images: Vec<Poly<Ext>> = (0..3)
        .map(|i| {
            let mut p = Poly::zero_poly(3);
            for (j, var) in (0..3).enumerate() {
                let term = Poly::var(3, var).scale(&matrix[i][j]);
                p = &p + &term;
            }
            p
        })
        .collect();
    let image = src_ext.compose(&images);
    let want = tgt_ext.scale(&scalar);
    if image != want {
        return Err(TrinomiaError::Undetermined(
            "quartic equivalence identity failed".into(),
        ));
    }
    if ext_matrix_det(&matrix).is_zero() {
        return Err(TrinomiaError::Undetermined(
            "witness matrix is singular".into(),
        ));
    }
    Ok(EquivalenceWitness {
        matrix,
        scalar,
        source,
        target,
    })
}

/// Projective point on the line over the extension field.
pub type ProjPoint = (Ext, Ext);

/// Cross-ratio of four projective points via 2x2 determinants:
/// ((a,c)(b,d)) / ((a,d)(b,c)).
pub fn cross_ratio(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Ext {
    let det = |p: &ProjPoint, q: &ProjPoint| p.0.clone() * q.1.clone() - p.1.clone() * q.0.clone();
    (det(a, c) * det(b, d)) / (det(a, d) * det(b, c))
}

/// True when some ordering of the quadruple has cross-ratio -1.
pub fn is_harmonic(pts: &[ProjPoint; 4]) -> bool {
    let idx = [
        [0, 1, 2, 3],
        [0, 2, 1, 3],
        [0, 3, 1, 2],
    ];
    idx.iter().any(|ord| {
        cross_ratio(&pts[ord[0]], &pts[ord[1]], &pts[ord[2]], &pts[ord[3]]) == -Ext::one()
    })
}

/// Root quadruple of y^4 + z^4 as (y : z) slopes: the primitive eighth roots
/// of unity.
pub fn fermat_binary_roots() -> [ProjPoint; 4] {
    let omega = (Ext::one() + Ext::i()) * Ext::r().pow(2) / Ext::from_i64(2);
    [
        (omega.clone(), Ext::one()),
        (omega.pow(3), Ext::one()),
        (omega.pow(5), Ext::one()),
        (omega.pow(7), Ext::one()),
    ]
}

/// Root quadruple of v w (v^2 + w^2): {0, infinity, i, -i}.
pub fn block_binary_roots() -> [ProjPoint; 4] {
    [
        (Ext::zero(), Ext::one()),
        (Ext::one(), Ext::zero()),
        (Ext::i(), Ext::one()),
        (-Ext::i(), Ext::one()),
    ]
}

/// Census of birational types among the quartics: the verified coincidence
/// merges Fermat with the block type; distinctness of the remaining types is
/// taken from the source and left unverified.
#[derive(Clone, Debug)]
pub struct QuarticCensus {
    pub count: usize,
    pub verified_coincidence: (CurveType, CurveType),
    pub distinctness_unverified: bool,
}

pub fn birational_census_quartics() -> Result<QuarticCensus, TrinomiaError> {
    construct_quartic_equivalence()?;
    Ok(QuarticCensus {
        count: 4,
        verified_coincidence: (CurveType::Fermat, CurveType::Block),
        distinctness_unverified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{canonical_curve, small_jordan_printed_variant, ALL_TYPES};
    use crate::smoothness::certify_smooth_default;
    use rand::{Rng, SeedableRng};

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn weierstrass(a: i64, b: i64) -> MultiPoly {
        // y^2 z - x^3 - a x z^2 - b z^3
        MultiPoly::from_terms(
            3,
            vec![
                ([0, 2, 1, 0], q(1)),
                ([3, 0, 0, 0], q(-1)),
                ([1, 0, 2, 0], q(-a)),
                ([0, 0, 3, 0], q(-b)),
            ],
        )
    }

    #[test]
    fn calibration_family() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 20 {
            let a: i64 = rng.gen_range(-9..=9);
            let b: i64 = rng.gen_range(-9..=9);
            if 4 * a.pow(3) + 27 * b.pow(2) == 0 {
                continue;
            }
            let inv = ternary_cubic_invariants(&weierstrass(a, b)).unwrap();
            assert_eq!(inv.s, q(a));
            assert_eq!(inv.t, q(b));
            let expect = q(1728 * 4) * q(a).pow(3)
                / (q(4) * q(a).pow(3) + q(27) * q(b).pow(2));
            assert_eq!(inv.j, Some(expect));
            done += 1;
        }
        // b = 0 gives j = 1728 exactly
        let inv = ternary_cubic_invariants(&weierstrass(1, 0)).unwrap();
        assert_eq!(inv.j, Some(q(1728)));
        // singular member of the family
        let sing = ternary_cubic_invariants(&weierstrass(-3, 2)).unwrap();
        assert_eq!(sing.j, None);
    }

    #[test]
    fn five_cubics_j_values() {
        let want = [
            (CurveType::Fermat, Some(q(0))),
            (CurveType::SmallJordan, Some(q(0))),
            (CurveType::Block, Some(q(0))),
            (CurveType::BigJordan, Some(q(1728))),
            (CurveType::Klein, Some(q(0))),
        ];
        for (ty, expect) in want {
            let c = canonical_curve(ty, 3).unwrap();
            let inv = j_invariant_cubic(&c).unwrap();
            assert_eq!(inv.j, expect, "{:?}", ty);
        }
    }

    #[test]
    fn printed_small_jordan_cubic_undefined() {
        let c = TrinomialCurve::with_unit_coeffs(small_jordan_printed_variant(3).unwrap());
        let inv = j_invariant_cubic(&c).unwrap();
        assert_eq!(inv.j, None);
        // the smoothness module flags the same curve singular
        assert!(certify_smooth_default(&c).unwrap().is_singular());
    }

    #[test]
    fn corrected_small_jordan_cubic_j_zero() {
        let c = canonical_curve(CurveType::SmallJordan, 3).unwrap();
        assert_eq!(j_invariant_cubic(&c).unwrap().j, Some(q(0)));
    }

    #[test]
    fn census_two_classes() {
        let classes = birational_census_cubics().unwrap();
        assert_eq!(classes.len(), 2);
        let zero_class = classes.iter().find(|(j, _)| j.is_zero()).unwrap();
        assert_eq!(zero_class.1.len(), 4);
        let big = classes.iter().find(|(j, _)| *j == q(1728)).unwrap();
        assert_eq!(big.1, vec![CurveType::BigJordan]);
    }

    #[test]
    fn wrong_degree_rejected() {
        let c = canonical_curve(CurveType::Fermat, 4).unwrap();
        assert!(matches!(
            j_invariant_cubic(&c),
            Err(TrinomiaError::NotCubic(4))
        ));
    }

    #[test]
    fn scale_invariance_of_j() {
        let c = canonical_curve(CurveType::Klein, 3).unwrap();
        let f = c.polynomial();
        let scaled = f.scale(&Rat::new(7.into(), 3.into()));
        assert_eq!(
            ternary_cubic_invariants(&f).unwrap().j,
            ternary_cubic_invariants(&scaled).unwrap().j
        );
    }

    #[test]
    fn unimodular_invariance_of_j() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for ty in ALL_TYPES {
            let f = canonical_curve(ty, 3).unwrap().polynomial();
            let base = ternary_cubic_invariants(&f).unwrap().j;
            for _ in 0..10 {
                let m = random_unimodular(&mut rng);
                let images: Vec<MultiPoly> = (0..3)
                    .map(|i| {
                        let mut p = MultiPoly::zero_poly(3);
                        for j in 0..3 {
                            p = &p + &MultiPoly::var(3, j).scale(&q(m[i][j]));
                        }
                        p
                    })
                    .collect();
                let g = f.compose(&images);
                assert_eq!(ternary_cubic_invariants(&g).unwrap().j, base);
            }
        }
    }

    fn random_unimodular(rng: &mut rand_chacha::ChaCha8Rng) -> [[i64; 3]; 3] {
        // product of random elementary shears and swaps: determinant +-1
        let mut m = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
        for _ in 0..6 {
            let i = rng.gen_range(0..3);
            let mut j = rng.gen_range(0..3);
            while j == i {
                j = rng.gen_range(0..3);
            }
            let c: i64 = rng.gen_range(-2..=2);
            for k in 0..3 {
                m[i][k] += c * m[j][k];
            }
            if rng.gen_bool(0.3) {
                m.swap(i, j);
            }
        }
        m
    }

    #[test]
    fn paper_matrix_is_degenerate() {
        let v = paper_quartic_matrix_check();
        assert!(v.determinant.is_zero());
        assert!(v.degenerate);
        assert_eq!(v.rank, 2);
    }

    #[test]
    fn quartic_equivalence_witness() {
        let w = construct_quartic_equivalence().unwrap();
        assert_eq!(w.scalar, Ext::from_i64(8));
        assert!(!ext_matrix_det(&w.matrix).is_zero());
    }

    #[test]
    fn harmonic_root_quadruples() {
        assert!(is_harmonic(&fermat_binary_roots()));
        assert!(is_harmonic(&block_binary_roots()));
        // and a non-harmonic quadruple for contrast
        let pts = [
            (Ext::zero(), Ext::one()),
            (Ext::one(), Ext::zero()),
            (Ext::one(), Ext::one()),
            (Ext::from_i64(3), Ext::one()),
        ];
        assert!(!is_harmonic(&pts));
    }

    #[test]
    fn quartic_census() {
        let c = birational_census_quartics().unwrap();
        assert_eq!(c.count, 4);
        assert_eq!(
            c.verified_coincidence,
            (CurveType::Fermat, CurveType::Block)
        );
        assert!(c.distinctness_unverified);
    }
}
