//! Core domain objects: zero patterns, power matrices, trinomial curves, and
//! the five named curve types with their canonical equations and determinant
//! formulas.

use crate::algebra::snf::det3;
use crate::{MultiPoly, Rat, TrinomiaError};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// 3x3 boolean star/zero matrix recording which exponents are nonzero,
/// packed into nine bits (bit 3i+j = entry (i,j)).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ZeroPattern(pub u16);

impl ZeroPattern {
    pub fn get(self, i: usize, j: usize) -> bool {
        self.0 >> (3 * i + j) & 1 == 1
    }

    pub fn from_rows(rows: [[bool; 3]; 3]) -> Self {
        let mut m = 0u16;
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b {
                    m |= 1 << (3 * i + j);
                }
            }
        }
        ZeroPattern(m)
    }

    pub fn all() -> impl Iterator<Item = ZeroPattern> {
        (0u16..512).map(ZeroPattern)
    }

    /// Apply a group element: row permutation sigma, column permutation tau.
    /// New entry (i, j) = old entry (sigma(i), tau(j)).
    pub fn act(self, sigma: &[usize; 3], tau: &[usize; 3]) -> ZeroPattern {
        let mut m = 0u16;
        for i in 0..3 {
            for j in 0..3 {
                if self.get(sigma[i], tau[j]) {
                    m |= 1 << (3 * i + j);
                }
            }
        }
        ZeroPattern(m)
    }

    pub fn has_zero_row(self) -> bool {
        (0..3).any(|i| (0..3).all(|j| !self.get(i, j)))
    }

    pub fn has_zero_col(self) -> bool {
        (0..3).any(|j| (0..3).all(|i| !self.get(i, j)))
    }

    pub fn has_full_row(self) -> bool {
        (0..3).any(|i| (0..3).all(|j| self.get(i, j)))
    }

    pub fn has_full_col(self) -> bool {
        (0..3).any(|j| (0..3).all(|i| self.get(i, j)))
    }

    pub fn star_count(self) -> u32 {
        self.0.count_ones()
    }
}

impl fmt::Display for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..3 {
            for j in 0..3 {
                write!(f, "{}", if self.get(i, j) { '*' } else { '0' })?;
            }
            if i < 2 {
                write!(f, "/")?;
            }
        }
        Ok(())
    }
}

/// 3x3 non-negative integer exponent matrix; every row sums to the degree d.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct PowerMatrix {
    pub rows: [[u16; 3]; 3],
}

impl PowerMatrix {
    pub fn new(rows: [[u16; 3]; 3]) -> Result<Self, TrinomiaError> {
        let sums: Vec<u32> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as u32).sum())
            .collect();
        if sums[0] != sums[1] || sums[1] != sums[2] {
            return Err(TrinomiaError::BadCurveFile(format!(
                "rows of a power matrix must share one degree, got sums {:?}",
                sums
            )));
        }
        Ok(PowerMatrix { rows })
    }

    pub fn degree(&self) -> u32 {
        self.rows[0].iter().map(|&x| x as u32).sum()
    }

    pub fn pattern(&self) -> ZeroPattern {
        ZeroPattern::from_rows([
            [self.rows[0][0] > 0, self.rows[0][1] > 0, self.rows[0][2] > 0],
            [self.rows[1][0] > 0, self.rows[1][1] > 0, self.rows[1][2] > 0],
            [self.rows[2][0] > 0, self.rows[2][1] > 0, self.rows[2][2] > 0],
        ])
    }

    /// Exact 3x3 determinant.
    pub fn determinant(&self) -> i64 {
        let m = self.as_i64();
        det3(&m)
    }

    pub fn as_i64(&self) -> [[i64; 3]; 3] {
        let r = &self.rows;
        [
            [r[0][0] as i64, r[0][1] as i64, r[0][2] as i64],
            [r[1][0] as i64, r[1][1] as i64, r[1][2] as i64],
            [r[2][0] as i64, r[2][1] as i64, r[2][2] as i64],
        ]
    }

    /// Simultaneous column permutation and row reordering.
    pub fn permute(&self, sigma: &[usize; 3], tau: &[usize; 3]) -> PowerMatrix {
        let mut rows = [[0u16; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                rows[i][j] = self.rows[sigma[i]][tau[j]];
            }
        }
        PowerMatrix { rows }
    }
}

/// The five curve types of the classification.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveType {
    Fermat,
    SmallJordan,
    Block,
    BigJordan,
    Klein,
}

pub const ALL_TYPES: [CurveType; 5] = [
    CurveType::Fermat,
    CurveType::SmallJordan,
    CurveType::Block,
    CurveType::BigJordan,
    CurveType::Klein,
];

impl CurveType {
    pub fn name(self) -> &'static str {
        match self {
            CurveType::Fermat => "fermat",
            CurveType::SmallJordan => "small_jordan",
            CurveType::Block => "block",
            CurveType::BigJordan => "big_jordan",
            CurveType::Klein => "klein",
        }
    }

    pub fn from_name(s: &str) -> Option<CurveType> {
        match s {
            "fermat" => Some(CurveType::Fermat),
            "small_jordan" => Some(CurveType::SmallJordan),
            "block" => Some(CurveType::Block),
            "big_jordan" => Some(CurveType::BigJordan),
            "klein" => Some(CurveType::Klein),
            _ => None,
        }
    }

    /// Canonical exponent matrix at degree d.
    ///
    /// The small Jordan form is the smooth one (x^d + y^d + y z^{d-1}); the
    /// variant printed in the classification theorem's table is singular at
    /// (1:0:0) and is kept separately as [`small_jordan_printed_variant`].
    pub fn canonical_matrix(self, d: u32) -> Result<PowerMatrix, TrinomiaError> {
        if d < 3 {
            return Err(TrinomiaError::DegreeBelowCubic(d));
        }
        let d = d as u16;
        let rows = match self {
            CurveType::Fermat => [[d, 0, 0], [0, d, 0], [0, 0, d]],
            CurveType::SmallJordan => [[d, 0, 0], [0, d, 0], [0, 1, d - 1]],
            CurveType::Block => [[d, 0, 0], [0, d - 1, 1], [0, 1, d - 1]],
            CurveType::BigJordan => [[d, 0, 0], [1, d - 1, 0], [0, 1, d - 1]],
            CurveType::Klein => [[1, d - 1, 0], [0, 1, d - 1], [d - 1, 0, 1]],
        };
        PowerMatrix::new(rows)
    }

    /// Closed-form determinant of the canonical matrix.
    pub fn determinant_formula(self, d: u32) -> i64 {
        let d = d as i64;
        match self {
            CurveType::Fermat => d * d * d,
            CurveType::SmallJordan => d * d * (d - 1),
            CurveType::Block => d * d * (d - 2),
            CurveType::BigJordan => d * (d - 1) * (d - 1),
            CurveType::Klein => d * (d * d - 3 * d + 3),
        }
    }
}

/// The singular small Jordan variant as printed in the classification table:
/// x y^{d-1} + y^d + z^d. Kept for the erratum regression checks.
pub fn small_jordan_printed_variant(d: u32) -> Result<PowerMatrix, TrinomiaError> {
    if d < 3 {
        return Err(TrinomiaError::DegreeBelowCubic(d));
    }
    let d = d as u16;
    PowerMatrix::new([[1, d - 1, 0], [0, d, 0], [0, 0, d]])
}

/// A trinomial curve: power matrix plus three nonzero rational coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct TrinomialCurve {
    pub matrix: PowerMatrix,
    pub coeffs: [Rat; 3],
}

impl TrinomialCurve {
    pub fn new(matrix: PowerMatrix, coeffs: [Rat; 3]) -> Result<Self, TrinomiaError> {
        if coeffs.iter().any(|a| a.is_zero()) {
            return Err(TrinomiaError::ZeroCoefficient);
        }
        Ok(TrinomialCurve { matrix, coeffs })
    }

    pub fn with_unit_coeffs(matrix: PowerMatrix) -> Self {
        TrinomialCurve {
            matrix,
            coeffs: [Rat::one(), Rat::one(), Rat::one()],
        }
    }

    pub fn degree(&self) -> u32 {
        self.matrix.degree()
    }

    /// The defining polynomial F = sum A_i x^{p_i1} y^{p_i2} z^{p_i3} as an
    /// arity-3 polynomial. Equal rows merge by adding coefficients.
    pub fn polynomial(&self) -> MultiPoly {
        let mut terms = Vec::new();
        for (row, a) in self.matrix.rows.iter().zip(self.coeffs.iter()) {
            terms.push((
                [row[0], row[1], row[2], 0],
                a.clone(),
            ));
        }
        MultiPoly::from_terms(3, terms)
    }

    /// Gcd monomial of the three terms: exponent vector of the common factor,
    /// or None when every column of the pattern contains a zero.
    pub fn common_monomial_factor(&self) -> Option<[u16; 3]> {
        let mut g = [u16::MAX; 3];
        for row in &self.matrix.rows {
            for j in 0..3 {
                g[j] = g[j].min(row[j]);
            }
        }
        if g == [0, 0, 0] {
            None
        } else {
            Some(g)
        }
    }
}

/// Canonical smooth representative of a type with unit coefficients.
pub fn canonical_curve(ty: CurveType, d: u32) -> Result<TrinomialCurve, TrinomiaError> {
    Ok(TrinomialCurve::with_unit_coeffs(ty.canonical_matrix(d)?))
}

/// JSON wire format for curves:
/// `{"d": 4, "P": [[4,0,0],[0,4,0],[0,1,3]], "A": ["1","1","1"], "type": "small_jordan"}`
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CurveJson {
    pub d: u32,
    #[serde(rename = "P")]
    pub p: [[u16; 3]; 3],
    #[serde(rename = "A")]
    pub a: [String; 3],
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub curve_type: Option<String>,
}

/// Parse an exact rational from a decimal string; accepts "3/2", "-7", "1.25".
pub fn parse_rational(s: &str) -> Result<Rat, TrinomiaError> {
    let s = s.trim();
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let combined = format!("{}{}", int_digits, frac_part);
        let numer = num_bigint::BigInt::from_str(&combined)
            .map_err(|e| TrinomiaError::BadCurveFile(format!("bad rational '{}': {}", s, e)))?;
        let denom = num_bigint::BigInt::from(10u32).pow(frac_part.len() as u32);
        let r = Rat::new(numer, denom);
        return Ok(if neg { -r } else { r });
    }
    Rat::from_str(s).map_err(|e| TrinomiaError::BadCurveFile(format!("bad rational '{}': {}", s, e)))
}

impl TrinomialCurve {
    pub fn to_json(&self, ty: Option<CurveType>) -> CurveJson {
        CurveJson {
            d: self.degree(),
            p: self.matrix.rows,
            a: [
                rat_str(&self.coeffs[0]),
                rat_str(&self.coeffs[1]),
                rat_str(&self.coeffs[2]),
            ],
            curve_type: ty.map(|t| t.name().to_string()),
        }
    }

    pub fn from_json(j: &CurveJson) -> Result<(Self, Option<CurveType>), TrinomiaError> {
        let m = PowerMatrix::new(j.p)?;
        if m.degree() != j.d {
            return Err(TrinomiaError::BadCurveFile(format!(
                "declared degree {} but row sums give {}",
                j.d,
                m.degree()
            )));
        }
        let a = [
            parse_rational(&j.a[0])?,
            parse_rational(&j.a[1])?,
            parse_rational(&j.a[2])?,
        ];
        let ty = match &j.curve_type {
            None => None,
            Some(s) => Some(CurveType::from_name(s).ok_or_else(|| {
                TrinomiaError::BadCurveFile(format!("unknown curve type '{}'", s))
            })?),
        };
        Ok((TrinomialCurve::new(m, a)?, ty))
    }
}

pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one() || r.denom().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        // (Fermat, 4) -> x^4+y^4+z^4, P = diag(4,4,4)
        let f = canonical_curve(CurveType::Fermat, 4).unwrap();
        assert_eq!(f.matrix.rows, [[4, 0, 0], [0, 4, 0], [0, 0, 4]]);
        // (Klein, 4) -> xy^3 + yz^3 + zx^3
        let k = canonical_curve(CurveType::Klein, 4).unwrap();
        assert_eq!(k.matrix.rows, [[1, 3, 0], [0, 1, 3], [3, 0, 1]]);
        // (Block, 3) -> x^3 + y^2 z + y z^2
        let b = canonical_curve(CurveType::Block, 3).unwrap();
        assert_eq!(b.matrix.rows, [[3, 0, 0], [0, 2, 1], [0, 1, 2]]);
        assert!(matches!(
            canonical_curve(CurveType::Fermat, 2),
            Err(TrinomiaError::DegreeBelowCubic(2))
        ));
    }

    #[test]
    fn determinant_examples() {
        let f = CurveType::Fermat.canonical_matrix(4).unwrap();
        assert_eq!(f.determinant(), 64); // d^3
        let k = CurveType::Klein.canonical_matrix(4).unwrap();
        assert_eq!(k.determinant(), 28); // d(d^2-3d+3) at d=4
        let ones = PowerMatrix::new([[1, 1, 1], [1, 1, 1], [1, 1, 1]]).unwrap();
        assert_eq!(ones.determinant(), 0);
    }

    #[test]
    fn formula_table_spot_checks() {
        assert_eq!(CurveType::Block.determinant_formula(5), 75);
        assert_eq!(CurveType::Fermat.determinant_formula(3), 27);
        assert_eq!(CurveType::Klein.determinant_formula(3), 9);
    }

    #[test]
    fn formula_matches_matrix_up_to_50() {
        for ty in ALL_TYPES {
            for d in 3..=50 {
                let m = ty.canonical_matrix(d).unwrap();
                assert_eq!(
                    m.determinant(),
                    ty.determinant_formula(d),
                    "{:?} d={}",
                    ty,
                    d
                );
                // non-degeneracy and divisibility by d
                assert_ne!(m.determinant(), 0);
                assert_eq!(m.determinant() % d as i64, 0);
                // homogeneity
                assert_eq!(m.degree(), d);
            }
        }
    }

    #[test]
    fn common_factor_examples() {
        // x^3 + y^2 z + y z^2 -> none
        let b = canonical_curve(CurveType::Block, 3).unwrap();
        assert_eq!(b.common_monomial_factor(), None);
        // x y^2 + x z^2 + x y z -> gcd x
        let c = TrinomialCurve::with_unit_coeffs(
            PowerMatrix::new([[1, 2, 0], [1, 0, 2], [1, 1, 1]]).unwrap(),
        );
        assert_eq!(c.common_monomial_factor(), Some([1, 0, 0]));
        // y^b z^c + 2 x^d with b, c > 0: no shared variable
        let e = TrinomialCurve::new(
            PowerMatrix::new([[0, 2, 1], [3, 0, 0], [3, 0, 0]]).unwrap(),
            [Rat::one(), Rat::one(), Rat::one()],
        )
        .unwrap();
        assert_eq!(e.common_monomial_factor(), None);
    }

    #[test]
    fn json_round_trip() {
        let c = canonical_curve(CurveType::SmallJordan, 4).unwrap();
        let j = c.to_json(Some(CurveType::SmallJordan));
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"small_jordan\""));
        let back: CurveJson = serde_json::from_str(&text).unwrap();
        let (c2, ty) = TrinomialCurve::from_json(&back).unwrap();
        assert_eq!(c, c2);
        assert_eq!(ty, Some(CurveType::SmallJordan));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2").unwrap(), Rat::new(3.into(), 2.into()));
        assert_eq!(parse_rational("-7").unwrap(), Rat::from_integer((-7).into()));
        assert_eq!(parse_rational("1.25").unwrap(), Rat::new(5.into(), 4.into()));
    }
}
