//! Smith normal form of small integer matrices by elementary row/column
//! reduction, with the unimodular transforms tracked explicitly.

/// Result of a Smith normal form computation: `left * original * right` is
/// the diagonal matrix of `factors` (padded with zeros), the transforms are
/// unimodular, and consecutive nonzero factors divide each other.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult {
    pub factors: Vec<i64>,
    pub left: Vec<Vec<i64>>,
    pub right: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (n, m, k) = (a.len(), b[0].len(), b.len());
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = 0i128;
            for l in 0..k {
                s += a[i][l] as i128 * b[l][j] as i128;
            }
            out[i][j] = i64::try_from(s).expect("SNF transform overflow");
        }
    }
    out
}

pub fn det3(m: &[[i64; 3]; 3]) -> i64 {
    let d = m[0][0] as i128 * (m[1][1] as i128 * m[2][2] as i128 - m[1][2] as i128 * m[2][1] as i128)
        - m[0][1] as i128 * (m[1][0] as i128 * m[2][2] as i128 - m[1][2] as i128 * m[2][0] as i128)
        + m[0][2] as i128 * (m[1][0] as i128 * m[2][1] as i128 - m[1][1] as i128 * m[2][0] as i128);
    i64::try_from(d).expect("3x3 determinant overflow")
}

fn mat_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            let a = [
                [m[0][0], m[0][1], m[0][2]],
                [m[1][0], m[1][1], m[1][2]],
                [m[2][0], m[2][1], m[2][2]],
            ];
            det3(&a)
        }
        n => panic!("determinant for {}x{} not supported", n, n),
    }
}

/// Smith normal form for matrices with at most a handful of rows/columns.
/// Invariant factors are non-negative and satisfy the divisibility chain.
pub fn smith_normal_form(m: &[Vec<i64>]) -> SnfResult {
    let rows = m.len();
    let cols = m[0].len();
    assert!(rows >= 1 && cols >= 1);
    assert!(m.iter().all(|r| r.len() == cols));
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);

    let n = rows.min(cols);
    for k in 0..n {
        loop {
            // pick pivot: nonzero entry of minimal absolute value in the
            // trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[i][j] != 0
                        && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // trailing block zero: done
                break;
            };
            if pi != k {
                a.swap(k, pi);
                left.swap(k, pi);
            }
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(k, pj);
                }
                for row in right.iter_mut() {
                    row.swap(k, pj);
                }
            }
            // clear column k below and row k to the right
            let mut dirty = false;
            for i in k + 1..rows {
                if a[i][k] != 0 {
                    let q = a[i][k].div_euclid(a[k][k]);
                    for j in 0..cols {
                        a[i][j] -= q * a[k][j];
                    }
                    for j in 0..rows {
                        left[i][j] -= q * left[k][j];
                    }
                    if a[i][k] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if a[k][j] != 0 {
                    let q = a[k][j].div_euclid(a[k][k]);
                    for i in 0..rows {
                        a[i][j] -= q * a[i][k];
                    }
                    for i in 0..cols {
                        right[i][j] -= q * right[i][k];
                    }
                    if a[k][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            if (k + 1..rows).any(|i| a[i][k] != 0) || (k + 1..cols).any(|j| a[k][j] != 0) {
                continue;
            }
            // pivot must divide the rest of the trailing block
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if a[i][j] % a[k][k] != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // add offending row to row k and loop again
                    for j in 0..cols {
                        a[k][j] += a[i][j];
                    }
                    for j in 0..rows {
                        left[k][j] += left[i][j];
                    }
                }
                None => break,
            }
        }
    }

    // normalize signs
    for k in 0..n {
        if a[k][k] < 0 {
            for j in 0..cols {
                a[k][j] = -a[k][j];
            }
            for j in 0..rows {
                left[k][j] = -left[k][j];
            }
        }
    }
    let factors: Vec<i64> = (0..n).map(|k| a[k][k]).collect();
    debug_assert!(factors
        .windows(2)
        .all(|w| w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0)));
    debug_assert_eq!(mat_det(&left).abs(), 1);
    debug_assert_eq!(mat_det(&right).abs(), 1);
    SnfResult { factors, left, right }
}

impl SnfResult {
    /// Reconstructed diagonal: left * M * right, for verification.
    pub fn reconstruct(&self, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
        mat_mul(&mat_mul(&self.left, &m.to_vec()), &self.right)
    }
}
