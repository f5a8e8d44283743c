//! Integer matrices: exact determinants, unimodular inverses and the Smith
//! normal form.

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

fn checked(v: Option<i128>, what: &'static str) -> Result<i128> {
    v.ok_or(Error::Overflow(what))
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(a: &[Vec<i64>]) -> Result<i64> {
    let n = a.len();
    if n == 0 {
        return Ok(1);
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Ok(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = checked(m[i][j].checked_mul(m[k][k]), "determinant")?;
                let b = checked(m[i][k].checked_mul(m[k][j]), "determinant")?;
                m[i][j] = checked(a.checked_sub(b), "determinant")? / prev;
            }
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[n - 1][n - 1]).map_err(|_| Error::Overflow("determinant"))
}

/// Inverse of a square integer matrix with determinant ±1, via the adjugate.
#[allow(clippy::needless_range_loop)]
pub fn unimodular_inverse(a: &[Vec<i64>]) -> Result<Option<IntMatrix>> {
    let n = a.len();
    let det = determinant(a)?;
    if det.abs() != 1 {
        return Ok(None);
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IntMatrix = a
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let cof = determinant(&minor)? * if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[j][i] = cof * det;
        }
    }
    Ok(Some(inv))
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<IntMatrix> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .try_fold(0i64, |acc, (&x, brow)| x.checked_mul(brow[j]).and_then(|p| acc.checked_add(p)))
                        .ok_or(Error::Overflow("matrix product"))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(x).map(|(&p, &q)| p * q).sum()).collect()
}

/// Smith normal form `left · a · right = diag(d_1, …, d_r, 0, …)` with
/// `d_i | d_{i+1}`, `d_i > 0`, and unimodular `left`, `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }

    /// Columns of `right` beyond the rank: a basis of the integer kernel.
    pub fn kernel_basis(&self) -> IntMatrix {
        let r = self.rank();
        let cols = self.right.len();
        (r..cols).map(|j| self.right.iter().map(|row| row[j]).collect()).collect()
    }
}

fn id(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> Result<SmithForm> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut left = id(rows);
    let mut right = id(cols);

    // row_i += f * row_k
    fn add_row(m: &mut [Vec<i128>], i: usize, k: usize, f: i128) -> Result<()> {
        let src = m[k].clone();
        for (x, y) in m[i].iter_mut().zip(src) {
            *x = checked(y.checked_mul(f).and_then(|p| x.checked_add(p)), "smith normal form")?;
        }
        Ok(())
    }
    fn add_col(m: &mut [Vec<i128>], j: usize, k: usize, f: i128) -> Result<()> {
        for row in m.iter_mut() {
            row[j] = checked(row[k].checked_mul(f).and_then(|p| row[j].checked_add(p)), "smith normal form")?;
        }
        Ok(())
    }
    fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            m.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut right, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    add_row(&mut m, i, t, -q)?;
                    add_row(&mut left, i, t, -q)?;
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    add_col(&mut m, j, t, -q)?;
                    add_col(&mut right, j, t, -q)?;
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % m[t][t] != 0));
            match offending {
                Some(i) => {
                    add_row(&mut m, t, i, 1)?;
                    add_row(&mut left, t, i, 1)?;
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in left[t].iter_mut() {
                *x = -*x;
            }
        }
    }

    let narrow = |v: Vec<Vec<i128>>| -> Result<IntMatrix> {
        v.into_iter()
            .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| Error::Overflow("smith normal form"))).collect())
            .collect()
    };
    let diagonal = (0..rows.min(cols))
        .map(|t| i64::try_from(m[t][t]).map_err(|_| Error::Overflow("smith normal form")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SmithForm { diagonal, left: narrow(left)?, right: narrow(right)? })
}

/// True when the columns of `basis` (given as a list of vectors) span a
/// saturated sublattice: all invariant factors equal 1.
pub fn is_saturated(basis: &[Vec<i64>]) -> Result<bool> {
    if basis.is_empty() {
        return Ok(true);
    }
    let snf = smith_normal_form(basis)?;
    Ok(snf.rank() == basis.len() && snf.diagonal.iter().all(|&d| d == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_matrix(d: &[i64], rows: usize, cols: usize) -> IntMatrix {
        let mut m = vec![vec![0; cols]; rows];
        for (i, &x) in d.iter().enumerate() {
            m[i][i] = x;
        }
        m
    }

    #[test]
    fn bareiss_matches_hand_values() {
        assert_eq!(determinant(&[vec![0, 1], vec![2, 1]]).unwrap(), -2);
        assert_eq!(determinant(&[vec![1, 0], vec![-1, -1]]).unwrap(), -1);
        assert_eq!(determinant(&[vec![2, 0, 0], vec![0, 3, 0], vec![1, 1, 1]]).unwrap(), 6);
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]).unwrap(), 0);
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = vec![vec![1, -1], vec![0, -1]];
        let inv = unimodular_inverse(&a).unwrap().unwrap();
        assert_eq!(mat_mul(&a, &inv).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert!(unimodular_inverse(&[vec![2, 0], vec![0, 1]]).unwrap().is_none());
    }

    #[test]
    fn smith_of_known_matrix() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let snf = smith_normal_form(&a).unwrap();
        assert_eq!(snf.diagonal, vec![2, 6, 12]);
        let d = mat_mul(&mat_mul(&snf.left, &a).unwrap(), &snf.right).unwrap();
        assert_eq!(d, diag_matrix(&snf.diagonal, 3, 3));
    }

    #[test]
    fn saturation() {
        assert!(is_saturated(&[vec![1, 1, 1]]).unwrap());
        assert!(!is_saturated(&[vec![2, 0, 2]]).unwrap());
    }

    proptest! {
        #[test]
        fn smith_invariants(entries in proptest::collection::vec(-5i64..=5, 12)) {
            let a: IntMatrix = entries.chunks(4).map(|c| c.to_vec()).collect();
            let snf = smith_normal_form(&a).unwrap();
            let d = mat_mul(&mat_mul(&snf.left, &a).unwrap(), &snf.right).unwrap();
            prop_assert_eq!(d, diag_matrix(&snf.diagonal, 3, 4));
            prop_assert_eq!(determinant(&snf.left).unwrap().abs(), 1);
            prop_assert_eq!(determinant(&snf.right).unwrap().abs(), 1);
            let r = snf.rank();
            for w in snf.diagonal[..r].windows(2) {
                prop_assert!(w[0] > 0 && w[1] % w[0] == 0);
            }
            for v in snf.kernel_basis() {
                prop_assert!(mat_vec(&a, &v).iter().all(|&x| x == 0));
            }
        }
    }
}
