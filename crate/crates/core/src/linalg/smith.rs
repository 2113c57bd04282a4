use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    /// Diagonal entries, padded with zeros to `rows` (the cokernel ℤ^rows / A·ℤ^cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| if i < self.cols { self.d[i][i].clone() } else { BigInt::zero() })
            .collect()
    }

    /// Invariant factors of the cokernel, units dropped, zeros marking free summands.
    pub fn cokernel_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_one()).collect()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Smith normal form of an `rows × cols` integer matrix.
pub fn smith_decompose(a: &IntMatrix, rows: usize, cols: usize) -> Smith {
    let mut d: IntMatrix = if rows == 0 { Vec::new() } else { a.clone() };
    let mut u = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero() && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility of the trailing block
            let mut bad = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = -BigInt::one();
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    Smith { u, d, v, rows, cols }
}

/// row_i -= q * row_t
fn row_axpy(m: &mut IntMatrix, i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[t].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// col_j -= q * col_t
fn col_axpy(m: &mut IntMatrix, j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[t].is_zero() {
            let y = row[t].clone();
            row[j] -= q * y;
        }
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// ℤ-basis of `{x ∈ ℤ^cols : A x = 0}`.
pub fn int_kernel(a: &IntMatrix, rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    let s = smith_decompose(a, rows, cols);
    (0..cols)
        .filter(|&j| j >= rows || s.d[j][j].is_zero())
        .map(|j| (0..cols).map(|i| s.v[i][j].clone()).collect())
        .collect()
}

pub fn to_int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix, rows: usize, cols: usize) -> Smith {
        let s = smith_decompose(a, rows, cols);
        let uav = int_mul(&int_mul(&s.u, a, rows, cols), &s.v, cols, cols);
        assert_eq!(uav, s.d);
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(s.d[i][j].is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn diag_two_three_becomes_one_six() {
        let s = check(&to_int_matrix(&[vec![2, 0], vec![0, 3]]), 2, 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.cokernel_factors(), vec![BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix_has_free_cokernel() {
        let s = check(&to_int_matrix(&[vec![0]]), 1, 1);
        assert_eq!(s.diagonal(), vec![BigInt::zero()]);
        let s = check(&to_int_matrix(&[vec![2]]), 1, 1);
        assert_eq!(s.cokernel_factors(), vec![BigInt::from(2)]);
    }

    #[test]
    fn rectangular_input() {
        let s = check(&to_int_matrix(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), 3, 3);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = check(&to_int_matrix(&[vec![4, 6]]), 1, 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(2)]);
    }
}
