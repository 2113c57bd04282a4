//! Classical reference computations for cross-checking.

use num_traits::Zero;

use crate::exactring::Rational;
use crate::perm;

/// Determinant by the Leibniz sum over all permutations.
pub fn leibniz_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut acc = Rational::zero();
    for p in perm::all(n) {
        let mut term = Rational::from_integer(perm::sign(&p).into());
        for (i, &j) in p.iter().enumerate() {
            term *= &a[i][j];
        }
        acc += term;
    }
    acc
}

/// `adj(A) / det(A)` from cofactors, or `None` when singular.
pub fn adjugate_inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let det = leibniz_det(a);
    if det.is_zero() {
        return None;
    }
    let minor = |r: usize, c: usize| -> Vec<Vec<Rational>> {
        a.iter()
            .enumerate()
            .filter(|&(i, _)| i != r)
            .map(|(_, row)| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect()
    };
    Some(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        leibniz_det(&minor(j, i)) * Rational::from_integer(sign.into()) / &det
                    })
                    .collect()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    #[test]
    fn two_by_two() {
        let a = vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]];
        assert_eq!(adjugate_inverse(&a).unwrap(), vec![vec![rat(1), rat(-1)], vec![rat(0), rat(1)]]);
        assert!(adjugate_inverse(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_none());
    }
}
