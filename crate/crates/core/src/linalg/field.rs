use num_traits::{One, Zero};

use crate::exactring::{Field, Rational};

/// Dense matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rational>>,
}

impl FieldMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        FieldMatrix { field: field.clone(), rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn from_rows(field: &Field, data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        let data = data.into_iter().map(|r| r.into_iter().map(|x| field.reduce(x)).collect()).collect();
        FieldMatrix { field: field.clone(), rows, cols, data }
    }

    pub fn with_shape(field: &Field, rows: usize, cols: usize, data: Vec<Vec<Rational>>) -> Self {
        let mut m = Self::from_rows(field, data);
        m.rows = rows;
        m.cols = cols;
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = self.field.add(&out.data[i][j], &self.field.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.data[i].iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = self.field.add(&acc, &self.field.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] = self.field.add(&self.data[i][j], &other.data[i][j]);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> FieldMatrix {
        let mut out = self.clone();
        for row in out.data.iter_mut() {
            for x in row.iter_mut() {
                *x = self.field.mul(x, c);
            }
        }
        out
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        self.add(&other.scale(&self.field.from_int(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(&m[r][c]).unwrap();
            for x in m[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let factor = m[i][c].clone();
                    for j in 0..self.cols {
                        if !m[r][j].is_zero() {
                            m[i][j] = f.sub(&m[i][j], &f.mul(&factor, &m[r][j]));
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (FieldMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : A x = 0}, as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Rational::zero(); self.cols];
                v[fc] = Rational::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(&r.data[i][fc]);
                }
                v
            })
            .collect()
    }

    /// Some x with A x = b, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let f = &self.field;
        let mut aug = self.data.clone();
        for (row, bi) in aug.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        let aug = FieldMatrix { field: f.clone(), rows: self.rows, cols: self.cols + 1, data: aug };
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[i][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = self.data.clone();
        for (i, row) in aug.iter_mut().enumerate() {
            for j in 0..n {
                row.push(if i == j { Rational::one() } else { Rational::zero() });
            }
        }
        let aug = FieldMatrix { field: self.field.clone(), rows: n, cols: 2 * n, data: aug };
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(FieldMatrix {
            field: self.field.clone(),
            rows: n,
            cols: n,
            data: r.data.iter().map(|row| row[n..].to_vec()).collect(),
        })
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, &m[c][c]);
            let inv = f.inv(&m[c][c]).unwrap();
            for i in c + 1..n {
                if !m[i][c].is_zero() {
                    let factor = f.mul(&m[i][c], &inv);
                    for j in c..n {
                        m[i][j] = f.sub(&m[i][j], &f.mul(&factor, &m[c][j]));
                    }
                }
            }
        }
        det
    }
}

/// Subspace of `field^dim` kept as a reduced echelon basis; used for quotient normal forms.
#[derive(Clone, Debug)]
pub struct RowSpace {
    pub field: Field,
    pub dim: usize,
    /// (pivot column, row with 1 at pivot and 0 at every other pivot)
    pub rows: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new(field: &Field, dim: usize) -> Self {
        RowSpace { field: field.clone(), dim, rows: Vec::new() }
    }

    pub fn spanned_by(field: &Field, dim: usize, vecs: &[Vec<Rational>]) -> Self {
        let mut s = Self::new(field, dim);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v` modulo the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let f = &self.field;
        let mut v: Vec<Rational> = v.iter().map(|x| f.reduce(x.clone())).collect();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = f.sub(x, &f.mul(&c, r));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let f = self.field.clone();
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(&r[p]).unwrap();
        let r: Vec<Rational> = r.iter().map(|x| f.mul(x, &inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                }
            }
        }
        self.rows.push((p, r));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Non-pivot columns: a basis of the quotient is given by their unit vectors.
    pub fn complement(&self) -> Vec<usize> {
        let piv = self.pivots();
        (0..self.dim).filter(|c| !piv.contains(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::field::{rat, ratio};

    fn q(rows: Vec<Vec<i64>>) -> FieldMatrix {
        FieldMatrix::from_rows(&Field::Rationals, rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
    }

    #[test]
    fn inverse_and_determinant() {
        let m = q(vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(m.inverse().unwrap(), q(vec![vec![1, -1], vec![0, 1]]));
        assert_eq!(m.det(), rat(1));
        let s = q(vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(s.inverse().unwrap().data[0][0], ratio(1, 2));
        assert!(q(vec![vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = q(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rowspace_reduction_is_canonical() {
        let f = Field::Rationals;
        let s = RowSpace::spanned_by(&f, 3, &[vec![rat(1), rat(1), rat(0)]]);
        assert_eq!(s.reduce(&[rat(1), rat(0), rat(0)]), s.reduce(&[rat(0), rat(-1), rat(0)]));
        assert!(s.contains(&[rat(2), rat(2), rat(0)]));
    }
}
