use num_traits::Zero;

use super::module::ModulePresentation;
use crate::error::{Error, Result};
use crate::exactring::{Field, Rational, RingDescriptor};
use crate::linalg::FieldMatrix;

/// Cochain complex of finite-dimensional spaces, `d^q : C^q → C^{q+1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub field: Field,
    pub dims: Vec<usize>,
    pub maps: Vec<FieldMatrix>,
}

impl ChainComplex {
    pub fn new(field: &Field, dims: Vec<usize>, maps: Vec<FieldMatrix>) -> Result<Self> {
        if maps.len() + 1 != dims.len() && !(dims.is_empty() && maps.is_empty()) {
            return Err(Error::Invalid("a complex needs one differential between consecutive terms".into()));
        }
        for (q, d) in maps.iter().enumerate() {
            if d.rows != dims[q + 1] || d.cols != dims[q] {
                return Err(Error::Invalid(format!("differential {q} has the wrong shape")));
            }
        }
        Ok(ChainComplex { field: field.clone(), dims, maps })
    }

    /// Terms as free modules over the base field.
    pub fn terms(&self) -> Vec<ModulePresentation> {
        let ring = match self.field {
            Field::Rationals => RingDescriptor::Rationals,
            Field::Prime(p) => RingDescriptor::IntegersMod(p),
        };
        self.dims.iter().map(|&d| ModulePresentation::free(&ring, d)).collect()
    }

    pub fn d_squared_zero(&self) -> bool {
        self.maps.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    fn rank(&self, q: isize) -> usize {
        if q < 0 || q as usize >= self.maps.len() {
            0
        } else {
            self.maps[q as usize].rank()
        }
    }

    /// `dim H^q = dim C^q − rank d^q − rank d^{q−1}`; the last term has no outgoing map.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|q| self.dims[q] - self.rank(q as isize) - self.rank(q as isize - 1))
            .collect()
    }

    pub fn is_exact_at(&self, q: usize) -> bool {
        self.cohomology_dims().get(q).is_some_and(|&h| h == 0)
    }
}

fn unit_coords(a: &RingDescriptor) -> Vec<Rational> {
    a.coords(&a.one())
}

/// `M → M⊗A → M⊗A⊗A → …` up to `M ⊗ A^{⊗p}`, with `d = Σ_k (−1)^k` (insert 1 at slot k).
pub fn amitsur_complex(a: &RingDescriptor, m: &ModulePresentation, p: usize) -> Result<ChainComplex> {
    let q = a.pq().ok_or_else(|| Error::Unsupported("Amitsur complex needs a polynomial quotient algebra".into()))?;
    let adim = q.dim().ok_or_else(|| Error::Unsupported("Amitsur complex needs a finite-dimensional algebra".into()))?;
    let field = q.field.clone();
    let base_ok = match (&m.ring, &field) {
        (RingDescriptor::Rationals, Field::Rationals) => true,
        (RingDescriptor::IntegersMod(n), Field::Prime(pr)) => n == pr,
        _ => false,
    };
    if !base_ok {
        return Err(Error::RingMismatch("module must live over the base field of the algebra".into()));
    }
    if p < 1 {
        return Err(Error::Invalid("Amitsur complex length must be at least 1".into()));
    }
    let mdim = m.dim()?;
    let one = unit_coords(a);
    let dims: Vec<usize> = (0..=p).map(|k| mdim * adim.pow(k as u32)).collect();
    let mut maps = Vec::new();
    for deg in 0..p {
        // basis index of C^deg: m-index then deg A-indices, most significant first
        let (src, tgt) = (dims[deg], dims[deg + 1]);
        let mut mat = FieldMatrix::zero(&field, tgt, src);
        for col in 0..src {
            let mut digits = Vec::with_capacity(deg);
            let mut r = col;
            for _ in 0..deg {
                digits.push(r % adim);
                r /= adim;
            }
            digits.reverse();
            let mi = r;
            for k in 0..=deg {
                let sign = if k % 2 == 0 { field.one() } else { field.from_int(-1) };
                for (j, c) in one.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut idx = mi;
                    for d in digits[..k].iter().chain(std::iter::once(&j)).chain(digits[k..].iter()) {
                        idx = idx * adim + d;
                    }
                    mat.data[idx][col] = field.add(&mat.data[idx][col], &field.mul(&sign, c));
                }
            }
        }
        maps.push(mat);
    }
    ChainComplex::new(&field, dims, maps)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct AmitsurReport {
    pub dims: Vec<usize>,
    pub d_squared_zero: bool,
    pub cohomology: Vec<usize>,
    /// Degrees `0..p` (the truncated top degree is excluded).
    pub exact_below_top: bool,
}

pub fn amitsur_report(a: &RingDescriptor, m: &ModulePresentation, p: usize) -> Result<AmitsurReport> {
    let c = amitsur_complex(a, m, p)?;
    let h = c.cohomology_dims();
    Ok(AmitsurReport {
        dims: c.dims.clone(),
        d_squared_zero: c.d_squared_zero(),
        exact_below_top: h[..p].iter().all(|&x| x == 0),
        cohomology: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse_ring;

    #[test]
    fn amitsur_exact_for_gaussian_rationals() {
        let a = parse_ring("QQ[x]/(x^2+1)").unwrap();
        let m = ModulePresentation::free(&RingDescriptor::Rationals, 1);
        let r = amitsur_report(&a, &m, 3).unwrap();
        assert_eq!(r.dims, vec![1, 2, 4, 8]);
        assert!(r.d_squared_zero && r.exact_below_top);
    }

    #[test]
    fn amitsur_for_the_base_field_alternates() {
        let a = parse_ring("QQ[x]/(x)").unwrap();
        let m = ModulePresentation::free(&RingDescriptor::Rationals, 2);
        let c = amitsur_complex(&a, &m, 3).unwrap();
        assert_eq!(c.maps[0], FieldMatrix::identity(&Field::Rationals, 2));
        assert!(c.maps[1].is_zero());
        assert_eq!(c.maps[2], FieldMatrix::identity(&Field::Rationals, 2));
    }

    #[test]
    fn amitsur_for_product_ring() {
        let a = parse_ring("QQ[x]/(x^2-x)").unwrap();
        let m = ModulePresentation::free(&RingDescriptor::Rationals, 1);
        assert!(amitsur_report(&a, &m, 3).unwrap().exact_below_top);
    }
}
