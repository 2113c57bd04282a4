use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactring::{Field, Rational};
use crate::linalg::FieldMatrix;

/// Cyclic graded ℚ[t]-module generated in degree `shift`: free, or `ℚ[t]/(t^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Summand {
    Free { shift: usize },
    Truncated { k: usize, shift: usize },
}

impl Summand {
    /// `free`, `free@2`, `t^3`, `t^3@1`.
    pub fn parse(s: &str) -> Result<Self> {
        let (body, shift) = match s.trim().split_once('@') {
            Some((b, g)) => (b, g.parse().map_err(|_| Error::Parse(format!("bad shift in {s:?}")))?),
            None => (s.trim(), 0),
        };
        if body == "free" {
            return Ok(Summand::Free { shift });
        }
        let k = body
            .strip_prefix("t^")
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected free or t^k, got {body:?}")))?;
        Ok(Summand::Truncated { k, shift })
    }

    fn active(&self, n: usize) -> bool {
        match *self {
            Summand::Free { shift } => n >= shift,
            Summand::Truncated { k, shift } => n >= shift && n < shift + k,
        }
    }
}

/// Graded pieces `M_0 … M_N` with the maps `t : M_n → M_{n+1}`.
#[derive(Clone, Debug)]
pub struct GradedQt {
    pub dims: Vec<usize>,
    pub maps: Vec<FieldMatrix>,
}

impl GradedQt {
    pub fn new(dims: Vec<usize>, maps: Vec<FieldMatrix>) -> Result<Self> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(Error::Invalid("need pieces M_0..M_N and N maps".into()));
        }
        for (n, m) in maps.iter().enumerate() {
            if m.rows != dims[n + 1] || m.cols != dims[n] {
                return Err(Error::Invalid(format!("t : M_{n} → M_{} must be {}×{}", n + 1, dims[n + 1], dims[n])));
            }
        }
        Ok(GradedQt { dims, maps })
    }

    /// Direct sum of cyclic summands, truncated at degree `top`.
    pub fn from_summands(summands: &[Summand], top: usize) -> Self {
        let basis: Vec<Vec<usize>> = (0..=top).map(|n| (0..summands.len()).filter(|&i| summands[i].active(n)).collect()).collect();
        let dims = basis.iter().map(Vec::len).collect();
        let maps = (0..top)
            .map(|n| {
                let mut m = FieldMatrix::zero(&Field::Rationals, basis[n + 1].len(), basis[n].len());
                for (c, s) in basis[n].iter().enumerate() {
                    if let Some(r) = basis[n + 1].iter().position(|x| x == s) {
                        m.data[r][c] = Rational::one();
                    }
                }
                m
            })
            .collect();
        GradedQt { dims, maps }
    }

    fn is_iso(&self, n: usize) -> bool {
        self.dims[n] == self.dims[n + 1] && (self.dims[n] == 0 || self.maps[n].rank() == self.dims[n])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionReport {
    pub dims: Vec<usize>,
    pub map_ranks: Vec<usize>,
    /// Every supplied map from this degree on is an isomorphism.
    pub stable_degree: usize,
    pub colimit_dim: usize,
    /// Dimension of the image of `M_n` in the colimit, `n ≤ stable_degree`.
    pub image_dims: Vec<usize>,
}

/// `colim (M_0 → M_1 → …)` under multiplication by `t`, read off at the stabilization degree.
pub fn section_localize(m: &GradedQt) -> Result<SectionReport> {
    let top = m.dims.len() - 1;
    if top == 0 || !m.is_iso(top - 1) {
        return Err(Error::Invalid(format!(
            "no stabilization within the supplied data: the last map t : M_{} → M_{top} is not an isomorphism",
            top.saturating_sub(1)
        )));
    }
    let mut s = top - 1;
    while s > 0 && m.is_iso(s - 1) {
        s -= 1;
    }
    let mut image_dims = vec![0; s + 1];
    for (n, dim) in image_dims.iter_mut().enumerate() {
        let mut comp = FieldMatrix::identity(&Field::Rationals, m.dims[n]);
        for k in n..s {
            comp = m.maps[k].mul(&comp);
        }
        *dim = if m.dims[n] == 0 || m.dims[s] == 0 { 0 } else { comp.rank() };
    }
    let map_ranks = m.maps.iter().map(|x| if x.rows == 0 || x.cols == 0 { 0 } else { x.rank() }).collect();
    Ok(SectionReport { dims: m.dims.clone(), map_ranks, stable_degree: s, colimit_dim: m.dims[s], image_dims })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(summands: &[&str], top: usize) -> SectionReport {
        let s: Vec<Summand> = summands.iter().map(|x| Summand::parse(x).unwrap()).collect();
        section_localize(&GradedQt::from_summands(&s, top)).unwrap()
    }

    #[test]
    fn examples() {
        let r = run(&["free"], 3);
        assert_eq!((r.colimit_dim, r.stable_degree), (1, 0));
        let r = run(&["t^2"], 4);
        assert_eq!((r.colimit_dim, r.stable_degree), (0, 2));
        assert_eq!(r.image_dims, vec![0, 0, 0]);
        let r = run(&["free", "t^1"], 3);
        assert_eq!((r.colimit_dim, r.stable_degree), (1, 1));
        assert_eq!(r.image_dims, vec![1, 1]);
    }

    #[test]
    fn colimit_counts_free_summands() {
        let r = run(&["free@2", "t^3@1", "free", "t^1@4"], 8);
        assert_eq!(r.colimit_dim, 2);
        assert_eq!(r.stable_degree, 5);
    }

    #[test]
    fn insufficient_data() {
        let s = [Summand::parse("t^3").unwrap()];
        assert!(section_localize(&GradedQt::from_summands(&s, 3)).is_err());
        assert!(section_localize(&GradedQt::from_summands(&s, 0)).is_err());
        assert!(Summand::parse("t^x").is_err());
    }

    #[test]
    fn explicit_maps() {
        let q = |v: i64| Rational::from_integer(v.into());
        // M_0 = ℚ², t kills the second basis vector, then identity
        let t0 = FieldMatrix::from_rows(&Field::Rationals, vec![vec![q(1), q(0)]]);
        let t1 = FieldMatrix::from_rows(&Field::Rationals, vec![vec![q(2)]]);
        let m = GradedQt::new(vec![2, 1, 1], vec![t0, t1]).unwrap();
        let r = section_localize(&m).unwrap();
        assert_eq!((r.colimit_dim, r.stable_degree, r.image_dims.clone()), (1, 1, vec![1, 1]));
        assert!(GradedQt::new(vec![2, 1], vec![FieldMatrix::zero(&Field::Rationals, 2, 2)]).is_err());
    }
}
