use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{is_prime_u64, mod_inverse, rational_to_string, Field, Rational};
use super::groebner::{groebner_basis, reduce, standard_monomials};
use super::poly::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// `k[x_1..x_n]/I` with a reduced degrevlex Gröbner basis computed at construction.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyQuotient {
    pub field: Field,
    pub vars: Vec<String>,
    pub ideal: Vec<Polynomial>,
    pub gb: Vec<Polynomial>,
    /// Standard monomials, present iff the quotient is finite-dimensional over `field`.
    pub basis: Option<Vec<Monomial>>,
}

impl PolyQuotient {
    pub fn new(field: Field, vars: Vec<String>, ideal: Vec<Polynomial>) -> Result<Self> {
        if let Field::Prime(p) = field {
            if !is_prime_u64(p) {
                return Err(Error::Invalid(format!("polynomial base ZZ/{p} is not a field")));
            }
        }
        for g in &ideal {
            if g.nvars != vars.len() {
                return Err(Error::Invalid("variable-arity mismatch in ideal generator".into()));
            }
            if g.field != field {
                return Err(Error::RingMismatch("ideal generator over a different field".into()));
            }
        }
        let gb = groebner_basis(&ideal);
        let basis = standard_monomials(&gb, vars.len());
        Ok(PolyQuotient { field, vars, ideal, gb, basis })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn dim(&self) -> Option<usize> {
        self.basis.as_ref().map(|b| b.len())
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        reduce(p, &self.gb)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.field, self.nvars(), i)
    }
}

/// A computable commutative ring with canonical normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    IntegersMod(u64),
    PolyQuotient(Arc<PolyQuotient>),
}

/// Element of a [`RingDescriptor`]; `Int` serves ℤ and ℤ/n, `Rat` serves ℚ, `Poly` serves quotients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElem {
    Int(BigInt),
    Rat(Rational),
    Poly(Polynomial),
}

/// How a ring is turned into exact linear algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearKind {
    /// Finite-dimensional over a field, with the given dimension.
    Field { field: Field, dim: usize },
    /// ℤ, or ℤ/n handled as a lattice containing nℤ^N.
    Lattice { modulus: Option<u64> },
}

impl RingDescriptor {
    pub fn integers_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("ZZ/{n} requires n >= 2")));
        }
        Ok(RingDescriptor::IntegersMod(n))
    }

    pub fn poly_quotient(field: Field, vars: &[&str], ideal: Vec<Polynomial>) -> Result<Self> {
        let vars = vars.iter().map(|s| s.to_string()).collect();
        Ok(RingDescriptor::PolyQuotient(Arc::new(PolyQuotient::new(field, vars, ideal)?)))
    }

    pub fn pq(&self) -> Option<&PolyQuotient> {
        match self {
            RingDescriptor::PolyQuotient(q) => Some(q),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            RingDescriptor::Integers => "ZZ".into(),
            RingDescriptor::Rationals => "QQ".into(),
            RingDescriptor::IntegersMod(n) => format!("ZZ/{n}"),
            RingDescriptor::PolyQuotient(q) => {
                let mut s = format!("{}[{}]", q.field.name(), q.vars.join(","));
                if !q.ideal.is_empty() {
                    let gens: Vec<String> = q.ideal.iter().map(|g| g.display(&q.vars)).collect();
                    s.push_str(&format!("/({})", gens.join(", ")));
                }
                s
            }
        }
    }

    /// Base field when the ring is an algebra over one (ℚ, 𝔽_p, or a quotient over them).
    pub fn base_field(&self) -> Option<Field> {
        match self {
            RingDescriptor::Rationals => Some(Field::Rationals),
            RingDescriptor::IntegersMod(p) if is_prime_u64(*p) => Some(Field::Prime(*p)),
            RingDescriptor::PolyQuotient(q) => Some(q.field.clone()),
            _ => None,
        }
    }

    pub fn linear_kind(&self) -> Result<LinearKind> {
        match self {
            RingDescriptor::Integers => Ok(LinearKind::Lattice { modulus: None }),
            RingDescriptor::Rationals => Ok(LinearKind::Field { field: Field::Rationals, dim: 1 }),
            RingDescriptor::IntegersMod(n) => {
                if is_prime_u64(*n) {
                    Ok(LinearKind::Field { field: Field::Prime(*n), dim: 1 })
                } else {
                    Ok(LinearKind::Lattice { modulus: Some(*n) })
                }
            }
            RingDescriptor::PolyQuotient(q) => match q.dim() {
                Some(d) => Ok(LinearKind::Field { field: q.field.clone(), dim: d }),
                None => Err(Error::Unsupported(format!(
                    "{} is not finite-dimensional over its base field",
                    self.name()
                ))),
            },
        }
    }

    /// 2 is a unit.
    pub fn two_invertible(&self) -> bool {
        match self {
            RingDescriptor::Integers => false,
            RingDescriptor::Rationals => true,
            RingDescriptor::IntegersMod(n) => n % 2 == 1,
            RingDescriptor::PolyQuotient(q) => q.field.characteristic() != 2,
        }
    }

    pub fn characteristic_unit(&self, k: u64) -> bool {
        self.is_unit(&self.from_int(k as i64))
    }

    pub fn zero(&self) -> RingElem {
        self.from_int(0)
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> RingElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> RingElem {
        match self {
            RingDescriptor::Integers => RingElem::Int(n.clone()),
            RingDescriptor::Rationals => RingElem::Rat(Rational::from_integer(n.clone())),
            RingDescriptor::IntegersMod(m) => RingElem::Int(n.mod_floor(&BigInt::from(*m))),
            RingDescriptor::PolyQuotient(q) => RingElem::Poly(
                q.normal_form(&Polynomial::constant(&q.field, q.nvars(), Rational::from_integer(n.clone()))),
            ),
        }
    }

    pub fn from_rational(&self, x: &Rational) -> Result<RingElem> {
        match self {
            RingDescriptor::Rationals => Ok(RingElem::Rat(x.clone())),
            RingDescriptor::PolyQuotient(q) => {
                Ok(RingElem::Poly(q.normal_form(&Polynomial::constant(&q.field, q.nvars(), x.clone()))))
            }
            _ => {
                if x.is_integer() {
                    Ok(self.from_bigint(x.numer()))
                } else {
                    let den = self.from_bigint(x.denom());
                    let inv = self
                        .inverse(&den)
                        .ok_or_else(|| Error::Invalid(format!("{} is not in {}", x, self.name())))?;
                    Ok(self.mul(&self.from_bigint(x.numer()), &inv))
                }
            }
        }
    }

    pub fn from_poly(&self, p: &Polynomial) -> Result<RingElem> {
        match self {
            RingDescriptor::PolyQuotient(q) => {
                if p.nvars != q.nvars() {
                    return Err(Error::Invalid("variable-arity mismatch".into()));
                }
                Ok(RingElem::Poly(q.normal_form(p)))
            }
            _ => {
                if !p.is_constant() {
                    return Err(Error::Invalid(format!("{} has no variables", self.name())));
                }
                self.from_rational(&p.constant_term())
            }
        }
    }

    pub fn normalize(&self, a: &RingElem) -> RingElem {
        match (self, a) {
            (RingDescriptor::IntegersMod(m), RingElem::Int(x)) => RingElem::Int(x.mod_floor(&BigInt::from(*m))),
            (RingDescriptor::PolyQuotient(q), RingElem::Poly(p)) => RingElem::Poly(q.normal_form(p)),
            _ => a.clone(),
        }
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (a, b) {
            (RingElem::Int(x), RingElem::Int(y)) => self.normalize(&RingElem::Int(x + y)),
            (RingElem::Rat(x), RingElem::Rat(y)) => RingElem::Rat(x + y),
            (RingElem::Poly(x), RingElem::Poly(y)) => RingElem::Poly(x.add(y)),
            _ => panic!("mixed ring elements"),
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match a {
            RingElem::Int(x) => self.normalize(&RingElem::Int(-x)),
            RingElem::Rat(x) => RingElem::Rat(-x),
            RingElem::Poly(x) => RingElem::Poly(x.neg()),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (a, b) {
            (RingElem::Int(x), RingElem::Int(y)) => self.normalize(&RingElem::Int(x * y)),
            (RingElem::Rat(x), RingElem::Rat(y)) => RingElem::Rat(x * y),
            (RingElem::Poly(x), RingElem::Poly(y)) => self.normalize(&RingElem::Poly(x.mul(y))),
            _ => panic!("mixed ring elements"),
        }
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Int(x) => x.is_zero(),
            RingElem::Rat(x) => x.is_zero(),
            RingElem::Poly(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, a: &RingElem) -> bool {
        *a == self.one()
    }

    pub fn inverse(&self, a: &RingElem) -> Option<RingElem> {
        match (self, a) {
            (RingDescriptor::Integers, RingElem::Int(x)) => {
                if x.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            (RingDescriptor::Rationals, RingElem::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(RingElem::Rat(x.recip()))
                }
            }
            (RingDescriptor::IntegersMod(m), RingElem::Int(x)) => {
                mod_inverse(x, &BigInt::from(*m)).map(RingElem::Int)
            }
            (RingDescriptor::PolyQuotient(_), RingElem::Poly(_)) => self.pq_inverse(a),
            _ => None,
        }
    }

    fn pq_inverse(&self, a: &RingElem) -> Option<RingElem> {
        let LinearKind::Field { field, dim } = self.linear_kind().ok()? else {
            return None;
        };
        if dim == 0 {
            return Some(self.zero());
        }
        // solve a·y = 1 as a linear system over the base field
        let m = self.mult_matrix(a);
        let rhs = self.coords(&self.one());
        let sol = crate::linalg::FieldMatrix::from_rows(&field, m).solve(&rhs)?;
        Some(self.from_coords(&sol))
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        self.inverse(a).is_some()
    }

    /// Coordinates over the base field in the standard-monomial basis.
    pub fn coords(&self, a: &RingElem) -> Vec<Rational> {
        match (self, a) {
            (RingDescriptor::Rationals, RingElem::Rat(x)) => vec![x.clone()],
            (RingDescriptor::IntegersMod(_), RingElem::Int(x)) => vec![Rational::from_integer(x.clone())],
            (RingDescriptor::PolyQuotient(q), RingElem::Poly(p)) => {
                let basis = q.basis.as_ref().expect("finite-dimensional quotient");
                basis.iter().map(|m| p.terms.get(m).cloned().unwrap_or_else(Rational::zero)).collect()
            }
            _ => panic!("coords requested on a lattice ring"),
        }
    }

    pub fn from_coords(&self, c: &[Rational]) -> RingElem {
        match self {
            RingDescriptor::Rationals => RingElem::Rat(c[0].clone()),
            RingDescriptor::IntegersMod(_) => self.from_bigint(&c[0].to_integer()),
            RingDescriptor::PolyQuotient(q) => {
                let basis = q.basis.as_ref().expect("finite-dimensional quotient");
                let mut p = Polynomial::zero(&q.field, q.nvars());
                for (m, x) in basis.iter().zip(c) {
                    p = p.add(&Polynomial::term(&q.field, m.clone(), x.clone()));
                }
                RingElem::Poly(p)
            }
            RingDescriptor::Integers => RingElem::Int(c[0].to_integer()),
        }
    }

    /// Basis elements of the ring over its base field.
    pub fn basis_elems(&self) -> Vec<RingElem> {
        match self {
            RingDescriptor::PolyQuotient(q) => q
                .basis
                .as_ref()
                .expect("finite-dimensional quotient")
                .iter()
                .map(|m| RingElem::Poly(Polynomial::term(&q.field, m.clone(), Rational::one())))
                .collect(),
            _ => vec![self.one()],
        }
    }

    /// Matrix (rows × columns = dim × dim) of multiplication by `a` in base-field coordinates.
    pub fn mult_matrix(&self, a: &RingElem) -> Vec<Vec<Rational>> {
        let basis = self.basis_elems();
        let n = basis.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (j, b) in basis.iter().enumerate() {
            let c = self.coords(&self.mul(a, b));
            for i in 0..n {
                m[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn int_value(&self, a: &RingElem) -> BigInt {
        match a {
            RingElem::Int(x) => x.clone(),
            RingElem::Rat(x) => x.to_integer(),
            RingElem::Poly(p) => p.constant_term().to_integer(),
        }
    }

    pub fn display(&self, a: &RingElem) -> String {
        match (self, a) {
            (RingDescriptor::PolyQuotient(q), RingElem::Poly(p)) => p.display(&q.vars),
            (_, RingElem::Int(x)) => x.to_string(),
            (_, RingElem::Rat(x)) => rational_to_string(x),
            (_, RingElem::Poly(p)) => p.to_string(),
        }
    }

    pub fn same_ring(&self, other: &RingDescriptor) -> bool {
        match (self, other) {
            (RingDescriptor::PolyQuotient(a), RingDescriptor::PolyQuotient(b)) => {
                Arc::ptr_eq(a, b) || (a.field == b.field && a.vars == b.vars && a.gb == b.gb)
            }
            _ => self == other,
        }
    }

    /// Finite list of all elements, for ℤ/n only.
    pub fn finite_elements(&self) -> Option<Vec<RingElem>> {
        match self {
            RingDescriptor::IntegersMod(n) => Some((0..*n as i64).map(|k| self.from_int(k)).collect()),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingDescriptor::IntegersMod(n) => Some(*n),
            _ => None,
        }
    }

    pub fn elem_to_u64(&self, a: &RingElem) -> Option<u64> {
        self.int_value(a).to_u64()
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Canonical representative of `p` in the quotient ring.
pub fn normal_form(p: &Polynomial, ring: &RingDescriptor) -> Result<Polynomial> {
    match ring {
        RingDescriptor::PolyQuotient(q) => {
            if p.nvars != q.nvars() {
                return Err(Error::Invalid(format!(
                    "variable-arity mismatch: polynomial has {} variables, ring has {}",
                    p.nvars,
                    q.nvars()
                )));
            }
            Ok(q.normal_form(p))
        }
        _ => Err(Error::Unsupported("normal_form requires a polynomial quotient ring".into())),
    }
}

/// Matrix of formal partial derivatives: entry (i, j) = ∂gens_i/∂vars_j.
pub fn jacobian(gens: &[Polynomial], ring_vars: &[String], vars: &[&str]) -> Result<Vec<Vec<Polynomial>>> {
    let idx: Vec<usize> = vars
        .iter()
        .map(|v| {
            ring_vars
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::Invalid(format!("unknown variable {v}")))
        })
        .collect::<Result<_>>()?;
    Ok(gens.iter().map(|g| idx.iter().map(|&j| g.derivative(j)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::field::rat;

    #[test]
    fn normal_form_in_circle_ring() {
        let q = Field::Rationals;
        let x = Polynomial::var(&q, 1, 0);
        let one = Polynomial::one(&q, 1);
        let r = RingDescriptor::poly_quotient(q.clone(), &["x"], vec![x.pow(2).sub(&one)]).unwrap();
        assert_eq!(normal_form(&x.pow(2), &r).unwrap(), one);
        assert_eq!(normal_form(&Polynomial::zero(&q, 1), &r).unwrap(), Polynomial::zero(&q, 1));
        assert!(normal_form(&Polynomial::var(&q, 2, 0), &r).is_err());
    }

    #[test]
    fn jacobian_term_by_term() {
        let q = Field::Rationals;
        let x = Polynomial::var(&q, 2, 0);
        let y = Polynomial::var(&q, 2, 1);
        let names = vec!["x".to_string(), "y".to_string()];
        let j = jacobian(&[x.pow(2).add(&y.pow(3))], &names, &["x", "y"]).unwrap();
        assert_eq!(j[0][0], x.scale(&rat(2)));
        assert_eq!(j[0][1], y.pow(2).scale(&rat(3)));
        assert!(jacobian(&[x], &names, &["z"]).is_err());
    }

    #[test]
    fn units_in_each_ring() {
        let z6 = RingDescriptor::IntegersMod(6);
        assert!(z6.is_unit(&z6.from_int(5)));
        assert!(!z6.is_unit(&z6.from_int(3)));
        let q = Field::Rationals;
        let e = Polynomial::var(&q, 1, 0);
        let r = RingDescriptor::poly_quotient(q.clone(), &["e"], vec![e.pow(2)]).unwrap();
        let u = r.from_poly(&Polynomial::one(&q, 1).add(&e)).unwrap();
        let inv = r.inverse(&u).unwrap();
        assert!(r.is_one(&r.mul(&u, &inv)));
        assert!(r.inverse(&r.from_poly(&e).unwrap()).is_none());
    }
}
