use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::field::{rational_to_string, Field, Rational};

/// Exponent vector, ordered by graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // smaller exponent in the last differing variable is larger
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over a [`Field`]; terms sorted ascending, no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    pub field: Field,
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: Rational) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(field, nvars, Rational::one())
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(field: &Field, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(field, m.0.len());
        let c = field.reduce(c);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry = self.field.add(entry, c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&self.field.from_int(-1))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, a) in &self.terms {
            let v = self.field.mul(a, c);
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let mut out = Self::zero(&self.field, self.nvars);
        for (n, a) in &self.terms {
            let v = self.field.mul(a, c);
            if !v.is_zero() {
                out.terms.insert(n.mul(m), v);
            }
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &other.terms {
            for (n, a) in &self.terms {
                out.add_term(n.mul(m), &self.field.mul(a, c));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Self::one(&self.field, self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.0[i] -= 1;
            out.add_term(n, &self.field.mul(c, &self.field.from_int(e as i64)));
        }
        out
    }

    /// Substitutes polynomials (in a possibly different ring) for the variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let target = &images[0];
        let mut out = Self::zero(&target.field, target.nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target.field, target.nvars, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t = t.mul(&images[i].pow(*e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                for _ in 0..*e {
                    t = self.field.mul(&t, &point[i]);
                }
            }
            acc = self.field.add(&acc, &t);
        }
        acc
    }

    /// Rescales so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).unwrap()),
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if self.field == Field::Rationals && *c < Rational::zero() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            if mono.is_empty() {
                s.push_str(&rational_to_string(&mag));
            } else {
                if !mag.is_one() {
                    s.push_str(&rational_to_string(&mag));
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::field::rat;

    #[test]
    fn degrevlex_orders_by_degree_then_reverse_lex() {
        let xy = Monomial(vec![1, 1, 0]);
        let xz = Monomial(vec![1, 0, 1]);
        let y2 = Monomial(vec![0, 2, 0]);
        let x = Monomial(vec![1, 0, 0]);
        assert!(xy > xz);
        assert!(y2 > xz);
        assert!(xy > x);
        assert!(Monomial(vec![2, 0, 0]) > xy);
    }

    #[test]
    fn derivative_power_rule() {
        let q = Field::Rationals;
        let x = Polynomial::var(&q, 1, 0);
        let p = x.pow(2).sub(&Polynomial::one(&q, 1));
        assert_eq!(p.derivative(0), x.scale(&rat(2)));
    }
}
