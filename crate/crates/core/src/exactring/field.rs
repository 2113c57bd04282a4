use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational scalar; numerator and denominator are kept coprime with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficient field of a polynomial ring or of a linear system.
///
/// Elements of `Prime(p)` are stored as integral rationals in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Maps an arbitrary rational into canonical form for this field.
    pub fn reduce(&self, x: Rational) -> Rational {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let inv = mod_inverse(&den, &p).expect("unit mod p");
                Rational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Rational {
        self.reduce(rat(n))
    }

    pub fn zero(&self) -> Rational {
        Rational::zero()
    }

    pub fn one(&self) -> Rational {
        Rational::one()
    }

    pub fn add(&self, a: &Rational, b: &Rational) -> Rational {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Rational) -> Rational {
        self.reduce(-a)
    }

    pub fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(self.reduce(a.recip()))
        }
    }

    pub fn div(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rationals => "QQ".to_string(),
            Field::Prime(p) => format!("ZZ/{p}"),
        }
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() || e.gcd == -BigInt::one() {
        Some((e.x * e.gcd.signum()).mod_floor(m))
    } else {
        None
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn rational_to_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn small_int(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn abs_rat(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_reduces_fractions() {
        let f = Field::Prime(5);
        assert_eq!(f.reduce(ratio(1, 2)), rat(3));
        assert_eq!(f.reduce(rat(-1)), rat(4));
        assert_eq!(f.inv(&rat(2)), Some(rat(3)));
    }

    #[test]
    fn factorization_of_small_numbers() {
        assert_eq!(factorize(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert!(is_prime_u64(97));
        assert!(!is_prime_u64(91));
    }
}
