use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{DgaError, Result};

/// Ground scalars: the integers, or a prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarDomain {
    Int,
    Fp(u64),
}

impl ScalarDomain {
    pub fn is_field(self) -> bool {
        matches!(self, ScalarDomain::Fp(_))
    }

    /// Validates the prime in an F_p domain; `Int` always passes.
    pub fn validate(self) -> Result<Self> {
        if let ScalarDomain::Fp(p) = self {
            if !is_prime_u64(p) {
                return Err(DgaError::Usage(format!("modulus {p} is not prime")));
            }
        }
        Ok(self)
    }

    /// Canonical form of a scalar: unchanged over Z, reduced into 0..p over F_p.
    pub fn reduce(self, x: &BigInt) -> BigInt {
        match self {
            ScalarDomain::Int => x.clone(),
            ScalarDomain::Fp(p) => x.mod_floor(&BigInt::from(p)),
        }
    }

    pub fn reduce_in_place(self, x: &mut BigInt) {
        if let ScalarDomain::Fp(p) = self {
            *x = x.mod_floor(&BigInt::from(p));
        }
    }

    /// Whether a scalar is invertible in the domain.
    pub fn is_unit(self, x: &BigInt) -> bool {
        match self {
            ScalarDomain::Int => x.abs().is_one(),
            ScalarDomain::Fp(p) => !x.mod_floor(&BigInt::from(p)).is_zero(),
        }
    }

    /// Multiplicative inverse of a unit; `None` for non-units.
    pub fn inverse(self, x: &BigInt) -> Option<BigInt> {
        match self {
            ScalarDomain::Int => {
                if x.abs().is_one() {
                    Some(x.clone())
                } else {
                    None
                }
            }
            ScalarDomain::Fp(p) => {
                let p = BigInt::from(p);
                let r = x.mod_floor(&p);
                if r.is_zero() {
                    return None;
                }
                let e = r.extended_gcd(&p);
                if !e.gcd.is_one() {
                    return None;
                }
                Some(e.x.mod_floor(&p))
            }
        }
    }

    /// Exact division y/x when x divides y in the domain (over F_p: y·x⁻¹).
    pub fn exact_div(self, y: &BigInt, x: &BigInt) -> Option<BigInt> {
        match self {
            ScalarDomain::Int => {
                if x.is_zero() {
                    return y.is_zero().then(BigInt::zero);
                }
                let (q, r) = y.div_rem(x);
                r.is_zero().then_some(q)
            }
            ScalarDomain::Fp(_) => {
                let inv = self.inverse(x)?;
                Some(self.reduce(&(y * inv)))
            }
        }
    }

    /// Quotient used by elimination: floor division over Z (remainder in
    /// [0, |x|)), exact field division over F_p (remainder zero).
    pub fn elim_quot(self, y: &BigInt, x: &BigInt) -> BigInt {
        match self {
            ScalarDomain::Int => y.div_floor(x),
            ScalarDomain::Fp(_) => {
                let inv = self.inverse(x).expect("elimination pivot must be a nonzero field element");
                self.reduce(&(y * inv))
            }
        }
    }
}

impl std::fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarDomain::Int => write!(f, "Z"),
            ScalarDomain::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// Deterministic primality check by trial division; moduli here are small.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
