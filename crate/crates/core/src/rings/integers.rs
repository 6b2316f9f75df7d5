use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{
    extended_euclid, BezoutDomain, Capability, ExtGcd, GcdDomain, Ring, RingCapabilities, RingError,
};

/// The ring ℤ of arbitrary-precision integers.
///
/// Canonical associates are nonnegative; division with remainder keeps the
/// remainder in `[0, |b|)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Integers {
    pub fn int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn div_opt(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return a.is_zero().then(BigInt::zero);
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }

    fn normal_unit(&self, a: &BigInt) -> BigInt {
        if a.sign() == Sign::Minus {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn capabilities(&self) -> RingCapabilities {
        RingCapabilities::none()
            .with(Capability::Euclidean)
            .with(Capability::Krull1)
    }

    fn tag(&self) -> String {
        "int".to_string()
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn parse(&self, token: &str) -> Result<BigInt, RingError> {
        parse_int(token)
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }

    fn canon(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
}

pub(super) fn parse_int(token: &str) -> Result<BigInt, RingError> {
    let t = token.trim();
    let digits = t.strip_prefix('+').unwrap_or(t);
    let body = digits.strip_prefix('-').unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RingError::Parse {
            token: token.to_string(),
            reason: "expected an optionally signed decimal integer".to_string(),
        });
    }
    digits.parse::<BigInt>().map_err(|e| RingError::Parse {
        token: token.to_string(),
        reason: e.to_string(),
    })
}

impl GcdDomain for Integers {
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
}

impl BezoutDomain for Integers {
    fn egcdr(&self, a: &BigInt, b: &BigInt) -> ExtGcd<BigInt> {
        extended_euclid(self, a, b, |x, y| {
            self.ediv(x, y)
                .expect("extended Euclid never divides by zero")
        })
    }

    fn enorm(&self, a: &BigInt) -> Result<BigUint, RingError> {
        Ok(a.magnitude().clone())
    }

    fn ediv(&self, a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt), RingError> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let r = a.mod_floor(&b.abs());
        let q = (a - &r) / b;
        Ok((q, r))
    }

    fn exponent_cap(&self, b: &BigInt) -> Option<usize> {
        usize::try_from(b.bits()).ok().map(|n| n.max(1))
    }
}
