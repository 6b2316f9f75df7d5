use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::integers::parse_int;
use super::{
    extended_euclid, BezoutDomain, Capability, ExtGcd, GcdDomain, Ring, RingCapabilities, RingError,
};

/// Coefficient field of a univariate polynomial ring.
pub trait CoeffField: fmt::Debug + Clone + Send + Sync {
    type C: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::C;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::C) -> Self::C;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn format(&self, a: &Self::C) -> String;
    fn parse(&self, token: &str) -> Result<Self::C, RingError>;
    fn tag(&self) -> String;
}

/// ℚ with coefficients kept in lowest terms, positive denominator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl CoeffField for Rationals {
    type C = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, token: &str) -> Result<BigRational, RingError> {
        let t = token.trim();
        match t.split_once('/') {
            None => Ok(BigRational::from_integer(parse_int(t)?)),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(RingError::Parse {
                        token: token.to_string(),
                        reason: "zero denominator".to_string(),
                    });
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
    fn tag(&self) -> String {
        "qpoly".to_string()
    }
}

/// The prime field 𝔽ₚ, residues stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Largest accepted modulus; primality is checked by trial division.
    pub const MAX_MODULUS: u64 = u32::MAX as u64;

    pub fn new(p: u64) -> Result<Self, RingError> {
        if p > Self::MAX_MODULUS {
            return Err(RingError::InvalidRing(format!("modulus {p} is too large")));
        }
        if !is_prime(p) {
            return Err(RingError::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffField for PrimeField {
    type C = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let mut acc = 1u64;
        let mut base = *a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, token: &str) -> Result<u64, RingError> {
        let n = parse_int(token)?;
        let r = n.modpow(&BigInt::one(), &BigInt::from(self.p));
        let r = if r < BigInt::zero() {
            r + BigInt::from(self.p)
        } else {
            r
        };
        Ok(u64::try_from(r).expect("residue fits in u64"))
    }
    fn tag(&self) -> String {
        format!("fppoly:{}", self.p)
    }
}

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C> Poly<C> {
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }
}

/// Univariate polynomials over a coefficient field: a Euclidean domain with
/// monic canonical associates and norm `0 ↦ 0`, `p ↦ 1 + deg p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing<F> {
    field: F,
}

pub type QPoly = PolyRing<Rationals>;
pub type FpPoly = PolyRing<PrimeField>;

impl QPoly {
    pub fn new() -> Self {
        PolyRing { field: Rationals }
    }
}

impl Default for QPoly {
    fn default() -> Self {
        Self::new()
    }
}

impl FpPoly {
    pub fn new(p: u64) -> Result<Self, RingError> {
        Ok(PolyRing {
            field: PrimeField::new(p)?,
        })
    }
}

impl<F: CoeffField> PolyRing<F> {
    pub fn with_field(field: F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn poly(&self, mut coeffs: Vec<F::C>) -> Poly<F::C> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> Poly<F::C> {
        self.poly(coeffs.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn x(&self) -> Poly<F::C> {
        self.poly(vec![self.field.zero(), self.field.one()])
    }

    pub fn constant(&self, c: F::C) -> Poly<F::C> {
        self.poly(vec![c])
    }

    fn scale(&self, p: &Poly<F::C>, c: &F::C) -> Poly<F::C> {
        self.poly(p.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    /// Long division by a nonzero divisor.
    pub fn divrem(&self, a: &Poly<F::C>, b: &Poly<F::C>) -> (Poly<F::C>, Poly<F::C>) {
        let db = b.degree().expect("polynomial division by zero");
        let lead_inv = self.field.inv(b.lead().expect("nonzero divisor"));
        let mut rem = a.coeffs.clone();
        let Some(da) = a.degree().filter(|&da| da >= db) else {
            return (self.poly(Vec::new()), a.clone());
        };
        let mut quot = vec![self.field.zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = self.field.mul(&rem[k + db], &lead_inv);
            if self.field.is_zero(&c) {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                rem[k + i] = self.field.sub(&rem[k + i], &self.field.mul(&c, bc));
            }
            quot[k] = c;
        }
        (self.poly(quot), self.poly(rem))
    }
}

impl<F: CoeffField> Ring for PolyRing<F> {
    type Elem = Poly<F::C>;

    fn zero(&self) -> Self::Elem {
        Poly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.poly(vec![self.field.one()])
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.poly(vec![self.field.from_i64(n)])
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.field.zero();
        self.poly(
            (0..n)
                .map(|i| {
                    self.field
                        .add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z))
                })
                .collect(),
        )
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.field.zero();
        self.poly(
            (0..n)
                .map(|i| {
                    self.field
                        .sub(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z))
                })
                .collect(),
        )
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        self.poly(out)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn div_opt(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.is_zero() {
            return a.is_zero().then(|| self.zero());
        }
        let (q, r) = self.divrem(a, b);
        r.is_zero().then_some(q)
    }

    fn normal_unit(&self, a: &Self::Elem) -> Self::Elem {
        match a.lead() {
            None => self.one(),
            Some(l) => self.constant(self.field.inv(l)),
        }
    }

    fn capabilities(&self) -> RingCapabilities {
        RingCapabilities::none()
            .with(Capability::Euclidean)
            .with(Capability::Krull1)
    }

    fn tag(&self) -> String {
        self.field.tag()
    }

    fn format(&self, a: &Self::Elem) -> String {
        if a.is_zero() {
            return "[0]".to_string();
        }
        let parts: Vec<String> = a.coeffs.iter().map(|c| self.field.format(c)).collect();
        format!("[{}]", parts.join(","))
    }

    fn parse(&self, token: &str) -> Result<Self::Elem, RingError> {
        let t = token.trim();
        let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
            return self
                .field
                .parse(t)
                .map(|c| self.constant(c))
                .map_err(|_| RingError::Parse {
                    token: token.to_string(),
                    reason: "expected a coefficient list [c0,c1,...] or a constant".to_string(),
                });
        };
        if inner.trim().is_empty() {
            return Ok(self.zero());
        }
        let coeffs = inner
            .split(',')
            .map(|c| self.field.parse(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.poly(coeffs))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.degree() == Some(0)
    }

    fn canon(&self, a: &Self::Elem) -> Self::Elem {
        match a.lead() {
            None => a.clone(),
            Some(l) => self.scale(a, &self.field.inv(l)),
        }
    }
}

impl<F: CoeffField> GcdDomain for PolyRing<F> {
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.divrem(&x, &y).1;
            x = std::mem::replace(&mut y, r);
        }
        self.canon(&x)
    }
}

impl<F: CoeffField> BezoutDomain for PolyRing<F> {
    fn egcdr(&self, a: &Self::Elem, b: &Self::Elem) -> ExtGcd<Self::Elem> {
        extended_euclid(self, a, b, |x, y| self.divrem(x, y))
    }

    fn enorm(&self, a: &Self::Elem) -> Result<BigUint, RingError> {
        Ok(BigUint::from(a.coeffs.len()))
    }

    fn ediv(&self, a: &Self::Elem, b: &Self::Elem) -> Result<(Self::Elem, Self::Elem), RingError> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(self.divrem(a, b))
    }

    fn exponent_cap(&self, b: &Self::Elem) -> Option<usize> {
        Some(b.coeffs.len().max(1))
    }
}
