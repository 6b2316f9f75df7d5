//! Coefficient rings and their capability hierarchy.
//!
//! Every ring here is a discrete integral domain with explicit divisibility
//! ([`Ring`]). On top of that sit [`GcdDomain`] and [`BezoutDomain`]. The
//! stronger structures (constructive PID, Euclidean domain, adequacy through a
//! `gdco` operation, Krull dimension ≤ 1) are optional capabilities that a
//! Bézout domain advertises at run time through [`RingCapabilities`]; the
//! methods that need them return [`RingError::Capability`] when absent.

mod integers;
mod poly;

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

pub use integers::Integers;
pub use poly::{CoeffField, FpPoly, Poly, PolyRing, PrimeField, QPoly, Rationals};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring {ring} lacks the {capability} capability")]
    Capability {
        ring: String,
        capability: Capability,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no witness exists: {0}")]
    NoWitness(String),
    #[error("cannot parse element {token:?}: {reason}")]
    Parse { token: String, reason: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Capability {
    Divisibility,
    Gcd,
    Bezout,
    Pid,
    Euclidean,
    Gdco,
    Krull1,
}

impl fmt::Display for Capability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Capability::Divisibility => "explicit divisibility",
            Capability::Gcd => "gcd",
            Capability::Bezout => "Bézout",
            Capability::Pid => "constructive PID",
            Capability::Euclidean => "Euclidean",
            Capability::Gdco => "gdco",
            Capability::Krull1 => "Krull dimension ≤ 1",
        };
        f.write_str(s)
    }
}

/// The set of structures a ring instance supports.
///
/// Built only through [`RingCapabilities::with`], which closes the set under
/// the implications Euclidean ⇒ PID ⇒ Bézout ⇒ GCD ⇒ divisibility,
/// PID ⇒ gdco ⇒ Bézout and Krull1 ⇒ gdco.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RingCapabilities {
    divisibility: bool,
    gcd: bool,
    bezout: bool,
    pid: bool,
    euclidean: bool,
    gdco: bool,
    krull1: bool,
}

impl RingCapabilities {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn with(mut self, cap: Capability) -> Self {
        match cap {
            Capability::Divisibility => self.divisibility = true,
            Capability::Gcd => {
                self.gcd = true;
                self = self.with(Capability::Divisibility);
            }
            Capability::Bezout => {
                self.bezout = true;
                self = self.with(Capability::Gcd);
            }
            Capability::Gdco => {
                self.gdco = true;
                self = self.with(Capability::Bezout);
            }
            Capability::Pid => {
                self.pid = true;
                self = self.with(Capability::Gdco);
            }
            Capability::Euclidean => {
                self.euclidean = true;
                self = self.with(Capability::Pid);
            }
            Capability::Krull1 => {
                self.krull1 = true;
                self = self.with(Capability::Gdco);
            }
        }
        self
    }

    pub fn has(&self, cap: Capability) -> bool {
        match cap {
            Capability::Divisibility => self.divisibility,
            Capability::Gcd => self.gcd,
            Capability::Bezout => self.bezout,
            Capability::Pid => self.pid,
            Capability::Euclidean => self.euclidean,
            Capability::Gdco => self.gdco,
            Capability::Krull1 => self.krull1,
        }
    }

    /// Checks the implication chain; always true for values built by `with`.
    pub fn is_consistent(&self) -> bool {
        let imp = |a: bool, b: bool| !a || b;
        imp(self.euclidean, self.pid)
            && imp(self.pid, self.bezout)
            && imp(self.pid, self.gdco)
            && imp(self.gdco, self.bezout)
            && imp(self.krull1, self.gdco)
            && imp(self.bezout, self.gcd)
            && imp(self.gcd, self.divisibility)
    }
}

/// Extended gcd witness: `g = u·a + v·b`, `a = a1·g`, `b = b1·g` and
/// `u·a1 + v·b1 = 1`, with `g` the canonical associate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGcd<E> {
    pub g: E,
    pub u: E,
    pub v: E,
    pub a1: E,
    pub b1: E,
}

/// Three-element version of [`ExtGcd`]: `g = u·a + v·b + w·c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGcd3<E> {
    pub g: E,
    pub u: E,
    pub v: E,
    pub w: E,
    pub a1: E,
    pub b1: E,
    pub c1: E,
}

/// A commutative integral domain with exact arithmetic and explicit
/// divisibility.
pub trait Ring: fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Returns `x` with `a = x·b` when `b` divides `a`. `div_opt(0, 0)` is `Some(0)`.
    fn div_opt(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// A unit `w` such that `w·a` is the canonical associate of `a`
    /// (nonnegative integers, monic polynomials). Returns 1 for zero.
    fn normal_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn capabilities(&self) -> RingCapabilities;

    /// Short tag used in file headers: `int`, `qpoly`, `fppoly:<p>`.
    fn tag(&self) -> String;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, token: &str) -> Result<Self::Elem, RingError>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `b ∣ a`
    fn divides(&self, b: &Self::Elem, a: &Self::Elem) -> bool {
        self.div_opt(a, b).is_some()
    }

    /// `b` strictly divides `a`: `b ∣ a` and `a ∤ b`.
    fn strictly_divides(&self, b: &Self::Elem, a: &Self::Elem) -> bool {
        self.divides(b, a) && !self.divides(a, b)
    }

    fn canon(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.normal_unit(a), a)
    }

    fn associates(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.canon(a) == self.canon(b)
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.div_opt(&self.one(), a).is_some()
    }

    fn unit_inverse(&self, u: &Self::Elem) -> Option<Self::Elem> {
        self.div_opt(&self.one(), u)
    }

    fn pow(&self, a: &Self::Elem, n: usize) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn missing(&self, capability: Capability) -> RingError {
        RingError::Capability {
            ring: self.tag(),
            capability,
        }
    }
}

pub trait GcdDomain: Ring {
    /// Canonical greatest common divisor; `gcd(a, 0) = canon(a)`.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn coprime(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_unit(&self.gcd(a, b))
    }

    fn gcd_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |g, x| self.gcd(&g, x))
    }
}

pub trait BezoutDomain: GcdDomain {
    fn egcdr(&self, a: &Self::Elem, b: &Self::Elem) -> ExtGcd<Self::Elem>;

    /// Bézout coefficients for three elements by two nested [`egcdr`](Self::egcdr) calls.
    fn egcdr3(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> ExtGcd3<Self::Elem> {
        let ab = self.egcdr(a, b);
        let abc = self.egcdr(&ab.g, c);
        let g = abc.g;
        let (a1, b1, c1) = if self.is_zero(&g) {
            (self.one(), self.zero(), self.zero())
        } else {
            let q = |x: &Self::Elem| self.div_opt(x, &g).expect("gcd divides its arguments");
            (q(a), q(b), q(c))
        };
        ExtGcd3 {
            u: self.mul(&abc.u, &ab.u),
            v: self.mul(&abc.u, &ab.v),
            w: abc.v,
            g,
            a1,
            b1,
            c1,
        }
    }

    /// Euclidean norm: `enorm(a) ≤ enorm(a·b)` for nonzero `a`, `b`.
    fn enorm(&self, _a: &Self::Elem) -> Result<BigUint, RingError> {
        Err(self.missing(Capability::Euclidean))
    }

    /// Division with remainder: `a = b·q + r` with `r = 0` or `enorm(r) < enorm(b)`.
    fn ediv(
        &self,
        _a: &Self::Elem,
        _b: &Self::Elem,
    ) -> Result<(Self::Elem, Self::Elem), RingError> {
        Err(self.missing(Capability::Euclidean))
    }

    /// Greatest divisor of `b` coprime to `a` (0 when `b = 0`).
    ///
    /// Constructive PIDs use [`pid_gdco`]; adequate rings may override.
    fn gdco(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, RingError> {
        if self.capabilities().has(Capability::Pid) {
            pid_gdco(self, a, b)
        } else {
            Err(self.missing(Capability::Gdco))
        }
    }

    /// Returns `(m, v)` with `a ∣ u^m·(1 − u·v)`.
    fn krull1_witness(
        &self,
        a: &Self::Elem,
        u: &Self::Elem,
    ) -> Result<(usize, Self::Elem), RingError> {
        if self.capabilities().has(Capability::Krull1) {
            krull1_witness_via_gdco(self, a, u)
        } else {
            Err(self.missing(Capability::Krull1))
        }
    }

    /// Upper bound for the least `n` with `b ∣ a^n`, whenever such an `n`
    /// exists. `None` when the instance cannot bound it.
    fn exponent_cap(&self, _b: &Self::Elem) -> Option<usize> {
        None
    }
}

/// Extended Euclid over a Euclidean instance, canonicalised.
pub(crate) fn extended_euclid<R, F>(r: &R, a: &R::Elem, b: &R::Elem, divrem: F) -> ExtGcd<R::Elem>
where
    R: Ring + ?Sized,
    F: Fn(&R::Elem, &R::Elem) -> (R::Elem, R::Elem),
{
    let (mut old_r, mut rem) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (r.one(), r.zero());
    let (mut old_t, mut t) = (r.zero(), r.one());
    while !r.is_zero(&rem) {
        let (q, next) = divrem(&old_r, &rem);
        old_r = std::mem::replace(&mut rem, next);
        let s_next = r.sub(&old_s, &r.mul(&q, &s));
        old_s = std::mem::replace(&mut s, s_next);
        let t_next = r.sub(&old_t, &r.mul(&q, &t));
        old_t = std::mem::replace(&mut t, t_next);
    }
    if r.is_zero(&old_r) {
        return ExtGcd {
            g: r.zero(),
            u: r.one(),
            v: r.zero(),
            a1: r.one(),
            b1: r.zero(),
        };
    }
    let w = r.normal_unit(&old_r);
    let g = r.mul(&w, &old_r);
    let a1 = r.div_opt(a, &g).expect("gcd divides a");
    let b1 = r.div_opt(b, &g).expect("gcd divides b");
    ExtGcd {
        u: r.mul(&w, &old_s),
        v: r.mul(&w, &old_t),
        g,
        a1,
        b1,
    }
}

/// gdco in a constructive PID: divide `b` by `gcd(b, a)` until coprime.
///
/// Every round strictly divides the running value; on Euclidean instances the
/// norm is required to drop as well, otherwise the ring instance is broken.
pub fn pid_gdco<R>(r: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem, RingError>
where
    R: BezoutDomain + ?Sized,
{
    if r.is_zero(b) {
        return Ok(r.zero());
    }
    let euclidean = r.capabilities().has(Capability::Euclidean);
    let mut c = b.clone();
    loop {
        let g = r.gcd(&c, a);
        if r.is_unit(&g) {
            return Ok(r.canon(&c));
        }
        let next = r
            .div_opt(&c, &g)
            .ok_or_else(|| RingError::Internal("gcd does not divide its argument".into()))?;
        let descended = if euclidean {
            r.enorm(&next)? < r.enorm(&c)?
        } else {
            r.strictly_divides(&next, &c)
        };
        if !descended {
            return Err(RingError::Internal(
                "gdco iteration failed to descend".into(),
            ));
        }
        c = next;
    }
}

/// Smallest `n` in `min..=cap` with `b ∣ a^n`.
pub fn least_exponent<R>(r: &R, b: &R::Elem, a: &R::Elem, min: usize) -> Result<usize, RingError>
where
    R: BezoutDomain + ?Sized,
{
    let cap = r
        .exponent_cap(b)
        .ok_or_else(|| r.missing(Capability::Krull1))?
        .max(min);
    let mut power = r.pow(a, min);
    for n in min..=cap {
        if r.divides(b, &power) {
            return Ok(n);
        }
        power = r.mul(&power, a);
    }
    Err(RingError::Internal(format!(
        "no exponent up to {cap} makes {} divide a power of {}",
        r.format(b),
        r.format(a)
    )))
}

/// Krull-dimension-≤-1 witness derived from gdco.
///
/// Splits `a = b1·b2` with `b1 = gdco(u, a)` coprime to `u` and
/// `b2 ∣ u^m`; then `v` inverts `u` modulo `b1`.
pub fn krull1_witness_via_gdco<R>(
    r: &R,
    a: &R::Elem,
    u: &R::Elem,
) -> Result<(usize, R::Elem), RingError>
where
    R: BezoutDomain + ?Sized,
{
    if r.is_unit(a) {
        return Ok((0, r.zero()));
    }
    if r.is_zero(a) {
        if r.is_zero(u) {
            return Ok((1, r.zero()));
        }
        if let Some(inv) = r.unit_inverse(u) {
            return Ok((0, inv));
        }
        return Err(RingError::NoWitness(format!(
            "0 does not divide u^m(1 - uv) for the non-unit u = {}",
            r.format(u)
        )));
    }
    let b1 = r.gdco(u, a)?;
    let b2 = r
        .div_opt(a, &b1)
        .ok_or_else(|| RingError::Internal("gdco result does not divide its argument".into()))?;
    let m = least_exponent(r, &b2, u, 0)?;
    let e = r.egcdr(u, &b1);
    let g_inv = r
        .unit_inverse(&e.g)
        .ok_or_else(|| RingError::Internal("gdco result not coprime to u".into()))?;
    let mut v = r.mul(&e.u, &g_inv);
    if r.capabilities().has(Capability::Euclidean) {
        v = r.ediv(&v, &b1)?.1;
    }
    Ok((m, v))
}
