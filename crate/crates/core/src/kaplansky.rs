//! Smith normal form through 2×2 reductions and the Kaplansky condition.
//!
//! A Bézout domain is an elementary divisor ring exactly when every triple
//! `a, b, c` with unit gcd admits `p, q` such that `gcd(p·a, p·b + q·c)` is a
//! unit. Here the condition is realised from `gdco`, then used to put any
//! 2×2 matrix in Smith form, and [`smithmxn`] lifts a 2×2 routine to
//! arbitrary shapes.

use crate::matrix::{Matrix, Side};
use crate::rings::{least_exponent, BezoutDomain, Capability, RingError};
use crate::smith::{canonicalize, SmithError, SmithResult, Work};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KapWitness<E> {
    pub p: E,
    pub q: E,
    pub x1: E,
    pub y1: E,
}

/// `b = b1·b2` with `b1` coprime to `a` and `b2 ∣ aⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Krull1Factorization<E> {
    pub n: usize,
    pub b1: E,
    pub b2: E,
}

/// A 2×2 Smith routine, as consumed by [`smithmxn`].
pub type Smith2x2<R> = dyn Fn(
    &R,
    &Matrix<<R as crate::rings::Ring>::Elem>,
) -> Result<SmithResult<<R as crate::rings::Ring>::Elem>, SmithError>;

fn unit_triple<R: BezoutDomain + ?Sized>(
    r: &R,
    a: &R::Elem,
    b: &R::Elem,
    c: &R::Elem,
) -> Result<(), RingError> {
    if !r.capabilities().has(Capability::Gdco) {
        return Err(r.missing(Capability::Gdco));
    }
    let g = r.gcd(a, &r.gcd(b, c));
    if r.is_unit(&g) {
        Ok(())
    } else {
        Err(RingError::Precondition(format!(
            "gcd({}, {}, {}) = {} is not a unit",
            r.format(a),
            r.format(b),
            r.format(c),
            r.format(&g)
        )))
    }
}

/// `(p, q)` with `gcd(p·a, p·b + q·c)` a unit.
pub fn kap<R: BezoutDomain + ?Sized>(
    r: &R,
    a: &R::Elem,
    b: &R::Elem,
    c: &R::Elem,
) -> Result<(R::Elem, R::Elem), RingError> {
    unit_triple(r, a, b, c)?;
    if r.is_unit(a) {
        return Ok((r.one(), r.zero()));
    }
    if r.is_zero(a) {
        let e = r.egcdr(b, c);
        return Ok((e.u, e.v));
    }
    Ok((r.one(), r.gdco(b, a)?))
}

/// Completes [`kap`] with `x1·p·a + y1·(p·b + q·c) = 1`.
pub fn kap_w<R: BezoutDomain + ?Sized>(
    r: &R,
    a: &R::Elem,
    b: &R::Elem,
    c: &R::Elem,
) -> Result<KapWitness<R::Elem>, RingError> {
    let (p, q) = kap(r, a, b, c)?;
    let pa = r.mul(&p, a);
    let s = r.add(&r.mul(&p, b), &r.mul(&q, c));
    let e = r.egcdr(&pa, &s);
    let inv = r.unit_inverse(&e.g).ok_or_else(|| {
        RingError::Internal(format!("kap witness not coprime: gcd = {}", r.format(&e.g)))
    })?;
    Ok(KapWitness {
        x1: r.mul(&e.u, &inv),
        y1: r.mul(&e.v, &inv),
        p,
        q,
    })
}

/// Smith form of a 2×2 matrix: one Bézout row step, then the explicit
/// Kaplansky transition matrices.
pub fn kap_smith2x2<R: BezoutDomain + ?Sized>(
    r: &R,
    m: &Matrix<R::Elem>,
) -> Result<SmithResult<R::Elem>, SmithError> {
    if m.shape() != (2, 2) {
        return Err(
            RingError::Precondition(format!("expected a 2x2 matrix, got {:?}", m.shape())).into(),
        );
    }
    let mut work = Work::new(r, m);
    let (m00, m10) = (work.w[(0, 0)].clone(), work.w[(1, 0)].clone());
    work.bezout(r, Side::Row, 0, 1, &m00, &m10);
    let e = r.egcdr3(&work.w[(0, 0)], &work.w[(0, 1)], &work.w[(1, 1)]);
    if r.is_zero(&e.g) {
        return Ok(SmithResult {
            p: work.p,
            d: Vec::new(),
            q: work.q,
        });
    }
    let (a, b, c) = (&e.a1, &e.b1, &e.c1);
    let KapWitness { p, q, x1, y1 } = kap_w(r, a, b, c)?;
    let x = r.add(&r.mul(a, &x1), &r.mul(&y1, b));
    let y = r.mul(c, &y1);
    let ny = r.neg(&y);
    work.combine(r, Side::Row, 0, 1, [&p, &q, &ny, &x]);
    let s = r.add(&r.mul(&p, b), &r.mul(&q, c));
    let npa = r.neg(&r.mul(&p, a));
    // Column form of [[x1, s], [y1, −p·a]].
    work.combine(r, Side::Col, 0, 1, [&x1, &y1, &s, &npa]);
    let second = r.mul(&e.g, &r.neg(&r.mul(a, c)));
    let mut d = vec![e.g];
    if !r.is_zero(&second) {
        d.push(second);
    }
    let res = SmithResult {
        p: work.p,
        d,
        q: work.q,
    };
    Ok(canonicalize(r, res))
}

/// Smith form of an arbitrary matrix from a 2×2 Smith routine.
///
/// Triangularises by row Bézout steps, then at each diagonal position
/// gathers the content of the trailing block into the pivot (Bézout steps on
/// its row and column, the 2×2 routine on the remaining entries) and clears
/// its row and column. A bubble network of 2×2 gates finally enforces the
/// divisibility chain.
pub fn smithmxn<R: BezoutDomain + ?Sized>(
    r: &R,
    m: &Matrix<R::Elem>,
    smith2x2: &Smith2x2<R>,
) -> Result<SmithResult<R::Elem>, SmithError> {
    if m.shape() == (2, 2) {
        return smith2x2(r, m);
    }
    let (rows, cols) = m.shape();
    let mut work = Work::new(r, m);
    triangularize(r, &mut work);

    let mut d = Vec::new();
    for t in 0..rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !r.is_zero(&work.w[(i, j)]));
        let Some((pi, pj)) = pivot else { break };
        work.swap(Side::Row, t, pi);
        work.swap(Side::Col, t, pj);
        gather_content(r, &mut work, t, smith2x2)?;
        let a = work.w[(t, t)].clone();
        for i in t + 1..rows {
            let f = r
                .div_opt(&work.w[(i, t)], &a)
                .ok_or_else(|| internal("column not divisible"))?;
            work.axpy(r, Side::Row, i, t, &r.neg(&f));
        }
        for j in t + 1..cols {
            let f = r
                .div_opt(&work.w[(t, j)], &a)
                .ok_or_else(|| internal("row not divisible"))?;
            work.axpy(r, Side::Col, j, t, &r.neg(&f));
        }
        d.push(a);
    }
    chain_fix(r, &mut work, &mut d, smith2x2)?;
    if !d.windows(2).all(|w| r.divides(&w[0], &w[1])) {
        return Err(internal("chain network left an unsorted diagonal"));
    }
    let (p, q) = (work.p, work.q);
    Ok(canonicalize(r, SmithResult { p, d, q }))
}

fn internal(msg: &str) -> SmithError {
    SmithError::Internal(msg.to_string())
}

/// Row echelon form by Bézout row steps, column by column.
fn triangularize<R: BezoutDomain + ?Sized>(r: &R, work: &mut Work<R::Elem>) {
    let (rows, cols) = work.w.shape();
    let mut t = 0;
    for c in 0..cols {
        if t == rows {
            break;
        }
        for i in t + 1..rows {
            if r.is_zero(&work.w[(i, c)]) {
                continue;
            }
            let (a, b) = (work.w[(t, c)].clone(), work.w[(i, c)].clone());
            work.bezout(r, Side::Row, t, i, &a, &b);
        }
        if !r.is_zero(&work.w[(t, c)]) {
            t += 1;
        }
    }
}

/// Makes `W(t,t)` divide every entry of the trailing block at `t`.
///
/// Each repair replaces the pivot by a strict divisor, which is asserted.
fn gather_content<R: BezoutDomain + ?Sized>(
    r: &R,
    work: &mut Work<R::Elem>,
    t: usize,
    smith2x2: &Smith2x2<R>,
) -> Result<(), SmithError> {
    let (rows, cols) = work.w.shape();
    loop {
        let a = work.w[(t, t)].clone();
        let bad_col = (t + 1..rows).find(|&i| !r.divides(&a, &work.w[(i, t)]));
        let bad_row = (t + 1..cols).find(|&j| !r.divides(&a, &work.w[(t, j)]));
        if let Some(i) = bad_col {
            let b = work.w[(i, t)].clone();
            work.bezout(r, Side::Row, t, i, &a, &b);
        } else if let Some(j) = bad_row {
            let b = work.w[(t, j)].clone();
            work.bezout(r, Side::Col, t, j, &a, &b);
        } else {
            let inner = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !r.divides(&a, &work.w[(i, j)]));
            let Some((i, j)) = inner else { return Ok(()) };
            gate(r, work, (t, i), (t, j), smith2x2)?;
        }
        let next = &work.w[(t, t)];
        if !r.strictly_divides(next, &a) {
            return Err(SmithError::Internal(format!(
                "pivot {} does not strictly divide {}",
                r.format(next),
                r.format(&a)
            )));
        }
    }
}

/// Runs the 2×2 routine on rows `(i0, i1)` × columns `(j0, j1)` and embeds
/// its transitions.
fn gate<R: BezoutDomain + ?Sized>(
    r: &R,
    work: &mut Work<R::Elem>,
    (i0, i1): (usize, usize),
    (j0, j1): (usize, usize),
    smith2x2: &Smith2x2<R>,
) -> Result<Vec<R::Elem>, SmithError> {
    let w = &work.w;
    let block = Matrix::from_vec(
        2,
        2,
        vec![
            w[(i0, j0)].clone(),
            w[(i0, j1)].clone(),
            w[(i1, j0)].clone(),
            w[(i1, j1)].clone(),
        ],
    )?;
    let res = smith2x2(r, &block)?;
    if res.p.shape() != (2, 2) || res.q.shape() != (2, 2) || res.d.len() > 2 {
        return Err(internal("2x2 routine returned malformed transitions"));
    }
    let (p, q) = (&res.p, &res.q);
    work.combine(
        r,
        Side::Row,
        i0,
        i1,
        [&p[(0, 0)], &p[(0, 1)], &p[(1, 0)], &p[(1, 1)]],
    );
    work.combine(
        r,
        Side::Col,
        j0,
        j1,
        [&q[(0, 0)], &q[(1, 0)], &q[(0, 1)], &q[(1, 1)]],
    );
    Ok(res.d)
}

/// Bubble network over adjacent diagonal pairs; each gate replaces
/// `(d_i, d_{i+1})` by the 2×2 Smith form of `diag(d_i, d_{i+1})`.
/// Returns the number of gates, `k(k−1)/2` for `k` diagonal entries.
pub(crate) fn chain_fix<R: BezoutDomain + ?Sized>(
    r: &R,
    work: &mut Work<R::Elem>,
    d: &mut [R::Elem],
    smith2x2: &Smith2x2<R>,
) -> Result<usize, SmithError> {
    let k = d.len();
    let mut gates = 0;
    for pass in 0..k.saturating_sub(1) {
        for i in 0..k - 1 - pass {
            gates += 1;
            if r.divides(&d[i], &d[i + 1]) {
                continue;
            }
            let out = gate(r, work, (i, i + 1), (i, i + 1), smith2x2)?;
            d[i] = out.first().cloned().unwrap_or_else(|| r.zero());
            d[i + 1] = out.get(1).cloned().unwrap_or_else(|| r.zero());
        }
    }
    Ok(gates)
}

/// Sorts an arbitrary diagonal into a divisibility chain, returning the
/// transitions, the new diagonal and the gate count.
pub fn chain_fix_diagonal<R: BezoutDomain + ?Sized>(
    r: &R,
    diag: &[R::Elem],
    smith2x2: &Smith2x2<R>,
) -> Result<(SmithResult<R::Elem>, usize), SmithError> {
    let k = diag.len();
    let m = Matrix::diag_mx_seq(r, k, k, diag);
    let mut work = Work::new(r, &m);
    let mut d = diag.to_vec();
    let gates = chain_fix(r, &mut work, &mut d, smith2x2)?;
    Ok((
        SmithResult {
            p: work.p,
            d,
            q: work.q,
        },
        gates,
    ))
}

/// Splits `b = b1·b2` with `b1 = gdco(a, b)` and `b2 ∣ aⁿ`, `n ≥ 1` least.
pub fn krull1_factor<R: BezoutDomain + ?Sized>(
    r: &R,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<Krull1Factorization<R::Elem>, RingError> {
    let caps = r.capabilities();
    if !caps.has(Capability::Krull1) && !caps.has(Capability::Pid) {
        return Err(r.missing(Capability::Krull1));
    }
    if r.is_zero(b) {
        if r.is_zero(a) {
            return Ok(Krull1Factorization {
                n: 1,
                b1: r.one(),
                b2: r.zero(),
            });
        }
        if r.is_unit(a) {
            return Ok(Krull1Factorization {
                n: 1,
                b1: r.zero(),
                b2: r.one(),
            });
        }
        return Err(RingError::NoWitness(format!(
            "0 has no factor dividing a power of the nonzero non-unit {}",
            r.format(a)
        )));
    }
    let b1 = r.gdco(a, b)?;
    let b2 = r
        .div_opt(b, &b1)
        .ok_or_else(|| RingError::Internal("gdco result does not divide its argument".into()))?;
    let n = least_exponent(r, &b2, a, 1)?;
    Ok(Krull1Factorization { n, b1, b2 })
}

/// The adequate element of `b` relative to `a`: `gdco(a, b)`.
pub fn adequate_of_gdco<R: BezoutDomain + ?Sized>(
    r: &R,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<R::Elem, RingError> {
    r.gdco(a, b)
}
